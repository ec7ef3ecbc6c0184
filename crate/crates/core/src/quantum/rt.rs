//! Level-`r` SO(3) surgery formula for rational surgery on a knot presented
//! as the knot followed by a linear chain of framed unknots.

use num_complex::Complex;

use super::fusion::{complex_norm, fold_color, ColorValue, LevelTables};
use super::real::Real;

/// `ln|RT_r|` together with the cancellation estimate of the final contraction.
#[derive(Clone, Copy, Debug)]
pub struct RtValue {
    pub log_abs: f64,
    pub log_cond: f64,
    /// Estimated relative error.
    pub rel_error: f64,
}

/// `|RT_r|` of surgery on the chain `[a_1, ..., a_k]`, the knot carrying
/// framing `a_1` and each unknot linking its neighbours once. `jones[N-1]`
/// holds `J'_N` for `N ≤ (r-1)/2`.
pub fn rt_chain<T: Real>(tab: &LevelTables<T>, chain: &[i64], jones: &[ColorValue<T>]) -> RtValue {
    let r = tab.r;
    assert!(!chain.is_empty(), "empty surgery chain");
    assert_eq!(jones.len(), (r as usize - 1) / 2, "colored Jones table size");
    let colors: Vec<i64> = (0..r as i64 - 2).step_by(2).collect();
    let delta: Vec<T> = colors.iter().map(|&c| tab.q(c + 1)).collect();
    let theta = |c: i64, power: i64| tab.a_pow(power * c * (c + 2));
    let nc = colors.len();
    let s: Vec<Vec<T>> = colors.iter().map(|&c| colors.iter().map(|&d| tab.q((c + 1) * (d + 1))).collect()).collect();
    let k = chain.len();
    let mut w: Vec<Complex<T>> = colors.iter().zip(&delta).map(|(&c, &dl)| theta(c, chain[k - 1]) * dl).collect();
    let mut wabs: Vec<T> = delta.iter().map(|d| d.abs()).collect();
    for &ai in chain[..k - 1].iter().rev() {
        let mut nw = Vec::with_capacity(nc);
        let mut nabs = Vec::with_capacity(nc);
        for (ci, &c) in colors.iter().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            let mut aabs = T::zero();
            for di in 0..nc {
                acc = acc + w[di] * s[ci][di];
                aabs = aabs + wabs[di] * s[ci][di].abs();
            }
            nw.push(theta(c, ai) * acc);
            nabs.push(aabs);
        }
        w = nw;
        wabs = nabs;
    }
    let mut total = Complex::new(T::zero(), T::zero());
    let mut tabs = T::zero();
    // ln of the largest propagated colored Jones error
    let mut log_jerr = f64::NEG_INFINITY;
    for (ci, &c) in colors.iter().enumerate() {
        let jv = &jones[fold_color(r, c as u64 + 1) as usize - 1];
        total = total + jv.value * delta[ci] * w[ci];
        let weight = delta[ci].abs() * wabs[ci];
        tabs = tabs + complex_norm(jv.value) * weight;
        log_jerr = log_jerr.max(jv.log_abs_error() + weight.ln_f64());
    }
    let d2: T = delta.iter().fold(T::zero(), |acc, &d| acc + d * d);
    let mag = complex_norm(total);
    let log_abs = mag.ln_f64() - (k as f64 + 1.0) * 0.5 * d2.ln_f64();
    let log_cond = if mag.is_zero() { f64::INFINITY } else { (tabs.ln_f64() - mag.ln_f64()).max(0.0) };
    let log_rounding = (T::epsilon_f64() * (nc * (k + 1)) as f64).ln() + tabs.ln_f64();
    let log_err = log_rounding.max(log_jerr + (nc as f64).ln()) + 2f64.ln();
    RtValue { log_abs, log_cond, rel_error: (log_err - mag.ln_f64()).exp() }
}
