//! Growth-rate extrapolation of `(2π/r)·log TV_r` over odd `r`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::TVSample;
use crate::{Error, Result};

/// Least-squares fit of `logslope ≈ a + b·(ln r)/r + c/r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// Logslope at the largest `r`.
    pub raw_last: f64,
    /// The fitted constant `a`, the estimate of the limit.
    pub extrapolated: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    pub samples: usize,
}

pub fn ltv_estimate(samples: &[TVSample]) -> Result<GrowthEstimate> {
    if samples.len() < 4 {
        return Err(Error::InsufficientData(format!("need at least 4 samples, got {}", samples.len())));
    }
    let mut rs: Vec<u64> = samples.iter().map(|s| s.r).collect();
    rs.sort_unstable();
    if rs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("samples must have distinct r".into()));
    }
    if let Some(s) = samples.iter().find(|s| s.r % 2 == 0 || s.r < 3) {
        return Err(Error::InvalidArgument(format!("r = {} is not an odd level", s.r)));
    }
    if let Some(s) = samples.iter().find(|s| !s.logslope.is_finite()) {
        return Err(Error::Numerical(format!("logslope at r = {} is not finite", s.r)));
    }
    let n = samples.len();
    let x = DMatrix::from_fn(n, 3, |i, j| {
        let r = samples[i].r as f64;
        match j {
            0 => 1.0,
            1 => r.ln() / r,
            _ => 1.0 / r,
        }
    });
    let y = DVector::from_iterator(n, samples.iter().map(|s| s.logslope));
    let coef = x
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::Numerical(format!("least squares failed: {e}")))?;
    let res = &y - &x * &coef;
    let residual = (res.norm_squared() / n as f64).sqrt();
    let last = samples.iter().max_by_key(|s| s.r).expect("nonempty");
    Ok(GrowthEstimate {
        raw_last: last.logslope,
        extrapolated: coef[0],
        a: coef[0],
        b: coef[1],
        c: coef[2],
        residual,
        samples: n,
    })
}

/// Whether the logslopes, ordered by `r`, move monotonically toward `target`
/// (distance non-increasing).
pub fn monotone_toward(samples: &[TVSample], target: f64) -> bool {
    let mut s: Vec<&TVSample> = samples.iter().collect();
    s.sort_by_key(|x| x.r);
    s.windows(2).all(|w| (w[1].logslope - target).abs() <= (w[0].logslope - target).abs() + 1e-12)
}

/// Whether the logslopes are monotone in `r` (either direction).
pub fn is_monotone(samples: &[TVSample]) -> bool {
    let mut s: Vec<&TVSample> = samples.iter().collect();
    s.sort_by_key(|x| x.r);
    let up = s.windows(2).all(|w| w[1].logslope >= w[0].logslope);
    let down = s.windows(2).all(|w| w[1].logslope <= w[0].logslope);
    up || down
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(r: u64, l: f64) -> TVSample {
        TVSample {
            r,
            tv: 0.0,
            log_tv: l * r as f64 / (2.0 * std::f64::consts::PI),
            logslope: l,
            bits: 53,
            log10_condition: 0.0,
        }
    }

    #[test]
    fn constant_fit() {
        let s: Vec<_> = [11, 21, 31, 41, 51].iter().map(|&r| sample(r, 1.25)).collect();
        let g = ltv_estimate(&s).unwrap();
        assert!((g.extrapolated - 1.25).abs() < 1e-10);
        assert!(g.residual < 1e-10);
    }

    #[test]
    fn exact_model_recovered() {
        let f = |r: f64| 2.0 - 3.0 * r.ln() / r + 5.0 / r;
        let s: Vec<_> = [51, 101, 151, 201, 251].iter().map(|&r| sample(r, f(r as f64))).collect();
        let g = ltv_estimate(&s).unwrap();
        assert!((g.a - 2.0).abs() < 1e-8 && (g.b + 3.0).abs() < 1e-6 && (g.c - 5.0).abs() < 1e-5);
    }

    #[test]
    fn rejects() {
        let s: Vec<_> = [11, 21, 31].iter().map(|&r| sample(r, 1.0)).collect();
        assert!(matches!(ltv_estimate(&s), Err(Error::InsufficientData(_))));
        let d: Vec<_> = [11, 21, 21, 31].iter().map(|&r| sample(r, 1.0)).collect();
        assert!(ltv_estimate(&d).is_err());
    }
}
