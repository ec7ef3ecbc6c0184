//! Colored Jones polynomials of double twist knots at `t = e^{4πi/r}`,
//! Turaev–Viro invariants of their complements and rational surgeries, and
//! growth-rate estimation.
//!
//! Evaluation is adaptive: a double-precision attempt is accepted when its
//! error estimate allows, otherwise the same kernel reruns on
//! [`MultiFloat`] with enough limbs to absorb the measured cancellation.

pub mod diagram;
pub mod fusion;
pub mod growth;
pub mod multifloat;
pub mod real;
pub mod rmatrix;
pub mod rt;

use std::any::Any;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::{Complex, Complex64};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{negative_chain, Slope};
use crate::census;
use crate::twistknots::{DoubleTwistKnot, Family};
use crate::{Error, Result};

use diagram::Diagram;
use fusion::{colored_jones_fusion, colored_jones_table, complex_norm_sqr, fold_color, ColorValue, LevelTables};
pub use growth::{is_monotone, ltv_estimate, monotone_toward, GrowthEstimate};
use multifloat::MultiFloat;
use real::Real;

/// Accepted relative error of an adaptive evaluation.
pub const TARGET_REL_ERROR: f64 = 1e-12;
/// Condition number above which a double-precision result is redone in extended precision.
pub const DOUBLE_CONDITION_LIMIT: f64 = 1e6;
/// Limb counts available to the extended path.
pub const LIMB_LEVELS: [usize; 9] = [2, 3, 4, 6, 8, 12, 16, 24, 32];

/// Level `r` with `q = e^{2πi/r}`, `t = q²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnityContext {
    r: u64,
}

impl RootOfUnityContext {
    pub fn new(r: u64) -> Result<Self> {
        if r < 3 || r.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("level r = {r} must be odd and at least 3")));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn q(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.r as f64)
    }

    pub fn t(&self) -> Complex64 {
        self.q() * self.q()
    }

    /// `I_r = {0, 2, ..., r-3}`.
    pub fn color_set(&self) -> Vec<u64> {
        (0..self.r - 1).step_by(2).collect()
    }

    /// `η_r² = (2/r) sin²(2π/r)`.
    pub fn eta_squared(&self) -> f64 {
        let s = (2.0 * std::f64::consts::PI / self.r as f64).sin();
        2.0 / self.r as f64 * s * s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Machine doubles; redone in extended precision when the condition
    /// estimate exceeds [`DOUBLE_CONDITION_LIMIT`] or a value overflows.
    Double,
    /// Adaptive precision until the error estimate is below [`TARGET_REL_ERROR`].
    Extended,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        })
    }
}

impl FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            _ => Err(Error::Parse(format!("unknown precision {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fusion,
    RMatrix,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fusion => "fusion",
            Method::RMatrix => "rmatrix",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fusion" => Ok(Method::Fusion),
            "rmatrix" | "r-matrix" => Ok(Method::RMatrix),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ColoredJonesValue {
    pub knot: DoubleTwistKnot,
    pub color: u64,
    pub value: Complex64,
    /// Significand bits of the accepted evaluation.
    pub bits: u32,
    pub log10_condition: f64,
}

/// One Turaev–Viro evaluation. `tv` may overflow to infinity; `log_tv` does not.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TVSample {
    pub r: u64,
    pub tv: f64,
    pub log_tv: f64,
    /// `(2π/r)·log tv`.
    pub logslope: f64,
    pub bits: u32,
    pub log10_condition: f64,
}

impl TVSample {
    fn from_log(r: u64, log_tv: f64, bits: u32, log_cond: f64) -> Self {
        TVSample {
            r,
            tv: log_tv.exp(),
            log_tv,
            logslope: 2.0 * std::f64::consts::PI / r as f64 * log_tv,
            bits,
            log10_condition: log_cond / std::f64::consts::LN_10,
        }
    }
}

/// `[n] = sin(2πn/r)/sin(2π/r)`.
pub fn quantum_integer(n: i64, ctx: &RootOfUnityContext) -> f64 {
    let x = 2.0 * std::f64::consts::PI / ctx.r as f64;
    let v = (x * n as f64).sin() / x.sin();
    if n.rem_euclid(ctx.r as i64) == 0 {
        0.0
    } else {
        v
    }
}

macro_rules! at_limbs {
    ($limbs:expr, $T:ident, $body:block) => {
        match $limbs {
            2 => {
                type $T = MultiFloat<2>;
                $body
            }
            3 => {
                type $T = MultiFloat<3>;
                $body
            }
            4 => {
                type $T = MultiFloat<4>;
                $body
            }
            6 => {
                type $T = MultiFloat<6>;
                $body
            }
            8 => {
                type $T = MultiFloat<8>;
                $body
            }
            12 => {
                type $T = MultiFloat<12>;
                $body
            }
            16 => {
                type $T = MultiFloat<16>;
                $body
            }
            24 => {
                type $T = MultiFloat<24>;
                $body
            }
            32 => {
                type $T = MultiFloat<32>;
                $body
            }
            other => unreachable!("unsupported limb count {other}"),
        }
    };
}

fn limbs_for(bits: f64) -> Result<usize> {
    LIMB_LEVELS
        .iter()
        .copied()
        .find(|&l| (64 * l) as f64 >= bits)
        .ok_or_else(|| Error::Numerical(format!("{bits:.0} bits exceed the largest supported precision")))
}

/// Starting precision for the extended path: the fusion sums lose about `0.61·r` bits.
fn initial_bits(r: u64) -> f64 {
    64.0 + 0.75 * r as f64
}

fn next_bits(current: u32, err: f64) -> f64 {
    let extra = if err.is_finite() && err > 0.0 { (err / TARGET_REL_ERROR).log2() + 16.0 } else { 128.0 };
    current as f64 + extra.max(64.0)
}

fn to_c64<T: Real>(z: Complex<T>) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

fn check_level(r: u64, min: u64) -> Result<RootOfUnityContext> {
    let ctx = RootOfUnityContext::new(r)?;
    if r < min {
        return Err(Error::InvalidArgument(format!("level r = {r} must be at least {min}")));
    }
    Ok(ctx)
}

fn writhe(k: &DoubleTwistKnot) -> Result<i64> {
    Ok(Diagram::standard(k)?.writhe())
}

/// All `J'_N`, `N ≤ (r-1)/2`, for one knot at one precision.
pub struct JonesData<T> {
    pub tables: LevelTables<T>,
    pub values: Vec<ColorValue<T>>,
}

type CacheKey = (i64, i64, u64, u32);
type Cache = Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Drops all cached colored Jones tables.
pub fn clear_cache() {
    cache().lock().expect("cache lock").clear();
}

fn jones_data<T: Real>(k: &DoubleTwistKnot, r: u64) -> Result<Arc<JonesData<T>>> {
    let key = (k.m, k.n, r, T::SIGNIFICAND_BITS);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        if let Ok(d) = hit.clone().downcast::<JonesData<T>>() {
            return Ok(d);
        }
    }
    let w = writhe(k)?;
    let tables = LevelTables::<T>::new(r);
    let values = colored_jones_table(&tables, k.m, k.n, w);
    let data = Arc::new(JonesData { tables, values });
    cache().lock().expect("cache lock").insert(key, data.clone());
    Ok(data)
}

/// Result of one job attempt.
struct Attempt<O> {
    out: O,
    rel_error: f64,
    log_cond: f64,
    finite: bool,
}

/// Computation over a cached colored Jones table.
trait TableJob: Sync {
    type Out: Send;
    fn run<T: Real>(&self, d: &JonesData<T>) -> Attempt<Self::Out>;
    /// Output for a result that vanishes to every precision tried.
    fn zero(&self) -> Self::Out;
}

fn table_log_norm<T: Real>(d: &JonesData<T>) -> f64 {
    d.values.iter().map(|v| complex_norm_sqr(v.value).ln_f64() / 2.0).fold(f64::NEG_INFINITY, f64::max)
}

/// `ln(max Σ|terms| / max |J'_N|)`: cancellation relative to the table's size.
fn table_log_cond<T: Real>(d: &JonesData<T>) -> f64 {
    let scale = d.values.iter().map(|v| v.log_scale).fold(f64::NEG_INFINITY, f64::max);
    (scale - table_log_norm(d)).max(0.0)
}

/// Largest colored Jones error relative to the largest value in the table.
fn table_rel_error<T: Real>(d: &JonesData<T>) -> f64 {
    let err = d.values.iter().map(|v| v.log_abs_error()).fold(f64::NEG_INFINITY, f64::max);
    (err - table_log_norm(d)).exp()
}

/// Whether a result carries fewer than 64 significant bits at `bits` of precision.
fn at_noise_floor(log_cond: f64, finite: bool, bits: u32) -> bool {
    !finite || log_cond / std::f64::consts::LN_2 > bits as f64 - 64.0
}

/// Extra bits required before a result stuck at the noise floor is declared zero.
const ZERO_CONFIRM_BITS: u32 = 128;

fn run_adaptive<J: TableJob>(k: &DoubleTwistKnot, r: u64, precision: Precision, job: &J) -> Result<(J::Out, u32, f64)> {
    let d = jones_data::<f64>(k, r)?;
    let a = job.run(&d);
    let lc = a.log_cond.max(table_log_cond(&d));
    let accept = match precision {
        Precision::Double => a.finite && lc.is_finite() && lc <= DOUBLE_CONDITION_LIMIT.ln(),
        Precision::Extended => a.finite && a.rel_error <= TARGET_REL_ERROR,
    };
    if accept {
        return Ok((a.out, f64::SIGNIFICAND_BITS, lc));
    }
    let mut bits = initial_bits(r);
    let mut noise_at: Option<u32> = None;
    loop {
        let limbs = limbs_for(bits)?;
        let a = at_limbs!(limbs, T, {
            let d = jones_data::<T>(k, r)?;
            let mut a = job.run(&d);
            a.log_cond = a.log_cond.max(table_log_cond(&d));
            a
        });
        let have = 64 * limbs as u32;
        if a.finite && a.rel_error <= TARGET_REL_ERROR {
            return Ok((a.out, have, a.log_cond));
        }
        if at_noise_floor(a.log_cond, a.finite, have) {
            match noise_at {
                Some(first) if have >= first + ZERO_CONFIRM_BITS => return Ok((job.zero(), have, f64::INFINITY)),
                Some(_) => {}
                None => noise_at = Some(have),
            }
            bits = (have + ZERO_CONFIRM_BITS) as f64;
        } else {
            bits = next_bits(have, a.rel_error);
        }
    }
}

struct ComplementJob;

impl TableJob for ComplementJob {
    type Out = f64;
    fn run<T: Real>(&self, d: &JonesData<T>) -> Attempt<f64> {
        let sum = d.values.iter().fold(T::zero(), |acc, v| acc + complex_norm_sqr(v.value));
        let ln = sum.ln_f64();
        Attempt {
            out: ln,
            rel_error: 2.0 * table_rel_error(d),
            log_cond: 0.0,
            finite: sum.is_finite() && ln.is_finite(),
        }
    }
    fn zero(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

struct SurgeryJob {
    chain: Vec<i64>,
}

impl TableJob for SurgeryJob {
    type Out = f64;
    fn run<T: Real>(&self, d: &JonesData<T>) -> Attempt<f64> {
        let v = rt::rt_chain(&d.tables, &self.chain, &d.values);
        Attempt { out: v.log_abs, rel_error: v.rel_error, log_cond: v.log_cond, finite: v.log_abs.is_finite() }
    }
    fn zero(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

struct AllColorsJob;

impl TableJob for AllColorsJob {
    type Out = Vec<(Complex64, f64)>;
    fn run<T: Real>(&self, d: &JonesData<T>) -> Attempt<Self::Out> {
        let out: Vec<(Complex64, f64)> = d.values.iter().map(|v| (to_c64(v.value), v.log_cond)).collect();
        let finite = out.iter().all(|(z, _)| z.re.is_finite() && z.im.is_finite());
        Attempt { out, rel_error: table_rel_error(d), log_cond: 0.0, finite }
    }
    fn zero(&self) -> Self::Out {
        Vec::new()
    }
}

fn check_color(n_col: u64, r: u64) -> Result<()> {
    if n_col == 0 {
        return Err(Error::InvalidArgument("color N must be at least 1".into()));
    }
    if n_col >= r {
        return Err(Error::InvalidArgument(format!("color N = {n_col} must be below r = {r}")));
    }
    Ok(())
}

fn single_color<T: Real>(k: &DoubleTwistKnot, r: u64, a: usize, w: i64) -> ColorValue<T> {
    let tab = LevelTables::<T>::new(r);
    colored_jones_fusion(&tab, k.m, k.n, w, a)
}

/// `J'_N(k)` by fusion at the requested precision policy. Colors above
/// `(r-1)/2` use `J'_N = J'_{r-N}`.
pub fn colored_jones_with(
    k: &DoubleTwistKnot,
    n_col: u64,
    ctx: &RootOfUnityContext,
    precision: Precision,
) -> Result<ColoredJonesValue> {
    let r = ctx.r;
    check_color(n_col, r)?;
    let w = writhe(k)?;
    let a = fold_color(r, n_col) as usize - 1;
    let make = |value: Complex64, bits: u32, lc: f64| ColoredJonesValue {
        knot: *k,
        color: n_col,
        value,
        bits,
        log10_condition: lc / std::f64::consts::LN_10,
    };
    let v = single_color::<f64>(k, r, a, w);
    let z = to_c64(v.value);
    let finite = z.re.is_finite() && z.im.is_finite();
    let accept = match precision {
        Precision::Double => finite && v.log_cond <= DOUBLE_CONDITION_LIMIT.ln(),
        Precision::Extended => finite && v.rel_error() <= TARGET_REL_ERROR,
    };
    if accept {
        return Ok(make(z, f64::SIGNIFICAND_BITS, v.log_cond));
    }
    let mut bits = initial_bits(r).min(64.0 + v.log_cond / std::f64::consts::LN_2 + 64.0).max(128.0);
    if !v.log_cond.is_finite() {
        bits = initial_bits(r);
    }
    let mut noise_at: Option<u32> = None;
    loop {
        let limbs = limbs_for(bits)?;
        let (z, err, lc) = at_limbs!(limbs, T, {
            let v = single_color::<T>(k, r, a, w);
            (to_c64(v.value), v.rel_error(), v.log_cond)
        });
        let have = 64 * limbs as u32;
        if err <= TARGET_REL_ERROR {
            return Ok(make(z, have, lc));
        }
        if at_noise_floor(lc, lc.is_finite(), have) {
            match noise_at {
                Some(first) if have >= first + ZERO_CONFIRM_BITS => {
                    return Ok(make(Complex64::new(0.0, 0.0), have, f64::INFINITY))
                }
                Some(_) => {}
                None => noise_at = Some(have),
            }
            bits = (have + ZERO_CONFIRM_BITS) as f64;
        } else {
            bits = next_bits(have, err);
        }
    }
}

/// `J'_N(D(m, n))` at `t = e^{4πi/r}`, normalized to 1 on the unknot.
pub fn colored_jones(k: &DoubleTwistKnot, n_col: u64, ctx: &RootOfUnityContext) -> Result<Complex64> {
    Ok(colored_jones_with(k, n_col, ctx, Precision::Extended)?.value)
}

/// `J'_N` by the chosen evaluator.
pub fn colored_jones_by(
    k: &DoubleTwistKnot,
    n_col: u64,
    ctx: &RootOfUnityContext,
    method: Method,
) -> Result<Complex64> {
    match method {
        Method::Fusion => colored_jones(k, n_col, ctx),
        Method::RMatrix => colored_jones_rmatrix_oracle(k, n_col, ctx),
    }
}

/// `J'_1, ..., J'_{(r-1)/2}` with per-color condition estimates.
#[derive(Clone, Debug, Serialize)]
pub struct JonesTable {
    pub knot: DoubleTwistKnot,
    pub r: u64,
    pub bits: u32,
    pub values: Vec<Complex64>,
    pub log10_condition: Vec<f64>,
}

pub fn colored_jones_all(k: &DoubleTwistKnot, ctx: &RootOfUnityContext, precision: Precision) -> Result<JonesTable> {
    let (out, bits, _) = run_adaptive(k, ctx.r, precision, &AllColorsJob)?;
    Ok(JonesTable {
        knot: *k,
        r: ctx.r,
        bits,
        values: out.iter().map(|x| x.0).collect(),
        log10_condition: out.iter().map(|x| x.1 / std::f64::consts::LN_10).collect(),
    })
}

/// R-matrix state sum; limited to `|m|+|n| ≤ 12`, `N ≤ 8`.
pub fn colored_jones_rmatrix_oracle(k: &DoubleTwistKnot, n_col: u64, ctx: &RootOfUnityContext) -> Result<Complex64> {
    rmatrix::colored_jones_rmatrix(k, n_col, ctx.r)
}

/// `J'_2` from the brute-force Kauffman bracket of the standard diagram.
pub fn kauffman_bracket_jones(k: &DoubleTwistKnot, ctx: &RootOfUnityContext) -> Result<Complex64> {
    if k.m.unsigned_abs() + k.n.unsigned_abs() > 20 {
        return Err(Error::OracleTooExpensive(format!("{k} has too many crossings for the bracket state sum")));
    }
    Ok(diagram::bracket_jones(&Diagram::standard(k)?, ctx.r))
}

/// Figure-eight cross-check sum, accumulated at 256 bits since its terms alternate.
pub fn figure_eight_check_sum(n_col: u64, ctx: &RootOfUnityContext) -> f64 {
    fusion::figure_eight_sum::<MultiFloat<4>>(n_col, ctx.r).to_f64()
}

/// `TV_r(S³ \ k) = η_r² Σ_{N=1}^{(r-1)/2} |J'_N|²`.
pub fn tv_knot_complement_with(k: &DoubleTwistKnot, r: u64, precision: Precision) -> Result<TVSample> {
    let ctx = check_level(r, 5)?;
    let (ln_sum, bits, lc) = run_adaptive(k, r, precision, &ComplementJob)?;
    Ok(TVSample::from_log(r, ctx.eta_squared().ln() + ln_sum, bits, lc))
}

pub fn tv_knot_complement(k: &DoubleTwistKnot, r: u64) -> Result<TVSample> {
    tv_knot_complement_with(k, r, Precision::Double)
}

/// `TV_r = |RT_r|²` of surgery on `k` along the framed chain `[a_1, ..., a_k]`.
pub fn tv_surgery_chain(k: &DoubleTwistKnot, chain: &[i64], r: u64, precision: Precision) -> Result<TVSample> {
    check_level(r, 5)?;
    if chain.is_empty() {
        return Err(Error::InvalidArgument("empty surgery chain".into()));
    }
    let job = SurgeryJob { chain: chain.to_vec() };
    let (log_abs, bits, lc) = run_adaptive(k, r, precision, &job)?;
    Ok(TVSample::from_log(r, 2.0 * log_abs, bits, lc))
}

/// `TV_r(M_k(s))` via the continued fraction of `s`.
pub fn tv_surgery_with(k: &DoubleTwistKnot, s: &Slope, r: u64, precision: Precision) -> Result<TVSample> {
    if s.is_infinite() {
        return Err(Error::InvalidSlope("the slope 1/0 gives S³ back".into()));
    }
    let chain = negative_chain(s).map_err(|e| Error::InvalidSlope(e.to_string()))?;
    tv_surgery_chain(k, &chain, r, precision)
}

pub fn tv_surgery(k: &DoubleTwistKnot, s: &Slope, r: u64) -> Result<TVSample> {
    tv_surgery_with(k, s, r, Precision::Double)
}

/// Samples at each `r`, evaluated in parallel and returned in input order.
pub fn tv_sweep(k: &DoubleTwistKnot, slope: Option<&Slope>, rs: &[u64], precision: Precision) -> Result<Vec<TVSample>> {
    rs.par_iter()
        .map(|&r| match slope {
            None => tv_knot_complement_with(k, r, precision),
            Some(s) => tv_surgery_with(k, s, r, precision),
        })
        .collect()
}

/// `r_min, r_min + step, ...` up to `r_max`, all odd.
pub fn odd_r_range(r_min: u64, r_max: u64, step: u64) -> Result<Vec<u64>> {
    if step == 0 || step % 2 == 1 {
        return Err(Error::InvalidArgument(format!("r step {step} must be positive and even")));
    }
    if r_min.is_multiple_of(2) || r_min < 5 {
        return Err(Error::InvalidArgument(format!("r_min = {r_min} must be odd and at least 5")));
    }
    if r_max < r_min {
        return Err(Error::InvalidArgument(format!("r_max = {r_max} is below r_min = {r_min}")));
    }
    Ok((r_min..=r_max).step_by(step as usize).collect())
}

/// Samples, fit, and comparison target for one manifold.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub samples: Vec<TVSample>,
    pub estimate: Option<GrowthEstimate>,
    pub target: Option<f64>,
    pub target_source: Option<String>,
    /// `extrapolated / target - 1`.
    pub relative_deviation: Option<f64>,
    pub monotone: bool,
    pub monotone_toward_target: Option<bool>,
}

impl SweepReport {
    pub fn new(samples: Vec<TVSample>, target: Option<(f64, String)>) -> Self {
        let estimate = ltv_estimate(&samples).ok();
        let (target, target_source) = match target {
            Some((v, s)) => (Some(v), Some(s)),
            None => (None, None),
        };
        let relative_deviation = match (&estimate, target) {
            (Some(e), Some(t)) if t != 0.0 => Some(e.extrapolated / t - 1.0),
            _ => None,
        };
        let monotone = is_monotone(&samples);
        let monotone_toward_target = target.map(|t| monotone_toward(&samples, t));
        Self { samples, estimate, target, target_source, relative_deviation, monotone, monotone_toward_target }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QHypReport {
    pub knot: DoubleTwistKnot,
    pub knot_name: Option<String>,
    pub slope: Option<Slope>,
    pub complement: SweepReport,
    pub filling: Option<SweepReport>,
    /// `extrapolated(complement) ≥ extrapolated(filling) - tolerance`.
    pub inequality_holds: Option<bool>,
    pub tolerance: f64,
}

/// Tabulated name of `k` (or of its mirror, flagged `true`).
pub fn knot_name(k: &DoubleTwistKnot) -> Option<(String, bool)> {
    for (kk, mirrored) in [(*k, false), (k.mirror(), true)] {
        if let Some((fam, n)) = Family::identify(&kk).first() {
            if let Ok(row) = census::lookup(*fam, *n) {
                return Some((row.rolfsen_name.clone(), mirrored));
            }
        }
    }
    None
}

/// Hyperbolic volume of the complement, and of the filling along `slope`,
/// from the census when tabulated.
pub fn census_targets(k: &DoubleTwistKnot, slope: Option<&Slope>) -> (Option<(f64, String)>, Option<(f64, String)>) {
    let Some((name, mirrored)) = knot_name(k) else {
        return (None, None);
    };
    let complement = census::census()
        .iter()
        .find(|r| r.knot_name.as_deref() == Some(name.as_str()))
        .map(|r| (r.vol_complement(), format!("{} complement ({name})", r.census_name)));
    let filling = slope.and_then(|s| {
        let s = if mirrored { s.neg() } else { s.clone() };
        census::census().iter().find_map(|row| {
            let vf = row.vol_filled()?;
            let on_k = row.knot_name.as_deref() == Some(name.as_str()) && row.slope_on_k.as_ref() == Some(&s);
            let on_41 = name == "4_1" && row.slope_on_41.as_ref().is_some_and(|x| *x == s || x.neg() == s);
            (on_k || on_41).then(|| (vf, format!("{} filling", row.census_name)))
        })
    });
    (complement, filling)
}

/// Complement sweep, optional filling sweep, estimates, census targets, and
/// the check that the complement grows at least as fast as the filling.
pub fn q_hyperbolicity_report(
    k: &DoubleTwistKnot,
    slope: Option<&Slope>,
    rs: &[u64],
    precision: Precision,
) -> Result<QHypReport> {
    if k.is_link() {
        return Err(Error::NotAKnot(format!("{k} is a two-component link")));
    }
    if k.is_unknot() {
        return Err(Error::InvalidArgument(format!("{k} is the unknot")));
    }
    let (ct, ft) = census_targets(k, slope);
    let complement = SweepReport::new(tv_sweep(k, None, rs, precision)?, ct);
    let filling = match slope {
        Some(s) => Some(SweepReport::new(tv_sweep(k, Some(s), rs, precision)?, ft)),
        None => None,
    };
    let tolerance = 0.05;
    let inequality_holds = match (&complement.estimate, filling.as_ref().and_then(|f| f.estimate.as_ref())) {
        (Some(c), Some(f)) => Some(c.extrapolated >= f.extrapolated - tolerance),
        _ => None,
    };
    Ok(QHypReport {
        knot: *k,
        knot_name: knot_name(k).map(|x| x.0),
        slope: slope.cloned(),
        complement,
        filling,
        inequality_holds,
        tolerance,
    })
}
