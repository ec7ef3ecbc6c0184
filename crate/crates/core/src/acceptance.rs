//! The twelve acceptance criteria, each runnable on its own. Shared by the
//! `acceptance` integration test and `qhyp verify-all`.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::census;
use crate::mcg;
use crate::properties;
use crate::quantum::{
    self, colored_jones, colored_jones_all, colored_jones_rmatrix_oracle, figure_eight_check_sum,
    kauffman_bracket_jones, ltv_estimate, odd_r_range, q_hyperbolicity_report, tv_sweep, GrowthEstimate, Precision,
    RootOfUnityContext, TVSample,
};
use crate::surgery;
use crate::twistknots::{self, alexander, fiber_genus, fibered_cfe, fraction_of, is_monic};
use crate::{alternating_cfe, cfe_eval, Complex64, DoubleTwistKnot, ExactRational, LaurentPolynomial, Result, Slope};

/// Volume of the figure-eight complement.
pub const FIGURE_EIGHT_VOLUME: f64 = 2.029883;
/// Volume of `M_{4_1}(5)`.
pub const MEYERHOFF_VOLUME: f64 = 0.9814;
/// Volume of `M_{4_1}(-7/2)`.
pub const SEVEN_HALVES_VOLUME: f64 = 1.649610;

pub const CUSPED_TOLERANCE: f64 = 0.02;
pub const CUSPED_RAW_EXCESS: f64 = 0.10;
pub const CLOSED_TOLERANCE: f64 = 0.10;
pub const EXCEPTIONAL_CEILING: f64 = 0.1;
pub const INEQUALITY_SLACK: f64 = 0.05;
pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const MIN_PROPERTY_CASES: u32 = 100;

pub const TITLES: [&str; 12] = [
    "continued fraction identity",
    "slope calculus",
    "exceptional slopes of 4_1",
    "Alexander polynomial of D(2n,-2)",
    "fiberedness and genus",
    "monodromy cross-check",
    "colored Jones oracle triangle",
    "cusped volume target",
    "closed filling targets",
    "q-hyperbolicity inequality",
    "census bounds",
    "property suites",
];

#[derive(Clone, Debug)]
pub struct Config {
    /// Levels for the growth-rate criteria 8 to 10.
    pub rs: Vec<u64>,
    pub property_cases: u32,
}

impl Default for Config {
    fn default() -> Self {
        Self { rs: odd_r_range(101, 501, 50).expect("valid range"), property_cases: 256 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {}: {verdict} {} ({}; {:.1} s)", self.id, self.title, self.detail, self.seconds)
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs criterion `id` (1 to 12).
pub fn run(id: u8, cfg: &Config) -> Outcome {
    let start = Instant::now();
    let res = match id {
        1 => cfe_identity(),
        2 => slope_calculus(),
        3 => exceptional_slopes(),
        4 => alexander_family(),
        5 => fiberedness(),
        6 => monodromy(),
        7 => oracle_triangle(),
        8 => cusped_target(cfg),
        9 => closed_targets(cfg),
        10 => inequality(cfg),
        11 => census_bounds(),
        12 => property_suites(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let title = TITLES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    Outcome { id, title, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs the given criteria in order; `None` runs all twelve.
pub fn run_all(ids: Option<&[u8]>, cfg: &Config, mut on_done: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let all: Vec<u8> = (1..=12).collect();
    ids.unwrap_or(&all)
        .iter()
        .map(|&id| {
            let o = run(id, cfg);
            on_done(&o);
            o
        })
        .collect()
}

fn cfe_identity() -> Check {
    for g in 1..=200i64 {
        let v = cfe_eval(&lift(alternating_cfe(g))?);
        let want = lift(ExactRational::new(2 * g, 6 * g - 1))?;
        ensure(v == want, || format!("g = {g}: {v} != {want}"))?;
    }
    Ok("2g/(6g-1) exact for g = 1..200".into())
}

fn slope_calculus() -> Check {
    for n in (-10i64..=10).filter(|&n| n != 0) {
        let d = lift(surgery::pipeline_d(n))?;
        ensure(d == ExactRational::from_int(4 * n + 1), || format!("D_{n}: {d}"))?;
        let dp = lift(surgery::pipeline_dprime(n))?;
        ensure(dp == ExactRational::from_int(1), || format!("D'_{n}: {dp}"))?;
    }
    Ok("4n+1 and 1 for n in [-10,10] minus 0".into())
}

fn exceptional_slopes() -> Check {
    let mut found = BTreeSet::new();
    let mut scanned = 0;
    for p in -12i64..=12 {
        for q in 0i64..=12 {
            if (p, q) == (0, 0) || (q == 0 && p != 1) {
                continue;
            }
            let s = if q == 0 { ExactRational::infinity() } else { lift(Slope::new(p, q))? };
            scanned += 1;
            if surgery::is_exceptional_41(&s) {
                found.insert(s.to_string());
            }
        }
    }
    let mut want: BTreeSet<String> = (-4i64..=4).map(|n| ExactRational::from_int(n).to_string()).collect();
    want.insert(ExactRational::infinity().to_string());
    ensure(found == want, || format!("exceptional set {found:?}, expected {want:?}"))?;
    Ok(format!("{} exceptional among {scanned} slopes", found.len()))
}

fn alexander_family() -> Check {
    for n in (-6i64..=6).filter(|&n| n != 0) {
        let k = DoubleTwistKnot::new(2 * n, -2);
        let a = alexander(&lift(fraction_of(&k))?);
        let want = LaurentPolynomial::from_terms([(1, n), (0, -(2 * n + 1)), (-1, n)]);
        ensure(a.doteq(&want), || format!("{k}: {a} vs {want}"))?;
        let monic = lift(is_monic(&a))?;
        ensure(monic == (n.abs() == 1), || format!("{k}: monic = {monic}"))?;
    }
    Ok("nt - (2n+1) + n/t, monic iff |n| = 1, for n in [-6,6] minus 0".into())
}

fn genus_of(k: &DoubleTwistKnot) -> std::result::Result<u64, String> {
    let f = lift(fraction_of(k))?;
    let cfe = fibered_cfe(&f).ok_or_else(|| format!("{k} not fibered"))?;
    lift(fiber_genus(&cfe))
}

fn fiberedness() -> Check {
    for g in 1..=10i64 {
        let k = DoubleTwistKnot::new(3, 2 * g);
        let got = genus_of(&k)?;
        ensure(got == g as u64, || format!("{k}: genus {got}, expected {g}"))?;
    }
    for (name, g) in [("4_1", 1u64), ("6_2", 2), ("8_2", 3), ("10_2", 4)] {
        let row = census::families_of(name).into_iter().next().ok_or_else(|| format!("{name} not tabulated"))?;
        let k = row.family.knot(row.n);
        let got = genus_of(&k)?;
        ensure(got == g, || format!("{name} = {k}: genus {got}, expected {g}"))?;
    }
    Ok("D(3,2g) genus g for g = 1..10; 4_1, 6_2, 8_2, 10_2 genus 1..4".into())
}

fn monodromy() -> Check {
    let mut least = f64::INFINITY;
    for g in 1..=8usize {
        let rep = lift(mcg::fibered_crosscheck(g))?;
        ensure(rep.agrees && rep.symplectic, || {
            format!("g = {g}: agrees {} symplectic {}", rep.agrees, rep.symplectic)
        })?;
        for w in [lift(mcg::phi_word(g))?, lift(mcg::phi_prime_word(g))?] {
            let s = lift(mcg::stretch_certificate(&w))?;
            ensure(s > 1.0, || format!("g = {g}: stretch {s}"))?;
            least = least.min(s);
        }
    }
    Ok(format!("g = 1..8 agree, least stretch {least:.4}"))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn oracle_triangle() -> Check {
    let mut worst = [0.0f64; 3];
    for r in [5u64, 7, 9, 11] {
        let c = lift(RootOfUnityContext::new(r))?;
        for m in [-4i64, -3, -2, 2, 3, 4] {
            for n in [-4i64, -3, -2, 2, 3, 4] {
                let k = DoubleTwistKnot::new(m, n);
                if k.is_link() {
                    continue;
                }
                for n_col in 1..=6u64.min(r - 1) {
                    let e =
                        rel(lift(colored_jones(&k, n_col, &c))?, lift(colored_jones_rmatrix_oracle(&k, n_col, &c))?);
                    ensure(e < ORACLE_TOLERANCE, || format!("{k} N={n_col} r={r}: R-matrix rel {e:.2e}"))?;
                    worst[0] = worst[0].max(e);
                }
            }
        }
    }
    for r in [5u64, 7, 11, 13] {
        let c = lift(RootOfUnityContext::new(r))?;
        for m in -10i64..=10 {
            for n in -10i64..=10 {
                let k = DoubleTwistKnot::new(m, n);
                if m.abs() + n.abs() > 10 || k.is_link() {
                    continue;
                }
                let e = rel(lift(colored_jones(&k, 2, &c))?, lift(kauffman_bracket_jones(&k, &c))?);
                ensure(e < ORACLE_TOLERANCE, || format!("{k} r={r}: bracket rel {e:.2e}"))?;
                worst[1] = worst[1].max(e);
            }
        }
    }
    let f8 = DoubleTwistKnot::new(2, -2);
    for r in (5u64..=101).step_by(2) {
        let c = lift(RootOfUnityContext::new(r))?;
        let table = lift(colored_jones_all(&f8, &c, Precision::Extended))?;
        for (i, z) in table.values.iter().enumerate() {
            let s = figure_eight_check_sum(i as u64 + 1, &c);
            let e = rel(*z, Complex64::new(s, 0.0));
            ensure(e < ORACLE_TOLERANCE, || format!("4_1 N={} r={r}: closed-form rel {e:.2e}", i + 1))?;
            worst[2] = worst[2].max(e);
        }
    }
    Ok(format!("worst rel R-matrix {:.1e}, bracket {:.1e}, figure-eight sum {:.1e}", worst[0], worst[1], worst[2]))
}

fn estimate(samples: &[TVSample]) -> std::result::Result<GrowthEstimate, String> {
    lift(ltv_estimate(samples))
}

fn sweep(k: &DoubleTwistKnot, slope: Option<&Slope>, cfg: &Config) -> std::result::Result<Vec<TVSample>, String> {
    lift(tv_sweep(k, slope, &cfg.rs, Precision::Extended))
}

fn cusped_target(cfg: &Config) -> Check {
    let e = estimate(&sweep(&DoubleTwistKnot::new(2, -2), None, cfg)?)?;
    let v = FIGURE_EIGHT_VOLUME;
    let dev = e.extrapolated / v - 1.0;
    let detail = format!("extrapolated {:.4} ({:+.2}%), raw_last {:.4}", e.extrapolated, 100.0 * dev, e.raw_last);
    ensure(dev.abs() <= CUSPED_TOLERANCE, || format!("{detail}: outside 2%"))?;
    ensure(e.raw_last >= v && e.raw_last <= v * (1.0 + CUSPED_RAW_EXCESS), || {
        format!("{detail}: raw_last outside +10%/-0%")
    })?;
    Ok(detail)
}

fn closed_targets(cfg: &Config) -> Check {
    let f8 = DoubleTwistKnot::new(2, -2);
    let mut parts = Vec::new();
    for (p, q, v) in [(5i64, 1i64, MEYERHOFF_VOLUME), (-7, 2, SEVEN_HALVES_VOLUME)] {
        let s = lift(Slope::new(p, q))?;
        let samples = sweep(&f8, Some(&s), cfg)?;
        let e = estimate(&samples)?;
        let dev = e.extrapolated / v - 1.0;
        if dev.abs() <= CLOSED_TOLERANCE {
            parts.push(format!("4_1({s}) {:.4} ({:+.1}%)", e.extrapolated, 100.0 * dev));
        } else if quantum::growth::monotone_toward(&samples, v) {
            parts.push(format!("4_1({s}) {:.4} outside 10%, monotone toward {v}", e.extrapolated));
        } else {
            return Err(format!(
                "4_1({s}): extrapolated {:.4} ({:+.1}%) and not monotone toward {v}",
                e.extrapolated,
                100.0 * dev
            ));
        }
    }
    let one = sweep(&f8, Some(&ExactRational::from_int(1)), cfg)?;
    let finite: Vec<TVSample> = one.iter().filter(|s| s.logslope.is_finite()).cloned().collect();
    let (ext, last) = if finite.len() >= 4 {
        let e = estimate(&finite)?;
        (e.extrapolated, e.raw_last)
    } else {
        (f64::NEG_INFINITY, f64::NEG_INFINITY)
    };
    let detail = format!("4_1(1) extrapolated {ext:.4}, raw_last {last:.4}");
    ensure(ext <= EXCEPTIONAL_CEILING && last <= EXCEPTIONAL_CEILING, || {
        format!("{detail}: above {EXCEPTIONAL_CEILING}")
    })?;
    parts.push(detail);
    Ok(parts.join("; "))
}

fn inequality(cfg: &Config) -> Check {
    let mut parts = Vec::new();
    for n in [-2i64, 1, 2] {
        let (k, s) = (twistknots::Family::D.knot(n), ExactRational::from_int(4 * n + 1));
        let rep = lift(q_hyperbolicity_report(&k, Some(&s), &cfg.rs, Precision::Extended))?;
        let c = rep.complement.estimate.as_ref().ok_or("no complement estimate")?.extrapolated;
        let f = rep.filling.as_ref().and_then(|f| f.estimate.as_ref()).ok_or("no filling estimate")?.extrapolated;
        let line = format!("D_{n}: {c:.4} vs {f:.4}");
        ensure(c >= f - INEQUALITY_SLACK, || format!("{line} violates the inequality"))?;
        parts.push(line);
    }
    Ok(parts.join("; "))
}

fn census_bounds() -> Check {
    let rows = census::census();
    ensure(rows.len() == 62, || format!("{} census rows, expected 62", rows.len()))?;
    for row in rows {
        let b = census::check_volume_bounds(row);
        ensure(b.passes, || format!("{} fails the volume bounds", row.census_name))?;
    }
    let matches = census::family_rows_match();
    ensure(!matches.is_empty(), || "no family rows".into())?;
    for m in &matches {
        ensure(m.matches, || format!("{} ({}) does not match its family slopes", m.census_name, m.knot_name))?;
    }
    Ok(format!("62 rows within bounds, {} family rows match", matches.len()))
}

fn property_suites(cfg: &Config) -> Check {
    let cases = cfg.property_cases.max(MIN_PROPERTY_CASES);
    let suites = properties::suites();
    let failed: Vec<String> =
        suites.iter().filter_map(|s| s.run(cases).err().map(|e| format!("{}::{}: {e}", s.module, s.name))).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} suites at {cases} cases", suites.len()))
}
