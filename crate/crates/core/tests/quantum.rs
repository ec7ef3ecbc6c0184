//! Turaev–Viro and Reshetikhin–Turaev evaluations: basic values, error cases,
//! and identities forced by homeomorphic surgeries.

use qhyp::quantum::{
    colored_jones, ltv_estimate, odd_r_range, q_hyperbolicity_report, quantum_integer, tv_knot_complement, tv_surgery,
    tv_surgery_chain, tv_sweep, Precision, RootOfUnityContext, TVSample,
};
use qhyp::{DoubleTwistKnot, Error, ExactRational, Slope};

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

#[test]
fn context_invariants() {
    for r in (3u64..=41).step_by(2) {
        let c = RootOfUnityContext::new(r).unwrap();
        assert!((c.q().norm() - 1.0).abs() < 1e-15);
        assert!((c.q() * c.q() - c.t()).norm() < 1e-14);
        assert_eq!(c.color_set().len() as u64, (r - 1) / 2);
        assert_eq!(c.color_set().last().copied(), Some(r - 3));
    }
    assert!(RootOfUnityContext::new(8).is_err());
    assert!(RootOfUnityContext::new(1).is_err());
}

#[test]
fn quantum_integer_examples() {
    let c = RootOfUnityContext::new(5).unwrap();
    assert_eq!(quantum_integer(1, &c), 1.0);
    assert_eq!(quantum_integer(0, &c), 0.0);
    // [n] = sin(2πn/r)/sin(2π/r), so [2] = 2cos(2π/r)
    assert!((quantum_integer(2, &c) - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    assert!((quantum_integer(2, &c) - 0.618034).abs() < 1e-6);
    assert!((quantum_integer(-3, &c) + quantum_integer(3, &c)).abs() < 1e-12);
}

#[test]
fn unknot_family_is_trivial() {
    let k = DoubleTwistKnot::new(0, 5);
    for r in [7u64, 13, 31] {
        let c = RootOfUnityContext::new(r).unwrap();
        for n_col in 1..r {
            assert!((colored_jones(&k, n_col, &c).unwrap() - 1.0).norm() < 1e-9, "r={r} N={n_col}");
        }
    }
}

#[test]
fn colored_jones_rejects_bad_colors() {
    let c = RootOfUnityContext::new(11).unwrap();
    let k = DoubleTwistKnot::new(2, -2);
    assert!(colored_jones(&k, 0, &c).is_err());
    assert!(colored_jones(&k, 11, &c).is_err());
    assert!(colored_jones(&DoubleTwistKnot::new(3, 3), 2, &c).is_err());
}

#[test]
fn smallest_level_is_finite_and_nonnegative() {
    for (m, n) in [(2, -2), (2, 2), (4, -3), (-6, 5), (2, -3)] {
        let s = tv_knot_complement(&DoubleTwistKnot::new(m, n), 5).unwrap();
        assert!(s.tv.is_finite() && s.tv >= 0.0);
    }
    assert!(tv_knot_complement(&DoubleTwistKnot::new(2, -2), 3).is_err());
    assert!(tv_knot_complement(&DoubleTwistKnot::new(2, -2), 10).is_err());
}

#[test]
fn trefoil_complement_grows_slowly() {
    let rs = odd_r_range(51, 201, 50).unwrap();
    let s = tv_sweep(&DoubleTwistKnot::new(2, 2), None, &rs, Precision::Double).unwrap();
    for x in &s {
        assert!(x.logslope.abs() < 0.5, "r={} logslope {}", x.r, x.logslope);
    }
    let f8 = tv_sweep(&DoubleTwistKnot::new(2, -2), None, &rs, Precision::Double).unwrap();
    assert!(f8.iter().all(|x| x.logslope > 1.9));
}

#[test]
fn figure_eight_logslopes_decrease_toward_volume() {
    let rs = odd_r_range(51, 151, 20).unwrap();
    let s = tv_sweep(&DoubleTwistKnot::new(2, -2), None, &rs, Precision::Double).unwrap();
    assert!(s.windows(2).all(|w| w[1].logslope < w[0].logslope));
    assert!(s.iter().all(|x| x.logslope > 2.029883));
}

#[test]
fn surgery_rejects_infinity_and_even_levels() {
    let k = DoubleTwistKnot::new(2, -2);
    assert!(matches!(tv_surgery(&k, &ExactRational::infinity(), 11), Err(Error::InvalidSlope(_))));
    assert!(tv_surgery(&k, &slope(5, 1), 12).is_err());
}

#[test]
fn surgery_examples_at_small_levels() {
    let k = DoubleTwistKnot::new(2, -2);
    // |RT| of the Meyerhoff manifold at r = 9, 11, 13 from an independent evaluation
    for (r, rt) in [(9u64, 1.70339), (11, 1.50432), (13, 1.57160)] {
        let s = tv_surgery(&k, &slope(5, 1), r).unwrap();
        assert!((s.tv.sqrt() - rt).abs() < 5e-5, "r={r}: {}", s.tv.sqrt());
    }
}

#[test]
fn surgery_of_unknot_is_a_lens_space_or_sphere() {
    // ±1 surgery on the unknot gives S³ with |RT|² = 1/D² = 4 sin²(2π/r)/r
    let k = DoubleTwistKnot::new(0, 5);
    for r in [7u64, 11, 21] {
        let s3 = 4.0 * (2.0 * std::f64::consts::PI / r as f64).sin().powi(2) / r as f64;
        let a = tv_surgery(&k, &slope(1, 1), r).unwrap();
        let b = tv_surgery(&k, &slope(-1, 1), r).unwrap();
        assert!(close(a.tv, s3, 1e-9), "r={r}: {} vs {s3}", a.tv);
        assert!(close(b.tv, s3, 1e-9));
        // p and -p surgeries are L(p,1) with opposite orientations
        let p = tv_surgery(&k, &slope(5, 1), r).unwrap();
        let m = tv_surgery(&k, &slope(-5, 1), r).unwrap();
        assert!(close(p.tv, m.tv, 1e-9));
    }
}

/// `|RT|` of the boundary of the E8 plumbing of `(-2)`-framed unknots, by a
/// tree contraction independent of the knot code.
fn e8_plumbing_rt(r: u64) -> f64 {
    use qhyp::Complex64;
    use std::f64::consts::PI;
    let rf = r as f64;
    let cols: Vec<i64> = (0..r as i64 - 2).step_by(2).collect();
    let qi = |n: i64| (2.0 * PI * n as f64 / rf).sin() / (2.0 * PI / rf).sin();
    let theta = |c: i64| Complex64::from_polar(1.0, 2.0 * PI * (c * (c + 2)) as f64 / rf);
    let dl: Vec<f64> = cols.iter().map(|&c| qi(c + 1)).collect();
    let nc = cols.len();
    let s = |i: usize, j: usize| qi((cols[i] + 1) * (cols[j] + 1));
    let contract =
        |w: &[Complex64]| -> Vec<Complex64> { (0..nc).map(|i| (0..nc).map(|j| w[j] * s(i, j)).sum()).collect() };
    // an arm of `len` vertices ending in a leaf, seen from the trivalent vertex
    let arm = |len: usize| {
        let mut w: Vec<Complex64> = (0..nc).map(|i| theta(cols[i]) * dl[i]).collect();
        for _ in 1..len {
            w = contract(&w).iter().enumerate().map(|(i, x)| theta(cols[i]) * x).collect();
        }
        contract(&w)
    };
    let (a1, a2, a4) = (arm(1), arm(2), arm(4));
    let z: Complex64 = (0..nc).map(|i| theta(cols[i]) * a1[i] * a2[i] * a4[i] / dl[i]).sum();
    let d2: f64 = dl.iter().map(|x| x * x).sum();
    z.norm() / d2.powf(4.5)
}

#[test]
fn left_trefoil_minus_one_is_the_poincare_sphere() {
    let t = DoubleTwistKnot::new(2, 2);
    for r in [7u64, 9, 11, 13, 15, 21] {
        let e8 = e8_plumbing_rt(r);
        let minus = tv_surgery(&t, &slope(-1, 1), r).unwrap().tv.sqrt();
        let plus = tv_surgery(&t, &slope(1, 1), r).unwrap().tv.sqrt();
        assert!(close(minus, e8, 1e-9), "r={r}: {minus} vs {e8}");
        assert!(!close(plus, e8, 1e-3), "r={r}");
    }
}

#[test]
fn family_fillings_match_figure_eight_fillings() {
    let f8 = DoubleTwistKnot::new(2, -2);
    for n in [-3i64, -2, 1, 2, 3] {
        let k = DoubleTwistKnot::new(2 * n, -3);
        for r in [9u64, 13, 21, 31] {
            let a = tv_surgery(&k, &slope(4 * n + 1, 1), r).unwrap();
            let b = tv_surgery(&f8, &slope(-(4 * n + 1), n), r).unwrap();
            assert!(close(a.tv, b.tv, 1e-9), "D_{n} r={r}: {} vs {}", a.tv, b.tv);
        }
    }
    // with D(2,2) the left-handed trefoil, the D'_n identity holds for slope -1
    for n in [-3i64, -2, 2, 3] {
        let k = DoubleTwistKnot::new(2 * n, -2);
        for r in [9u64, 13, 21] {
            let a = tv_surgery(&k, &slope(-1, 1), r).unwrap();
            let b = tv_surgery(&f8, &slope(-1, n), r).unwrap();
            assert!(close(a.tv, b.tv, 1e-9), "D'_{n} r={r}: {} vs {}", a.tv, b.tv);
        }
    }
}

#[test]
fn opposite_chirality_differs() {
    let a = tv_surgery(&DoubleTwistKnot::new(2, -3), &slope(5, 1), 13).unwrap();
    let b = tv_surgery(&DoubleTwistKnot::new(2, -3), &slope(-5, 1), 13).unwrap();
    assert!(!close(a.tv, b.tv, 1e-3));
}

#[test]
fn chain_and_slope_entry_points_agree() {
    let k = DoubleTwistKnot::new(2, -2);
    let a = tv_surgery(&k, &slope(-7, 2), 21).unwrap();
    let b = tv_surgery_chain(&k, &[-3, 2], 21, Precision::Double).unwrap();
    assert!(close(a.tv, b.tv, 1e-12));
}

#[test]
fn precision_modes_agree() {
    let k = DoubleTwistKnot::new(4, -3);
    for r in [31u64, 61] {
        let d = tv_surgery(&k, &slope(9, 1), r).unwrap();
        let e = qhyp::quantum::tv_surgery_with(&k, &slope(9, 1), r, Precision::Extended).unwrap();
        assert!(close(d.tv, e.tv, 1e-6), "r={r}");
        let d = qhyp::quantum::tv_knot_complement_with(&k, r, Precision::Double).unwrap();
        let e = qhyp::quantum::tv_knot_complement_with(&k, r, Precision::Extended).unwrap();
        assert!(close(d.tv, e.tv, 1e-6), "r={r}");
    }
}

#[test]
fn sweep_is_ordered_and_deterministic() {
    let k = DoubleTwistKnot::new(2, -3);
    let rs = odd_r_range(11, 71, 10).unwrap();
    let a = tv_sweep(&k, Some(&slope(5, 1)), &rs, Precision::Double).unwrap();
    qhyp::quantum::clear_cache();
    let b = tv_sweep(&k, Some(&slope(5, 1)), &rs, Precision::Double).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.iter().map(|s| s.r).collect::<Vec<_>>(), rs);
}

#[test]
fn r_range_validation() {
    assert_eq!(odd_r_range(51, 501, 50).unwrap().len(), 10);
    assert!(odd_r_range(50, 100, 10).is_err());
    assert!(odd_r_range(51, 101, 5).is_err());
    assert!(odd_r_range(3, 11, 2).is_err());
}

#[test]
fn ltv_examples() {
    let mk = |r: u64, l: f64| TVSample { r, tv: 1.0, log_tv: 0.0, logslope: l, bits: 53, log10_condition: 0.0 };
    let s: Vec<_> = [21, 41, 61, 81].iter().map(|&r| mk(r, 0.75)).collect();
    let g = ltv_estimate(&s).unwrap();
    assert!((g.extrapolated - 0.75).abs() < 1e-12 && g.residual.is_finite());
    assert!(matches!(ltv_estimate(&s[..3]), Err(Error::InsufficientData(_))));
}

#[test]
fn report_for_5_2_with_slope_5() {
    let rs = odd_r_range(31, 91, 20).unwrap();
    let rep = q_hyperbolicity_report(&DoubleTwistKnot::new(2, -3), Some(&slope(5, 1)), &rs, Precision::Double).unwrap();
    assert_eq!(rep.knot_name.as_deref(), Some("5_2"));
    assert_eq!(rep.complement.target, Some(2.828122));
    let filling = rep.filling.as_ref().unwrap();
    assert_eq!(filling.target, Some(0.981369));
    assert_eq!(rep.inequality_holds, Some(true));
}

#[test]
fn report_for_10_2_with_slope_minus_15() {
    let rs = odd_r_range(21, 51, 10).unwrap();
    let rep =
        q_hyperbolicity_report(&DoubleTwistKnot::new(-8, -3), Some(&slope(-15, 1)), &rs, Precision::Double).unwrap();
    assert_eq!(rep.knot_name.as_deref(), Some("10_2"));
    assert_eq!(rep.filling.as_ref().unwrap().target, Some(1.946574));
}

#[test]
fn report_rejects_unknots_and_links() {
    let rs = odd_r_range(11, 41, 10).unwrap();
    assert!(q_hyperbolicity_report(&DoubleTwistKnot::new(0, 5), None, &rs, Precision::Double).is_err());
    assert!(q_hyperbolicity_report(&DoubleTwistKnot::new(3, 5), None, &rs, Precision::Double).is_err());
}
