//! The fusion evaluator against three independent evaluations: the R-matrix
//! state sum, the Kauffman bracket state sum at N = 2, and the closed-form
//! sum for the figure-eight knot.

use qhyp::quantum::{
    colored_jones, colored_jones_all, colored_jones_rmatrix_oracle, figure_eight_check_sum, kauffman_bracket_jones,
    Precision, RootOfUnityContext,
};
use qhyp::{Complex64, DoubleTwistKnot, Error};

const TOL: f64 = 1e-9;

fn ctx(r: u64) -> RootOfUnityContext {
    RootOfUnityContext::new(r).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

#[test]
fn fusion_matches_rmatrix_on_grid() {
    let mut worst = 0.0f64;
    for r in [5u64, 7, 9, 11] {
        let c = ctx(r);
        for m in [-4i64, -3, -2, 2, 3, 4] {
            for n in [-4i64, -3, -2, 2, 3, 4] {
                let k = DoubleTwistKnot::new(m, n);
                if k.is_link() {
                    continue;
                }
                for n_col in 1..=6u64.min(r - 1) {
                    let f = colored_jones(&k, n_col, &c).unwrap();
                    let o = colored_jones_rmatrix_oracle(&k, n_col, &c).unwrap();
                    let e = rel(f, o);
                    assert!(e < TOL, "{k} N={n_col} r={r}: fusion {f} vs R-matrix {o}");
                    worst = worst.max(e);
                }
            }
        }
    }
    println!("worst fusion/R-matrix relative difference {worst:.2e}");
}

#[test]
fn rmatrix_examples() {
    let a = colored_jones(&DoubleTwistKnot::new(2, 2), 2, &ctx(5)).unwrap();
    let b = colored_jones_rmatrix_oracle(&DoubleTwistKnot::new(2, 2), 2, &ctx(5)).unwrap();
    assert!(rel(a, b) < TOL);
    let one = colored_jones_rmatrix_oracle(&DoubleTwistKnot::new(2, -2), 1, &ctx(7)).unwrap();
    assert!((one - 1.0).norm() < TOL);
    let k = DoubleTwistKnot::new(4, -2);
    let a = colored_jones(&k, 3, &ctx(11)).unwrap();
    let b = colored_jones_rmatrix_oracle(&k, 3, &ctx(11)).unwrap();
    assert!(rel(a, b) < TOL);
}

#[test]
fn rmatrix_rejects_expensive_inputs() {
    let c = ctx(11);
    assert!(matches!(
        colored_jones_rmatrix_oracle(&DoubleTwistKnot::new(7, -6), 2, &c),
        Err(Error::OracleTooExpensive(_))
    ));
    assert!(matches!(
        colored_jones_rmatrix_oracle(&DoubleTwistKnot::new(2, -2), 9, &c),
        Err(Error::OracleTooExpensive(_))
    ));
    assert!(colored_jones_rmatrix_oracle(&DoubleTwistKnot::new(2, -2), 0, &c).is_err());
}

#[test]
fn fusion_matches_kauffman_bracket() {
    for r in [5u64, 7, 11, 13] {
        let c = ctx(r);
        for m in -10i64..=10 {
            for n in -10i64..=10 {
                let k = DoubleTwistKnot::new(m, n);
                if m.abs() + n.abs() > 10 || k.is_link() {
                    continue;
                }
                let f = colored_jones(&k, 2, &c).unwrap();
                let b = kauffman_bracket_jones(&k, &c).unwrap();
                assert!(rel(f, b) < TOL, "{k} r={r}: fusion {f} vs bracket {b}");
            }
        }
    }
}

#[test]
fn figure_eight_jones_at_r7() {
    // V(t) = t^2 - t + 1 - t^-1 + t^-2 at t = e^{4πi/7}
    let t = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 7.0);
    let v = t * t - t + 1.0 - t.inv() + t.inv() * t.inv();
    let f = colored_jones(&DoubleTwistKnot::new(2, -2), 2, &ctx(7)).unwrap();
    assert!(rel(f, v) < TOL, "{f} vs {v}");
}

#[test]
fn fusion_matches_figure_eight_sum() {
    let k = DoubleTwistKnot::new(2, -2);
    for r in (5u64..=101).step_by(2) {
        let c = ctx(r);
        let table = colored_jones_all(&k, &c, Precision::Extended).unwrap();
        for (i, z) in table.values.iter().enumerate() {
            let s = figure_eight_check_sum(i as u64 + 1, &c);
            assert!(rel(*z, Complex64::new(s, 0.0)) < TOL, "r={r} N={}: {z} vs {s}", i + 1);
        }
    }
}

#[test]
fn figure_eight_sum_matches_rmatrix() {
    let k = DoubleTwistKnot::new(2, -2);
    for r in [7u64, 9, 11, 13] {
        let c = ctx(r);
        for n_col in 1..=4u64 {
            let s = figure_eight_check_sum(n_col, &c);
            let o = colored_jones_rmatrix_oracle(&k, n_col, &c).unwrap();
            assert!(rel(o, Complex64::new(s, 0.0)) < TOL, "r={r} N={n_col}");
        }
    }
}
