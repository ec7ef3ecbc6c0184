//! Double twist knots: fractions, mirrors, fiberedness and Alexander polynomials.

use qhyp::arith::alternating_cfe;
use qhyp::twistknots::*;
use qhyp::{ContinuedFraction, ExactRational};

fn frac(m: i64, n: i64) -> TwoBridgeFraction {
    fraction_of(&DoubleTwistKnot::new(m, n)).unwrap()
}

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p, d).unwrap()
}

fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(terms.iter().copied())
}

#[test]
fn fraction_examples() {
    assert_eq!(frac(3, 2).value(), q(2, 5));
    assert_eq!(frac(2, -2).value(), q(2, 5));
    assert_eq!(frac(2, 2).value(), q(2, 3));
    assert_eq!(frac(1, 4).value(), q(4, 3));
}

#[test]
fn fraction_rejects_links_and_unknots() {
    for (m, n) in [(3, 3), (1, -5), (0, 4), (6, 0), (1, 1), (-1, -1), (1, 2), (-2, -1)] {
        assert!(fraction_of(&DoubleTwistKnot::new(m, n)).is_err(), "D({m},{n})");
    }
}

#[test]
fn mirror_examples() {
    let k = DoubleTwistKnot::new(2, -3);
    assert_eq!(k.mirror(), DoubleTwistKnot::new(-2, 3));
    assert_eq!(DoubleTwistKnot::new(0, 5).mirror(), DoubleTwistKnot::new(0, -5));
    assert_eq!(k.mirror().mirror(), k);
    assert_eq!(DoubleTwistKnot::new(3, 2), DoubleTwistKnot::new(2, 3));
}

#[test]
fn representatives_of_figure_eight() {
    let reps = frac(2, -2).representatives();
    assert_eq!(reps, vec![q(2, 5), q(-3, 5), q(3, 5), q(-2, 5)]);
    assert!(frac(2, -2).same_knot(&frac(-2, 2)));
    assert!(frac(2, 2).same_knot_up_to_mirror(&frac(-2, -2)));
}

#[test]
fn fibered_examples() {
    let f8 = TwoBridgeFraction::new(&q(2, 5)).unwrap();
    assert_eq!(fibered_cfe(&f8).unwrap().entries(), &[2, 2]);
    for g in 1..=10 {
        let cfe = fibered_cfe(&frac(3, 2 * g)).unwrap();
        assert_eq!(cfe, alternating_cfe(g).unwrap());
        assert_eq!(fiber_genus(&cfe).unwrap(), g as u64);
    }
    assert!(fibered_cfe(&frac(4, -2)).is_none());
}

#[test]
fn fiber_genus_examples() {
    assert_eq!(fiber_genus(&ContinuedFraction::new(vec![2, 2]).unwrap()).unwrap(), 1);
    assert_eq!(fiber_genus(&alternating_cfe(4).unwrap()).unwrap(), 4);
    assert_eq!(fiber_genus(&ContinuedFraction::new(vec![2, -2]).unwrap()).unwrap(), 1);
    assert!(fiber_genus(&ContinuedFraction::new(vec![2]).unwrap()).is_err());
    assert!(fiber_genus(&ContinuedFraction::new(vec![2, 3]).unwrap()).is_err());
}

#[test]
fn alexander_examples() {
    assert_eq!(alexander(&frac(2, -2)), poly(&[(1, 1), (0, -3), (-1, 1)]));
    assert_eq!(alexander(&frac(-2, -2)), poly(&[(1, 1), (0, -1), (-1, 1)]));
    assert_eq!(alexander(&frac(4, -2)), poly(&[(1, 2), (0, -5), (-1, 2)]));
    assert_eq!(alexander(&frac(2, 2)), poly(&[(1, 1), (0, -1), (-1, 1)]));
}

#[test]
fn monic_examples() {
    assert!(is_monic(&poly(&[(1, 1), (0, -3), (-1, 1)])).unwrap());
    assert!(!is_monic(&poly(&[(1, 2), (0, -5), (-1, 2)])).unwrap());
    assert!(is_monic(&poly(&[(1, 1), (0, -1), (-1, 1)])).unwrap());
    assert!(is_monic(&LaurentPolynomial::zero()).is_err());
}

#[test]
fn polynomial_display_and_json_shape() {
    let p = poly(&[(1, 2), (0, -5), (-1, 2)]);
    assert_eq!(p.to_string(), "2t - 5 + 2t^-1");
    assert_eq!(poly(&[(1, 1), (0, -3), (-1, 1)]).to_string(), "t - 3 + t^-1");
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(json, "[[-1,2],[0,-5],[1,2]]");
}
