//! Exact rationals, continued fractions and slopes.

use qhyp::arith::*;
use qhyp::Error;

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p, d).unwrap()
}

#[test]
fn construction_reduces_and_fixes_sign() {
    assert_eq!(q(4, -6), q(-2, 3));
    assert_eq!(q(-3, 0), ExactRational::infinity());
    assert!(ExactRational::new(0, 0).is_err());
    assert_eq!(q(6, 3), ExactRational::from_int(2));
}

#[test]
fn cfe_examples() {
    assert_eq!(cfe_eval(&ContinuedFraction::new(vec![3, -2]).unwrap()), q(2, 5));
    assert_eq!(cfe_eval(&ContinuedFraction::new(vec![7]).unwrap()), q(1, 7));
    assert_eq!(cfe_eval(&ContinuedFraction::new(vec![2, 2]).unwrap()), q(2, 5));
}

#[test]
fn cfe_rejects_zero_and_poles() {
    assert!(ContinuedFraction::new(vec![]).is_err());
    assert!(ContinuedFraction::new(vec![2, 0, 1]).is_err());
    // 1 + 1/(-1) = 0 at the first level.
    assert!(matches!(ContinuedFraction::new(vec![1, -1]), Err(Error::RejectedSequence(_))));
    // [2, -1, 1]: -1 + 1/1 = 0 in the middle.
    assert!(ContinuedFraction::new(vec![2, -1, 1]).is_err());
}

#[test]
fn alternating_examples() {
    assert_eq!(alternating_cfe(1).unwrap().entries(), &[2, 2]);
    assert_eq!(alternating_cfe(2).unwrap().entries(), &[2, 2, -2, 2]);
    assert_eq!(alternating_cfe(3).unwrap().entries(), &[2, 2, -2, 2, -2, 2]);
    assert_eq!(cfe_eval(&alternating_cfe(2).unwrap()), q(4, 11));
    assert_eq!(cfe_eval(&alternating_cfe(3).unwrap()), q(6, 17));
    assert!(alternating_cfe(0).is_err());
}

#[test]
fn negation_and_display() {
    assert_eq!(negate_slope(&q(-7, 2)), q(7, 2));
    assert_eq!(negate_slope(&ExactRational::infinity()), ExactRational::infinity());
    assert_eq!(negate_slope(&ExactRational::zero()), ExactRational::zero());
    assert_eq!(q(-7, 2).to_string(), "-7/2");
    assert_eq!(q(5, 1).to_string(), "5");
    assert_eq!(ExactRational::infinity().to_string(), "1/0");
    assert_eq!("1/0".parse::<ExactRational>().unwrap(), ExactRational::infinity());
    assert_eq!("-15/4".parse::<ExactRational>().unwrap(), q(-15, 4));
    assert!("3/-4".parse::<ExactRational>().is_err());
}

#[test]
fn infinity_arithmetic_is_rejected() {
    let inf = ExactRational::infinity();
    assert!(inf.checked_add(&q(1, 2)).is_err());
    assert!(inf.checked_recip().is_err());
    assert!(inf.partial_cmp(&q(1, 2)).is_none());
}

#[test]
fn chains() {
    assert_eq!(negative_chain(&q(-7, 2)).unwrap(), vec![-3, 2]);
    assert_eq!(negative_chain(&q(5, 1)).unwrap(), vec![5]);
    assert_eq!(chain_value(&[6, 1]).unwrap(), q(5, 1));
    assert_eq!(chain_value(&[4, -1]).unwrap(), q(5, 1));
    for (p, d) in [(7, 2), (-15, 4), (13, 10), (1, 7)] {
        let s = q(p, d);
        assert_eq!(chain_value(&negative_chain(&s).unwrap()).unwrap(), s);
    }
}
