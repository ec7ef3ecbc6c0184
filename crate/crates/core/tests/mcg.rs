//! Twist words, their symplectic actions and stretch factors.

use num_bigint::BigInt;
use qhyp::arith::alternating_cfe;
use qhyp::mcg::*;
use qhyp::ContinuedFraction;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn words() {
    assert_eq!(phi_word(1).unwrap().letters, vec![(0, 1), (1, 1)]);
    assert_eq!(phi_prime_word(2).unwrap().letters, vec![(0, -1), (1, -1), (2, 1), (3, -1)]);
    assert_eq!(phi_word(3).unwrap().to_string(), "τ_c τ_a_1 τ_b_1^-1 τ_a_2 τ_b_2^-1 τ_a_3");
    assert!(phi_word(0).is_err());
    for g in 1..=6 {
        assert_eq!(phi_prime_word(g).unwrap(), phi_word(g).unwrap().exponent_flipped());
    }
}

#[test]
fn words_from_cfe() {
    for g in 1..=5 {
        let cfe = alternating_cfe(g as i64).unwrap();
        assert_eq!(monodromy_from_cfe(&cfe).unwrap(), phi_word(g).unwrap());
        assert_eq!(monodromy_from_cfe(&cfe.negated()).unwrap(), phi_prime_word(g).unwrap());
    }
    let bad = ContinuedFraction::new(vec![2, 3]).unwrap();
    assert!(monodromy_from_cfe(&bad).is_err());
}

#[test]
fn identity_and_single_twist() {
    let model = ChainSurfaceModel::new(1).unwrap();
    let id = symplectic_action(&TwistWord::identity(1).unwrap(), &model).unwrap();
    assert_eq!(id, IntegerMatrix::identity(2));
    let ta = symplectic_action(&TwistWord::new(1, vec![(1, 1)]).unwrap(), &model).unwrap();
    assert_eq!(ta.rows(), vec![vec!["1", "0"], vec!["1", "1"]]);
    assert!(ta.is_symplectic(&model));
}

#[test]
fn genus_one_is_figure_eight() {
    let model = ChainSurfaceModel::new(1).unwrap();
    let m = symplectic_action(&phi_word(1).unwrap(), &model).unwrap();
    assert_eq!(m.char_poly(), big(&[1, -3, 1]));
    let s = stretch_certificate(&phi_word(1).unwrap()).unwrap();
    assert!((s - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!((stretch_certificate(&TwistWord::identity(3).unwrap()).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn crosschecks() {
    for g in 1..=8 {
        let r = fibered_crosscheck(g).unwrap();
        assert!(r.agrees && r.symplectic, "genus {g}: {} vs {}", r.char_poly, r.alexander);
    }
}

#[test]
fn curve_names() {
    let names: Vec<String> = (0..5).map(curve_name).collect();
    assert_eq!(names, vec!["c", "a_1", "b_1", "a_2", "b_2"]);
}
