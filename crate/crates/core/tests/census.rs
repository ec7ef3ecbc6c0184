//! The embedded census of shared fillings and its volume bounds.

use qhyp::arith::ExactRational;
use qhyp::census::*;
use qhyp::Family;

#[test]
fn sizes() {
    assert_eq!(census().len(), 62);
    assert_eq!(census().iter().filter(|r| r.tetrahedra() <= 7).count(), 31);
    assert_eq!(knot_table().len(), 15);
}

#[test]
fn tetrahedra_examples() {
    assert_eq!(tetrahedra("K7_45").unwrap(), 7);
    assert_eq!(tetrahedra("K2_1").unwrap(), 2);
    assert_eq!(tetrahedra("K9_296").unwrap(), 9);
    for bad in ["K_1", "7_45", "K7", "K7_", "Kx_1", "K0_3"] {
        assert!(tetrahedra(bad).is_err(), "{bad}");
    }
}

#[test]
fn bound_examples() {
    let c = check_volume_bounds(find_shared("K5_19").unwrap());
    assert!(c.passes && !c.no_filling);
    assert!((c.upper_margin.unwrap() - (3.6638 * 5.0 - 1.649610)).abs() < 1e-12);
    let c = check_volume_bounds(find_shared("K2_1").unwrap());
    assert!(c.passes && c.no_filling);
    let c = check_volume_bounds(find_shared("K9_435").unwrap());
    assert!(c.passes);
}

#[test]
fn gromov_examples() {
    assert_eq!(gromov_norm(0.0).unwrap(), 0.0);
    assert!((gromov_norm(2.029883).unwrap() - 2.0).abs() < 1e-4);
    assert!((gromov_norm(1.01494).unwrap() - 1.0).abs() < 1e-15);
    assert!(gromov_norm(-1.0).is_err());
}

#[test]
fn lookup_examples() {
    assert_eq!(lookup(Family::D, 1).unwrap().rolfsen_name, "5_2");
    assert_eq!(lookup(Family::DPrime, 4).unwrap().rolfsen_name, "10_1");
    assert_eq!(lookup(Family::D, -2).unwrap().rolfsen_name, "6_2");
    assert!(lookup(Family::D, 0).is_err());
    let row = find_shared("K5_12").unwrap();
    assert_eq!(row.slope_on_k, Some(ExactRational::from_int(3)));
    assert_eq!(row.slope_on_41, Some(ExactRational::new(3, 2).unwrap()));
    assert_eq!(row.vol_filled.as_deref(), Some("1.440699"));
    assert_eq!(row.knot_name.as_deref(), Some("8_20"));
    assert!(find_shared("K1_1").is_err());
    assert_eq!(rows_named("K3_2").len(), 2);
}

#[test]
fn round_trip_is_byte_identical() {
    assert_eq!(serialize_census(census()), embedded_census_csv());
}

#[test]
fn family_rows() {
    let m = family_rows_match();
    assert!(m.iter().all(|x| x.matches), "{m:?}");
    assert_eq!(m.len(), 12);
}

#[test]
fn filling_rows() {
    assert_eq!(filling_row(Family::D, -4).unwrap().census_name, "K7_45");
    assert_eq!(filling_row(Family::D, 1).unwrap().vol_filled.as_deref(), Some("0.981369"));
    assert_eq!(filling_row(Family::DPrime, -2).unwrap().vol_filled.as_deref(), Some("1.398509"));
    assert_eq!(complement_volume("7_3"), Some(4.592126));
}
