//! Rolfsen twists, blow-downs and the filling pipelines.

use qhyp::surgery::*;
use qhyp::{Error, ExactRational, Family, Slope};

fn q(p: i64, d: i64) -> Slope {
    ExactRational::new(p, d).unwrap()
}

#[test]
fn twist_example_from_figure_eight() {
    let n = 2;
    let p = SurgeryPresentation::new()
        .with_component("K", q(-(4 * n + 1), n), false, &[])
        .unwrap()
        .with_component("U", ExactRational::infinity(), true, &[("K", 2)])
        .unwrap();
    let t = rolfsen_twist(&p, "U", 1).unwrap();
    assert_eq!(t.coefficient("K").unwrap(), &q(-1, 2));
    assert_eq!(t.coefficient("U").unwrap(), &q(1, 1));
}

#[test]
fn twist_with_zero_linking_changes_nothing_else() {
    let p = SurgeryPresentation::new()
        .with_component("K", q(-1, 3), false, &[])
        .unwrap()
        .with_component("U", q(-1, 1), true, &[("K", 0)])
        .unwrap();
    for t in [-3, 1, 5] {
        assert_eq!(rolfsen_twist(&p, "U", t).unwrap().coefficient("K").unwrap(), &q(-1, 3));
    }
}

#[test]
fn twist_errors() {
    let p = SurgeryPresentation::new().with_component("K", q(1, 1), false, &[]).unwrap();
    assert!(matches!(rolfsen_twist(&p, "X", 1), Err(Error::UnknownComponent(_))));
    assert!(rolfsen_twist(&p, "K", 1).is_err());
    let p = p.with_component("U", q(1, 1), true, &[]).unwrap();
    assert!(rolfsen_twist(&p, "U", 0).is_err());
}

#[test]
fn blow_down_examples() {
    for n in [-3i64, 1, 2, 5] {
        let p = SurgeryPresentation::new()
            .with_component("D", q(1, 1), false, &[])
            .unwrap()
            .with_component("u", q(-1, n), true, &[("D", 2)])
            .unwrap();
        let b = blow_down(&p, "u").unwrap();
        assert_eq!(b.coefficient("D").unwrap(), &q(4 * n + 1, 1));
        assert!(b.get("u").is_err());
    }
    let p = SurgeryPresentation::new()
        .with_component("A", q(7, 3), false, &[])
        .unwrap()
        .with_component("u", q(-1, 1), true, &[("A", 0)])
        .unwrap();
    let b = blow_down(&p, "u").unwrap();
    assert_eq!(b.components().len(), 1);
    assert_eq!(b.coefficient("A").unwrap(), &q(7, 3));
    let p = SurgeryPresentation::new()
        .with_component("A", q(0, 1), false, &[])
        .unwrap()
        .with_component("u", q(-1, 3), true, &[("A", 1)])
        .unwrap();
    assert_eq!(blow_down(&p, "u").unwrap().coefficient("A").unwrap(), &q(3, 1));
    let p = SurgeryPresentation::new().with_component("u", q(2, 3), true, &[]).unwrap();
    assert!(matches!(blow_down(&p, "u"), Err(Error::NotBlowdownable { .. })));
}

#[test]
fn blow_down_updates_mutual_linking() {
    let p = SurgeryPresentation::new()
        .with_component("A", q(0, 1), false, &[])
        .unwrap()
        .with_component("B", q(0, 1), false, &[("A", 0)])
        .unwrap()
        .with_component("u", q(-1, 1), true, &[("A", 1), ("B", 1)])
        .unwrap();
    let b = blow_down(&p, "u").unwrap();
    assert_eq!(b.linking("A", "B"), 1);
    assert_eq!(b.linking("B", "A"), 1);
}

#[test]
fn pipelines() {
    assert_eq!(pipeline_d(2).unwrap(), q(9, 1));
    assert_eq!(pipeline_d(-3).unwrap(), q(-11, 1));
    assert_eq!(pipeline_d(1).unwrap(), q(5, 1));
    for n in [2, -5, 1] {
        assert_eq!(pipeline_dprime(n).unwrap(), q(1, 1));
    }
    assert!(pipeline_d(0).is_err());
}

#[test]
fn exceptional_examples() {
    assert!(is_exceptional_41(&q(4, 1)));
    assert!(!is_exceptional_41(&q(-7, 2)));
    assert!(is_exceptional_41(&ExactRational::infinity()));
    assert!(!is_exceptional_41(&q(5, 1)));
    assert!(!is_exceptional_41(&q(1, 2)));
}

#[test]
fn shared_examples() {
    assert_eq!(shared_surgery(Family::D, -4).unwrap(), (q(-15, 1), q(-15, 4)));
    assert_eq!(shared_surgery(Family::DPrime, 3).unwrap(), (q(1, 1), q(-1, 3)));
    assert!(shared_surgery(Family::D, -1).is_err());
    assert!(shared_surgery(Family::DPrime, 1).is_err());
    assert!(shared_surgery(Family::DPrime, 0).is_err());
}

#[test]
fn json_shape() {
    let p = SurgeryPresentation::new()
        .with_component("K", q(-9, 2), false, &[])
        .unwrap()
        .with_component("U", ExactRational::infinity(), true, &[("K", 2)])
        .unwrap();
    let v: serde_json::Value = serde_json::to_value(&p).unwrap();
    assert_eq!(v[1]["coefficient"], "1/0");
    assert_eq!(v[1]["linking"]["K"], 2);
    assert_eq!(v[0]["id"], "K");
}
