//! Every module invariant under randomized inputs.

use qhyp::properties::{suite, suites};

const CASES: u32 = 256;

fn check(name: &str) {
    let s = suite(name).unwrap_or_else(|| panic!("no suite {name}"));
    if let Err(e) = s.run(CASES) {
        panic!("{}::{} failed: {e}", s.module, s.name);
    }
}

#[test]
fn arith_alternating_cfe_value() {
    check("alternating_cfe_value");
}

#[test]
fn arith_pm2_expansion_round_trip() {
    check("pm2_expansion_round_trip");
}

#[test]
fn arith_exact_rational_arithmetic() {
    check("exact_rational_arithmetic");
}

#[test]
fn arith_slope_text_and_negation() {
    check("slope_text_and_negation");
}

#[test]
fn arith_surgery_chain_round_trip() {
    check("surgery_chain_round_trip");
}

#[test]
fn twistknots_mirror_and_swap() {
    check("mirror_and_swap");
}

#[test]
fn twistknots_alexander_invariants() {
    check("alexander_invariants");
}

#[test]
fn twistknots_alexander_d2n_closed_form() {
    check("alexander_d2n_closed_form");
}

#[test]
fn twistknots_alexander_matches_seifert_form() {
    check("alexander_matches_seifert_form");
}

#[test]
fn twistknots_d3_2g_fibered_genus() {
    check("d3_2g_fibered_genus");
}

#[test]
fn surgery_twists_invert() {
    check("twists_invert");
}

#[test]
fn surgery_blow_down_inverts_blow_up() {
    check("blow_down_inverts_blow_up");
}

#[test]
fn surgery_pipelines() {
    check("pipelines");
}

#[test]
fn surgery_census_rows_match_shared_surgery() {
    check("census_rows_match_shared_surgery");
}

#[test]
fn quantum_unit_color_is_one() {
    check("unit_color_is_one");
}

#[test]
fn quantum_mirror_conjugates() {
    check("mirror_conjugates");
}

#[test]
fn quantum_complement_nonnegative() {
    check("complement_nonnegative");
}

#[test]
fn quantum_amphichiral_fillings() {
    check("amphichiral_fillings");
}

#[test]
fn quantum_blow_up_invariance() {
    check("blow_up_invariance");
}

#[test]
fn quantum_ltv_recovers_model() {
    check("ltv_recovers_model");
}

#[test]
fn mcg_action_is_symplectic() {
    check("action_is_symplectic");
}

#[test]
fn mcg_mirror_words_share_stretch() {
    check("mirror_words_share_stretch");
}

#[test]
fn mcg_fibered_crosscheck_holds() {
    check("fibered_crosscheck_holds");
}

#[test]
fn census_rows_round_trip() {
    check("rows_round_trip");
}

#[test]
fn census_volume_bounds_hold() {
    check("volume_bounds_hold");
}

#[test]
fn every_suite_has_a_test() {
    let listed = [
        "alternating_cfe_value",
        "pm2_expansion_round_trip",
        "exact_rational_arithmetic",
        "slope_text_and_negation",
        "surgery_chain_round_trip",
        "mirror_and_swap",
        "alexander_invariants",
        "alexander_d2n_closed_form",
        "alexander_matches_seifert_form",
        "d3_2g_fibered_genus",
        "twists_invert",
        "blow_down_inverts_blow_up",
        "pipelines",
        "census_rows_match_shared_surgery",
        "unit_color_is_one",
        "mirror_conjugates",
        "complement_nonnegative",
        "amphichiral_fillings",
        "blow_up_invariance",
        "ltv_recovers_model",
        "action_is_symplectic",
        "mirror_words_share_stretch",
        "fibered_crosscheck_holds",
        "rows_round_trip",
        "volume_bounds_hold",
    ];
    let all: Vec<_> = suites().iter().map(|s| s.name).collect();
    assert_eq!(all, listed);
}
