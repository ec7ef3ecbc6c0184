//! Randomized invariant suites for every module, runnable from tests and from
//! the command line. Runs are seeded deterministically so reports are stable.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use crate::arith::{
    alternating_cfe, cfe_eval, chain_value, negate_slope, negative_chain, ContinuedFraction, ExactRational, Slope,
};
use crate::census::{
    census, check_volume_bounds, embedded_census_csv, family_rows_match, parse_census, serialize_census,
};
use crate::mcg::{
    fibered_crosscheck, is_palindromic, phi_prime_word, phi_word, stretch_certificate, symplectic_action,
    ChainSurfaceModel, TwistWord,
};
use crate::quantum::{
    colored_jones, ltv_estimate, tv_knot_complement, tv_surgery, tv_surgery_chain, Precision, RootOfUnityContext,
    TVSample,
};
use crate::surgery::{blow_down, pipeline_d, pipeline_dprime, rolfsen_twist, SurgeryPresentation};
use crate::twistknots::{
    alexander, fiber_genus, fibered_cfe, fraction_of, pm2_expansion, DoubleTwistKnot, LaurentPolynomial,
};

/// One named invariant with its randomized driver.
#[derive(Clone, Copy)]
pub struct PropertySuite {
    pub module: &'static str,
    pub name: &'static str,
    run: fn(&mut TestRunner) -> Result<(), TestError<String>>,
}

impl PropertySuite {
    /// Runs `cases` random cases; the error names the minimal failing input.
    pub fn run(&self, cases: u32) -> std::result::Result<(), String> {
        let config = Config { cases, failure_persistence: None, ..Config::default() };
        let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
        (self.run)(&mut runner).map_err(|e| e.to_string())
    }
}

macro_rules! suite {
    ($module:literal, $name:ident, $strategy:expr, |$arg:pat_param| $body:block) => {
        PropertySuite {
            module: $module,
            name: stringify!($name),
            run: |runner| {
                runner.run(&$strategy, |$arg| -> Result<(), TestCaseError> { $body }).map_err(|e| match e {
                    TestError::Abort(r) => TestError::Abort(r),
                    TestError::Fail(r, v) => TestError::Fail(r, format!("{v:?}")),
                })
            },
        }
    };
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn rational() -> impl Strategy<Value = ExactRational> {
    (-1_000_000_000_000i64..=1_000_000_000_000, 1i64..=1_000_000_000_000)
        .prop_map(|(p, q)| ExactRational::new(p, q).expect("q > 0"))
}

fn finite_slope() -> impl Strategy<Value = Slope> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Slope::new(p, q).expect("q > 0"))
}

fn small_slope() -> impl Strategy<Value = Slope> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Slope::new(p, q).expect("q > 0"))
}

/// Hyperbolic or torus double twist knots, never links or unknots.
fn knot(bound: i64) -> impl Strategy<Value = DoubleTwistKnot> {
    (-bound..=bound, -bound..=bound)
        .prop_map(|(m, n)| DoubleTwistKnot::new(m, n))
        .prop_filter("knot", |k| !k.is_link() && !k.is_unknot())
}

fn odd_level(lo: u64, hi: u64) -> impl Strategy<Value = u64> {
    (lo / 2..=(hi - 1) / 2).prop_map(|h| 2 * h + 1)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Seifert-form Alexander polynomial `det(V - t Vᵀ)` of the genus-one surface
/// of `D(2a, 2b)`, `V = [[a, 1], [0, b]]`.
fn seifert_alexander(a: i64, b: i64) -> LaurentPolynomial {
    let v = [[a, 1], [0, b]];
    let entry = |i: usize, j: usize| LaurentPolynomial::from_terms([(0, v[i][j]), (1, -v[j][i])]);
    entry(0, 0).mul(&entry(1, 1)).sub(&entry(0, 1).mul(&entry(1, 0)))
}

/// A chain for the same slope with one extra `±1` unknot blown up at `pos`.
fn blow_up_chain(chain: &[i64], pos: usize, sign: i64) -> Vec<i64> {
    let mut out = chain.to_vec();
    if pos + 1 >= chain.len() {
        *out.last_mut().expect("nonempty") += sign;
        out.push(sign);
    } else {
        out[pos] += sign;
        out[pos + 1] += sign;
        out.insert(pos + 1, sign);
    }
    out
}

fn twist_word() -> impl Strategy<Value = TwistWord> {
    (1usize..=5).prop_flat_map(|g| {
        prop::collection::vec((0..2 * g, prop::bool::ANY), 0..14).prop_map(move |letters| {
            TwistWord::new(g, letters.into_iter().map(|(c, pos)| (c, if pos { 1 } else { -1 })).collect())
                .expect("indices in range")
        })
    })
}

pub fn suites() -> Vec<PropertySuite> {
    vec![
        // arith
        suite!("arith", alternating_cfe_value, 1i64..=200, |g| {
            let v = cfe_eval(&alternating_cfe(g).map_err(fail)?);
            prop_assert_eq!(v, ExactRational::new(2 * g, 6 * g - 1).map_err(fail)?);
            Ok(())
        }),
        suite!("arith", pm2_expansion_round_trip, prop::collection::vec(prop::bool::ANY, 1..40), |signs| {
            let entries: Vec<i64> = signs.iter().map(|&s| if s { 2 } else { -2 }).collect();
            let v = cfe_eval(&ContinuedFraction::new(entries.clone()).map_err(fail)?);
            prop_assert_eq!(pm2_expansion(&v), Some(entries));
            Ok(())
        }),
        suite!("arith", exact_rational_arithmetic, (rational(), rational()), |(a, b)| {
            let back = a.checked_add(&b).map_err(fail)?.checked_sub(&b).map_err(fail)?;
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(a.neg().neg(), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(
                    a.checked_mul(&a.checked_recip().map_err(fail)?).map_err(fail)?,
                    ExactRational::from_int(1)
                );
            }
            prop_assert!(a.denom().is_positive());
            let g = num_integer::Integer::gcd(a.numer(), a.denom());
            prop_assert!(g.is_one());
            Ok(())
        }),
        suite!("arith", slope_text_and_negation, prop_oneof![finite_slope(), Just(ExactRational::infinity())], |s| {
            let text = s.to_string();
            prop_assert_eq!(text.parse::<Slope>().map_err(fail)?, s.clone());
            prop_assert_eq!(negate_slope(&negate_slope(&s)), s.clone());
            if s.is_infinite() {
                prop_assert_eq!(text, "1/0");
                prop_assert_eq!(negate_slope(&s), s);
            } else if s.is_integer() {
                prop_assert!(!text.contains('/'));
            }
            Ok(())
        }),
        suite!("arith", surgery_chain_round_trip, finite_slope(), |s| {
            let chain = negative_chain(&s).map_err(fail)?;
            prop_assert_eq!(chain_value(&chain), Some(s));
            Ok(())
        }),
        // twistknots
        suite!("twistknots", mirror_and_swap, knot(12), |k| {
            prop_assert_eq!(k.mirror().mirror(), k);
            let f = fraction_of(&k).map_err(fail)?;
            let fm = fraction_of(&k.mirror()).map_err(fail)?;
            prop_assert!(fm.same_knot(&f.mirror()));
            let swapped = fraction_of(&DoubleTwistKnot::new(k.n, k.m)).map_err(fail)?;
            prop_assert!(swapped.same_knot(&f));
            Ok(())
        }),
        suite!("twistknots", alexander_invariants, knot(12), |k| {
            let d = alexander(&fraction_of(&k).map_err(fail)?);
            prop_assert!(d.is_symmetric());
            prop_assert!(d.doteq(&alexander(&fraction_of(&k.mirror()).map_err(fail)?)));
            let at_one = d.eval(&BigInt::one()).map_err(fail)?;
            prop_assert!(at_one.numer().abs().is_one() && at_one.denom().is_one());
            Ok(())
        }),
        suite!("twistknots", alexander_d2n_closed_form, (-6i64..=6).prop_filter("n != 0", |n| *n != 0), |n| {
            let d = alexander(&fraction_of(&DoubleTwistKnot::new(2 * n, -2)).map_err(fail)?);
            prop_assert!(d.doteq(&LaurentPolynomial::from_terms([(1, n), (0, -(2 * n + 1)), (-1, n)])));
            Ok(())
        }),
        suite!(
            "twistknots",
            alexander_matches_seifert_form,
            ((-8i64..=8).prop_filter("a", |a| *a != 0), (-8i64..=8).prop_filter("b", |b| *b != 0)),
            |(a, b)| {
                let d = alexander(&fraction_of(&DoubleTwistKnot::new(2 * a, 2 * b)).map_err(fail)?);
                prop_assert!(d.doteq(&seifert_alexander(a, b)));
                Ok(())
            }
        ),
        suite!("twistknots", d3_2g_fibered_genus, 1i64..=10, |g| {
            let cfe = fibered_cfe(&fraction_of(&DoubleTwistKnot::new(3, 2 * g)).map_err(fail)?)
                .ok_or_else(|| fail("not fibered"))?;
            prop_assert_eq!(cfe.len() as i64, 2 * g);
            prop_assert!(cfe.entries().iter().all(|a| a.abs() == 2));
            prop_assert_eq!(fiber_genus(&cfe).map_err(fail)? as i64, g);
            Ok(())
        }),
        // surgery
        suite!(
            "surgery",
            twists_invert,
            (
                prop::collection::vec((finite_slope(), -3i64..=3), 1..4),
                prop_oneof![finite_slope(), Just(ExactRational::infinity())],
                (-5i64..=5).prop_filter("t", |t| *t != 0)
            ),
            |(others, cu, t)| {
                let mut p = SurgeryPresentation::new();
                for (i, (c, _)) in others.iter().enumerate() {
                    let links: Vec<(String, i64)> =
                        (0..i).map(|j| (format!("K{j}"), (i + 2 * j) as i64 % 3 - 1)).collect();
                    let links: Vec<(&str, i64)> = links.iter().map(|(s, l)| (s.as_str(), *l)).collect();
                    p = p.with_component(&format!("K{i}"), c.clone(), false, &links).map_err(fail)?;
                }
                let links: Vec<(String, i64)> =
                    others.iter().enumerate().map(|(i, (_, l))| (format!("K{i}"), *l)).collect();
                let links: Vec<(&str, i64)> = links.iter().map(|(s, l)| (s.as_str(), *l)).collect();
                let p = p.with_component("U", cu, true, &links).map_err(fail)?;
                let back = rolfsen_twist(&rolfsen_twist(&p, "U", t).map_err(fail)?, "U", -t).map_err(fail)?;
                prop_assert_eq!(back, p);
                Ok(())
            }
        ),
        suite!(
            "surgery",
            blow_down_inverts_blow_up,
            (prop::collection::vec((finite_slope(), -3i64..=3), 1..4), (-5i64..=5).prop_filter("t", |t| *t != 0)),
            |(others, t)| {
                let mut p = SurgeryPresentation::new();
                for (i, (c, _)) in others.iter().enumerate() {
                    p = p.with_component(&format!("K{i}"), c.clone(), false, &[]).map_err(fail)?;
                }
                let links: Vec<(String, i64)> =
                    others.iter().enumerate().map(|(i, (_, l))| (format!("K{i}"), *l)).collect();
                let links: Vec<(&str, i64)> = links.iter().map(|(s, l)| (s.as_str(), *l)).collect();
                let with_u = p.clone().with_component("U", ExactRational::infinity(), true, &links).map_err(fail)?;
                let blown_up = rolfsen_twist(&with_u, "U", -t).map_err(fail)?;
                prop_assert_eq!(blown_up.coefficient("U").map_err(fail)?, &ExactRational::new(-1, t).map_err(fail)?);
                let down = blow_down(&blown_up, "U").map_err(fail)?;
                for c in p.components() {
                    prop_assert_eq!(down.coefficient(&c.id).map_err(fail)?, &c.coefficient);
                }
                Ok(())
            }
        ),
        suite!("surgery", pipelines, (-10i64..=10).prop_filter("n != 0", |n| *n != 0), |n| {
            prop_assert_eq!(pipeline_d(n).map_err(fail)?, ExactRational::from_int(4 * n + 1));
            prop_assert_eq!(pipeline_dprime(n).map_err(fail)?, ExactRational::from_int(1));
            Ok(())
        }),
        suite!("surgery", census_rows_match_shared_surgery, 0usize..1000, |i| {
            let rows = family_rows_match();
            prop_assert!(!rows.is_empty());
            let row = &rows[i % rows.len()];
            prop_assert!(row.matches, "{} ({}) does not match", row.census_name, row.knot_name);
            Ok(())
        }),
        // quantum
        suite!("quantum", unit_color_is_one, (knot(8), odd_level(5, 61)), |(k, r)| {
            let ctx = RootOfUnityContext::new(r).map_err(fail)?;
            let z = colored_jones(&k, 1, &ctx).map_err(fail)?;
            prop_assert!((z - 1.0).norm() < 1e-9, "J'_1 = {z}");
            Ok(())
        }),
        suite!("quantum", mirror_conjugates, (knot(6), odd_level(5, 41), 0.0f64..1.0), |(k, r, u)| {
            let ctx = RootOfUnityContext::new(r).map_err(fail)?;
            let n_col = 1 + (u * (r - 1) as f64) as u64;
            let a = colored_jones(&k, n_col, &ctx).map_err(fail)?;
            let b = colored_jones(&k.mirror(), n_col, &ctx).map_err(fail)?;
            prop_assert!((a.conj() - b).norm() <= 1e-9 * a.norm().max(1.0), "{a} vs {b}");
            Ok(())
        }),
        suite!("quantum", complement_nonnegative, (knot(8), odd_level(5, 61)), |(k, r)| {
            let s = tv_knot_complement(&k, r).map_err(fail)?;
            prop_assert!(s.tv >= 0.0 && s.logslope.is_finite());
            Ok(())
        }),
        suite!("quantum", amphichiral_fillings, (small_slope(), odd_level(5, 41)), |(s, r)| {
            let k = DoubleTwistKnot::new(2, -2);
            let a = tv_surgery(&k, &s, r).map_err(fail)?;
            let b = tv_surgery(&k, &s.neg(), r).map_err(fail)?;
            prop_assert!(rel_close(a.tv, b.tv, 1e-9), "{} vs {}", a.tv, b.tv);
            Ok(())
        }),
        suite!(
            "quantum",
            blow_up_invariance,
            (knot(4), small_slope(), odd_level(5, 31), 0usize..6, prop::bool::ANY),
            |(k, s, r, pos, plus)| {
                let chain = negative_chain(&s).map_err(fail)?;
                let blown = blow_up_chain(&chain, pos % chain.len(), if plus { 1 } else { -1 });
                prop_assert_eq!(chain_value(&blown), Some(s));
                let a = tv_surgery_chain(&k, &chain, r, Precision::Extended).map_err(fail)?;
                let b = tv_surgery_chain(&k, &blown, r, Precision::Extended).map_err(fail)?;
                prop_assert!(rel_close(a.tv, b.tv, 1e-9), "{:?} vs {:?}: {} vs {}", chain, blown, a.tv, b.tv);
                Ok(())
            }
        ),
        suite!("quantum", ltv_recovers_model, (-3.0f64..3.0, -5.0f64..5.0, -20.0f64..20.0), |(a, b, c)| {
            let samples: Vec<TVSample> = [51u64, 101, 151, 201, 251, 301]
                .iter()
                .map(|&r| {
                    let x = r as f64;
                    let l = a + b * x.ln() / x + c / x;
                    let log_tv = l * x / (2.0 * std::f64::consts::PI);
                    TVSample { r, tv: log_tv.exp(), log_tv, logslope: l, bits: 53, log10_condition: 0.0 }
                })
                .collect();
            let g = ltv_estimate(&samples).map_err(fail)?;
            prop_assert!((g.extrapolated - a).abs() < 1e-6 && g.residual < 1e-9);
            Ok(())
        }),
        // mcg
        suite!("mcg", action_is_symplectic, twist_word(), |w| {
            let model = ChainSurfaceModel::new(w.genus).map_err(fail)?;
            let m = symplectic_action(&w, &model).map_err(fail)?;
            prop_assert!(m.is_symplectic(&model));
            prop_assert!(is_palindromic(&m.char_poly()));
            Ok(())
        }),
        suite!("mcg", mirror_words_share_stretch, 1usize..=8, |g| {
            let a = stretch_certificate(&phi_word(g).map_err(fail)?).map_err(fail)?;
            let b = stretch_certificate(&phi_prime_word(g).map_err(fail)?).map_err(fail)?;
            prop_assert!(rel_close(a, b, 1e-9) && a > 1.0, "{a} vs {b}");
            Ok(())
        }),
        suite!("mcg", fibered_crosscheck_holds, 1usize..=8, |g| {
            let rep = fibered_crosscheck(g).map_err(fail)?;
            prop_assert!(rep.agrees && rep.symplectic, "genus {g}: {} vs {}", rep.char_poly, rep.alexander);
            Ok(())
        }),
        // census
        suite!("census", rows_round_trip, prop::collection::vec(0usize..1000, 1..20), |idx| {
            let all = census();
            let rows: Vec<_> = idx.iter().map(|i| all[i % all.len()].clone()).collect();
            let text = serialize_census(&rows);
            prop_assert_eq!(parse_census(&text).map_err(fail)?, rows);
            prop_assert_eq!(
                serialize_census(&parse_census(embedded_census_csv()).map_err(fail)?),
                embedded_census_csv()
            );
            Ok(())
        }),
        suite!("census", volume_bounds_hold, 0usize..1000, |i| {
            let row = &census()[i % census().len()];
            prop_assert!(check_volume_bounds(row).passes, "{}", row.census_name);
            prop_assert!(row.tetrahedra() <= 9);
            if let Some(v) = row.vol_filled() {
                prop_assert!(v < row.vol_complement());
            }
            Ok(())
        }),
    ]
}

/// Looks up a suite by `name`.
pub fn suite(name: &str) -> Option<PropertySuite> {
    suites().into_iter().find(|s| s.name == name)
}
