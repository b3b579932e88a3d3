use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use ternmap::analysis::identities::{check_all, Identity};
use ternmap::analysis::levelset::{levelset_enumerate, log3_2};
use ternmap::analysis::limits::{
    continuity_bound, f_jump_formula, f_quotient_values, one_sided_limits, quotient_probe,
};
use ternmap::analysis::mapping::{injectivity_families, range_membership};
use ternmap::transducer::{apply, apply_raw, builtin, compose, decompose, eval, BUILTIN_NAMES};
use ternmap::trit::{canonicalize, compare, complement, from_rational, TernaryRep, Trit};
use ternmap::Rational;

fn trit() -> impl Strategy<Value = Trit> {
    (0u8..3).prop_map(|d| Trit::new(d).unwrap())
}

fn any_rep() -> impl Strategy<Value = TernaryRep> {
    (
        prop::collection::vec(trit(), 0..=8),
        prop::collection::vec(trit(), 0..=6),
    )
        .prop_map(|(pre, period)| TernaryRep::new(pre, period))
}

fn terminating_rep() -> impl Strategy<Value = TernaryRep> {
    (prop::collection::vec(trit(), 0..=9), 1u8..3).prop_map(|(mut digits, last)| {
        digits.push(Trit::new(last).unwrap());
        TernaryRep::terminating(digits)
    })
}

fn f() -> ternmap::DigitMap {
    builtin("f").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn rational_round_trip(den in 1i64..=1_000_000, frac in 0.0f64..=1.0) {
        let num = ((den as f64) * frac).floor() as i64;
        let q = Rational::new(BigInt::from(num.min(den)), BigInt::from(den));
        let r = from_rational(&q).unwrap();
        prop_assert!(r.is_canonical());
        prop_assert_eq!(r.to_rational(), q);
    }

    #[test]
    fn canonical_reps_are_unique(a in any_rep(), b in any_rep()) {
        prop_assert!(a.is_canonical() && b.is_canonical());
        prop_assert_eq!(a == b, a.to_rational() == b.to_rational());
    }

    #[test]
    fn canonicalize_preserves_value(
        pre in prop::collection::vec(trit(), 0..=8),
        period in prop::collection::vec(trit(), 0..=6),
    ) {
        let raw = TernaryRep::raw(pre, period);
        let c = canonicalize(&raw);
        prop_assert_eq!(c.to_rational(), raw.to_rational());
        prop_assert_eq!(canonicalize(&c), c.clone());
        let all_twos = !c.period().is_empty() && c.period().iter().all(|&d| d == Trit::TWO);
        prop_assert!(!all_twos || c.is_one());
    }

    #[test]
    fn complement_is_an_involution(r in any_rep()) {
        let c = complement(&r);
        prop_assert_eq!(c.to_rational(), Rational::from_integer(1.into()) - r.to_rational());
        prop_assert_eq!(complement(&c), r);
    }

    #[test]
    fn compare_agrees_with_values(a in any_rep(), b in any_rep()) {
        prop_assert_eq!(compare(&a, &b), a.to_rational().cmp(&b.to_rational()));
    }

    #[test]
    fn raw_image_of_f_is_an_involution(r in any_rep()) {
        prop_assert_eq!(apply_raw(&f(), &apply_raw(&f(), &r)), r);
    }

    #[test]
    fn f_preserves_zero_digits(r in any_rep()) {
        let img = apply_raw(&f(), &r);
        for n in 1..=30 {
            prop_assert_eq!(r.digit(n) == Trit::ZERO, img.digit(n) == Trit::ZERO);
        }
    }

    #[test]
    fn value_level_involution_away_from_collisions(r in any_rep()) {
        let raw = apply_raw(&f(), &r);
        let img = apply(&f(), &r);
        if raw == img || r.is_one() {
            prop_assert_eq!(apply(&f(), &img), r);
        } else {
            // the image lost its all-2s tail; the raw layer still inverts
            prop_assert_eq!(apply_raw(&f(), &raw), r);
        }
    }

    #[test]
    fn identities_hold(r in any_rep()) {
        for c in check_all(&r) {
            prop_assert!(c.holds(), "{} at {}: residual {}", c.identity, r, c.residual);
        }
    }

    #[test]
    fn decompositions_hold_as_values(r in any_rep()) {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            for d in decompose(&m) {
                prop_assert_eq!(eval(&m, &r), d.value_rhs(&r), "{}", d);
            }
        }
    }

    #[test]
    fn jump_matches_closed_form(x0 in terminating_rep()) {
        let j = one_sided_limits(&f(), &x0).unwrap();
        prop_assert_eq!(&j.jump, &(&j.right_limit - &j.left_limit));
        prop_assert_eq!(&j.jump, &f_jump_formula(j.position_n, j.last_digit));
        prop_assert!(j.matches_closed_form());
    }

    #[test]
    fn continuity_bound_holds(a in any_rep(), b in any_rep()) {
        prop_assume!(a != b);
        prop_assert!(continuity_bound(&f(), &a, &b).unwrap().holds());
    }

    #[test]
    fn quotients_take_three_values(r in any_rep(), depths in prop::collection::btree_set(1usize..40, 3..8)) {
        let depths: Vec<usize> = depths.into_iter().collect();
        let probe = quotient_probe(&f(), &r, &depths).unwrap();
        prop_assert!(probe.accumulation_values.is_subset(&f_quotient_values()));
        prop_assert!(probe.certifies_no_derivative());
    }

    #[test]
    fn collision_families(prefix in prop::collection::vec(trit(), 0..=8)) {
        for pair in injectivity_families(&prefix) {
            prop_assert!(pair.verified(), "{} {} {}", pair.family, pair.x1, pair.x2);
        }
    }

    #[test]
    fn range_rejects_exactly_one_tails(pre in prop::collection::vec(trit(), 0..=8), ones_tail in any::<bool>()) {
        let y = TernaryRep::new(pre, if ones_tail { vec![Trit::ONE] } else { vec![] });
        let m = range_membership(&y);
        let ends_in_ones = y.period() == [Trit::ONE];
        let half = Rational::new(1.into(), 2.into());
        prop_assert_eq!(m.is_member(), !ends_in_ones || y.to_rational() == half);
        if let Some(w) = &m.witness {
            prop_assert!(w.is_canonical());
            prop_assert_eq!(eval(&f(), w), y.to_rational());
        }
    }

    #[test]
    fn level_set_of_zero(n in 1usize..=40) {
        let r = levelset_enumerate("f01", &TernaryRep::zero(), n).unwrap();
        prop_assert_eq!(r.prefix_count, num_bigint::BigUint::from(1u8) << n);
        prop_assert!((r.dimension_estimate - log3_2()).abs() < 1e-15);
    }
}

#[test]
fn composition_of_f_with_itself_is_identity() {
    assert_eq!(compose(&f(), &f()).table(), builtin("f1").unwrap().table());
}

#[test]
fn identities_cover_all_ids() {
    let checks = check_all(&TernaryRep::zero());
    let ids: Vec<Identity> = checks.iter().map(|c| c.identity).collect();
    assert_eq!(ids, Identity::ALL.to_vec());
    assert_eq!(compare(&TernaryRep::zero(), &TernaryRep::one()), Ordering::Less);
}
