use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;

use wzaccel_core::catalog::{builtin_catalog, find};
use wzaccel_core::exact::{int, rat, Rational};
use wzaccel_core::hyper::tail_bound;
use wzaccel_core::precision::*;

fn dec(s: &str) -> Rational {
    let (i, f) = s.split_once('.').unwrap();
    let den = num_bigint::BigInt::from(10).pow(f.len() as u32);
    Rational::new(num_bigint::BigInt::from_str(&format!("{i}{f}")).unwrap(), den)
}

#[test]
fn pi_and_zeta3_references() {
    // independent published expansions, 40 digits
    let pi = dec("3.1415926535897932384626433832795028841971");
    let z3 = dec("1.2020569031595942853997381615114499907649");
    let slack = rat(1, 10).pow(40);
    for bits in [64, 128, 256] {
        let p = ref_pi(bits);
        assert!((p.value() - &pi).abs() <= p.abs_error() + &slack);
        let cap = Rational::new(1.into(), num_bigint::BigInt::from(1) << (bits - 4));
        assert!(p.abs_error() <= &cap);
        let z = ref_zeta3(bits);
        assert!((z.value() - &z3).abs() <= z.abs_error() + &slack);
    }
    assert!(ref_pi(256).abs_error() < ref_pi(128).abs_error());
    assert!(ref_zeta3(256).abs_error() < ref_zeta3(128).abs_error());
    assert!(ref_pi(128).to_decimal(20).starts_with("3.14159265358979323846"));
    let inv = base_value(wzaccel_core::hyper::TargetBase::InvPi2, 128).unwrap();
    assert!(inv.to_decimal(19).starts_with("0.1013211836423377714"));
}

#[test]
fn digits_examples() {
    let a = HPFloat::from_rational(&int(1), 200);
    let b = HPFloat::from_rational(&rat(1001, 1000), 200);
    assert_eq!(digits_agreement(&a, &b), 3);
    assert_eq!(digits_agreement(&a, &a), 60);
}

#[test]
fn every_geometric_entry_verifies_at_25() {
    let cat = builtin_catalog();
    let reps: Vec<_> = cat.par_iter().map(|e| verify_entry(e, 25, 10_000).unwrap()).collect();
    for r in &reps {
        if r.entry_id == "glaisher" {
            assert_eq!(r.status, Status::SkippedRate1);
        } else {
            assert!(r.pass(), "{} {}", r.entry_id, r.digits_agreement);
        }
    }
    // soundness: twice the terms at twice the precision stays in the enclosure
    for (e, r) in cat.iter().zip(&reps) {
        let Some(c) = &r.computed else { continue };
        let finer = sum_series(&e.series, 2 * r.terms_used, 2 * r.precision_bits).unwrap();
        assert!((finer.value() - c.value()).abs() < *c.abs_error(), "{}", e.id);
    }
}

#[test]
fn reports_are_deterministic() {
    let cat = builtin_catalog();
    let e = find(&cat, "au-427").unwrap();
    let a = verify_entry(e, 30, 10_000).unwrap();
    let b = verify_entry(e, 30, 10_000).unwrap();
    assert_eq!(a.computed, b.computed);
    assert_eq!((a.terms_used, a.digits_agreement), (b.terms_used, b.digits_agreement));
}

#[test]
fn empty_sum_is_pure_tail() {
    let cat = builtin_catalog();
    let e = find(&cat, "guillera-m14").unwrap();
    let s = sum_series(&e.series, 0, 128).unwrap();
    assert_eq!(s.value(), &int(0));
    // error bounds are rounded up to 30 significant bits
    let b = tail_bound(&e.series, 0).unwrap();
    assert!(s.abs_error() >= &b && s.abs_error() <= &(&b * rat((1 << 29) + 1, 1 << 29)));
}

#[test]
fn rate_one_is_skipped_and_too_few_terms_fail() {
    let cat = builtin_catalog();
    let g = verify_entry(find(&cat, "glaisher").unwrap(), 25, 10_000).unwrap();
    assert_eq!(g.status, Status::SkippedRate1);
    let r = verify_entry(find(&cat, "ramanujan-6k1").unwrap(), 25, 20).unwrap();
    assert_eq!(r.status, Status::Fail);
    let r = verify_entry(find(&cat, "guillera-1024").unwrap(), 25, 10_000).unwrap();
    assert!(r.pass() && r.digits_agreement >= 25);
}

#[test]
fn guillera_high_digits() {
    let cat = builtin_catalog();
    let m14 = find(&cat, "guillera-m14").unwrap();
    let s = sum_series(&m14.series, 100, 256).unwrap();
    let t = target_value(m14.target.as_ref().unwrap(), 256).unwrap();
    assert!(s.abs_error() + t.abs_error() < rat(1, 10).pow(50));
    assert!(digits_agreement(&s, &t) >= 50);
    let g = find(&cat, "guillera-1024").unwrap();
    let s = sum_series(&g.series, 40, 512).unwrap();
    let t = target_value(g.target.as_ref().unwrap(), 512).unwrap();
    assert!(digits_agreement(&s, &t) >= 100);
}

#[test]
fn identity8_all() {
    let cases = [(rat(1, 2), 25), (rat(3, 4), 25), (int(1), 25), (rat(1, 4), 15)];
    cases.par_iter().for_each(|(a, d)| {
        let r = check_identity8(a, *d).unwrap();
        assert!(r.pass && r.digits_agreement >= *d, "a = {a}");
    });
    // a = 1/2 right side is the plain rate -1/4 series shifted by 1/2
    let rhs = identity8_rhs_spec(&rat(1, 2));
    assert_eq!(rhs.num_params, vec![int(1); 5]);
}

#[test]
fn partial_identities() {
    assert!(check_glaisher_partial(200));
    assert!(check_guillera_partial(200));
    assert_eq!(glaisher_partial_failure(200), None);
}
