use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use wzaccel_core::accel::{accelerate_t1, accelerate_t2, proportional, reindex_canonical, AccelParams};
use wzaccel_core::catalog::{builtin_catalog, find, load, save, to_text, CatalogEntry};
use wzaccel_core::exact::{int, rat, Assignment, Rational, Var};
use wzaccel_core::hyper::{tail_bound, RawF, SeriesSpec};

/// Term by repeated multiplication, no shared code with `SeriesSpec`.
fn brute(s: &SeriesSpec, k: i64) -> Rational {
    let mut t = s.prefactor.clone();
    for i in 0..k {
        let i = int(i);
        t *= &s.z;
        for u in &s.num_params {
            t *= u + &i;
        }
        for v in &s.den_params {
            t /= v + &i;
        }
    }
    let kk = int(k);
    let horner = |c: &[Rational]| c.iter().rev().fold(Rational::zero(), |acc, x| acc * &kk + x);
    t * horner(s.factor_num.coeffs()) / horner(s.factor_den.coeffs())
}

#[test]
fn first_terms_match_brute_force() {
    for e in builtin_catalog() {
        for k in 0..3 {
            assert_eq!(e.series.term_value(k).unwrap(), brute(&e.series, k), "{} k={k}", e.id);
        }
    }
}

#[test]
fn term_ratio_steps() {
    builtin_catalog().par_iter().for_each(|e: &CatalogEntry| {
        let r = e.series.term_ratio();
        let ts = e.series.term_values(0, 202).unwrap();
        for k in 0..=200usize {
            if ts[k].is_zero() {
                continue;
            }
            let at = Assignment::new().with(Var::K, int(k as i64));
            assert_eq!(ts[k + 1], &ts[k] * r.eval(&at).unwrap(), "{} k={k}", e.id);
        }
    });
}

/// `sum_{k=m}^{m+len} T(k) = T(m) (1 + r(m) (1 + r(m+1) (...)))`, evaluated
/// from the inside out over an unreduced integer fraction.
fn exact_tail(s: &SeriesSpec, m: i64, len: i64) -> Rational {
    let (p, q) = s.ratio_polys();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for k in (m..m + len).rev() {
        let r = p.eval(&int(k)) / q.eval(&int(k));
        // 1 + r * num/den
        let (rn, rd) = (r.numer().clone(), r.denom().clone());
        num = &rd * &den + rn * num;
        den *= rd;
    }
    s.term_value(m).unwrap() * Rational::new(num, den)
}

#[test]
fn tail_bounds_are_sound() {
    builtin_catalog().par_iter().filter(|e| e.expected_rate.abs() < Rational::one()).for_each(|e| {
        for m in [10, 50] {
            let b = tail_bound(&e.series, m).unwrap();
            let s = exact_tail(&e.series, m, 500);
            assert!(s.abs() <= b, "{} M={m}", e.id);
        }
    });
}

#[test]
fn save_load_is_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("catalog.txt");
    let c = builtin_catalog();
    save(&c, &p).unwrap();
    let first = std::fs::read_to_string(&p).unwrap();
    let back = load(&p).unwrap();
    assert_eq!(back, c);
    save(&back, &p).unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), first);
    assert_eq!(to_text(&back), first);
}

#[test]
fn shift_normalize_matches_definition() {
    let mut n = 0;
    for an in [-3i64, -1, 1, 2, 3] {
        for nn in [1i64, 3, 5, 7, 9] {
            for b in [0i64, 2] {
                let (a, nv) = (rat(an, 4), rat(nn, 2));
                let raw = RawF::new(a.clone(), b, nv.clone());
                let Ok(s) = raw.shift_normalize() else { continue };
                n += 1;
                for k in 0..=50 {
                    // direct product definition of F(n, k)
                    let mut q = Rational::one();
                    let low = &nv - &a + Rational::one();
                    for i in 0..k + b {
                        q *= ((&a + int(i)) / (&low + int(i))).pow(4);
                    }
                    let want = q * (&nv + int(2 * k + 2 * b));
                    assert_eq!(s.term_value(k).unwrap(), want);
                }
            }
        }
    }
    assert_eq!(n, 50);
}

/// Generated series land on the catalog entries up to a constant factor.
#[test]
fn generated_series_match_catalog() {
    let cat = builtin_catalog();
    let cases = [
        (1, rat(1, 2), 0, rat(3, 2), "guillera-m14"),
        (1, rat(1, 2), 1, rat(3, 2), "chu-zhang-20k32"),
        (1, rat(-1, 2), 3, rat(1, 2), "two-param-41"),
        (1, rat(-1, 2), 0, rat(7, 2), "motivating"),
        (2, rat(1, 2), 1, rat(3, 2), "guillera-1024"),
        (2, rat(1, 2), 0, rat(3, 2), "motivating2"),
        (2, int(1), 0, int(2), "az-zeta3"),
    ];
    for (th, a, b, n, id) in cases {
        let p = AccelParams::new(a, b, n).unwrap();
        let s = if th == 1 { accelerate_t1(&p) } else { accelerate_t2(&p) }.unwrap();
        let r = reindex_canonical(&s).unwrap();
        let e = find(&cat, id).unwrap();
        assert!(proportional(&r.spec, &e.series, 30).is_some(), "{id}");
    }
}
