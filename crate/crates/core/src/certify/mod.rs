//! Verification of the first-order relation
//! `p1(n) F(n+1,k) + p2(n) F(n,k) = G(n,k+1) - G(n,k)`, `G = R F`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, Assignment, MultiPoly, RatFun, Rational, Var};
use crate::hyper::RawF;

/// `F(n,k) = [(upper)_{k+b} / (lower)_{k+b}]^multiplicity * factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFamily {
    pub upper: MultiPoly,
    pub lower: MultiPoly,
    pub multiplicity: u32,
    pub factor: MultiPoly,
}

impl FFamily {
    /// Four copies of `a` over four copies of `1 + n - a`, factor `n + 2k + 2b`.
    pub fn theorem1() -> Self {
        FFamily {
            upper: p("a"),
            lower: p("1 + n - a"),
            multiplicity: 4,
            factor: p("n + 2*k + 2*b"),
        }
    }
}

fn p(s: &str) -> MultiPoly {
    s.parse().expect("built-in polynomial literal")
}

/// `(sigma_n, sigma_k) = (F(n+1,k)/F(n,k), F(n,k+1)/F(n,k))`.
///
/// Needs `upper` free of `n` and `lower(n+1) = lower(n) + 1`, so that the
/// `n`-shift only touches the lower Pochhammer symbols.
pub fn f_shift_ratios(fam: &FFamily) -> Result<(RatFun, RatFun)> {
    let one = Rational::from_integer(1.into());
    if fam.upper.contains(Var::N) || &fam.lower.shift(Var::N, &one) - &fam.lower != MultiPoly::one() {
        return Err(Error::Unsupported("family outside the supported n-shift shape".into()));
    }
    let kb = &MultiPoly::var(Var::K) + &MultiPoly::var(Var::B);
    let up_k = &fam.upper + &kb;
    let lo_k = &fam.lower + &kb;
    let m = fam.multiplicity as i32;
    let poch_k = RatFun::new(up_k, lo_k.clone())?.pow(m)?;
    let fac_k = RatFun::new(fam.factor.shift(Var::K, &one), fam.factor.clone())?;
    let poch_n = RatFun::new(fam.lower.clone(), lo_k)?.pow(m)?;
    let fac_n = RatFun::new(fam.factor.shift(Var::N, &one), fam.factor.clone())?;
    Ok((&poch_n * &fac_n, &poch_k * &fac_k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub r: RatFun,
    pub p1: MultiPoly,
    pub p2: MultiPoly,
    /// Shift order of the recurrence; always 1 here.
    pub order: u32,
}

pub fn theorem1_certificate() -> Certificate {
    let num = p("(a - n - 1)^4*(10*a^2 - 8*a*b - 8*a*k - 14*a*n - 6*a + 2*b^2 + 4*b*k + 6*b*n + 2*b + 2*k^2 + 6*k*n + 2*k + 5*n^2 + 4*n + 1)");
    let den = p("2*b + 2*k + n");
    Certificate {
        r: RatFun::new(num, den).expect("nonzero denominator"),
        p1: p("(2*a - n - 1)^5"),
        p2: p("2*(4*a - 2*n - 1)*(a - n - 1)^4"),
        order: 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Symbolic,
    Randomized { points: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    /// Normal form of `lhs - rhs` when it is not zero.
    Residue(RatFun),
    /// First failing sample: point, left side, right side.
    Counterexample(Assignment, Rational, Rational),
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }
}

/// Both sides of the relation divided by `F(n,k)`:
/// `p1 sigma_n + p2` and `R(n,k+1) sigma_k - R(n,k)`.
pub fn relation_sides(fam: &FFamily, cert: &Certificate) -> Result<(RatFun, RatFun)> {
    let (sn, sk) = f_shift_ratios(fam)?;
    let one = Rational::from_integer(1.into());
    let lhs = &(&RatFun::from(cert.p1.clone()) * &sn) + &RatFun::from(cert.p2.clone());
    let rhs = &(&cert.r.shift(Var::K, &one) * &sk) - &cert.r;
    Ok((lhs, rhs))
}

/// Both sides evaluated at a point.
pub fn sides_at(fam: &FFamily, cert: &Certificate, at: &Assignment) -> Result<(Rational, Rational)> {
    let (sn, sk) = f_shift_ratios(fam)?;
    let one = Rational::from_integer(1.into());
    let lhs = cert.p1.eval(at)? * sn.eval(at)? + cert.p2.eval(at)?;
    let rhs = cert.r.shift(Var::K, &one).eval(at)? * sk.eval(at)? - cert.r.eval(at)?;
    Ok((lhs, rhs))
}

/// Coordinates are drawn from `[-2^20, 2^20]`, far more than twice the total
/// degree of the cleared relation (below 40), so a false identity survives
/// one sample with probability under `40 / 2^21` (Schwartz-Zippel).
const SAMPLE_RADIUS: i64 = 1 << 20;

pub fn check_certificate(fam: &FFamily, cert: &Certificate, mode: CheckMode) -> Result<CheckOutcome> {
    match mode {
        CheckMode::Symbolic => {
            let (lhs, rhs) = relation_sides(fam, cert)?;
            let diff = &lhs - &rhs;
            Ok(if diff.is_zero() { CheckOutcome::Holds } else { CheckOutcome::Residue(diff) })
        }
        CheckMode::Randomized { points, seed } => {
            let (sn, sk) = f_shift_ratios(fam)?;
            let one = Rational::from_integer(1.into());
            let r1 = cert.r.shift(Var::K, &one);
            let sample = |i: usize| -> Option<(Assignment, Rational, Rational)> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                loop {
                    let mut at = Assignment::new();
                    for v in [Var::N, Var::K, Var::A, Var::B] {
                        at.set(v, int(rng.gen_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS)));
                    }
                    let sides = (|| -> Result<(Rational, Rational)> {
                        let l = cert.p1.eval(&at)? * sn.eval(&at)? + cert.p2.eval(&at)?;
                        let r = r1.eval(&at)? * sk.eval(&at)? - cert.r.eval(&at)?;
                        Ok((l, r))
                    })();
                    match sides {
                        Ok((l, r)) if l != r => return Some((at, l, r)),
                        Ok(_) => return None,
                        Err(_) => continue,
                    }
                }
            };
            let first = (0..points).into_par_iter().filter_map(sample).find_first(|_| true);
            Ok(match first {
                None => CheckOutcome::Holds,
                Some((at, l, r)) => CheckOutcome::Counterexample(at, l, r),
            })
        }
    }
}

/// Twenty certificates, each with one coefficient of `p1`, `p2` or the
/// numerator of `R` increased by one.
pub fn perturbations(cert: &Certificate) -> Vec<(String, Certificate)> {
    let bump = |poly: &MultiPoly, idx: usize| -> (MultiPoly, String) {
        let terms: Vec<_> = poly.terms().collect();
        let (m, _) = terms[idx % terms.len()];
        let one = Rational::from_integer(1.into());
        let mono = MultiPoly::term(*m, one);
        (poly + &mono, MultiPoly::term(*m, Rational::from_integer(1.into())).to_string())
    };
    let mut out = Vec::with_capacity(20);
    for i in 0..20 {
        let mut c = cert.clone();
        let idx = 3 * (i / 3) + 1;
        let label = match i % 3 {
            0 => {
                let (q, m) = bump(&cert.p1, idx);
                c.p1 = q;
                format!("p1 coefficient of {m} + 1")
            }
            1 => {
                let (q, m) = bump(&cert.p2, idx);
                c.p2 = q;
                format!("p2 coefficient of {m} + 1")
            }
            _ => {
                let (q, m) = bump(cert.r.num(), idx);
                c.r = RatFun::new(q, cert.r.den().clone()).expect("nonzero denominator");
                format!("R numerator coefficient of {m} + 1")
            }
        };
        out.push((label, c));
    }
    out
}

/// Convergence condition `a < (2n+1)/4` of `sum_k F(n,k)`.
pub fn tail_condition(a: &Rational, n: &Rational) -> bool {
    a * int(4) < n * int(2) + int(1)
}

fn point(raw: &RawF, n: &Rational, k: i64) -> Assignment {
    Assignment::new()
        .with(Var::N, n.clone())
        .with(Var::K, int(k))
        .with(Var::A, raw.a.clone())
        .with(Var::B, int(raw.b))
}

/// `G(n,k) = R(n,k) F(n,k)` at the family's own `n`.
pub fn g_value(raw: &RawF, k: i64) -> Result<Rational> {
    let r = theorem1_certificate().r.eval(&point(raw, &raw.n, k))?;
    Ok(r * raw.value(k)?)
}

/// `G(n,0)`.
pub fn g_at_zero(raw: &RawF) -> Result<Rational> {
    g_value(raw, 0)
}

/// Summed relation at concrete parameters:
/// `sum_{j<=k} [p1 F(n+1,j) + p2 F(n,j)] = G(n,k+1) - G(n,0)` for all
/// `0 <= k <= k_max`. Returns the first failing `k`.
pub fn telescoping_check(raw: &RawF, k_max: i64) -> Result<Option<i64>> {
    let cert = theorem1_certificate();
    let at = point(raw, &raw.n, 0);
    let p1 = cert.p1.eval(&at)?;
    let p2 = cert.p2.eval(&at)?;
    let next = RawF::new(raw.a.clone(), raw.b, &raw.n + int(1));
    let g0 = g_value(raw, 0)?;
    let mut acc = Rational::from_integer(0.into());
    for k in 0..=k_max {
        acc += &p1 * next.value(k)? + &p2 * raw.value(k)?;
        if acc != g_value(raw, k + 1)? - &g0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn at(n: Rational, k: i64, a: Rational, b: i64) -> Assignment {
        Assignment::new()
            .with(Var::N, n)
            .with(Var::K, int(k))
            .with(Var::A, a)
            .with(Var::B, int(b))
    }

    #[test]
    fn shift_ratio_values() {
        let (sn, sk) = f_shift_ratios(&FFamily::theorem1()).unwrap();
        let x = at(rat(3, 2), 0, rat(1, 2), 0);
        assert_eq!(sk.eval(&x).unwrap(), rat(7, 768));
        assert_eq!(sn.eval(&x).unwrap(), rat(5, 3));
        // k + b + 1 + n - a = 0
        let pole = at(int(0), 0, int(2), 1);
        assert!(matches!(sk.eval(&pole), Err(Error::Pole(_))));
    }

    #[test]
    fn certificate_values() {
        let c = theorem1_certificate();
        let x = at(rat(3, 2), 0, rat(1, 2), 0);
        assert_eq!(c.r.eval(&x).unwrap(), rat(232, 3));
        assert_eq!(c.p2.eval(&x).unwrap(), int(-64));
        assert_eq!(c.p1.eval(&x).unwrap(), rat(-243, 32));
        let (l, r) = sides_at(&FFamily::theorem1(), &c, &x).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn p1_sign_forms_agree() {
        let a: MultiPoly = "(2*a - n - 1)^5".parse().unwrap();
        let b: MultiPoly = "-(n - 2*a + 1)^5".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn g_at_zero_values() {
        assert_eq!(g_at_zero(&RawF::new(rat(1, 2), 0, rat(3, 2))).unwrap(), int(116));
        let raw = RawF::new(rat(1, 2), 1, rat(3, 2));
        let f0 = pow4(rat(1, 2) / int(2)) * rat(7, 2);
        let r0 = theorem1_certificate().r.eval(&at(rat(3, 2), 0, rat(1, 2), 1)).unwrap();
        assert_eq!(g_at_zero(&raw).unwrap(), r0 * f0);
    }

    fn pow4(x: Rational) -> Rational {
        &x * &x * &x * &x
    }

    #[test]
    fn tail_condition_examples() {
        assert!(tail_condition(&rat(1, 2), &rat(3, 2)));
        assert!(!tail_condition(&int(1), &rat(3, 2)));
        assert!(tail_condition(&rat(-1, 2), &rat(1, 2)));
    }

    #[test]
    fn randomized_and_perturbed() {
        let fam = FFamily::theorem1();
        let c = theorem1_certificate();
        let mode = CheckMode::Randomized { points: 25, seed: 42 };
        assert!(check_certificate(&fam, &c, mode).unwrap().holds());
        let mut bad = c.clone();
        bad.p1 = "(2*a - n - 1)^4".parse().unwrap();
        assert!(!check_certificate(&fam, &bad, mode).unwrap().holds());
    }

    #[test]
    fn telescoping_small() {
        assert_eq!(telescoping_check(&RawF::new(rat(1, 2), 0, rat(3, 2)), 20).unwrap(), None);
    }
}
