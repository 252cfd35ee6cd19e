//! Exact arithmetic: rationals, multivariate polynomials over the fixed
//! symbol set `{n, k, j, a, b}`, and normalized rational functions.

mod gcd;
mod poly;
mod ratfun;
mod unipoly;

pub use gcd::{content_in, poly_gcd};
pub use poly::{Assignment, Monomial, MultiPoly, Var};
pub use ratfun::RatFun;
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or `-p/q`, surrounding whitespace allowed.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::malformed(format!("not a rational: `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `p/q`, with `/q` omitted when `q = 1`.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn rpow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_nonpositive_integer(q: &Rational) -> bool {
    is_integer(q) && !q.is_positive()
}

pub(crate) fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub(crate) fn gcd_of_numerators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(fmt_rational(&rat(-1, 1024)), "-1/1024");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rpow(&rat(-1, 4), -2), int(16));
        assert_eq!(rpow(&rat(2, 3), 0), int(1));
    }
}
