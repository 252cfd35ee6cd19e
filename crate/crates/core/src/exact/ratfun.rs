use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::poly::{Assignment, MultiPoly, Var};
use super::{gcd_of_numerators, lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// Rational function in canonical form: `gcd(num, den) = 1`, both sides
/// have integer coefficients with no common integer content, and the
/// graded-lex leading coefficient of `den` is positive. Zero is `0/1`.
///
/// Because the form is canonical, structural equality is mathematical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFun {
    /// Normalizes `num/den`. Fails on a zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::malformed("zero denominator polynomial"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::rescaled(num, den))
    }

    /// Fixes the integer scaling of an already coprime pair.
    fn rescaled(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let l = lcm_of_denominators(num.terms().chain(den.terms()).map(|(_, c)| c));
        let l = Rational::from_integer(l);
        let (num, den) = (num.scale(&l), den.scale(&l));
        let g: BigInt = gcd_of_numerators(num.terms().chain(den.terms()).map(|(_, c)| c));
        let mut s = Rational::from_integer(g).recip();
        if den.leading_sign() < 0 {
            s = -s;
        }
        RatFun {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::rescaled(MultiPoly::constant(c), MultiPoly::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::pole("reciprocal of the zero rational function"));
        }
        Ok(Self::rescaled(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .renormalized_scale())
    }

    fn renormalized_scale(self) -> Self {
        Self::rescaled(self.num, self.den)
    }

    /// Exact value; a vanishing denominator is a pole error naming the point.
    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return Err(Error::pole(format!("denominator {} vanishes at {at}", self.den)));
        }
        Ok(self.num.eval(at)? / d)
    }

    pub fn substitute(&self, v: Var, by: &MultiPoly) -> Self {
        Self::new(self.num.substitute(v, by), self.den.substitute(v, by))
            .expect("substitution into a nonzero denominator stays nonzero generically")
    }

    /// Replaces `v` by `v + shift`.
    pub fn shift(&self, v: Var, shift: &Rational) -> Self {
        // A shift is an automorphism: the pair stays coprime.
        Self::rescaled(self.num.shift(v, shift), self.den.shift(v, shift))
    }

    /// Equality through normalization of the difference.
    pub fn equals(&self, other: &RatFun) -> bool {
        (self - other).is_zero()
    }

    pub fn degree_in(&self, v: Var) -> (u32, u32) {
        (self.num.degree_in(v), self.den.degree_in(v))
    }
}

impl From<MultiPoly> for RatFun {
    fn from(p: MultiPoly) -> Self {
        Self::rescaled(p, MultiPoly::one())
    }
}

impl Add for &RatFun {
    type Output = RatFun;

    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::rescaled(num, &self.den * &rhs.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return RatFun::zero();
        }
        let g2 = poly_gcd(&t, &g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = &d1 * &rhs.den.div_exact(&g2).expect("gcd divides");
        RatFun::rescaled(num, den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;

    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;

    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;

    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::rescaled(&n1 * &n2, &d1 * &d2)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &RatFun {
    type Output = Result<RatFun>;

    fn div(self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.recip()?)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun { (&self).$f(&rhs) }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: &RatFun) -> RatFun { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFun {
    type Output = RatFun;

    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MultiPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }
    fn c(x: i64) -> MultiPoly {
        MultiPoly::constant(int(x))
    }

    #[test]
    fn normalize_examples() {
        let f = RatFun::new(&v(Var::N).scale(&int(2)) + &c(2), c(4)).unwrap();
        assert_eq!(f.to_string(), "(n + 1)/2");
        assert_eq!(f.clone(), RatFun::new(f.num().clone(), f.den().clone()).unwrap());

        let n2a2 = &(&v(Var::N) * &v(Var::N)) - &(&v(Var::A) * &v(Var::A));
        let g = RatFun::new(n2a2, &v(Var::N) - &v(Var::A)).unwrap();
        assert_eq!(g.num(), &(&v(Var::N) + &v(Var::A)));
        assert!(g.den().is_one());

        let z = RatFun::new(MultiPoly::zero(), &v(Var::N) + &c(1)).unwrap();
        assert!(z.is_zero() && z.den().is_one());

        assert!(matches!(RatFun::new(c(1), MultiPoly::zero()), Err(Error::Malformed(_))));
    }

    #[test]
    fn den_sign_is_positive() {
        let f = RatFun::new(c(1), &c(1) - &v(Var::N)).unwrap();
        assert_eq!(f.to_string(), "-1/(n - 1)");
    }

    #[test]
    fn eval_examples() {
        let f = RatFun::new(&v(Var::N) + &c(1), c(2)).unwrap();
        assert_eq!(f.eval(&Assignment::new().with(Var::N, int(3))).unwrap(), int(2));

        // 1/(2b + 2k + n) at (b, k, n) = (0, 0, 3/2)
        let den = &(&v(Var::B).scale(&int(2)) + &v(Var::K).scale(&int(2))) + &v(Var::N);
        let f = RatFun::new(c(1), den).unwrap();
        let at = Assignment::new()
            .with(Var::B, int(0))
            .with(Var::K, int(0))
            .with(Var::N, rat(3, 2));
        assert_eq!(f.eval(&at).unwrap(), rat(2, 3));

        let f = RatFun::new(c(1), &v(Var::N) - &v(Var::A)).unwrap();
        let at = Assignment::new().with(Var::N, int(1)).with(Var::A, int(1));
        let err = f.eval(&at).unwrap_err();
        assert!(matches!(err, Error::Pole(ref m) if m.contains("n=1") && m.contains("a=1")));
    }

    #[test]
    fn equality_examples() {
        let n = || v(Var::N);
        let f = RatFun::new(&(&n() * &n()) - &c(1), &n() - &c(1)).unwrap();
        assert!(f.equals(&RatFun::from(&n() + &c(1))));

        // (2a - n - 1)^5 vs -(n - 2a + 1)^5
        let a2 = v(Var::A).scale(&int(2));
        let p = RatFun::from((&(&a2 - &n()) - &c(1)).pow(5));
        let q = RatFun::from(-((&(&n() - &a2) + &c(1)).pow(5)));
        assert!(p.equals(&q));
        assert_eq!(p, q);

        assert!(!RatFun::from(&n() + &c(1)).equals(&RatFun::from(&n() + &c(2))));
    }

    #[test]
    fn arithmetic_cancels() {
        let n = RatFun::var(Var::N);
        let one = RatFun::one();
        let f = (&(&n + &one) * &(&n - &one).recip().unwrap()) - (&(&n - &one) * &(&n + &one).recip().unwrap());
        // (n+1)/(n-1) - (n-1)/(n+1) = 4n/(n^2-1)
        assert_eq!(f.to_string(), "4*n/(n^2 - 1)");
    }
}
