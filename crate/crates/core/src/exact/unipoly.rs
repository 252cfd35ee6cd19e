use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{MultiPoly, Var};
use super::{fmt_rational, Rational};

/// Dense univariate polynomial, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(x: Rational) -> Self {
        Self::new(vec![x])
    }

    /// `x + c`
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    /// `a*x + b`
    pub fn affine(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.c.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `p(a*x + b)`
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::affine(a.clone(), b.clone());
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// `p(x + s)`, by repeated synthetic division.
    pub fn taylor_shift(&self, s: &Rational) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// True when every coefficient of `p(x + m)` is nonnegative, which
    /// certifies `p >= 0` on `[m, inf)`.
    pub fn nonneg_on_ray(&self, m: &Rational) -> bool {
        self.taylor_shift(m).c.iter().all(|c| !c.is_negative())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.lc();
        let dd = d.degree();
        let mut q = vec![Rational::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] / &dl;
            if !f.is_zero() {
                for (k, dc) in d.c.iter().enumerate() {
                    r[i + k] -= &f * dc;
                }
            }
            q[i] = f;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Rational roots with multiplicity, found by the rational root test
    /// on the integer-scaled polynomial. Coefficients too large for trial
    /// division yield only the roots at zero.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut p = self.clone();
        let mut roots = Vec::new();
        while !p.is_zero() && p.coeff(0).is_zero() && p.degree() > 0 {
            roots.push(Rational::zero());
            p = Self::new(p.c[1..].to_vec());
        }
        if p.degree() == 0 {
            return roots;
        }
        let l = super::lcm_of_denominators(p.c.iter());
        let ip: Vec<num_bigint::BigInt> = p
            .c
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let a0 = ip[0].abs();
        let an = ip.last().unwrap().abs();
        let (Some(da), Some(dn)) = (small_divisors(&a0), small_divisors(&an)) else {
            return roots;
        };
        for pnum in &da {
            for q in &dn {
                for sign in [1i64, -1] {
                    let r = Rational::new(pnum * sign, q.clone());
                    while p.degree() > 0 && p.eval(&r).is_zero() {
                        p = p.div_exact(&Self::linear(-r.clone())).expect("root divides");
                        roots.push(r.clone());
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn to_multi(&self, v: Var) -> MultiPoly {
        MultiPoly::univariate(v, &self.c)
    }

    /// Inverse of [`UniPoly::to_multi`]; `None` when another symbol occurs.
    pub fn from_multi(p: &MultiPoly, v: Var) -> Option<UniPoly> {
        let mut c = vec![Rational::zero(); p.degree_in(v) as usize + 1];
        for (m, x) in p.terms() {
            if m.degree() != m.exp(v) {
                return None;
            }
            c[m.exp(v) as usize] = x.clone();
        }
        Some(Self::new(c))
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", fmt_rational(&a)));
            }
        }
        out
    }
}

/// Positive divisors of `n`, or `None` if `n` is too large to factor by
/// trial division.
fn small_divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n == 0 || n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d.into());
            if d * d != n {
                out.push((n / d).into());
            }
        }
        d += 1;
    }
    Some(out)
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in rhs.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        UniPoly::new(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn taylor_shift_matches_compose() {
        let f = p(&[13, 32, 20]);
        assert_eq!(f.taylor_shift(&int(1)), p(&[65, 72, 20]));
        assert_eq!(f.taylor_shift(&rat(1, 2)), f.compose_affine(&int(1), &rat(1, 2)));
    }

    #[test]
    fn gcd_and_roots() {
        let a = &p(&[1, 1]) * &p(&[-3, 2]);
        let b = &p(&[1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.rational_roots(), vec![int(-1), rat(3, 2)]);
        let sq = p(&[1, 2, 1]).pow(2);
        assert_eq!(sq.rational_roots(), vec![int(-1); 4]);
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn ray_test() {
        // (x - 2)^2 + 1 is positive, but only the shift to 2 shows it.
        let f = p(&[5, -4, 1]);
        assert!(!f.nonneg_on_ray(&int(0)));
        assert!(f.nonneg_on_ray(&int(2)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[13, 32, 20]).display_in("k"), "20*k^2 + 32*k + 13");
        assert_eq!(p(&[-1, 0, -1]).to_string(), "-x^2 - 1");
    }
}
