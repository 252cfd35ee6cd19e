use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, gcd_of_numerators, lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// The fixed symbol set. Declaration order is the lexicographic priority
/// used by the graded-lex monomial order (`n > k > j > a > b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    N,
    K,
    J,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::N, Var::K, Var::J, Var::A, Var::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::K => "k",
            Var::J => "j",
            Var::A => "a",
            Var::B => "b",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(n, k, j, a, b)`, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x = x.checked_sub(y)?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A (partial) assignment of rationals to symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment([Option<Rational>; 5]);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.0[v.index()] = Some(value);
        self
    }

    pub fn set(&mut self, v: Var, value: Rational) {
        self.0[v.index()] = Some(value);
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.0[v.index()].as_ref()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter_map(|&v| self.get(v).map(|q| format!("{v}={}", fmt_rational(q))))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// `c0 + c1 v` for a single variable.
    pub fn linear(v: Var, c1: Rational, c0: Rational) -> Self {
        &Self::term(Monomial::var(v), c1) + &Self::constant(c0)
    }

    /// Builds `sum_i coeffs[i] * v^i`.
    pub fn univariate(v: Var, coeffs: &[Rational]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0; 5];
                e[v.index()] = i as u32;
                terms.insert(Monomial(e), c.clone());
            }
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation; every occurring symbol must be assigned.
    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let mut powers: [Vec<Rational>; 5] = Default::default();
        for v in Var::ALL {
            let d = self.degree_in(v) as usize;
            if d == 0 {
                continue;
            }
            let x = at.get(v).ok_or(Error::Unassigned(v.name()))?;
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(Rational::one());
            for i in 1..=d {
                let next = &pw[i - 1] * x;
                pw.push(next);
            }
            powers[v.index()] = pw;
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t *= &powers[v.index()][e];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficients with respect to `v`, indexed by the power of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut e = m.0;
            let p = e[v.index()] as usize;
            e[v.index()] = 0;
            out[p].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::ONE;
            m.0[v.index()] = i as u32;
            for (t, x) in &c.terms {
                out.add_term(t.mul(&m), x.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v` (a polynomial free of `v`).
    pub fn lc_in(&self, v: Var) -> MultiPoly {
        self.coefficients_in(v).pop().unwrap_or_default()
    }

    /// Replaces `v` by the polynomial `by`.
    pub fn substitute(&self, v: Var, by: &MultiPoly) -> MultiPoly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * by) + c;
        }
        acc
    }

    /// Replaces `v` by `v + shift`.
    pub fn shift(&self, v: Var, shift: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::linear(v, Rational::one(), shift.clone()))
    }

    /// Replaces `v` by a rational value.
    pub fn partial_eval(&self, v: Var, x: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(x.clone()))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), MultiPoly::zero());
        }
        let l = lcm_of_denominators(self.terms.values());
        let scaled: Vec<_> = self
            .terms
            .values()
            .map(|c| c * Rational::from_integer(l.clone()))
            .collect();
        let g = gcd_of_numerators(scaled.iter());
        let mut content = Rational::new(g, l);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }

    /// Sign of the graded-lex leading coefficient (0 for the zero polynomial).
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

/// Canonical text: terms in descending graded-lex order, e.g.
/// `2*n^2*k - 1/2*a + 3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(fmt_rational(&abs));
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = Error;

    /// Parses sums of products of rationals, symbols, parenthesized
    /// subexpressions and nonnegative integer powers; accepts the canonical
    /// serialization.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { toks: &toks, pos: 0, src: s };
        let out = p.expr()?;
        if p.pos != toks.len() {
            return Err(p.fail());
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: &'a [char],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn fail(&self) -> Error {
        Error::malformed(format!("bad polynomial `{}` near position {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.digits().ok_or_else(|| self.fail())?;
            let e: u32 = e.parse().map_err(|_| self.fail())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.toks[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.fail());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.digits().unwrap_or_default();
                let mut q = String::from("1");
                if self.peek() == Some('/') {
                    self.pos += 1;
                    q = self.digits().ok_or_else(|| self.fail())?;
                }
                let v = super::parse_rational(&format!("{p}/{q}")).map_err(|_| self.fail())?;
                Ok(MultiPoly::constant(v))
            }
            Some(c) => {
                let v = Var::ALL.into_iter().find(|v| v.name().starts_with(c)).ok_or_else(|| self.fail())?;
                self.pos += 1;
                Ok(MultiPoly::var(v))
            }
            None => Err(self.fail()),
        }
    }
}
