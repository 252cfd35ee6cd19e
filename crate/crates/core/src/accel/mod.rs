//! Accelerated series for `f(n, b) = sum_{k>=0} F(n,k)` from the iterated
//! recursion `f(n) = r1(n) + r2(n) f(n+1)` and its two closed forms.

mod term;

pub use term::{GeneralTerm, PochFactor};

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::certify::{g_value, tail_condition};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, rat, Assignment, MultiPoly, RatFun, Rational, UniPoly, Var};
use crate::hyper::{pochhammer, RawF, SeriesSpec};

/// Shifts scanned for degenerate denominators at construction.
pub const SCREEN_RANGE: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelParams {
    pub a: Rational,
    pub b: i64,
    pub n: Rational,
}

impl AccelParams {
    /// Rejects `a >= (2n+1)/4` and zeros of `p2(n+i)`, `n-a+1` over the
    /// screened range.
    pub fn new(a: Rational, b: i64, n: Rational) -> Result<Self> {
        if !tail_condition(&a, &n) {
            return Err(Error::malformed(format!(
                "need a < (2n+1)/4, got a = {}, n = {}",
                fmt_rational(&a),
                fmt_rational(&n)
            )));
        }
        let p = AccelParams { a, b, n };
        for i in 0..=SCREEN_RANGE + 2 {
            let ni = &p.n + int(i);
            if p2_at(&p.a, &ni).is_zero() {
                return Err(Error::pole(format!("p2 vanishes at n + {i}")));
            }
        }
        if (&p.n - &p.a + Rational::one()).is_zero() {
            return Err(Error::pole("n - a + 1 = 0".to_string()));
        }
        Ok(p)
    }

    pub fn raw(&self) -> RawF {
        RawF::new(self.a.clone(), self.b, self.n.clone())
    }

    fn assignment(&self, j: i64) -> Assignment {
        Assignment::new()
            .with(Var::A, self.a.clone())
            .with(Var::B, int(self.b))
            .with(Var::N, self.n.clone())
            .with(Var::J, int(j))
    }

    /// The polynomial in `j` obtained by fixing `(a, b, n)`.
    fn in_j(&self, p: &MultiPoly) -> UniPoly {
        let q = p
            .partial_eval(Var::A, &self.a)
            .partial_eval(Var::B, &int(self.b))
            .partial_eval(Var::N, &self.n);
        UniPoly::from_multi(&q, Var::J).expect("only j remains")
    }

    pub fn describe(&self) -> String {
        format!("(a, b, n) = ({}, {}, {})", fmt_rational(&self.a), self.b, fmt_rational(&self.n))
    }
}

fn p2_at(a: &Rational, n: &Rational) -> Rational {
    let t = a - n - Rational::one();
    int(2) * (a * int(4) - n * int(2) - Rational::one()) * &t * &t * &t * &t
}

fn p1_at(a: &Rational, n: &Rational) -> Rational {
    let t = a * int(2) - n - Rational::one();
    &t * &t * &t * &t * &t
}

fn r1_at(a: &Rational, b: i64, n: &Rational) -> Result<Rational> {
    let p2 = p2_at(a, n);
    if p2.is_zero() {
        return Err(Error::pole(format!("p2 vanishes at n = {}", fmt_rational(n))));
    }
    let g0 = g_value(&RawF::new(a.clone(), b, n.clone()), 0)?;
    Ok(-g0 / p2)
}

fn r2_at(a: &Rational, n: &Rational) -> Result<Rational> {
    let p2 = p2_at(a, n);
    if p2.is_zero() {
        return Err(Error::pole(format!("p2 vanishes at n = {}", fmt_rational(n))));
    }
    Ok(-p1_at(a, n) / p2)
}

/// `r1(n + shift) = -G(n+shift, 0) / p2(n+shift)` with `b` fixed.
pub fn r1(params: &AccelParams, shift: i64) -> Result<Rational> {
    r1_at(&params.a, params.b, &(&params.n + int(shift)))
}

/// `r2(n + shift) = -p1(n+shift) / p2(n+shift)`.
pub fn r2(params: &AccelParams, shift: i64) -> Result<Rational> {
    r2_at(&params.a, &(&params.n + int(shift)))
}

struct Templates {
    quad: MultiPoly,
    q1: MultiPoly,
}

fn templates() -> &'static Templates {
    static T: OnceLock<Templates> = OnceLock::new();
    T.get_or_init(|| Templates {
        quad: "10*a^2 - 8*a*b - 14*a*j - 14*a*n - 6*a + 2*b^2 + 6*b*j + 6*b*n + 2*b + 5*j^2 + 10*j*n + 4*j + 5*n^2 + 4*n + 1"
            .parse()
            .expect("literal"),
        q1: "-10*a^2 + 8*a*b + 22*a*j + 14*a*n + 28*a - 2*b^2 - 10*b*j - 6*b*n - 12*b - 13*j^2 - 16*j*n - 32*j - 5*n^2 - 20*n - 20"
            .parse()
            .expect("literal"),
    })
}

/// The quadratic factor of the single-acceleration weight at `j`.
pub fn weight_quadratic(params: &AccelParams, j: i64) -> Rational {
    templates().quad.eval(&params.assignment(j)).expect("all symbols assigned")
}

/// `(n-2a+1)^5 / ((2n-4a+1)(n-a+1)^4)`, the `j`-free part of the weight.
fn weight_constant(params: &AccelParams) -> Result<Rational> {
    let (a, n) = (&params.a, &params.n);
    let t = n - a + Rational::one();
    let d = (n * int(2) - a * int(4) + Rational::one()) * &t * &t * &t * &t;
    if d.is_zero() {
        return Err(Error::pole("weight constant denominator vanishes".to_string()));
    }
    let u = n - a * int(2) + Rational::one();
    Ok(&u * &u * &u * &u * &u / d)
}

/// Weight `R(n,j)` of the single acceleration:
/// `(n-2a+1)^5 / ((2n-4a+1)(2n-4a+2j+1)(n-a+1)^4) * quadratic(j)`.
pub fn mathcal_r(params: &AccelParams, j: i64) -> Result<Rational> {
    let c = weight_constant(params)?;
    let lin = &params.n * int(2) - &params.a * int(4) + int(2 * j + 1);
    if lin.is_zero() {
        return Err(Error::pole(format!("2n - 4a + 2j + 1 vanishes at j = {j}")));
    }
    Ok(c * weight_quadratic(params, j) / lin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    T1,
    T2,
}

impl Theorem {
    pub fn rate(self) -> Rational {
        match self {
            Theorem::T1 => rat(-1, 4),
            Theorem::T2 => rat(-1, 1024),
        }
    }
}

/// `f(n, b) = scale * sum_{j >= term.start} term(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceleratedSeries {
    pub theorem: Theorem,
    pub params: AccelParams,
    pub term: GeneralTerm,
    pub scale: Rational,
    pub lhs_description: String,
}

impl AcceleratedSeries {
    /// `scale * sum_{j=start}^{upto} term(j)`.
    pub fn partial_sum(&self, upto: i64) -> Result<Rational> {
        Ok(&self.scale * self.term.partial_sum(upto)?)
    }

    /// `term(j+1)/term(j) - rate`; its numerator has lower degree in `j`
    /// than its denominator exactly when the ratio tends to the rate.
    pub fn rate_defect(&self) -> Result<RatFun> {
        Ok(&self.term.ratio()? - &RatFun::constant(self.theorem.rate()))
    }

    fn screen(&self) -> Result<()> {
        for j in self.term.start..=SCREEN_RANGE {
            self.term.eval(j).map_err(|e| {
                Error::pole(format!("{:?} term {j} at {}: {e}", self.theorem, self.params.describe()))
            })?;
        }
        Ok(())
    }
}

fn lhs_description(params: &AccelParams) -> String {
    format!(
        "sum_k [a^4/(1+n-a)^4]_(k+b) (n+2k+2b) at {}",
        params.describe()
    )
}

/// Single acceleration:
/// `term(j) = (-1/4)^j [(n-2a+2)^5 / ((n-2a+3/2)(n-a+2)^4)]_{j-1}
///            [a^4 / (n-a+j+1)^4]_b R(n,j)`, `j >= 0`.
pub fn accelerate_t1(params: &AccelParams) -> Result<AcceleratedSeries> {
    let (a, n) = (&params.a, &params.n);
    let c1 = n - a * int(2) + int(2);
    let c2 = n - a * int(2) + rat(3, 2);
    let c3 = n - a + int(2);
    let c4 = n - a + int(1);
    let b = params.b;
    let quad = params.in_j(&templates().quad);
    let lin = UniPoly::affine(int(2), n * int(2) - a * int(4) + int(1));
    let term = GeneralTerm {
        constant: weight_constant(params)?,
        z: rat(-1, 4),
        start: 0,
        poch: vec![
            PochFactor::new(c1, 0, -1, 1, 5),
            PochFactor::new(c2, 0, -1, 1, -1),
            PochFactor::new(c3, 0, -1, 1, -4),
            PochFactor::new(a.clone(), 0, b, 0, 4),
            PochFactor::new(c4, 1, b, 0, -4),
        ],
        polys: vec![(quad, 1), (lin, -1)],
    };
    let s = AcceleratedSeries {
        theorem: Theorem::T1,
        params: params.clone(),
        term,
        scale: Rational::one(),
        lhs_description: lhs_description(params),
    };
    s.screen()?;
    Ok(s)
}

/// `sum_{j=-1}^{m} (prod_{i=0}^{j} r2(n+i)) r1(n+j+1)`.
pub fn iterate_t1(params: &AccelParams, m: i64) -> Result<Rational> {
    if m < -1 {
        return Err(Error::malformed("m must be at least -1"));
    }
    let mut total = Rational::zero();
    let mut prod = Rational::one();
    for j in -1..=m {
        if j >= 0 {
            prod *= r2(params, j)?;
        }
        total += &prod * r1(params, j + 1)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Pieces {
    pub q1: Rational,
    pub q2: Rational,
    pub s1: Rational,
    pub s2: Rational,
}

fn s1_at(a: &Rational, n: &Rational) -> Result<Rational> {
    let t = n + Rational::one() - a;
    let d = int(4) * (a * int(4) - n * int(2) - Rational::one()) * &t * &t * &t * &t;
    if d.is_zero() {
        return Err(Error::pole("s1 denominator vanishes".to_string()));
    }
    let u = n + Rational::one() - a * int(2);
    Ok(&u * &u * &u * &u * &u / d)
}

/// `q1(j), q2(j) = 4a - 2j - 2n - 3, s1(n)` and
/// `s2(j) = (j+n-2a+2)^5 (2b+3j+n+4) / (b+2j+n-a+3)^4`.
pub fn t2_pieces(params: &AccelParams, j: i64) -> Result<T2Pieces> {
    let (a, n) = (&params.a, &params.n);
    let b = int(params.b);
    let jj = int(j);
    let q1 = templates().q1.eval(&params.assignment(j)).expect("all symbols assigned");
    let q2 = a * int(4) - &jj * int(2) - n * int(2) - int(3);
    if q2.is_zero() {
        return Err(Error::pole(format!("q2 vanishes at j = {j}")));
    }
    let d = &b + &jj * int(2) + n - a + int(3);
    if d.is_zero() {
        return Err(Error::pole(format!("s2 denominator vanishes at j = {j}")));
    }
    let u = &jj + n - a * int(2) + int(2);
    let s2 = &u * &u * &u * &u * &u * (&b * int(2) + &jj * int(3) + n + int(4)) / (&d * &d * &d * &d);
    Ok(T2Pieces { q1, q2, s1: s1_at(a, n)?, s2 })
}

/// Double acceleration:
/// `term(j) = (-1/4)^j (q1+s2)/q2 [(n-2a+2)^5 / ((n-2a+3/2)(n-a+2)^4)]_j
///            [a^4 / (n+j-a+2)^4]_{j+b+1}`, `j >= -1`, scaled by `s1(n)`.
pub fn accelerate_t2(params: &AccelParams) -> Result<AcceleratedSeries> {
    let (a, n) = (&params.a, &params.n);
    let b = params.b;
    let c1 = n - a * int(2) + int(2);
    let c2 = n - a * int(2) + rat(3, 2);
    let c3 = n - a + int(2);
    let q1 = params.in_j(&templates().q1);
    let dlin = UniPoly::affine(int(2), int(b) + n - a + int(3));
    let d4 = dlin.pow(4);
    let u = UniPoly::linear(n - a * int(2) + int(2));
    let v = UniPoly::affine(int(3), int(2 * b) + n + int(4));
    let top = &(&q1 * &d4) + &(&u.pow(5) * &v);
    let q2 = UniPoly::affine(int(-2), a * int(4) - n * int(2) - int(3));
    let term = GeneralTerm {
        constant: Rational::one(),
        z: rat(-1, 4),
        start: -1,
        poch: vec![
            PochFactor::new(c1, 0, 0, 1, 5),
            PochFactor::new(c2, 0, 0, 1, -1),
            PochFactor::new(c3.clone(), 0, 0, 1, -4),
            PochFactor::new(a.clone(), 0, b + 1, 1, 4),
            PochFactor::new(c3, 1, b + 1, 1, -4),
        ],
        polys: vec![(top, 1), (dlin, -4), (q2, -1)],
    };
    let s = AcceleratedSeries {
        theorem: Theorem::T2,
        params: params.clone(),
        term,
        scale: s1_at(a, n)?,
        lhs_description: lhs_description(params),
    };
    s.screen()?;
    Ok(s)
}

fn r3_at(a: &Rational, b: i64, n: &Rational) -> Result<Rational> {
    let up = pochhammer(a, b)?;
    let lo = pochhammer(&(n - a + Rational::one()), b)?;
    if lo.is_zero() {
        return Err(Error::pole(format!("(n-a+1)_{b} vanishes")));
    }
    let r = up / lo;
    Ok(-(&r * &r * &r * &r) * (n + int(2 * b)))
}

/// `r3(n, b) = -[a^4/(n-a+1)^4]_b (n + 2b)`, so that
/// `f(n, b+1) - f(n, b) = r3(n, b)`.
pub fn r3(params: &AccelParams) -> Result<Rational> {
    r3_at(&params.a, params.b, &params.n)
}

/// `r4(n, b) = r1(n, b) - r2(n) r3(n+1, b)`, from
/// `f(n+1, b) = f(n+1, b+1) - r3(n+1, b)`.
pub fn r4_at(a: &Rational, b: i64, n: &Rational) -> Result<Rational> {
    Ok(r1_at(a, b, n)? - r2_at(a, n)? * r3_at(a, b, &(n + Rational::one()))?)
}

/// `sum_{j=-1}^{m} (prod_{i=0}^{j} r2(n+i)) r4(n+j+1, b+j+1)`.
pub fn iterate_t2(params: &AccelParams, m: i64) -> Result<Rational> {
    if m < -1 {
        return Err(Error::malformed("m must be at least -1"));
    }
    let mut total = Rational::zero();
    let mut prod = Rational::one();
    for j in -1..=m {
        if j >= 0 {
            prod *= r2(params, j)?;
        }
        total += &prod * r4_at(&params.a, params.b + j + 1, &(&params.n + int(j + 1)))?;
    }
    Ok(total)
}

/// A standard series equivalent to an accelerated one:
/// `f(n, b) = sum_{k>=0} spec(k) + absorbed` with
/// `spec(k) = scale * term(k - shift)` wherever the latter is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reindexed {
    pub shift: i64,
    pub spec: SeriesSpec,
    pub absorbed: Rational,
}

pub fn reindex(series: &AcceleratedSeries, shift: i64) -> Result<Reindexed> {
    let mut spec = series.term.collapse(shift)?;
    spec.prefactor *= &series.scale;
    let first = series.term.start + shift;
    let mut absorbed = Rational::zero();
    if first > 0 {
        for k in 0..first {
            absorbed -= spec
                .term_value(k)
                .map_err(|e| Error::NotCollapsible(format!("shift {shift}: extra term {k}: {e}")))?;
        }
    } else {
        for j in series.term.start..-shift {
            absorbed += &series.scale * series.term.eval(j)?;
        }
    }
    Ok(Reindexed { shift, spec, absorbed })
}

/// Tries shifts `-start ..= -start + 6` and keeps the simplest result:
/// smallest divisor degree, then polynomial degree, parameter count, sum of
/// absolute parameters, shift.
pub fn reindex_canonical(series: &AcceleratedSeries) -> Result<Reindexed> {
    let lo = -series.term.start;
    type Key = (usize, usize, usize, Rational, i64);
    let mut best: Option<(Reindexed, Key)> = None;
    let mut last_err = None;
    for d in lo..=lo + 6 {
        match reindex(series, d) {
            Ok(r) => {
                let s = &r.spec;
                let size: Rational = s
                    .num_params
                    .iter()
                    .chain(&s.den_params)
                    .map(|x| if x < &Rational::zero() { -x } else { x.clone() })
                    .sum();
                let key = (s.factor_den.degree(), s.factor_num.degree(), s.num_params.len(), size, d);
                if best.as_ref().is_none_or(|(_, k)| &key < k) {
                    best = Some((r, key));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.map(|(r, _)| r)
        .ok_or_else(|| last_err.unwrap_or_else(|| Error::NotCollapsible("no shift collapses".into())))
}

/// `Some(c)` when `a(k) = c * b(k)` for `0 <= k < count`.
pub fn proportional(a: &SeriesSpec, b: &SeriesSpec, count: usize) -> Option<Rational> {
    let ta = a.term_values(0, count).ok()?;
    let tb = b.term_values(0, count).ok()?;
    let mut c: Option<Rational> = None;
    for (x, y) in ta.iter().zip(&tb) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let q = x / y;
        match &c {
            None => c = Some(q),
            Some(c0) if c0 != &q => return None,
            _ => {}
        }
    }
    c
}
