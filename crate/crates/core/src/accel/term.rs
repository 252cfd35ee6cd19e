use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, is_nonpositive_integer, rpow, RatFun, Rational, UniPoly, Var};
use crate::hyper::{pochhammer, SeriesSpec};

/// `(base + base_slope*j)_{index_offset + index_slope*j}` raised to `exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochFactor {
    pub base: Rational,
    pub base_slope: i64,
    pub index_offset: i64,
    pub index_slope: i64,
    pub exponent: i32,
}

impl PochFactor {
    pub fn new(base: Rational, base_slope: i64, index_offset: i64, index_slope: i64, exponent: i32) -> Self {
        PochFactor { base, base_slope, index_offset, index_slope, exponent }
    }

    fn eval(&self, j: i64) -> Result<Rational> {
        let x = &self.base + int(self.base_slope * j);
        let v = pochhammer(&x, self.index_offset + self.index_slope * j)?;
        if v.is_zero() && self.exponent < 0 {
            return Err(Error::pole(format!(
                "({})_{} vanishes in a denominator",
                fmt_rational(&x),
                self.index_offset + self.index_slope * j
            )));
        }
        Ok(rpow(&v, self.exponent as i64))
    }

    /// `(x)_m = Gamma(x+m)/Gamma(x)` as two Gamma factors `(alpha, beta, e)`
    /// meaning `Gamma(alpha + beta*j)^e`.
    fn gammas(&self) -> [(Rational, i64, i32); 2] {
        [
            (&self.base + int(self.index_offset), self.base_slope + self.index_slope, self.exponent),
            (self.base.clone(), self.base_slope, -self.exponent),
        ]
    }
}

/// A term `constant * z^j * prod PochFactor * prod poly(j)^e`, summed over
/// `j >= start`. The Pochhammer indices may depend on `j`, which a plain
/// [`SeriesSpec`] cannot express.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralTerm {
    pub constant: Rational,
    pub z: Rational,
    pub start: i64,
    pub poch: Vec<PochFactor>,
    pub polys: Vec<(UniPoly, i32)>,
}

/// `Gamma(alpha + beta(j+1)) / Gamma(alpha + beta j)` as polynomials in `j`.
fn gamma_step(alpha: &Rational, beta: i64) -> (UniPoly, UniPoly) {
    let b = int(beta);
    let mut num = UniPoly::one();
    let mut den = UniPoly::one();
    if beta > 0 {
        for i in 0..beta {
            num = &num * &UniPoly::affine(b.clone(), alpha + int(i));
        }
    } else {
        for i in 1..=-beta {
            den = &den * &UniPoly::affine(b.clone(), alpha - int(i));
        }
    }
    (num, den)
}

impl GeneralTerm {
    pub fn eval(&self, j: i64) -> Result<Rational> {
        let mut t = &self.constant * rpow(&self.z, j);
        for f in &self.poch {
            t *= f.eval(j)?;
        }
        let jj = int(j);
        for (p, e) in &self.polys {
            let v = p.eval(&jj);
            if v.is_zero() && *e < 0 {
                return Err(Error::pole(format!("factor {} vanishes at j = {j}", p.display_in("j"))));
            }
            t *= rpow(&v, *e as i64);
        }
        Ok(t)
    }

    /// `sum_{j=start}^{upto} term(j)`.
    pub fn partial_sum(&self, upto: i64) -> Result<Rational> {
        let mut s = Rational::zero();
        for j in self.start..=upto {
            s += self.eval(j)?;
        }
        Ok(s)
    }

    /// `term(j+1)/term(j)` as a rational function of `j`.
    pub fn ratio(&self) -> Result<RatFun> {
        let mut num = UniPoly::constant(self.z.clone());
        let mut den = UniPoly::one();
        let mul_pow = |num: &mut UniPoly, den: &mut UniPoly, (pn, pd): (UniPoly, UniPoly), e: i32| {
            let (pn, pd) = if e < 0 { (pd, pn) } else { (pn, pd) };
            let e = e.unsigned_abs();
            *num = &*num * &pn.pow(e);
            *den = &*den * &pd.pow(e);
        };
        for f in &self.poch {
            for (alpha, beta, e) in f.gammas() {
                mul_pow(&mut num, &mut den, gamma_step(&alpha, beta), e);
            }
        }
        for (p, e) in &self.polys {
            mul_pow(&mut num, &mut den, (p.taylor_shift(&Rational::one()), p.clone()), *e);
        }
        RatFun::new(num.to_multi(Var::J), den.to_multi(Var::J))
    }

    /// Fixed-parameter form `S(k) = term(k - shift)`.
    ///
    /// Each Gamma factor `Gamma(C + beta k)` becomes a Pochhammer symbol in
    /// `k` (Gauss multiplication for `beta > 1`), common parameters cancel,
    /// linear polynomial factors are absorbed into neighbouring parameters,
    /// and the constant is fitted and then checked on further terms.
    pub fn collapse(&self, shift: i64) -> Result<SeriesSpec> {
        let d = int(shift);
        let mut z = self.z.clone();
        let mut upper: Vec<Rational> = Vec::new();
        let mut lower: Vec<Rational> = Vec::new();
        let mut num = UniPoly::one();
        let mut den = UniPoly::one();
        let put_poly = |num: &mut UniPoly, den: &mut UniPoly, p: &UniPoly, e: i32| {
            let q = p.pow(e.unsigned_abs());
            if e > 0 {
                *num = &*num * &q;
            } else {
                *den = &*den * &q;
            }
        };
        for f in &self.poch {
            if f.base_slope == 0 && f.index_slope == 0 {
                continue;
            }
            for (alpha, beta, e) in f.gammas() {
                if beta == 0 || e == 0 {
                    continue;
                }
                if beta < 0 {
                    return Err(Error::NotCollapsible(format!(
                        "Gamma factor with negative slope {beta}"
                    )));
                }
                let mut c = &alpha - int(beta) * &d;
                if is_nonpositive_integer(&c) {
                    // Gamma(c + beta k) = Gamma(1 + beta k) / (c + beta k)_{1-c}
                    let l = (Rational::one() - &c).to_integer();
                    let l: i64 = l.try_into().map_err(|_| Error::NotCollapsible("huge shift".into()))?;
                    let mut p = UniPoly::one();
                    for i in 0..l {
                        p = &p * &UniPoly::affine(int(beta), &c + int(i));
                    }
                    put_poly(&mut num, &mut den, &p, -e);
                    c = Rational::one();
                }
                let bb = int(beta);
                z *= rpow(&rpow(&bb, beta), e as i64);
                for r in 0..beta {
                    let param = (&c + int(r)) / &bb;
                    for _ in 0..e.unsigned_abs() {
                        if e > 0 {
                            upper.push(param.clone());
                        } else {
                            lower.push(param.clone());
                        }
                    }
                }
            }
        }
        for (p, e) in &self.polys {
            put_poly(&mut num, &mut den, &p.taylor_shift(&-&d), *e);
        }

        cancel(&mut upper, &mut lower);
        absorb_linear(&mut upper, &mut lower, &mut num, &mut den);
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides");
            den = den.div_exact(&g).expect("gcd divides");
        }
        let num = integer_primitive(&num);
        let den = integer_primitive(&den);
        upper.sort();
        lower.sort();

        let mut spec = SeriesSpec {
            prefactor: Rational::one(),
            z,
            num_params: upper,
            den_params: lower,
            factor_num: num,
            factor_den: den,
            start: 0,
            target: None,
        };
        spec.validate().map_err(|e| Error::NotCollapsible(format!("shift {shift}: {e}")))?;

        let first = self.start.max(-shift);
        let mut fitted = None;
        for j in first..first + 8 {
            let (t, s) = (self.eval(j), spec.term_value(j + shift));
            if let (Ok(t), Ok(s)) = (t, s) {
                if !s.is_zero() && !t.is_zero() {
                    fitted = Some(t / s);
                    break;
                }
            }
        }
        let c = fitted.ok_or_else(|| Error::NotCollapsible(format!("shift {shift}: no nonzero term to fit")))?;
        spec.prefactor = c;
        for j in first..first + 12 {
            if self.eval(j)? != spec.term_value(j + shift)? {
                return Err(Error::NotCollapsible(format!("shift {shift}: terms differ at j = {j}")));
            }
        }
        Ok(spec)
    }
}

/// Removes parameters common to both lists (with multiplicity).
fn cancel(upper: &mut Vec<Rational>, lower: &mut Vec<Rational>) {
    let mut i = 0;
    while i < upper.len() {
        if let Some(p) = lower.iter().position(|x| x == &upper[i]) {
            lower.swap_remove(p);
            upper.swap_remove(i);
        } else {
            i += 1;
        }
    }
}

/// Folds factors `k + c` into parameters:
/// `(c)_k (k+c) = c (c+1)_k` and `(k+c)/(c+1)_k = c/(c)_k` for numerators,
/// the mirror images for denominators. Constants are refitted by the caller.
fn absorb_linear(upper: &mut Vec<Rational>, lower: &mut Vec<Rational>, num: &mut UniPoly, den: &mut UniPoly) {
    loop {
        let mut changed = false;
        for (is_num, poly) in [(true, num.clone()), (false, den.clone())] {
            // only roots -c with c or c+1 among the parameters can be folded
            let mut cands: Vec<Rational> = Vec::new();
            for x in upper.iter().chain(lower.iter()) {
                for c in [x.clone(), x - Rational::one()] {
                    if !cands.contains(&c) && poly.degree() > 0 && poly.eval(&-c.clone()).is_zero() {
                        cands.push(c);
                    }
                }
            }
            for c in cands {
                let c1 = &c + Rational::one();
                // (list, from, to)
                let moves: [(bool, &Rational, &Rational); 2] = if is_num {
                    [(true, &c, &c1), (false, &c1, &c)]
                } else {
                    [(true, &c1, &c), (false, &c, &c1)]
                };
                for (in_upper, from, to) in moves {
                    if to.is_zero() || from.is_zero() || (!in_upper && is_nonpositive_integer(to)) {
                        continue;
                    }
                    let list = if in_upper { &mut *upper } else { &mut *lower };
                    if let Some(pos) = list.iter().position(|x| x == from) {
                        list[pos] = to.clone();
                        let lin = UniPoly::linear(c.clone());
                        let target = if is_num { &mut *num } else { &mut *den };
                        *target = target.div_exact(&lin).expect("root divides");
                        changed = true;
                        break;
                    }
                }
                if changed {
                    break;
                }
            }
            if changed {
                break;
            }
        }
        cancel(upper, lower);
        if !changed {
            return;
        }
    }
}

/// Integer coefficients, content 1, positive leading coefficient.
fn integer_primitive(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let (_, q) = p.to_multi(Var::K).primitive();
    let mut u = UniPoly::from_multi(&q, Var::K).expect("univariate");
    if u.lc().is_negative() {
        u = -&u;
    }
    u
}
