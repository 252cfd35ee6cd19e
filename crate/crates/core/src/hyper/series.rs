use num_traits::{One, Zero};

use super::{pochhammer, TargetConstant};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, is_nonpositive_integer, rpow, MultiPoly, RatFun, Rational, UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub prefactor: Rational,
    pub z: Rational,
    pub num_params: Vec<Rational>,
    pub den_params: Vec<Rational>,
    /// Polynomial factor `P(k)`.
    pub factor_num: UniPoly,
    /// Polynomial divisor `Q(k)`; `1` for plain polynomial summands.
    pub factor_den: UniPoly,
    pub start: i64,
    pub target: Option<TargetConstant>,
}

impl SeriesSpec {
    /// Balanced series with `P(k)` given by ascending coefficients and `Q = 1`.
    pub fn new(z: Rational, num_params: Vec<Rational>, den_params: Vec<Rational>, poly: UniPoly) -> Self {
        SeriesSpec {
            prefactor: Rational::one(),
            z,
            num_params,
            den_params,
            factor_num: poly,
            factor_den: UniPoly::one(),
            start: 0,
            target: None,
        }
    }

    pub fn with_target(mut self, t: TargetConstant) -> Self {
        self.target = Some(t);
        self
    }

    pub fn with_prefactor(mut self, p: Rational) -> Self {
        self.prefactor = p;
        self
    }

    pub fn with_factor_den(mut self, q: UniPoly) -> Self {
        self.factor_den = q;
        self
    }

    /// Checks the structural invariants: balanced parameter lists, a nonzero
    /// divisor with no integer root in range, and no lower parameter that is
    /// a nonpositive integer.
    pub fn validate(&self) -> Result<()> {
        if self.num_params.len() != self.den_params.len() {
            return Err(Error::Unsupported(format!(
                "{} upper vs {} lower parameters",
                self.num_params.len(),
                self.den_params.len()
            )));
        }
        if self.factor_den.is_zero() {
            return Err(Error::malformed("zero factor denominator"));
        }
        if self.factor_num.is_zero() || self.prefactor.is_zero() || self.z.is_zero() {
            return Err(Error::malformed("series is identically zero"));
        }
        for r in self.factor_den.rational_roots() {
            if r.is_integer() && r >= int(self.start) {
                return Err(Error::pole(format!(
                    "factor denominator vanishes at k = {}",
                    fmt_rational(&r)
                )));
            }
        }
        for v in &self.den_params {
            if is_nonpositive_integer(v) {
                return Err(Error::pole(format!(
                    "lower parameter {} meets a Pochhammer pole",
                    fmt_rational(v)
                )));
            }
        }
        Ok(())
    }

    fn base_value(&self, k: i64) -> Result<Rational> {
        let mut t = &self.prefactor * rpow(&self.z, k);
        for u in &self.num_params {
            t *= pochhammer(u, k)?;
        }
        for v in &self.den_params {
            let p = pochhammer(v, k)?;
            if p.is_zero() {
                return Err(Error::pole(format!("({})_{k} vanishes", fmt_rational(v))));
            }
            t /= p;
        }
        Ok(t)
    }

    fn factor_value(&self, k: i64) -> Result<Rational> {
        let kk = int(k);
        let q = self.factor_den.eval(&kk);
        if q.is_zero() {
            return Err(Error::pole(format!("factor denominator vanishes at k = {k}")));
        }
        Ok(self.factor_num.eval(&kk) / q)
    }

    /// Exact `T(k)`.
    pub fn term_value(&self, k: i64) -> Result<Rational> {
        Ok(self.base_value(k)? * self.factor_value(k)?)
    }

    /// Exact `T(from), ..., T(from + count - 1)`, sharing the Pochhammer
    /// products between consecutive terms.
    pub fn term_values(&self, from: i64, count: usize) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return Ok(out);
        }
        let mut base = self.base_value(from)?;
        for k in from..from + count as i64 {
            if k > from {
                base *= &self.z;
                let kk = int(k - 1);
                for u in &self.num_params {
                    base *= u + &kk;
                }
                for v in &self.den_params {
                    let d = v + &kk;
                    if d.is_zero() {
                        return Err(Error::pole(format!("({})_{k} vanishes", fmt_rational(v))));
                    }
                    base /= d;
                }
            }
            out.push(&base * self.factor_value(k)?);
        }
        Ok(out)
    }

    /// `T(k+1)/T(k)` as a rational function of `k`.
    pub fn term_ratio(&self) -> RatFun {
        let (num, den) = self.ratio_polys();
        RatFun::new(num.to_multi(Var::K), den.to_multi(Var::K)).expect("lower parameters give a nonzero denominator")
    }

    /// Unreduced numerator and denominator of the term ratio in `k`.
    pub fn ratio_polys(&self) -> (UniPoly, UniPoly) {
        let one = Rational::one();
        let mut num = UniPoly::constant(self.z.clone());
        let mut den = UniPoly::one();
        for u in &self.num_params {
            num = &num * &UniPoly::linear(u.clone());
        }
        for v in &self.den_params {
            den = &den * &UniPoly::linear(v.clone());
        }
        let p1 = self.factor_num.taylor_shift(&one);
        let q1 = self.factor_den.taylor_shift(&one);
        num = &(&num * &p1) * &self.factor_den;
        den = &(&den * &self.factor_num) * &q1;
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides");
            den = den.div_exact(&g).expect("gcd divides");
        }
        (num, den)
    }

    /// The signed limit ratio `z`; only balanced series are supported.
    pub fn asymptotic_rate(&self) -> Result<Rational> {
        if self.num_params.len() != self.den_params.len() {
            return Err(Error::Unsupported(format!(
                "unbalanced parameter lists ({} over {})",
                self.num_params.len(),
                self.den_params.len()
            )));
        }
        Ok(self.z.clone())
    }

    /// `P` as a polynomial in `k` over the fixed symbol set.
    pub fn factor_num_poly(&self) -> MultiPoly {
        self.factor_num.to_multi(Var::K)
    }
}

/// `F(n,k) = [a,a,a,a / (1+n-a)^4]_{k+b} (n + 2k + 2b)` at fixed `(a, b, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawF {
    pub a: Rational,
    pub b: i64,
    pub n: Rational,
}

impl RawF {
    pub fn new(a: Rational, b: i64, n: Rational) -> Self {
        RawF { a, b, n }
    }

    pub fn lower(&self) -> Rational {
        &self.n - &self.a + Rational::one()
    }

    /// Direct product definition, index `k + b` taken literally.
    pub fn value(&self, k: i64) -> Result<Rational> {
        let m = k + self.b;
        let up = pochhammer(&self.a, m)?;
        let lo = pochhammer(&self.lower(), m)?;
        if lo.is_zero() {
            return Err(Error::pole(format!("({})_{m} vanishes", fmt_rational(&self.lower()))));
        }
        let r = up / lo;
        Ok(&r * &r * &r * &r * (&self.n + int(2 * m)))
    }

    /// Rewrites `F` as a series in `k` with fixed parameters through
    /// `(x)_{k+b} = (x)_b (x+b)_k`.
    pub fn shift_normalize(&self) -> Result<SeriesSpec> {
        let up = pochhammer(&self.a, self.b)?;
        let lo = pochhammer(&self.lower(), self.b)?;
        if up.is_zero() || lo.is_zero() {
            return Err(Error::pole(format!(
                "shift constants degenerate at (a, b, n) = ({}, {}, {})",
                fmt_rational(&self.a),
                self.b,
                fmt_rational(&self.n)
            )));
        }
        let r = up / lo;
        let pre = &r * &r * &r * &r;
        let bb = int(self.b);
        let spec = SeriesSpec {
            prefactor: pre,
            z: Rational::one(),
            num_params: vec![&self.a + &bb; 4],
            den_params: vec![self.lower() + &bb; 4],
            factor_num: UniPoly::affine(int(2), &self.n + int(2 * self.b)),
            factor_den: UniPoly::one(),
            start: 0,
            target: None,
        };
        Ok(spec)
    }

    /// Exponent `s` of the polynomial decay `F(n,k) ~ C k^{-s}`.
    pub fn decay_exponent(&self) -> Rational {
        -(int(8) * &self.a - int(4) * &self.n - int(3))
    }

    pub fn summable(&self) -> bool {
        self.decay_exponent() > Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    fn guillera_m14() -> SeriesSpec {
        SeriesSpec::new(rat(-1, 4), vec![rat(1, 2); 5], vec![int(1); 5], poly(&[1, 8, 20]))
    }

    fn glaisher() -> SeriesSpec {
        SeriesSpec::new(int(1), vec![rat(-1, 2); 4], vec![int(1); 4], poly(&[1, -4]))
    }

    #[test]
    fn term_value_examples() {
        assert_eq!(guillera_m14().term_value(0).unwrap(), int(1));
        assert_eq!(guillera_m14().term_value(1).unwrap(), rat(-29, 128));
        assert_eq!(glaisher().term_value(1).unwrap(), rat(-3, 16));
        let s = guillera_m14();
        let v = s.term_values(0, 12).unwrap();
        for (k, x) in v.iter().enumerate() {
            assert_eq!(x, &s.term_value(k as i64).unwrap());
        }
    }

    #[test]
    fn term_ratio_examples() {
        let r = guillera_m14().term_ratio();
        let num = &(&MultiPoly::linear(Var::K, int(1), rat(1, 2)).pow(5) * &MultiPoly::univariate(Var::K, &[int(29), int(48), int(20)]))
            .scale(&rat(-1, 4));
        let den = &MultiPoly::linear(Var::K, int(1), int(1)).pow(5) * &MultiPoly::univariate(Var::K, &[int(1), int(8), int(20)]);
        assert_eq!(r, RatFun::new(num.clone(), den).unwrap());

        let geo = SeriesSpec::new(rat(1, 3), vec![], vec![], UniPoly::one());
        assert_eq!(geo.term_ratio(), RatFun::constant(rat(1, 3)));

        let g = glaisher().term_ratio();
        let num = &MultiPoly::linear(Var::K, int(1), rat(-1, 2)).pow(4) * &MultiPoly::linear(Var::K, int(-4), int(-3));
        let den = &MultiPoly::linear(Var::K, int(1), int(1)).pow(4) * &MultiPoly::linear(Var::K, int(-4), int(1));
        assert_eq!(g, RatFun::new(num, den).unwrap());
    }

    #[test]
    fn rates() {
        assert_eq!(glaisher().asymptotic_rate().unwrap(), int(1));
        let mut s = guillera_m14();
        s.den_params.pop();
        assert!(matches!(s.asymptotic_rate(), Err(Error::Unsupported(_))));
        assert!(s.validate().is_err());
    }

    #[test]
    fn shift_normalize_examples() {
        let s = RawF::new(rat(1, 2), 0, rat(3, 2)).shift_normalize().unwrap();
        assert_eq!(s.prefactor, int(1));
        assert_eq!(s.num_params, vec![rat(1, 2); 4]);
        assert_eq!(s.den_params, vec![int(2); 4]);
        assert_eq!(s.factor_num, UniPoly::affine(int(2), rat(3, 2)));

        let s = RawF::new(rat(1, 2), 1, rat(3, 2)).shift_normalize().unwrap();
        assert_eq!(s.prefactor, rat(1, 256));
        assert_eq!(s.num_params, vec![rat(3, 2); 4]);
        assert_eq!(s.den_params, vec![int(3); 4]);
        assert_eq!(s.factor_num, UniPoly::affine(int(2), rat(7, 2)));
    }

    #[test]
    fn validate_rejects_poles() {
        let mut s = guillera_m14();
        s.den_params[0] = int(-2);
        assert!(matches!(s.validate(), Err(Error::Pole(_))));
        let s = guillera_m14().with_factor_den(poly(&[-3, 1]));
        assert!(matches!(s.validate(), Err(Error::Pole(_))));
        let s = guillera_m14().with_factor_den(poly(&[3, 1]));
        assert!(s.validate().is_ok());
    }
}
