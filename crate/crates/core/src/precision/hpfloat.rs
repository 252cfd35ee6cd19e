use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Bits kept in error bounds after upward rounding.
const ERROR_BITS: i64 = 30;

fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `floor(log2 |q|)` up to one unit.
fn log2_floor(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Nearest dyadic with `bits` significant bits.
fn round_rel(q: &Rational, bits: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let s = bits as i64 - log2_floor(q);
    let scaled = q * pow2(s);
    Rational::from_integer(scaled.round().to_integer()) * pow2(-s)
}

/// Dyadic upper bound of a nonnegative error with few bits.
fn round_up(e: &Rational) -> Rational {
    if e.is_zero() {
        return Rational::zero();
    }
    let s = ERROR_BITS - log2_floor(e);
    let scaled = e * pow2(s);
    Rational::from_integer(scaled.ceil().to_integer()) * pow2(-s)
}

/// A dyadic midpoint with a rigorous absolute error bound: the quantity it
/// stands for lies in `[value - abs_error, value + abs_error]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPFloat {
    value: Rational,
    abs_error: Rational,
    precision_bits: u32,
}

impl HPFloat {
    pub fn zero(bits: u32) -> Self {
        HPFloat { value: Rational::zero(), abs_error: Rational::zero(), precision_bits: bits }
    }

    /// Rounds `q` to `bits` significant bits, recording the rounding error.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let value = round_rel(q, bits);
        let abs_error = round_up(&(&value - q).abs());
        HPFloat { value, abs_error, precision_bits: bits }
    }

    fn rounded(exact: Rational, err: Rational, bits: u32) -> Self {
        let value = round_rel(&exact, bits);
        let abs_error = round_up(&(err + (&value - &exact).abs()));
        HPFloat { value, abs_error, precision_bits: bits }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn abs_error(&self) -> &Rational {
        &self.abs_error
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn bits_with(&self, o: &HPFloat) -> u32 {
        self.precision_bits.min(o.precision_bits)
    }

    /// Widens the enclosure by `e >= 0`.
    pub fn with_extra_error(mut self, e: &Rational) -> Self {
        self.abs_error = round_up(&(&self.abs_error + e.abs()));
        self
    }

    pub fn contains(&self, q: &Rational) -> bool {
        (&self.value - q).abs() <= self.abs_error
    }

    pub fn add(&self, o: &HPFloat) -> Self {
        Self::rounded(&self.value + &o.value, &self.abs_error + &o.abs_error, self.bits_with(o))
    }

    pub fn sub(&self, o: &HPFloat) -> Self {
        Self::rounded(&self.value - &o.value, &self.abs_error + &o.abs_error, self.bits_with(o))
    }

    pub fn neg(&self) -> Self {
        HPFloat { value: -&self.value, ..self.clone() }
    }

    pub fn mul(&self, o: &HPFloat) -> Self {
        let err = self.value.abs() * &o.abs_error + o.value.abs() * &self.abs_error + &self.abs_error * &o.abs_error;
        Self::rounded(&self.value * &o.value, err, self.bits_with(o))
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> Self {
        Self::rounded(&self.value * q, &self.abs_error * q.abs(), self.precision_bits)
    }

    /// Fails when the divisor's enclosure contains zero.
    pub fn div(&self, o: &HPFloat) -> Result<Self> {
        let ay = o.value.abs();
        if ay <= o.abs_error {
            return Err(Error::pole("division by an interval containing 0".to_string()));
        }
        // |x/y - X/Y| <= (|x| eY + |y| eX) / (|y| (|y| - eY))
        let err = (self.value.abs() * &o.abs_error + &ay * &self.abs_error) / (&ay * (&ay - &o.abs_error));
        Ok(Self::rounded(&self.value / &o.value, err, self.bits_with(o)))
    }

    /// Decimal rendering with `places` digits after the point, truncated.
    pub fn to_decimal(&self, places: usize) -> String {
        fmt_decimal(&self.value, places)
    }

    /// `f64` approximation of the midpoint, for display only.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value)
    }
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    let s = 60 - log2_floor(q);
    let m = (q * pow2(s)).round().to_integer();
    let m: f64 = m.to_string().parse().unwrap_or(f64::NAN);
    m * 2f64.powi(-(s.clamp(i32::MIN as i64, i32::MAX as i64) as i32))
}

pub fn fmt_decimal(q: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = (q.abs() * Rational::from_integer(scale)).floor().to_integer();
    let digits = scaled.to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (ip, fp) = digits.split_at(digits.len() - places);
    let sign = if q.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

impl fmt::Display for HPFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = (self.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{} +/- {:.3e}", self.to_decimal(places.min(60)), to_f64(&self.abs_error))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn rounding_encloses() {
        let x = rat(1, 3);
        let h = HPFloat::from_rational(&x, 64);
        assert!(h.contains(&x));
        assert!(h.abs_error() < &pow2(-64));
        assert!(h.abs_error() > &Rational::zero());
    }

    #[test]
    fn ops_enclose() {
        let (a, b) = (rat(22, 7), rat(-355, 113));
        let (ha, hb) = (HPFloat::from_rational(&a, 80), HPFloat::from_rational(&b, 80));
        assert!(ha.add(&hb).contains(&(&a + &b)));
        assert!(ha.sub(&hb).contains(&(&a - &b)));
        assert!(ha.mul(&hb).contains(&(&a * &b)));
        assert!(ha.div(&hb).unwrap().contains(&(&a / &b)));
        assert!(ha.scale(&rat(5, 9)).contains(&(&a * rat(5, 9))));
        assert!(ha.div(&HPFloat::zero(80)).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(fmt_decimal(&rat(1, 8), 3), "0.125");
        assert_eq!(fmt_decimal(&rat(-22, 7), 4), "-3.1428");
        assert_eq!(fmt_decimal(&int(12), 0), "12");
        assert_eq!(fmt_decimal(&rat(1, 1000), 2), "0.00");
    }
}
