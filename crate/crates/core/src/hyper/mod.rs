//! Rational hypergeometric series
//! `T(k) = prefactor * z^k * prod (u_i)_k / prod (v_j)_k * P(k)/Q(k)`.

mod series;
mod tail;
mod target;

pub use series::{RawF, SeriesSpec};
pub use tail::{decay_tail, ratio_sup, tail_bound, DecayTail};
pub use target::{TargetBase, TargetConstant};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Rational};

/// Rising factorial with the reciprocal extension to negative indices:
/// `(x)_{-m} = 1 / ((x-1)(x-2)...(x-m))`.
pub fn pochhammer(base: &Rational, m: i64) -> Result<Rational> {
    let mut acc = Rational::one();
    if m >= 0 {
        let mut x = base.clone();
        for _ in 0..m {
            acc *= &x;
            x += Rational::one();
        }
        return Ok(acc);
    }
    let mut x = base - Rational::one();
    for _ in 0..(-m) {
        if x.is_zero() {
            return Err(Error::pole(format!(
                "({})_{m} hits a zero factor",
                fmt_rational(base)
            )));
        }
        acc *= &x;
        x -= Rational::one();
    }
    Ok(acc.recip())
}
