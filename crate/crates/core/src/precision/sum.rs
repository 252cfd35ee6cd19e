use num_traits::Signed;

use super::HPFloat;
use crate::error::Result;
use crate::hyper::{decay_tail, tail_bound, SeriesSpec};

/// How the discarded tail is accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Geometric domination, see [`tail_bound`].
    Geometric,
    /// Polynomial decay with an asymptotic tail estimate of this order,
    /// see [`decay_tail`].
    Decay { order: usize },
}

fn head(spec: &SeriesSpec, terms: usize, bits: u32) -> Result<HPFloat> {
    let mut acc = HPFloat::zero(bits);
    for t in spec.term_values(spec.start, terms)? {
        acc = acc.add(&HPFloat::from_rational(&t, bits));
    }
    Ok(acc)
}

/// `sum_{k >= start} T(k)` from the first `terms` terms plus a rigorous tail
/// bound, folded into the error.
pub fn sum_series(spec: &SeriesSpec, terms: usize, bits: u32) -> Result<HPFloat> {
    sum_series_with(spec, terms, bits, Truncation::Geometric)
}

pub fn sum_series_with(spec: &SeriesSpec, terms: usize, bits: u32, mode: Truncation) -> Result<HPFloat> {
    let m = spec.start + terms as i64;
    match mode {
        Truncation::Geometric => {
            let b = tail_bound(spec, m)?;
            Ok(head(spec, terms, bits)?.with_extra_error(&b))
        }
        Truncation::Decay { order } => {
            let d = decay_tail(spec, m, order)?;
            let tm = spec.term_value(m)?;
            let est = HPFloat::from_rational(&(&d.estimate * &tm), bits);
            Ok(head(spec, terms, bits)?.add(&est).with_extra_error(&(d.bound * tm.abs())))
        }
    }
}
