//! Reference constants from classical series that share nothing with the
//! catalog.
//!
//! Both use the alternating series estimate: if `t_0 >= t_1 >= ... -> 0`
//! then `|sum_{k>=K} (-1)^k t_k| <= t_K`. Every partial sum is accumulated
//! in [`HPFloat`], so rounding is tracked as well.

use num_bigint::BigInt;
use num_traits::One;

use super::HPFloat;
use crate::exact::{int, Rational};
use crate::hyper::{TargetBase, TargetConstant};
use crate::error::Result;

const GUARD_BITS: u32 = 32;

fn stop_below(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (bits + 8))
}

/// `arctan(1/x) = sum_k (-1)^k / ((2k+1) x^(2k+1))`, terms decreasing for
/// `x >= 2`.
fn arctan_inv(x: i64, bits: u32) -> HPFloat {
    let w = bits + GUARD_BITS;
    let eps = stop_below(bits);
    let x2 = BigInt::from(x * x);
    let mut pow = BigInt::from(x);
    let mut acc = HPFloat::zero(w);
    let mut k: i64 = 0;
    loop {
        let t = Rational::new(BigInt::one(), &pow * BigInt::from(2 * k + 1));
        if t < eps {
            return acc.with_extra_error(&t);
        }
        let ht = HPFloat::from_rational(&t, w);
        acc = if k % 2 == 0 { acc.add(&ht) } else { acc.sub(&ht) };
        pow *= &x2;
        k += 1;
    }
}

/// Machin: `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn ref_pi(bits: u32) -> HPFloat {
    let a = arctan_inv(5, bits).scale(&int(16));
    let b = arctan_inv(239, bits).scale(&int(4));
    a.sub(&b)
}

/// `zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k, k))`; the terms
/// decrease since their ratio is `k^3 / ((k+1)(2k+1)(2k+2)) < 1`.
pub fn ref_zeta3(bits: u32) -> HPFloat {
    let w = bits + GUARD_BITS;
    let eps = stop_below(bits);
    let mut binom = BigInt::from(2);
    let mut acc = HPFloat::zero(w);
    let mut k: i64 = 1;
    loop {
        let kb = BigInt::from(k);
        let t = Rational::new(BigInt::one(), &kb * &kb * &kb * &binom);
        if t < eps {
            return acc.with_extra_error(&t).scale(&Rational::new(5.into(), 2.into()));
        }
        let ht = HPFloat::from_rational(&t, w);
        acc = if k % 2 == 1 { acc.add(&ht) } else { acc.sub(&ht) };
        binom = binom * BigInt::from((2 * k + 1) * (2 * k + 2)) / BigInt::from((k + 1) * (k + 1));
        k += 1;
    }
}

pub fn base_value(base: TargetBase, bits: u32) -> Result<HPFloat> {
    let w = bits + GUARD_BITS;
    let one = HPFloat::from_rational(&int(1), w);
    Ok(match base {
        TargetBase::One => one,
        TargetBase::InvPi => one.div(&ref_pi(w))?,
        TargetBase::InvPi2 => {
            let p = ref_pi(w);
            one.div(&p.mul(&p))?
        }
        TargetBase::Pi2 => {
            let p = ref_pi(w);
            p.mul(&p)
        }
        TargetBase::Zeta3 => ref_zeta3(w),
    })
}

/// `coefficient * base + addend`.
pub fn target_value(t: &TargetConstant, bits: u32) -> Result<HPFloat> {
    let b = base_value(t.base, bits)?;
    let add = HPFloat::from_rational(&t.addend, bits + GUARD_BITS);
    Ok(b.scale(&t.coefficient).add(&add))
}
