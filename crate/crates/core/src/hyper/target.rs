use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetBase {
    One,
    InvPi,
    InvPi2,
    Pi2,
    Zeta3,
}

impl TargetBase {
    pub const ALL: [TargetBase; 5] = [
        TargetBase::One,
        TargetBase::InvPi,
        TargetBase::InvPi2,
        TargetBase::Pi2,
        TargetBase::Zeta3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TargetBase::One => "1",
            TargetBase::InvPi => "1/pi",
            TargetBase::InvPi2 => "1/pi^2",
            TargetBase::Pi2 => "pi^2",
            TargetBase::Zeta3 => "zeta3",
        }
    }
}

/// `coefficient * base + addend`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetConstant {
    pub coefficient: Rational,
    pub base: TargetBase,
    pub addend: Rational,
}

impl TargetConstant {
    pub fn new(coefficient: Rational, base: TargetBase) -> Self {
        TargetConstant {
            coefficient,
            base,
            addend: Rational::zero(),
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, TargetBase::One)
    }

    pub fn plus(mut self, addend: Rational) -> Self {
        self.addend = addend;
        self
    }

    /// Exact value when the base is `1`.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.base == TargetBase::One).then(|| &self.coefficient + &self.addend)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        TargetConstant {
            coefficient: &self.coefficient * s,
            base: self.base,
            addend: &self.addend * s,
        }
    }
}

impl fmt::Display for TargetConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", fmt_rational(&self.coefficient), self.base.as_str())?;
        if !self.addend.is_zero() {
            write!(f, " + {}", fmt_rational(&self.addend))?;
        }
        Ok(())
    }
}

impl FromStr for TargetConstant {
    type Err = Error;

    /// `<rational> * <base> [+ <rational>]`; a lone rational is read as
    /// `<rational> * 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::malformed(format!("bad target `{s}`"));
        let (head, addend) = match s.split_once(" + ") {
            Some((h, t)) => (h, parse_rational(t)?),
            None => (s, Rational::zero()),
        };
        let (coef, base) = match head.split_once('*') {
            Some((c, b)) => {
                let b = b.trim();
                let base = TargetBase::ALL
                    .into_iter()
                    .find(|x| x.as_str() == b)
                    .ok_or_else(bad)?;
                (parse_rational(c)?, base)
            }
            None => (parse_rational(head)?, TargetBase::One),
        };
        if coef.is_zero() && base != TargetBase::One {
            return Err(bad());
        }
        Ok(TargetConstant {
            coefficient: coef,
            base,
            addend,
        })
    }
}
