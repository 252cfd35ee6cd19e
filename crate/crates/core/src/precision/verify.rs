use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{sum_series_with, target_value, HPFloat, Truncation};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::exact::{int, Rational, UniPoly};
use crate::hyper::SeriesSpec;

/// Largest `d` with `|x - y| + err(x) + err(y) <= 10^-d max(1, |y|)`, capped
/// by the working precision. Never negative.
pub fn digits_agreement(x: &HPFloat, y: &HPFloat) -> i64 {
    let bound = (x.value() - y.value()).abs() + x.abs_error() + y.abs_error();
    let scale = {
        let a = y.value().abs();
        if a > Rational::one() {
            a
        } else {
            Rational::one()
        }
    };
    let bits = x.precision_bits().min(y.precision_bits());
    let cap = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    if bound.is_zero() {
        return cap;
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let mut d = 0;
    let mut lim = scale / &ten;
    while d < cap && lim >= bound {
        d += 1;
        lim /= &ten;
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Rate-1 entries are checked through their exact partial-sum identity.
    SkippedRate1,
    NoTarget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::SkippedRate1 => "skipped-rate-1",
            Status::NoTarget => "no-target",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub entry_id: String,
    pub rate: Rational,
    pub terms_used: usize,
    pub precision_bits: u32,
    pub computed: Option<HPFloat>,
    pub target: Option<HPFloat>,
    pub abs_diff: Rational,
    pub digits_agreement: i64,
    pub requested_digits: i64,
    pub status: Status,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl EvalReport {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Pass when at least `digits` digits agree and the midpoints are within the
/// combined error bounds.
pub fn compare(x: &HPFloat, y: &HPFloat, digits: i64) -> (Rational, i64, bool) {
    let diff = (x.value() - y.value()).abs();
    let d = digits_agreement(x, y);
    let consistent = diff <= x.abs_error() + y.abs_error();
    (diff, d, d >= digits && consistent)
}

/// Initial term count `ceil(D / -log10|rate|) + 10`.
fn planned_terms(rate: &Rational, digits: i64) -> usize {
    let r = super::hpfloat::to_f64(&rate.abs());
    (digits as f64 / -r.log10()).ceil() as usize + 10
}

/// Sums the entry's series with enough terms and precision for `min_digits`
/// and compares with an independently computed target. The term count
/// starts from the rate estimate and grows by half until the digits are
/// reached or `max_terms` is exhausted.
pub fn verify_entry(entry: &CatalogEntry, min_digits: i64, max_terms: usize) -> Result<EvalReport> {
    let start = Instant::now();
    let rate = entry.expected_rate.clone();
    let bits = 4 * min_digits.max(1) as u32 + 64;
    let mut report = EvalReport {
        entry_id: entry.id.clone(),
        rate: rate.clone(),
        terms_used: 0,
        precision_bits: bits,
        computed: None,
        target: None,
        abs_diff: Rational::zero(),
        digits_agreement: 0,
        requested_digits: min_digits,
        status: Status::SkippedRate1,
        note: entry.note.clone(),
        elapsed: Duration::ZERO,
    };
    if rate.abs() >= Rational::one() {
        report.note = Some("rate 1: see the exact partial-sum check".into());
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let Some(tc) = &entry.target else {
        report.status = Status::NoTarget;
        report.elapsed = start.elapsed();
        return Ok(report);
    };
    let target = target_value(tc, bits)?;
    let mut terms = planned_terms(&rate, min_digits).min(max_terms);
    loop {
        let s = sum_series_with(&entry.series, terms, bits, Truncation::Geometric);
        let s = match s {
            Ok(s) => s,
            Err(Error::CannotBound(_)) if terms < max_terms => {
                terms = (terms + terms / 2 + 10).min(max_terms);
                continue;
            }
            Err(e) => return Err(e),
        };
        let (diff, d, ok) = compare(&s, &target, min_digits);
        report.terms_used = terms;
        report.computed = Some(s);
        report.abs_diff = diff;
        report.digits_agreement = d;
        report.status = if ok { Status::Pass } else { Status::Fail };
        if ok || terms >= max_terms || !report_consistent(&report) {
            break;
        }
        terms = (terms + terms / 2 + 10).min(max_terms);
    }
    report.target = Some(target);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Whether more terms can still help: the sum and the target must overlap.
fn report_consistent(r: &EvalReport) -> bool {
    let s = r.computed.as_ref().expect("set before use");
    r.abs_diff <= s.abs_error() * int(2) + Rational::new(BigInt::one(), BigInt::one() << r.precision_bits)
}

#[derive(Debug, Clone)]
pub struct Identity8Report {
    pub a: Rational,
    pub lhs: HPFloat,
    pub rhs: HPFloat,
    pub lhs_terms: usize,
    pub lhs_order: usize,
    pub rhs_terms: usize,
    pub digits_agreement: i64,
    pub pass: bool,
}

/// `8a sum_k (1/2)_k^4 / (a+1)_k^4 (4k + 2a + 1)`, polynomial decay
/// `k^-(4a+1)`.
pub fn identity8_lhs_spec(a: &Rational) -> SeriesSpec {
    let h = Rational::new(1.into(), 2.into());
    let a1 = a + Rational::one();
    SeriesSpec::new(int(1), vec![h; 4], vec![a1; 4], UniPoly::affine(int(4), a * int(2) + int(1)))
        .with_prefactor(a * int(8))
}

/// `sum_k (-1/4)^k (a+1/2)_k^5 / (a+1)_k^5 (20(k+a)^2 + 8(k+a) + 1)`.
pub fn identity8_rhs_spec(a: &Rational) -> SeriesSpec {
    let h = Rational::new(1.into(), 2.into());
    let poly = UniPoly::affine(int(1), a.clone());
    let q = &(&poly.pow(2).scale(&int(20)) + &poly.scale(&int(8))) + &UniPoly::one();
    SeriesSpec::new(Rational::new((-1).into(), 4.into()), vec![a + &h; 5], vec![a + Rational::one(); 5], q)
}

const MAX_CUTOFF: usize = 4000;

fn wanted_error(digits: i64) -> Rational {
    crate::exact::rpow(&Rational::from_integer(BigInt::from(10)), -digits - 2)
}

/// Geometric sum whose error is below `10^-(digits+2)`, growing the term
/// count by half from the rate estimate. Returns the enclosure and the
/// number of terms.
pub fn sum_geometric_to(spec: &SeriesSpec, digits: i64, bits: u32) -> Result<(HPFloat, usize)> {
    let want = wanted_error(digits);
    let mut terms = planned_terms(&spec.asymptotic_rate()?, digits);
    loop {
        let r = sum_series_with(spec, terms, bits, Truncation::Geometric);
        match r {
            Ok(r) if r.abs_error() <= &want || terms > MAX_CUTOFF => return Ok((r, terms)),
            Ok(_) | Err(Error::CannotBound(_)) if terms <= MAX_CUTOFF => terms += terms / 2 + 10,
            Ok(r) => return Ok((r, terms)),
            Err(e) => return Err(e),
        }
    }
}

/// Polynomially decaying sum with an asymptotic tail of order about
/// `1.2 digits`, from a cut-off of about three times that, doubled until the
/// error is below `10^-(digits+2)`. Returns the enclosure, cut-off and order.
pub fn sum_decay_to(spec: &SeriesSpec, digits: i64, bits: u32) -> Result<(HPFloat, usize, usize)> {
    let want = wanted_error(digits);
    let order = (1.2 * digits as f64).ceil() as usize;
    let mut cutoff = 3 * order.max(4);
    loop {
        match sum_series_with(spec, cutoff, bits, Truncation::Decay { order }) {
            Ok(l) if l.abs_error() <= &want => return Ok((l, cutoff, order)),
            Ok(_) | Err(Error::CannotBound(_)) if cutoff < MAX_CUTOFF => cutoff *= 2,
            Ok(l) => return Ok((l, cutoff, order)),
            Err(Error::CannotBound(m)) => return Err(Error::TooSlow(m)),
            Err(e) => return Err(e),
        }
    }
}

/// Both sides of the one-parameter generalization of the rate `-1/4`
/// Guillera series, compared to `min_digits`.
pub fn check_identity8(a: &Rational, min_digits: i64) -> Result<Identity8Report> {
    if !a.is_positive() {
        return Err(Error::malformed("identity 8 needs a > 0"));
    }
    let bits = 4 * min_digits.max(1) as u32 + 64;
    let (rhs, rterms) = sum_geometric_to(&identity8_rhs_spec(a), min_digits, bits)?;
    let (lhs, cutoff, order) = sum_decay_to(&identity8_lhs_spec(a), min_digits, bits)
        .map_err(|e| match e {
            Error::TooSlow(m) => Error::TooSlow(format!("identity 8 at a = {a}: {m}")),
            e => e,
        })?;
    let (_, d, ok) = compare(&lhs, &rhs, min_digits);
    Ok(Identity8Report {
        a: a.clone(),
        lhs,
        rhs,
        lhs_terms: cutoff,
        lhs_order: order,
        rhs_terms: rterms,
        digits_agreement: d,
        pass: ok,
    })
}
