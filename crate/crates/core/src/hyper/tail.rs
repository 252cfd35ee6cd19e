//! Rigorous tail bounds.
//!
//! Every inequality `p(k) >= 0 for k >= M` used here is certified by the
//! coefficients of `p(M + x)` all being nonnegative.

use num_traits::{One, Signed, Zero};

use super::SeriesSpec;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, rat, rpow, Rational, UniPoly};

/// Ratio numerator and denominator with the denominator certified positive
/// on `[m, inf)`.
fn positive_ratio(spec: &SeriesSpec, m: i64) -> Result<(UniPoly, UniPoly)> {
    let (mut p, mut q) = spec.ratio_polys();
    if q.lc().is_negative() {
        p = -&p;
        q = -&q;
    }
    let mm = int(m);
    if !q.nonneg_on_ray(&mm) || !q.eval(&mm).is_positive() {
        return Err(Error::CannotBound(format!(
            "ratio denominator not certified positive beyond k = {m}"
        )));
    }
    Ok((p, q))
}

fn bounded_by(p: &UniPoly, q: &UniPoly, c: &Rational, m: &Rational) -> bool {
    let cq = q.scale(c);
    (&cq - p).nonneg_on_ray(m) && (&cq + p).nonneg_on_ray(m)
}

/// A certified `c < 1` with `|T(k+1)/T(k)| <= c` for all `k >= m`.
pub fn ratio_sup(spec: &SeriesSpec, m: i64) -> Result<Rational> {
    let z = spec.asymptotic_rate()?.abs();
    if z >= Rational::one() {
        return Err(Error::CannotBound(format!(
            "rate {} is not geometric",
            fmt_rational(&spec.z)
        )));
    }
    let (p, q) = positive_ratio(spec, m)?;
    let mm = int(m);
    let at_m = (p.eval(&mm) / q.eval(&mm)).abs();
    let c0 = if at_m > z { at_m } else { z };
    if c0 >= Rational::one() {
        return Err(Error::CannotBound(format!("|ratio({m})| >= 1")));
    }
    let gap = Rational::one() - &c0;
    let steps = [rat(0, 1), rat(1, 1000), rat(1, 100), rat(1, 10), rat(1, 2)];
    for t in steps {
        let c = &c0 + &gap * t;
        if bounded_by(&p, &q, &c, &mm) {
            return Ok(c);
        }
    }
    Err(Error::CannotBound(format!(
        "no geometric witness for the ratio beyond k = {m}"
    )))
}

/// `B >= |sum_{k>=m} T(k)|`, namely `|T(m)| / (1 - c)` with `c` from
/// [`ratio_sup`].
pub fn tail_bound(spec: &SeriesSpec, m: i64) -> Result<Rational> {
    let c = ratio_sup(spec, m)?;
    let t = spec.term_value(m)?.abs();
    Ok(t / (Rational::one() - c))
}

/// Tail of a positive series with polynomial decay:
/// `sum_{k>=m} T(k) = estimate * T(m) + err` with `|err| <= bound * |T(m)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayTail {
    pub m: i64,
    pub order: usize,
    pub estimate: Rational,
    pub bound: Rational,
}

/// Power series of `p(1/x)/q(1/x)` to `len` terms, for `deg p = deg q`.
fn ratio_series(p: &UniPoly, q: &UniPoly, len: usize) -> Vec<Rational> {
    let d = q.degree();
    let pr: Vec<Rational> = (0..len).map(|i| if i <= d { p.coeff(d - i) } else { Rational::zero() }).collect();
    let qr: Vec<Rational> = (0..len).map(|i| if i <= d { q.coeff(d - i) } else { Rational::zero() }).collect();
    let mut out = vec![Rational::zero(); len];
    for i in 0..len {
        let mut acc = pr[i].clone();
        for j in 1..=i {
            acc -= &qr[j] * &out[i - j];
        }
        out[i] = acc / &qr[0];
    }
    out
}

/// Coefficients of `(1+x)^{-i}` up to `x^{len-1}`, any integer `i`.
fn binom_series(i: i64, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut c = Rational::one();
    for t in 0..len as i64 {
        out.push(c.clone());
        c = c * int(-i - t) / int(t + 1);
    }
    out
}

/// Asymptotic telescoping: find `g(k) = sum_{i=-1}^{order} c_i k^{-i}` with
/// `g(k+1) r(k) - g(k) = 1 + e(k)`, `e = O(k^{-order-2})`, where `r` is the
/// term ratio. Summing `g(k+1)T(k+1) - g(k)T(k)` over `k >= m` gives
/// `sum T = -g(m)T(m) - sum T(k)e(k)`. The remainder is bounded by
/// `|T(m)| E (m^{-tau} + m^{1-tau}/(tau-1))` once `|r| <= 1` and
/// `|e(k)| <= E k^{-tau}` are certified on `[m, inf)`.
pub fn decay_tail(spec: &SeriesSpec, m: i64, order: usize) -> Result<DecayTail> {
    if spec.asymptotic_rate()? != Rational::one() {
        return Err(Error::Unsupported("decay tails need rate 1".into()));
    }
    if m < 1 || m < spec.start {
        return Err(Error::CannotBound(format!("cut-off {m} out of range")));
    }
    let (p, q) = positive_ratio(spec, m)?;
    let mm = int(m);
    if p.degree() != q.degree() || p.lc() != q.lc() {
        return Err(Error::Unsupported("ratio does not tend to 1".into()));
    }
    let len = order + 2;
    let r = ratio_series(&p, &q, len + 1);
    let s = -r[1].clone();
    if s <= Rational::one() {
        return Err(Error::CannotBound(format!(
            "decay exponent {} does not exceed 1",
            fmt_rational(&s)
        )));
    }

    // cols[i+1][t] = coefficient of x^t in x^i((1+x)^{-i} r(x) - 1).
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(order + 2);
    for i in -1..=order as i64 {
        let b = binom_series(i, len + 1);
        let mut prod = vec![Rational::zero(); len + 1];
        for (u, bu) in b.iter().enumerate() {
            for (v, rv) in r.iter().enumerate().take(len + 1 - u) {
                prod[u + v] += bu * rv;
            }
        }
        prod[0] -= Rational::one();
        // shift by x^i: coefficient at power t is prod[t - i]
        let col: Vec<Rational> = (0..len as i64)
            .map(|t| {
                let idx = t - i;
                if idx >= 0 && (idx as usize) < prod.len() {
                    prod[idx as usize].clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        cols.push(col);
    }
    let mut c = vec![Rational::zero(); order + 2];
    for t in 0..len {
        let want = if t == 0 { Rational::one() } else { Rational::zero() };
        let mut rest = Rational::zero();
        for (ci, col) in c.iter().zip(&cols).take(t) {
            rest += ci * &col[t];
        }
        let pivot = &cols[t][t];
        if pivot.is_zero() {
            return Err(Error::CannotBound("singular telescoping system".into()));
        }
        c[t] = (want - rest) / pivot;
    }

    // G(k) = k^order g(k)
    let big_n = order;
    let mut gc = vec![Rational::zero(); big_n + 2];
    gc[big_n + 1] = c[0].clone();
    for i in 0..=big_n {
        gc[big_n - i] = c[i + 1].clone();
    }
    let g = UniPoly::new(gc);
    let kn = UniPoly::new({
        let mut v = vec![Rational::zero(); big_n + 1];
        v[big_n] = Rational::one();
        v
    });
    let k1n = kn.taylor_shift(&Rational::one());
    let g1 = g.taylor_shift(&Rational::one());
    let en = &(&(&(&g1 * &p) * &kn) - &(&(&g * &q) * &k1n)) - &(&(&q * &kn) * &k1n);
    let ed = &(&q * &kn) * &k1n;
    let tau = ed.degree() as i64 - en.degree() as i64;
    if en.is_zero() {
        let gm = g.eval(&mm) / rpow(&mm, big_n as i64);
        return Ok(DecayTail { m, order, estimate: -gm, bound: Rational::zero() });
    }
    if tau < 2 {
        return Err(Error::CannotBound(format!("remainder decays only like k^-{tau}")));
    }
    if !(&q - &p).nonneg_on_ray(&mm) || !(&q + &p).nonneg_on_ray(&mm) {
        return Err(Error::CannotBound(format!("|ratio| <= 1 not certified beyond k = {m}")));
    }
    let ktau = UniPoly::new({
        let mut v = vec![Rational::zero(); tau as usize + 1];
        v[tau as usize] = Rational::one();
        v
    });
    let lhs = &ktau * &en;
    let mut e = (en.lc() / ed.lc()).abs() * int(2);
    let mut found = None;
    for _ in 0..200 {
        let ee = ed.scale(&e);
        if (&ee - &lhs).nonneg_on_ray(&mm) && (&ee + &lhs).nonneg_on_ray(&mm) {
            found = Some(e.clone());
            break;
        }
        e *= int(2);
    }
    let e = found.ok_or_else(|| Error::CannotBound(format!("remainder constant not certified at k = {m}")))?;
    let sum_pow = rpow(&mm, -tau) + rpow(&mm, 1 - tau) / int(tau - 1);
    let gm = g.eval(&mm) / rpow(&mm, big_n as i64);
    Ok(DecayTail {
        m,
        order,
        estimate: -gm,
        bound: e * sum_pow,
    })
}
