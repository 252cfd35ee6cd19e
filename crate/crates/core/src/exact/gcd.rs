//! Multivariate GCD over the rationals by recursive content extraction and
//! primitive pseudo-remainder sequences.

use super::poly::{Monomial, MultiPoly, Var};
use super::{int, UniPoly};

/// Greatest common divisor, normalized to coprime integer coefficients with
/// a positive graded-lex leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_rec(a, b)
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = MultiPoly::zero();
    for c in &coeffs {
        g = gcd_rec(&g, c);
        if g.as_constant().is_some() {
            return MultiPoly::one();
        }
    }
    g
}

fn normalized(p: &MultiPoly) -> MultiPoly {
    p.primitive().1
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalized(b);
    }
    if b.is_zero() {
        return normalized(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MultiPoly::one();
    }
    // A variable missing from one side cannot occur in the gcd.
    for v in Var::ALL {
        match (a.contains(v), b.contains(v)) {
            (true, false) => return gcd_rec(&content_in(a, v), b),
            (false, true) => return gcd_rec(a, &content_in(b, v)),
            _ => {}
        }
    }
    if coprime_by_images(a, b) {
        return MultiPoly::one();
    }
    let (small, large) = if (a.total_degree(), a.len()) <= (b.total_degree(), b.len()) {
        (a, b)
    } else {
        (b, a)
    };
    if large.div_exact(small).is_some() {
        return normalized(small);
    }

    let v = a
        .vars()
        .into_iter()
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial has a variable");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    normalized(&(&c * &g))
}

/// Cheap certificate of coprimality. If `h = gcd(a, b)` has positive degree
/// in `v`, then so does the gcd of the images under any substitution of the
/// other symbols that keeps `lc_v(a)` nonzero, because `lc_v(h)` divides
/// `lc_v(a)`. A constant image gcd in every shared symbol therefore proves
/// `h` constant. `false` only means "undecided".
fn coprime_by_images(a: &MultiPoly, b: &MultiPoly) -> bool {
    let shared: Vec<Var> = Var::ALL.into_iter().filter(|&v| a.contains(v) && b.contains(v)).collect();
    'vars: for &v in &shared {
        for attempt in 0..3i64 {
            let mut ia = a.clone();
            let mut ib = b.clone();
            for (i, w) in Var::ALL.into_iter().enumerate() {
                if w != v {
                    let x = int(3 + 7 * attempt + 11 * i as i64);
                    ia = ia.partial_eval(w, &x);
                    ib = ib.partial_eval(w, &x);
                }
            }
            if ia.degree_in(v) != a.degree_in(v) {
                continue;
            }
            let (Some(ua), Some(ub)) = (UniPoly::from_multi(&ia, v), UniPoly::from_multi(&ib, v)) else {
                return false;
            };
            if ua.gcd(&ub).degree() == 0 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

fn primitive_part_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let c = content_in(p, v);
    normalized(&p.div_exact(&c).expect("content divides"))
}

fn primitive_prs(f: MultiPoly, g: MultiPoly, v: Var) -> MultiPoly {
    let (mut f, mut g) = if f.degree_in(v) >= g.degree_in(v) { (f, g) } else { (g, f) };
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return primitive_part_in(&g, v);
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

/// A multiple of the pseudo-remainder of `f` by `g` in `v`; the omitted
/// power of `lc_v(g)` is free of `v` and vanishes under primitive parts.
fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    let dg = g.degree_in(v);
    let lcg = g.lc_in(v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.lc_in(v);
        let mut m = Monomial::ONE;
        m.0[v.index()] = dr - dg;
        let t = &lcr * &MultiPoly::term(m, num_traits::One::one());
        r = &(&lcg * &r) - &(&t * g);
    }
    r
}
