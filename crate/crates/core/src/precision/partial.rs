//! Exact partial-sum identities behind two of the classical series.


use crate::exact::{int, rat, Rational, UniPoly};
use crate::hyper::{pochhammer, SeriesSpec};

fn first_failure(n_max: i64, lhs: &SeriesSpec, rhs: impl Fn(i64) -> Rational) -> Option<i64> {
    if n_max < 0 {
        return None;
    }
    let terms = lhs.term_values(0, n_max as usize + 1).expect("no poles");
    let mut acc = Rational::from_integer(0.into());
    for (n, t) in terms.into_iter().enumerate() {
        acc += t;
        if acc != rhs(n as i64) {
            return Some(n as i64);
        }
    }
    None
}

/// First `n <= n_max` where
/// `sum_{k<=n} (-1/2)_k^4/(1)_k^4 (1-4k) = (n+1)^4 (8n^2+4n+1) (1/2)_n^4 / ((n+1)!)^4`
/// fails, using `Gamma(n+1/2) = (1/2)_n Gamma(1/2)` to clear the Gamma
/// quotient.
pub fn glaisher_partial_failure(n_max: i64) -> Option<i64> {
    let lhs = SeriesSpec::new(int(1), vec![rat(-1, 2); 4], vec![int(1); 4], UniPoly::new(vec![int(1), int(-4)]));
    first_failure(n_max, &lhs, |n| {
        let h = pochhammer(&rat(1, 2), n).expect("no pole");
        let f = pochhammer(&int(1), n + 1).expect("no pole");
        let n1 = int(n + 1);
        let q = (&h / &f).pow(4);
        n1.pow(4) * int(8 * n * n + 4 * n + 1) * q
    })
}

pub fn check_glaisher_partial(n_max: i64) -> bool {
    glaisher_partial_failure(n_max).is_none()
}

/// First `n <= n_max` where
/// `sum_{k<=n} (1/2)_k^4/(2)_k^4 (4k+3) = 16 - (3/2)_n^4/(2)_n^4 (8n^2+20n+13)`
/// fails.
pub fn guillera_partial_failure(n_max: i64) -> Option<i64> {
    let lhs = SeriesSpec::new(int(1), vec![rat(1, 2); 4], vec![int(2); 4], UniPoly::new(vec![int(3), int(4)]));
    first_failure(n_max, &lhs, |n| {
        let q = (pochhammer(&rat(3, 2), n).expect("no pole") / pochhammer(&int(2), n).expect("no pole")).pow(4);
        int(16) - q * int(8 * n * n + 20 * n + 13)
    })
}

pub fn check_guillera_partial(n_max: i64) -> bool {
    guillera_partial_failure(n_max).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(check_glaisher_partial(1));
        assert!(check_guillera_partial(1));
    }
}
