//! Cyclotomic polynomials and Euler's totient.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;

type IntPoly = Poly<BigInt>;

static CACHE: Mutex<Option<HashMap<u64, IntPoly>>> = Mutex::new(None);

pub fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    if let Some(c) = CACHE.lock().unwrap().as_ref().and_then(|m| m.get(&n)) {
        return c.clone();
    }
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = -BigInt::one();
    c[n as usize] = BigInt::one();
    let mut f = Poly::new(c);
    for d in divisors(n) {
        if d < n {
            f = f.exact_div(&cyclotomic(d)).expect("cyclotomic division");
        }
    }
    CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(n, f.clone());
    f
}

/// All `n` with `totient(n) == d`.
pub fn orders_with_totient(d: u64) -> Vec<u64> {
    orders_with_totient_at_most(d)
        .into_iter()
        .filter(|&n| totient(n) == d)
        .collect()
}

/// All `n` with `totient(n) <= d`, using `totient(n) >= sqrt(n / 2)`.
pub fn orders_with_totient_at_most(d: u64) -> Vec<u64> {
    let limit = 2 * d * d + 2;
    (1..=limit).filter(|&n| totient(n) <= d).collect()
}

/// Order of the roots of `f` if `f` (up to sign) is cyclotomic.
pub fn cyclotomic_order(f: &IntPoly) -> Option<u64> {
    let g = if f.lc() < BigInt::zero() { -f.clone() } else { f.clone() };
    orders_with_totient(g.degree() as u64)
        .into_iter()
        .find(|&n| cyclotomic(n) == g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_i64s(&[1, 0, -1, 0, 1]));
        // first cyclotomic with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn totient_values() {
        let want = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(totient(i as u64 + 1), *w);
        }
    }

    #[test]
    fn totient_preimages() {
        assert_eq!(orders_with_totient(2), vec![3, 4, 6]);
        assert_eq!(orders_with_totient(4), vec![5, 8, 10, 12]);
    }

    #[test]
    fn recognizes_cyclotomic() {
        assert_eq!(cyclotomic_order(&Poly::from_i64s(&[1, 1, 1])), Some(3));
        assert_eq!(cyclotomic_order(&Poly::from_i64s(&[5, -6, 5])), None);
    }
}
