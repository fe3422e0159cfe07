//! Integer lattice utilities: exact LLL reduction, Gram-Schmidt norms and
//! Hermite normal form.
//!
//! Dimensions here are tiny (at most a handful of vectors), so everything is
//! done over the rationals without any attempt at the fast integral variants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Gram-Schmidt data: orthogonal vectors' squared norms and the `mu` table.
fn gram_schmidt(rows: &[Vec<BigInt>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = rows.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi = to_q(&rows[i]);
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j] == BigRational::zero() {
                continue;
            }
            let m = &dot_q(&bi, &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot_q(&v, &v));
        star.push(v);
    }
    (norms, mu)
}

/// Squared norms of the Gram-Schmidt vectors, in row order.
pub fn gram_schmidt_norms(rows: &[Vec<BigInt>]) -> Vec<BigRational> {
    gram_schmidt(rows).0
}

fn round_q(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    // floor(q + 1/2)
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * &two))
}

/// LLL reduction with `delta = 3/4` of linearly independent rows.
pub fn lll(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b: Vec<Vec<BigInt>> = rows.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (mut norms, mut mu) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let q = round_q(&mu[k][j]);
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qq = BigRational::from_integer(q);
                for l in 0..=j {
                    let t = if l == j {
                        BigRational::one()
                    } else {
                        mu[j][l].clone()
                    };
                    mu[k][l] = &mu[k][l] - &(&qq * &t);
                }
            }
        }
        let lhs = &norms[k];
        let rhs = &(&delta - &(&mu[k][k - 1] * &mu[k][k - 1])) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            norms = gs.0;
            mu = gs.1;
            k = (k - 1).max(1);
        }
    }
    b
}

/// Row Hermite normal form: upper echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // gcd elimination below row r in column c
        loop {
            let piv = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pr[c]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|v| v.iter().any(|x| !x.is_zero()));
    a
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    hnf(rows).len()
}

/// Whether `v` is an integer combination of the rows of an HNF basis.
pub fn hnf_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[..c].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = w[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Squared Euclidean norm.
pub fn norm_sq(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn lll_finds_short_vector() {
        let b = rows(&[&[1, 0, 0, 31416], &[0, 1, 0, 27183], &[0, 0, 1, 0], &[0, 0, 0, 100000]]);
        let r = lll(&b);
        let best = r.iter().map(|v| norm_sq(v)).min().unwrap();
        assert!(best <= BigInt::from(10));
        assert_eq!(rank(&r), 4);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&rows(&[&[2, 4], &[3, 5]]));
        assert_eq!(a, rows(&[&[1, 1], &[0, 2]]));
        let b = hnf(&rows(&[&[1, 3], &[0, 2], &[5, 17]]));
        assert_eq!(b, a);
        assert!(hnf_contains(&a, &[BigInt::from(3), BigInt::from(5)]));
        assert!(!hnf_contains(&a, &[BigInt::from(0), BigInt::from(1)]));
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let a = hnf(&rows(&[&[1, 1, 0], &[2, 2, 0]]));
        assert_eq!(a, rows(&[&[1, 1, 0]]));
    }
}
