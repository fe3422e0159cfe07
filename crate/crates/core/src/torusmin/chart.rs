//! Coordinates on the torus cut out by a relation lattice.
//!
//! Row and column operations bring the basis `L` (p x m, full row rank) to
//! diagonal form `U L W = diag(d_1..d_p) | 0` with `W` unimodular. With
//! `x = W y` the relations read `d_i y_i = 0 mod 2 pi`, so the torus is the
//! disjoint union over `k_i in [0, d_i)` of the translates
//! `y_i = 2 pi k_i / d_i` (i < p), `y_i` free (i >= p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::relations::RelationLattice;

/// Largest number of components enumerated.
pub const MAX_BRANCHES: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct Chart {
    pub m: usize,
    pub p: usize,
    /// `x = W y`, row-major m x m.
    pub w: Vec<Vec<i64>>,
    /// Positive diagonal entries `d_1..d_p`.
    pub diag: Vec<i64>,
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let t = &r[src] * q;
        r[dst] -= t;
    }
}

impl Chart {
    pub fn new(lat: &RelationLattice) -> Result<Chart> {
        let m = lat.m;
        let mut a = lat.basis_big();
        let p = a.len();
        let mut w: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        for i in 0..p {
            loop {
                let mut piv: Option<(usize, usize)> = None;
                for r in i..p {
                    for c in i..m {
                        if !a[r][c].is_zero()
                            && piv.is_none_or(|(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                        {
                            piv = Some((r, c));
                        }
                    }
                }
                let Some((r, c)) = piv else {
                    return Err(Error::InvalidInput("lattice basis is rank deficient".into()));
                };
                a.swap(i, r);
                swap_cols(&mut a, i, c);
                swap_cols(&mut w, i, c);
                let mut clean = true;
                for r in i + 1..p {
                    let q = a[r][i].div_floor(&a[i][i]);
                    if !q.is_zero() {
                        let pr = a[i].clone();
                        for (x, y) in a[r].iter_mut().zip(&pr) {
                            *x -= &q * y;
                        }
                    }
                    clean &= a[r][i].is_zero();
                }
                for c in i + 1..m {
                    let q = a[i][c].div_floor(&a[i][i]);
                    if !q.is_zero() {
                        col_axpy(&mut a, c, i, &q);
                        col_axpy(&mut w, c, i, &q);
                    }
                    clean &= a[i][c].is_zero();
                }
                if clean {
                    break;
                }
            }
            if a[i][i].is_negative() {
                for x in a[i].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        let small = |x: &BigInt| {
            x.to_i64()
                .ok_or_else(|| Error::Unsupported("torus chart entry exceeds 64 bits".into()))
        };
        let diag = (0..p).map(|i| small(&a[i][i])).collect::<Result<Vec<_>>>()?;
        let w = w
            .iter()
            .map(|r| r.iter().map(small).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Chart { m, p, w, diag })
    }

    /// Number of free angles.
    pub fn dim(&self) -> usize {
        self.m - self.p
    }

    pub fn branch_count(&self) -> u128 {
        self.diag.iter().map(|&d| d as u128).product()
    }

    /// All branch labels `k`, or an error past [`MAX_BRANCHES`].
    pub fn branches(&self) -> Result<Vec<Vec<i64>>> {
        if self.branch_count() > MAX_BRANCHES as u128 {
            return Err(Error::Unsupported(format!(
                "torus has {} components",
                self.branch_count()
            )));
        }
        let mut out = vec![vec![]];
        for &d in &self.diag {
            out = out
                .into_iter()
                .flat_map(|k| {
                    (0..d).map(move |j| {
                        let mut k = k.clone();
                        k.push(j);
                        k
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Offsets `r_j in [0, 1)`: `x_j = 2 pi r_j + sum_i f_{j,i} t_i` on the
    /// branch `k`.
    pub fn offsets(&self, k: &[i64]) -> Vec<BigRational> {
        (0..self.m)
            .map(|j| {
                let mut r = BigRational::zero();
                for i in 0..self.p {
                    r += BigRational::new(
                        BigInt::from(self.w[j][i]) * BigInt::from(k[i]),
                        BigInt::from(self.diag[i]),
                    );
                }
                let f = r.floor();
                r - f
            })
            .collect()
    }

    /// Integer frequencies `f_{j,i}` of the free angles (m x dim).
    pub fn freqs(&self) -> Vec<Vec<i64>> {
        self.w.iter().map(|r| r[self.p..].to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{Exactness, RelationLattice};

    fn lat(m: usize, b: &[Vec<i64>]) -> RelationLattice {
        RelationLattice::from_basis(m, b, Exactness::Complete).unwrap()
    }

    /// Every branch point must satisfy the relations for any free angles.
    fn check(l: &RelationLattice) {
        let c = Chart::new(l).unwrap();
        let f = c.freqs();
        for k in c.branches().unwrap() {
            let r = c.offsets(&k);
            for v in &l.basis {
                // fixed part: sum v_j r_j integral; free part: sum v_j f_j = 0
                let s: BigRational = v.iter().zip(&r).map(|(&a, b)| b * BigInt::from(a)).sum();
                assert!(s.is_integer(), "{v:?} {r:?}");
                for i in 0..c.dim() {
                    let t: i64 = v.iter().zip(&f).map(|(&a, row)| a * row[i]).sum();
                    assert_eq!(t, 0);
                }
            }
        }
    }

    #[test]
    fn components() {
        let l = lat(2, &[vec![1, 1]]);
        let c = Chart::new(&l).unwrap();
        assert_eq!((c.p, c.branch_count()), (1, 1));
        check(&l);
        let l = lat(2, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(Chart::new(&l).unwrap().branch_count(), 4);
        check(&l);
        let l = lat(3, &[vec![2, 4, 6]]);
        let c = Chart::new(&l).unwrap();
        assert_eq!((c.dim(), c.branch_count()), (2, 2));
        check(&l);
        check(&lat(3, &[vec![1, 2, 0], vec![0, 3, 6]]));
        check(&lat(4, &[vec![1, -1, 2, 0], vec![0, 4, 1, 3]]));
    }
}
