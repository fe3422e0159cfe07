//! Integer linear recurrence sequences: terms, matrix form and the
//! partition into non-degenerate subsequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::number::{isolate_roots, AlgebraicNumber};
use crate::algebraic::poly::Poly;
use crate::algebraic::resultant::image_poly;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::IntPoly;

/// `u_{n+k} = b_1 u_{n+k-1} + ... + b_k u_n` with initial terms
/// `u_0, ..., u_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LrsRepr", into = "LrsRepr")]
pub struct Lrs {
    recurrence: Vec<BigInt>,
    initial: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct LrsRepr {
    recurrence: Vec<String>,
    initial: Vec<String>,
}

impl From<Lrs> for LrsRepr {
    fn from(s: Lrs) -> Self {
        LrsRepr {
            recurrence: s.recurrence.iter().map(|c| c.to_string()).collect(),
            initial: s.initial.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<LrsRepr> for Lrs {
    type Error = Error;

    fn try_from(r: LrsRepr) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Vec<BigInt>> {
            v.iter()
                .map(|c| c.trim().parse().map_err(|_| Error::InvalidInput(format!("not an integer: {c}"))))
                .collect()
        };
        Lrs::new(parse(&r.recurrence)?, parse(&r.initial)?)
    }
}

/// `u_n = v^T M^n w`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionSystem {
    pub m: Matrix<BigInt>,
    pub v: Vec<BigInt>,
    pub w: Vec<BigInt>,
}

/// An Lrs read off a matrix system, valid from `offset` on:
/// `lrs.term(n) = v^T M^(n + offset) w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLrs {
    pub lrs: Lrs,
    pub offset: usize,
}

/// Subsequences `u_{l n + r}` for `r = 0..l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub modulus: u64,
    pub parts: Vec<Lrs>,
}

impl Partition {
    /// Term `u_n` of the interleaved sequence.
    pub fn term(&self, n: u64) -> BigInt {
        let l = self.modulus;
        self.parts[(n % l) as usize].term_at(n / l)
    }
}

impl Lrs {
    pub fn new(recurrence: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self> {
        if recurrence.is_empty() {
            return Err(Error::InvalidInput("empty recurrence".into()));
        }
        if recurrence.len() != initial.len() {
            return Err(Error::InvalidInput(format!(
                "recurrence has {} coefficients but {} initial terms given",
                recurrence.len(),
                initial.len()
            )));
        }
        if recurrence.last().unwrap().is_zero() {
            return Err(Error::InvalidInput("zero trailing coefficient".into()));
        }
        Ok(Lrs { recurrence, initial })
    }

    pub fn from_i64s(recurrence: &[i64], initial: &[i64]) -> Result<Self> {
        Self::new(
            recurrence.iter().map(|&c| c.into()).collect(),
            initial.iter().map(|&c| c.into()).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.recurrence.len()
    }

    pub fn recurrence(&self) -> &[BigInt] {
        &self.recurrence
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// Largest absolute value among the defining integers.
    pub fn max_abs(&self) -> BigInt {
        self.recurrence
            .iter()
            .chain(&self.initial)
            .map(|c| if c < &BigInt::zero() { -c } else { c.clone() })
            .max()
            .unwrap_or_default()
    }

    /// `x^k - b_1 x^(k-1) - ... - b_k`.
    pub fn char_poly(&self) -> IntPoly {
        let k = self.order();
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        for (i, b) in self.recurrence.iter().enumerate() {
            c[k - 1 - i] = -b;
        }
        Poly::new(c)
    }

    pub fn is_simple(&self) -> bool {
        self.char_poly().is_squarefree()
    }

    pub fn is_zero(&self) -> bool {
        self.initial.iter().all(|u| u.is_zero())
    }

    /// First `n` terms.
    pub fn terms(&self, n: usize) -> Vec<BigInt> {
        let k = self.order();
        let mut out: Vec<BigInt> = self.initial.iter().take(n).cloned().collect();
        while out.len() < n {
            let m = out.len();
            let next = (0..k).map(|i| &self.recurrence[i] * &out[m - 1 - i]).sum();
            out.push(next);
        }
        out
    }

    /// `u_n` by iterating the recurrence.
    pub fn term_at(&self, n: u64) -> BigInt {
        let k = self.order();
        if (n as usize) < k {
            return self.initial[n as usize].clone();
        }
        let mut win: std::collections::VecDeque<BigInt> = self.initial.iter().cloned().collect();
        for _ in k as u64..=n {
            let next: BigInt = (0..k).map(|i| &self.recurrence[i] * &win[k - 1 - i]).sum();
            win.pop_front();
            win.push_back(next);
        }
        win.pop_back().unwrap()
    }

    pub fn companion(&self) -> CompanionSystem {
        let k = self.order();
        let mut m = Matrix::zeros(k, k);
        // transpose of the companion matrix: column 0 holds the coefficients
        for i in 0..k {
            m[(i, 0)] = self.recurrence[i].clone();
            if i + 1 < k {
                m[(i, i + 1)] = BigInt::one();
            }
        }
        let v = self.initial.iter().rev().cloned().collect();
        let mut w = vec![BigInt::zero(); k];
        w[k - 1] = BigInt::one();
        CompanionSystem { m, v, w }
    }

    /// `u_n = v^T M^n w` by binary powering of the companion matrix.
    pub fn term_at_pow(&self, n: u64) -> BigInt {
        let c = self.companion();
        let mw = c.m.pow(n).mul_vec(&c.w);
        c.v.iter().zip(&mw).map(|(a, b)| a * b).sum()
    }

    /// The subsequence `u_{l n + r}`, whose characteristic roots are the
    /// distinct `l`-th powers of the roots of this sequence.
    pub fn decimate(&self, l: u64, r: u64) -> Lrs {
        let p = self.char_poly();
        let q = if l == 1 {
            p
        } else {
            image_poly(&p, &Poly::monomial(num_rational::BigRational::one(), l as usize)).squarefree_part()
        };
        let q = if q.lc() < BigInt::zero() { -q } else { q };
        let lc = q.lc();
        let d = q.degree();
        let recurrence: Vec<BigInt> = (1..=d)
            .map(|i| {
                let c = -q.coeff(d - i);
                debug_assert!(c.is_multiple_of(&lc));
                c / &lc
            })
            .collect();
        let initial = (0..d as u64).map(|n| self.term_at_pow(l * n + r)).collect();
        Lrs::new(recurrence, initial).expect("decimated recurrence keeps a nonzero constant term")
    }
}

/// Reads an Lrs off `v^T M^n w` via the characteristic polynomial of `M`.
///
/// When `M` is singular the characteristic polynomial is `x^j q(x)` with
/// `q(0) != 0`; the returned sequence has recurrence `q` and starts at index
/// `j` (the caller sees `offset = j`).
pub fn from_matrix(m: &Matrix<BigInt>, v: &[BigInt], w: &[BigInt]) -> Result<MatrixLrs> {
    let d = m.rows();
    if m.cols() != d || v.len() != d || w.len() != d || d == 0 {
        return Err(Error::InvalidInput("matrix and vector dimensions disagree".into()));
    }
    let cp = m.charpoly();
    let j = (0..=d).find(|&i| !cp.coeff(i).is_zero()).unwrap_or(d);
    let term = |n: usize| -> BigInt {
        let mw = m.pow(n as u64).mul_vec(w);
        v.iter().zip(&mw).map(|(a, b)| a * b).sum()
    };
    if j == d {
        // nilpotent: the sequence vanishes from index d on
        let lrs = Lrs::new(vec![BigInt::one()], vec![BigInt::zero()])?;
        return Ok(MatrixLrs { lrs, offset: d });
    }
    let k = d - j;
    let recurrence = (1..=k).map(|i| -cp.coeff(d - i)).collect();
    let initial = (0..k).map(|n| term(n + j)).collect();
    Ok(MatrixLrs {
        lrs: Lrs::new(recurrence, initial)?,
        offset: j,
    })
}

/// Least common multiple of the orders of all torsion quotients of
/// distinct roots; one when there are none.
pub fn degeneracy_modulus(roots: &[AlgebraicNumber]) -> u64 {
    let mut l = 1u64;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if let Some(n) = roots[i].ratio_torsion_order(&roots[j]) {
                l = l.lcm(&n);
            }
        }
    }
    l
}

/// Splits a simple sequence into non-degenerate subsequences `u_{l n + r}`.
pub fn partition_nondegenerate(s: &Lrs, roots: &[AlgebraicNumber]) -> Result<Partition> {
    if !s.is_simple() {
        return Err(Error::InvalidInput("repeated characteristic roots".into()));
    }
    let l = degeneracy_modulus(roots);
    let parts = (0..l).map(|r| s.decimate(l, r)).collect();
    Ok(Partition { modulus: l, parts })
}

/// Characteristic roots in standard representation.
pub fn char_roots(s: &Lrs) -> Vec<AlgebraicNumber> {
    isolate_roots(&s.char_poly())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> Lrs {
        Lrs::from_i64s(&[1, 1], &[0, 1]).unwrap()
    }

    #[test]
    fn char_poly_signs() {
        assert_eq!(fib().char_poly(), Poly::from_i64s(&[-1, -1, 1]));
        assert_eq!(Lrs::from_i64s(&[2], &[1]).unwrap().char_poly(), Poly::from_i64s(&[-2, 1]));
        assert_eq!(Lrs::from_i64s(&[3, -2], &[0, 0]).unwrap().char_poly(), Poly::from_i64s(&[2, -3, 1]));
    }

    #[test]
    fn simplicity() {
        assert!(fib().is_simple());
        assert!(!Lrs::from_i64s(&[2, -1], &[0, 1]).unwrap().is_simple());
        assert!(Lrs::from_i64s(&[0, 1], &[0, 1]).unwrap().is_simple());
    }

    #[test]
    fn terms() {
        assert_eq!(fib().term_at(7), 13.into());
        assert_eq!(fib().term_at_pow(7), 13.into());
        assert_eq!(fib().term_at_pow(0), 0.into());
        let s = Lrs::from_i64s(&[3, -2], &[-99, -98]).unwrap();
        assert_eq!(s.term_at(10), 924.into());
        assert_eq!(s.term_at_pow(64), (BigInt::one() << 64) - 100);
        assert_eq!(s.terms(3), vec![(-99).into(), (-98).into(), (-96).into()]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Lrs::from_i64s(&[1, 0], &[0, 1]).is_err());
        assert!(Lrs::from_i64s(&[1], &[0, 1]).is_err());
        assert!(Lrs::from_i64s(&[], &[]).is_err());
    }

    #[test]
    fn matrix_form() {
        let m = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![1.into(), 0.into()]]);
        let r = from_matrix(&m, &[1.into(), 0.into()], &[0.into(), 1.into()]).unwrap();
        assert_eq!(r.offset, 0);
        assert_eq!(r.lrs.terms(4), fib().terms(4));

        let m = Matrix::from_rows(vec![vec![2.into()]]);
        let r = from_matrix(&m, &[1.into()], &[1.into()]).unwrap();
        assert_eq!(r.lrs.terms(5), [1, 2, 4, 8, 16].map(BigInt::from).to_vec());

        // nilpotent
        let m = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![0.into(), 0.into()]]);
        let r = from_matrix(&m, &[1.into(), 1.into()], &[1.into(), 1.into()]).unwrap();
        assert_eq!(r.offset, 2);
        assert!(r.lrs.terms(10).iter().all(|t| t.is_zero()));

        // singular, rank one: [[1, 1], [1, 1]] has charpoly x^2 - 2x
        let m = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![1.into(), 1.into()]]);
        let (v, w) = ([1.into(), 2.into()], [3.into(), (-1).into()]);
        let r = from_matrix(&m, &v, &w).unwrap();
        for n in 0..10u64 {
            let mw = m.pow(n + r.offset as u64).mul_vec(&w);
            let direct: BigInt = v.iter().zip(&mw).map(|(a, b)| a * b).sum();
            assert_eq!(r.lrs.term_at(n), direct);
        }
    }

    #[test]
    fn companion_roundtrip() {
        let s = Lrs::from_i64s(&[1, -3, 2], &[4, -1, 7]).unwrap();
        let c = s.companion();
        let r = from_matrix(&c.m, &c.v, &c.w).unwrap();
        assert_eq!(r.offset, 0);
        assert_eq!(r.lrs.terms(100), s.terms(100));
    }

    #[test]
    fn partitions() {
        let f = fib();
        let p = partition_nondegenerate(&f, &char_roots(&f)).unwrap();
        assert_eq!(p.modulus, 1);
        assert_eq!(p.parts, vec![f]);

        // roots are primitive 6th roots of unity; their quotient has order 3
        let s = Lrs::from_i64s(&[1, -1], &[0, 1]).unwrap();
        let p = partition_nondegenerate(&s, &char_roots(&s)).unwrap();
        assert_eq!(p.modulus, 3);
        assert!(p.parts.iter().all(|q| q.order() == 1));
        for n in 0..60 {
            assert_eq!(p.term(n), s.term_at(n));
        }

        let s = Lrs::from_i64s(&[0, 4], &[1, 1]).unwrap();
        let p = partition_nondegenerate(&s, &char_roots(&s)).unwrap();
        assert_eq!(p.modulus, 2);
        for part in &p.parts {
            assert_eq!(part.order(), 1);
            for n in 0..=20u32 {
                assert_eq!(part.term_at(n as u64), BigInt::from(4).pow(n));
            }
        }
    }
}
