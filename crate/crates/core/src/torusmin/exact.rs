//! Exact minimization of a one-angle component with Gaussian rational
//! coefficients.
//!
//! With `u = tan(s/2)`, `cos(ks)` and `sin(ks)` are the real and imaginary
//! parts of `(1 + iu)^(2k) / (1 + u^2)^k`, so `h` and `h'` become rational
//! functions of `u` whose numerators have rational coefficients. Critical
//! points are the real roots of the derivative numerator, plus `s = pi`
//! (`u = infinity`) when `h'(pi) = 0`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebraic::number::{isolate_roots, AlgebraicNumber};
use crate::algebraic::poly::Poly;
use crate::error::{Error, Result};
use crate::{IntPoly, RatPoly};

/// `(re, im)` when `c` lies in `Q(i)`.
pub fn gaussian(c: &AlgebraicNumber) -> Option<(BigRational, BigRational)> {
    if let Some(q) = c.as_rational() {
        return Some((q, BigRational::zero()));
    }
    if c.poly().degree() != 2 {
        return None;
    }
    let cc = c.conj();
    let two = AlgebraicNumber::from_int(2);
    let re = c.add(&cc).ok()?.div(&two).ok()?.as_rational()?;
    let im = c
        .sub(&cc)
        .ok()?
        .div(&two.mul(&AlgebraicNumber::i()).ok()?)
        .ok()?
        .as_rational()?;
    Some((re, im))
}

/// `(re, im) * exp(2 pi i r)` when `4r` is an integer.
pub fn rotate(c: &(BigRational, BigRational), r: &BigRational) -> Option<(BigRational, BigRational)> {
    let q = r * BigRational::from_integer(BigInt::from(4));
    if !q.is_integer() {
        return None;
    }
    let k = (q.to_integer() % BigInt::from(4)).to_i64()?.rem_euclid(4);
    let (a, b) = c.clone();
    Some(match k {
        0 => (a, b),
        1 => (-b, a),
        2 => (-a, -b),
        _ => (b, -a),
    })
}

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Real and imaginary parts of `(1 + iu)^n`.
fn one_plus_iu(n: u64) -> (RatPoly, RatPoly) {
    let mut re = vec![BigRational::zero(); n as usize + 1];
    let mut im = vec![BigRational::zero(); n as usize + 1];
    for j in 0..=n {
        let b = BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(j)));
        match j % 4 {
            0 => re[j as usize] = b,
            1 => im[j as usize] = b,
            2 => re[j as usize] = -b,
            _ => im[j as usize] = -b,
        }
    }
    (Poly::new(re), Poly::new(im))
}

fn one_plus_u2_pow(k: u64) -> RatPoly {
    Poly::new(vec![rq(1), rq(0), rq(1)]).pow(k as u32)
}

/// Exact minimum of `sum_j 2 Re(C_j exp(i f_j s))` over `s`.
#[derive(Clone, Debug)]
pub struct UnivariateMin {
    /// Critical `u = tan(s/2)` values.
    pub roots: Vec<AlgebraicNumber>,
    /// Whether `s = pi` is critical.
    pub at_pi: bool,
    pub mu: AlgebraicNumber,
    /// Minimizers as `exp(i s)`.
    pub argmin: Vec<AlgebraicNumber>,
}

impl UnivariateMin {
    pub fn critical_count(&self) -> usize {
        self.roots.len() + self.at_pi as usize
    }
}

fn to_int(p: &RatPoly) -> IntPoly {
    IntPoly::from_rational(p)
}

pub fn minimize(coeffs: &[(BigRational, BigRational)], freqs: &[i64]) -> Result<UnivariateMin> {
    let n = freqs.iter().map(|f| f.unsigned_abs()).max().unwrap_or(0);
    let mut num = RatPoly::zero();
    let mut der = RatPoly::zero();
    let mut h_pi = BigRational::zero();
    let mut dh_pi = BigRational::zero();
    for ((a, b), &f) in coeffs.iter().zip(freqs) {
        let k = f.unsigned_abs();
        let sg = rq(f.signum());
        let (re, im) = one_plus_iu(2 * k);
        let pad = one_plus_u2_pow(n - k);
        let two = rq(2);
        let sin = im.scale(&sg);
        // 2 (a cos - b sin)
        let t = &re.scale(&(&two * a)) - &sin.scale(&(&two * b));
        num = &num + &(&t * &pad);
        // -2 f (a sin + b cos)
        let d = &sin.scale(a) + &re.scale(b);
        der = &der + &(&d.scale(&(rq(-2) * rq(f))) * &pad);
        let par = if k % 2 == 0 { rq(1) } else { rq(-1) };
        h_pi += &two * a * &par;
        dh_pi += rq(-2) * rq(f) * b * &par;
    }
    let at_pi = dh_pi.is_zero();
    if der.is_zero() {
        return Err(Error::Unsupported("h is constant on a component".into()));
    }
    let sqf = to_int(&der).squarefree_part();
    let roots: Vec<AlgebraicNumber> = if sqf.degree() == 0 {
        vec![]
    } else {
        isolate_roots(&sqf).into_iter().filter(|r| r.is_real()).collect()
    };
    let den = one_plus_u2_pow(n);
    let mut values = Vec::with_capacity(roots.len() + 1);
    for u in &roots {
        values.push(u.eval_poly(&num)?.div(&u.eval_poly(&den)?)?);
    }
    if at_pi {
        values.push(AlgebraicNumber::from_rational(&h_pi));
    }
    let mut best = 0;
    for i in 1..values.len() {
        if values[i].cmp_real(&values[best])? == Ordering::Less {
            best = i;
        }
    }
    let mu = values[best].clone();
    let i = AlgebraicNumber::i();
    let mut argmin = Vec::new();
    for (k, v) in values.iter().enumerate() {
        if !v.equals(&mu) {
            continue;
        }
        let w = if k < roots.len() {
            let iu = i.mul(&roots[k])?;
            let one = AlgebraicNumber::one();
            one.add(&iu)?.div(&one.sub(&iu)?)?
        } else {
            AlgebraicNumber::from_int(-1)
        };
        argmin.push(w);
    }
    Ok(UnivariateMin {
        roots,
        at_pi,
        mu,
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, d: i64) -> (BigRational, BigRational) {
        (
            BigRational::new(BigInt::from(a), BigInt::from(d)),
            BigRational::new(BigInt::from(b), BigInt::from(d)),
        )
    }

    #[test]
    fn cos_plus_cos_neg() {
        // cos s + cos(-s) = 2 cos s, minimum -2 at pi
        let r = minimize(&[g(1, 0, 2), g(1, 0, 2)], &[1, -1]).unwrap();
        assert!(r.mu.equals(&AlgebraicNumber::from_int(-2)));
        assert_eq!(r.argmin.len(), 1);
        assert!(r.argmin[0].equals(&AlgebraicNumber::from_int(-1)));
        assert_eq!(r.critical_count(), 2);
    }

    #[test]
    fn two_frequencies() {
        // 2cos s + 2 * (1/4) cos 2s: min over s compared with a grid
        let r = minimize(&[g(1, 0, 1), g(1, 0, 4)], &[1, 2]).unwrap();
        let grid = (0..200_000)
            .map(|k| {
                let s = k as f64 * std::f64::consts::TAU / 200_000.0;
                2.0 * s.cos() + 0.5 * (2.0 * s).cos()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((r.mu.approx().0 - grid).abs() < 1e-6);
    }

    #[test]
    fn rotations() {
        let c = g(3, 4, 5);
        assert_eq!(rotate(&c, &BigRational::new(1.into(), 4.into())), Some(g(-4, 3, 5)));
        assert_eq!(rotate(&c, &BigRational::new(1.into(), 3.into())), None);
        let z = AlgebraicNumber::from_rational(&c.0)
            .add(&AlgebraicNumber::i().mul(&AlgebraicNumber::from_rational(&c.1)).unwrap())
            .unwrap();
        assert_eq!(gaussian(&z), Some(c));
    }
}
