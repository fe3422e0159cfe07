//! Dense univariate polynomials, generic over the coefficient ring.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient ring for [`Poly`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}
impl<T: Ring + Div<Output = T>> Field for T {}

/// Polynomial with coefficients stored constant term first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T> Default for Poly<T> {
    fn default() -> Self {
        Poly { coeffs: Vec::new() }
    }
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^d`
    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Horner evaluation in another ring, mapping each coefficient first.
    pub fn eval_map<U, F>(&self, x: &U, f: F) -> U
    where
        U: Clone + Add<Output = U> + Mul<Output = U>,
        F: Fn(&T) -> U,
    {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return f(&T::zero());
        };
        let mut acc = f(first);
        for c in it {
            acc = acc * x.clone() + f(c);
        }
        acc
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).expect("index fits"))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// `x^deg * self(1/x)`
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `self(-x)`
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `self(x^k)`
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dl = d.lc();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc();
        Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc();
        let inv = |p: &Self| Self::new(p.coeffs.iter().map(|c| c.clone() / l.clone()).collect());
        (inv(&r0), inv(&s0), inv(&t0))
    }
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Self) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Integer polynomial operations.
impl Poly<BigInt> {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Max absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Divides out the content; the leading coefficient becomes positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rational(p: &Poly<BigRational>) -> Self {
        let mut l = BigInt::one();
        for c in p.coeffs() {
            l = l.lcm(c.denom());
        }
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
        .primitive()
    }

    /// Exact quotient when `d` divides `self` over the integers.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dl = d.lc();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        if rem[..dd].iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dl = d.lc();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut top = rem.len() - 1;
        loop {
            if top < dd {
                break;
            }
            let c = rem[top].clone();
            for x in rem.iter_mut().take(top + 1) {
                *x *= &dl;
            }
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[top - dd + j] -= &c * dc;
                }
            }
            if top == 0 {
                break;
            }
            top -= 1;
            rem.truncate(top + 1);
        }
        rem.truncate(dd);
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd_int(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Primitive squarefree part with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd_int(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.primitive()
            .exact_div(&g)
            .expect("gcd divides")
            .primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd_int(&self.derivative()).degree() == 0
    }

    /// Evaluates at `n/d` scaled by `d^deg`, keeping everything integral.
    pub fn eval_homogeneous(&self, n: &BigInt, d: &BigInt) -> BigInt {
        let deg = self.degree();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // sum c_i n^i d^(deg-i), Horner in n with running powers of d
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        let _ = deg;
        acc
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        let v = self.eval_homogeneous(x.numer(), x.denom());
        // x.denom() > 0 so the scaling by d^deg keeps the sign
        v.sign()
    }

    /// `self(x + c)` by Horner-style Taylor shift.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `2^(k*deg) * self(x / 2^k)` for k >= 0, i.e. scaling the variable down.
    pub fn scale_var_pow2(&self, k: i64) -> Self {
        let deg = self.degree() as i64;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let sh = k * (deg - i as i64);
                    if sh >= 0 {
                        c << (sh as usize)
                    } else {
                        c >> ((-sh) as usize)
                    }
                })
                .collect(),
        )
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut last = Sign::NoSign;
        let mut v = 0;
        for c in &self.coeffs {
            let s = c.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Cauchy bound: every root has modulus below `1 + max|c_i / lc|`.
    pub fn cauchy_bound(&self) -> BigRational {
        let l = self.lc().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigRational::one() + BigRational::new(m, l)
    }
}

impl Poly<BigRational> {
    pub fn from_ints(p: &Poly<BigInt>) -> Self {
        p.to_rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> Poly<BigInt> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let p = ip(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(ip(&[0, 0]).is_zero());
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(ip(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(ip(&[5, -6, 5]).to_string(), "5*x^2 - 6*x + 5");
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = &(&ip(&[-1, 1]) * &ip(&[-1, 1])) * &ip(&[2, 1]);
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part(), &ip(&[-1, 1]) * &ip(&[2, 1]));
        let g = p.gcd_int(&ip(&[-1, 0, 1]));
        assert_eq!(g, ip(&[-1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = &ip(&[1, 1]) * &ip(&[3, 0, 2]);
        assert_eq!(a.exact_div(&ip(&[1, 1])), Some(ip(&[3, 0, 2])));
        assert_eq!(a.exact_div(&ip(&[1, 2])), None);
    }

    #[test]
    fn shift_matches_compose() {
        let p = ip(&[3, -1, 4, 1, -5]);
        let c = BigInt::from(2);
        let q = p.compose(&ip(&[2, 1]));
        assert_eq!(p.shift(&c), q);
    }

    #[test]
    fn rational_ext_gcd() {
        let a = ip(&[-2, 0, 1]).to_rational();
        let b = ip(&[1, 1]).to_rational();
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.degree() == 0);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn pseudo_rem_divisible() {
        let a = &ip(&[1, 2]) * &ip(&[3, 5, 7]);
        assert!(a.pseudo_rem(&ip(&[1, 2])).is_zero());
    }
}
