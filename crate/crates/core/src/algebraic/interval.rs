//! Outward-rounded real and complex interval arithmetic, generic over the
//! endpoint type.
//!
//! `f64` endpoints give fast enclosures for bulk scanning; [`Dyadic`]
//! endpoints give enclosures at any requested precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::dyadic::{Dyadic, Round};

/// Endpoint type with directed rounding.
pub trait Bound: Clone + PartialOrd + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self;
    fn from_dyadic(d: &Dyadic, prec: u32, dir: Round) -> Self;
    fn add_r(&self, o: &Self, prec: u32, dir: Round) -> Self;
    fn sub_r(&self, o: &Self, prec: u32, dir: Round) -> Self;
    fn mul_r(&self, o: &Self, prec: u32, dir: Round) -> Self;
    fn div_r(&self, o: &Self, prec: u32, dir: Round) -> Self;
    fn sqrt_r(&self, prec: u32, dir: Round) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Exact dyadic value of the endpoint, if finite.
    fn to_dyadic(&self) -> Option<Dyadic>;
    /// Some value between `a` and `b` (inclusive).
    fn midpoint(a: &Self, b: &Self) -> Self;
    fn is_finite(&self) -> bool;
}

impl Bound for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(q: &BigRational, _prec: u32, dir: Round) -> Self {
        let d = Dyadic::from_rational(q, 60, dir);
        <f64 as Bound>::from_dyadic(&d, 53, dir)
    }
    fn from_dyadic(d: &Dyadic, _prec: u32, dir: Round) -> Self {
        let r = d.round(53, dir);
        let x = r.to_f64();
        // to_f64 is exact once the mantissa fits, apart from range limits
        match Dyadic::from_f64_checked(x) {
            Some(back) if back == r => x,
            _ => match dir {
                Round::Down => x.next_down(),
                Round::Up => x.next_up(),
            },
        }
    }
    fn add_r(&self, o: &Self, _p: u32, dir: Round) -> Self {
        step(self + o, dir)
    }
    fn sub_r(&self, o: &Self, _p: u32, dir: Round) -> Self {
        step(self - o, dir)
    }
    fn mul_r(&self, o: &Self, _p: u32, dir: Round) -> Self {
        let r = self * o;
        if r == 0.0 && *self != 0.0 && *o != 0.0 {
            return step(r, dir);
        }
        if *self == 0.0 || *o == 0.0 {
            return 0.0;
        }
        step(r, dir)
    }
    fn div_r(&self, o: &Self, _p: u32, dir: Round) -> Self {
        if *self == 0.0 {
            return 0.0;
        }
        step(self / o, dir)
    }
    fn sqrt_r(&self, _p: u32, dir: Round) -> Self {
        if *self <= 0.0 {
            return 0.0;
        }
        let r = self.sqrt();
        match dir {
            Round::Down => r.next_down().max(0.0),
            Round::Up => r.next_up(),
        }
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_dyadic(&self) -> Option<Dyadic> {
        self.is_finite().then(|| Dyadic::from_f64(*self))
    }
    fn midpoint(a: &Self, b: &Self) -> Self {
        let m = 0.5 * a + 0.5 * b;
        m.clamp(*a, *b)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

fn step(x: f64, dir: Round) -> f64 {
    match dir {
        Round::Down => x.next_down(),
        Round::Up => x.next_up(),
    }
}

impl Dyadic {
    pub(crate) fn from_f64_checked(x: f64) -> Option<Dyadic> {
        x.is_finite().then(|| Dyadic::from_f64(x))
    }
}

impl Bound for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn one() -> Self {
        Dyadic::one()
    }
    fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        Dyadic::from_rational(q, prec, dir)
    }
    fn from_dyadic(d: &Dyadic, prec: u32, dir: Round) -> Self {
        d.round(prec, dir)
    }
    fn add_r(&self, o: &Self, prec: u32, dir: Round) -> Self {
        (self + o).round(prec, dir)
    }
    fn sub_r(&self, o: &Self, prec: u32, dir: Round) -> Self {
        (self - o).round(prec, dir)
    }
    fn mul_r(&self, o: &Self, prec: u32, dir: Round) -> Self {
        (self * o).round(prec, dir)
    }
    fn div_r(&self, o: &Self, prec: u32, dir: Round) -> Self {
        self.div(o, prec, dir)
    }
    fn sqrt_r(&self, prec: u32, dir: Round) -> Self {
        if self.sign() != num_bigint::Sign::Plus {
            return Dyadic::zero();
        }
        self.sqrt(prec, dir)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Dyadic::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        Dyadic::to_f64(self)
    }
    fn to_dyadic(&self) -> Option<Dyadic> {
        Some(self.clone())
    }
    fn midpoint(a: &Self, b: &Self) -> Self {
        (a + b).mul_pow2(-1)
    }
    fn is_finite(&self) -> bool {
        true
    }
}

/// Closed real interval `[lo, hi]` carrying its working precision.
#[derive(Clone, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub prec: u32,
}

pub type F64Interval = Interval<f64>;
pub type DyadicInterval = Interval<Dyadic>;

impl<T: Bound> Interval<T> {
    pub fn new(lo: T, hi: T, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval {lo:?} > {hi:?}");
        Interval { lo, hi, prec }
    }

    pub fn point(x: T, prec: u32) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(T::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::point(T::one(), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: T::from_rational(q, prec, Round::Down),
            hi: T::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Self::from_dyadic(&Dyadic::from_int(n.clone()), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), prec)
    }

    pub fn from_dyadic(d: &Dyadic, prec: u32) -> Self {
        Interval {
            lo: T::from_dyadic(d, prec, Round::Down),
            hi: T::from_dyadic(d, prec, Round::Up),
            prec,
        }
    }

    /// Converts between endpoint types, rounding outward.
    pub fn convert<U: Bound>(&self, prec: u32) -> Interval<U> {
        let lo = self.lo.to_dyadic().map_or_else(
            || U::from_rational(&BigRational::from_integer((-1i64 << 60).into()), prec, Round::Down),
            |d| U::from_dyadic(&d, prec, Round::Down),
        );
        let hi = self.hi.to_dyadic().map_or_else(
            || U::from_rational(&BigRational::from_integer((1i64 << 60).into()), prec, Round::Up),
            |d| U::from_dyadic(&d, prec, Round::Up),
        );
        Interval { lo, hi, prec }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            prec,
        }
    }

    pub fn width(&self) -> T {
        self.hi.sub_r(&self.lo, self.prec, Round::Up)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn mid(&self) -> T {
        T::midpoint(&self.lo, &self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * self.lo.to_f64() + 0.5 * self.hi.to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= T::zero() && T::zero() <= self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, o: &Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > T::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi < T::zero()
    }

    /// Sign if it is certain.
    pub fn sign(&self) -> Option<i8> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = if self.lo >= o.lo { self.lo.clone() } else { o.lo.clone() };
        let hi = if self.hi <= o.hi { self.hi.clone() } else { o.hi.clone() };
        (lo <= hi).then(|| Interval {
            lo,
            hi,
            prec: self.prec.max(o.prec),
        })
    }

    pub fn hull(&self, o: &Self) -> Self {
        let lo = if self.lo <= o.lo { self.lo.clone() } else { o.lo.clone() };
        let hi = if self.hi >= o.hi { self.hi.clone() } else { o.hi.clone() };
        Interval {
            lo,
            hi,
            prec: self.prec.max(o.prec),
        }
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Largest absolute value.
    pub fn mag(&self) -> T {
        let a = self.lo.neg();
        if a > self.hi {
            a
        } else {
            self.hi.clone()
        }
    }

    /// Smallest absolute value.
    pub fn mig(&self) -> T {
        if self.contains_zero() {
            T::zero()
        } else if self.lo > T::zero() {
            self.lo.clone()
        } else {
            self.hi.neg()
        }
    }

    pub fn abs(&self) -> Self {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> Self {
        let p = self.prec;
        let lo = self.mig();
        let hi = self.mag();
        Interval {
            lo: lo.mul_r(&lo, p, Round::Down),
            hi: hi.mul_r(&hi, p, Round::Up),
            prec: p,
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.prec);
        }
        if n.is_multiple_of(2) {
            return self.powi(n / 2).sqr();
        }
        let mut acc = self.clone();
        let mut base = self.sqr();
        let mut e = (n - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Square root of the non-negative part.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        let lo = if self.lo > T::zero() {
            self.lo.sqrt_r(p, Round::Down)
        } else {
            T::zero()
        };
        let hi = if self.hi > T::zero() {
            self.hi.sqrt_r(p, Round::Up)
        } else {
            T::zero()
        };
        Interval { lo, hi, prec: p }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let p = self.prec;
        let one = T::one();
        Some(Interval {
            lo: one.div_r(&self.hi, p, Round::Down),
            hi: one.div_r(&self.lo, p, Round::Up),
            prec: p,
        })
    }

    pub fn min_with(&self, o: &Self) -> Self {
        let lo = if self.lo <= o.lo { self.lo.clone() } else { o.lo.clone() };
        let hi = if self.hi <= o.hi { self.hi.clone() } else { o.hi.clone() };
        Interval {
            lo,
            hi,
            prec: self.prec.max(o.prec),
        }
    }

    /// Widens by `r` on both sides.
    pub fn inflate(&self, r: &T) -> Self {
        Interval {
            lo: self.lo.sub_r(r, self.prec, Round::Down),
            hi: self.hi.add_r(r, self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn lo_rational(&self) -> Option<BigRational> {
        self.lo.to_dyadic().map(|d| d.to_rational())
    }

    pub fn hi_rational(&self) -> Option<BigRational> {
        self.hi.to_dyadic().map(|d| d.to_rational())
    }
}

impl<T: Bound> Add for &Interval<T> {
    type Output = Interval<T>;
    fn add(self, o: Self) -> Interval<T> {
        let p = self.prec.max(o.prec);
        Interval {
            lo: self.lo.add_r(&o.lo, p, Round::Down),
            hi: self.hi.add_r(&o.hi, p, Round::Up),
            prec: p,
        }
    }
}

impl<T: Bound> Sub for &Interval<T> {
    type Output = Interval<T>;
    fn sub(self, o: Self) -> Interval<T> {
        let p = self.prec.max(o.prec);
        Interval {
            lo: self.lo.sub_r(&o.hi, p, Round::Down),
            hi: self.hi.sub_r(&o.lo, p, Round::Up),
            prec: p,
        }
    }
}

impl<T: Bound> Mul for &Interval<T> {
    type Output = Interval<T>;
    fn mul(self, o: Self) -> Interval<T> {
        let p = self.prec.max(o.prec);
        let zero = T::zero();
        // sign-case split keeps the number of products small
        if self.lo >= zero && o.lo >= zero {
            return Interval {
                lo: self.lo.mul_r(&o.lo, p, Round::Down),
                hi: self.hi.mul_r(&o.hi, p, Round::Up),
                prec: p,
            };
        }
        if self.hi <= zero && o.hi <= zero {
            return Interval {
                lo: self.hi.mul_r(&o.hi, p, Round::Down),
                hi: self.lo.mul_r(&o.lo, p, Round::Up),
                prec: p,
            };
        }
        let cands = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for (a, b) in cands {
            let l = a.mul_r(b, p, Round::Down);
            let h = a.mul_r(b, p, Round::Up);
            if lo.as_ref().is_none_or(|x| l < *x) {
                lo = Some(l);
            }
            if hi.as_ref().is_none_or(|x| h > *x) {
                hi = Some(h);
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            prec: p,
        }
    }
}

impl<T: Bound> Div for &Interval<T> {
    type Output = Interval<T>;
    /// Panics if the divisor contains zero; check with `recip` first when unsure.
    fn div(self, o: Self) -> Interval<T> {
        let p = self.prec.max(o.prec);
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let cands = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for (a, b) in cands {
            let l = a.div_r(b, p, Round::Down);
            let h = a.div_r(b, p, Round::Up);
            if lo.as_ref().is_none_or(|x| l < *x) {
                lo = Some(l);
            }
            if hi.as_ref().is_none_or(|x| h > *x) {
                hi = Some(h);
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            prec: p,
        }
    }
}

impl<T: Bound> Neg for &Interval<T> {
    type Output = Interval<T>;
    fn neg(self) -> Interval<T> {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

macro_rules! owned_ops {
    ($ty:ident) => {
        impl<T: Bound> Add for $ty<T> {
            type Output = $ty<T>;
            fn add(self, o: Self) -> $ty<T> {
                &self + &o
            }
        }
        impl<T: Bound> Sub for $ty<T> {
            type Output = $ty<T>;
            fn sub(self, o: Self) -> $ty<T> {
                &self - &o
            }
        }
        impl<T: Bound> Mul for $ty<T> {
            type Output = $ty<T>;
            fn mul(self, o: Self) -> $ty<T> {
                &self * &o
            }
        }
        impl<T: Bound> Neg for $ty<T> {
            type Output = $ty<T>;
            fn neg(self) -> $ty<T> {
                -&self
            }
        }
    };
}
owned_ops!(Interval);

impl<T: Bound> Div for Interval<T> {
    type Output = Interval<T>;
    fn div(self, o: Self) -> Interval<T> {
        &self / &o
    }
}

impl<T: Bound> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Rectangular complex interval.
#[derive(Clone, PartialEq)]
pub struct CInterval<T> {
    pub re: Interval<T>,
    pub im: Interval<T>,
}

pub type F64CInterval = CInterval<f64>;
pub type DyadicCInterval = CInterval<Dyadic>;

impl<T: Bound> CInterval<T> {
    pub fn new(re: Interval<T>, im: Interval<T>) -> Self {
        CInterval { re, im }
    }

    pub fn real(re: Interval<T>) -> Self {
        let p = re.prec;
        CInterval {
            re,
            im: Interval::zero(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Interval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Interval::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn with_prec(&self, p: u32) -> Self {
        CInterval {
            re: self.re.with_prec(p),
            im: self.im.with_prec(p),
        }
    }

    pub fn convert<U: Bound>(&self, prec: u32) -> CInterval<U> {
        CInterval {
            re: self.re.convert(prec),
            im: self.im.convert(prec),
        }
    }

    pub fn conj(&self) -> Self {
        CInterval {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sq(&self) -> Interval<T> {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Interval<T> {
        self.norm_sq().sqrt()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        Some(CInterval {
            re: self.re.intersect(&o.re)?,
            im: self.im.intersect(&o.im)?,
        })
    }

    pub fn hull(&self, o: &Self) -> Self {
        CInterval {
            re: self.re.hull(&o.re),
            im: self.im.hull(&o.im),
        }
    }

    pub fn scale(&self, s: &Interval<T>) -> Self {
        CInterval {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    /// Larger of the real and imaginary widths.
    pub fn width_f64(&self) -> f64 {
        self.re.width_f64().max(self.im.width_f64())
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sq();
        let inv = n.recip()?;
        Some(CInterval {
            re: &self.re * &inv,
            im: -(&self.im * &inv),
        })
    }

    pub fn sqr(&self) -> Self {
        let re = &self.re.sqr() - &self.im.sqr();
        let im = (&self.re * &self.im).scale_pow2(1);
        CInterval { re, im }
    }

    pub fn powu(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.prec());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

impl<T: Bound> Interval<T> {
    /// Multiplies by `2^k` (exact for both endpoint types barring overflow).
    pub fn scale_pow2(&self, k: i32) -> Self {
        let f = if k >= 0 {
            Interval::from_int(&(BigInt::from(1) << k as usize), self.prec)
        } else {
            Interval::from_rational(
                &BigRational::new(1.into(), BigInt::from(1) << (-k) as usize),
                self.prec,
            )
        };
        self * &f
    }
}

impl<T: Bound> Add for &CInterval<T> {
    type Output = CInterval<T>;
    fn add(self, o: Self) -> CInterval<T> {
        CInterval {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<T: Bound> Sub for &CInterval<T> {
    type Output = CInterval<T>;
    fn sub(self, o: Self) -> CInterval<T> {
        CInterval {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<T: Bound> Mul for &CInterval<T> {
    type Output = CInterval<T>;
    fn mul(self, o: Self) -> CInterval<T> {
        CInterval {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<T: Bound> Neg for &CInterval<T> {
    type Output = CInterval<T>;
    fn neg(self) -> CInterval<T> {
        CInterval {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

owned_ops!(CInterval);

impl<T: Bound> fmt::Debug for CInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

/// Interval hull of a rational, as used for exact inputs.
pub fn rational_interval(q: &BigRational, prec: u32) -> DyadicInterval {
    Interval::from_rational(q, prec)
}

/// Integer floor of the lower endpoint, as a helper for index bounds.
pub fn floor_i64(x: &DyadicInterval) -> Option<i64> {
    x.lo.floor().to_i64()
}

/// Whether a dyadic interval certainly lies in `(0, 1)`.
pub fn in_unit_open(x: &DyadicInterval) -> bool {
    x.lo > Dyadic::zero() && x.hi < Dyadic::one()
}

/// Absolute value helper for big integers as intervals.
pub fn int_abs_interval(n: &BigInt, prec: u32) -> DyadicInterval {
    Interval::from_int(&n.abs(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn f64_interval_encloses_third() {
        let a = F64Interval::from_rational(&q(1, 3), 53);
        let three = F64Interval::from_i64(3, 53);
        let p = &a * &three;
        assert!(p.contains(&1.0));
        assert!(p.width_f64() < 1e-15);
    }

    #[test]
    fn dyadic_interval_sqrt_two() {
        let two = DyadicInterval::from_i64(2, 200);
        let r = two.sqrt();
        let sq = r.sqr();
        assert!(sq.contains(&Dyadic::from_int(2)));
        assert!(r.width_f64() < 1e-55);
    }

    #[test]
    fn mixed_sign_product() {
        let a = DyadicInterval::new(Dyadic::from_int(-2), Dyadic::from_int(3), 64);
        let b = DyadicInterval::new(Dyadic::from_int(-5), Dyadic::from_int(1), 64);
        let p = &a * &b;
        assert_eq!(p.lo, Dyadic::from_int(-15));
        assert_eq!(p.hi, Dyadic::from_int(10));
    }

    #[test]
    fn complex_power_matches_exact() {
        // ((3+4i)/5)^2 = (-7+24i)/25
        let z = CInterval::new(
            DyadicInterval::from_rational(&q(3, 5), 128),
            DyadicInterval::from_rational(&q(4, 5), 128),
        );
        let s = z.powu(2);
        assert!(s.re.overlaps(&DyadicInterval::from_rational(&q(-7, 25), 128)));
        assert!(s.re.width_f64() < 1e-35);
        assert!(s.im.overlaps(&DyadicInterval::from_rational(&q(24, 25), 128)));
        assert!(s.norm_sq().overlaps(&DyadicInterval::one(128)));
    }

    #[test]
    fn conversion_f64_is_outward() {
        let a = DyadicInterval::from_rational(&q(1, 10), 300);
        let b: F64Interval = a.convert(53);
        assert!(b.lo.to_dyadic().unwrap() <= a.lo && a.hi <= b.hi.to_dyadic().unwrap());
    }
}
