//! Exact dyadic rationals `m * 2^e` with explicit directed rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    if m.sign() == Sign::Minus {
        let d = BigInt::one() << k;
        m.div_floor(&d)
    } else {
        m >> k
    }
}

fn ceil_shr(m: &BigInt, k: u64) -> BigInt {
    -floor_shr(&(-m), k)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Bit position of the leading bit: `2^(msb) <= |x| < 2^(msb+1)`.
    pub fn msb(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let sh = bits - prec as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.mant, sh),
            Round::Up => ceil_shr(&self.mant, sh),
        };
        Dyadic::new(m, self.exp + sh as i64)
    }

    /// Rounds to a multiple of `2^e` (absolute precision).
    pub fn round_abs(&self, e: i64, dir: Round) -> Self {
        if self.exp >= e || self.is_zero() {
            return self.clone();
        }
        let sh = (e - self.exp) as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.mant, sh),
            Round::Up => ceil_shr(&self.mant, sh),
        };
        Dyadic::new(m, e)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            floor_shr(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            ceil_shr(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    /// Nearest-ish float (truncation), for diagnostics and seeding.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            let sh = (bits - 60) as u64;
            (floor_shr(&self.mant, sh), self.exp + sh as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let h = e / 2;
        mf * 2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), exp - 1075)
        };
        Dyadic::new(BigInt::from(sign * m), e)
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let n = q.numer();
        let d = q.denom();
        let s = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (num, den) = if s >= 0 {
            (n << (s as u64), d.clone())
        } else {
            (n.clone(), d << ((-s) as u64))
        };
        let m = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Dyadic::new(m, -s).round(prec, dir)
    }

    /// Quotient rounded to `prec` bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let s = prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let s = s.max(0);
        let num = &self.mant << (s as u64);
        let m = match dir {
            Round::Down => num.div_floor(&other.mant),
            Round::Up => -((-num).div_floor(&other.mant)),
        };
        Dyadic::new(m, self.exp - other.exp - s).round(prec, dir)
    }

    /// Square root of a non-negative value rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.sign() != Sign::Minus, "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        // want mant' with ~2*prec bits and even exponent
        let mut s = 2 * prec as i64 + 4 - self.mant.bits() as i64;
        if s < 0 {
            s = 0;
        }
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let big = &self.mant << (s as u64);
        let r = big.sqrt();
        let r = if dir == Round::Up && &r * &r != big {
            r + 1
        } else {
            r
        };
        Dyadic::new(r, (self.exp - s) / 2).round(prec, dir)
    }

    pub fn min(self, o: Self) -> Self {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: Self) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &o.mant << ((o.exp - e) as u64);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: Self) -> Dyadic {
        self + &(-o)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: Self) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_brackets_value() {
        let x = Dyadic::new(BigInt::from(-0b1011_0111i64), -3);
        let lo = x.round(3, Round::Down);
        let hi = x.round(3, Round::Up);
        assert!(lo <= x && x <= hi);
        assert!(lo.mant().bits() <= 3 && hi.mant().bits() <= 3);
    }

    #[test]
    fn division_directed() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 64, Round::Down);
        let hi = one.div(&three, 64, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
    }

    #[test]
    fn sqrt_directed() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(&lo * &lo < two && two < &hi * &hi);
        assert!((&hi - &lo).msb() < -95);
    }

    #[test]
    fn float_roundtrip() {
        for x in [1.5, -0.1, 3.0e-300, 12345.678] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn rational_conversion() {
        let q = BigRational::new((-7).into(), 10.into());
        let lo = Dyadic::from_rational(&q, 40, Round::Down);
        let hi = Dyadic::from_rational(&q, 40, Round::Up);
        assert!(lo.to_rational() <= q && q <= hi.to_rational());
    }
}
