//! Axis-aligned complex boxes with dyadic corners, plus interval evaluation of
//! integer polynomials over them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use super::interval::{CInterval, DyadicCInterval, DyadicInterval, Interval};
use super::poly::Poly;

/// `[re_lo, re_hi] × [im_lo, im_hi]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexBox {
    pub re_lo: Dyadic,
    pub re_hi: Dyadic,
    pub im_lo: Dyadic,
    pub im_hi: Dyadic,
}

impl ComplexBox {
    pub fn new(re_lo: Dyadic, re_hi: Dyadic, im_lo: Dyadic, im_hi: Dyadic) -> Self {
        assert!(re_lo <= re_hi && im_lo <= im_hi, "inverted box");
        ComplexBox {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        }
    }

    pub fn real(lo: Dyadic, hi: Dyadic) -> Self {
        Self::new(lo, hi, Dyadic::zero(), Dyadic::zero())
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        Self::new(re.clone(), re, im.clone(), im)
    }

    /// Square box of half-side `r` around `(re, im)`.
    pub fn around(re: &Dyadic, im: &Dyadic, r: &Dyadic) -> Self {
        Self::new(re - r, re + r, im - r, im + r)
    }

    pub fn from_cinterval(z: &DyadicCInterval) -> Self {
        Self::new(z.re.lo.clone(), z.re.hi.clone(), z.im.lo.clone(), z.im.hi.clone())
    }

    pub fn to_cinterval(&self, prec: u32) -> DyadicCInterval {
        CInterval::new(self.re_interval(prec), self.im_interval(prec))
    }

    pub fn re_interval(&self, prec: u32) -> DyadicInterval {
        Interval::new(
            self.re_lo.round(prec, Round::Down),
            self.re_hi.round(prec, Round::Up),
            prec,
        )
    }

    pub fn im_interval(&self, prec: u32) -> DyadicInterval {
        Interval::new(
            self.im_lo.round(prec, Round::Down),
            self.im_hi.round(prec, Round::Up),
            prec,
        )
    }

    pub fn width_re(&self) -> Dyadic {
        &self.re_hi - &self.re_lo
    }

    pub fn width_im(&self) -> Dyadic {
        &self.im_hi - &self.im_lo
    }

    /// Upper bound on the diameter (sum of side lengths).
    pub fn diam_bound(&self) -> Dyadic {
        &self.width_re() + &self.width_im()
    }

    pub fn center(&self) -> (Dyadic, Dyadic) {
        (
            (&self.re_lo + &self.re_hi).mul_pow2(-1),
            (&self.im_lo + &self.im_hi).mul_pow2(-1),
        )
    }

    pub fn meets_real_axis(&self) -> bool {
        self.im_lo <= Dyadic::zero() && Dyadic::zero() <= self.im_hi
    }

    pub fn is_on_real_axis(&self) -> bool {
        self.im_lo.is_zero() && self.im_hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.meets_real_axis() && self.re_lo <= Dyadic::zero() && Dyadic::zero() <= self.re_hi
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.re_lo <= o.re_hi && o.re_lo <= self.re_hi && self.im_lo <= o.im_hi && o.im_lo <= self.im_hi
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.re_lo <= o.re_lo && o.re_hi <= self.re_hi && self.im_lo <= o.im_lo && o.im_hi <= self.im_hi
    }

    /// Strict containment in the interior.
    pub fn contains_strictly(&self, o: &Self) -> bool {
        self.re_lo < o.re_lo && o.re_hi < self.re_hi && self.im_lo < o.im_lo && o.im_hi < self.im_hi
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re_lo.clone(), self.re_hi.clone(), -&self.im_hi, -&self.im_lo)
    }

    /// Four quadrants.
    pub fn split(&self) -> [ComplexBox; 4] {
        let (cr, ci) = self.center();
        [
            Self::new(self.re_lo.clone(), cr.clone(), self.im_lo.clone(), ci.clone()),
            Self::new(cr.clone(), self.re_hi.clone(), self.im_lo.clone(), ci.clone()),
            Self::new(self.re_lo.clone(), cr.clone(), ci.clone(), self.im_hi.clone()),
            Self::new(cr, self.re_hi.clone(), ci, self.im_hi.clone()),
        ]
    }

    pub fn hull(&self, o: &Self) -> Self {
        Self::new(
            self.re_lo.clone().min(o.re_lo.clone()),
            self.re_hi.clone().max(o.re_hi.clone()),
            self.im_lo.clone().min(o.im_lo.clone()),
            self.im_hi.clone().max(o.im_hi.clone()),
        )
    }

    pub fn rational_bounds(&self) -> [BigRational; 4] {
        [
            self.re_lo.to_rational(),
            self.re_hi.to_rational(),
            self.im_lo.to_rational(),
            self.im_hi.to_rational(),
        ]
    }

    /// Precision that represents the corners with some guard bits.
    pub fn natural_prec(&self) -> u32 {
        let bits = |d: &Dyadic| d.mant().bits() as u32;
        [&self.re_lo, &self.re_hi, &self.im_lo, &self.im_hi]
            .iter()
            .map(|d| bits(d))
            .max()
            .unwrap_or(0)
            .max(53)
            + 8
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:e}, {:e}] x [{:e}, {:e}]",
            self.re_lo.to_f64(),
            self.re_hi.to_f64(),
            self.im_lo.to_f64(),
            self.im_hi.to_f64()
        )
    }
}

/// Serialized form: exact rationals as `"p/q"` strings.
#[derive(Serialize, Deserialize)]
struct BoxRepr {
    re_lo: String,
    re_hi: String,
    im_lo: String,
    im_hi: String,
}

fn parse_dyadic(s: &str) -> Result<Dyadic, String> {
    let q: BigRational = s.parse().map_err(|e| format!("bad rational {s}: {e}"))?;
    let d = q.denom();
    let k = d.trailing_zeros().unwrap_or(0);
    if (d >> k) != BigInt::from(1) {
        return Err(format!("non-dyadic box corner {s}"));
    }
    Ok(Dyadic::new(q.numer().clone(), -(k as i64)))
}

impl Serialize for ComplexBox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [a, b, c, d] = self.rational_bounds();
        BoxRepr {
            re_lo: a.to_string(),
            re_hi: b.to_string(),
            im_lo: c.to_string(),
            im_hi: d.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexBox {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = BoxRepr::deserialize(d)?;
        let p = |s: &str| parse_dyadic(s).map_err(serde::de::Error::custom);
        let (a, b, c, e) = (p(&r.re_lo)?, p(&r.re_hi)?, p(&r.im_lo)?, p(&r.im_hi)?);
        if a > b || c > e {
            return Err(serde::de::Error::custom("inverted box"));
        }
        Ok(ComplexBox::new(a, b, c, e))
    }
}

/// Horner evaluation over a complex interval.
pub fn eval_complex(f: &Poly<BigInt>, z: &DyadicCInterval, prec: u32) -> DyadicCInterval {
    let mut acc = CInterval::zero(prec);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * z) + &CInterval::real(Interval::from_int(c, prec));
    }
    acc
}

/// Horner evaluation over a real interval.
pub fn eval_real(f: &Poly<BigInt>, x: &DyadicInterval, prec: u32) -> DyadicInterval {
    let mut acc = Interval::zero(prec);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &Interval::from_int(c, prec);
    }
    acc
}

/// Exact sign of `f` at a dyadic point.
pub fn sign_at_dyadic(f: &Poly<BigInt>, x: &Dyadic) -> i8 {
    let (n, d) = if x.exp() >= 0 {
        (x.mant() << (x.exp() as u64), BigInt::from(1))
    } else {
        (x.mant().clone(), BigInt::from(1) << ((-x.exp()) as u64))
    };
    let v = f.eval_homogeneous(&n, &d);
    if v.is_zero() {
        0
    } else if v > BigInt::zero() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_roundtrip() {
        let b = ComplexBox::new(
            Dyadic::new((-3).into(), -2),
            Dyadic::one(),
            Dyadic::zero(),
            Dyadic::new(5.into(), -10),
        );
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.contains("-3/4"));
        let back: ComplexBox = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn horner_encloses() {
        let f = Poly::from_i64s(&[1, 0, 1]);
        let z = ComplexBox::point(Dyadic::zero(), Dyadic::one()).to_cinterval(64);
        let v = eval_complex(&f, &z, 64);
        assert!(v.contains_zero());
        assert_eq!(sign_at_dyadic(&Poly::from_i64s(&[-1, 0, 4]), &Dyadic::new(1.into(), -1)), 0);
        assert_eq!(sign_at_dyadic(&Poly::from_i64s(&[-1, 0, 4]), &Dyadic::one()), 1);
    }
}
