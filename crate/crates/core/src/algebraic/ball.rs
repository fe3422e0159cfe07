//! Midpoint-radius complex arithmetic.
//!
//! Rectangular interval Horner evaluation loses a constant factor of width at
//! every rotation, which is ruinous at degree 70+. Discs do not have that
//! wrapping effect, so polynomial evaluation over regions uses them.

use num_bigint::BigInt;

use super::cbox::ComplexBox;
use super::dyadic::{Dyadic, Round};
use super::poly::Poly;

const RPREC: u32 = 40;

/// Approximate complex number with dyadic parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Cx {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        Cx::new(Dyadic::one(), Dyadic::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn round(&self, w: u32) -> Cx {
        Cx::new(self.re.round(w, Round::Down), self.im.round(w, Round::Down))
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }

    /// Exact product.
    pub fn mul_exact(&self, o: &Cx) -> Cx {
        Cx::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn mul(&self, o: &Cx, w: u32) -> Cx {
        self.mul_exact(o).round(w)
    }

    pub fn recip(&self, w: u32) -> Option<Cx> {
        if self.is_zero() {
            return None;
        }
        let den = &(&self.re * &self.re) + &(&self.im * &self.im);
        Some(Cx::new(
            self.re.div(&den, w, Round::Down),
            (-&self.im).div(&den, w, Round::Down),
        ))
    }

    pub fn div(&self, o: &Cx, w: u32) -> Option<Cx> {
        Some(self.mul(&o.recip(w)?, w))
    }

    /// Exponent `e` with `|z| < 2^e`, or `None` for zero.
    pub fn log2_bound(&self) -> Option<i64> {
        let a = (!self.re.is_zero()).then(|| self.re.msb());
        let b = (!self.im.is_zero()).then(|| self.im.msb());
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x + 1),
            (Some(x), Some(y)) => Some(x.max(y) + 2),
        }
    }

    /// Upper bound on the modulus.
    pub fn abs_upper(&self) -> Dyadic {
        (&self.re.abs() + &self.im.abs()).round(RPREC, Round::Up)
    }

    /// Lower bound on the modulus.
    pub fn abs_lower(&self) -> Dyadic {
        let n = &(&self.re * &self.re) + &(&self.im * &self.im);
        n.round(RPREC + 8, Round::Down).sqrt(RPREC, Round::Down)
    }
}

/// Closed disc `{z : |z - c| <= r}`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub c: Cx,
    pub r: Dyadic,
}

fn up(x: &Dyadic) -> Dyadic {
    x.round(RPREC, Round::Up)
}

impl Ball {
    pub fn exact(c: Cx) -> Self {
        Ball {
            c,
            r: Dyadic::zero(),
        }
    }

    pub fn new(c: Cx, r: Dyadic) -> Self {
        Ball { c, r: up(&r) }
    }

    /// Disc enclosing a box.
    pub fn from_box(b: &ComplexBox) -> Self {
        let (re, im) = b.center();
        let r = (&b.width_re() + &b.width_im()).mul_pow2(-1);
        Ball::new(Cx::new(re, im), r)
    }

    /// Square box enclosing the disc.
    pub fn to_box(&self) -> ComplexBox {
        ComplexBox::around(&self.c.re, &self.c.im, &self.r)
    }

    pub fn contains_zero(&self) -> bool {
        self.c.abs_lower() <= self.r
    }

    fn rounded(c: Cx, r: Dyadic, w: u32) -> Ball {
        let rc = c.round(w);
        let err = c.sub(&rc).abs_upper();
        Ball::new(rc, &r + &err)
    }

    pub fn add(&self, o: &Ball, w: u32) -> Ball {
        Ball::rounded(self.c.add(&o.c), &self.r + &o.r, w)
    }

    pub fn sub(&self, o: &Ball, w: u32) -> Ball {
        Ball::rounded(self.c.sub(&o.c), &self.r + &o.r, w)
    }

    pub fn mul(&self, o: &Ball, w: u32) -> Ball {
        let c = self.c.mul_exact(&o.c);
        let a = self.c.abs_upper();
        let b = o.c.abs_upper();
        let r = &(&(&a * &o.r) + &(&b * &self.r)) + &(&self.r * &o.r);
        Ball::rounded(c, up(&r), w)
    }

    /// Whether this disc lies in the interior of `o`.
    pub fn inside(&self, o: &Ball) -> bool {
        let d = self.c.sub(&o.c).abs_upper();
        &d + &self.r < o.r
    }
}

/// Horner evaluation of `f` over a disc.
pub fn eval_ball(f: &Poly<BigInt>, z: &Ball, w: u32) -> Ball {
    let mut acc = Ball::exact(Cx::zero());
    for c in f.coeffs().iter().rev() {
        let k = Ball::exact(Cx::new(Dyadic::from_int(c.clone()), Dyadic::zero()));
        acc = acc.mul(z, w).add(&k, w);
    }
    acc
}

/// Whether `f` certainly has no zero in the box.
pub fn excludes_zero(f: &Poly<BigInt>, b: &ComplexBox, w: u32) -> bool {
    !eval_ball(f, &Ball::from_box(b), w).contains_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_eval_encloses_value() {
        // (1+i)^2 + 1 = 1 + 2i
        let f = Poly::from_i64s(&[1, 0, 1]);
        let z = Ball::new(Cx::new(Dyadic::one(), Dyadic::one()), Dyadic::pow2(-20));
        let v = eval_ball(&f, &z, 64);
        let target = Ball::exact(Cx::new(Dyadic::one(), Dyadic::from_int(2)));
        assert!(target.inside(&Ball::new(v.c.clone(), &v.r + &Dyadic::pow2(-60))));
        assert!(v.r < Dyadic::pow2(-17));
    }

    #[test]
    fn exclusion() {
        let f = Poly::from_i64s(&[1, 0, 1]);
        let near_i = ComplexBox::around(&Dyadic::zero(), &Dyadic::one(), &Dyadic::pow2(-10));
        let far = ComplexBox::around(&Dyadic::from_int(3), &Dyadic::zero(), &Dyadic::pow2(-2));
        assert!(!excludes_zero(&f, &near_i, 64));
        assert!(excludes_zero(&f, &far, 64));
    }
}
