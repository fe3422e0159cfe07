//! Algebraic numbers in standard representation: a squarefree primitive
//! integer polynomial together with a box that isolates one of its roots.
//!
//! Arithmetic never isolates the full result polynomial. The value is
//! enclosed by interval arithmetic on refined operand boxes; the irreducible
//! factor that owns it is the only one whose evaluation over the enclosure
//! does not exclude zero, and the enclosure is shrunk until it is an
//! isolating box for that factor.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ball::excludes_zero;
use super::cbox::{sign_at_dyadic, ComplexBox};
use super::cyclotomic::{cyclotomic, cyclotomic_order, orders_with_totient_at_most};
use super::dyadic::{Dyadic, Round};
use super::factor::{factor_squarefree, DEFAULT_BUDGET};
use super::interval::{CInterval, DyadicCInterval, Interval};
use super::isolate::{isolate_squarefree, isolation_target, mignotte_bound, refine_box};
use super::poly::Poly;
use super::resultant::{image_poly, product_poly, scale_roots, sum_poly};
use crate::error::{Error, Result};

type IntPoly = Poly<BigInt>;
type RatPoly = Poly<BigRational>;

/// Largest result degree the arithmetic will attempt.
pub const DEGREE_CAP: usize = 256;

const MAX_BITS: u32 = 1 << 21;

/// An algebraic number: the unique root of `poly` inside `bx`.
///
/// `bx` has diameter below a quarter of the separation bound of `poly`, so a
/// box meeting the real axis always holds a real root; such boxes are kept
/// on the axis.
#[derive(Clone)]
pub struct AlgebraicNumber {
    poly: IntPoly,
    bx: ComplexBox,
    minimal: bool,
}

/// Operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Conj,
    ModulusSq,
}

fn pow2_neg(bits: u32) -> Dyadic {
    Dyadic::pow2(-(bits as i64))
}

fn box_prec(bits: u32, boxes: &[&ComplexBox]) -> u32 {
    boxes
        .iter()
        .map(|b| b.natural_prec())
        .max()
        .unwrap_or(64)
        .max(bits + 64)
        + 16
}

fn rat_interval(q: &BigRational, prec: u32) -> DyadicCInterval {
    CInterval::real(Interval::from_rational(q, prec))
}

/// Horner evaluation of a rational polynomial over a complex interval.
pub fn eval_rat_over(e: &RatPoly, z: &DyadicCInterval, prec: u32) -> DyadicCInterval {
    let mut acc = CInterval::zero(prec);
    for c in e.coeffs().iter().rev() {
        acc = &(&acc * z) + &rat_interval(c, prec);
    }
    acc
}

impl AlgebraicNumber {
    /// Builds a number from a squarefree polynomial and an isolating box
    /// whose diameter is already below the isolation target.
    fn make(poly: IntPoly, bx: ComplexBox, minimal: bool) -> Self {
        let poly = poly.primitive();
        let mut bx = if bx.meets_real_axis() && !bx.is_on_real_axis() {
            ComplexBox::real(bx.re_lo.clone(), bx.re_hi.clone())
        } else {
            bx
        };
        if poly.degree() == 1 {
            let q = BigRational::new(-poly.coeff(0), poly.coeff(1));
            if let Some(d) = dyadic_of(&q) {
                bx = ComplexBox::point(d, Dyadic::zero());
            }
        }
        AlgebraicNumber { poly, bx, minimal }
    }

    /// Checked constructor: `poly` squarefree, `bx` below the isolation
    /// target of `poly` and containing a root.
    pub fn from_parts(poly: IntPoly, bx: ComplexBox) -> Result<Self> {
        if poly.degree() == 0 || !poly.is_squarefree() {
            return Err(Error::InvalidInput("defining polynomial must be squarefree and non-constant".into()));
        }
        let poly = poly.primitive();
        if !(bx.diam_bound() < isolation_target(&poly)) {
            return Err(Error::InvalidInput("box too wide to isolate a root".into()));
        }
        if !box_holds_root(&poly, &bx) {
            return Err(Error::InvalidInput("box contains no root".into()));
        }
        Ok(Self::make(poly, bx, false))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let poly = Poly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let bx = match dyadic_of(q) {
            Some(d) => ComplexBox::point(d, Dyadic::zero()),
            None => ComplexBox::real(
                Dyadic::from_rational(q, 64, Round::Down),
                Dyadic::from_rational(q, 64, Round::Up),
            ),
        };
        Self::make(poly, bx, true)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        isolate_roots(&Poly::from_i64s(&[1, 0, 1])).swap_remove(0)
    }

    /// `exp(2 pi i num/den)`.
    pub fn root_of_unity(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num_integer::gcd(num.rem_euclid(den as i64) as u64, den);
        let (k, n) = ((num.rem_euclid(den as i64) as u64) / g.max(1), den / g.max(1));
        let (k, n) = if k == 0 { (0, 1) } else { (k, n) };
        let f = cyclotomic(n);
        let t = isolation_target(&f);
        let bits = (-t.msb()).max(0) as u32 + 8;
        let p = bits + 32;
        let two_pi = super::transcend::pi(p).scale_pow2(1);
        let q = Interval::from_rational(&BigRational::new(BigInt::from(k), BigInt::from(n)), p);
        let z = super::transcend::cis(&(&two_pi * &q));
        // exact roots such as i may sit on the enclosure's edge
        let r = Dyadic::pow2(-(p as i64));
        let z = CInterval::new(z.re.inflate(&r), z.im.inflate(&r));
        let bx = ComplexBox::from_cinterval(&z);
        let bx = if bx.diam_bound() < t { bx } else { refine_box(&f, &bx, &t) };
        Self::make(f, bx, true)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn isolating_box(&self) -> &ComplexBox {
        &self.bx
    }

    /// Whether `poly` is known to be the minimal polynomial.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn degree_and_height(&self) -> (usize, BigInt) {
        (self.poly.degree(), self.poly.height())
    }

    /// The rational value, if the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.poly.degree() == 1).then(|| BigRational::new(-self.poly.coeff(0), self.poly.coeff(1)))
    }

    /// Value to about double precision.
    pub fn approx(&self) -> (f64, f64) {
        let (r, i) = self.refined(&Dyadic::pow2(-60)).bx.center();
        (r.to_f64(), i.to_f64())
    }

    /// A copy whose box diameter bound is below `target`.
    pub fn refined(&self, target: &Dyadic) -> Self {
        if self.bx.diam_bound() < *target {
            return self.clone();
        }
        let bx = refine_box(&self.poly, &self.bx, target);
        AlgebraicNumber {
            poly: self.poly.clone(),
            bx,
            minimal: self.minimal,
        }
    }

    /// Enclosure of width about `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> DyadicCInterval {
        let r = self.refined(&pow2_neg(bits));
        let p = box_prec(bits, &[&r.bx]);
        r.bx.to_cinterval(p)
    }

    pub fn is_real(&self) -> bool {
        self.bx.is_on_real_axis()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.coeff(0).is_zero() && self.bx.contains_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.degree() == 1 && self.poly.coeff(0) == -self.poly.coeff(1)
    }

    /// Exact sign of a real number.
    pub fn sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NonReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let mut x = self.clone();
        loop {
            if x.bx.re_lo.sign() != num_bigint::Sign::Minus {
                return Ok(1);
            }
            if x.bx.re_hi.sign() != num_bigint::Sign::Plus {
                return Ok(-1);
            }
            let t = x.bx.diam_bound().mul_pow2(-2);
            x = x.refined(&t);
        }
    }

    /// Exact equality.
    pub fn equals(&self, o: &Self) -> bool {
        if !self.bx.overlaps(&o.bx) {
            return false;
        }
        if self.poly == o.poly {
            return true;
        }
        let g = self.poly.gcd_int(&o.poly);
        if g.degree() == 0 {
            return false;
        }
        let l = (&self.poly * &o.poly).exact_div(&g).expect("gcd divides").primitive();
        let t = isolation_target(&l);
        self.refined(&t).bx.overlaps(&o.refined(&t).bx)
    }

    /// Exact order on real numbers.
    pub fn cmp_real(&self, o: &Self) -> Result<Ordering> {
        if !self.is_real() || !o.is_real() {
            return Err(Error::NonReal);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut checked = false;
        loop {
            if a.bx.re_hi < b.bx.re_lo {
                return Ok(Ordering::Less);
            }
            if b.bx.re_hi < a.bx.re_lo {
                return Ok(Ordering::Greater);
            }
            if !checked && a.equals(&b) {
                return Ok(Ordering::Equal);
            }
            checked = true;
            let t = a.bx.diam_bound().max(b.bx.diam_bound()).mul_pow2(-2);
            a = a.refined(&t);
            b = b.refined(&t);
        }
    }

    /// Whether this number is a root of `f`.
    pub fn is_root_of(&self, f: &IntPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let g = self.poly.gcd_int(f);
        if g.degree() == 0 {
            return false;
        }
        if g.degree() == self.poly.degree() {
            return true;
        }
        let h = self.poly.exact_div(&g).expect("gcd divides");
        let mut x = self.clone();
        loop {
            let w = x.bx.natural_prec() + 32;
            if excludes_zero(&g, &x.bx, w) {
                return false;
            }
            if excludes_zero(&h, &x.bx, w) {
                return true;
            }
            let t = x.bx.diam_bound().mul_pow2(-4).max(Dyadic::pow2(-(MAX_BITS as i64)));
            x = x.refined(&t);
        }
    }

    /// Order `n` if this is a primitive `n`-th root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.minimal {
            return cyclotomic_order(&self.poly);
        }
        orders_with_totient_at_most(self.poly.degree() as u64)
            .into_iter()
            .find(|&n| self.is_root_of(&cyclotomic(n)))
    }

    pub fn neg(&self) -> Self {
        let (re_lo, re_hi) = (-&self.bx.re_hi, -&self.bx.re_lo);
        let (im_lo, im_hi) = (-&self.bx.im_hi, -&self.bx.im_lo);
        Self::make(
            self.poly.negate_var(),
            ComplexBox::new(re_lo, re_hi, im_lo, im_hi),
            self.minimal,
        )
    }

    pub fn conj(&self) -> Self {
        Self::make(self.poly.clone(), self.bx.conj(), self.minimal)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if let Some(q) = o.as_rational() {
            return Ok(self.add_rational(&q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(o.add_rational(&q));
        }
        let r = sum_poly(&self.poly, &o.poly);
        let (mut a, mut b) = (self.clone(), o.clone());
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(bits + 1));
            b = b.refined(&pow2_neg(bits + 1));
            let p = box_prec(bits, &[&a.bx, &b.bx]);
            Some(&a.bx.to_cinterval(p) + &b.bx.to_cinterval(p))
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if let Some(q) = o.as_rational() {
            return Ok(self.mul_rational(&q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(o.mul_rational(&q));
        }
        let r = product_poly(&self.poly, &o.poly);
        let (mut a, mut b) = (self.clone(), o.clone());
        let mag = magnitude_bits(&a.bx).max(magnitude_bits(&b.bx));
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(bits + mag + 2));
            b = b.refined(&pow2_neg(bits + mag + 2));
            let p = box_prec(bits + mag, &[&a.bx, &b.bx]);
            Some(&a.bx.to_cinterval(p) * &b.bx.to_cinterval(p))
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let r = self.poly.reverse();
        let mut a = self.clone();
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(bits));
            let p = box_prec(bits, &[&a.bx]);
            let z = a.bx.to_cinterval(p);
            if z.contains_zero() {
                return None;
            }
            z.recip()
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// `|x|^2 = x * conj(x)`, a real number.
    pub fn modulus_sq(&self) -> Result<Self> {
        if self.is_real() {
            return self.mul(self);
        }
        let r = product_poly(&self.poly, &self.poly);
        let mut a = self.clone();
        let mag = magnitude_bits(&a.bx);
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(bits + mag + 2));
            let p = box_prec(bits + mag, &[&a.bx]);
            Some(CInterval::real(a.bx.to_cinterval(p).norm_sq()))
        })
    }

    /// Non-negative square root of a non-negative real number.
    pub fn sqrt(&self) -> Result<Self> {
        if self.sign()? < 0 {
            return Err(Error::InvalidInput("square root of a negative number".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let r = self.poly.inflate(2);
        let mut a = self.clone();
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(2 * bits + 2));
            let p = box_prec(2 * bits, &[&a.bx]);
            let x = a.bx.re_interval(p);
            let lo = x.lo.clone().max(Dyadic::zero());
            let hi = x.hi.clone().max(Dyadic::zero());
            if lo.is_zero() {
                return None;
            }
            Some(CInterval::real(Interval::new(lo, hi, p).sqrt()))
        })
    }

    /// `x^n` for an integer `n` (negative powers invert first).
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        if n == 0 {
            return Ok(Self::one());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.pow(n as i32)));
        }
        let e = pow_mod(&self.poly.to_rational(), n as u64);
        self.eval_poly(&e)
    }

    /// `e(x)` for a rational polynomial `e`.
    pub fn eval_poly(&self, e: &RatPoly) -> Result<Self> {
        let e = e.rem(&self.poly.to_rational());
        if e.degree() == 0 {
            return Ok(Self::from_rational(&e.coeff(0)));
        }
        let r = image_poly(&self.poly, &e);
        let mut a = self.clone();
        let mag = magnitude_bits(&a.bx) * e.degree() as u32 + rat_poly_bits(&e);
        resolve(&r, |bits| {
            a = a.refined(&pow2_neg(bits + mag + 2));
            let p = box_prec(bits + mag, &[&a.bx]);
            Some(eval_rat_over(&e, &a.bx.to_cinterval(p), p))
        })
    }

    fn add_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return self.clone();
        }
        // roots shift by q: p(x - q)
        let shifted = self
            .poly
            .to_rational()
            .compose(&Poly::new(vec![-q.clone(), BigRational::one()]));
        let poly = IntPoly::from_rational(&shifted);
        let p = box_prec(0, &[&self.bx]) + q.numer().bits() as u32 + q.denom().bits() as u32;
        let shift = rat_interval(q, p);
        let mut a = self.clone();
        let t = isolation_target(&poly);
        loop {
            let e = &a.bx.to_cinterval(p.max(a.bx.natural_prec() + 64)) + &shift;
            let b = ComplexBox::from_cinterval(&e);
            if b.diam_bound() < t {
                return Self::make(poly, b, self.minimal);
            }
            a = a.refined(&t.mul_pow2(-2));
        }
    }

    fn mul_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        let poly = scale_roots(&self.poly, q).primitive();
        let mut a = self.clone();
        let t = isolation_target(&poly);
        let scale_bits = q.numer().bits().max(q.denom().bits()) as i64 + 2;
        loop {
            let p = a.bx.natural_prec() + 64 + scale_bits as u32;
            let e = a.bx.to_cinterval(p).scale(&Interval::from_rational(q, p));
            let b = ComplexBox::from_cinterval(&e);
            if b.diam_bound() < t {
                return Self::make(poly, b, self.minimal);
            }
            a = a.refined(&t.mul_pow2(-scale_bits - 2));
        }
    }
}

fn dyadic_of(q: &BigRational) -> Option<Dyadic> {
    let d = q.denom();
    let k = d.trailing_zeros().unwrap_or(0);
    ((d >> k) == BigInt::one()).then(|| Dyadic::new(q.numer().clone(), -(k as i64)))
}

/// Bits above the binary point needed for the magnitude of a box.
fn magnitude_bits(b: &ComplexBox) -> u32 {
    [&b.re_lo, &b.re_hi, &b.im_lo, &b.im_hi]
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.msb() + 1)
        .max()
        .unwrap_or(0)
        .max(0) as u32
        + 1
}

fn rat_poly_bits(e: &RatPoly) -> u32 {
    e.coeffs()
        .iter()
        .map(|c| c.numer().bits().saturating_sub(c.denom().bits()) as u32)
        .max()
        .unwrap_or(0)
        + e.degree() as u32
}

fn pow_mod(p: &RatPoly, mut n: u64) -> RatPoly {
    let mut base = Poly::x().rem(p);
    let mut acc = Poly::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = (&acc * &base).rem(p);
        }
        base = (&base * &base).rem(p);
        n >>= 1;
    }
    acc
}

/// Identifies which irreducible factor of `r` vanishes at the value enclosed
/// by `enclose(bits)` and returns the value in standard representation.
///
/// `enclose` returns an enclosure of width roughly `2^-bits`, or `None` when
/// it cannot yet produce one.
pub fn resolve<F>(r: &IntPoly, mut enclose: F) -> Result<AlgebraicNumber>
where
    F: FnMut(u32) -> Option<DyadicCInterval>,
{
    let r = r.squarefree_part().primitive();
    if r.degree() > DEGREE_CAP {
        return Err(Error::DegreeCap(r.degree()));
    }
    let fac = factor_squarefree(&r, DEFAULT_BUDGET);
    let targets: Vec<Dyadic> = fac.factors.iter().map(isolation_target).collect();
    let mut bits = 24u32;
    while bits <= MAX_BITS {
        if let Some(e) = enclose(bits) {
            let bx = ComplexBox::from_cinterval(&e);
            let w = bx.natural_prec() + 32;
            let cands: Vec<usize> = (0..fac.factors.len())
                .filter(|&i| !excludes_zero(&fac.factors[i], &bx, w))
                .collect();
            if let [i] = cands[..] {
                if bx.diam_bound() < targets[i] {
                    return Ok(AlgebraicNumber::make(fac.factors[i].clone(), bx, fac.complete));
                }
                let need = (-targets[i].msb()).max(0) as u32 + 8;
                bits = (bits * 2).max(need);
                continue;
            }
        }
        bits *= 2;
    }
    Err(Error::PrecisionCap(format!("could not resolve a root of a degree {} polynomial", r.degree())))
}

/// Whether `bx` contains a root of squarefree `f`. Only used to validate
/// external input, so it isolates all roots.
fn box_holds_root(f: &IntPoly, bx: &ComplexBox) -> bool {
    if bx.is_on_real_axis() {
        let (a, b) = (sign_at_dyadic(f, &bx.re_lo), sign_at_dyadic(f, &bx.re_hi));
        return a == 0 || b == 0 || a != b;
    }
    let t = isolation_target(f).min(bx.diam_bound().mul_pow2(-16));
    isolate_squarefree(f, &t).iter().any(|r| bx.contains(r))
}

/// All roots of the squarefree part of `p`: real roots in increasing order,
/// then each upper half-plane root followed by its conjugate. Every box is
/// below a quarter of the separation bound of the squarefree part.
pub fn isolate_roots(p: &IntPoly) -> Vec<AlgebraicNumber> {
    if p.is_zero() {
        return Vec::new();
    }
    let g = p.squarefree_part().primitive();
    if g.degree() == 0 {
        return Vec::new();
    }
    let tg = isolation_target(&g);
    let fac = factor_squarefree(&g, DEFAULT_BUDGET);
    let mut reals = Vec::new();
    let mut uppers = Vec::new();
    for f in &fac.factors {
        let t = isolation_target(f).min(tg.clone());
        for b in isolate_squarefree(f, &t) {
            let x = AlgebraicNumber::make(f.clone(), b, fac.complete);
            if x.is_real() {
                reals.push(x);
            } else if x.bx.im_lo.sign() == num_bigint::Sign::Plus {
                uppers.push(x);
            }
        }
    }
    reals.sort_by(|a, b| a.bx.re_lo.cmp(&b.bx.re_lo));
    uppers.sort_by(|a, b| a.bx.re_lo.cmp(&b.bx.re_lo).then(a.bx.im_lo.cmp(&b.bx.im_lo)));
    let mut out = reals;
    for u in uppers {
        let c = u.conj();
        out.push(u);
        out.push(c);
    }
    out
}

/// Lower bound on the distance between distinct roots of `p`.
pub fn separation_bound(p: &IntPoly) -> Result<BigRational> {
    mignotte_bound(p).ok_or(Error::NoPairOfRoots)
}

/// Uniform entry point for the basic operations.
pub fn arith(op: ArithOp, x: &AlgebraicNumber, y: Option<&AlgebraicNumber>) -> Result<AlgebraicNumber> {
    let need = || y.ok_or_else(|| Error::InvalidInput("missing second operand".into()));
    match op {
        ArithOp::Add => x.add(need()?),
        ArithOp::Mul => x.mul(need()?),
        ArithOp::Inv => x.inv(),
        ArithOp::Conj => Ok(x.conj()),
        ArithOp::ModulusSq => x.modulus_sq(),
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let (re, im) = self.approx();
        if self.is_real() {
            write!(f, "{re:.6} (root of {})", self.poly)
        } else {
            let s = if im < 0.0 { '-' } else { '+' };
            write!(f, "{re:.6} {s} {:.6}i (root of {})", im.abs(), self.poly)
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({}, {:?})", self.poly, self.bx)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    defining_poly: Vec<String>,
    #[serde(rename = "box")]
    bx: ComplexBox,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            defining_poly: self.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            bx: self.bx.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = Repr::deserialize(d)?;
        let cs = r
            .defining_poly
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        AlgebraicNumber::from_parts(Poly::new(cs), r.bx).map_err(D::Error::custom)
    }
}

impl AlgebraicNumber {
    /// Order of `self / o` as a root of unity, if it is one.
    ///
    /// Candidate orders are those with totient at most the degree bound of
    /// the quotient; interval powers discard most of them and the survivors
    /// are checked exactly by comparing `self^n` with `o^n`.
    pub fn ratio_torsion_order(&self, o: &Self) -> Option<u64> {
        if self.is_zero() || o.is_zero() {
            return None;
        }
        let bound = (self.poly.degree() * o.poly.degree()) as u64;
        let mut bits = 96;
        let z = loop {
            if let Some(r) = o.enclosure(bits).recip() {
                break &self.enclosure(bits) * &r;
            }
            bits *= 2;
        };
        let one = Interval::one(z.prec());
        if !z.norm_sq().overlaps(&one) {
            return None;
        }
        for n in orders_with_totient_at_most(bound) {
            let w = z.powu(n);
            if !w.re.overlaps(&one) || !w.im.contains_zero() {
                continue;
            }
            if let (Ok(a), Ok(b)) = (self.pow(n as i64), o.pow(n as i64)) {
                if a.equals(&b) {
                    return Some(n);
                }
            }
        }
        None
    }

    /// Compares `|x|^2` with one.
    pub fn cmp_modulus_one(&self) -> Result<Ordering> {
        self.modulus_sq()?.cmp_real(&Self::one())
    }

    /// Positive real check.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.sign() == Ok(1)
    }

    /// Absolute value of a real number.
    pub fn abs_real(&self) -> Result<Self> {
        Ok(if self.sign()? < 0 { self.neg() } else { self.clone() })
    }

    /// Whether this is an algebraic integer.
    pub fn is_integral(&self) -> bool {
        self.poly.lc().abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::from_i64s(c)
    }

    fn root(c: &[i64], k: usize) -> AlgebraicNumber {
        isolate_roots(&ip(c)).swap_remove(k)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn isolates_sqrt2_and_i() {
        let r = isolate_roots(&ip(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        assert!((r[0].approx().0 + 2f64.sqrt()).abs() < 1e-6);
        assert!((r[1].approx().0 - 2f64.sqrt()).abs() < 1e-6);
        let s = separation_bound(&ip(&[-2, 0, 1])).unwrap();
        assert!(r[0].isolating_box().diam_bound().to_rational() * BigRational::from_integer(4.into()) < s);

        let three = isolate_roots(&ip(&[-3, 1]));
        assert_eq!(three[0].as_rational(), Some(q(3, 1)));
        assert!(three[0].isolating_box().diam_bound().is_zero());

        let i = isolate_roots(&ip(&[1, 0, 1]));
        assert_eq!(i.len(), 2);
        assert!((i[0].approx().1 - 1.0).abs() < 1e-6);
        assert!((i[1].approx().1 + 1.0).abs() < 1e-6);
    }

    #[test]
    fn separation_examples() {
        let b = separation_bound(&ip(&[-2, 0, 1])).unwrap();
        assert!((b.to_f64().unwrap() - 0.4330).abs() < 1e-3);
        let b = separation_bound(&ip(&[0, -1, 1])).unwrap();
        assert!((b.to_f64().unwrap() - 0.866).abs() < 1e-3);
        let b = separation_bound(&ip(&[0, -1, 0, 1])).unwrap();
        assert!(b > BigRational::zero() && b < BigRational::one());
        assert_eq!(separation_bound(&ip(&[1, 1])), Err(Error::NoPairOfRoots));
    }

    #[test]
    fn arithmetic_examples() {
        let s2 = root(&[-2, 0, 1], 1);
        assert!(s2.add(&s2.neg()).unwrap().is_zero());

        // (3 + 4i)/5 and its conjugate
        let u = root(&[5, -6, 5], 0);
        let v = root(&[5, -6, 5], 1);
        assert!(u.mul(&v).unwrap().is_one());
        assert!(u.mul(&u.conj()).unwrap().is_one());
        assert!(u.modulus_sq().unwrap().is_one());

        let phi = root(&[-1, -1, 1], 1);
        let inv = phi.inv().unwrap();
        assert_eq!(inv.poly(), &ip(&[-1, 1, 1]));
        assert!(inv.equals(&phi.sub(&AlgebraicNumber::one()).unwrap()));
        assert_eq!(AlgebraicNumber::zero().inv().err(), Some(Error::DivisionByZero));
    }

    #[test]
    fn signs() {
        let s2 = root(&[-2, 0, 1], 1);
        let one = AlgebraicNumber::one();
        assert_eq!(s2.sub(&one).unwrap().sign(), Ok(1));
        assert_eq!(one.sub(&s2).unwrap().sign(), Ok(-1));
        assert_eq!(AlgebraicNumber::zero().sign(), Ok(0));
        assert_eq!(AlgebraicNumber::i().sign(), Err(Error::NonReal));
        assert_eq!(s2.cmp_real(&one), Ok(Ordering::Greater));
    }

    #[test]
    fn torsion_ratios() {
        // the two primitive 6th roots of unity have a cube root of unity as ratio
        let r = isolate_roots(&ip(&[1, -1, 1]));
        assert_eq!(r[0].ratio_torsion_order(&r[1]), Some(3));
        let e = isolate_roots(&ip(&[-4, 0, 1]));
        assert_eq!(e[0].ratio_torsion_order(&e[1]), Some(2));
        let f = isolate_roots(&ip(&[-1, -1, 1]));
        assert_eq!(f[0].ratio_torsion_order(&f[1]), None);
        let u = root(&[5, -6, 5], 0);
        assert_eq!(u.ratio_torsion_order(&u.conj()), None);
        assert_eq!(u.ratio_torsion_order(&u.neg()), Some(2));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(AlgebraicNumber::i().root_of_unity_order(), Some(4));
        assert_eq!(AlgebraicNumber::one().root_of_unity_order(), Some(1));
        assert_eq!(root(&[5, -6, 5], 0).root_of_unity_order(), None);
        assert_eq!(root(&[1, -1, 1], 0).root_of_unity_order(), Some(6));
    }

    #[test]
    fn degree_height() {
        assert_eq!(root(&[-2, 0, 1], 0).degree_and_height(), (2, 2.into()));
        assert_eq!(AlgebraicNumber::from_int(7).degree_and_height(), (1, 7.into()));
        assert_eq!(root(&[5, -6, 5], 0).degree_and_height(), (2, 6.into()));
    }

    #[test]
    fn powers_and_sqrt() {
        let u = root(&[5, -6, 5], 0);
        let u2 = u.pow(2).unwrap();
        assert_eq!(u2.poly(), &ip(&[25, 14, 25]));
        let (re, im) = u2.approx();
        assert!((re + 7.0 / 25.0).abs() < 1e-9 && (im.abs() - 24.0 / 25.0).abs() < 1e-9);
        assert!(u.pow(-1).unwrap().equals(&u.conj()));
        let two = AlgebraicNumber::from_int(2);
        let s = two.sqrt().unwrap();
        assert!(s.equals(&root(&[-2, 0, 1], 1)));
        let x = AlgebraicNumber::from_rational(&q(1, 3));
        assert!(x.mul(&AlgebraicNumber::from_int(3)).unwrap().is_one());
    }

    #[test]
    fn equality_across_polys() {
        // sqrt2 * sqrt2 = 2 and sqrt(8)/2 = sqrt2
        let s2 = root(&[-2, 0, 1], 1);
        assert!(s2.mul(&s2).unwrap().equals(&AlgebraicNumber::from_int(2)));
        let s8 = root(&[-8, 0, 1], 1);
        let half = AlgebraicNumber::from_rational(&q(1, 2));
        assert!(s8.mul(&half).unwrap().equals(&s2));
        assert!(!s8.equals(&s2));
    }

    #[test]
    fn serde_roundtrip() {
        let u = root(&[5, -6, 5], 0);
        let s = serde_json::to_string(&u).unwrap();
        let back: AlgebraicNumber = serde_json::from_str(&s).unwrap();
        assert!(back.equals(&u));
        let bad = s.replace("\"5\"", "\"7\"");
        assert!(serde_json::from_str::<AlgebraicNumber>(&bad).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn quadratic() -> impl Strategy<Value = (i64, i64, i64)> {
        (1i64..6, -9i64..10, -9i64..10).prop_filter("squarefree", |(a, b, c)| b * b - 4 * a * c != 0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn add_neg_is_zero((a, b, c) in quadratic(), k in 0usize..2) {
            let x = isolate_roots(&Poly::from_i64s(&[c, b, a]));
            let x = &x[k.min(x.len() - 1)];
            prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        }

        #[test]
        fn product_matches_float((a, b, c) in quadratic(), (d, e, f) in quadratic()) {
            let x = isolate_roots(&Poly::from_i64s(&[c, b, a])).swap_remove(0);
            let y = isolate_roots(&Poly::from_i64s(&[f, e, d])).swap_remove(0);
            let p = x.mul(&y).unwrap();
            let s = x.add(&y).unwrap();
            let (xr, xi) = x.approx();
            let (yr, yi) = y.approx();
            let (pr, pi) = p.approx();
            prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-9 * (1.0 + pr.abs()));
            prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-9 * (1.0 + pi.abs()));
            let (sr, si) = s.approx();
            prop_assert!((sr - xr - yr).abs() < 1e-9 && (si - xi - yi).abs() < 1e-9);
            prop_assert!(p.is_root_of(&resultant_check(&x, &y)));
        }
    }

    fn resultant_check(x: &AlgebraicNumber, y: &AlgebraicNumber) -> IntPoly {
        product_poly(x.poly(), y.poly())
    }
}
