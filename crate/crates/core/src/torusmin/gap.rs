//! Data for the critical case `mu = -a`: how far `lambda_1^n` stays from the
//! minimizer projections, and how fast `h - mu` grows away from them.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bnb::BranchFn;
use super::chart::Chart;
use super::{MinCertificate, TrigForm};
use crate::algebraic::dyadic::{Dyadic, Round};
use crate::algebraic::interval::{DyadicInterval, Interval};
use crate::algebraic::number::AlgebraicNumber;
use crate::algebraic::transcend;
use crate::error::{Error, Result};
use crate::relations::RelationLattice;
use crate::IntPoly;

const PREC: u32 = 128;

/// Minimal `b` such that some point of the circle is at distance `>= 1/b`
/// from every point of `Z_1`, with a point attaining it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExclusionRadius {
    pub exact: Option<AlgebraicNumber>,
    pub approx: [f64; 2],
    pub witness: AlgebraicNumber,
}

impl ExclusionRadius {
    /// Exact check that the witness is at distance `>= 1/b` from all of `z1`.
    pub fn witness_ok(&self, z1: &[AlgebraicNumber]) -> Result<bool> {
        let b = self.exact.as_ref().ok_or(Error::Unsupported("inexact radius".into()))?;
        let r2 = b.mul(b)?.inv()?;
        for z in z1 {
            let d = self.witness.sub(z)?.modulus_sq()?;
            if d.cmp_real(&r2)? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn angle(z: &AlgebraicNumber, prec: u32) -> Result<DyadicInterval> {
    let t = transcend::arg(&z.enclosure(prec + 16))
        .ok_or_else(|| Error::InvalidInput("zero on the unit circle".into()))?;
    Ok(t.with_prec(prec))
}

/// `b = 1 / (2 sin(delta/4))` for the largest arc `delta` between consecutive
/// points of `z1`.
pub fn exclusion_radius(z1: &[AlgebraicNumber]) -> Result<ExclusionRadius> {
    if z1.is_empty() {
        return Err(Error::InvalidInput("empty Z1".into()));
    }
    for z in z1 {
        if !z.modulus_sq()?.is_one() {
            return Err(Error::InvalidInput("Z1 point off the unit circle".into()));
        }
    }
    let finish = |b: AlgebraicNumber, w: AlgebraicNumber| {
        let e = b.enclosure(64).re;
        ExclusionRadius {
            approx: [e.lo.to_f64(), e.hi.to_f64()],
            exact: Some(b),
            witness: w,
        }
    };
    if z1.len() == 1 {
        return Ok(finish(
            AlgebraicNumber::from_rational(&BigRational::new(1.into(), 2.into())),
            z1[0].neg(),
        ));
    }
    let two_pi = transcend::pi(PREC).scale_pow2(1);
    let mut pts: Vec<(DyadicInterval, &AlgebraicNumber)> = z1
        .iter()
        .map(|z| {
            let mut t = angle(z, PREC)?;
            if t.is_negative() || t.contains_zero() && t.lo.sign() == num_bigint::Sign::Minus {
                t = &t + &two_pi;
            }
            Ok((t, z))
        })
        .collect::<Result<_>>()?;
    pts.sort_by_key(|a| a.0.mid());
    let pi = transcend::pi(PREC);
    // (squared distance 1/b^2, witness) per arc
    let mut best: Option<(AlgebraicNumber, AlgebraicNumber)> = None;
    for k in 0..pts.len() {
        let (ta, za) = &pts[k];
        let (tb, zb) = &pts[(k + 1) % pts.len()];
        let mut delta = tb - ta;
        if k + 1 == pts.len() {
            delta = &delta + &two_pi;
        }
        let s = za.add(zb)?;
        let (d2, w) = if s.is_zero() {
            // half circle: midpoint i * z_a
            (AlgebraicNumber::from_int(2), AlgebraicNumber::i().mul(za)?)
        } else {
            let diff = &delta - &pi;
            let abs = s.modulus_sq()?.sqrt()?;
            let unit = s.div(&abs)?;
            if diff.is_negative() {
                (AlgebraicNumber::from_int(2).sub(&abs)?, unit)
            } else if diff.is_positive() {
                (AlgebraicNumber::from_int(2).add(&abs)?, unit.neg())
            } else {
                return Err(Error::PrecisionCap("arc length against pi".into()));
            }
        };
        best = match best {
            Some((b, bw)) if b.cmp_real(&d2)? != Ordering::Less => Some((b, bw)),
            _ => Some((d2, w)),
        };
    }
    let (d2, w) = best.expect("non-empty");
    Ok(finish(d2.sqrt()?.inv()?, w))
}

/// `|lambda^n - zeta| > 1/2 (2n+1)^(-e)` with
/// `e = ceil(log^2 H * (48 d^2)^10)`. The bound itself is kept as its
/// base-2 logarithm; materializing it would take `e` bits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BakerBound {
    pub n: u64,
    pub degree: usize,
    #[serde(with = "crate::serde_util::bigint")]
    pub height: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    pub exponent: BigInt,
    /// Upper estimate of `log2` of the bound.
    pub log2_bound: f64,
}

impl BakerBound {
    /// Certified enclosure of `log2` of the bound.
    pub fn log2_interval(&self, prec: u32) -> DyadicInterval {
        baker_log2(&self.exponent, &BigInt::from(self.n), prec)
    }

    /// Whether the bound lies strictly below the (positive) interval `gap`.
    pub fn below(&self, gap: &DyadicInterval) -> bool {
        if !gap.is_positive() {
            return false;
        }
        let l = transcend::log2(&gap.with_prec(PREC));
        self.log2_interval(PREC).hi < l.lo
    }
}

fn baker_log2(e: &BigInt, n: &BigInt, prec: u32) -> DyadicInterval {
    let t = Interval::from_int(&(n * 2 + 1), prec);
    let l = transcend::log2(&t);
    -&(&Interval::one(prec) + &(&Interval::from_int(e, prec) * &l))
}

/// `ceil(log^2 max(H, e) * (48 d^2)^10)`.
pub fn baker_exponent(d: usize, height: &BigInt) -> BigInt {
    let ln_h = if *height <= BigInt::from(2) {
        Interval::one(PREC)
    } else {
        transcend::ln(&Interval::from_int(height, PREC))
    };
    let k = BigInt::from(48 * d * d).pow(10);
    (&ln_h.sqr() * &Interval::from_int(&k, PREC)).hi.ceil()
}

fn dh(z: &AlgebraicNumber) -> (usize, BigInt) {
    z.degree_and_height()
}

/// Whether `lambda^n = zeta`, deciding by enclosures when possible.
fn collides(lam: &AlgebraicNumber, zeta: &AlgebraicNumber, n: u64) -> Result<bool> {
    let bits = 96 + 64 - (n.max(1)).leading_zeros();
    let d = &lam.enclosure(bits + 8).powu(n) - &zeta.enclosure(bits + 8);
    if !d.contains_zero() {
        return Ok(false);
    }
    let n = i64::try_from(n).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
    Ok(lam.pow(n)?.equals(zeta))
}

pub fn baker_gap(lam: &AlgebraicNumber, zeta: &AlgebraicNumber, n: u64) -> Result<BakerBound> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    for z in [lam, zeta] {
        if !z.modulus_sq()?.is_one() {
            return Err(Error::InvalidInput("argument off the unit circle".into()));
        }
    }
    if collides(lam, zeta, n)? {
        return Err(Error::ZeroGap);
    }
    let (d1, h1) = dh(lam);
    let (d2, h2) = dh(zeta);
    let degree = d1.max(d2);
    let height = h1.max(h2);
    let exponent = baker_exponent(degree, &height);
    let l = baker_log2(&exponent, &BigInt::from(n), PREC);
    Ok(BakerBound {
        n,
        degree,
        height,
        log2_bound: l.hi.to_f64(),
        exponent,
    })
}

/// Largest `n <= bound` with `lambda^n` in `z1` (0 if none).
pub fn collision_horizon(lam: &AlgebraicNumber, z1: &[AlgebraicNumber], bound: u64) -> Result<u64> {
    if lam.root_of_unity_order().is_some() {
        return Err(Error::Torsion);
    }
    let mut m = 0;
    for zeta in z1 {
        for n in 1..=bound {
            if collides(lam, zeta, n)? {
                // at most one collision per point
                m = m.max(n);
                break;
            }
        }
    }
    Ok(m)
}

/// Certified gap function data: `g(x) >= 1/P(x)` with `P = k x^e`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapCertificate {
    /// Baker exponent, maximized over `Z_1`.
    #[serde(with = "crate::serde_util::bigint")]
    pub d_exponent: BigInt,
    pub p: IntPoly,
    /// No collision `lambda_1^n in Z_1` for `n > m`.
    pub m: u64,
    #[serde(with = "crate::serde_util::bigint")]
    pub n_prime: BigInt,
    /// Covering grid: `(x, lower bound of g(x))`.
    pub grid: Vec<[f64; 2]>,
    /// Upper end of the range where `g >= 1/P` was checked with intervals.
    pub verified_up_to: f64,
}

/// Inputs of the critical case outside the minimization itself.
#[derive(Clone, Debug)]
pub struct GapInputs<'a> {
    pub lambda: &'a AlgebraicNumber,
    pub epsilon: &'a BigRational,
    pub horizon: u64,
}

struct Piece {
    f: BranchFn,
    /// `z_1 = exp(i (theta0 + sum f1_k t_k))`
    theta0: DyadicInterval,
    f1: Vec<i64>,
}

struct Boxed {
    lo: Dyadic,
    piece: usize,
    t: Vec<DyadicInterval>,
}

impl PartialEq for Boxed {
    fn eq(&self, o: &Self) -> bool {
        self.lo == o.lo
    }
}
impl Eq for Boxed {}
impl PartialOrd for Boxed {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Boxed {
    fn cmp(&self, o: &Self) -> Ordering {
        self.lo.cmp(&o.lo)
    }
}

struct GapFn {
    pieces: Vec<Piece>,
    zetas: Vec<DyadicInterval>,
    mu: DyadicInterval,
    dim: usize,
    budget: usize,
}

impl GapFn {
    fn new(h: &TrigForm, lat: &RelationLattice, cert: &MinCertificate, z1: &[AlgebraicNumber]) -> Result<Self> {
        let chart = Chart::new(lat)?;
        let freqs = chart.freqs();
        let two_pi = transcend::pi(PREC).scale_pow2(1);
        let mut pieces = Vec::new();
        for k in chart.branches()? {
            let r = chart.offsets(&k);
            pieces.push(Piece {
                f: BranchFn::new(h.coeffs(), &r, freqs.clone(), PREC),
                theta0: &two_pi * &Interval::from_rational(&r[0], PREC),
                f1: freqs[0].clone(),
            });
        }
        let zetas = z1.iter().map(|z| angle(z, PREC)).collect::<Result<_>>()?;
        let dim = chart.dim();
        Ok(GapFn {
            pieces,
            zetas,
            mu: cert.mu_interval(PREC),
            dim,
            budget: match dim {
                0 | 1 => 20_000,
                2 => 200_000,
                _ => 400_000,
            },
        })
    }

    /// Squared distances `|z_1 - zeta|^2 = 2 - 2 cos(theta - phi)` on a box.
    fn dist2(&self, p: &Piece, t: &[DyadicInterval]) -> Vec<DyadicInterval> {
        let mut th = p.theta0.clone();
        for (k, tk) in p.f1.iter().zip(t) {
            if *k != 0 {
                th = &th + &(&Interval::from_i64(*k, PREC) * tk);
            }
        }
        let two = Interval::from_i64(2, PREC);
        self.zetas
            .iter()
            .map(|phi| &two - &(&two * &transcend::cos(&(&th - phi))))
            .collect()
    }

    /// Certified lower bound of `g(x)`; `None` when the budget runs out
    /// before a positive bound is found.
    fn lower(&self, x: &Dyadic) -> Option<Dyadic> {
        let xi = Interval::point(x.clone(), PREC);
        let r2 = Interval::one(PREC) / xi.sqr();
        let excluded = |d: &[DyadicInterval]| d.iter().any(|v| v.hi < r2.lo);
        let feasible = |d: &[DyadicInterval]| d.iter().all(|v| v.lo >= r2.hi);
        let two_pi_hi = transcend::pi(PREC).scale_pow2(1).hi;
        let mut heap = BinaryHeap::new();
        let mut ub: Option<Dyadic> = None;
        let push = |heap: &mut BinaryHeap<Reverse<Boxed>>, ub: &mut Option<Dyadic>, i: usize, t: Vec<DyadicInterval>| {
            let p = &self.pieces[i];
            let d = self.dist2(p, &t);
            if excluded(&d) {
                return;
            }
            let lo = (&Interval::point(p.f.lower(&t), PREC) - &self.mu).lo;
            let mid: Vec<Dyadic> = t.iter().map(|v| v.mid()).collect();
            let pt = p.f.point(&mid);
            if feasible(&self.dist2(p, &pt)) {
                let v = (&p.f.value(&pt) - &self.mu).hi;
                if ub.as_ref().is_none_or(|u| v < *u) {
                    *ub = Some(v);
                }
            }
            heap.push(Reverse(Boxed { lo, piece: i, t }));
        };
        let splits = if self.dim == 0 { 1 } else { 8usize };
        for i in 0..self.pieces.len() {
            let cells = splits.pow(self.dim as u32);
            for c in 0..cells {
                let mut idx = c;
                let t: Vec<DyadicInterval> = (0..self.dim)
                    .map(|_| {
                        let j = (idx % splits) as i64;
                        idx /= splits;
                        let a = (&Interval::point(two_pi_hi.clone(), PREC) * &Interval::from_i64(j, PREC)).lo;
                        let lo = a.div(&Dyadic::from_int(8), PREC, Round::Down);
                        let b = (&Interval::point(two_pi_hi.clone(), PREC) * &Interval::from_i64(j + 1, PREC)).hi;
                        let hi = b.div(&Dyadic::from_int(8), PREC, Round::Up);
                        Interval::new(lo, hi, PREC)
                    })
                    .collect();
                push(&mut heap, &mut ub, i, t);
            }
        }
        let mut steps = 0;
        while let Some(Reverse(b)) = heap.pop() {
            steps += 1;
            if let Some(u) = &ub {
                // the popped bound is global: stop once it is within half of
                // a feasible value
                if b.lo.sign() == num_bigint::Sign::Plus && b.lo.mul_pow2(1) >= *u {
                    return Some(b.lo);
                }
            }
            let (k, w) = widest(&b.t);
            if steps > self.budget || self.dim == 0 || w.msb() < -100 {
                return (b.lo.sign() == num_bigint::Sign::Plus).then_some(b.lo);
            }
            let m = b.t[k].mid();
            let mut l = b.t.clone();
            let mut r = b.t.clone();
            l[k] = Interval::new(b.t[k].lo.clone(), m.clone(), PREC);
            r[k] = Interval::new(m, b.t[k].hi.clone(), PREC);
            push(&mut heap, &mut ub, b.piece, l);
            push(&mut heap, &mut ub, b.piece, r);
        }
        // every box excluded: the constraint set is empty
        None
    }
}

fn widest(t: &[DyadicInterval]) -> (usize, Dyadic) {
    let mut best = (0, Dyadic::zero());
    for (i, x) in t.iter().enumerate() {
        let w = x.width();
        if w > best.1 {
            best = (i, w);
        }
    }
    best
}

fn pow_q(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

fn ceil_q(q: &BigRational) -> BigInt {
    q.numer().div_ceil(q.denom())
}

/// Lower dyadic approximation of `2^(k/8)`.
fn eighth_pow2(k: u32) -> Dyadic {
    let s: DyadicInterval = Interval::from_i64(2, PREC).sqrt().sqrt().sqrt();
    s.powi(k % 8).lo.mul_pow2((k / 8) as i64)
}

/// `P` with `g(x) >= 1/P(x)` on `[b, x_max]`, plus the threshold `N'` with
/// `1/P(2(2n+1)^D) > (1 - eps)^n` for all `n >= N'`.
pub fn gap_polynomial(
    h: &TrigForm,
    lat: &RelationLattice,
    cert: &MinCertificate,
    b: &ExclusionRadius,
    inputs: &GapInputs,
) -> Result<GapCertificate> {
    let unavailable = || Error::Unsupported("critical-case machinery unavailable".into());
    if !cert.finite || cert.mu_exact.is_none() {
        return Err(unavailable());
    }
    let z1 = cert.z1.as_ref().ok_or_else(unavailable)?;
    let bx = b.exact.as_ref().ok_or_else(unavailable)?.enclosure(PREC).re;
    let g = GapFn::new(h, lat, cert, z1)?;

    // fitting grid x_i = b 2^i
    let fit: Vec<Dyadic> = (0..12).map(|i| bx.hi.mul_pow2(i)).collect();
    let mut gv = Vec::new();
    for x in &fit {
        let v = g.lower(x).ok_or_else(|| Error::Unsupported("gap function not certified positive".into()))?;
        gv.push(v);
    }
    let n = gv.len();
    let slope = transcend::log2(&Interval::point(gv[n - 2].div(&gv[n - 1], PREC, Round::Up), PREC)).hi.to_f64();
    let e = (slope - 0.1).ceil().max(0.0) as u32;
    let mut c = BigRational::zero();
    for (x, v) in fit.iter().zip(&gv) {
        let t = (v.to_rational() * pow_q(&x.to_rational(), e)).recip();
        if t > c {
            c = t;
        }
    }
    let deg = e + 2;
    let mut k = ceil_q(&(c * BigRational::from_integer(4.into()))).max(BigInt::one());

    // covering check on a fresh grid b 2^((2i + 1)/8), disjoint from the fit
    let mut cover = vec![bx.lo.clone(), bx.hi.clone()];
    cover.extend((0..64u32).map(|i| &bx.hi * &eighth_pow2(2 * i + 1)));
    let mut grid = Vec::new();
    let mut need = k.clone();
    let mut vals = Vec::new();
    for x in &cover[1..] {
        let v = g.lower(x).ok_or_else(|| Error::Unsupported("gap function not certified positive".into()))?;
        vals.push(v);
    }
    for (i, x) in cover[1..].iter().enumerate() {
        // g(y) >= g(x) >= 1/P(px) >= 1/P(y) on [px, x]: g decreases, P increases
        let px = &cover[i];
        let v = &vals[i];
        let req = ceil_q(&(v.to_rational() * pow_q(&px.to_rational(), deg)).recip());
        need = need.max(req);
        grid.push([x.to_f64(), v.to_f64()]);
    }
    // margin rounds: grow k by 4 until the covering grid is certified
    while k < need {
        k *= 4;
    }
    let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
    coeffs[deg as usize] = k.clone();
    let p = IntPoly::new(coeffs);

    let mut d_exponent = BigInt::zero();
    for z in z1 {
        let (d1, h1) = dh(inputs.lambda);
        let (d2, h2) = dh(z);
        d_exponent = d_exponent.max(baker_exponent(d1.max(d2), &h1.max(h2)));
    }
    let m = collision_horizon(inputs.lambda, z1, inputs.horizon)?;
    let n_prime = threshold(&k, deg, &d_exponent, inputs.epsilon)?;
    Ok(GapCertificate {
        d_exponent,
        p,
        m,
        n_prime,
        grid,
        verified_up_to: cover.last().expect("grid").to_f64(),
    })
}

/// Least-effort `N'` with `ln k + e (ln 2 + D ln(2n+1)) < -n ln(1-eps)` for
/// all `n >= N'`, checked at `N'` together with monotonicity past it.
pub fn threshold(k: &BigInt, e: u32, d: &BigInt, eps: &BigRational) -> Result<BigInt> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::InvalidInput("epsilon outside (0, 1)".into()));
    }
    let p = PREC;
    let l = -&transcend::ln(&Interval::from_rational(&(BigRational::one() - eps), p));
    let a = &Interval::from_i64(e as i64, p) * &Interval::from_int(d, p);
    let c = &transcend::ln(&Interval::from_int(k, p))
        + &(&Interval::from_i64(e as i64, p) * &transcend::ln(&Interval::from_i64(2, p)));
    // fixed point n = (a ln(2n+1) + c) / l in floating point, then checked
    let (af, cf, lf) = (a.mid_f64(), c.mid_f64(), l.mid_f64());
    let mut n = 1.0f64;
    for _ in 0..200 {
        n = ((af * (2.0 * n + 1.0).ln() + cf) / lf).max(1.0);
    }
    let mut cand = BigInt::from_f64_ceil(n * (1.0 + 1e-9) + 1.0);
    for _ in 0..200 {
        let ni = Interval::from_int(&cand, p);
        let two_n1 = Interval::from_int(&(&cand * 2 + 1), p);
        let f = &(&(&ni * &l) - &(&a * &transcend::ln(&two_n1))) - &c;
        // derivative l - 2a/(2n+1) is increasing in n
        let df = &l - &(&(&a * &Interval::from_i64(2, p)) / &two_n1);
        if f.is_positive() && df.is_positive() {
            return Ok(cand);
        }
        cand *= 2;
    }
    Err(Error::PrecisionCap("threshold N'".into()))
}

trait FromF64Ceil {
    fn from_f64_ceil(x: f64) -> BigInt;
}

impl FromF64Ceil for BigInt {
    fn from_f64_ceil(x: f64) -> BigInt {
        num_traits::FromPrimitive::from_f64(x.ceil()).unwrap_or_else(|| {
            // beyond f64 range of exact integers the candidate only needs to
            // be an overestimate
            BigInt::from(u128::MAX)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gauss(a: BigRational, b: BigRational) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&a)
            .add(&AlgebraicNumber::i().mul(&AlgebraicNumber::from_rational(&b)).unwrap())
            .unwrap()
    }

    #[test]
    fn radius_examples() {
        let m1 = AlgebraicNumber::from_int(-1);
        let one = AlgebraicNumber::one();
        let r = exclusion_radius(std::slice::from_ref(&m1)).unwrap();
        assert!(r.exact.as_ref().unwrap().equals(&AlgebraicNumber::from_rational(&q(1, 2))));
        assert!(r.witness.equals(&one));
        let r = exclusion_radius(&[one.clone(), m1.clone()]).unwrap();
        assert!((r.approx[0] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(r.witness_ok(&[one.clone(), m1.clone()]).unwrap());
        let i = AlgebraicNumber::i();
        let four = [one, i.clone(), m1, i.neg()];
        let r = exclusion_radius(&four).unwrap();
        let want = 1.0 / (2.0 * (std::f64::consts::PI / 8.0).sin());
        assert!((r.approx[0] - want).abs() < 1e-12);
        assert!(r.witness_ok(&four).unwrap());
        assert!(exclusion_radius(&[]).is_err());
    }

    #[test]
    fn baker_examples() {
        let lam = gauss(q(3, 5), q(4, 5));
        let one = AlgebraicNumber::one();
        let b = baker_gap(&lam, &one, 2).unwrap();
        assert!(b.log2_bound < -1e20);
        let gap = (&lam.enclosure(128).powu(2) - &one.enclosure(128)).abs();
        assert!(b.below(&gap));
        let b3 = baker_gap(&lam, &one, 3).unwrap();
        assert!(b3.log2_bound < b.log2_bound);
        let i = AlgebraicNumber::i();
        assert_eq!(baker_gap(&i, &AlgebraicNumber::from_int(-1), 2).unwrap_err(), Error::ZeroGap);
    }

    #[test]
    fn horizon_examples() {
        let lam = gauss(q(3, 5), q(4, 5));
        assert_eq!(collision_horizon(&lam, &[AlgebraicNumber::one()], 50).unwrap(), 0);
        assert_eq!(collision_horizon(&lam, &[AlgebraicNumber::from_int(-1)], 50).unwrap(), 0);
        let l3 = lam.pow(3).unwrap();
        assert_eq!(collision_horizon(&lam, &[l3], 50).unwrap(), 3);
        assert_eq!(collision_horizon(&AlgebraicNumber::i(), &[], 5).unwrap_err(), Error::Torsion);
    }

    #[test]
    fn threshold_holds() {
        let k = BigInt::from(10);
        let n = threshold(&k, 4, &BigInt::from(1000), &q(1, 100)).unwrap();
        let nf = num_traits::ToPrimitive::to_f64(&n).unwrap();
        let lhs = 10f64.ln() + 4.0 * (2f64.ln() + 1000.0 * (2.0 * nf + 1.0f64).ln());
        assert!(lhs < -nf * (0.99f64).ln());
        // not wildly above the true crossing
        let half = nf / 4.0;
        let lhs = 10f64.ln() + 4.0 * (2f64.ln() + 1000.0 * (2.0 * half + 1.0f64).ln());
        assert!(lhs > -half * (0.99f64).ln());
    }

    #[test]
    fn gap_polynomial_single_term() {
        use crate::relations::Exactness;
        use crate::torusmin::minimize_h;
        let h = TrigForm::from_gaussian(&[(q(1, 2), q(0, 1))]).unwrap();
        let lat = RelationLattice::from_basis(1, &[], Exactness::Complete).unwrap();
        let cert = minimize_h(&h, &lat).unwrap();
        let b = cert.exclusion_radius.clone().unwrap();
        let lam = gauss(q(3, 5), q(4, 5));
        let eps = q(1, 100);
        let inputs = GapInputs { lambda: &lam, epsilon: &eps, horizon: 50 };
        let g = gap_polynomial(&h, &lat, &cert, &b, &inputs).unwrap();
        // g(x) = 1 - cos(2 asin(1/(2x))) = 1/(2 x^2)
        assert!(g.p.degree() >= 2 && g.p.degree() <= 4, "{:?}", g.p);
        assert_eq!(g.m, 0);
        assert_eq!(g.grid.len(), 65);
        for [x, lo] in &g.grid {
            let exact = 1.0 / (2.0 * x * x);
            assert!(*lo <= exact * (1.0 + 1e-9) && *lo > exact / 4.0, "{x} {lo} {exact}");
            let k = num_traits::ToPrimitive::to_f64(&g.p.lc()).unwrap();
            assert!(lo * k * x.powi(g.p.degree() as i32) >= 1.0);
        }
        assert!(g.verified_up_to > 1e4);
        assert!(g.n_prime > BigInt::from(10u64).pow(20));
    }
}
