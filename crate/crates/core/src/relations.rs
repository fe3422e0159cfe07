//! Multiplicative relations among unit-modulus algebraic numbers, the torus
//! they cut out, and simultaneous approximation search on that torus.
//!
//! Candidates come from LLL on the scaled argument vector. Each candidate is
//! then proved or refuted with a Liouville-type lower bound: a nonzero
//! algebraic number of degree at most `D` and height at most `h` has modulus
//! at least `exp(-D h)`, so an enclosure of `beta - 1` below that bound shows
//! `beta = 1` exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::ball::{Ball, Cx};
use crate::algebraic::cbox::ComplexBox;
use crate::algebraic::dyadic::Dyadic;
use crate::algebraic::interval::{rational_interval, CInterval, DyadicCInterval, DyadicInterval};
use crate::algebraic::number::AlgebraicNumber;
use crate::algebraic::transcend;
use crate::error::{Error, Result};
use crate::lattice;

const START_PREC: u32 = 128;
const MAX_PREC: u32 = 4096;
const MAX_VERIFY_BITS: u64 = 1 << 21;
const SEARCH_PREC: u32 = 160;

/// How much of the relation lattice is known to be captured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    /// The basis generates the whole lattice.
    Complete,
    /// Every relation of max-norm at most `bound` lies in the span of the
    /// basis. `certified` is false when the reduced basis failed to separate
    /// such relations at the highest precision tried.
    CompleteUpToBound { bound: u64, certified: bool },
}

/// Basis (in Hermite normal form) of integer vectors `v` with
/// `prod lambda_j^{v_j} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationLattice {
    pub m: usize,
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
    pub exactness: Exactness,
    /// Argument precision at which the search settled.
    pub precision: u32,
}

impl RelationLattice {
    /// Lattice spanned by the given vectors, taken on trust. Useful for
    /// callers that know their relations by construction.
    pub fn from_basis(m: usize, basis: &[Vec<i64>], exactness: Exactness) -> Result<Self> {
        if basis.iter().any(|v| v.len() != m) {
            return Err(Error::InvalidInput("basis vector of wrong length".into()));
        }
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let h = lattice::hnf(&rows);
        Ok(RelationLattice {
            m,
            rank: h.len(),
            basis: to_i64_rows(&h)?,
            exactness,
            precision: 0,
        })
    }

    /// Whether `v` is an integer combination of the basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        let b = big_rows(&self.basis);
        let w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        lattice::hnf_contains(&b, &w)
    }

    pub fn basis_big(&self) -> Vec<Vec<BigInt>> {
        big_rows(&self.basis)
    }
}

fn big_rows(b: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    b.iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn to_i64_rows(h: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    h.iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Unsupported("relation entry exceeds 64 bits".into()))
                })
                .collect()
        })
        .collect()
}

/// A point of the unit-circle product.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusPoint {
    pub coords: Vec<AlgebraicNumber>,
}

impl TorusPoint {
    pub fn new(coords: Vec<AlgebraicNumber>) -> Self {
        TorusPoint { coords }
    }

    /// Whether every lattice relation holds at this point (exact).
    pub fn satisfies(&self, lat: &RelationLattice) -> Result<bool> {
        if self.coords.len() != lat.m {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let u = Units::Free(&self.coords);
        for v in &lat.basis {
            if !u.verify(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cheap numerical consistency check with the lattice.
    fn roughly_satisfies(&self, lat: &RelationLattice) -> bool {
        let encs: Vec<DyadicCInterval> = self.coords.iter().map(|z| z.enclosure(64)).collect();
        lat.basis.iter().all(|v| match product(&encs, v, 96) {
            Some(p) => (&p - &CInterval::one(96)).abs().lo < Dyadic::pow2(-20),
            None => false,
        })
    }
}

/// Numbers whose relations are sought.
enum Units<'a> {
    /// Unit-modulus numbers, used as given.
    Free(&'a [AlgebraicNumber]),
    /// `gamma_j / |gamma_j|` for roots of one integer polynomial of degree
    /// `ambient`, all of the same modulus. Working with `gamma` keeps the
    /// degrees at most `ambient`.
    Dominant {
        gammas: &'a [AlgebraicNumber],
        ambient: usize,
    },
}

fn height_upper(x: &AlgebraicNumber) -> f64 {
    let p = x.poly();
    let ss: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    let ln_sq = match ss.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => ss.bits() as f64 * std::f64::consts::LN_2,
    };
    let d = if x.is_minimal() { p.degree().max(1) } else { 1 };
    (ln_sq / 2.0) / d as f64 * (1.0 + 1e-9) + 1e-12
}

fn falling(k: usize, r: usize) -> f64 {
    (0..r).map(|i| k.saturating_sub(i).max(1) as f64).product()
}

fn product(encs: &[DyadicCInterval], exps: &[i64], prec: u32) -> Option<DyadicCInterval> {
    let mut acc = CInterval::one(prec);
    for (z, &e) in encs.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        let mut p = z.with_prec(prec).powu(e.unsigned_abs());
        if e < 0 {
            p = p.recip()?;
        }
        acc = &acc * &p;
    }
    Some(acc)
}

impl Units<'_> {
    fn m(&self) -> usize {
        match self {
            Units::Free(l) => l.len(),
            Units::Dominant { gammas, .. } => gammas.len(),
        }
    }

    fn numbers(&self) -> &[AlgebraicNumber] {
        match self {
            Units::Free(l) => l,
            Units::Dominant { gammas, .. } => gammas,
        }
    }

    /// Arguments divided by `2 pi`, each of width below `2^-(prec+2)`.
    fn turns(&self, prec: u32) -> Result<Vec<DyadicInterval>> {
        let w = prec + 64;
        let two_pi = transcend::pi(w).scale_pow2(1);
        self.numbers()
            .iter()
            .map(|z| {
                let a = transcend::arg(&z.enclosure(w)).ok_or(Error::DivisionByZero)?;
                Ok(&a / &two_pi)
            })
            .collect()
    }

    /// Bits `L` such that the checked quantity is either exactly zero or of
    /// modulus above `2^-L`.
    fn liouville_bits(&self, v: &[i64]) -> f64 {
        let nums = self.numbers();
        let (d, h) = match self {
            Units::Free(_) => {
                let mut d = 1.0;
                let mut h = 0.0;
                for (z, &e) in nums.iter().zip(v) {
                    if e != 0 {
                        d *= z.poly().degree().max(1) as f64;
                        h += e.unsigned_abs() as f64 * height_upper(z);
                    }
                }
                (d, h)
            }
            Units::Dominant { ambient, .. } => {
                // beta^2 = prod gamma_j^(2 v_j) * (gamma_a conj(gamma_a))^(-s)
                let s: i64 = v.iter().sum();
                let a = v.iter().position(|&e| e != 0);
                let mut roots = 0;
                let mut deg = 1.0;
                let mut h = 0.0;
                for (z, &e) in nums.iter().zip(v) {
                    if e != 0 {
                        roots += 1;
                        deg *= z.poly().degree().max(1) as f64;
                        h += 2.0 * e.unsigned_abs() as f64 * height_upper(z);
                    }
                }
                if let (Some(a), true) = (a, s != 0) {
                    roots += 1;
                    deg *= nums[a].poly().degree().max(1) as f64;
                    h += 2.0 * s.unsigned_abs() as f64 * height_upper(&nums[a]);
                }
                (deg.min(falling(*ambient, roots)), h)
            }
        };
        d * (h + std::f64::consts::LN_2) / std::f64::consts::LN_2 + 2.0
    }

    /// Enclosure of the checked quantity minus one: `beta - 1` for free
    /// numbers and `beta^2 - 1` in the dominant setting.
    fn defect(&self, v: &[i64], bits: u32) -> Option<DyadicCInterval> {
        let prec = bits + 32;
        let encs: Vec<DyadicCInterval> = self.numbers().iter().map(|z| z.enclosure(prec)).collect();
        let q = match self {
            Units::Free(_) => product(&encs, v, prec)?,
            Units::Dominant { .. } => {
                let doubled: Vec<i64> = v.iter().map(|&e| 2 * e).collect();
                let mut q = product(&encs, &doubled, prec)?;
                let s: i64 = v.iter().sum();
                if s != 0 {
                    let a = v.iter().position(|&e| e != 0)?;
                    let r2 = CInterval::real(encs[a].norm_sq());
                    q = &q * &product(&[r2], &[-s], prec)?;
                }
                q
            }
        };
        Some(&q - &CInterval::one(prec))
    }

    /// Sign of `Re beta` in the dominant setting, where `beta^2 = 1` leaves
    /// `beta = +-1`.
    fn beta_is_plus_one(&self, v: &[i64]) -> Option<bool> {
        let prec = 96;
        let units: Vec<DyadicCInterval> = self
            .numbers()
            .iter()
            .map(|z| {
                let e = z.enclosure(prec);
                let r = e.abs().recip()?;
                Some(e.scale(&r))
            })
            .collect::<Option<_>>()?;
        product(&units, v, prec)?.re.sign().map(|s| s > 0)
    }

    /// Exact test of `prod lambda_j^{v_j} = 1`.
    fn verify(&self, v: &[i64]) -> Result<bool> {
        if v.iter().all(|&e| e == 0) {
            return Ok(true);
        }
        let need = self.liouville_bits(v).ceil();
        let capped = !need.is_finite() || need > MAX_VERIFY_BITS as f64;
        let need = if capped { MAX_VERIFY_BITS as u32 } else { need as u32 };
        let target = Dyadic::pow2(-2 * need as i64);
        let mut bits = 64u32;
        loop {
            if let Some(d) = self.defect(v, bits) {
                let ns = d.norm_sq();
                if ns.lo.sign() == num_bigint::Sign::Plus {
                    return Ok(false);
                }
                if !capped && ns.hi < target {
                    return match self {
                        Units::Free(_) => Ok(true),
                        Units::Dominant { .. } => {
                            self.beta_is_plus_one(v).ok_or(Error::DivisionByZero)
                        }
                    };
                }
            }
            if bits > need + 64 && capped {
                return Err(Error::PrecisionCap("relation check exceeds the precision cap".into()));
            }
            if bits as u64 > 4 * MAX_VERIFY_BITS {
                return Err(Error::PrecisionCap("relation check did not settle".into()));
            }
            bits = if bits < need { (bits * 4).min(need + 64) } else { bits * 2 };
        }
    }
}

fn search(units: &Units, bound: u64) -> Result<RelationLattice> {
    let m = units.m();
    if m == 0 {
        return Ok(RelationLattice {
            m,
            basis: vec![],
            rank: 0,
            exactness: Exactness::Complete,
            precision: 0,
        });
    }
    let b = BigInt::from(bound);
    let mb = &b * BigInt::from(m);
    let lmax_sq = BigRational::from_integer(&b * &b * BigInt::from(m) + &mb * &mb);
    // LLL finds vectors within this factor (squared) of the shortest
    let window = BigRational::from_integer(BigInt::one() << (m + 1));
    let mut prec = START_PREC;
    loop {
        let turns = units.turns(prec)?;
        let scale = Dyadic::pow2(prec as i64);
        let half = Dyadic::pow2(-1);
        let a: Vec<BigInt> = turns
            .iter()
            .map(|t| (&(&t.mid() * &scale) + &half).floor())
            .collect();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
        for (j, aj) in a.iter().enumerate() {
            let mut r = vec![BigInt::zero(); m + 1];
            r[j] = BigInt::one();
            r[m] = aj.clone();
            rows.push(r);
        }
        let mut last = vec![BigInt::zero(); m + 1];
        last[m] = BigInt::one() << prec as usize;
        rows.push(last);
        let red = lattice::lll(&rows);

        let mut verified = Vec::new();
        let mut others = Vec::new();
        let mut rejected = false;
        for r in red {
            let l1: BigInt = r[..m].iter().map(|x| x.abs()).sum();
            let small = !l1.is_zero()
                && r[m].abs() <= l1
                && BigRational::from_integer(lattice::norm_sq(&r)) <= &lmax_sq * &window;
            if small {
                let v: Option<Vec<i64>> = r[..m].iter().map(|x| x.to_i64()).collect();
                match v {
                    Some(v) if units.verify(&v)? => {
                        verified.push(r);
                        continue;
                    }
                    _ => rejected = true,
                }
            }
            others.push(r);
        }
        let rel: Vec<Vec<BigInt>> = verified.iter().map(|r| r[..m].to_vec()).collect();
        let h = lattice::hnf(&rel);
        let mut ordered = verified.clone();
        ordered.extend(others);
        let gs = lattice::gram_schmidt_norms(&ordered);
        let separated = gs[verified.len()..].iter().all(|n| *n > lmax_sq);
        if !rejected && separated {
            return finish(m, h, bound, true, prec);
        }
        if prec >= MAX_PREC {
            return finish(m, h, bound, false, prec);
        }
        prec *= 2;
    }
}

fn finish(m: usize, h: Vec<Vec<BigInt>>, bound: u64, certified: bool, prec: u32) -> Result<RelationLattice> {
    Ok(RelationLattice {
        m,
        rank: h.len(),
        basis: to_i64_rows(&h)?,
        exactness: Exactness::CompleteUpToBound { bound, certified },
        precision: prec,
    })
}

/// Relation lattice of unit-modulus numbers, up to max-norm `bound`.
pub fn compute_lattice(lambdas: &[AlgebraicNumber], bound: u64) -> Result<RelationLattice> {
    for l in lambdas {
        if !l.modulus_sq()?.is_one() {
            return Err(Error::InvalidInput("input is not of unit modulus".into()));
        }
    }
    search(&Units::Free(lambdas), bound)
}

/// Relation lattice of `gamma_j / |gamma_j|` where the `gamma_j` are roots of
/// one integer polynomial of degree `ambient` sharing a common modulus.
///
/// The common modulus is the caller's guarantee (it comes from the dominance
/// proof); it is not re-checked here.
pub fn compute_lattice_dominant(
    gammas: &[AlgebraicNumber],
    ambient: usize,
    bound: u64,
) -> Result<RelationLattice> {
    search(&Units::Dominant { gammas, ambient }, bound)
}

/// Exact check of one relation for unit-modulus numbers.
pub fn holds(lambdas: &[AlgebraicNumber], v: &[i64]) -> Result<bool> {
    if lambdas.len() != v.len() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    Units::Free(lambdas).verify(v)
}

/// Exact check of one relation among `gamma_j / |gamma_j|`.
pub fn holds_dominant(gammas: &[AlgebraicNumber], ambient: usize, v: &[i64]) -> Result<bool> {
    if gammas.len() != v.len() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    Units::Dominant { gammas, ambient }.verify(v)
}

/// `(lambda_1^n, ..., lambda_m^n)`, computed exactly.
pub fn orbit_point(lambdas: &[AlgebraicNumber], n: u64) -> Result<TorusPoint> {
    let e = i64::try_from(n).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
    let coords = lambdas.iter().map(|l| l.pow(e)).collect::<Result<Vec<_>>>()?;
    Ok(TorusPoint { coords })
}

/// `orbit_point` with a numerical membership check against `lat`.
pub fn orbit_point_in(lambdas: &[AlgebraicNumber], lat: &RelationLattice, n: u64) -> Result<TorusPoint> {
    let p = orbit_point(lambdas, n)?;
    debug_assert!(p.roughly_satisfies(lat), "orbit point left the torus");
    Ok(p)
}

enum Near {
    Yes,
    No,
    Unsure,
}

fn ball_of(z: &AlgebraicNumber, w: u32) -> Ball {
    Ball::from_box(&ComplexBox::from_cinterval(&z.enclosure(w)))
}

fn near_ball(z: &Ball, t: &Ball, eps: &DyadicInterval) -> Near {
    let d = z.c.sub(&t.c);
    let s = &(&d.re * &d.re) + &(&d.im * &d.im);
    let r = &z.r + &t.r;
    let far = &eps.hi + &r;
    if s > &far * &far {
        return Near::No;
    }
    let close = &eps.lo - &r;
    if close.sign() != num_bigint::Sign::Minus && s <= &close * &close {
        return Near::Yes;
    }
    Near::Unsure
}

/// Decide `|lambda^n - t| <= eps` when the running discs were inconclusive.
fn near_exact(l: &AlgebraicNumber, t: &AlgebraicNumber, n: u64, eps: &BigRational) -> Result<bool> {
    let eps2 = eps * eps;
    let mut bits = 2 * SEARCH_PREC;
    while bits <= MAX_PREC {
        let p = bits + 2 * (64 - n.leading_zeros());
        let z = l.enclosure(p).with_prec(p).powu(n);
        let d = (&z - &t.enclosure(p).with_prec(p)).norm_sq();
        let e = rational_interval(&eps2, p);
        if d.hi <= e.lo {
            return Ok(true);
        }
        if d.lo > e.hi {
            return Ok(false);
        }
        bits *= 2;
    }
    let e = i64::try_from(n).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
    let d = l.pow(e)?.sub(t)?.modulus_sq()?;
    let q = AlgebraicNumber::from_rational(&eps2);
    Ok(d.cmp_real(&q)? != Ordering::Greater)
}

/// Least `n <= budget` with `max_j |lambda_j^n - target_j| <= epsilon`.
pub fn density_search(
    lambdas: &[AlgebraicNumber],
    lat: &RelationLattice,
    target: &TorusPoint,
    epsilon: &BigRational,
    budget: u64,
) -> Result<Option<u64>> {
    let m = lambdas.len();
    if lat.m != m || target.coords.len() != m {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    if epsilon.is_negative() {
        return Err(Error::InvalidInput("negative epsilon".into()));
    }
    if !target.satisfies(lat)? {
        return Err(Error::InvalidInput("target violates lattice relations".into()));
    }
    let w = SEARCH_PREC;
    let lam: Vec<Ball> = lambdas.iter().map(|l| ball_of(l, w)).collect();
    let tgt: Vec<Ball> = target.coords.iter().map(|t| ball_of(t, w)).collect();
    let eps = rational_interval(epsilon, w);
    let mut cur: Vec<Ball> = vec![Ball::exact(Cx::one()); m];
    for n in 0..=budget {
        let mut all = true;
        let mut none = false;
        let mut unsure = Vec::new();
        for j in 0..m {
            match near_ball(&cur[j], &tgt[j], &eps) {
                Near::Yes => {}
                Near::No => {
                    none = true;
                    break;
                }
                Near::Unsure => {
                    all = false;
                    unsure.push(j);
                }
            }
        }
        if !none {
            if all {
                return Ok(Some(n));
            }
            let mut ok = true;
            for j in unsure {
                if !near_exact(&lambdas[j], &target.coords[j], n, epsilon)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(n));
            }
        }
        if n < budget {
            for j in 0..m {
                cur[j] = cur[j].mul(&lam[j], w);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::poly::Poly;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// `(3 + 4i)/5` or its conjugate.
    fn pyth(sign: i64) -> AlgebraicNumber {
        let r = AlgebraicNumber::from_rational(&q(3, 5));
        let i = AlgebraicNumber::i().mul(&AlgebraicNumber::from_rational(&q(4 * sign, 5))).unwrap();
        r.add(&i).unwrap()
    }

    #[test]
    fn conjugate_pair_relation() {
        let l = compute_lattice(&[pyth(1), pyth(-1)], 1000).unwrap();
        assert_eq!(l.basis, vec![vec![1, 1]]);
        assert_eq!(l.rank, 1);
        assert_eq!(
            l.exactness,
            Exactness::CompleteUpToBound { bound: 1000, certified: true }
        );
    }

    #[test]
    fn non_torsion_has_rank_zero() {
        let l = compute_lattice(&[pyth(1)], 50).unwrap();
        assert_eq!(l.rank, 0);
        assert!(l.basis.is_empty());
    }

    #[test]
    fn i_has_order_four() {
        let l = compute_lattice(&[AlgebraicNumber::i()], 1000).unwrap();
        assert_eq!(l.basis, vec![vec![4]]);
    }

    #[test]
    fn mixed_relations() {
        // i, -1 and (3+4i)/5: relations 4e1, e1 ... -1 = i^2
        let m1 = AlgebraicNumber::from_int(-1);
        let l = compute_lattice(&[AlgebraicNumber::i(), m1, pyth(1)], 100).unwrap();
        assert_eq!(l.rank, 2);
        assert!(l.contains(&[2, -1, 0]));
        assert!(l.contains(&[4, 0, 0]));
        assert!(!l.contains(&[1, 0, 0]));
        assert!(!l.contains(&[0, 0, 1]));
    }

    #[test]
    fn non_unit_rejected() {
        let z = AlgebraicNumber::from_int(2);
        assert!(compute_lattice(&[z], 10).is_err());
    }

    #[test]
    fn dominant_form() {
        // roots of x^2 - 2x + 5 = 1 +- 2i, modulus sqrt 5
        let p = Poly::from_i64s(&[5, -2, 1]);
        let roots = crate::algebraic::number::isolate_roots(&p);
        let up: Vec<_> = roots.iter().filter(|r| r.approx().1 > 0.0).cloned().collect();
        let both = vec![up[0].clone(), up[0].conj()];
        let l = compute_lattice_dominant(&both, 2, 100).unwrap();
        assert_eq!(l.basis, vec![vec![1, 1]]);
        let one = compute_lattice_dominant(&up, 2, 100).unwrap();
        assert_eq!(one.rank, 0);
        assert!(holds_dominant(&both, 2, &[3, 3]).unwrap());
        assert!(!holds_dominant(&both, 2, &[1, -1]).unwrap());
    }

    #[test]
    fn orbit_points() {
        let z = orbit_point(&[pyth(1), AlgebraicNumber::i()], 0).unwrap();
        assert!(z.coords.iter().all(|c| c.is_one()));
        let z = orbit_point(&[pyth(1)], 2).unwrap();
        let want = AlgebraicNumber::from_rational(&q(-7, 25))
            .add(&AlgebraicNumber::i().mul(&AlgebraicNumber::from_rational(&q(24, 25))).unwrap())
            .unwrap();
        assert!(z.coords[0].equals(&want));
        let z = orbit_point(&[AlgebraicNumber::i()], 3).unwrap();
        assert!(z.coords[0].equals(&AlgebraicNumber::i().neg()));
    }

    #[test]
    fn density() {
        let lam = [pyth(1)];
        let lat = compute_lattice(&lam, 50).unwrap();
        let one = TorusPoint::new(vec![AlgebraicNumber::one()]);
        assert_eq!(density_search(&lam, &lat, &one, &q(0, 1), 10).unwrap(), Some(0));
        let m1 = TorusPoint::new(vec![AlgebraicNumber::from_int(-1)]);
        let n = density_search(&lam, &lat, &m1, &q(1, 5), 100_000).unwrap().unwrap();
        let (re, im) = lam[0].pow(n as i64).unwrap().approx();
        assert!(((re + 1.0).powi(2) + im * im).sqrt() <= 0.2);
        for k in 0..n {
            let (re, im) = lam[0].pow(k as i64).unwrap().approx();
            assert!(((re + 1.0).powi(2) + im * im).sqrt() > 0.2);
        }
    }

    #[test]
    fn density_rejects_off_torus() {
        let lam = [AlgebraicNumber::i()];
        let lat = compute_lattice(&lam, 100).unwrap();
        let bad = TorusPoint::new(vec![pyth(1)]);
        let e = density_search(&lam, &lat, &bad, &q(1, 10), 10).unwrap_err();
        assert!(e.to_string().contains("target violates lattice relations"));
    }
}
