//! Characteristic roots, the exponential-polynomial closed form and the
//! normalization by a dominant positive root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::dyadic::{Dyadic, Round};
use crate::algebraic::interval::{DyadicCInterval, DyadicInterval, Interval};
use crate::algebraic::number::{isolate_roots, AlgebraicNumber};
use crate::algebraic::poly::Poly;
use crate::error::{Error, Result};
use crate::lrs::Lrs;
use crate::{IntPoly, RatPoly};

/// A characteristic root together with its coefficient in
/// `u_n = sum c_i alpha_i^n`. The coefficient is `field(root)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootTerm {
    pub root: AlgebraicNumber,
    pub coeff: AlgebraicNumber,
    #[serde(skip)]
    pub field: RatPoly,
}

/// Closed form `u_n = sum a_i rho_i^n + sum (c_j gamma_j^n + conj)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDecomposition {
    pub real: Vec<RootTerm>,
    /// One member per conjugate pair, in the upper half-plane.
    pub complex: Vec<RootTerm>,
    /// Modulus shared by the dominant roots (among nonzero terms).
    pub dominant_modulus: Option<AlgebraicNumber>,
    /// Indices into `real` and `complex` of the dominant nonzero terms.
    pub dominant_real: Vec<usize>,
    pub dominant_complex: Vec<usize>,
}

/// A term of `r(n) = sum coeff * (root / rho)^n`, with certified bounds
/// `|coeff| <= coeff_abs_upper` and `|root / rho| <= ratio_upper < 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualTerm {
    pub root: AlgebraicNumber,
    pub coeff: AlgebraicNumber,
    /// Counts the conjugate too.
    pub multiplicity: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub coeff_abs_upper: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub ratio_upper: BigRational,
}

/// `u_n / rho^n = a + sum (c_j lambda_j^n + conj) + r(n)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DominantNormalization {
    pub rho: AlgebraicNumber,
    pub a: AlgebraicNumber,
    /// Dominant complex roots `gamma_j`, upper half-plane.
    pub gammas: Vec<AlgebraicNumber>,
    /// `lambda_j = gamma_j / rho`, unit modulus.
    pub lambdas: Vec<AlgebraicNumber>,
    pub cs: Vec<AlgebraicNumber>,
    pub residual: Vec<ResidualTerm>,
}

/// Result of the dominant-root analysis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Dominance {
    /// Every coefficient vanishes.
    Zero,
    /// No positive real root among the dominant ones: infinitely many
    /// negative and infinitely many positive terms.
    Oscillating,
    Normalized(DominantNormalization),
}

/// `|r(n)| < (1 - epsilon)^n` for all `n >= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBound {
    #[serde(with = "crate::serde_util::rational")]
    pub epsilon: BigRational,
    #[serde(with = "crate::serde_util::bigint")]
    pub n: BigInt,
}

/// `R(y)` with `c_beta = R(beta) / p'(beta)` for every simple root `beta`.
fn residue_numerator(p: &IntPoly, u: &[BigInt]) -> IntPoly {
    let k = p.degree();
    let mut c = vec![BigInt::zero(); k];
    for (j, uj) in u.iter().enumerate().take(k) {
        for i in j + 1..=k {
            c[i - j - 1] += uj * p.coeff(i);
        }
    }
    Poly::new(c)
}

/// Coefficient of `beta` as a polynomial in `beta` reduced modulo the
/// defining polynomial of `beta`.
fn coeff_field(p: &IntPoly, num: &IntPoly, beta: &AlgebraicNumber) -> RatPoly {
    let f = beta.poly().to_rational();
    let dp = p.derivative().to_rational();
    let (g, s, _) = dp.ext_gcd(&f);
    debug_assert!(g.degree() == 0, "p' shares no root with a factor of squarefree p");
    (&num.to_rational() * &s).rem(&f)
}

pub fn decompose(s: &Lrs) -> Result<RootDecomposition> {
    if !s.is_simple() {
        return Err(Error::NotSimple);
    }
    let p = s.char_poly();
    let num = residue_numerator(&p, s.initial());
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for root in isolate_roots(&p) {
        let upper = !root.is_real() && root.isolating_box().im_lo > Dyadic::zero();
        if !root.is_real() && !upper {
            continue;
        }
        let field = coeff_field(&p, &num, &root);
        let coeff = root.eval_poly(&field)?;
        let t = RootTerm { root, coeff, field };
        if upper {
            complex.push(t);
        } else {
            real.push(t);
        }
    }
    let mut d = RootDecomposition {
        real,
        complex,
        dominant_modulus: None,
        dominant_real: Vec::new(),
        dominant_complex: Vec::new(),
    };
    d.find_dominant()?;
    Ok(d)
}

/// `|x|^2` exactly.
fn modulus_sq(x: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    if x.is_real() {
        x.pow(2)
    } else {
        x.modulus_sq()
    }
}

fn norm_sq_interval(x: &AlgebraicNumber, bits: u32) -> DyadicInterval {
    x.enclosure(bits).norm_sq()
}

impl RootDecomposition {
    pub fn order(&self) -> usize {
        self.real.len() + 2 * self.complex.len()
    }

    fn nonzero(&self) -> Vec<(bool, usize)> {
        let r = (0..self.real.len()).filter(|&i| !self.real[i].coeff.is_zero()).map(|i| (true, i));
        let c = (0..self.complex.len())
            .filter(|&i| !self.complex[i].coeff.is_zero())
            .map(|i| (false, i));
        r.chain(c).collect()
    }

    fn term(&self, (is_real, i): (bool, usize)) -> &RootTerm {
        if is_real {
            &self.real[i]
        } else {
            &self.complex[i]
        }
    }

    fn find_dominant(&mut self) -> Result<()> {
        let live = self.nonzero();
        if live.is_empty() {
            return Ok(());
        }
        let mut bits = 64;
        let cands = loop {
            let iv: Vec<DyadicInterval> = live.iter().map(|&k| norm_sq_interval(&self.term(k).root, bits)).collect();
            let best = iv.iter().map(|x| x.lo.clone()).max().unwrap();
            let cands: Vec<usize> = (0..live.len()).filter(|&i| iv[i].hi >= best).collect();
            if cands.len() == 1 || bits >= 512 {
                break cands;
            }
            bits *= 2;
        };
        let chosen: Vec<usize> = if cands.len() == 1 {
            cands
        } else {
            let ex = cands
                .iter()
                .map(|&i| modulus_sq(&self.term(live[i]).root))
                .collect::<Result<Vec<_>>>()?;
            let mut best = 0;
            for i in 1..ex.len() {
                if ex[i].cmp_real(&ex[best])? == Ordering::Greater {
                    best = i;
                }
            }
            (0..ex.len()).filter(|&i| ex[i].equals(&ex[best])).map(|i| cands[i]).collect()
        };
        for i in chosen {
            match live[i] {
                (true, j) => self.dominant_real.push(j),
                (false, j) => self.dominant_complex.push(j),
            }
        }
        let first = if let Some(&j) = self.dominant_real.first() {
            self.real[j].root.abs_real()?
        } else {
            modulus_sq(&self.complex[self.dominant_complex[0]].root)?.sqrt()?
        };
        self.dominant_modulus = Some(first);
        Ok(())
    }

    /// Interval value of the closed form at `n`.
    pub fn eval_interval(&self, n: u64, bits: u32) -> DyadicInterval {
        let mut acc = Interval::zero(bits + 32);
        for t in &self.real {
            let v = &t.coeff.enclosure(bits) * &t.root.enclosure(bits).powu(n);
            acc = &acc + &v.re;
        }
        for t in &self.complex {
            let v = &t.coeff.enclosure(bits) * &t.root.enclosure(bits).powu(n);
            acc = &acc + &v.re.scale_pow2(1);
        }
        acc
    }
}

/// Upper bound on `|x|` as a rational.
fn abs_upper(z: &DyadicCInterval) -> BigRational {
    z.abs().hi.round(64, Round::Up).to_rational()
}

pub fn dominant_normalize(d: &RootDecomposition) -> Result<Dominance> {
    let Some(_) = d.dominant_modulus else {
        return Ok(Dominance::Zero);
    };
    let pos: Vec<usize> = d
        .dominant_real
        .iter()
        .copied()
        .filter(|&j| d.real[j].root.sign() == Ok(1))
        .collect();
    if pos.is_empty() {
        return Ok(Dominance::Oscillating);
    }
    if d.dominant_real.len() > 1 {
        // rho and -rho: quotient -1
        return Err(Error::Degenerate);
    }
    let rt = &d.real[pos[0]];
    let rho = rt.root.clone();
    let gammas: Vec<AlgebraicNumber> = d.dominant_complex.iter().map(|&j| d.complex[j].root.clone()).collect();
    for (i, g) in gammas.iter().enumerate() {
        if g.ratio_torsion_order(&rho).is_some() {
            return Err(Error::Degenerate);
        }
        for h in &gammas[..i] {
            if g.ratio_torsion_order(h).is_some() || g.conj().ratio_torsion_order(h).is_some() {
                return Err(Error::Degenerate);
            }
        }
    }
    let inv_rho = rho.inv()?;
    let lambdas = gammas.iter().map(|g| g.mul(&inv_rho)).collect::<Result<Vec<_>>>()?;
    let cs = d.dominant_complex.iter().map(|&j| d.complex[j].coeff.clone()).collect();

    let mut residual = Vec::new();
    for k in d.nonzero() {
        let dominant = if k.0 {
            d.dominant_real.contains(&k.1)
        } else {
            d.dominant_complex.contains(&k.1)
        };
        if dominant {
            continue;
        }
        let t = d.term(k);
        let mut bits = 96;
        let (c_up, r_up) = loop {
            let c = abs_upper(&t.coeff.enclosure(bits));
            let z = t.root.enclosure(bits);
            let r = rho.enclosure(bits).re;
            let q = &z.abs() / &r.abs();
            let r_up = q.hi.round(64, Round::Up).to_rational();
            if r_up < BigRational::one() {
                break (c, r_up);
            }
            bits *= 2;
        };
        residual.push(ResidualTerm {
            root: t.root.clone(),
            coeff: t.coeff.clone(),
            multiplicity: if k.0 { 1 } else { 2 },
            coeff_abs_upper: c_up,
            ratio_upper: r_up,
        });
    }
    Ok(Dominance::Normalized(DominantNormalization {
        rho,
        a: rt.coeff.clone(),
        gammas,
        lambdas,
        cs,
        residual,
    }))
}

impl DominantNormalization {
    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    /// Certified upper bound on `|r(n)|`.
    pub fn residual_upper(&self, n: u64, prec: u32) -> DyadicInterval {
        let mut acc = Interval::zero(prec);
        for t in &self.residual {
            let c = Interval::from_rational(&t.coeff_abs_upper, prec);
            let r = Interval::from_rational(&t.ratio_upper, prec).powi(n as u32);
            let m = Interval::from_i64(t.multiplicity as i64, prec);
            acc = &acc + &(&(&c * &r) * &m);
        }
        acc
    }
}

/// `epsilon = (1 - M) / 2` for the largest residual ratio bound `M`, and the
/// least `N` with `|r(n)| < (1 - epsilon)^n` for every `n >= N`.
pub fn tail_bound(d: &DominantNormalization) -> TailBound {
    let half = BigRational::new(1.into(), 2.into());
    if d.residual.is_empty() {
        return TailBound {
            epsilon: half,
            n: BigInt::zero(),
        };
    }
    let m = d.residual.iter().map(|t| t.ratio_upper.clone()).max().unwrap();
    let epsilon = (BigRational::one() - &m) * &half;
    let base = BigRational::one() - &epsilon;
    // sum C_i (L_i / base)^n is decreasing in n; find where it drops below 1
    let prec = 128;
    let ratios: Vec<(DyadicInterval, DyadicInterval)> = d
        .residual
        .iter()
        .map(|t| {
            let c = Interval::from_rational(&(&t.coeff_abs_upper * BigRational::from_integer(t.multiplicity.into())), prec);
            let r = Interval::from_rational(&(&t.ratio_upper / &base), prec);
            (c, r)
        })
        .collect();
    let below = |n: u64| -> bool {
        let mut acc = Interval::zero(prec);
        for (c, r) in &ratios {
            acc = &acc + &(c * &pow_interval(r, n));
        }
        acc.hi < Dyadic::one()
    };
    let mut hi = 1u64;
    while !below(hi) {
        hi *= 2;
    }
    let mut lo = 0u64;
    if below(0) {
        hi = 0;
    }
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if below(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    TailBound {
        epsilon,
        n: BigInt::from(hi),
    }
}

fn pow_interval(r: &DyadicInterval, n: u64) -> DyadicInterval {
    let mut acc = Interval::one(r.prec);
    let mut b = r.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        b = b.sqr();
        e >>= 1;
    }
    acc
}
