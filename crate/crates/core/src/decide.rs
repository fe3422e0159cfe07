//! Positivity and ultimate positivity of simple integer recurrences of order
//! at most 9, with certificates that can be re-checked independently.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::dyadic::Dyadic;
use crate::algebraic::interval::{DyadicCInterval, DyadicInterval, Interval};
use crate::algebraic::number::AlgebraicNumber;
use crate::algebraic::transcend;
use crate::error::{Error, Result};
use crate::lrs::{char_roots, degeneracy_modulus, partition_nondegenerate, Lrs};
use crate::relations::{compute_lattice_dominant, density_search, holds_dominant, Exactness, RelationLattice, TorusPoint};
use crate::spectral::{decompose, dominant_normalize, tail_bound, Dominance, DominantNormalization, RootDecomposition, TailBound};
use crate::torusmin::{
    check_finiteness, exclusion_radius, gap_polynomial, minimize_h, minimizer_first_coords, ExclusionRadius, Finiteness,
    GapCertificate, MinCertificate, TrigForm,
};
use crate::torusmin::gap::GapInputs;

pub const MAX_ORDER: usize = 9;
/// Terms checked directly before any analysis.
const PREFIX: u64 = 64;
const RESEED: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Cap on exhaustive checks and witness searches.
    pub budget: u64,
    /// Interval precision floor in bits.
    pub precision: u32,
    /// Max-norm bound for the relation lattice search.
    pub lattice_bound: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: 1_000_000,
            precision: 256,
            lattice_bound: 1000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Positive,
    NotPositive,
    UltimatelyPositive,
    NotUltimatelyPositive,
    PositiveConditional,
    Unknown,
}

impl Verdict {
    pub fn holds(self) -> Option<bool> {
        match self {
            Verdict::Positive | Verdict::UltimatelyPositive => Some(true),
            Verdict::NotPositive | Verdict::NotUltimatelyPositive => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Positivity,
    Ultimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartStatus {
    UltimatelyPositive,
    NotUltimatelyPositive,
    Unknown,
}

/// How `a + mu` was settled for a subsequence with a positive dominant root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Case {
    /// `r = 0`: every term is `rho^n (a + h(lambda^n))`.
    NoResidual,
    /// `a + mu > 0`.
    Margin,
    /// `a + mu < 0`.
    Negative,
    /// `a + mu = 0` exactly.
    Critical,
    Undetermined(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriticalData {
    pub z1: Vec<AlgebraicNumber>,
    pub exclusion: ExclusionRadius,
    pub gap: GapCertificate,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Thresholds {
    /// Collision horizon.
    pub m: Option<u64>,
    /// Tail threshold.
    #[serde(with = "opt_bigint")]
    pub n: Option<BigInt>,
    /// From the gap polynomial (critical case).
    #[serde(with = "opt_bigint")]
    pub n_prime: Option<BigInt>,
    /// Where the residual drops below the margin (margin case).
    #[serde(with = "opt_bigint")]
    pub margin: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DominantData {
    pub rho: AlgebraicNumber,
    pub a: AlgebraicNumber,
    pub lambdas: Vec<AlgebraicNumber>,
    pub cs: Vec<AlgebraicNumber>,
    pub tail: TailBound,
    pub lattice: Option<RelationLattice>,
    pub mu: Option<MinCertificate>,
    pub case: Case,
    /// Certified lower bound of `a + mu` in the margin case.
    #[serde(with = "opt_rational")]
    pub margin: Option<BigRational>,
    pub critical: Option<CriticalData>,
    pub thresholds: Thresholds,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartAnalysis {
    Zero,
    /// No positive real dominant root.
    Oscillating,
    Dominant(Box<DominantData>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartCertificate {
    pub residue: u64,
    pub sequence: Lrs,
    pub analysis: PartAnalysis,
    pub status: PartStatus,
    /// Subsequence index from which every term is certified non-negative.
    #[serde(with = "opt_bigint")]
    pub threshold: Option<BigInt>,
    /// Subsequence index of an exactly verified negative term.
    pub witness: Option<u64>,
    /// Subsequence index of an exactly verified positive term.
    pub positive_witness: Option<u64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: Mode,
    pub modulus: u64,
    pub parts: Vec<PartCertificate>,
    /// Every `u_n` with `n < checked_below` was evaluated exactly.
    pub checked_below: u64,
    /// Index from which every term is certified non-negative.
    #[serde(with = "opt_bigint")]
    pub threshold: Option<BigInt>,
    pub budget_reached: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<u64>,
    pub certificate: Certificate,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        n.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn check_input(s: &Lrs) -> Result<()> {
    if s.order() > MAX_ORDER {
        return Err(Error::OrderTooLarge(s.order()));
    }
    if !s.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(())
}

/// Least `n < limit` with `u_n < 0`, by iterating the recurrence.
pub fn first_negative(s: &Lrs, limit: u64) -> Option<u64> {
    let k = s.order();
    let b = s.recurrence();
    let mut win: VecDeque<BigInt> = s.initial().iter().cloned().collect();
    for n in 0..limit {
        if n as usize >= k {
            let next: BigInt = (0..k).map(|j| &b[j] * &win[k - 1 - j]).sum();
            win.pop_front();
            win.push_back(next);
        }
        let u = if (n as usize) < k { &win[n as usize] } else { &win[k - 1] };
        if u.is_negative() {
            return Some(n);
        }
    }
    None
}

/// Interval values of `u_n / R^n` from the closed form, stepping `n`.
struct Scanner {
    terms: Vec<(DyadicCInterval, DyadicCInterval, bool)>,
    cur: Vec<DyadicCInterval>,
    n: u64,
    prec: u32,
}

impl Scanner {
    fn new(d: &RootDecomposition, prec: u32) -> Option<Self> {
        let r = d.dominant_modulus.as_ref()?.enclosure(prec + 32).re;
        let rc = DyadicCInterval::real(r);
        let mut terms = Vec::new();
        for (t, real) in d.real.iter().map(|t| (t, true)).chain(d.complex.iter().map(|t| (t, false))) {
            if t.coeff.is_zero() {
                continue;
            }
            let ratio = &t.root.enclosure(prec + 32) * &rc.recip()?;
            terms.push((t.coeff.enclosure(prec + 32).with_prec(prec), ratio.with_prec(prec), real));
        }
        let cur = vec![DyadicCInterval::one(prec); terms.len()];
        Some(Scanner { terms, cur, n: 0, prec })
    }

    fn value(&self) -> DyadicInterval {
        let mut acc = Interval::zero(self.prec);
        for ((c, _, real), z) in self.terms.iter().zip(&self.cur) {
            let v = (c * z).re;
            acc = &acc + &if *real { v } else { v.scale_pow2(1) };
        }
        acc
    }

    fn step(&mut self) {
        self.n += 1;
        if self.n.is_multiple_of(RESEED) {
            for (z, t) in self.cur.iter_mut().zip(&self.terms) {
                *z = t.1.powu(self.n);
            }
        } else {
            for (z, t) in self.cur.iter_mut().zip(&self.terms) {
                *z = &*z * &t.1;
            }
        }
    }
}

/// First indices `k <= budget` with `t_k < 0` and `t_k > 0`, verified exactly.
fn scan_signs(t: &Lrs, d: &RootDecomposition, budget: u64, prec: u32, want_pos: bool) -> (Option<u64>, Option<u64>) {
    let Some(mut sc) = Scanner::new(d, prec) else {
        return (None, None);
    };
    let (mut neg, mut pos) = (None, None);
    loop {
        let v = sc.value();
        let k = sc.n;
        if neg.is_none() && v.is_negative() && t.term_at_pow(k).is_negative() {
            neg = Some(k);
        }
        if want_pos && pos.is_none() && v.is_positive() && t.term_at_pow(k).is_positive() {
            pos = Some(k);
        }
        if (neg.is_some() && (pos.is_some() || !want_pos)) || k >= budget {
            break;
        }
        sc.step();
    }
    (neg, pos)
}

fn lattice_complete(lat: &RelationLattice) -> bool {
    match &lat.exactness {
        Exactness::Complete => true,
        Exactness::CompleteUpToBound { certified, .. } => *certified,
    }
}

fn real_interval(x: &AlgebraicNumber, prec: u32) -> DyadicInterval {
    x.enclosure(prec).re
}

/// Least `T` with `(1 - eps)^T <= delta`.
fn margin_threshold(delta: &BigRational, eps: &BigRational, prec: u32) -> BigInt {
    if *delta >= BigRational::one() {
        return BigInt::zero();
    }
    let ld = -&transcend::ln(&Interval::from_rational(delta, prec));
    let le = -&transcend::ln(&Interval::from_rational(&(BigRational::one() - eps), prec));
    let q = ld.hi.div(&le.lo, prec, crate::Round::Up);
    q.ceil().max(BigInt::zero())
}

fn rational_lo(x: &DyadicInterval) -> BigRational {
    x.lo.to_rational()
}

struct Analyzer<'a> {
    cfg: &'a Config,
}

impl Analyzer<'_> {
    fn part(&self, residue: u64, t: Lrs) -> Result<PartCertificate> {
        let mut pc = PartCertificate {
            residue,
            sequence: t.clone(),
            analysis: PartAnalysis::Zero,
            status: PartStatus::UltimatelyPositive,
            threshold: Some(BigInt::zero()),
            witness: None,
            positive_witness: None,
            note: None,
        };
        if t.is_zero() {
            return Ok(pc);
        }
        let d = decompose(&t)?;
        let prec = self.cfg.precision.max(128);
        match dominant_normalize(&d)? {
            Dominance::Zero => Ok(pc),
            Dominance::Oscillating => {
                pc.analysis = PartAnalysis::Oscillating;
                pc.status = PartStatus::NotUltimatelyPositive;
                pc.threshold = None;
                let (neg, pos) = scan_signs(&t, &d, self.cfg.budget, prec, true);
                pc.witness = neg;
                pc.positive_witness = pos;
                if neg.is_none() {
                    pc.note = Some("no negative term found within budget".into());
                }
                Ok(pc)
            }
            Dominance::Normalized(nz) => self.dominant(pc, &t, &d, nz, prec),
        }
    }

    fn dominant(
        &self,
        mut pc: PartCertificate,
        t: &Lrs,
        d: &RootDecomposition,
        nz: DominantNormalization,
        prec: u32,
    ) -> Result<PartCertificate> {
        let tail = tail_bound(&nz);
        let mut dd = DominantData {
            rho: nz.rho.clone(),
            a: nz.a.clone(),
            lambdas: nz.lambdas.clone(),
            cs: nz.cs.clone(),
            tail: tail.clone(),
            lattice: None,
            mu: None,
            case: Case::Undetermined(String::new()),
            margin: None,
            critical: None,
            thresholds: Thresholds {
                n: Some(tail.n.clone()),
                ..Default::default()
            },
        };
        let m = nz.m();
        // sign of a + mu: exact when possible
        let (sign, exact_mu, complete) = if m == 0 {
            (nz.a.sign().ok(), true, true)
        } else {
            let lat = match compute_lattice_dominant(&nz.gammas, t.order(), self.cfg.lattice_bound) {
                Ok(l) => l,
                Err(e) => return Ok(self.unknown(pc, dd, format!("relation lattice: {e}"))),
            };
            let h = TrigForm::new(nz.cs.clone())?;
            let cert = match minimize_h(&h, &lat) {
                Ok(c) => c,
                Err(e) => {
                    dd.lattice = Some(lat);
                    return Ok(self.unknown(pc, dd, format!("minimization: {e}")));
                }
            };
            let complete = lattice_complete(&lat);
            let (sign, exact) = match &cert.mu_exact {
                Some(mu) => (nz.a.add(mu).ok().and_then(|s| s.sign().ok()), true),
                None => {
                    let s = &real_interval(&nz.a, prec) + &cert.mu_interval(prec);
                    (s.sign(), false)
                }
            };
            dd.lattice = Some(lat);
            dd.mu = Some(cert);
            (sign, exact, complete)
        };
        let no_residual = nz.residual.is_empty();
        let amu = self.a_plus_mu(&dd, prec);
        match sign {
            None => {
                let why = if exact_mu {
                    "sign of a + mu undetermined"
                } else {
                    "a + mu not separated from zero; needs exact reduction"
                };
                return Ok(self.unknown_with_search(pc, dd, t, d, prec, why.into()));
            }
            Some(s) if s > 0 || (s == 0 && no_residual) => {
                if no_residual {
                    dd.case = Case::NoResidual;
                    pc.threshold = Some(BigInt::zero());
                } else {
                    dd.case = Case::Margin;
                    let delta = rational_lo(&amu);
                    let tm = margin_threshold(&delta, &tail.epsilon, prec);
                    dd.thresholds.margin = Some(tm.clone());
                    dd.margin = Some(delta);
                    pc.threshold = Some(tm.max(tail.n.clone()));
                }
                pc.status = PartStatus::UltimatelyPositive;
            }
            Some(s) if s < 0 => {
                dd.case = Case::Negative;
                pc.threshold = None;
                pc.status = if complete {
                    PartStatus::NotUltimatelyPositive
                } else {
                    PartStatus::Unknown
                };
                if !complete {
                    pc.note = Some("relation lattice not certified complete".into());
                }
                pc.witness = self.negative_witness(t, d, &dd, &amu, prec);
            }
            Some(_) => {
                // a + mu = 0 with a nonzero residual
                dd.case = Case::Critical;
                match self.critical(&nz, &dd) {
                    Ok((crit, th)) => {
                        pc.threshold = Some(th);
                        dd.thresholds.m = Some(crit.gap.m);
                        dd.thresholds.n_prime = Some(crit.gap.n_prime.clone());
                        dd.critical = Some(crit);
                        pc.status = PartStatus::UltimatelyPositive;
                    }
                    Err(e) => {
                        pc.threshold = None;
                        pc.status = PartStatus::Unknown;
                        pc.note = Some(format!("critical case: {e}"));
                    }
                }
            }
        }
        pc.analysis = PartAnalysis::Dominant(Box::new(dd));
        Ok(pc)
    }

    fn a_plus_mu(&self, dd: &DominantData, prec: u32) -> DyadicInterval {
        let a = real_interval(&dd.a, prec);
        match &dd.mu {
            Some(c) => &a + &c.mu_interval(prec),
            None => a,
        }
    }

    fn unknown(&self, mut pc: PartCertificate, dd: DominantData, why: String) -> PartCertificate {
        pc.status = PartStatus::Unknown;
        pc.threshold = None;
        pc.note = Some(why.clone());
        let mut dd = dd;
        dd.case = Case::Undetermined(why);
        pc.analysis = PartAnalysis::Dominant(Box::new(dd));
        pc
    }

    fn unknown_with_search(
        &self,
        pc: PartCertificate,
        dd: DominantData,
        t: &Lrs,
        d: &RootDecomposition,
        prec: u32,
        why: String,
    ) -> PartCertificate {
        let mut pc = self.unknown(pc, dd, why);
        pc.witness = scan_signs(t, d, self.cfg.budget, prec, false).0;
        pc
    }

    /// A negative term when `a + mu < 0`. For rank 0 the exact minimizer is
    /// the density target; otherwise the closed form is scanned.
    fn negative_witness(
        &self,
        t: &Lrs,
        d: &RootDecomposition,
        dd: &DominantData,
        amu: &DyadicInterval,
        prec: u32,
    ) -> Option<u64> {
        if let (Some(lat), Some(mu)) = (&dd.lattice, &dd.mu) {
            if lat.rank == 0 && mu.mu_exact.is_some() {
                if let Some(k) = self.density_witness(t, dd, lat, amu, prec) {
                    return Some(k);
                }
            }
        }
        scan_signs(t, d, self.cfg.budget, prec, false).0
    }

    fn density_witness(
        &self,
        t: &Lrs,
        dd: &DominantData,
        lat: &RelationLattice,
        amu: &DyadicInterval,
        prec: u32,
    ) -> Option<u64> {
        // z_j = -conj(c_j) / |c_j| minimizes every term
        let target: Vec<AlgebraicNumber> = dd
            .cs
            .iter()
            .map(|c| c.modulus_sq().and_then(|q| q.sqrt()).and_then(|a| c.conj().neg().div(&a)))
            .collect::<Result<_>>()
            .ok()?;
        // h(z) - mu <= sum 2 |c_j| |z_j - target_j|
        let mut amp = Interval::zero(prec);
        for c in &dd.cs {
            amp = &amp + &c.enclosure(prec).abs().scale_pow2(1);
        }
        let gap = -&amu.hi;
        let eps = gap.div(&amp.hi, 64, crate::Round::Down).mul_pow2(-2).to_rational();
        let k = density_search(&dd.lambdas, lat, &TorusPoint::new(target), &eps, self.cfg.budget).ok()??;
        t.term_at_pow(k).is_negative().then_some(k)
    }

    fn critical(&self, nz: &DominantNormalization, dd: &DominantData) -> Result<(CriticalData, BigInt)> {
        let lat = dd.lattice.as_ref().ok_or(Error::Unsupported("no lattice".into()))?;
        let cert = dd.mu.as_ref().ok_or(Error::Unsupported("no minimization".into()))?;
        if check_finiteness(lat, nz.m()) == Finiteness::NotCovered {
            // ranks {0, 1, m-1, m} cover every m <= 3, which is all a
            // nonzero residual leaves room for at order 9
            return Err(Error::Unsupported("finiteness not covered".into()));
        }
        let z1 = minimizer_first_coords(cert)?;
        let b = match &cert.exclusion_radius {
            Some(b) => b.clone(),
            None => exclusion_radius(&z1)?,
        };
        let h = TrigForm::new(nz.cs.clone())?;
        let inputs = GapInputs {
            lambda: &nz.lambdas[0],
            epsilon: &dd.tail.epsilon,
            horizon: self.cfg.lattice_bound,
        };
        let gap = gap_polynomial(&h, lat, cert, &b, &inputs)?;
        let th = BigInt::from(gap.m + 1).max(dd.tail.n.clone()).max(gap.n_prime.clone());
        Ok((CriticalData { z1, exclusion: b, gap }, th))
    }
}

fn analyze(s: &Lrs, cfg: &Config) -> Result<(u64, Vec<PartCertificate>)> {
    let roots = char_roots(s);
    let p = partition_nondegenerate(s, &roots)?;
    let an = Analyzer { cfg };
    let parts = std::thread::scope(|sc| {
        let hs: Vec<_> = p
            .parts
            .iter()
            .enumerate()
            .map(|(r, t)| {
                let an = &an;
                sc.spawn(move || an.part(r as u64, t.clone()))
            })
            .collect();
        hs.into_iter()
            .map(|h| h.join().expect("subsequence analysis panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok((p.modulus, parts))
}

fn mapped_witness(l: u64, parts: &[PartCertificate]) -> Option<u64> {
    parts.iter().filter_map(|p| p.witness.map(|k| l * k + p.residue)).min()
}

/// Index from which the whole sequence is non-negative, if every part has one.
fn combined_threshold(l: u64, parts: &[PartCertificate]) -> Option<BigInt> {
    let mut t = BigInt::zero();
    for p in parts {
        t = t.max(p.threshold.as_ref()? * BigInt::from(l));
    }
    Some(t)
}

fn certificate(mode: Mode, modulus: u64, parts: Vec<PartCertificate>) -> Certificate {
    Certificate {
        mode,
        modulus,
        parts,
        checked_below: 0,
        threshold: None,
        budget_reached: false,
        notes: vec![],
    }
}

pub fn decide_positivity(s: &Lrs, cfg: &Config) -> Result<Decision> {
    check_input(s)?;
    let quick = cfg.budget.min(PREFIX);
    if let Some(w) = first_negative(s, quick) {
        let mut c = certificate(Mode::Positivity, 1, vec![]);
        c.checked_below = w + 1;
        c.notes.push("negative term found by direct evaluation".into());
        return Ok(Decision {
            verdict: Verdict::NotPositive,
            witness: Some(w),
            certificate: c,
        });
    }
    let (l, parts) = analyze(s, cfg)?;
    let mut c = certificate(Mode::Positivity, l, parts);
    c.checked_below = quick;
    if let Some(w) = mapped_witness(l, &c.parts) {
        debug_assert!(s.term_at_pow(w).is_negative());
        return Ok(Decision {
            verdict: Verdict::NotPositive,
            witness: Some(w),
            certificate: c,
        });
    }
    let th = combined_threshold(l, &c.parts);
    c.threshold = th.clone();
    let limit = match &th {
        Some(t) if *t <= BigInt::from(cfg.budget) => t.to_u64().expect("fits"),
        _ => cfg.budget,
    };
    if let Some(w) = first_negative(s, limit) {
        c.checked_below = w + 1;
        return Ok(Decision {
            verdict: Verdict::NotPositive,
            witness: Some(w),
            certificate: c,
        });
    }
    c.checked_below = limit.max(quick);
    let verdict = match &th {
        Some(t) if *t <= BigInt::from(c.checked_below) => Verdict::Positive,
        Some(_) => {
            c.budget_reached = true;
            c.notes.push("certified threshold exceeds the budget".into());
            Verdict::PositiveConditional
        }
        None => {
            c.budget_reached = true;
            Verdict::Unknown
        }
    };
    Ok(Decision {
        verdict,
        witness: None,
        certificate: c,
    })
}

pub fn decide_ultimate_positivity(s: &Lrs, cfg: &Config) -> Result<Decision> {
    check_input(s)?;
    let (l, parts) = analyze(s, cfg)?;
    let mut c = certificate(Mode::Ultimate, l, parts);
    let witness = mapped_witness(l, &c.parts);
    let verdict = if c.parts.iter().any(|p| p.status == PartStatus::NotUltimatelyPositive) {
        Verdict::NotUltimatelyPositive
    } else if c.parts.iter().any(|p| p.status == PartStatus::Unknown) {
        Verdict::Unknown
    } else {
        c.threshold = combined_threshold(l, &c.parts);
        Verdict::UltimatelyPositive
    };
    Ok(Decision {
        verdict,
        witness,
        certificate: c,
    })
}

/// Re-checks each claim of a decision independently.
pub fn verify_certificate(s: &Lrs, d: &Decision) -> bool {
    verify(s, d).unwrap_or(false)
}

fn verify(s: &Lrs, d: &Decision) -> Result<bool> {
    let c = &d.certificate;
    if let Some(w) = d.witness {
        if !s.term_at(w).is_negative() {
            return Ok(false);
        }
    }
    if d.verdict == Verdict::NotPositive && d.witness.is_none() {
        return Ok(false);
    }
    let analyzed = !c.parts.is_empty();
    if analyzed {
        if c.modulus != degeneracy_modulus(&char_roots(s)) || c.parts.len() as u64 != c.modulus {
            return Ok(false);
        }
        for (r, p) in c.parts.iter().enumerate() {
            if p.residue != r as u64 || p.sequence != s.decimate(c.modulus, r as u64) || !verify_part(p)? {
                return Ok(false);
            }
        }
    }
    let needs_analysis = matches!(
        d.verdict,
        Verdict::Positive | Verdict::UltimatelyPositive | Verdict::NotUltimatelyPositive | Verdict::PositiveConditional
    );
    if needs_analysis && !analyzed {
        return Ok(false);
    }
    let th = combined_threshold(c.modulus, &c.parts);
    let statuses = |st: PartStatus| c.parts.iter().any(|p| p.status == st);
    match d.verdict {
        Verdict::Positive | Verdict::PositiveConditional => {
            let Some(t) = th else { return Ok(false) };
            if c.threshold.as_ref() != Some(&t) {
                return Ok(false);
            }
            let full = t <= BigInt::from(c.checked_below);
            if (d.verdict == Verdict::Positive) != full {
                return Ok(false);
            }
            if first_negative(s, c.checked_below).is_some() {
                return Ok(false);
            }
        }
        Verdict::UltimatelyPositive => {
            if th.is_none() || statuses(PartStatus::NotUltimatelyPositive) || statuses(PartStatus::Unknown) {
                return Ok(false);
            }
        }
        Verdict::NotUltimatelyPositive
            if !statuses(PartStatus::NotUltimatelyPositive) => {
                return Ok(false);
            }
        _ => {}
    }
    Ok(true)
}

fn verify_part(p: &PartCertificate) -> Result<bool> {
    let t = &p.sequence;
    if let Some(k) = p.witness {
        if !t.term_at(k).is_negative() {
            return Ok(false);
        }
    }
    if let Some(k) = p.positive_witness {
        if !t.term_at(k).is_positive() {
            return Ok(false);
        }
    }
    let dom = || -> Result<Dominance> { dominant_normalize(&decompose(t)?) };
    match &p.analysis {
        PartAnalysis::Zero => Ok(t.is_zero() || matches!(dom()?, Dominance::Zero)),
        PartAnalysis::Oscillating => Ok(matches!(dom()?, Dominance::Oscillating)),
        PartAnalysis::Dominant(dd) => {
            let Dominance::Normalized(nz) = dom()? else { return Ok(false) };
            if !nz.rho.equals(&dd.rho) || !nz.a.equals(&dd.a) || tail_bound(&nz) != dd.tail {
                return Ok(false);
            }
            if let Some(lat) = &dd.lattice {
                for v in &lat.basis {
                    if !holds_dominant(&nz.gammas, t.order(), v)? {
                        return Ok(false);
                    }
                }
                if let Some(mu) = &dd.mu {
                    let again = minimize_h(&TrigForm::new(nz.cs.clone())?, lat)?;
                    if again.mu_hi < mu.mu_lo || mu.mu_hi < again.mu_lo {
                        return Ok(false);
                    }
                    if let (Some(x), Some(y)) = (&again.mu_exact, &mu.mu_exact) {
                        if !x.equals(y) {
                            return Ok(false);
                        }
                    }
                }
            }
            if dd.case == Case::Margin {
                let (Some(delta), Some(tm)) = (&dd.margin, &dd.thresholds.margin) else {
                    return Ok(false);
                };
                let amu = {
                    let prec = 256;
                    let a = real_interval(&nz.a, prec);
                    match &dd.mu {
                        Some(c) => &a + &c.mu_interval(prec),
                        None => a,
                    }
                };
                if Dyadic::from_rational(delta, 256, crate::Round::Down) > amu.lo
                    || delta.cmp(&BigRational::zero()) != Ordering::Greater
                {
                    return Ok(false);
                }
                if margin_threshold(delta, &dd.tail.epsilon, 256) != *tm {
                    return Ok(false);
                }
                if p.threshold.as_ref() != Some(&tm.clone().max(dd.tail.n.clone())) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lrs(b: &[i64], u: &[i64]) -> Lrs {
        Lrs::from_i64s(b, u).unwrap()
    }

    fn cfg() -> Config {
        Config {
            budget: 10_000,
            ..Config::default()
        }
    }

    #[test]
    fn fibonacci_positive() {
        let s = lrs(&[1, 1], &[0, 1]);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::Positive);
        assert!(verify_certificate(&s, &d));
        let u = decide_ultimate_positivity(&s, &cfg()).unwrap();
        assert_eq!(u.verdict, Verdict::UltimatelyPositive);
    }

    #[test]
    fn oscillating_witness() {
        let s = lrs(&[2, -2], &[0, 1]);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::NotPositive);
        assert_eq!(d.witness, Some(5));
        assert!(verify_certificate(&s, &d));
        let u = decide_ultimate_positivity(&s, &cfg()).unwrap();
        assert_eq!(u.verdict, Verdict::NotUltimatelyPositive);
        // roots 1 +- i have quotient i: four subsequences, u_{4k} = 0
        assert_eq!(u.certificate.modulus, 4);
        let osc: Vec<_> = u
            .certificate
            .parts
            .iter()
            .filter(|p| matches!(p.analysis, PartAnalysis::Oscillating))
            .collect();
        assert_eq!(osc.len(), 3);
        assert!(osc.iter().all(|p| p.witness.is_some() && p.positive_witness.is_some()));
        assert!(verify_certificate(&s, &u));
    }

    #[test]
    fn power_minus_constant() {
        let s = lrs(&[3, -2], &[-99, -98]);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::NotPositive);
        assert_eq!(d.witness, Some(0));
        let u = decide_ultimate_positivity(&s, &cfg()).unwrap();
        assert_eq!(u.verdict, Verdict::UltimatelyPositive);
        assert!(u.certificate.threshold.clone().unwrap() <= BigInt::from(12));
        assert!(verify_certificate(&s, &u));
    }

    #[test]
    fn zero_sequence() {
        let s = lrs(&[1], &[0]);
        assert_eq!(decide_positivity(&s, &cfg()).unwrap().verdict, Verdict::Positive);
        assert_eq!(decide_ultimate_positivity(&s, &cfg()).unwrap().verdict, Verdict::UltimatelyPositive);
    }

    #[test]
    fn complex_dominant_margin() {
        // 3^n + 2 Re((1 + 2i)^n): |1 + 2i| = sqrt 5 < 3
        // char poly (x - 3)(x^2 - 2x + 5)
        let s = lrs(&[5, -11, 15], &[3, 5, 7]);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::Positive);
        assert!(verify_certificate(&s, &d));
    }

    #[test]
    fn dominant_complex_pair_negative() {
        // 5^n + 2 * 2 Re((3 + 4i)^n): a + mu = 1 - 4 < 0
        // char poly (x - 5)(x^2 - 6x + 25)
        let s = lrs(&[11, -55, 125], &[5, 17, 13]);
        assert_eq!(s.term_at(0), BigInt::from(5));
        let u = decide_ultimate_positivity(&s, &cfg()).unwrap();
        assert_eq!(u.verdict, Verdict::NotUltimatelyPositive);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::NotPositive);
        assert!(verify_certificate(&s, &d));
    }

    #[test]
    fn tampered_witness_rejected() {
        let s = lrs(&[2, -2], &[0, 1]);
        let mut d = decide_positivity(&s, &cfg()).unwrap();
        d.witness = Some(4);
        assert!(!verify_certificate(&s, &d));
        let f = lrs(&[1, 1], &[0, 1]);
        let mut p = decide_positivity(&f, &cfg()).unwrap();
        p.certificate.checked_below = 0;
        p.certificate.threshold = Some(BigInt::from(1000));
        assert!(!verify_certificate(&f, &p));
    }

    #[test]
    fn rejects_large_and_repeated() {
        let s = Lrs::from_i64s(&[0; 10].iter().enumerate().map(|(i, _)| (i == 9) as i64).collect::<Vec<_>>(), &[1; 10]).unwrap();
        assert_eq!(decide_positivity(&s, &cfg()).unwrap_err(), Error::OrderTooLarge(10));
        let r = lrs(&[2, -1], &[1, 2]);
        assert_eq!(decide_positivity(&r, &cfg()).unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn critical_case_conditional() {
        // 5^n + Re((3 + 4i)^n) + 1: a = 1, c = 1/2, mu = -1 = -a
        let s = lrs(&[12, -66, 180, -125], &[3, 9, 19, 9]);
        let u = decide_ultimate_positivity(&s, &cfg()).unwrap();
        assert_eq!(u.verdict, Verdict::UltimatelyPositive, "{:?}", u.certificate.parts[0].note);
        let PartAnalysis::Dominant(dd) = &u.certificate.parts[0].analysis else { panic!() };
        assert_eq!(dd.case, Case::Critical);
        let crit = dd.critical.as_ref().unwrap();
        assert!(crit.z1.len() == 1 && crit.z1[0].equals(&AlgebraicNumber::from_int(-1)));
        assert_eq!(crit.gap.m, 0);
        let d = decide_positivity(&s, &cfg()).unwrap();
        assert_eq!(d.verdict, Verdict::PositiveConditional);
        assert_eq!(d.certificate.checked_below, 10_000);
        assert!(verify_certificate(&s, &d));
    }
}
