//! Minimization of `h(z) = sum_j (c_j z_j + conj)` over the torus of a
//! relation lattice, and the data needed when the minimum is exactly `-a`.

pub mod bnb;
pub mod chart;
pub mod exact;
pub mod gap;

use std::cmp::Ordering;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebraic::dyadic::Dyadic;
use crate::algebraic::interval::{DyadicInterval, Interval};
use crate::algebraic::number::AlgebraicNumber;
use crate::algebraic::transcend;
use crate::error::{Error, Result};
use crate::relations::RelationLattice;

use bnb::{minimize_branch, BnbOptions, BranchFn, REFINE_PREC, SEARCH_PREC};
use chart::Chart;
pub use gap::{
    baker_gap, collision_horizon, exclusion_radius, gap_polynomial, BakerBound, ExclusionRadius,
    GapCertificate,
};

/// `h(x) = sum_j 2 |c_j| cos(x_j + phi_j)` with `c_j = |c_j| e^{i phi_j}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrigForm {
    coeffs: Vec<AlgebraicNumber>,
}

impl TrigForm {
    pub fn new(coeffs: Vec<AlgebraicNumber>) -> Result<Self> {
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidInput("zero amplitude".into()));
        }
        Ok(TrigForm { coeffs })
    }

    /// Form with coefficients `re + i im` given as rational pairs.
    pub fn from_gaussian(c: &[(BigRational, BigRational)]) -> Result<Self> {
        let i = AlgebraicNumber::i();
        let coeffs = c
            .iter()
            .map(|(a, b)| {
                AlgebraicNumber::from_rational(a).add(&i.mul(&AlgebraicNumber::from_rational(b))?)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[AlgebraicNumber] {
        &self.coeffs
    }

    /// Exact amplitude `2 |c_j|`.
    pub fn amplitude(&self, j: usize) -> Result<AlgebraicNumber> {
        AlgebraicNumber::from_int(2).mul(&self.coeffs[j].modulus_sq()?.sqrt()?)
    }

    pub fn amplitude_interval(&self, j: usize, prec: u32) -> DyadicInterval {
        self.coeffs[j]
            .enclosure(prec + 8)
            .abs()
            .with_prec(prec)
            .scale_pow2(1)
    }

    pub fn phase_interval(&self, j: usize, prec: u32) -> DyadicInterval {
        transcend::arg(&self.coeffs[j].enclosure(prec + 8))
            .expect("nonzero coefficient")
            .with_prec(prec)
    }

    /// Certified value at angles `x`.
    pub fn eval(&self, x: &[DyadicInterval]) -> DyadicInterval {
        let p = x.iter().map(|v| v.prec).max().unwrap_or(64);
        let two = Interval::from_i64(2, p);
        let mut acc = Interval::zero(p);
        for (c, xj) in self.coeffs.iter().zip(x) {
            let e = c.enclosure(p + 8).with_prec(p);
            let (s, co) = transcend::sin_cos(xj);
            acc = &acc + &(&two * &(&(&e.re * &co) - &(&e.im * &s)));
        }
        acc
    }

    /// Double-precision value, for sampling.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, &t)| {
                let (re, im) = c.approx();
                2.0 * (re * t.cos() - im * t.sin())
            })
            .sum()
    }
}

/// Finiteness of the minimizing set as decided by the lattice rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rank", rename_all = "snake_case")]
pub enum Finiteness {
    FiniteByRank(usize),
    NotCovered,
}

/// Ranks `0, 1, m-1, m` give finitely many minimizers.
pub fn check_finiteness(lat: &RelationLattice, m: usize) -> Finiteness {
    let p = lat.rank;
    if p == 0 || p == 1 || p + 1 == m || p == m {
        Finiteness::FiniteByRank(p)
    } else {
        Finiteness::NotCovered
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Rank 0: every cosine at `-1`.
    ClosedForm,
    /// Finite torus, every point evaluated.
    FiniteEnumeration,
    /// One free angle, exact critical points.
    Univariate,
    /// Certified branch and bound with critical-point refinement.
    BranchAndBound,
}

/// One (boxed) minimizer: component label and free-angle enclosure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Minimizer {
    pub branch: Vec<i64>,
    pub angles: Vec<[f64; 2]>,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinCertificate {
    pub m: usize,
    pub rank: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub mu_lo: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub mu_hi: BigRational,
    pub mu_exact: Option<AlgebraicNumber>,
    pub finite: bool,
    pub justification: Option<Finiteness>,
    pub method: Method,
    pub minimizers: Vec<Minimizer>,
    /// Exact first coordinates of all minimizers, when known.
    pub z1: Option<Vec<AlgebraicNumber>>,
    /// Exact number of critical points (one free angle only).
    pub critical_points: Option<usize>,
    /// Critical points isolated in certified boxes (one free angle only).
    pub isolated_critical_boxes: Option<usize>,
    pub unresolved_boxes: usize,
    pub exclusion_radius: Option<ExclusionRadius>,
}

impl MinCertificate {
    pub fn mu_interval(&self, prec: u32) -> DyadicInterval {
        Interval::new(
            Dyadic::from_rational(&self.mu_lo, prec, crate::Round::Down),
            Dyadic::from_rational(&self.mu_hi, prec, crate::Round::Up),
            prec,
        )
    }

    pub fn mu_width(&self) -> f64 {
        use num_traits::ToPrimitive;
        (&self.mu_hi - &self.mu_lo).to_f64().unwrap_or(f64::INFINITY)
    }
}

fn pair(x: &DyadicInterval) -> [f64; 2] {
    [x.lo.to_f64(), x.hi.to_f64()]
}

fn base_cert(m: usize, lat: &RelationLattice, method: Method) -> MinCertificate {
    let fin = check_finiteness(lat, m);
    MinCertificate {
        m,
        rank: lat.rank,
        mu_lo: BigRational::from_integer(0.into()),
        mu_hi: BigRational::from_integer(0.into()),
        mu_exact: None,
        finite: matches!(fin, Finiteness::FiniteByRank(_)),
        justification: Some(fin),
        method,
        minimizers: vec![],
        z1: None,
        critical_points: None,
        isolated_critical_boxes: None,
        unresolved_boxes: 0,
        exclusion_radius: None,
    }
}

fn set_mu(cert: &mut MinCertificate, lo: &Dyadic, hi: &Dyadic) {
    cert.mu_lo = lo.to_rational();
    cert.mu_hi = hi.to_rational();
}

/// Narrows the enclosure with an exact value.
fn pin_exact(cert: &mut MinCertificate, mu: AlgebraicNumber) -> Result<()> {
    let e = mu.enclosure(REFINE_PREC).re;
    let lo = e.lo.to_rational().max(cert.mu_lo.clone());
    let hi = e.hi.to_rational().min(cert.mu_hi.clone());
    if lo > hi {
        return Err(Error::Unsupported("exact minimum disagrees with its enclosure".into()));
    }
    cert.mu_lo = lo;
    cert.mu_hi = hi;
    cert.mu_exact = Some(mu);
    Ok(())
}

/// `min h` over the torus of `lat`.
pub fn minimize_h(h: &TrigForm, lat: &RelationLattice) -> Result<MinCertificate> {
    let m = h.m();
    if lat.m != m {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: form has {m} terms, lattice has {}",
            lat.m
        )));
    }
    if m == 0 || m > 4 {
        return Err(Error::InvalidInput(format!("unsupported dimension {m}")));
    }
    let chart = Chart::new(lat)?;
    let mut cert = if lat.rank == 0 {
        closed_form(h, lat)?
    } else if chart.dim() == 0 {
        finite_torus(h, lat, &chart)?
    } else {
        components(h, lat, &chart)?
    };
    if let Some(z1) = &cert.z1 {
        cert.exclusion_radius = exclusion_radius(z1).ok();
    }
    Ok(cert)
}

fn closed_form(h: &TrigForm, lat: &RelationLattice) -> Result<MinCertificate> {
    let m = h.m();
    let mut cert = base_cert(m, lat, Method::ClosedForm);
    let p = REFINE_PREC;
    let mut s = Interval::zero(p);
    for j in 0..m {
        s = &s + &h.amplitude_interval(j, p);
    }
    set_mu(&mut cert, &(-&s.hi), &(-&s.lo));
    let exact = (|| -> Result<AlgebraicNumber> {
        let mut acc = AlgebraicNumber::zero();
        for j in 0..m {
            acc = acc.add(&h.amplitude(j)?)?;
        }
        Ok(acc.neg())
    })();
    if let Ok(mu) = exact {
        pin_exact(&mut cert, mu)?;
    }
    let pi = transcend::pi(64);
    cert.minimizers = vec![Minimizer {
        branch: vec![],
        angles: (0..m).map(|j| pair(&(&pi - &h.phase_interval(j, 64)))).collect(),
        value: [cert.mu_lo_f64(), cert.mu_hi_f64()],
    }];
    // z_1 = -conj(c_1) / |c_1|
    let c1 = &h.coeffs()[0];
    let z1 = c1
        .modulus_sq()
        .and_then(|q| q.sqrt())
        .and_then(|a| c1.conj().neg().div(&a));
    cert.z1 = z1.ok().map(|z| vec![z]);
    Ok(cert)
}

impl MinCertificate {
    fn mu_lo_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.mu_lo.to_f64().unwrap_or(f64::NEG_INFINITY)
    }
    fn mu_hi_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.mu_hi.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Exact `h` at the point `z_j = exp(2 pi i r_j)`.
fn exact_value(h: &TrigForm, r: &[BigRational]) -> Result<AlgebraicNumber> {
    let mut acc = AlgebraicNumber::zero();
    for (c, rj) in h.coeffs().iter().zip(r) {
        let z = root_of_unity(rj);
        let t = c.mul(&z)?;
        acc = acc.add(&t.add(&t.conj())?)?;
    }
    Ok(acc)
}

fn root_of_unity(r: &BigRational) -> AlgebraicNumber {
    use num_traits::ToPrimitive;
    let n = r.numer().to_i64().expect("small offset");
    let d = r.denom().to_u64().expect("small offset");
    AlgebraicNumber::root_of_unity(n, d)
}

fn finite_torus(h: &TrigForm, lat: &RelationLattice, chart: &Chart) -> Result<MinCertificate> {
    let m = h.m();
    let mut cert = base_cert(m, lat, Method::FiniteEnumeration);
    let branches = chart.branches()?;
    let freqs = chart.freqs();
    let mut vals = Vec::with_capacity(branches.len());
    for k in &branches {
        let r = chart.offsets(k);
        let f = BranchFn::new(h.coeffs(), &r, freqs.clone(), REFINE_PREC);
        vals.push((k.clone(), r, f.value(&[])));
    }
    let hi = vals.iter().map(|v| v.2.hi.clone()).min().expect("non-empty torus");
    let cands: Vec<_> = vals.into_iter().filter(|v| v.2.lo <= hi).collect();
    let lo = cands.iter().map(|v| v.2.lo.clone()).min().expect("candidate");
    set_mu(&mut cert, &lo, &hi);
    let exact: Result<Vec<AlgebraicNumber>> = if cands.len() == 1 {
        exact_value(h, &cands[0].1).map(|v| vec![v])
    } else {
        cands.iter().map(|c| exact_value(h, &c.1)).collect()
    };
    let chosen: Vec<usize> = match exact {
        Ok(ev) => {
            let mut best = 0;
            for i in 1..ev.len() {
                if ev[i].cmp_real(&ev[best])? == Ordering::Less {
                    best = i;
                }
            }
            let idx: Vec<usize> = (0..ev.len()).filter(|&i| ev[i].equals(&ev[best])).collect();
            pin_exact(&mut cert, ev[best].clone())?;
            idx
        }
        Err(_) if cands.len() == 1 => vec![0],
        Err(_) => vec![],
    };
    let shown: Vec<usize> = if chosen.is_empty() {
        (0..cands.len()).collect()
    } else {
        chosen.clone()
    };
    cert.minimizers = shown
        .iter()
        .map(|&i| Minimizer {
            branch: cands[i].0.clone(),
            angles: vec![],
            value: pair(&cands[i].2),
        })
        .collect();
    if !chosen.is_empty() {
        let mut firsts: Vec<BigRational> = chosen.iter().map(|&i| cands[i].1[0].clone()).collect();
        firsts.sort();
        firsts.dedup();
        cert.z1 = Some(firsts.iter().map(root_of_unity).collect());
    }
    Ok(cert)
}

fn components(h: &TrigForm, lat: &RelationLattice, chart: &Chart) -> Result<MinCertificate> {
    let m = h.m();
    let d = chart.dim();
    let mut cert = base_cert(m, lat, Method::BranchAndBound);
    let branches = chart.branches()?;
    let freqs = chart.freqs();
    let opts = BnbOptions::for_dim(d);
    let mut lo: Option<Dyadic> = None;
    let mut hi: Option<Dyadic> = None;
    let mut found = Vec::new();
    for k in &branches {
        let r = chart.offsets(k);
        let search = BranchFn::new(h.coeffs(), &r, freqs.clone(), SEARCH_PREC);
        let fine = BranchFn::new(h.coeffs(), &r, freqs.clone(), REFINE_PREC);
        let bm = minimize_branch(&search, &fine, &opts);
        lo = Some(lo.map_or(bm.lo.clone(), |x| x.min(bm.lo.clone())));
        hi = Some(hi.map_or(bm.hi.clone(), |x| x.min(bm.hi.clone())));
        found.push((k.clone(), r, bm));
    }
    let (lo, hi) = (lo.expect("branch"), hi.expect("branch"));
    set_mu(&mut cert, &lo, &hi);
    for (k, _, bm) in &found {
        cert.unresolved_boxes += bm.unresolved.iter().filter(|(_, l)| *l <= hi).count();
        for c in bm.crits.iter().filter(|c| c.value.lo <= hi) {
            cert.minimizers.push(Minimizer {
                branch: k.clone(),
                angles: c.t.iter().map(pair).collect(),
                value: pair(&c.value),
            });
        }
    }
    if d == 1 {
        cert.isolated_critical_boxes = count_critical(h, chart, &branches);
        univariate_exact(h, chart, &branches, &mut cert)?;
    }
    Ok(cert)
}

/// Number of critical points over all one-angle components, each isolated
/// in a certified box; `None` when some box stays unresolved.
fn count_critical(h: &TrigForm, chart: &Chart, branches: &[Vec<i64>]) -> Option<usize> {
    let opts = BnbOptions {
        all_critical: true,
        ..BnbOptions::for_dim(1)
    };
    let mut boxes = 0;
    for k in branches {
        let r = chart.offsets(k);
        let s = BranchFn::new(h.coeffs(), &r, chart.freqs(), SEARCH_PREC);
        let f = BranchFn::new(h.coeffs(), &r, chart.freqs(), REFINE_PREC);
        let bm = minimize_branch(&s, &f, &opts);
        if !bm.unresolved.is_empty() {
            return None;
        }
        boxes += bm.crits.len();
    }
    Some(boxes)
}

/// Exact path for one free angle with coefficients in `Q(i)`.
fn univariate_exact(
    h: &TrigForm,
    chart: &Chart,
    branches: &[Vec<i64>],
    cert: &mut MinCertificate,
) -> Result<()> {
    let Some(base) = h.coeffs().iter().map(exact::gaussian).collect::<Option<Vec<_>>>() else {
        return Ok(());
    };
    let freqs: Vec<i64> = chart.freqs().iter().map(|r| r[0]).collect();
    let mut per = Vec::new();
    for k in branches {
        let r = chart.offsets(k);
        let Some(rot) = base
            .iter()
            .zip(&r)
            .map(|(c, rj)| exact::rotate(c, rj))
            .collect::<Option<Vec<_>>>()
        else {
            return Ok(());
        };
        match exact::minimize(&rot, &freqs) {
            Ok(u) => per.push((r, u)),
            Err(Error::Unsupported(_)) => {
                cert.finite = false;
                cert.justification = None;
                return Ok(());
            }
            Err(e) => return Err(e),
        }
    }
    let mut best = 0;
    for i in 1..per.len() {
        if per[i].1.mu.cmp_real(&per[best].1.mu)? == Ordering::Less {
            best = i;
        }
    }
    let mu = per[best].1.mu.clone();
    let mut z1 = Vec::new();
    let mut count = 0;
    for (r, u) in &per {
        count += u.critical_count();
        if !u.mu.equals(&mu) {
            continue;
        }
        let rot = root_of_unity(&r[0]);
        for w in &u.argmin {
            let z = rot.mul(&w.pow(freqs[0])?)?;
            if !z1.iter().any(|y: &AlgebraicNumber| y.equals(&z)) {
                z1.push(z);
            }
        }
    }
    pin_exact(cert, mu)?;
    cert.method = Method::Univariate;
    cert.z1 = Some(z1);
    cert.critical_points = Some(count);
    Ok(())
}

/// First coordinates of all minimizers.
pub fn minimizer_first_coords(cert: &MinCertificate) -> Result<Vec<AlgebraicNumber>> {
    if !cert.finite {
        return Err(Error::Unsupported("Z possibly infinite".into()));
    }
    cert.z1
        .clone()
        .ok_or_else(|| Error::Unsupported("minimizers not known exactly".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::Exactness;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn lat(m: usize, b: &[Vec<i64>]) -> RelationLattice {
        RelationLattice::from_basis(m, b, Exactness::Complete).unwrap()
    }

    fn grid_min(h: &TrigForm, chart: &Chart, steps: usize) -> f64 {
        let f = chart.freqs();
        let mut best = f64::INFINITY;
        for k in chart.branches().unwrap() {
            let r = chart.offsets(&k);
            let r: Vec<f64> = r.iter().map(|x| num_traits::ToPrimitive::to_f64(x).unwrap()).collect();
            for s in 0..steps {
                let t = s as f64 * std::f64::consts::TAU / steps as f64;
                let x: Vec<f64> = (0..h.m())
                    .map(|j| std::f64::consts::TAU * r[j] + f[j].first().map_or(0.0, |&a| a as f64 * t))
                    .collect();
                best = best.min(h.eval_f64(&x));
            }
        }
        best
    }

    #[test]
    fn rank_zero_single_term() {
        let h = TrigForm::from_gaussian(&[(q(1, 2), q(0, 1))]).unwrap();
        let c = minimize_h(&h, &lat(1, &[])).unwrap();
        assert!(c.mu_exact.as_ref().unwrap().equals(&AlgebraicNumber::from_int(-1)));
        assert_eq!(c.method, Method::ClosedForm);
        let z1 = minimizer_first_coords(&c).unwrap();
        assert!(z1[0].equals(&AlgebraicNumber::from_int(-1)));
        let b = c.exclusion_radius.unwrap();
        assert!(b.exact.unwrap().equals(&AlgebraicNumber::from_rational(&q(1, 2))));
    }

    #[test]
    fn lemma_reduction_example() {
        let h = TrigForm::from_gaussian(&[(q(1, 2), q(0, 1)), (q(1, 2), q(0, 1))]).unwrap();
        let l = lat(2, &[vec![1, 1]]);
        let c = minimize_h(&h, &l).unwrap();
        assert_eq!(c.method, Method::Univariate);
        assert!(c.mu_exact.as_ref().unwrap().equals(&AlgebraicNumber::from_int(-2)));
        let z1 = minimizer_first_coords(&c).unwrap();
        assert_eq!(z1.len(), 1);
        assert!(z1[0].equals(&AlgebraicNumber::from_int(-1)));
        assert_eq!(c.critical_points, c.isolated_critical_boxes);
        let g = grid_min(&h, &Chart::new(&l).unwrap(), 1_000_000);
        assert!((c.mu_exact.unwrap().approx().0 - g).abs() < 1e-6);
    }

    #[test]
    fn finite_torus_two_points() {
        // T = {(1,1), (-1,-1)} is cut out by x1 - x2 = 0 and 2 x1 = 0
        let h = TrigForm::from_gaussian(&[(q(1, 2), q(1, 3)), (q(-1, 5), q(0, 1))]).unwrap();
        let l = lat(2, &[vec![1, -1], vec![2, 0]]);
        let c = minimize_h(&h, &l).unwrap();
        assert_eq!(c.method, Method::FiniteEnumeration);
        // h(1,1) = 1 - 2/5, h(-1,-1) = -1 + 2/5
        assert!(c.mu_exact.unwrap().equals(&AlgebraicNumber::from_rational(&q(-3, 5))));
        let z1 = c.z1.unwrap();
        assert!(z1.len() == 1 && z1[0].equals(&AlgebraicNumber::from_int(-1)));
    }

    #[test]
    fn generic_component_matches_grid() {
        let h = TrigForm::from_gaussian(&[(q(1, 1), q(1, 2)), (q(-1, 3), q(2, 3)), (q(1, 4), q(0, 1))])
            .unwrap();
        // rank 2 in m = 3: one free angle
        let l = lat(3, &[vec![1, 1, 0], vec![0, 2, -1]]);
        let c = minimize_h(&h, &l).unwrap();
        let g = grid_min(&h, &Chart::new(&l).unwrap(), 200_000);
        assert!(c.mu_width() < 1e-25, "{}", c.mu_width());
        assert!((c.mu_lo_f64() - g).abs() < 1e-6);
        assert_eq!(c.critical_points, c.isolated_critical_boxes);
    }

    #[test]
    fn two_free_angles() {
        let h = TrigForm::from_gaussian(&[(q(1, 1), q(1, 2)), (q(-1, 3), q(2, 3)), (q(1, 4), q(1, 7))])
            .unwrap();
        let l = lat(3, &[vec![1, 2, -1]]);
        let c = minimize_h(&h, &l).unwrap();
        assert_eq!(c.method, Method::BranchAndBound);
        assert!(c.mu_width() < 1e-20, "{}", c.mu_width());
        // coarse grid in the two free angles
        let chart = Chart::new(&l).unwrap();
        let f = chart.freqs();
        let n = 600;
        let mut best = f64::INFINITY;
        for a in 0..n {
            for b in 0..n {
                let t = [a as f64 / n as f64 * std::f64::consts::TAU, b as f64 / n as f64 * std::f64::consts::TAU];
                let x: Vec<f64> = (0..3).map(|j| f[j][0] as f64 * t[0] + f[j][1] as f64 * t[1]).collect();
                best = best.min(h.eval_f64(&x));
            }
        }
        assert!(c.mu_lo_f64() <= best + 1e-12);
        assert!(best - c.mu_hi_f64() < 1e-3);
    }

    #[test]
    fn finiteness_by_rank() {
        assert_eq!(check_finiteness(&lat(3, &[vec![1, 1, 1]]), 3), Finiteness::FiniteByRank(1));
        assert_eq!(
            check_finiteness(&lat(3, &[vec![1, 1, 1], vec![0, 1, 2]]), 3),
            Finiteness::FiniteByRank(2)
        );
        assert_eq!(
            check_finiteness(&lat(4, &[vec![1, 1, 1, 0], vec![0, 1, 2, 1]]), 4),
            Finiteness::NotCovered
        );
    }

    #[test]
    fn root_of_unity_values() {
        let z = AlgebraicNumber::root_of_unity(1, 4);
        assert!(z.equals(&AlgebraicNumber::i()));
        let z = AlgebraicNumber::root_of_unity(3, 6);
        assert!(z.equals(&AlgebraicNumber::from_int(-1)));
        let (re, im) = AlgebraicNumber::root_of_unity(1, 7).approx();
        let t = std::f64::consts::TAU / 7.0;
        assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
    }
}
