//! Certified minimization of one torus component.
//!
//! On a component, `h(t) = sum_j 2 Re(C_j exp(i f_j . t))` with integer
//! frequency rows `f_j`. The global minimum is a critical point, so boxes
//! whose gradient enclosure excludes zero are discarded. Boxes that Krawczyk
//! certifies to hold a single critical point are refined to high precision;
//! whatever is left unresolved contributes its interval lower bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_rational::BigRational;

use crate::algebraic::dyadic::{Dyadic, Round};
use crate::algebraic::interval::{DyadicCInterval, DyadicInterval, Interval};
use crate::algebraic::number::AlgebraicNumber;
use crate::algebraic::transcend;

pub const SEARCH_PREC: u32 = 64;
pub const REFINE_PREC: u32 = 256;
/// Critical boxes are refined below this width (log2).
const CRIT_WIDTH: i64 = -120;

/// `h` restricted to one component.
#[derive(Clone, Debug)]
pub struct BranchFn {
    pub cc: Vec<DyadicCInterval>,
    pub f: Vec<Vec<i64>>,
    pub dim: usize,
    pub prec: u32,
}

impl BranchFn {
    /// `C_j = c_j exp(2 pi i r_j)`.
    pub fn new(c: &[AlgebraicNumber], r: &[BigRational], f: Vec<Vec<i64>>, prec: u32) -> Self {
        let two_pi = transcend::pi(prec + 16).scale_pow2(1);
        let cc = c
            .iter()
            .zip(r)
            .map(|(cj, rj)| {
                let e = cj.enclosure(prec + 16).with_prec(prec);
                let rot = transcend::cis(&(&two_pi * &Interval::from_rational(rj, prec + 16)));
                &e * &rot.with_prec(prec)
            })
            .collect();
        let dim = f.first().map_or(0, |r| r.len());
        BranchFn { cc, f, dim, prec }
    }

    fn iv(&self, n: i64) -> DyadicInterval {
        Interval::from_i64(n, self.prec)
    }

    fn phase(&self, j: usize, t: &[DyadicInterval]) -> DyadicInterval {
        let mut acc = Interval::zero(self.prec);
        for (i, ti) in t.iter().enumerate() {
            let k = self.f[j][i];
            if k != 0 {
                acc = &acc + &(&self.iv(k) * ti);
            }
        }
        acc
    }

    /// Per-term value and derivative along its phase.
    fn terms(&self, t: &[DyadicInterval]) -> Vec<(DyadicInterval, DyadicInterval)> {
        let two = self.iv(2);
        (0..self.cc.len())
            .map(|j| {
                let (s, c) = transcend::sin_cos(&self.phase(j, t));
                let (re, im) = (&self.cc[j].re, &self.cc[j].im);
                let v = &two * &(&(re * &c) - &(im * &s));
                let g = -&(&two * &(&(re * &s) + &(im * &c)));
                (v, g)
            })
            .collect()
    }

    pub fn value(&self, t: &[DyadicInterval]) -> DyadicInterval {
        self.terms(t)
            .into_iter()
            .fold(Interval::zero(self.prec), |a, (v, _)| &a + &v)
    }

    pub fn grad(&self, t: &[DyadicInterval]) -> Vec<DyadicInterval> {
        let tm = self.terms(t);
        (0..self.dim)
            .map(|i| {
                tm.iter().enumerate().fold(Interval::zero(self.prec), |a, (j, (_, g))| {
                    match self.f[j][i] {
                        0 => a,
                        k => &a + &(&self.iv(k) * g),
                    }
                })
            })
            .collect()
    }

    pub fn hess(&self, t: &[DyadicInterval]) -> Vec<Vec<DyadicInterval>> {
        let tm = self.terms(t);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|k| {
                        tm.iter().enumerate().fold(Interval::zero(self.prec), |a, (j, (v, _))| {
                            match self.f[j][i] * self.f[j][k] {
                                0 => a,
                                q => &a - &(&self.iv(q) * v),
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn point(&self, t: &[Dyadic]) -> Vec<DyadicInterval> {
        t.iter().map(|x| Interval::point(x.clone(), self.prec)).collect()
    }

    /// Lower bound over a box: the better of the natural and mean-value forms.
    pub fn lower(&self, t: &[DyadicInterval]) -> Dyadic {
        let nat = self.value(t).lo;
        let mid: Vec<Dyadic> = t.iter().map(|x| x.mid()).collect();
        let mut mv = self.value(&self.point(&mid));
        for (g, (x, c)) in self.grad(t).iter().zip(t.iter().zip(&mid)) {
            let d = x - &Interval::point(c.clone(), self.prec);
            mv = &mv + &(g * &d);
        }
        nat.max(mv.lo)
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

fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| (i == j) as u8 as f64));
            r
        })
        .collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() < 1e-12 * scale {
            return None;
        }
        m.swap(c, p);
        let d = m[c][c];
        for x in m[c].iter_mut() {
            *x /= d;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                let pr = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// One Krawczyk step for `grad h = 0` on the box `x`. Returns the image when
/// it lies strictly inside `x`, which proves a unique critical point there.
pub fn krawczyk(f: &BranchFn, x: &[DyadicInterval]) -> Option<Vec<DyadicInterval>> {
    let p = f.prec;
    let n = x.len();
    let mid: Vec<Dyadic> = x.iter().map(|v| v.mid().round(p, Round::Down)).collect();
    let g = f.grad(&f.point(&mid));
    let j = f.hess(x);
    let jm: Vec<Vec<f64>> = j.iter().map(|r| r.iter().map(|v| v.mid_f64()).collect()).collect();
    let y = invert(&jm)?;
    let yd: Vec<Vec<DyadicInterval>> = y
        .iter()
        .map(|r| r.iter().map(|&v| Interval::point(Dyadic::from_f64(v), p)).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut k = Interval::point(mid[i].clone(), p);
        for l in 0..n {
            k = &k - &(&yd[i][l] * &g[l]);
        }
        for c in 0..n {
            let mut coef = Interval::from_i64((i == c) as i64, p);
            for l in 0..n {
                coef = &coef - &(&yd[i][l] * &j[l][c]);
            }
            let d = &x[c] - &Interval::point(mid[c].clone(), p);
            k = &k + &(&coef * &d);
        }
        if !(k.lo > x[i].lo && k.hi < x[i].hi) {
            return None;
        }
        out.push(k);
    }
    Some(out)
}

/// Shrinks a certified critical box with repeated Krawczyk steps.
pub fn refine_critical(f: &BranchFn, x: &[DyadicInterval]) -> Vec<DyadicInterval> {
    let mut cur: Vec<DyadicInterval> = x.iter().map(|v| v.with_prec(f.prec)).collect();
    for _ in 0..12 {
        if widest(&cur).1 < Dyadic::pow2(CRIT_WIDTH) {
            break;
        }
        let Some(k) = krawczyk(f, &cur) else { break };
        cur = k;
    }
    cur
}

/// A certified critical point of one component.
#[derive(Clone, Debug)]
pub struct Critical {
    pub t: Vec<DyadicInterval>,
    pub value: DyadicInterval,
}

#[derive(Clone, Debug)]
pub struct BranchMin {
    pub lo: Dyadic,
    pub hi: Dyadic,
    /// Critical points whose value may be the minimum (all of them in
    /// counting mode).
    pub crits: Vec<Critical>,
    /// Boxes left unresolved with their lower bounds.
    pub unresolved: Vec<(Vec<DyadicInterval>, Dyadic)>,
}

#[derive(Clone, Debug)]
pub struct BnbOptions {
    pub leaf_log2: i64,
    pub max_boxes: usize,
    /// Keep every critical point rather than only candidate minima.
    pub all_critical: bool,
}

impl BnbOptions {
    pub fn for_dim(d: usize) -> Self {
        BnbOptions {
            leaf_log2: match d {
                0 | 1 => -40,
                2 => -18,
                _ => -10,
            },
            max_boxes: 200_000,
            all_critical: false,
        }
    }
}

struct Item {
    key: f64,
    t: Vec<DyadicInterval>,
    lo: Dyadic,
}

impl PartialEq for Item {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        // min-heap on the lower bound
        o.key.total_cmp(&self.key)
    }
}

fn two_pi_hi(prec: u32) -> Dyadic {
    transcend::pi(prec).scale_pow2(1).hi
}

/// Reduces a box into `[0, 2 pi)` coordinatewise for duplicate detection.
fn wrap(t: &[DyadicInterval], period: &DyadicInterval) -> Vec<DyadicInterval> {
    let half = period.scale_pow2(-1);
    t.iter()
        .map(|x| {
            if x.lo > half.hi {
                x - period
            } else {
                x.clone()
            }
        })
        .collect()
}

fn same_point(a: &[DyadicInterval], b: &[DyadicInterval], period: &DyadicInterval) -> bool {
    let (a, b) = (wrap(a, period), wrap(b, period));
    a.iter().zip(&b).all(|(x, y)| x.overlaps(y))
}

/// Certified minimum of one component.
pub fn minimize_branch(search: &BranchFn, fine: &BranchFn, opts: &BnbOptions) -> BranchMin {
    let d = search.dim;
    if d == 0 {
        let v = fine.value(&[]);
        return BranchMin {
            lo: v.lo.clone(),
            hi: v.hi.clone(),
            crits: vec![Critical { t: vec![], value: v }],
            unresolved: vec![],
        };
    }
    let p = search.prec;
    let period = transcend::pi(REFINE_PREC).scale_pow2(1);
    let top = two_pi_hi(p);
    let n0 = 8i64;
    let step = top.div(&Dyadic::from_int(n0), p, Round::Up);
    let cuts: Vec<Dyadic> = (0..=n0)
        .map(|i| if i == n0 { top.clone() } else { &step * &Dyadic::from_int(i) })
        .collect();
    let mut heap = BinaryHeap::new();
    let mut upper = search
        .cc
        .iter()
        .fold(Dyadic::one(), |a, c| &a + (&(&c.re.mag() + &c.im.mag()).mul_pow2(1)));
    let mut idx = vec![0usize; d];
    loop {
        let t: Vec<DyadicInterval> = idx
            .iter()
            .map(|&i| Interval::new(cuts[i].clone(), cuts[i + 1].clone(), p))
            .collect();
        let lo = search.lower(&t);
        heap.push(Item { key: lo.to_f64(), t, lo });
        let mut c = 0;
        loop {
            if c == d {
                break;
            }
            idx[c] += 1;
            if idx[c] < n0 as usize {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
        if c == d {
            break;
        }
    }
    let mut crits: Vec<Critical> = Vec::new();
    let mut unresolved = Vec::new();
    let mut processed = 0usize;
    let leaf = Dyadic::pow2(opts.leaf_log2);
    let try_k = Dyadic::pow2(-3);
    while let Some(Item { t, lo, .. }) = heap.pop() {
        if !opts.all_critical && lo > upper {
            continue;
        }
        processed += 1;
        if processed > opts.max_boxes {
            unresolved.push((t, lo));
            continue;
        }
        let mid: Vec<Dyadic> = t.iter().map(|x| x.mid()).collect();
        let pv = search.value(&search.point(&mid));
        if pv.hi < upper {
            upper = pv.hi.clone();
        }
        if search.grad(&t).iter().any(|g| !g.contains_zero()) {
            continue;
        }
        let (axis, w) = widest(&t);
        if w < try_k {
            // inflated so that critical points on a box edge are caught
            let infl: Vec<DyadicInterval> = t.iter().map(|x| x.inflate(&x.width().mul_pow2(-2))).collect();
            if let Some(k) = krawczyk(search, &infl) {
                let hi: Vec<DyadicInterval> = k.iter().map(|x| x.with_prec(REFINE_PREC)).collect();
                let x = refine_critical(fine, &hi);
                if crits.iter().any(|c| same_point(&c.t, &x, &period)) {
                    continue;
                }
                let value = fine.value(&x);
                if value.hi < upper {
                    upper = value.hi.clone();
                }
                crits.push(Critical { t: x, value });
                continue;
            }
        }
        if w < leaf {
            unresolved.push((t, lo));
            continue;
        }
        let m = t[axis].mid();
        for half in [
            Interval::new(t[axis].lo.clone(), m.clone(), p),
            Interval::new(m.clone(), t[axis].hi.clone(), p),
        ] {
            let mut c = t.clone();
            c[axis] = half;
            let lo = search.lower(&c);
            if opts.all_critical || lo <= upper {
                heap.push(Item { key: lo.to_f64(), t: c, lo });
            }
        }
    }
    if !opts.all_critical {
        crits.retain(|c| c.value.lo <= upper);
        unresolved.retain(|(_, lo)| *lo <= upper);
    }
    let mut lo = upper.clone();
    for c in &crits {
        lo = lo.min(c.value.lo.clone());
    }
    for (_, l) in &unresolved {
        lo = lo.min(l.clone());
    }
    BranchMin {
        lo,
        hi: upper,
        crits,
        unresolved,
    }
}
