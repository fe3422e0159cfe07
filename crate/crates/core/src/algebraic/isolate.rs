//! Certified isolation and refinement of the complex roots of squarefree
//! integer polynomials.
//!
//! Real roots are isolated exactly with Descartes' rule of signs and refined
//! by bisection and interval Newton steps. Non-real roots are approximated by
//! Aberth iterations and certified one by one with the complex Krawczyk test;
//! the count of certified, pairwise disjoint boxes is checked against the
//! number of non-real roots.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ball::{eval_ball, excludes_zero, Ball, Cx};
use super::cbox::{eval_real, sign_at_dyadic, ComplexBox};
use super::dyadic::{Dyadic, Round};
use super::interval::{DyadicInterval, Interval};
use super::poly::Poly;

type IntPoly = Poly<BigInt>;

// ---- approximation ----

/// Value and derivative at `z`.
fn eval_cx(f: &IntPoly, z: &Cx, w: u32) -> (Cx, Cx) {
    let mut p = Cx::zero();
    let mut dp = Cx::zero();
    for c in f.coeffs().iter().rev() {
        dp = dp.mul(z, w).add(&p).round(w);
        p = p
            .mul(z, w)
            .add(&Cx::new(Dyadic::from_int(c.clone()), Dyadic::zero()))
            .round(w);
    }
    (p, dp)
}

fn root_radius_log2(f: &IntPoly) -> i64 {
    let cb = f.cauchy_bound();
    let c = cb.ceil().to_integer();
    c.bits() as i64
}

fn log2_abs(c: &BigInt) -> f64 {
    let b = c.bits();
    if b < 1000 {
        c.to_f64().unwrap().abs().log2()
    } else {
        let sh = b - 60;
        (c >> sh as usize).to_f64().unwrap().abs().log2() + sh as f64
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(i, log|a_i|)`.
fn initial_points(f: &IntPoly, offset: f64) -> Vec<(f64, f64)> {
    let n = f.degree();
    let pts: Vec<(usize, f64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, log2_abs(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for win in hull.windows(2) {
        let (i, li) = win[0];
        let (j, lj) = win[1];
        let k = j - i;
        let lr = (li - lj) / k as f64;
        for t in 0..k {
            let th = std::f64::consts::TAU * (t as f64 + offset) / k as f64
                + std::f64::consts::TAU * i as f64 / n as f64
                + 0.4;
            out.push((lr, th));
        }
    }
    out
}

fn to_cx(lr: f64, th: f64) -> Cx {
    let e = lr.round() as i64;
    let m = (lr - e as f64).exp2();
    Cx::new(
        Dyadic::from_f64(m * th.cos()).mul_pow2(e),
        Dyadic::from_f64(m * th.sin()).mul_pow2(e),
    )
    .round(60)
}

/// Aberth iterations in double precision; `None` on overflow or when the
/// coefficients do not fit.
fn aberth_f64(f: &IntPoly, init: &[(f64, f64)], max_iter: usize) -> Option<Vec<Cx>> {
    use num_complex::Complex64 as C;
    let cs: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    if cs.iter().any(|c| !c.is_finite() || c.abs() > 1e290) {
        return None;
    }
    if init.iter().any(|(lr, _)| lr.abs() > 900.0 / f.degree() as f64) {
        return None;
    }
    let mut zs: Vec<C> = init.iter().map(|&(lr, th)| C::from_polar(lr.exp2(), th)).collect();
    let n = zs.len();
    for _ in 0..max_iter {
        let mut moved = false;
        for i in 0..n {
            let z = zs[i];
            let mut p = C::new(0.0, 0.0);
            let mut dp = C::new(0.0, 0.0);
            for c in cs.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = C::new(0.0, 0.0);
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    s += 1.0 / (z - zj);
                }
            }
            let corr = ratio / (1.0 - ratio * s);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                return None;
            }
            zs[i] = z - corr;
            if corr.norm() > 1e-14 * z.norm().max(1e-300) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Some(
        zs.iter()
            .map(|z| Cx::new(Dyadic::from_f64(z.re), Dyadic::from_f64(z.im)).round(60))
            .collect(),
    )
}

fn aberth(f: &IntPoly, zs: &mut [Cx], w: u32, max_iter: usize) -> bool {
    let n = zs.len();
    let tiny = Cx::new(Dyadic::pow2(-(w as i64) / 2), Dyadic::pow2(-(w as i64) / 3));
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let (fz, dfz) = eval_cx(f, &zs[i], w);
            if fz.is_zero() {
                continue;
            }
            let Some(ratio) = fz.div(&dfz, w) else {
                zs[i] = zs[i].add(&tiny);
                done = false;
                continue;
            };
            let mut s = Cx::zero();
            let mut clash = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                match zs[i].sub(&zs[j]).recip(w) {
                    Some(r) => s = s.add(&r).round(w),
                    None => clash = true,
                }
            }
            if clash {
                zs[i] = zs[i].add(&tiny);
                done = false;
                continue;
            }
            let den = Cx::one().sub(&ratio.mul(&s, w));
            let corr = ratio.div(&den, w).unwrap_or(ratio);
            zs[i] = zs[i].sub(&corr).round(w);
            let scale = zs[i].log2_bound().unwrap_or(0).max(0);
            if corr.log2_bound().is_some_and(|c| c > scale - w as i64 + 8) {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
    false
}

fn newton(f: &IntPoly, z: Cx, w: u32, steps: usize) -> Cx {
    let mut z = z;
    for _ in 0..steps {
        let (fz, dfz) = eval_cx(f, &z, w);
        let Some(c) = fz.div(&dfz, w) else { break };
        z = z.sub(&c).round(w);
        if c.log2_bound().is_none_or(|e| e < z.log2_bound().unwrap_or(0).max(0) - w as i64 + 4) {
            break;
        }
    }
    z
}

/// Complex Krawczyk test around `z`, in midpoint-radius form. The radius
/// starts from the certified Newton step, so evaluation error is accounted
/// for. Returns an enclosing box of a disc that contains exactly one root.
fn krawczyk(f: &IntPoly, df: &IntPoly, z: &Cx, w: u32) -> Option<ComplexBox> {
    let fz = eval_ball(f, &Ball::exact(z.clone()), w);
    let (_, dfz) = eval_cx(f, z, w);
    let y = Ball::exact(dfz.recip(w)?);
    let step = y.mul(&fz, w);
    let c = z.sub(&step.c).round(w);
    let shift = &c.sub(&z.sub(&step.c)).abs_upper() + &step.r;
    let r0 = &step.c.abs_upper() + &shift;
    let one = Ball::exact(Cx::one());
    for k in [1, 3, 6, 10] {
        let r = r0.mul_pow2(k).max(Dyadic::pow2(-(w as i64) * 2));
        let zb = Ball::new(z.clone(), r.clone());
        let m = one.sub(&y.mul(&eval_ball(df, &zb, w), w), w);
        // K = z - y f(z) + m (Z - z)
        let mr = &m.c.abs_upper() + &m.r;
        let kb = Ball::new(c.clone(), &shift + &(&mr * &r));
        if kb.inside(&zb) {
            return Some(kb.to_box());
        }
    }
    None
}

/// Tries to certify a root near `z`; returns a box with a unique root.
fn certify_near(f: &IntPoly, df: &IntPoly, z: Cx, w: u32) -> Option<ComplexBox> {
    let z = newton(f, z, w, 12);
    krawczyk(f, df, &z, w)
}

// ---- real roots ----

fn descartes(g: &IntPoly) -> usize {
    g.reverse().shift(&BigInt::one()).sign_variations()
}

/// Isolating intervals of the real roots of a squarefree polynomial, in
/// increasing order. Exact roots are returned as degenerate intervals;
/// otherwise the endpoints are not roots and the sign changes across them.
pub fn real_roots(f: &IntPoly) -> Vec<(Dyadic, Dyadic)> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let k = root_radius_log2(f);
    // g(x) = f(2^(k+1) x - 2^k) on [0, 1]
    let lin = Poly::new(vec![-(BigInt::one() << k as usize), BigInt::one() << (k + 1) as usize]);
    let g0 = f.compose(&lin).primitive();
    struct Node {
        g: IntPoly,
        c: BigInt,
        j: i64,
        left_root: bool,
        right_root: bool,
    }
    let mut out = Vec::new();
    let mut stack = vec![Node {
        g: g0,
        c: BigInt::zero(),
        j: 0,
        left_root: false,
        right_root: false,
    }];
    let lo_of = |c: &BigInt, j: i64| &Dyadic::new(c.clone(), k + 1 - j) - &Dyadic::pow2(k);
    while let Some(n) = stack.pop() {
        let v = descartes(&n.g);
        if v == 0 {
            continue;
        }
        if v == 1 && !n.left_root && !n.right_root {
            let lo = lo_of(&n.c, n.j);
            let hi = lo_of(&(&n.c + 1), n.j);
            out.push((lo, hi));
            continue;
        }
        let gl = n.g.scale_var_pow2(1);
        let mut gr = gl.shift(&BigInt::one());
        let mid_root = gr.coeff(0).is_zero();
        if mid_root {
            let m = lo_of(&(&n.c * 2 + 1), n.j + 1);
            out.push((m.clone(), m));
            gr = gr.exact_div(&Poly::x()).unwrap();
        }
        stack.push(Node {
            g: gl.primitive(),
            c: &n.c * 2,
            j: n.j + 1,
            left_root: n.left_root,
            right_root: mid_root,
        });
        stack.push(Node {
            g: gr.primitive(),
            c: &n.c * 2 + 1,
            j: n.j + 1,
            left_root: mid_root,
            right_root: n.right_root,
        });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn width_prec(lo: &Dyadic, hi: &Dyadic) -> u32 {
    let wdt = hi - lo;
    let mag = lo.abs().max(hi.abs());
    let top = if mag.is_zero() { 0 } else { mag.msb() };
    let bot = if wdt.is_zero() { 0 } else { wdt.msb() };
    ((top - bot).max(0) as u32 + 64).max(64)
}

/// Shrinks an isolating interval until its width is below `target`.
pub fn refine_real(f: &IntPoly, lo: &Dyadic, hi: &Dyadic, target: &Dyadic) -> (Dyadic, Dyadic) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if lo == hi {
        return (lo, hi);
    }
    let df = f.derivative();
    let s_lo = sign_at_dyadic(f, &lo);
    if s_lo == 0 {
        return (lo.clone(), lo);
    }
    if sign_at_dyadic(f, &hi) == 0 {
        return (hi.clone(), hi);
    }
    while &(&hi - &lo) >= target {
        let w = width_prec(&lo, &hi) * 2;
        let x = DyadicInterval::new(lo.clone(), hi.clone(), w);
        let dfx = eval_real(&df, &x, w);
        let old = &hi - &lo;
        let mut progressed = false;
        if !dfx.contains_zero() {
            let m = (&lo + &hi).mul_pow2(-1).round(w, Round::Down);
            let m = if m <= lo || m >= hi { (&lo + &hi).mul_pow2(-1) } else { m };
            let fm = eval_real(f, &Interval::point(m.clone(), w), w);
            let n = &Interval::point(m, w) - &(&fm / &dfx);
            if let Some(new) = x.intersect(&n) {
                let (nlo, nhi) = (new.lo, new.hi);
                if nlo == nhi {
                    if sign_at_dyadic(f, &nlo) == 0 {
                        return (nlo.clone(), nlo);
                    }
                } else {
                    let a = sign_at_dyadic(f, &nlo);
                    let b = sign_at_dyadic(f, &nhi);
                    if a == 0 {
                        return (nlo.clone(), nlo);
                    }
                    if b == 0 {
                        return (nhi.clone(), nhi);
                    }
                    if a != b && (&nhi - &nlo).mul_pow2(1) <= old {
                        lo = nlo;
                        hi = nhi;
                        progressed = true;
                    }
                }
            }
        }
        if !progressed {
            let m = (&lo + &hi).mul_pow2(-1);
            let s = sign_at_dyadic(f, &m);
            if s == 0 {
                return (m.clone(), m);
            }
            if s == sign_at_dyadic(f, &lo) {
                lo = m;
            } else {
                hi = m;
            }
        }
    }
    (lo, hi)
}

// ---- complex roots ----

fn upper_boxes(f: &IntPoly, count: usize) -> Vec<ComplexBox> {
    let df = f.derivative();
    let n = f.degree();
    let mut offset = 0.0;
    let mut w = 64u32;
    let init = initial_points(f, offset);
    let mut zs = aberth_f64(f, &init, 50 + 10 * n)
        .unwrap_or_else(|| init.iter().map(|&(lr, th)| to_cx(lr, th)).collect());
    for attempt in 0..24 {
        aberth(f, &mut zs, w, 8 + n);
        let mut found: Vec<ComplexBox> = Vec::new();
        for z in &zs {
            if z.im.sign() != Sign::Plus {
                continue;
            }
            if let Some(b) = certify_near(f, &df, z.clone(), w) {
                if b.im_lo.sign() == Sign::Plus && !found.iter().any(|o| o.overlaps(&b)) {
                    found.push(b);
                }
            }
        }
        if found.len() == count {
            return found;
        }
        w = (w * 3 / 2).max(w + 32);
        if attempt % 6 == 5 {
            offset += 0.37;
            zs = initial_points(f, offset).iter().map(|&(lr, th)| to_cx(lr, th)).collect();
            w = 64;
            aberth(f, &mut zs, w, 100 + 10 * n);
        }
    }
    panic!("complex root isolation did not converge for {f}");
}

/// Shrinks a box with a unique root of `f` by quadrant exclusion.
fn subdivide(f: &IntPoly, b: &ComplexBox, w: u32) -> ComplexBox {
    let keep: Vec<ComplexBox> = b
        .split()
        .into_iter()
        .filter(|s| !excludes_zero(f, s, w))
        .collect();
    match keep.len() {
        0 => b.clone(),
        _ => keep.iter().skip(1).fold(keep[0].clone(), |a, x| a.hull(x)),
    }
}

/// Shrinks a box containing exactly one root of `f` (squarefree) until its
/// diameter bound drops below `target`. Boxes on the real axis stay there.
pub fn refine_box(f: &IntPoly, b: &ComplexBox, target: &Dyadic) -> ComplexBox {
    if b.diam_bound() < *target {
        return b.clone();
    }
    if b.is_on_real_axis() {
        let (lo, hi) = refine_real(f, &b.re_lo, &b.re_hi, target);
        return ComplexBox::real(lo, hi);
    }
    let df = f.derivative();
    let mut b = b.clone();
    let (cr, ci) = b.center();
    let mag = Cx::new(cr, ci).log2_bound().unwrap_or(0).max(0);
    let need = (mag - target.msb()).max(0) as u32 + 48;
    let mut w = need.max(b.natural_prec());
    let sep = isolation_target(f).mul_pow2(1);
    for attempt in 0..40 {
        let (cr, ci) = b.center();
        let z = Cx::new(cr, ci).round(w);
        if let Some(k) = certify_near(f, &df, z, w) {
            // overlapping boxes this small hold the same root
            let same = b.overlaps(&k) && &b.diam_bound() + &k.diam_bound() < sep;
            if b.contains(&k) || same {
                if k.diam_bound() < *target {
                    return k;
                }
                b = k;
            }
        }
        if attempt % 2 == 1 {
            b = subdivide(f, &b, w);
        }
        w = w + w / 2;
    }
    panic!("box refinement did not converge for {f}");
}

/// Isolates all complex roots of a squarefree polynomial, with every box
/// diameter below `target`. Real roots come first in increasing order, then
/// each non-real root in the upper half-plane followed by its conjugate.
pub fn isolate_squarefree(f: &IntPoly, target: &Dyadic) -> Vec<ComplexBox> {
    let d = f.degree();
    if d == 0 {
        return Vec::new();
    }
    let reals = real_roots(f);
    let mut out: Vec<ComplexBox> = reals
        .iter()
        .map(|(lo, hi)| {
            let (a, b) = refine_real(f, lo, hi, target);
            ComplexBox::real(a, b)
        })
        .collect();
    let nc = d - reals.len();
    if nc > 0 {
        let mut ups: Vec<ComplexBox> = upper_boxes(f, nc / 2)
            .into_iter()
            .map(|b| refine_box(f, &b, target))
            .collect();
        ups.sort_by(|a, b| a.re_lo.cmp(&b.re_lo).then(a.im_lo.cmp(&b.im_lo)));
        for u in ups {
            let c = u.conj();
            out.push(u);
            out.push(c);
        }
    }
    out
}

fn sqrt_upper(n: u64) -> BigRational {
    Dyadic::from_int(n).sqrt(64, Round::Up).to_rational()
}

fn sqrt_lower(n: u64) -> BigRational {
    Dyadic::from_int(n).sqrt(64, Round::Down).to_rational()
}

/// `d^(e/2)` rounded up, as a rational.
fn half_power_upper(d: u64, e: u64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(d).pow((e / 2) as u32));
    if e.is_multiple_of(2) {
        base
    } else {
        base * sqrt_upper(d)
    }
}

/// Mignotte-style root separation bound `√6 / (d^((d+1)/2) H^(d-1))`,
/// rounded down to a rational.
pub fn mignotte_bound(f: &IntPoly) -> Option<BigRational> {
    let d = f.degree() as u64;
    if d < 2 {
        return None;
    }
    let h = f.height();
    let sqrt6 = sqrt_lower(6);
    let den = half_power_upper(d, d + 1) * BigRational::from_integer(h.pow((d - 1) as u32));
    Some(sqrt6 / den)
}

/// A separation bound valid for every squarefree integer polynomial:
/// `√3 d^(-(d+2)/2) ||f||_2^(1-d)`, rounded down, and never above the
/// Mignotte-style bound.
pub fn safe_separation(f: &IntPoly) -> Option<BigRational> {
    let d = f.degree() as u64;
    let m = mignotte_bound(f)?;
    let norm = BigRational::from_integer(f.norm2_sq().sqrt() + 1u32);
    let sqrt3 = sqrt_lower(3);
    let den = half_power_upper(d, d + 2) * norm.pow(d as i32 - 1);
    let s = sqrt3 / den;
    Some(if s < m { s } else { m })
}

/// Target box diameter guaranteeing isolation: a quarter of the safe bound,
/// as a power of two.
pub fn isolation_target(f: &IntPoly) -> Dyadic {
    match safe_separation(f) {
        None => Dyadic::one(),
        Some(s) => {
            let q = s / BigRational::from_integer(4.into());
            let d = Dyadic::from_rational(&q, 8, Round::Down);
            Dyadic::pow2(d.msb())
        }
    }
}

/// All roots of the squarefree part of `f`, each boxed below the isolation
/// target of that squarefree part.
pub fn isolate(f: &IntPoly) -> (IntPoly, Vec<ComplexBox>) {
    let g = f.squarefree_part();
    let t = isolation_target(&g);
    let boxes = isolate_squarefree(&g, &t);
    (g, boxes)
}

#[cfg(test)]
fn to_f64_pair(b: &ComplexBox) -> (f64, f64) {
    let (r, i) = b.center();
    (r.to_f64(), i.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::cbox::eval_complex;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::from_i64s(c)
    }

    #[test]
    fn real_root_isolation() {
        // (x - 1)(x + 2)(2x - 1)(x^2 - 2)
        let f = &(&(&ip(&[-1, 1]) * &ip(&[2, 1])) * &ip(&[-1, 2])) * &ip(&[-2, 0, 1]);
        let r = real_roots(&f);
        assert_eq!(r.len(), 5);
        let exact: Vec<_> = r.iter().filter(|(a, b)| a == b).collect();
        assert!(!exact.is_empty());
        for (lo, hi) in &r {
            assert!(lo <= hi);
        }
    }

    #[test]
    fn sqrt2_refined() {
        let f = ip(&[-2, 0, 1]);
        let t = Dyadic::pow2(-200);
        let boxes = isolate_squarefree(&f, &t);
        assert_eq!(boxes.len(), 2);
        let (lo, hi) = (&boxes[1].re_lo, &boxes[1].re_hi);
        assert!((hi - lo) < t);
        assert!((lo * lo) < Dyadic::from_int(2) && Dyadic::from_int(2) < (hi * hi));
    }

    #[test]
    fn imaginary_unit() {
        let boxes = isolate_squarefree(&ip(&[1, 0, 1]), &Dyadic::pow2(-60));
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].im_lo > Dyadic::zero());
        let (re, im) = to_f64_pair(&boxes[0]);
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degree_nine_mixed() {
        // x^9 - 3x^5 + x^2 - 7
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[5] = -3;
        c[2] = 1;
        c[0] = -7;
        let f = ip(&c);
        let (g, boxes) = isolate(&f);
        assert_eq!(boxes.len(), 9);
        for (i, a) in boxes.iter().enumerate() {
            for b in &boxes[i + 1..] {
                assert!(!a.overlaps(b));
            }
            assert!(eval_complex(&g, &a.to_cinterval(4000), 4000).contains_zero());
        }
    }

    #[test]
    fn separation_examples() {
        let b = mignotte_bound(&ip(&[-2, 0, 1])).unwrap();
        let v = b.numer().to_f64().unwrap() / b.denom().to_f64().unwrap();
        assert!((v - 0.4330).abs() < 1e-3);
        let b = mignotte_bound(&ip(&[0, -1, 1])).unwrap();
        let v = b.numer().to_f64().unwrap() / b.denom().to_f64().unwrap();
        assert!((v - 0.866).abs() < 1e-3 && v < 1.0);
        assert!(mignotte_bound(&ip(&[-3, 1])).is_none());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebraic::cbox::eval_complex;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn isolation_is_complete_and_disjoint(
            cs in proptest::collection::vec(-20i64..=20, 2..10),
            lead in 1i64..4,
        ) {
            let mut c = cs.clone();
            c.push(lead);
            let f = Poly::from_i64s(&c);
            let (g, boxes) = isolate(&f);
            prop_assert_eq!(boxes.len(), g.degree());
            let t = isolation_target(&g);
            for (i, a) in boxes.iter().enumerate() {
                prop_assert!(a.diam_bound() < t);
                for b in &boxes[i + 1..] {
                    prop_assert!(!a.overlaps(b));
                }
                let w = a.natural_prec() + 16;
                prop_assert!(eval_complex(&g, &a.to_cinterval(w), w).contains_zero());
            }
        }
    }
}
