//! Certified elementary functions on dyadic intervals.
//!
//! Every function returns an interval that contains the image of the input
//! interval. Series are truncated once the next term drops below the target
//! precision; the tail is enclosed by twice the first omitted term, which is
//! valid because all series here are evaluated where consecutive terms at
//! least halve.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::dyadic::{Dyadic, Round};
use super::interval::{DyadicCInterval, DyadicInterval, Interval};

const GUARD: u32 = 32;

static PI_CACHE: Mutex<Option<DyadicInterval>> = Mutex::new(None);

/// Rounds an interval outward to `prec` bits.
pub fn coarsen(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    Interval::new(x.lo.round(prec, Round::Down), x.hi.round(prec, Round::Up), prec)
}

fn tail(mag: Dyadic, prec: u32) -> DyadicInterval {
    let m = mag.mul_pow2(1);
    Interval::new(-&m, m, prec)
}

fn small(t: &DyadicInterval, w: u32) -> bool {
    let m = t.mag();
    m.is_zero() || m.msb() < -(w as i64) - 4
}

/// `atan` by its Taylor series, for `|x| <= 1/8`.
fn atan_series(x: &DyadicInterval, w: u32) -> DyadicInterval {
    let x2 = x.sqr();
    let mut pow = x.clone();
    let mut sum = Interval::zero(w);
    let mut k: i64 = 0;
    loop {
        let term = &pow / &Interval::from_i64(2 * k + 1, w);
        if small(&term, w) {
            return &sum + &tail(term.mag(), w);
        }
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        pow = &pow * &x2;
        k += 1;
    }
}

/// `atanh` by its Taylor series, for `|x| <= 1/4`.
fn atanh_series(x: &DyadicInterval, w: u32) -> DyadicInterval {
    let x2 = x.sqr();
    let mut pow = x.clone();
    let mut sum = Interval::zero(w);
    let mut k: i64 = 0;
    loop {
        let term = &pow / &Interval::from_i64(2 * k + 1, w);
        if small(&term, w) {
            return &sum + &tail(term.mag(), w);
        }
        sum = &sum + &term;
        pow = &pow * &x2;
        k += 1;
    }
}

fn nearest_int(f: &Dyadic) -> BigInt {
    (f + &Dyadic::pow2(-1)).floor()
}

fn recip_int(n: i64, w: u32) -> DyadicInterval {
    Interval::from_i64(1, w) / Interval::from_i64(n, w)
}

/// Enclosure of π.
pub fn pi(prec: u32) -> DyadicInterval {
    {
        let cache = PI_CACHE.lock().unwrap();
        if let Some(c) = cache.as_ref() {
            if c.prec >= prec {
                return coarsen(c, prec);
            }
        }
    }
    let w = prec + GUARD;
    let a = atan_series(&recip_int(5, w), w);
    let b = atan_series(&recip_int(239, w), w);
    let p = &a.scale_pow2(4) - &b.scale_pow2(2);
    *PI_CACHE.lock().unwrap() = Some(p.clone());
    coarsen(&p, prec)
}

fn ln2(w: u32) -> DyadicInterval {
    atanh_series(&recip_int(3, w), w).scale_pow2(1)
}

fn exp_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    let mag = x.msb().max(0) as u32;
    let w = prec + GUARD + mag;
    let l2 = ln2(w);
    let xi = Interval::point(x.clone(), w);
    let k = nearest_int(&(&xi / &l2).mid()).to_i64().expect("exp argument out of range");
    let r = &xi - &(&l2 * &Interval::from_i64(k, w));
    const S: i32 = 10;
    let rs = r.scale_pow2(-S);
    let mut term = Interval::one(w);
    let mut sum = Interval::zero(w);
    let mut n = 0i64;
    loop {
        if small(&term, w + 2 * S as u32) {
            sum = &sum + &tail(term.mag(), w);
            break;
        }
        sum = &sum + &term;
        n += 1;
        term = &(&term * &rs) / &Interval::from_i64(n, w);
    }
    for _ in 0..S {
        sum = sum.sqr();
    }
    let out = &sum * &Interval::point(Dyadic::pow2(k), w);
    coarsen(&out, prec)
}

/// Enclosure of `exp` over the interval.
pub fn exp(x: &DyadicInterval) -> DyadicInterval {
    let p = x.prec;
    let lo = exp_point(&x.lo, p);
    let hi = if x.lo == x.hi { lo.clone() } else { exp_point(&x.hi, p) };
    let mut l = lo.lo;
    if l.sign() == num_bigint::Sign::Minus {
        l = Dyadic::zero();
    }
    Interval::new(l, hi.hi, p)
}

fn ln_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    assert!(x.sign() == num_bigint::Sign::Plus, "ln of non-positive value");
    let w = prec + GUARD;
    // x = m 2^e with m in [2/3, 4/3]
    let mut e = x.msb();
    let mut m = x.mul_pow2(-e);
    if m > Dyadic::from_int(4).div(&Dyadic::from_int(3), 64, Round::Down) {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let mi = Interval::point(m, w);
    let one = Interval::one(w);
    let t = &(&mi - &one) / &(&mi + &one);
    let a = atanh_series(&t, w).scale_pow2(1);
    let out = &a + &(&ln2(w) * &Interval::from_i64(e, w));
    coarsen(&out, prec)
}

/// Enclosure of the natural logarithm; panics unless the interval is positive.
pub fn ln(x: &DyadicInterval) -> DyadicInterval {
    let p = x.prec;
    let lo = ln_point(&x.lo, p);
    let hi = if x.lo == x.hi { lo.clone() } else { ln_point(&x.hi, p) };
    Interval::new(lo.lo, hi.hi, p)
}

/// Enclosure of `log2`.
pub fn log2(x: &DyadicInterval) -> DyadicInterval {
    let w = x.prec + GUARD;
    let l = ln(&x.with_prec(w));
    coarsen(&(&l / &ln2(w)), x.prec)
}

fn atan_core(x: &DyadicInterval, w: u32) -> DyadicInterval {
    // |x| <= 1; three argument halvings bring it below tan(pi/32)
    let one = Interval::one(w);
    let mut y = x.clone();
    for _ in 0..3 {
        let d = &one + &(&one + &y.sqr()).sqrt();
        y = &y / &d;
    }
    atan_series(&y, w).scale_pow2(3)
}

fn atan_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    let w = prec + GUARD;
    let xi = Interval::point(x.clone(), w);
    let out = if x.abs() <= Dyadic::one() {
        atan_core(&xi, w)
    } else {
        let inv = xi.recip().unwrap();
        let half_pi = pi(w).scale_pow2(-1);
        let a = atan_core(&inv, w);
        if x.sign() == num_bigint::Sign::Plus {
            &half_pi - &a
        } else {
            &(-&half_pi) - &a
        }
    };
    coarsen(&out, prec)
}

/// Enclosure of `atan` over the interval.
pub fn atan(x: &DyadicInterval) -> DyadicInterval {
    let p = x.prec;
    let lo = atan_point(&x.lo, p);
    let hi = if x.lo == x.hi { lo.clone() } else { atan_point(&x.hi, p) };
    Interval::new(lo.lo, hi.hi, p)
}

/// Enclosure of the argument of a complex box not containing zero.
///
/// The result lies in `(-π, π]` except for boxes straddling the negative real
/// axis, whose enclosure is centred on `π` and may exceed it.
pub fn arg(z: &DyadicCInterval) -> Option<DyadicInterval> {
    if z.contains_zero() {
        return None;
    }
    let p = z.prec();
    let w = p + GUARD;
    let x = z.re.with_prec(w);
    let y = z.im.with_prec(w);
    let pi_w = pi(w);
    let out = if x.is_positive() {
        atan(&(&y / &x))
    } else if y.is_positive() {
        &pi_w.scale_pow2(-1) - &atan(&(&x / &y))
    } else if y.is_negative() {
        &(-&pi_w.scale_pow2(-1)) - &atan(&(&x / &y))
    } else {
        // x < 0 and y straddles zero
        &atan(&(&y / &x)) + &pi_w
    };
    Some(coarsen(&out, p))
}

fn sin_cos_series(r: &DyadicInterval, w: u32) -> (DyadicInterval, DyadicInterval) {
    let r2 = r.sqr();
    let mut s = Interval::zero(w);
    let mut c = Interval::zero(w);
    let mut st = r.clone();
    let mut ct = Interval::one(w);
    let mut k: i64 = 0;
    let mut s_done = false;
    let mut c_done = false;
    while !(s_done && c_done) {
        if !s_done {
            if small(&st, w) {
                s = &s + &tail(st.mag(), w);
                s_done = true;
            } else {
                s = if k % 2 == 0 { &s + &st } else { &s - &st };
                st = &(&st * &r2) / &Interval::from_i64((2 * k + 2) * (2 * k + 3), w);
            }
        }
        if !c_done {
            if small(&ct, w) {
                c = &c + &tail(ct.mag(), w);
                c_done = true;
            } else {
                c = if k % 2 == 0 { &c + &ct } else { &c - &ct };
                ct = &(&ct * &r2) / &Interval::from_i64((2 * k + 1) * (2 * k + 2), w);
            }
        }
        k += 1;
    }
    (s, c)
}

fn sin_cos_point(x: &Dyadic, prec: u32) -> (DyadicInterval, DyadicInterval) {
    let mag = x.msb().max(0) as u32;
    let w = prec + GUARD + mag;
    let half_pi = pi(w).scale_pow2(-1);
    let xi = Interval::point(x.clone(), w);
    let k = nearest_int(&(&xi / &half_pi).mid());
    let r = &xi - &(&half_pi * &Interval::from_int(&k, w));
    let (s, c) = sin_cos_series(&r, w);
    let quad = k.mod_floor_4();
    let (s, c) = match quad {
        0 => (s, c),
        1 => (c, -&s),
        2 => (-&s, -&c),
        _ => (-&c, s),
    };
    (clamp_unit(&coarsen(&s, prec)), clamp_unit(&coarsen(&c, prec)))
}

trait Mod4 {
    fn mod_floor_4(&self) -> u8;
}

impl Mod4 for BigInt {
    fn mod_floor_4(&self) -> u8 {
        let r = self % BigInt::from(4);
        let r = if r.is_negative() { r + 4 } else { r };
        r.to_u8().unwrap()
    }
}

fn clamp_unit(x: &DyadicInterval) -> DyadicInterval {
    let one = Dyadic::one();
    let m1 = -&one;
    let lo = if x.lo < m1 { m1.clone() } else { x.lo.clone() };
    let hi = if x.hi > one { one } else { x.hi.clone() };
    Interval::new(lo.min(hi.clone()), hi, x.prec)
}

fn unit(prec: u32) -> DyadicInterval {
    Interval::new(-Dyadic::one(), Dyadic::one(), prec)
}

/// Enclosures of `sin` and `cos` over the interval.
pub fn sin_cos(x: &DyadicInterval) -> (DyadicInterval, DyadicInterval) {
    let p = x.prec;
    let w = x.width();
    if w >= Dyadic::one() {
        return (unit(p), unit(p));
    }
    let m = x.mid();
    let (s, c) = sin_cos_point(&m, p);
    // both functions are 1-Lipschitz; second order: f(m) + f'(m) [-r, r] +
    // [-r^2/2, r^2/2]
    let r = w.mul_pow2(-1).round(p, Round::Up);
    let ri = Interval::new(-&r, r.clone(), p);
    let r2 = (&r * &r).mul_pow2(-1).round(p, Round::Up);
    let s2 = (&s + &(&c * &ri)).inflate(&r2);
    let c2 = (&c - &(&s * &ri)).inflate(&r2);
    let tight = |a: DyadicInterval, b: DyadicInterval| a.intersect(&b).unwrap_or(a);
    (
        clamp_unit(&tight(s.inflate(&r), s2)),
        clamp_unit(&tight(c.inflate(&r), c2)),
    )
}

pub fn sin(x: &DyadicInterval) -> DyadicInterval {
    sin_cos(x).0
}

pub fn cos(x: &DyadicInterval) -> DyadicInterval {
    sin_cos(x).1
}

/// `e^{iθ}` as a complex box.
pub fn cis(theta: &DyadicInterval) -> DyadicCInterval {
    let (s, c) = sin_cos(theta);
    DyadicCInterval::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &DyadicInterval, v: f64, tol: f64) {
        assert!(
            (x.mid_f64() - v).abs() <= tol,
            "{:?} vs {v}",
            x
        );
    }

    #[test]
    fn pi_digits() {
        let p = pi(300);
        assert!(p.width_f64() < 1e-85);
        close(&p, std::f64::consts::PI, 1e-15);
        let lo = p.lo.to_rational();
        // 3.14159265358979323846264338327950288419716939937510
        let approx = num_rational::BigRational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            num_bigint::BigInt::from(10).pow(50),
        );
        assert!((lo - approx).abs() < num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(48)));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [0.5, 1.0, -3.25, 20.0, 1e-5] {
            let x = DyadicInterval::from_dyadic(&Dyadic::from_f64(v), 128);
            let e = exp(&x);
            close(&e, v.exp(), 1e-12 * v.exp());
            let back = ln(&e);
            assert!(back.contains(&Dyadic::from_f64(v)));
            assert!(back.width_f64() < 1e-30);
        }
    }

    #[test]
    fn trig_values() {
        for v in [0.0, 0.3, -1.7, 3.0, 10.0, -100.5] {
            let x = DyadicInterval::from_dyadic(&Dyadic::from_f64(v), 160);
            let (s, c) = sin_cos(&x);
            close(&s, v.sin(), 1e-14);
            close(&c, v.cos(), 1e-14);
            let one = &s.sqr() + &c.sqr();
            assert!(one.contains(&Dyadic::one()));
            let a = atan(&x);
            close(&a, v.atan(), 1e-14);
        }
    }

    #[test]
    fn argument_of_quadrants() {
        let p = 128;
        for (re, im) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (0.5, -2.0), (-3.0, 0.0)] {
            let z = DyadicCInterval::new(
                DyadicInterval::from_dyadic(&Dyadic::from_f64(re), p),
                DyadicInterval::from_dyadic(&Dyadic::from_f64(im), p),
            );
            let a = arg(&z).unwrap();
            let want = f64::atan2(im, re);
            close(&a, want, 1e-14);
        }
    }
}
