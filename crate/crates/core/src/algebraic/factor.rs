//! Factorization of integer polynomials (Berlekamp–Zassenhaus style: modular
//! factorization, Hensel lifting, subset recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;

type IntPoly = Poly<BigInt>;

/// Outcome of a factorization attempt.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<IntPoly>,
    /// False when the recombination budget ran out; the factors are then only
    /// known to be a valid (possibly incomplete) factorization.
    pub complete: bool,
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

// ---- arithmetic in Z/p[x], coefficients as u64 with p < 2^31 ----

fn zp_norm(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zp_from(f: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    zp_norm(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn zp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn zp_inv(a: u64, p: u64) -> u64 {
    zp_pow(a, p - 2, p)
}

fn zp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    zp_norm(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn zp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    zp_norm(r)
}

fn zp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = zp_inv(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * y % p) % p;
            }
        }
    }
    r.truncate(db);
    (zp_norm(q), zp_norm(r))
}

fn zp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    zp_divrem(a, b, p).1
}

fn zp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = zp_inv(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

fn zp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = zp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    zp_monic(&a, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` and `g` monic.
fn zp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s2 = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t2 = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = zp_inv(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| zp_norm(v.into_iter().map(|x| x * inv % p).collect());
    (sc(r0), sc(s0), sc(t0))
}

fn zp_powmod(base: &[u64], mut e: BigInt, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = zp_rem(base, m, p);
    while e.is_positive() {
        if e.is_odd() {
            r = zp_rem(&zp_mul(&r, &b, p), m, p);
        }
        e >>= 1;
        if e.is_positive() {
            b = zp_rem(&zp_mul(&b, &b, p), m, p);
        }
    }
    r
}

fn zp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    zp_norm(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = zp_powmod(&h, BigInt::from(p), &f, p);
        let g = zp_gcd(&zp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = zp_divrem(&f, &g, p).0;
            h = zp_rem(&h, &f, p);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd `p`).
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = zp_norm((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = zp_powmod(&a, e.clone(), f, p);
        let g = zp_gcd(&zp_sub(&b, &[1], p), f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = zp_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&zp_monic(&q, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let f = zp_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

// ---- Hensel lifting over Z/p^k ----

fn to_int(v: &[u64]) -> IntPoly {
    Poly::new(v.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    Poly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `F ≡ g h (mod p)` with monic `g`, `h` to a factorization modulo `p^a`.
fn hensel_pair(f: &IntPoly, g: &[u64], h: &[u64], p: u64, a: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = zp_xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = to_int(g);
    let mut h = to_int(h);
    let mut pk = pb.clone();
    for _ in 1..a {
        let pk1 = &pk * &pb;
        let diff = &reduce(f, &pk1) - &(&g * &h);
        let diff = reduce(&diff, &pk1);
        let e: Vec<u64> = diff
            .coeffs()
            .iter()
            .map(|c| (c / &pk).mod_floor(&pb).to_u64().unwrap())
            .collect();
        let e = zp_norm(e);
        if !e.is_empty() {
            let gz = zp_from(&g, p);
            let hz = zp_from(&h, p);
            let dg = zp_rem(&zp_mul(&t, &e, p), &gz, p);
            let dh = zp_rem(&zp_mul(&s, &e, p), &hz, p);
            g = &g + &to_int(&dg).scale(&pk);
            h = &h + &to_int(&dh).scale(&pk);
        }
        pk = pk1;
    }
    (g, h)
}

/// Lifts all modular factors of the monic (mod `p^a`) polynomial `f`.
fn hensel_multi(f: &IntPoly, facs: &[Vec<u64>], p: u64, a: u32, m: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(facs.len());
    let mut cur = f.clone();
    for i in 0..facs.len() {
        if i + 1 == facs.len() {
            out.push(reduce(&cur, m));
            break;
        }
        let mut rest = vec![1u64];
        for g in &facs[i + 1..] {
            rest = zp_mul(&rest, g, p);
        }
        let (g, h) = hensel_pair(&cur, &facs[i], &rest, p, a);
        out.push(reduce(&g, m));
        cur = reduce(&h, m);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// Coefficient bound for factors of `f` (Mignotte), times `|lc|`.
fn factor_bound(f: &IntPoly) -> BigInt {
    let n = f.degree();
    let norm = f.norm2_sq().sqrt() + 1u32;
    (BigInt::one() << n) * norm * f.lc().abs()
}

fn zassenhaus(f: &IntPoly, budget: &mut u64) -> (Vec<IntPoly>, bool) {
    let n = f.degree();
    if n <= 1 {
        return (vec![f.clone()], true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    // choose the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let lc = f.lc().mod_floor(&BigInt::from(p));
        if lc.is_zero() {
            continue;
        }
        let fp = zp_from(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let g = zp_gcd(&fp, &zp_derivative(&fp, p), p);
        if g.len() > 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p, &mut rng);
        if facs.len() == 1 {
            return (vec![f.clone()], true);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, facs) = best.expect("no suitable prime for factorization");
    let bound = factor_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut a = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        a += 1;
    }
    let lc = f.lc();
    let fm = reduce(&f.scale(&mod_inverse(&lc, &m)), &m);
    let mut lifted = hensel_multi(&fm, &facs, p, a, &m);

    let mut result = Vec::new();
    let mut rem = f.clone();
    let mut size = 1;
    let mut complete = true;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if *budget == 0 {
                complete = false;
                break 'outer;
            }
            *budget -= 1;
            let lcr = rem.lc();
            // cheap constant-term test first
            let mut c0 = lcr.clone();
            for &i in &idx {
                c0 = (c0 * lifted[i].coeff(0)).mod_floor(&m);
            }
            let c0 = symmetric(&Poly::constant(c0), &m).coeff(0);
            let r0 = &lcr * rem.coeff(0);
            let plausible = if c0.is_zero() { r0.is_zero() } else { (&r0 % &c0).is_zero() };
            if plausible {
                let mut g = Poly::constant(lcr.clone());
                for &i in &idx {
                    g = reduce(&(&g * &lifted[i]), &m);
                }
                let g = symmetric(&g, &m).primitive();
                if let Some(q) = rem.exact_div(&g) {
                    result.push(g);
                    rem = q;
                    let mut keep = Vec::new();
                    for (i, l) in lifted.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(l);
                        }
                    }
                    lifted = keep;
                    continue 'outer;
                }
            }
            // next combination
            let mut k = size;
            loop {
                if k == 0 {
                    size += 1;
                    continue 'outer;
                }
                k -= 1;
                if idx[k] < r - size + k {
                    idx[k] += 1;
                    for j in k + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if !rem.is_constant() {
        result.push(rem.primitive());
    }
    (result, complete)
}

/// Factors a squarefree primitive polynomial into irreducibles over `Z`.
///
/// `budget` bounds the number of recombination trials.
pub fn factor_squarefree(f: &IntPoly, budget: u64) -> Factorization {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut f = f.primitive();
    let mut factors = Vec::new();
    if f.degree() == 0 {
        return Factorization {
            factors,
            complete: true,
        };
    }
    if f.coeff(0).is_zero() {
        factors.push(Poly::x());
        f = f.exact_div(&Poly::x()).unwrap();
    }
    let mut budget = budget;
    let (rest, complete) = if f.degree() == 0 {
        (Vec::new(), true)
    } else {
        zassenhaus(&f, &mut budget)
    };
    factors.extend(rest);
    for g in factors.iter_mut() {
        if g.lc().is_negative() {
            *g = -g.clone();
        }
    }
    Factorization { factors, complete }
}

/// Default recombination budget.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Irreducible factors of the squarefree part of `f`.
pub fn factor(f: &IntPoly) -> Factorization {
    factor_squarefree(&f.squarefree_part(), DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::from_i64s(c)
    }

    fn product(fs: &[IntPoly]) -> IntPoly {
        fs.iter().fold(Poly::one(), |a, b| &a * b)
    }

    #[test]
    fn factors_product_of_known_irreducibles() {
        let parts = [ip(&[-2, 0, 1]), ip(&[1, 1, 1]), ip(&[5, -6, 5]), ip(&[-3, 2])];
        let f = product(&parts);
        let r = factor_squarefree(&f, DEFAULT_BUDGET);
        assert!(r.complete);
        assert_eq!(r.factors.len(), 4);
        let mut got = r.factors.clone();
        got.sort_by_key(|g| (g.degree(), format!("{g}")));
        assert_eq!(product(&got).primitive(), f.primitive());
        for p in &parts {
            assert!(got.contains(&p.primitive()) || got.contains(&(-p.clone()).primitive()));
        }
    }

    #[test]
    fn irreducible_with_many_modular_factors() {
        // x^4 - 10x^2 + 1 splits into linear or quadratic factors modulo every prime
        let f = ip(&[1, 0, -10, 0, 1]);
        let r = factor_squarefree(&f, DEFAULT_BUDGET);
        assert!(r.complete);
        assert_eq!(r.factors, vec![f]);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let r = factor_squarefree(&ip(&c), DEFAULT_BUDGET);
        assert_eq!(r.factors.len(), 6);
        let degs: Vec<usize> = {
            let mut d: Vec<usize> = r.factors.iter().map(|g| g.degree()).collect();
            d.sort();
            d
        };
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn zero_root_and_nonmonic() {
        let f = &ip(&[0, 1]) * &(&ip(&[-1, 3]) * &ip(&[1, 0, 2]));
        let r = factor_squarefree(&f, DEFAULT_BUDGET);
        assert_eq!(r.factors.len(), 3);
        assert_eq!(product(&r.factors).primitive(), f.primitive());
    }
}
