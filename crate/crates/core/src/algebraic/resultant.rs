//! Resultants and the polynomial constructions built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::matrix::Matrix;

type IntPoly = Poly<BigInt>;

/// Sylvester matrix of `a` and `b` with formal degrees `m` and `n`.
fn sylvester(a: &[BigInt], m: usize, b: &[BigInt], n: usize) -> Matrix<BigInt> {
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    let get = |c: &[BigInt], i: usize| c.get(i).cloned().unwrap_or_default();
    for r in 0..n {
        for i in 0..=m {
            s[(r, r + i)] = get(a, m - i);
        }
    }
    for r in 0..m {
        for i in 0..=n {
            s[(n + r, r + i)] = get(b, n - i);
        }
    }
    s
}

/// `Res(a, b)` with respect to the actual degrees.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (a.degree(), b.degree());
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    sylvester(a.coeffs(), m, b.coeffs(), n).det()
}

/// Interpolates the integer polynomial of degree at most `xs.len() - 1`
/// through the given points. Panics if the interpolant is not integral.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // Horner on the Newton form
    let mut acc: Poly<BigRational> = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![BigRational::from_integer(-&xs[i]), BigRational::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    Poly::new(
        acc.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral interpolant");
                c.to_integer()
            })
            .collect(),
    )
}

fn sample_points(count: usize) -> Vec<BigInt> {
    let half = (count / 2) as i64;
    (0..count as i64).map(|i| BigInt::from(i - half)).collect()
}

/// `Res_y(a(y), B(x, y))` where `b(t)` returns `B(t, y)` as a polynomial in
/// `y` of formal degree at most `b_deg`, and the result has degree at most
/// `x_deg` in `x`.
pub fn resultant_y<F>(a: &IntPoly, b: F, b_deg: usize, x_deg: usize) -> IntPoly
where
    F: Fn(&BigInt) -> IntPoly,
{
    let m = a.degree();
    let xs = sample_points(x_deg + 1);
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| {
            let bt = b(t);
            assert!(bt.is_zero() || bt.degree() <= b_deg, "formal degree exceeded");
            sylvester(a.coeffs(), m, bt.coeffs(), b_deg).det()
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Polynomial whose roots are all sums `α + β` of roots of `p` and `q`.
pub fn sum_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (dp, dq) = (p.degree(), q.degree());
    // q(t - y) as a polynomial in y
    resultant_y(
        p,
        |t| q.compose(&Poly::new(vec![t.clone(), -BigInt::one()])),
        dq,
        dp * dq,
    )
}

/// Polynomial whose roots are all products `αβ` of roots of `p` and `q`.
pub fn product_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (dp, dq) = (p.degree(), q.degree());
    // y^dq q(t / y) = sum q_i t^i y^(dq - i)
    resultant_y(
        p,
        |t| {
            let mut c = vec![BigInt::zero(); dq + 1];
            let mut tp = BigInt::one();
            for i in 0..=dq {
                c[dq - i] = &q.coeff(i) * &tp;
                tp *= t;
            }
            Poly::new(c)
        },
        dq,
        dp * dq,
    )
}

/// Polynomial whose roots are `e(α)` for the roots `α` of `p`, where `e` has
/// rational coefficients.
pub fn image_poly(p: &IntPoly, e: &Poly<BigRational>) -> IntPoly {
    let d = p.degree();
    let e = e.rem(&p.to_rational());
    let num = IntPoly::from_rational(&e);
    // e = num * s for a rational scale s; roots of the result are scaled back
    let s = if num.is_zero() {
        BigRational::one()
    } else {
        e.lc() / BigRational::from_integer(num.lc())
    };
    let r = resultant_y(
        p,
        |t| &Poly::constant(t.clone()) - &num,
        num.degree(),
        d,
    );
    // roots of r are num(α); e(α) = s * num(α)
    scale_roots(&r, &s)
}

/// Polynomial whose roots are `s * r` for the roots `r` of `p`.
pub fn scale_roots(p: &IntPoly, s: &BigRational) -> IntPoly {
    if s.is_one() {
        return p.clone();
    }
    assert!(!s.is_zero(), "scaling roots by zero");
    // p(x / s) * num^d  with s = a / b:  sum p_i b^i a^(d-i) x^i
    let (a, b) = (s.numer().clone(), s.denom().clone());
    let d = p.degree();
    let mut c = Vec::with_capacity(d + 1);
    for i in 0..=d {
        c.push(&p.coeff(i) * b.pow(i as u32) * a.pow((d - i) as u32));
    }
    Poly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::from_i64s(c)
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 - 3) = 2^2 - 3
        assert_eq!(resultant(&ip(&[-2, 1]), &ip(&[-3, 0, 1])), BigInt::from(1));
        // common root
        assert_eq!(resultant(&ip(&[-1, 0, 1]), &ip(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ip(&[3, -1, 0, 2, 5]);
        let xs: Vec<BigInt> = (-2..3).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let s = sum_poly(&ip(&[-2, 0, 1]), &ip(&[-3, 0, 1]));
        // x^4 - 10 x^2 + 1
        assert_eq!(s.primitive(), ip(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn product_of_sqrts() {
        let s = product_poly(&ip(&[-2, 0, 1]), &ip(&[-3, 0, 1]));
        // (x^2 - 6)^2
        assert_eq!(s.primitive(), ip(&[36, 0, -12, 0, 1]));
    }

    #[test]
    fn image_of_golden_ratio() {
        // phi - 1 for phi a root of x^2 - x - 1 satisfies x^2 + x - 1
        let e = Poly::new(vec![BigRational::from_integer((-1).into()), BigRational::one()]);
        let r = image_poly(&ip(&[-1, -1, 1]), &e);
        assert_eq!(r.primitive(), ip(&[-1, 1, 1]));
    }

    #[test]
    fn image_with_rational_coefficients() {
        // alpha / 2 with alpha^2 = 2 satisfies 2 x^2 - 1
        let e = Poly::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        let r = image_poly(&ip(&[-2, 0, 1]), &e);
        assert_eq!(r.primitive(), ip(&[-1, 0, 2]));
    }
}
