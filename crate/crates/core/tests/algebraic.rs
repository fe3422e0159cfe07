use std::cmp::Ordering;

use lrspos::algebraic::number::{isolate_roots, AlgebraicNumber};
use lrspos::IntPoly;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gauss(a: i64, b: i64, d: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(&q(a, d))
        .add(&AlgebraicNumber::i().mul(&AlgebraicNumber::from_rational(&q(b, d))).unwrap())
        .unwrap()
}

#[test]
fn roots_of_unity_small_orders() {
    for d in 1..=12u64 {
        for k in 0..d as i64 {
            let z = AlgebraicNumber::root_of_unity(k, d);
            let g = num_integer::gcd(k as u64, d);
            let want = if k == 0 { 1 } else { d / g };
            assert_eq!(z.root_of_unity_order(), Some(want), "{k}/{d}");
            // display forces refinement, which must terminate
            assert!(!z.to_string().is_empty());
            let (re, im) = z.approx();
            let t = std::f64::consts::TAU * k as f64 / d as f64;
            assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
        }
    }
}

#[test]
fn i_from_both_constructions() {
    let a = AlgebraicNumber::root_of_unity(1, 4);
    assert!(a.equals(&AlgebraicNumber::i()));
    assert!(a.mul(&a).unwrap().equals(&AlgebraicNumber::from_int(-1)));
}

#[test]
fn sqrt_two_squared() {
    let r = AlgebraicNumber::from_int(2).sqrt().unwrap();
    assert!(r.mul(&r).unwrap().equals(&AlgebraicNumber::from_int(2)));
    assert_eq!(r.cmp_real(&AlgebraicNumber::from_rational(&q(141, 100))).unwrap(), Ordering::Greater);
    assert_eq!(r.cmp_real(&AlgebraicNumber::from_rational(&q(142, 100))).unwrap(), Ordering::Less);
}

#[test]
fn conjugate_pairs_isolated() {
    // x^4 + 1: four primitive 8th roots of unity
    let roots = isolate_roots(&IntPoly::from_i64s(&[1, 0, 0, 0, 1]));
    assert_eq!(roots.len(), 4);
    for r in &roots {
        assert_eq!(r.root_of_unity_order(), Some(8));
        assert!(r.modulus_sq().unwrap().is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gaussian_field_laws(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, e in -9i64..=9, d in 1i64..=5) {
        let x = gauss(a, b, d);
        let y = gauss(c, e, 1);
        let s = x.add(&y).unwrap();
        prop_assert!(s.sub(&y).unwrap().equals(&x));
        let p = x.mul(&y).unwrap();
        prop_assert!(p.equals(&y.mul(&x).unwrap()));
        if !y.is_zero() {
            prop_assert!(p.div(&y).unwrap().equals(&x));
        }
        let n = x.modulus_sq().unwrap();
        let want = q(a * a + b * b, d * d);
        prop_assert!(n.equals(&AlgebraicNumber::from_rational(&want)));
    }

    #[test]
    fn rational_order_matches(a in -50i64..=50, b in 1i64..=20, c in -50i64..=50, e in 1i64..=20) {
        let x = AlgebraicNumber::from_rational(&q(a, b));
        let y = AlgebraicNumber::from_rational(&q(c, e));
        prop_assert_eq!(x.cmp_real(&y).unwrap(), q(a, b).cmp(&q(c, e)));
    }
}
