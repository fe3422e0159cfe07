use lrspos::algebraic::number::AlgebraicNumber;
use lrspos::relations::{compute_lattice, holds, Exactness, RelationLattice};
use lrspos::torusmin::{check_finiteness, minimize_h, Finiteness, Method, TrigForm};
use num_rational::BigRational;
use num_traits::ToPrimitive;
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
fn lattice_of_related_points() {
    let l = gauss(3, 4, 5);
    let lams = [l.clone(), l.pow(2).unwrap(), AlgebraicNumber::i()];
    let lat = compute_lattice(&lams, 20).unwrap();
    assert_eq!(lat.rank, 2);
    for v in &lat.basis {
        assert!(holds(&lams, v).unwrap());
    }
    assert!(lat.contains(&[2, -1, 0]));
    assert!(lat.contains(&[0, 0, 4]));
    assert!(!lat.contains(&[1, 0, 0]));
}

#[test]
fn finiteness_by_rank() {
    let lat = |basis: &[Vec<i64>]| RelationLattice::from_basis(4, basis, Exactness::Complete).unwrap();
    assert_eq!(check_finiteness(&lat(&[]), 4), Finiteness::FiniteByRank(0));
    assert_eq!(check_finiteness(&lat(&[vec![1, -1, 0, 0]]), 4), Finiteness::FiniteByRank(1));
    assert_eq!(
        check_finiteness(&lat(&[vec![1, -1, 0, 0], vec![0, 1, -1, 0]]), 4),
        Finiteness::NotCovered
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_zero_closed_form(cs in prop::collection::vec((-6i64..=6, -6i64..=6), 1..=3)) {
        prop_assume!(cs.iter().all(|&(a, b)| a != 0 || b != 0));
        let coeffs: Vec<_> = cs.iter().map(|&(a, b)| (q(a, 1), q(b, 1))).collect();
        let h = TrigForm::from_gaussian(&coeffs).unwrap();
        let lat = RelationLattice::from_basis(cs.len(), &[], Exactness::Complete).unwrap();
        let c = minimize_h(&h, &lat).unwrap();
        prop_assert_eq!(c.method, Method::ClosedForm);
        let want: f64 = -2.0 * cs.iter().map(|&(a, b)| ((a * a + b * b) as f64).sqrt()).sum::<f64>();
        prop_assert!((c.mu_lo.to_f64().unwrap() - want).abs() < 1e-9);
        prop_assert!((c.mu_hi.to_f64().unwrap() - want).abs() < 1e-9);
    }
}
