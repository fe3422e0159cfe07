use lrspos::lrs::{char_roots, from_matrix, partition_nondegenerate, Lrs};
use lrspos::matrix::Matrix;
use num_bigint::BigInt;
use proptest::prelude::*;

fn lrs_strategy(max_order: usize) -> impl Strategy<Value = Lrs> {
    (1..=max_order).prop_flat_map(|k| {
        (
            prop::collection::vec(-6i64..=6, k).prop_filter("nonzero last", |b| *b.last().unwrap() != 0),
            prop::collection::vec(-6i64..=6, k),
        )
            .prop_map(|(b, u)| Lrs::from_i64s(&b, &u).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_and_slow_terms_agree(s in lrs_strategy(9), n in 0u64..400) {
        prop_assert_eq!(s.term_at_pow(n), s.term_at(n));
    }

    #[test]
    fn terms_satisfy_recurrence(s in lrs_strategy(6)) {
        let t = s.terms(60);
        let k = s.order();
        for n in k..60 {
            let want: BigInt = (1..=k).map(|i| &s.recurrence()[i - 1] * &t[n - i]).sum();
            prop_assert_eq!(&t[n], &want);
        }
    }

    #[test]
    fn decimation_interleaves(s in lrs_strategy(4), l in 1u64..=4) {
        prop_assume!(s.is_simple());
        let t = s.terms(80);
        for r in 0..l {
            let d = s.decimate(l, r);
            for n in 0..(80 - r) / l {
                prop_assert_eq!(d.term_at(n), t[(l * n + r) as usize].clone());
            }
        }
    }

    #[test]
    fn serde_round_trip(s in lrs_strategy(9)) {
        let j = serde_json::to_string(&s).unwrap();
        let back: Lrs = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, s);
    }
}

#[test]
fn fibonacci_from_matrix() {
    let m = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![1.into(), 0.into()]]);
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let ml = from_matrix(&m, &[one.clone(), zero.clone()], &[zero, one]).unwrap();
    assert_eq!(ml.offset, 0);
    assert_eq!(ml.lrs.term_at(30), BigInt::from(832_040));
}

#[test]
fn torsion_pair_splits_in_two() {
    // roots 2 and -2
    let s = Lrs::from_i64s(&[0, 4], &[1, 3]).unwrap();
    let p = partition_nondegenerate(&s, &char_roots(&s)).unwrap();
    assert_eq!(p.modulus, 2);
    for n in 0..40 {
        assert_eq!(p.parts[(n % 2) as usize].term_at(n / 2), s.term_at(n));
    }
}

#[test]
fn rejects_bad_input() {
    assert!(Lrs::from_i64s(&[1, 0], &[1, 1]).is_err());
    assert!(Lrs::from_i64s(&[1], &[1, 1]).is_err());
}
