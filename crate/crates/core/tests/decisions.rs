use lrspos::decide::{decide_positivity, decide_ultimate_positivity, verify_certificate, Config, Decision, Verdict};
use lrspos::lrs::Lrs;
use proptest::prelude::*;

fn cfg() -> Config {
    Config {
        budget: 5_000,
        ..Config::default()
    }
}

#[test]
fn certificates_survive_serialization() {
    let cases = [
        Lrs::from_i64s(&[1, 1], &[0, 1]).unwrap(),
        Lrs::from_i64s(&[2, -2], &[0, 1]).unwrap(),
        Lrs::from_i64s(&[3, -2], &[-99, -98]).unwrap(),
        Lrs::from_i64s(&[0, 1], &[1, -1]).unwrap(),
    ];
    for s in &cases {
        for d in [decide_positivity(s, &cfg()).unwrap(), decide_ultimate_positivity(s, &cfg()).unwrap()] {
            let j = serde_json::to_string(&d).unwrap();
            let back: Decision = serde_json::from_str(&j).unwrap();
            assert_eq!(back.verdict, d.verdict);
            assert!(verify_certificate(s, &back), "{s:?}");
        }
    }
}

#[test]
fn alternating_parts() {
    // (-1)^n: one part positive, one negative
    let s = Lrs::from_i64s(&[-1], &[1]).unwrap();
    let d = decide_ultimate_positivity(&s, &cfg()).unwrap();
    assert_eq!(d.verdict, Verdict::NotUltimatelyPositive);
    assert_eq!(decide_positivity(&s, &cfg()).unwrap().witness, Some(1));
}

#[test]
fn flipped_verdict_rejected() {
    let s = Lrs::from_i64s(&[1, 1], &[0, 1]).unwrap();
    let mut d = decide_positivity(&s, &cfg()).unwrap();
    d.verdict = Verdict::NotPositive;
    d.witness = Some(3);
    assert!(!verify_certificate(&s, &d));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_are_first_negative_terms(
        b in prop::collection::vec(-5i64..=5, 2),
        u in prop::collection::vec(-5i64..=5, 2),
    ) {
        prop_assume!(b[1] != 0);
        let s = Lrs::from_i64s(&b, &u).unwrap();
        prop_assume!(s.is_simple());
        let d = decide_positivity(&s, &cfg()).unwrap();
        if let Some(w) = d.witness {
            prop_assert!(s.term_at(w) < 0.into());
            prop_assert!((0..w).all(|n| s.term_at(n) >= 0.into()));
        }
        if d.verdict == Verdict::Positive {
            prop_assert!((0..300).all(|n| s.term_at(n) >= 0.into()));
        }
        prop_assert!(verify_certificate(&s, &d));
    }
}
