use proptest::prelude::*;
use ringlab::*;

fn small_expr() -> impl Strategy<Value = String> {
    let base = (1usize..=9).prop_map(|k| format!("Zn({k})"));
    prop_oneof![
        base.clone(),
        (base.clone(), base.clone()).prop_map(|(a, b)| format!("Prod({a},{b})")),
        (2usize..=4).prop_map(|k| format!("T(2,Zn({k}))")),
        (2usize..=3).prop_map(|k| format!("M(2,Zn({k}))")),
        (2usize..=3).prop_map(|k| format!("K0(Zn({k}))")),
        Just("Hst(Zn(4),s=1,t=3)".to_string()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radical_chain(expr in small_expr()) {
        let l = Limits::default();
        let a = RingAnalysis::new(build(&parse_expr(&expr).unwrap(), &l).unwrap(), &l).unwrap();
        prop_assert!(a.jacobson().is_subset(a.delta()));
        prop_assert!(a.delta().is_subset(&a.delta_sharp()));
        prop_assert!(a.socle().is_subset(a.delta()));
        prop_assert_eq!(a.delta().is_full(), a.jacobson().len() == 1);
        prop_assert_eq!(a.semiprime_violation(a.delta()), None);
    }

    #[test]
    fn json_round_trip(expr in small_expr()) {
        let l = Limits::default();
        let r = build(&parse_expr(&expr).unwrap(), &l).unwrap();
        let text = r.to_json();
        prop_assert_eq!(FiniteRing::from_json(&text, &l).unwrap().to_json(), text);
    }
}
