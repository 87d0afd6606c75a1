mod common;

use common::table;
use corrprop::{
    ci_log_bf, default_log_bf, i_log_bf, mcnemar_test, sensitivity_curve, to_summary, ContingencyTable, DirichletHyper,
    EvidenceSummary, McNemarVariant, Method, PriorSize,
};
use proptest::prelude::*;

fn arb_table(max_cell: u64) -> impl Strategy<Value = ContingencyTable> {
    (0..=max_cell, 0..=max_cell, 0..=max_cell, 0..=max_cell)
        .prop_filter("non-empty", |(a, b, c, d)| a + b + c + d > 0)
        .prop_map(|(a, b, c, d)| table([a, b, c, d]))
}

fn arb_hyper() -> impl Strategy<Value = DirichletHyper> {
    (0.3..4.0f64, 0.3..4.0f64, 0.3..4.0f64, 0.3..4.0f64)
        .prop_map(|(a, b, c, d)| DirichletHyper::new(a, b, c, d).unwrap())
}

fn mirrored(t: &ContingencyTable, a: &DirichletHyper) -> (ContingencyTable, DirichletHyper) {
    (table([t.n11(), t.n10(), t.n01(), t.n00()]), DirichletHyper::new(a.a11(), a.a10(), a.a01(), a.a00()).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_outcomes_leaves_evidence_unchanged(t in arb_table(15), a in arb_hyper(), x in 0u64..10) {
        let (tm, am) = mirrored(&t, &a);
        prop_assert!(close(default_log_bf(&t, &a), default_log_bf(&tm, &am)));
        prop_assert!(close(ci_log_bf(&t, &a, x), ci_log_bf(&tm, &am, x)));
        prop_assert!(close(i_log_bf(&t, &a, x), i_log_bf(&tm, &am, x)));
    }

    #[test]
    fn default_ignores_diagonal_split(t in arb_table(20), a in arb_hyper(), shift in 0u64..20) {
        let moved = shift.min(t.n00());
        let other = table([t.n00() - moved, t.n01(), t.n10(), t.n11() + moved]);
        prop_assert_eq!(default_log_bf(&t, &a).to_bits(), default_log_bf(&other, &a).to_bits());
    }

    #[test]
    fn posteriors_are_probabilities(t in arb_table(30), a in arb_hyper(), x in 0u64..25) {
        for lbf in [default_log_bf(&t, &a), ci_log_bf(&t, &a, x), i_log_bf(&t, &a, x)] {
            prop_assert!(lbf.is_finite());
            let p = to_summary(lbf, Method::Default, None).posterior_prob_h0;
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn mcnemar_p_values_in_range(t in arb_table(40)) {
        for v in [McNemarVariant::ChiSquareCc, McNemarVariant::ChiSquarePlain, McNemarVariant::ExactBinomial] {
            if let Ok(r) = mcnemar_test(&t, v) {
                prop_assert!((0.0..=1.0).contains(&r.p_value), "{:?} {:?}", v, r);
            }
        }
    }

    #[test]
    fn summary_round_trips(t in arb_table(30), x in 0u64..30) {
        let s = to_summary(i_log_bf(&t, &DirichletHyper::uniform(), x), Method::IIntrinsic, Some(PriorSize::XPlusPlus(x)));
        let back: EvidenceSummary = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back.log_bf_h_vs_h0.to_bits(), s.log_bf_h_vs_h0.to_bits());
        prop_assert_eq!(back.posterior_prob_h0.to_bits(), s.posterior_prob_h0.to_bits());
        prop_assert_eq!(back, s);
    }
}

#[test]
fn sensitivity_is_deterministic() {
    let t = table([20, 17, 10, 53]);
    let q: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
    for m in [Method::CiIntrinsic, Method::IIntrinsic] {
        let a = sensitivity_curve(&t, &DirichletHyper::uniform(), m, &q).unwrap();
        let b = sensitivity_curve(&t, &DirichletHyper::uniform(), m, &q).unwrap();
        assert_eq!(a, b);
        assert!(a.points.windows(2).all(|w| w[0].x <= w[1].x));
    }
}

#[test]
fn table_json_rejects_empty() {
    assert!(serde_json::from_str::<ContingencyTable>(r#"{"n00":0,"n01":0,"n10":0,"n11":0}"#).is_err());
    let h: DirichletHyper = serde_json::from_str(r#"{"a01":2.5}"#).unwrap();
    assert_eq!((h.a00(), h.a01(), h.a10(), h.a11()), (1.0, 2.5, 1.0, 1.0));
    assert!(serde_json::from_str::<DirichletHyper>(r#"{"a10":-1}"#).is_err());
}
