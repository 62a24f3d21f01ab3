mod common;

use common::*;
use rand::Rng;
use rjv_core::{
    compare_merger_vs_competition, compare_rjv_vs_competition, compare_rjv_vs_merger,
    cournot_market, expected_consumer_surplus, rjv_profitability, AssumptionPolicy,
    CournotPrimitives, Error, FinancingEnv, MarketRegime, MergerCase, MonopolyProfits, Threshold,
    Verdict,
};

const ENFORCE: AssumptionPolicy = AssumptionPolicy::Enforce;

#[test]
fn s1_frozen_report() {
    let m = cournot_market(&CournotPrimitives::from_alpha(1.0, 1.0, 0.5).unwrap()).unwrap();
    let fin = FinancingEnv::new(0.01, 0.1).unwrap();
    let r = compare_rjv_vs_competition(&m.quad, Some(&m.cs), &ratio(), &fin, ENFORCE).unwrap();
    let c = &r.competition;
    assert!((c.theta2 - 0.194387).abs() < 1e-6);
    assert!((c.theta1 - 0.279378).abs() < 1e-6);
    assert!((r.venture.theta_star - 0.238197).abs() < 1e-6);
    assert!((c.outcome.gamma - 0.063882).abs() < 1e-6);
    assert!((r.venture.outcome.gamma - 0.030126).abs() < 1e-6);
    assert!((r.net_profit_delta - 0.024677).abs() < 1e-6);
    assert!((r.innovation_delta + 0.041181).abs() < 1e-6);
    assert!((r.spend_delta + 0.033756).abs() < 1e-6);
    assert!((r.thresholds.b_bar - 0.020317).abs() < 1e-6);
    assert_eq!(r.verdict, Verdict::Lower);
    assert!(r.flags.icbad_candidate);
    let cs_c = expected_consumer_surplus(&m.cs, &c.outcome).unwrap();
    let cs_v = expected_consumer_surplus(&m.cs, &r.venture.outcome).unwrap();
    assert!((cs_c - 0.286842).abs() < 1e-6);
    assert!((cs_v - 0.288388).abs() < 1e-6);
    assert!(r.cs_delta.unwrap() > 0.0);
}

#[test]
fn favorable_frozen_report() {
    let m = cournot_market(&CournotPrimitives::from_alpha(2.2, 1.0, 0.18).unwrap()).unwrap();
    let fin = FinancingEnv::new(0.01, 0.1).unwrap();
    let r = compare_rjv_vs_competition(&m.quad, None, &ratio(), &fin, ENFORCE).unwrap();
    assert!((r.venture.theta_u - 0.177432).abs() < 1e-6);
    assert_eq!(r.venture.theta_star, r.venture.theta_u);
    assert!((r.competition.theta1 - 0.168194).abs() < 1e-6);
    assert!((r.innovation_delta - 0.009238).abs() < 1e-6);
    assert!((r.spend_delta + 0.011357).abs() < 1e-6);
    assert!((r.thresholds.b_bar - 0.007174).abs() < 1e-6);
    assert!((r.thresholds.rho_bar.finite().unwrap() - 0.039301).abs() < 1e-6);
    assert!(r.flags.b_gt_bbar && r.flags.rho_gt_rhobar);
    assert_eq!(r.verdict, Verdict::Higher);
}

#[test]
fn cournot_rate_threshold_identity() {
    let mut r = rng(21);
    for _ in 0..1000 {
        let alpha = r.gen_range(0.05..5.0);
        let i = alpha * r.gen_range(0.01..0.99);
        let b = r.gen_range(0.1..3.0);
        let m = cournot_market(&CournotPrimitives::from_alpha(alpha, b, i).unwrap()).unwrap();
        let fin = FinancingEnv::new(0.0, 0.1).unwrap();
        let t = rjv_core::compute_thresholds(&m.quad, None, &ratio(), &fin).unwrap();
        let want = i / (2.0 * alpha + i);
        assert!((t.rho_bar.finite().unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn verdicts_never_contradict_thresholds() {
    let mut r = rng(22);
    let cf = ratio();
    for _ in 0..10_000 {
        let q = random_quad(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        match compare_rjv_vs_competition(&q, None, &cf, &fin, ENFORCE) {
            Ok(_) => {}
            Err(e @ Error::Invariant(_)) => panic!("{e} for {q:?} {fin:?}"),
            Err(e) => panic!("unexpected {e}"),
        }
    }
}

#[test]
fn non_soft_innovation_gain_saves_spending() {
    let mut r = rng(23);
    let cf = ratio();
    let mut hits = 0;
    for _ in 0..10_000 {
        let q = random_non_soft(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        let rep = compare_rjv_vs_competition(&q, None, &cf, &fin, ENFORCE).unwrap();
        if rep.innovation_delta > 0.0 {
            hits += 1;
            assert!(rep.spend_delta <= 0.0, "{q:?} {fin:?} {}", rep.spend_delta);
        }
    }
    assert!(
        hits > 100,
        "only {hits} scenarios exercised the implication"
    );
}

#[test]
fn innovation_gain_raises_consumer_surplus() {
    let mut r = rng(24);
    let cf = ratio();
    let mut hits = 0;
    for _ in 0..10_000 {
        let q = random_quad(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        let cs = random_cs(&mut r);
        let rep = compare_rjv_vs_competition(&q, Some(&cs), &cf, &fin, ENFORCE).unwrap();
        if rep.innovation_delta > 1e-9 {
            hits += 1;
            assert!(rep.cs_delta.unwrap() > 0.0);
        }
    }
    assert!(hits > 100);
}

#[test]
fn soft_and_moderate_gains_are_profitable() {
    let mut r = rng(25);
    let cf = ratio();
    for _ in 0..5_000 {
        let q = random_quad(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        let p = rjv_profitability(&q, &cf, &fin, ENFORCE).unwrap();
        let rep = compare_rjv_vs_competition(&q, None, &cf, &fin, ENFORCE).unwrap();
        match rep.regime {
            MarketRegime::Soft => assert!(p.net_profit_delta > 0.0, "{q:?}"),
            MarketRegime::Moderate if rep.innovation_delta > 0.0 => {
                assert!(p.net_profit_delta > 0.0)
            }
            _ => {}
        }
        if p.sufficient.any() {
            assert!(p.net_profit_delta > 0.0);
        }
    }
}

#[test]
fn soft_competition_always_raises_innovation() {
    let mut r = rng(26);
    let cf = ratio();
    for _ in 0..5_000 {
        let q = random_quad(&mut r);
        if q.pi_i0 - q.pi_ii >= q.pi_ii - q.pi_00 {
            continue;
        }
        let fin = random_financing(&mut r, &q, &cf);
        let rep = compare_rjv_vs_competition(&q, None, &cf, &fin, ENFORCE).unwrap();
        assert_eq!(rep.regime, MarketRegime::Soft);
        assert_eq!(
            rep.thresholds.rho_bar,
            Threshold::Finite(rep.thresholds.rho_bar.finite().unwrap())
        );
        assert_ne!(rep.verdict, Verdict::Lower);
    }
}

#[test]
fn merger_trichotomy() {
    let mut r = rng(27);
    let cf = ratio();
    let mut seen = [0usize; 3];
    for _ in 0..5_000 {
        let q = random_quad(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        let mono_gain = q.pooled_value() * r.gen_range(0.2..2.0);
        let mono = MonopolyProfits::new(q.pi_i0 + 0.1, q.pi_i0 + 0.1 + mono_gain);
        let m = compare_rjv_vs_merger(&q, &mono, None, &cf, &fin, ENFORCE).unwrap();
        if m.in_window {
            assert_eq!(m.verdict, Verdict::Equal);
            seen[2] += 1;
            continue;
        }
        match m.case {
            MergerCase::RjvValueHigher => {
                assert_ne!(m.verdict, Verdict::Lower);
                seen[0] += 1;
            }
            MergerCase::MergerValueHigher => {
                assert_ne!(m.verdict, Verdict::Higher);
                seen[1] += 1;
            }
            MergerCase::EqualValue => assert_eq!(m.verdict, Verdict::Equal),
        }
    }
    assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
}

#[test]
fn merger_equal_value_matches_venture() {
    let q = s1();
    let mono = MonopolyProfits::new(0.0, q.pooled_value());
    for &b in &[0.001, 0.01, 0.015] {
        let fin = FinancingEnv::new(b, 0.1).unwrap();
        let m = compare_rjv_vs_merger(&q, &mono, None, &ratio(), &fin, ENFORCE).unwrap();
        assert_eq!(m.case, MergerCase::EqualValue);
        assert_eq!(m.rjv.theta_star, m.merger.theta_star);
        assert_eq!(m.verdict, Verdict::Equal);
    }
}

#[test]
fn merger_versus_competition_runs_self_check() {
    let mut r = rng(28);
    let cf = ratio();
    for _ in 0..2_000 {
        let q = random_quad(&mut r);
        let fin = random_financing(&mut r, &q, &cf);
        let gain = q.escape_value() * r.gen_range(0.1..3.0);
        let mono = MonopolyProfits::new(q.pi_i0, q.pi_i0 + gain);
        let rep = compare_merger_vs_competition(&q, &mono, None, &cf, &fin, ENFORCE).unwrap();
        if gain > q.escape_value() {
            assert_ne!(rep.verdict, Verdict::Lower);
        }
    }
}

#[test]
fn annotate_keeps_going_past_the_budget_bound() {
    let q = s1();
    let rich = FinancingEnv::new(0.5, 0.1).unwrap();
    let err = compare_rjv_vs_competition(&q, None, &ratio(), &rich, ENFORCE).unwrap_err();
    assert!(matches!(err, Error::Assumption(_)));
    let rep =
        compare_rjv_vs_competition(&q, None, &ratio(), &rich, AssumptionPolicy::Annotate).unwrap();
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].code.as_str(), "A2");
}
