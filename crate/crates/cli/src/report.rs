//! Analysis reports as JSON. Numbers are rounded to 12 significant digits
//! so reports are stable across platforms and summation orders.

use rjv_core::{
    compare_merger_vs_competition, compare_rjv_vs_competition, compare_rjv_vs_merger, cutoff_set,
    expected_consumer_surplus, licensing_compare, spillover_fc_compare, spillover_no_fc_compare,
    three_firm_outcomes, two_rjv_equilibrium, validate_regularity, AssumptionPolicy,
    AssumptionViolation, ComparisonReport, CompetitionEquilibrium, CsTriple, CsVerdict, CutoffSet,
    Extension, MergerCase, MergerComparison, PortfolioOutcome, SigmaStar, Threshold,
    ThresholdRecord, VenturePortfolio,
};
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::scenario::{Ext, Industry, Scenario, SCHEMA_VERSION};

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// JSON number, or a string for infinities (JSON has none).
pub fn num(x: f64) -> Value {
    let r = round12(x);
    match serde_json::Number::from_f64(r) {
        Some(n) => Value::Number(n),
        None if r.is_nan() => Value::String("nan".into()),
        None if r > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn threshold(t: Threshold) -> Value {
    match t {
        Threshold::Finite(x) => num(x),
        Threshold::Infinite => Value::String("inf".into()),
    }
}

fn opt_threshold(t: Option<Threshold>) -> Value {
    t.map_or(Value::Null, threshold)
}

pub fn violations(vs: &[AssumptionViolation]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| json!({"code": v.code.as_str(), "lhs": num(v.lhs), "rhs": num(v.rhs)}))
            .collect(),
    )
}

pub fn outcome(o: &PortfolioOutcome, cs: Option<&CsTriple>) -> Value {
    let mut m = json!({
        "kind": o.kind.as_str(),
        "innovation_prob": num(o.innovation_prob),
        "duplicated_mass": num(o.duplicated_mass),
        "raw_spend": num(o.raw_spend),
        "financing_cost": num(o.financing_cost),
        "gamma": num(o.gamma),
        "expected_gross_profit": num(o.expected_gross_profit),
        "expected_net_profit": num(o.expected_net_profit),
        "borrows": o.borrows,
        "selection_dependent": o.selection_dependent,
    });
    if let Some(cs) = cs {
        if let Ok(x) = expected_consumer_surplus(cs, o) {
            m["expected_cs"] = num(x);
        }
    }
    m
}

fn competition(c: &CompetitionEquilibrium, cs: Option<&CsTriple>) -> Value {
    json!({
        "theta1": num(c.theta1),
        "theta2": num(c.theta2),
        "firm_spend": [num(c.firm_spend[0]), num(c.firm_spend[1])],
        "firm_borrowing": [num(c.firm_borrowing[0]), num(c.firm_borrowing[1])],
        "outcome": outcome(&c.outcome, cs),
    })
}

fn venture(v: &VenturePortfolio, cs: Option<&CsTriple>) -> Value {
    json!({
        "theta_rho": num(v.theta_rho),
        "theta_u": num(v.theta_u),
        "theta_b": num(v.theta_b),
        "theta_star": num(v.theta_star),
        "outcome": outcome(&v.outcome, cs),
    })
}

pub fn thresholds(t: &ThresholdRecord) -> Value {
    json!({
        "rho_bar": threshold(t.rho_bar),
        "b_bar": num(t.b_bar),
        "psi": threshold(t.psi),
        "rho_bar_merger": opt_threshold(t.rho_bar_m),
        "rho_bar_licensing": opt_threshold(t.rho_bar_l),
        "b_bar_licensing": opt(t.b_bar_l),
        "rho_tilde": opt_threshold(t.rho_tilde),
        "b_tilde": opt(t.b_tilde),
    })
}

fn cutoffs(c: &CutoffSet) -> Value {
    json!({
        "theta2": num(c.theta2),
        "theta1": num(c.theta1),
        "theta_rho": num(c.theta_rho),
        "theta_u": num(c.theta_u),
        "theta_b": num(c.theta_b),
        "theta_star": num(c.theta_star),
        "theta_rho_merger": opt(c.theta_rho_m),
        "theta_u_merger": opt(c.theta_u_m),
        "theta_star_merger": opt(c.theta_star_m),
    })
}

fn extension(e: &Extension) -> Value {
    match e {
        Extension::None => Value::Null,
        Extension::Spillover {
            sigma,
            transformed_regular,
        } => {
            json!({"spillover": {"sigma": num(*sigma), "transformed_regular": transformed_regular}})
        }
        Extension::Licensing { occurs } => json!({"licensing": {"occurs": occurs}}),
    }
}

pub fn comparison(r: &ComparisonReport, cs: Option<&CsTriple>) -> Value {
    let f = &r.flags;
    json!({
        "alternative": match r.alternative {
            rjv_core::Alternative::Rjv => "rjv",
            rjv_core::Alternative::Merger => "merger",
        },
        "extension": extension(&r.extension),
        "regime": r.regime.as_str(),
        "competition": competition(&r.competition, cs),
        "alternative_portfolio": venture(&r.venture, cs),
        "innovation_delta": num(r.innovation_delta),
        "spend_delta": num(r.spend_delta),
        "net_profit_delta": num(r.net_profit_delta),
        "cs_delta": opt(r.cs_delta),
        "thresholds": thresholds(&r.thresholds),
        "flags": {
            "soft": f.soft,
            "moderate": f.moderate,
            "intense": f.intense,
            "b_gt_bbar": f.b_gt_bbar,
            "rho_gt_rhobar": f.rho_gt_rhobar,
            "profitable_soft": f.sufficient.soft,
            "profitable_moderate_up": f.sufficient.moderate_up,
            "profitable_intense_psi": f.sufficient.intense_psi,
            "profitable_but_less_innovation": f.icbad_candidate,
        },
        "verdict": r.verdict.as_str(),
        "violations": violations(&r.violations),
    })
}

fn merger_comparison(m: &MergerComparison) -> Value {
    json!({
        "rjv": venture(&m.rjv, None),
        "merger": venture(&m.merger, None),
        "value_gap": num(m.value_gap),
        "case": match m.case {
            MergerCase::RjvValueHigher => "rjv_value_higher",
            MergerCase::MergerValueHigher => "merger_value_higher",
            MergerCase::EqualValue => "equal_value",
        },
        "equal_spend_window": m.window.map_or(Value::Null, |(a, b)| json!([num(a), num(b)])),
        "in_window": m.in_window,
        "innovation_delta": num(m.innovation_delta),
        "verdict": m.verdict.as_str(),
        "cs_rjv": opt(m.cs_rjv),
        "cs_merger": opt(m.cs_merger),
        "cs_verdict": match m.cs_verdict {
            CsVerdict::RjvPreferred => "rjv_preferred",
            CsVerdict::Ambiguous => "ambiguous",
        },
        "violations": violations(&m.violations),
    })
}

fn policy_str(p: AssumptionPolicy) -> &'static str {
    match p {
        AssumptionPolicy::Enforce => "enforce",
        AssumptionPolicy::Annotate => "annotate",
    }
}

/// Runs every analysis the scenario asks for and assembles the report.
pub fn analyze(s: &Scenario, policy: AssumptionPolicy) -> Result<Value> {
    let mut root = Map::new();
    root.insert("schema_version".into(), json!(SCHEMA_VERSION));
    root.insert(
        "name".into(),
        s.name.clone().map_or(Value::Null, Value::String),
    );
    root.insert("policy".into(), json!(policy_str(policy)));
    root.insert("cost_family".into(), json!(s.cost.family_name()));
    root.insert(
        "financing".into(),
        json!({"budget": num(s.financing.budget), "rate": num(s.financing.rate)}),
    );
    let (cf, fin) = (&s.cost, &s.financing);
    match &s.industry {
        Industry::Duopoly { quad, monopoly, cs } => {
            let q = quad;
            let codes: Vec<&str> = validate_regularity(q)?.iter().map(|c| c.as_str()).collect();
            let mut market = json!({
                "quad": {
                    "pi_00": num(q.pi_00), "pi_i0": num(q.pi_i0),
                    "pi_0i": num(q.pi_0i), "pi_ii": num(q.pi_ii),
                },
                "regularity_failures": codes,
            });
            if let Some(m) = monopoly {
                market["monopoly"] = json!({"pi_0": num(m.pi_0), "pi_i": num(m.pi_i)});
            }
            if let Some(c) = cs {
                market["cs"] = json!({
                    "cs_00": num(c.cs_00), "cs_i0": num(c.cs_i0), "cs_ii": num(c.cs_ii),
                    "cs_m0": num(c.cs_m0), "cs_mi": num(c.cs_mi),
                });
            }
            let cs = cs.as_ref();
            let mut comparisons = Map::new();
            if s.compare.rjv() {
                let r = match s.extension {
                    Ext::None => compare_rjv_vs_competition(q, cs, cf, fin, policy)?,
                    Ext::Spillover(sigma) => spillover_fc_compare(q, sigma, cf, fin, policy)?,
                    Ext::Licensing(lt) => licensing_compare(q, lt, cf, fin, policy)?,
                };
                market["regime"] = json!(r.regime.as_str());
                comparisons.insert("rjv_vs_competition".into(), comparison(&r, cs));
            }
            if s.compare.merger() {
                let mono = monopoly
                    .as_ref()
                    .expect("checked when resolving the scenario");
                let r = compare_merger_vs_competition(q, mono, cs, cf, fin, policy)?;
                market["regime"] = json!(r.regime.as_str());
                comparisons.insert("merger_vs_competition".into(), comparison(&r, cs));
                let m = compare_rjv_vs_merger(q, mono, cs, cf, fin, policy)?;
                comparisons.insert("rjv_vs_merger".into(), merger_comparison(&m));
            }
            if let Ext::Spillover(sigma) = s.extension {
                let u = spillover_no_fc_compare(q, sigma, cf)?;
                comparisons.insert(
                    "spillover_unconstrained".into(),
                    json!({
                        "theta_nc1": num(u.theta_nc1),
                        "theta_nc2": num(u.theta_nc2),
                        "theta_u": num(u.theta_u),
                        "rjv_better": u.rjv_better,
                        "sigma_star": match u.sigma_star {
                            SigmaStar::Always => json!("always"),
                            SigmaStar::Never => json!("never"),
                            SigmaStar::Value(v) => num(v),
                        },
                    }),
                );
            }
            // Cut-offs need regularity; under Annotate they are still shown.
            if let Ok(c) = cutoff_set(q, monopoly.as_ref(), cf, fin) {
                root.insert("cutoffs".into(), cutoffs(&c));
            }
            root.insert("market".into(), market);
            root.insert("comparisons".into(), Value::Object(comparisons));
        }
        Industry::Three(mp) => {
            let (comp, v) = three_firm_outcomes(mp, cf, fin)?;
            root.insert(
                "three_firms".into(),
                json!({
                    "competition": outcome(&comp, None),
                    "rjv": venture(&v, None),
                    "innovation_delta": num(v.outcome.innovation_prob - comp.innovation_prob),
                    "net_profit_delta": num(v.outcome.expected_net_profit - comp.expected_net_profit),
                }),
            );
        }
        Industry::Four(mp) => {
            let eq = two_rjv_equilibrium(mp, cf, fin)?;
            root.insert(
                "two_ventures".into(),
                json!({
                    "theta1": num(eq.theta1),
                    "theta2": num(eq.theta2),
                    "shadow_price": num(eq.shadow_price),
                    "outcome": outcome(&eq.outcome, None),
                }),
            );
        }
    }
    Ok(Value::Object(root))
}
