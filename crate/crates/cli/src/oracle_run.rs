//! Discretised brute-force check of a two-firm scenario.

use rayon::prelude::*;
use rjv_core::oracle::{
    discrete_rjv_optimum, exhaustive_report, exhaustive_scan, solve_discrete_game, DiscreteGame,
    ExhaustiveTable, NashProfile, OracleReport, SolveMode, MAX_EXHAUSTIVE_CELLS,
};
use rjv_core::{competition_equilibrium, cutoff_set, rjv_portfolio, AssumptionPolicy, Error};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::report::num;
use crate::scenario::{Industry, Scenario};

/// Largest grid accepted in best-response mode.
pub const MAX_BEST_RESPONSE_CELLS: usize = 100_000;

/// Mask ranges per parallel task in exhaustive mode.
const CHUNK: u32 = 64;

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn profile(p: &NashProfile, analytic: (f64, f64), g: &DiscreteGame) -> Value {
    json!({
        "firm1": bits(&p.firms[0]),
        "firm2": bits(&p.firms[1]),
        "payoffs": [num(p.payoffs[0]), num(p.payoffs[1])],
        "innovation_prob": num(p.innovation_prob),
        "double_cutoff": p.double_cutoff.map(|(k2, k1)| json!([k2, k1])),
        "cutoff_deviation_cells": p
            .double_cutoff
            .map(|c| num(g.cutoff_deviation(c, analytic))),
    })
}

/// Exhaustive enumeration split over workers by the first firm's mask;
/// chunks are concatenated in mask order.
pub fn exhaustive_parallel(g: &DiscreteGame) -> rjv_core::Result<OracleReport> {
    let t = ExhaustiveTable::build(g)?;
    let size = t.profiles() as u32;
    let chunks: Vec<_> = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| exhaustive_scan(g, &t, c * CHUNK..((c + 1) * CHUNK).min(size)))
        .collect();
    Ok(exhaustive_report(
        g,
        &t,
        chunks.into_iter().flatten().collect(),
    ))
}

pub fn run_oracle(
    s: &Scenario,
    cells: usize,
    mode: SolveMode,
    policy: AssumptionPolicy,
) -> Result<Value> {
    let Industry::Duopoly { quad, .. } = &s.industry else {
        return Err(CliError::Invalid(
            "the oracle needs a two-firm scenario".into(),
        ));
    };
    let limit = match mode {
        SolveMode::Exhaustive => MAX_EXHAUSTIVE_CELLS,
        SolveMode::BestResponse => MAX_BEST_RESPONSE_CELLS,
    };
    if cells == 0 || cells > limit {
        return Err(CliError::Invalid(format!(
            "cells must lie in 1..={limit} for this mode, got {cells}"
        )));
    }
    let (cf, fin) = (&s.cost, &s.financing);
    let mut violations = Vec::new();
    match competition_equilibrium(quad, cf, fin) {
        Ok(_) => {}
        Err(Error::Assumption(v)) if policy == AssumptionPolicy::Annotate => violations.push(v),
        Err(e) => return Err(e.into()),
    }
    let g = DiscreteGame::new(cells, *quad, cf, *fin)?;
    let report = match mode {
        SolveMode::Exhaustive => exhaustive_parallel(&g)?,
        SolveMode::BestResponse => solve_discrete_game(&g, mode)?,
    };
    // Analytic cut-offs exist even when an assumption failed under Annotate.
    let analytic = cutoff_set(quad, None, cf, fin).ok();
    let pair = analytic.map_or((f64::NAN, f64::NAN), |c| (c.theta2, c.theta1));
    let max_dev = report
        .equilibria
        .iter()
        .filter_map(|e| e.double_cutoff)
        .map(|c| g.cutoff_deviation(c, pair))
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
    let venture = discrete_rjv_optimum(&g);
    let star = analytic
        .map(|c| c.theta_star)
        .or_else(|| rjv_portfolio(quad, cf, fin).ok().map(|v| v.theta_star));
    Ok(json!({
        "mode": match mode {
            SolveMode::Exhaustive => "exhaustive",
            SolveMode::BestResponse => "bestresponse",
        },
        "cells": cells,
        "analytic": analytic.map(|c| json!({
            "theta2": num(c.theta2),
            "theta1": num(c.theta1),
            "theta_star": num(c.theta_star),
        })),
        "equilibrium_count": report.equilibria.len(),
        "equilibria": report
            .equilibria
            .iter()
            .map(|p| profile(p, pair, &g))
            .collect::<Vec<_>>(),
        "all_double_cutoff": report.all_double_cutoff,
        "innovation_probs": report.innovation_probs().into_iter().map(num).collect::<Vec<_>>(),
        "max_cutoff_deviation_cells": max_dev.filter(|d| d.is_finite()).map(num),
        "tie_count": report.tie_count,
        "unconverged_seeds": report.unconverged_seeds,
        "rjv": {
            "prefix": venture.prefix,
            "payoff": num(venture.payoff),
            "deviation_cells": star.map(|t| num((venture.prefix as f64 - t * cells as f64).abs())),
        },
        "violations": crate::report::violations(&violations),
    }))
}
