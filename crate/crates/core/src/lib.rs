//! Equilibria of a financially constrained R&D project-choice game.
//!
//! Two firms choose portfolios of research projects on the unit interval,
//! funded from an internal budget and, beyond it, borrowing at a premium.
//! This crate computes the competitive double cut-off equilibrium, the
//! single cut-off portfolio of a research joint venture (RJV) or a merged
//! firm, compares them, and cross-checks the analytics with a discretised
//! brute-force game.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod comparisons;
pub mod cost;
pub mod cutoffs;
pub mod equilibria;
mod error;
pub mod extensions;
pub mod markets;
pub mod model;
pub mod numeric;
pub mod oracle;

pub use comparisons::{
    compare_merger_vs_competition, compare_rjv_vs_competition, compare_rjv_vs_merger,
    expected_consumer_surplus, rjv_profitability, Alternative, AssumptionPolicy, ComparisonReport,
    ConditionFlags, CsVerdict, Extension, MergerCase, MergerComparison, Profitability,
    SufficientCondition, Verdict,
};
pub use cost::CostFunction;
pub use cutoffs::{
    budget_cutoff, compute_thresholds, cost_mass, cutoff_set, solve_value_cutoff, CutoffSet,
    FinancingEnv, Threshold, ThresholdRecord,
};
pub use equilibria::{
    competition_equilibrium, merger_portfolio, risk_dominance_check, rjv_portfolio,
    three_firm_outcomes, two_rjv_equilibrium, CompetitionEquilibrium, FourFirmProfits,
    MultiFirmProfits, OutcomeKind, PortfolioOutcome, RiskDominanceReport, ThreeFirmProfits,
    TwoRjvEquilibrium, VenturePortfolio,
};
pub use error::{Error, Result};
pub use extensions::{
    licensing_compare, spillover_fc_compare, spillover_no_fc_compare, SigmaStar,
    SpilloverNoFcCutoffs,
};
pub use markets::{bertrand_market, cournot_market, BertrandPrimitives, CournotPrimitives, Market};
pub use model::{
    classify_regime, licensing_transform, spillover_transform, validate_regularity, AssumptionCode,
    AssumptionViolation, CsTriple, LicensingTerms, MarketRegime, MonopolyProfits, ProfitQuad,
    SpilloverRate,
};
