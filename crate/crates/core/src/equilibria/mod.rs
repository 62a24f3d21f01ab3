//! Equilibrium portfolios under competition, joint venture and merger, plus
//! the multi-firm extensions and the risk-dominance selection check.

mod multi;
mod risk;

pub use multi::{
    three_firm_outcomes, two_rjv_equilibrium, FourFirmProfits, MultiFirmProfits, ThreeFirmProfits,
    TwoRjvEquilibrium,
};
pub use risk::{risk_dominance_check, RiskDominanceReport};

use core::fmt;

use crate::cost::CostFunction;
use crate::cutoffs::{budget_cutoff_unchecked, clamp_star, value_cutoff, FinancingEnv};
use crate::error::Result;
use crate::model::{
    require_regular, AssumptionCode, AssumptionViolation, MonopolyProfits, ProfitQuad,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    Competition,
    Rjv,
    Merger,
    ThreeFirmCompetition,
    ThreeFirmRjv,
    TwoRjvs,
}

impl OutcomeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutcomeKind::Competition => "competition",
            OutcomeKind::Rjv => "rjv",
            OutcomeKind::Merger => "merger",
            OutcomeKind::ThreeFirmCompetition => "three_firm_competition",
            OutcomeKind::ThreeFirmRjv => "three_firm_rjv",
            OutcomeKind::TwoRjvs => "two_rjvs",
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Industry-level summary of one equilibrium. Quantities are sums over
/// firms; `gamma = raw_spend + financing_cost`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortfolioOutcome {
    pub kind: OutcomeKind,
    pub innovation_prob: f64,
    pub duplicated_mass: f64,
    pub raw_spend: f64,
    pub financing_cost: f64,
    pub gamma: f64,
    pub expected_gross_profit: f64,
    pub expected_net_profit: f64,
    pub borrows: bool,
    /// Per-firm figures depend on which equilibrium is selected; the
    /// aggregates above do not.
    pub selection_dependent: bool,
}

impl PortfolioOutcome {
    fn assemble(
        kind: OutcomeKind,
        innovation_prob: f64,
        duplicated_mass: f64,
        raw_spend: f64,
        financing_cost: f64,
        gross: f64,
        selection_dependent: bool,
    ) -> Self {
        let gamma = raw_spend + financing_cost;
        Self {
            kind,
            innovation_prob,
            duplicated_mass,
            raw_spend,
            financing_cost,
            gamma,
            expected_gross_profit: gross,
            expected_net_profit: gross - gamma,
            borrows: financing_cost > 0.0,
            selection_dependent,
        }
    }
}

/// Competitive double cut-off equilibrium. Per-firm figures follow the
/// selection in which firm 1 funds the whole single-investor interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetitionEquilibrium {
    pub theta1: f64,
    pub theta2: f64,
    pub firm_spend: [f64; 2],
    pub firm_borrowing: [f64; 2],
    pub outcome: PortfolioOutcome,
}

/// Single cut-off portfolio of a joint venture or merged firm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VenturePortfolio {
    pub theta_rho: f64,
    pub theta_u: f64,
    pub theta_b: f64,
    pub theta_star: f64,
    pub outcome: PortfolioOutcome,
}

pub(crate) fn competition_unchecked(
    pq: &ProfitQuad,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> CompetitionEquilibrium {
    let theta1 = value_cutoff(cf, pq.escape_value(), fin.rate);
    let theta2 = value_cutoff(cf, pq.catch_up_value(), fin.rate);
    let firm_spend = [cf.mass(theta1), cf.mass(theta2)];
    let firm_borrowing = firm_spend.map(|s| (s - fin.budget).max(0.0));
    let raw = firm_spend[0] + firm_spend[1];
    let financing = fin.rate * (firm_borrowing[0] + firm_borrowing[1]);
    let gross = 2.0 * theta2 * pq.pi_ii
        + (theta1 - theta2) * (pq.pi_i0 + pq.pi_0i)
        + 2.0 * (1.0 - theta1) * pq.pi_00;
    CompetitionEquilibrium {
        theta1,
        theta2,
        firm_spend,
        firm_borrowing,
        outcome: PortfolioOutcome::assemble(
            OutcomeKind::Competition,
            theta1,
            theta2,
            raw,
            financing,
            gross,
            true,
        ),
    }
}

/// Budget must fall strictly short of the duplicated projects' cost.
pub(crate) fn budget_violation(
    theta2: f64,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Option<AssumptionViolation> {
    let bound = cf.mass(theta2);
    if fin.budget < bound {
        None
    } else {
        Some(AssumptionViolation::new(
            AssumptionCode::BudgetBinding,
            fin.budget,
            bound,
        ))
    }
}

pub fn competition_equilibrium(
    pq: &ProfitQuad,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<CompetitionEquilibrium> {
    require_regular(pq)?;
    let eq = competition_unchecked(pq, cf, fin);
    if let Some(v) = budget_violation(eq.theta2, cf, fin) {
        return Err(v.into());
    }
    Ok(eq)
}

/// Single decision maker investing in `[0, θ*)` with pooled budget
/// `total_budget` and innovation value `value`.
pub(crate) fn single_cutoff<G>(
    kind: OutcomeKind,
    value: f64,
    total_budget: f64,
    cf: &CostFunction,
    rate: f64,
    gross: G,
) -> VenturePortfolio
where
    G: Fn(f64) -> f64,
{
    let theta_rho = value_cutoff(cf, value, rate);
    let theta_u = value_cutoff(cf, value, 0.0);
    let theta_b = budget_cutoff_unchecked(cf, total_budget);
    let theta_star = clamp_star(theta_b, theta_rho, theta_u);
    let raw = cf.mass(theta_star);
    let financing = if theta_b < theta_rho {
        rate * (raw - total_budget).max(0.0)
    } else {
        0.0
    };
    let mut outcome = PortfolioOutcome::assemble(
        kind,
        theta_star,
        0.0,
        raw,
        financing,
        gross(theta_star),
        false,
    );
    outcome.borrows = theta_b < theta_rho;
    VenturePortfolio {
        theta_rho,
        theta_u,
        theta_b,
        theta_star,
        outcome,
    }
}

pub(crate) fn rjv_unchecked(
    pq: &ProfitQuad,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> VenturePortfolio {
    single_cutoff(
        OutcomeKind::Rjv,
        pq.pooled_value(),
        2.0 * fin.budget,
        cf,
        fin.rate,
        |t| 2.0 * t * pq.pi_ii + 2.0 * (1.0 - t) * pq.pi_00,
    )
}

pub fn rjv_portfolio(
    pq: &ProfitQuad,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<VenturePortfolio> {
    require_regular(pq)?;
    Ok(rjv_unchecked(pq, cf, fin))
}

pub(crate) fn merger_unchecked(
    mono: &MonopolyProfits,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> VenturePortfolio {
    single_cutoff(
        OutcomeKind::Merger,
        mono.innovation_gain().max(0.0),
        2.0 * fin.budget,
        cf,
        fin.rate,
        |t| t * mono.pi_i + (1.0 - t) * mono.pi_0,
    )
}

/// The merged firm pools both budgets. The duopoly quad is checked for
/// consistency only; the portfolio depends on the monopoly profits.
pub fn merger_portfolio(
    pq: &ProfitQuad,
    mono: &MonopolyProfits,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<VenturePortfolio> {
    require_regular(pq)?;
    mono.check()?;
    Ok(merger_unchecked(mono, cf, fin))
}
