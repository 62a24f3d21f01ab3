//! Three firms with an industry-wide venture, and four firms split into two
//! competing ventures.

use crate::cost::CostFunction;
use crate::cutoffs::{value_cutoff, FinancingEnv};
use crate::error::{finite, Result};
use crate::model::{AssumptionCode, AssumptionViolation};
use crate::numeric::bisect_increasing;

use super::{single_cutoff, OutcomeKind, PortfolioOutcome, VenturePortfolio};

/// Profits indexed by own technology and by the number `k` of rivals that
/// hold the innovation: `with[k]` for an innovator, `without[k]` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiFirmProfits<const N: usize> {
    pub without: [f64; N],
    pub with: [f64; N],
}

pub type ThreeFirmProfits = MultiFirmProfits<3>;
pub type FourFirmProfits = MultiFirmProfits<4>;

impl<const N: usize> MultiFirmProfits<N> {
    pub const fn new(without: [f64; N], with: [f64; N]) -> Self {
        Self { without, with }
    }

    /// Gain from innovating when `k` rivals already hold the innovation.
    pub fn marginal_value(&self, k: usize) -> f64 {
        self.with[k] - self.without[k]
    }

    /// Non-negativity, innovation raising profit, rival innovation lowering
    /// profit in both rows, and marginal values decreasing in `k`.
    pub fn check(&self) -> Result<()> {
        for k in 0..N {
            finite("without", self.without[k])?;
            finite("with", self.with[k])?;
        }
        let fail = |lhs, rhs| -> Result<()> {
            Err(AssumptionViolation::new(AssumptionCode::MultiFirmRegularity, lhs, rhs).into())
        };
        for k in 0..N {
            if self.without[k] < 0.0 {
                return fail(self.without[k], 0.0);
            }
            if self.with[k] < self.without[k] {
                return fail(self.with[k], self.without[k]);
            }
        }
        for k in 1..N {
            if self.without[k] > self.without[k - 1] {
                return fail(self.without[k], self.without[k - 1]);
            }
            if self.with[k] > self.with[k - 1] {
                return fail(self.with[k], self.with[k - 1]);
            }
            if self.marginal_value(k) > self.marginal_value(k - 1) {
                return fail(self.marginal_value(k), self.marginal_value(k - 1));
            }
        }
        Ok(())
    }
}

/// Competitive triple cut-off equilibrium and the industry-wide venture.
pub fn three_firm_outcomes(
    mp: &ThreeFirmProfits,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<(PortfolioOutcome, VenturePortfolio)> {
    mp.check()?;
    let rate = fin.rate;
    let t1 = value_cutoff(cf, mp.marginal_value(0), rate);
    let t2 = value_cutoff(cf, mp.marginal_value(1), rate);
    let t3 = value_cutoff(cf, mp.marginal_value(2), rate);
    let bound = cf.mass(t3);
    if fin.budget >= bound {
        return Err(
            AssumptionViolation::new(AssumptionCode::BudgetBinding, fin.budget, bound).into(),
        );
    }
    let spend = [cf.mass(t1), cf.mass(t2), bound];
    let raw: f64 = spend.iter().sum();
    let financing = rate * spend.iter().map(|s| (s - fin.budget).max(0.0)).sum::<f64>();
    let (w, o) = (&mp.with, &mp.without);
    let gross = t3 * 3.0 * w[2]
        + (t2 - t3) * (2.0 * w[1] + o[2])
        + (t1 - t2) * (w[0] + 2.0 * o[1])
        + (1.0 - t1) * 3.0 * o[0];
    let mut competition = PortfolioOutcome::assemble(
        OutcomeKind::ThreeFirmCompetition,
        t1,
        t2,
        raw,
        financing,
        gross,
        true,
    );
    competition.borrows = true;
    let venture = single_cutoff(
        OutcomeKind::ThreeFirmRjv,
        3.0 * (w[2] - o[0]),
        3.0 * fin.budget,
        cf,
        rate,
        |t| 3.0 * (t * w[2] + (1.0 - t) * o[0]),
    );
    Ok((competition, venture))
}

/// Double cut-off equilibrium between two ventures of two firms each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRjvEquilibrium {
    /// Upper cut-off: projects below it are funded by at least one venture.
    pub theta1: f64,
    /// Lower cut-off: projects below it are funded by both ventures.
    pub theta2: f64,
    /// Shadow price of the venture budgets, in `[1, 1 + ρ]`; 1 when slack.
    pub shadow_price: f64,
    pub outcome: PortfolioOutcome,
}

/// Neither venture borrows under the budget bound. Budgets bind jointly at
/// a common shadow price; the single-venture interval can be split between
/// the two ventures so that each stays within its pooled budget `2B`.
pub fn two_rjv_equilibrium(
    mp: &FourFirmProfits,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<TwoRjvEquilibrium> {
    mp.check()?;
    let (w, o) = (&mp.with, &mp.without);
    let v1 = 2.0 * (w[1] - o[0]);
    let v2 = 2.0 * (w[3] - o[2]);
    let rate = fin.rate;
    let bound = cf.mass(value_cutoff(cf, v1, rate));
    if 2.0 * fin.budget <= bound {
        return Err(AssumptionViolation::new(
            AssumptionCode::VentureBudget,
            2.0 * fin.budget,
            bound,
        )
        .into());
    }
    let cutoffs = |m: f64| (value_cutoff(cf, v1, m - 1.0), value_cutoff(cf, v2, m - 1.0));
    let total = |m: f64| {
        let (a, b) = cutoffs(m);
        cf.mass(a) + cf.mass(b)
    };
    let pool = 4.0 * fin.budget;
    let shadow_price = if total(1.0) <= pool {
        1.0
    } else {
        // `total` decreases in m; bisect on its negation.
        bisect_increasing(|m| -total(m), -pool, 1.0, 1.0 + rate, 1e-14)
    };
    let (theta1, theta2) = cutoffs(shadow_price);
    let raw = cf.mass(theta1) + cf.mass(theta2);
    let gross = theta2 * 4.0 * w[3]
        + (theta1 - theta2) * (2.0 * w[1] + 2.0 * o[2])
        + (1.0 - theta1) * 4.0 * o[0];
    Ok(TwoRjvEquilibrium {
        theta1,
        theta2,
        shadow_price,
        outcome: PortfolioOutcome::assemble(
            OutcomeKind::TwoRjvs,
            theta1,
            theta2,
            raw,
            0.0,
            gross,
            true,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ratio() -> CostFunction {
        CostFunction::ratio(1.0).unwrap()
    }

    fn three(deltas: [f64; 3], top: f64) -> ThreeFirmProfits {
        let without = [top, top * 0.5, top * 0.25];
        MultiFirmProfits::new(
            without,
            [
                without[0] + deltas[0],
                without[1] + deltas[1],
                without[2] + deltas[2],
            ],
        )
    }

    #[test]
    fn three_firm_cutoffs() {
        let mp = three([0.3, 0.2, 0.1], 0.4);
        let fin = FinancingEnv::new(0.001, 0.0).unwrap();
        let (c, v) = three_firm_outcomes(&mp, &ratio(), &fin).unwrap();
        assert!((c.innovation_prob - 0.276984).abs() < 1e-5);
        assert!((c.duplicated_mass - 0.192582).abs() < 1e-5);
        let t3 = value_cutoff(&ratio(), 0.1, 0.0);
        assert!((t3 - 0.099020).abs() < 1e-5);
        assert!(v.theta_star <= v.theta_u);
        assert_eq!(c.kind, OutcomeKind::ThreeFirmCompetition);
    }

    #[test]
    fn three_firm_zero_values() {
        let mp = three([0.0, 0.0, 0.0], 0.4);
        let fin = FinancingEnv::new(0.0, 0.1).unwrap();
        // Zero values make the budget bound fail (B = 0 is not below 0).
        let err = three_firm_outcomes(&mp, &ratio(), &fin).unwrap_err();
        assert!(matches!(err, Error::Assumption(v) if v.code == AssumptionCode::BudgetBinding));
        assert_eq!(value_cutoff(&ratio(), 0.0, 0.1), 0.0);
    }

    #[test]
    fn three_firm_venture_ample_budget() {
        let without = [0.3, 0.2, 0.1];
        let mp = MultiFirmProfits::new(without, [0.5, 0.35, 0.38]);
        assert!(mp.check().is_err());
        let mp = MultiFirmProfits::new([0.3, 0.25, 0.2], [0.5, 0.45, 0.38]);
        mp.check().unwrap();
        let fin = FinancingEnv::new(0.001, 0.0).unwrap();
        let (_, v) = three_firm_outcomes(&mp, &ratio(), &fin).unwrap();
        assert!((v.theta_u - 0.227571).abs() < 1e-5);
        let rich = FinancingEnv::new(0.01, 0.0).unwrap();
        let (_, v) = three_firm_outcomes(&mp, &ratio(), &rich).unwrap();
        assert_eq!(v.theta_star, v.theta_u);
    }

    fn four(v1: f64, v2: f64) -> FourFirmProfits {
        let w1 = 0.4 + v1 / 2.0;
        let w3 = 0.2 + v2 / 2.0;
        MultiFirmProfits::new([0.4, 0.3, 0.2, 0.1], [w1 + 0.15, w1, 0.5 * (w1 + w3), w3])
    }

    #[test]
    fn two_rjv_ample_budget() {
        let mp = four(0.3, 0.2);
        mp.check().unwrap();
        let fin = FinancingEnv::new(1.0, 0.1).unwrap();
        let eq = two_rjv_equilibrium(&mp, &ratio(), &fin).unwrap();
        assert_eq!(eq.shadow_price, 1.0);
        assert!((eq.theta1 - 0.276984).abs() < 1e-5);
        assert!((eq.theta2 - 0.192582).abs() < 1e-5);
        assert_eq!(eq.outcome.financing_cost, 0.0);
    }

    #[test]
    fn two_rjv_equal_values_share_cutoff() {
        let mp = MultiFirmProfits::new([0.5, 0.375, 0.25, 0.125], [0.75, 0.625, 0.5, 0.375]);
        mp.check().unwrap();
        let fin = FinancingEnv::new(1.0, 0.1).unwrap();
        let eq = two_rjv_equilibrium(&mp, &ratio(), &fin).unwrap();
        assert_eq!(eq.theta1, eq.theta2);
    }

    #[test]
    fn two_rjv_binding_budget() {
        let mp = four(0.3, 0.2);
        let cf = ratio();
        let rate = 0.5;
        let lower = cf.mass(value_cutoff(&cf, 0.3, rate));
        let fin = FinancingEnv::new(0.6 * lower, rate).unwrap();
        let eq = two_rjv_equilibrium(&mp, &cf, &fin).unwrap();
        assert!(eq.shadow_price > 1.0 && eq.shadow_price <= 1.0 + rate);
        assert!((eq.outcome.raw_spend - 4.0 * fin.budget).abs() < 1e-10);

        let poor = FinancingEnv::new(0.4 * lower, rate).unwrap();
        let err = two_rjv_equilibrium(&mp, &cf, &poor).unwrap_err();
        assert!(matches!(err, Error::Assumption(v) if v.code == AssumptionCode::VentureBudget));
    }
}
