//! Spillovers (with and without financing frictions) and licensing, as
//! profit transforms on the competitive side of the comparison.

use alloc::vec::Vec;

use crate::comparisons::{
    admit_regularity, rjv_engine, AssumptionPolicy, Baseline, ComparisonReport, Extension,
};
use crate::cost::CostFunction;
use crate::cutoffs::{value_cutoff, FinancingEnv};
use crate::error::Result;
use crate::model::{
    licensing_transform, regularity_failures, require_regular, spillover_transform, LicensingTerms,
    ProfitQuad, SpilloverRate,
};

/// Critical spillover rate above which the unconstrained venture innovates
/// more than competition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaStar {
    /// The venture wins at every spillover rate.
    Always,
    /// The venture never wins (zero joint gain).
    Never,
    Value(f64),
}

impl SigmaStar {
    /// Whether the venture strictly wins at rate `sigma`.
    pub fn venture_wins(&self, sigma: f64) -> bool {
        match self {
            SigmaStar::Always => true,
            SigmaStar::Never => false,
            SigmaStar::Value(s) => sigma > *s,
        }
    }
}

/// Unconstrained model: no budget, no borrowing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpilloverNoFcCutoffs {
    pub theta_nc1: f64,
    pub theta_nc2: f64,
    pub theta_u: f64,
    pub rjv_better: bool,
    pub sigma_star: SigmaStar,
}

pub fn spillover_no_fc_compare(
    pq: &ProfitQuad,
    s: SpilloverRate,
    cf: &CostFunction,
) -> Result<SpilloverNoFcCutoffs> {
    require_regular(pq)?;
    let sigma = s.get();
    let theta_nc1 = value_cutoff(
        cf,
        ((1.0 - sigma) * pq.pi_i0 + sigma * pq.pi_ii - pq.pi_00).max(0.0),
        0.0,
    );
    let theta_nc2 = value_cutoff(cf, (1.0 - sigma) * pq.catch_up_value(), 0.0);
    let theta_u = value_cutoff(cf, pq.pooled_value(), 0.0);
    let lead = pq.pi_i0 - pq.pi_ii;
    let sigma_star = if pq.joint_gain() == 0.0 {
        SigmaStar::Never
    } else if lead == 0.0 {
        SigmaStar::Always
    } else {
        let v = 1.0 - pq.joint_gain() / lead;
        if v < 0.0 {
            SigmaStar::Always
        } else {
            SigmaStar::Value(v)
        }
    };
    Ok(SpilloverNoFcCutoffs {
        theta_nc1,
        theta_nc2,
        theta_u,
        rjv_better: theta_u > theta_nc1,
        sigma_star,
    })
}

/// Spillovers with financing frictions. The venture shares its output, so
/// it is evaluated on the untransformed profits.
///
/// The transformed laggard profit can exceed `pi_00` for large `sigma`;
/// this is reported through `Extension::Spillover::transformed_regular` and
/// does not block the comparison, whose cut-offs do not depend on it.
pub fn spillover_fc_compare(
    pq: &ProfitQuad,
    s: SpilloverRate,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<ComparisonReport> {
    let mut violations = Vec::new();
    admit_regularity(pq, policy, &mut violations)?;
    let transformed = spillover_transform(pq, s);
    let transformed_regular = regularity_failures(&transformed).next().is_none();
    rjv_engine(
        pq,
        Baseline {
            pq: transformed,
            cs: None,
            extension: Extension::Spillover {
                sigma: s.get(),
                transformed_regular,
            },
        },
        cf,
        fin,
        policy,
        violations,
    )
}

/// Licensing raises the sole innovator's profit when it pays to license;
/// otherwise the baseline comparison is returned unchanged.
pub fn licensing_compare(
    pq: &ProfitQuad,
    lt: LicensingTerms,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<ComparisonReport> {
    let mut violations = Vec::new();
    admit_regularity(pq, policy, &mut violations)?;
    let (licensed, occurs) = licensing_transform(pq, lt);
    rjv_engine(
        pq,
        Baseline {
            pq: licensed,
            cs: None,
            extension: Extension::Licensing { occurs },
        },
        cf,
        fin,
        policy,
        violations,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparisons::{compare_rjv_vs_competition, Verdict};

    fn s1() -> ProfitQuad {
        ProfitQuad::new(1.0 / 9.0, 4.0 / 9.0, 0.25 / 9.0, 0.25)
    }

    fn ratio() -> CostFunction {
        CostFunction::ratio(1.0).unwrap()
    }

    fn fin() -> FinancingEnv {
        FinancingEnv::new(0.01, 0.1).unwrap()
    }

    #[test]
    fn no_fc_sigma_star() {
        let r = spillover_no_fc_compare(&s1(), SpilloverRate::new(0.0).unwrap(), &ratio()).unwrap();
        match r.sigma_star {
            SigmaStar::Value(v) => assert!((v - 2.0 / 7.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(!r.rjv_better);
        let r = spillover_no_fc_compare(&s1(), SpilloverRate::new(0.5).unwrap(), &ratio()).unwrap();
        assert!((r.theta_nc1 - 0.224239).abs() < 1e-6);
        assert!((r.theta_u - 0.259126).abs() < 1e-6);
        assert!(r.rjv_better);
        assert!(r.theta_nc2 <= r.theta_nc1);
    }

    #[test]
    fn no_fc_soft_always_better() {
        let soft = ProfitQuad::new(0.037037, 0.090133, 0.026133, 0.072593);
        let r = spillover_no_fc_compare(&soft, SpilloverRate::new(0.0).unwrap(), &ratio()).unwrap();
        assert_eq!(r.sigma_star, SigmaStar::Always);
        assert!(r.rjv_better);
        let flat = ProfitQuad::new(0.2, 0.5, 0.1, 0.2);
        let r = spillover_no_fc_compare(&flat, SpilloverRate::new(0.9).unwrap(), &ratio()).unwrap();
        assert_eq!(r.sigma_star, SigmaStar::Never);
        assert!(!r.rjv_better);
    }

    #[test]
    fn zero_spillover_matches_baseline() {
        let base =
            compare_rjv_vs_competition(&s1(), None, &ratio(), &fin(), AssumptionPolicy::Enforce)
                .unwrap();
        let sp = spillover_fc_compare(
            &s1(),
            SpilloverRate::new(0.0).unwrap(),
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert_eq!(sp.competition, base.competition);
        assert_eq!(sp.venture, base.venture);
        assert_eq!(sp.innovation_delta, base.innovation_delta);
        assert_eq!(sp.net_profit_delta, base.net_profit_delta);
        assert_eq!(sp.verdict, base.verdict);
    }

    #[test]
    fn full_spillover_favours_venture() {
        let r = spillover_fc_compare(
            &s1(),
            SpilloverRate::new(1.0).unwrap(),
            &ratio(),
            &fin(),
            AssumptionPolicy::Annotate,
        )
        .unwrap();
        assert!((r.competition.theta1 - 0.124311).abs() < 1e-6);
        assert_eq!(r.verdict, Verdict::Higher);
        // No duplicated projects remain, so the budget bound fails.
        assert!(!r.violations.is_empty());
        assert!(matches!(
            r.extension,
            Extension::Spillover {
                transformed_regular: false,
                ..
            }
        ));
    }

    #[test]
    fn licensing_s1() {
        let r = licensing_compare(
            &s1(),
            LicensingTerms::new(0.0, true).unwrap(),
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert_eq!(r.extension, Extension::Licensing { occurs: true });
        assert!((r.competition.theta1 - 0.298945).abs() < 1e-6);
        let t = r.thresholds;
        assert!(t.b_bar_l.unwrap() >= t.b_bar);
        assert!(t.rho_bar_l.unwrap().finite().unwrap() >= t.rho_bar.finite().unwrap());
    }

    #[test]
    fn licensing_absent_matches_baseline() {
        let hb = ProfitQuad::new(0.0, 1.0, 0.0, 0.0);
        let f = FinancingEnv::new(0.01, 0.1).unwrap();
        let base = compare_rjv_vs_competition(&hb, None, &ratio(), &f, AssumptionPolicy::Annotate)
            .unwrap();
        let l = licensing_compare(
            &hb,
            LicensingTerms::new(0.0, true).unwrap(),
            &ratio(),
            &f,
            AssumptionPolicy::Annotate,
        )
        .unwrap();
        assert_eq!(l.extension, Extension::Licensing { occurs: false });
        assert_eq!(l.competition, base.competition);
        assert_eq!(l.net_profit_delta, base.net_profit_delta);
        assert_eq!(l.thresholds, base.thresholds);
    }
}
