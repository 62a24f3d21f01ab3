//! Competition versus joint venture (and merger): innovation, spending,
//! profit and consumer-surplus comparisons with built-in consistency checks.

use alloc::vec::Vec;
use core::fmt;

use crate::cost::CostFunction;
use crate::cutoffs::{
    thresholds_unchecked, value_cutoff, FinancingEnv, Threshold, ThresholdRecord,
};
use crate::equilibria::{
    budget_violation, competition_unchecked, merger_unchecked, rjv_unchecked,
    CompetitionEquilibrium, OutcomeKind, PortfolioOutcome, VenturePortfolio,
};
use crate::error::{Error, Result};
use crate::model::{
    regime_unchecked, regularity_failures, AssumptionViolation, CsTriple, MarketRegime,
    MonopolyProfits, ProfitQuad,
};

/// Innovation-probability differences within this band are `Equal`.
pub const VERDICT_TOL: f64 = 1e-9;

/// What to do when a modelling assumption fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssumptionPolicy {
    /// Return the violation as an error.
    #[default]
    Enforce,
    /// Compute anyway and record the violation in the report.
    Annotate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    Rjv,
    Merger,
}

/// Innovation probability of the alternative relative to the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Higher,
    Lower,
    Equal,
}

impl Verdict {
    pub fn from_delta(delta: f64) -> Self {
        if delta > VERDICT_TOL {
            Verdict::Higher
        } else if delta < -VERDICT_TOL {
            Verdict::Lower
        } else {
            Verdict::Equal
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Higher => "higher",
            Verdict::Lower => "lower",
            Verdict::Equal => "equal",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Profit transform applied to the competitive side, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extension {
    None,
    /// `transformed_regular` is false when the transformed profits break
    /// the regularity ordering (typically the laggard's profit).
    Spillover {
        sigma: f64,
        transformed_regular: bool,
    },
    Licensing {
        occurs: bool,
    },
}

/// Which sufficient condition for venture profitability applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SufficientCondition {
    /// Soft competition.
    pub soft: bool,
    /// Moderate competition and higher innovation.
    pub moderate_up: bool,
    /// Intense competition, higher innovation and the Ψ test.
    pub intense_psi: bool,
}

impl SufficientCondition {
    pub fn any(&self) -> bool {
        self.soft || self.moderate_up || self.intense_psi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConditionFlags {
    pub soft: bool,
    pub moderate: bool,
    pub intense: bool,
    pub b_gt_bbar: bool,
    pub rho_gt_rhobar: bool,
    pub sufficient: SufficientCondition,
    /// Profitable for the firms yet lowers the innovation probability.
    pub icbad_candidate: bool,
}

/// Alternative (venture or merger) against competition. Deltas are
/// alternative minus competition; spending is total cost including
/// financing.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub alternative: Alternative,
    pub extension: Extension,
    pub regime: MarketRegime,
    pub competition: CompetitionEquilibrium,
    pub venture: VenturePortfolio,
    pub innovation_delta: f64,
    pub spend_delta: f64,
    pub net_profit_delta: f64,
    pub cs_delta: Option<f64>,
    pub thresholds: ThresholdRecord,
    pub flags: ConditionFlags,
    pub verdict: Verdict,
    pub violations: Vec<AssumptionViolation>,
}

/// Result of the profitability inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profitability {
    pub net_profit_delta: f64,
    pub innovation_delta: f64,
    pub sufficient: SufficientCondition,
    pub icbad_candidate: bool,
}

pub(crate) fn admit(
    policy: AssumptionPolicy,
    violations: &mut Vec<AssumptionViolation>,
    v: AssumptionViolation,
) -> Result<()> {
    match policy {
        AssumptionPolicy::Enforce => Err(v.into()),
        AssumptionPolicy::Annotate => {
            violations.push(v);
            Ok(())
        }
    }
}

pub(crate) fn admit_regularity(
    pq: &ProfitQuad,
    policy: AssumptionPolicy,
    violations: &mut Vec<AssumptionViolation>,
) -> Result<()> {
    pq.check_finite()?;
    for v in regularity_failures(pq) {
        admit(policy, violations, v)?;
    }
    Ok(())
}

fn admit_surplus(
    cs: Option<&CsTriple>,
    policy: AssumptionPolicy,
    violations: &mut Vec<AssumptionViolation>,
) -> Result<()> {
    if let Some(cs) = cs {
        for v in cs.violations()? {
            admit(policy, violations, v)?;
        }
    }
    Ok(())
}

/// Competitive side of a comparison, possibly with transformed profits.
pub(crate) struct Baseline<'a> {
    pub pq: ProfitQuad,
    pub cs: Option<&'a CsTriple>,
    pub extension: Extension,
}

/// Shared engine for the venture comparisons. `base` drives the venture,
/// `side.pq` the competitive equilibrium; they differ only off the diagonal.
pub(crate) fn rjv_engine(
    base: &ProfitQuad,
    side: Baseline<'_>,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
    mut violations: Vec<AssumptionViolation>,
) -> Result<ComparisonReport> {
    let competition = competition_unchecked(&side.pq, cf, fin);
    if let Some(v) = budget_violation(competition.theta2, cf, fin) {
        admit(policy, &mut violations, v)?;
    }
    let venture = rjv_unchecked(base, cf, fin);
    let mut thresholds = thresholds_unchecked(base, None, cf, fin);
    let escape = side.pq.escape_value();
    let value = base.pooled_value();
    let rate_t = Threshold::ratio(escape - value, value);
    let budget_t = 0.5 * cf.mass(value_cutoff(cf, escape, fin.rate));
    match side.extension {
        Extension::None => {}
        Extension::Spillover { .. } => {
            thresholds.rho_tilde = Some(rate_t);
            thresholds.b_tilde = Some(budget_t);
        }
        Extension::Licensing { occurs } => {
            if occurs {
                thresholds.rho_bar_l = Some(rate_t);
                thresholds.b_bar_l = Some(budget_t);
            }
        }
    }
    let regime = regime_unchecked(&side.pq);
    let cs_delta = match (side.cs, side.extension) {
        (Some(cs), Extension::None) => Some(
            surplus_unchecked(cs, &venture.outcome)? - surplus_unchecked(cs, &competition.outcome)?,
        ),
        _ => None,
    };
    let report = assemble(
        Alternative::Rjv,
        side.extension,
        regime,
        competition,
        venture,
        cs_delta,
        thresholds,
        (rate_t, budget_t),
        fin,
        Some(psi_test(&side.pq, &competition, &venture)),
        violations,
    );
    self_check(&report, value > escape, rate_t, budget_t, fin)?;
    Ok(report)
}

/// `(min(θᴮ, θᵘ) − θ₁)/(θ₁ − θ₂) > Ψ`, false when the interval is empty.
fn psi_test(pq: &ProfitQuad, comp: &CompetitionEquilibrium, v: &VenturePortfolio) -> bool {
    let width = comp.theta1 - comp.theta2;
    if width <= 0.0 {
        return false;
    }
    let lhs = (v.theta_b.min(v.theta_u) - comp.theta1) / width;
    Threshold::ratio(pq.pi_i0 + pq.pi_0i - 2.0 * pq.pi_ii, 2.0 * pq.joint_gain()).exceeded_by(lhs)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    alternative: Alternative,
    extension: Extension,
    regime: MarketRegime,
    competition: CompetitionEquilibrium,
    venture: VenturePortfolio,
    cs_delta: Option<f64>,
    thresholds: ThresholdRecord,
    (rate_t, budget_t): (Threshold, f64),
    fin: &FinancingEnv,
    psi: Option<bool>,
    violations: Vec<AssumptionViolation>,
) -> ComparisonReport {
    let c = &competition.outcome;
    let a = &venture.outcome;
    let innovation_delta = a.innovation_prob - c.innovation_prob;
    let net_profit_delta = a.expected_net_profit - c.expected_net_profit;
    let verdict = Verdict::from_delta(innovation_delta);
    let up = verdict == Verdict::Higher;
    let sufficient = match psi {
        Some(psi) => SufficientCondition {
            soft: regime == MarketRegime::Soft,
            moderate_up: regime == MarketRegime::Moderate && up,
            intense_psi: regime == MarketRegime::Intense && up && psi,
        },
        None => SufficientCondition::default(),
    };
    ComparisonReport {
        alternative,
        extension,
        regime,
        competition,
        venture,
        innovation_delta,
        spend_delta: a.gamma - c.gamma,
        net_profit_delta,
        cs_delta,
        thresholds,
        flags: ConditionFlags {
            soft: regime == MarketRegime::Soft,
            moderate: regime == MarketRegime::Moderate,
            intense: regime == MarketRegime::Intense,
            b_gt_bbar: fin.budget > budget_t,
            rho_gt_rhobar: rate_t.exceeded_by(fin.rate),
            sufficient,
            icbad_candidate: net_profit_delta > 0.0 && verdict == Verdict::Lower,
        },
        verdict,
        violations,
    }
}

/// When the alternative values the innovation above the escape value it
/// always innovates more; otherwise it does so exactly when both the budget
/// and the rate exceed their thresholds. Runs only on clean inputs.
fn self_check(
    r: &ComparisonReport,
    value_dominates: bool,
    rate_t: Threshold,
    budget_t: f64,
    fin: &FinancingEnv,
) -> Result<()> {
    if !r.violations.is_empty() {
        return Ok(());
    }
    let expected_up = value_dominates || (fin.budget > budget_t && rate_t.exceeded_by(fin.rate));
    let consistent = match r.verdict {
        Verdict::Equal => true,
        Verdict::Higher => expected_up,
        Verdict::Lower => !expected_up,
    };
    if consistent {
        Ok(())
    } else {
        Err(Error::Invariant(
            "innovation verdict contradicts the threshold conditions",
        ))
    }
}

pub fn compare_rjv_vs_competition(
    pq: &ProfitQuad,
    cs: Option<&CsTriple>,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<ComparisonReport> {
    let mut violations = Vec::new();
    admit_regularity(pq, policy, &mut violations)?;
    admit_surplus(cs, policy, &mut violations)?;
    rjv_engine(
        pq,
        Baseline {
            pq: *pq,
            cs,
            extension: Extension::None,
        },
        cf,
        fin,
        policy,
        violations,
    )
}

/// Net-profit comparison and the sufficient conditions for a profitable
/// venture.
pub fn rjv_profitability(
    pq: &ProfitQuad,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<Profitability> {
    let r = compare_rjv_vs_competition(pq, None, cf, fin, policy)?;
    Ok(Profitability {
        net_profit_delta: r.net_profit_delta,
        innovation_delta: r.innovation_delta,
        sufficient: r.flags.sufficient,
        icbad_candidate: r.flags.icbad_candidate,
    })
}

pub(crate) fn surplus_unchecked(cs: &CsTriple, o: &PortfolioOutcome) -> Result<f64> {
    let p = o.innovation_prob;
    match o.kind {
        OutcomeKind::Competition => {
            let d = o.duplicated_mass;
            Ok(d * cs.cs_ii + (p - d) * cs.cs_i0 + (1.0 - p) * cs.cs_00)
        }
        OutcomeKind::Rjv => Ok(p * cs.cs_ii + (1.0 - p) * cs.cs_00),
        OutcomeKind::Merger => Ok(p * cs.cs_mi + (1.0 - p) * cs.cs_m0),
        _ => Err(Error::Configuration(
            "consumer surplus is defined for duopoly outcomes only",
        )),
    }
}

/// Expected consumer surplus of a duopoly-market outcome.
pub fn expected_consumer_surplus(cs: &CsTriple, outcome: &PortfolioOutcome) -> Result<f64> {
    if let Some(v) = cs.violations()?.first() {
        return Err((*v).into());
    }
    surplus_unchecked(cs, outcome)
}

/// Merger against competition. Profitability conditions for ventures do not
/// carry over, so `flags.sufficient` is left empty.
pub fn compare_merger_vs_competition(
    pq: &ProfitQuad,
    mono: &MonopolyProfits,
    cs: Option<&CsTriple>,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<ComparisonReport> {
    let mut violations = Vec::new();
    admit_regularity(pq, policy, &mut violations)?;
    mono.check()?;
    admit_surplus(cs, policy, &mut violations)?;
    let competition = competition_unchecked(pq, cf, fin);
    if let Some(v) = budget_violation(competition.theta2, cf, fin) {
        admit(policy, &mut violations, v)?;
    }
    let merger = merger_unchecked(mono, cf, fin);
    let thresholds = thresholds_unchecked(pq, Some(mono), cf, fin);
    let value = mono.innovation_gain();
    let escape = pq.escape_value();
    let rate_t = thresholds.rho_bar_m.unwrap_or(Threshold::Infinite);
    let budget_t = thresholds.b_bar;
    let cs_delta = match cs {
        Some(cs) => Some(
            surplus_unchecked(cs, &merger.outcome)? - surplus_unchecked(cs, &competition.outcome)?,
        ),
        None => None,
    };
    let report = assemble(
        Alternative::Merger,
        Extension::None,
        regime_unchecked(pq),
        competition,
        merger,
        cs_delta,
        thresholds,
        (rate_t, budget_t),
        fin,
        None,
        violations,
    );
    self_check(&report, value > escape, rate_t, budget_t, fin)?;
    Ok(report)
}

/// Sign of `2(πII − π00) − (πI − π0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergerCase {
    RjvValueHigher,
    MergerValueHigher,
    EqualValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsVerdict {
    RjvPreferred,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergerComparison {
    pub rjv: VenturePortfolio,
    pub merger: VenturePortfolio,
    pub value_gap: f64,
    pub case: MergerCase,
    /// Budget cut-offs for which both invest exactly the pooled budget.
    pub window: Option<(f64, f64)>,
    pub in_window: bool,
    /// Venture minus merger.
    pub innovation_delta: f64,
    pub verdict: Verdict,
    pub cs_rjv: Option<f64>,
    pub cs_merger: Option<f64>,
    pub cs_verdict: CsVerdict,
    pub violations: Vec<AssumptionViolation>,
}

pub fn compare_rjv_vs_merger(
    pq: &ProfitQuad,
    mono: &MonopolyProfits,
    cs: Option<&CsTriple>,
    cf: &CostFunction,
    fin: &FinancingEnv,
    policy: AssumptionPolicy,
) -> Result<MergerComparison> {
    let mut violations = Vec::new();
    admit_regularity(pq, policy, &mut violations)?;
    mono.check()?;
    admit_surplus(cs, policy, &mut violations)?;
    let theta2 = value_cutoff(cf, pq.catch_up_value().max(0.0), fin.rate);
    if let Some(v) = budget_violation(theta2, cf, fin) {
        admit(policy, &mut violations, v)?;
    }
    let rjv = rjv_unchecked(pq, cf, fin);
    let merger = merger_unchecked(mono, cf, fin);
    let value_gap = pq.pooled_value() - mono.innovation_gain();
    let (case, window) = if value_gap > 0.0 {
        (MergerCase::RjvValueHigher, (rjv.theta_rho, merger.theta_u))
    } else if value_gap < 0.0 {
        (
            MergerCase::MergerValueHigher,
            (merger.theta_rho, rjv.theta_u),
        )
    } else {
        (MergerCase::EqualValue, (rjv.theta_rho, rjv.theta_u))
    };
    let window = (window.0 <= window.1).then_some(window);
    let theta_b = rjv.theta_b;
    let in_window = window.is_some_and(|(lo, hi)| lo <= theta_b && theta_b <= hi);
    let innovation_delta = rjv.theta_star - merger.theta_star;
    let verdict = Verdict::from_delta(innovation_delta);
    let cs_verdict = match case {
        MergerCase::MergerValueHigher => CsVerdict::Ambiguous,
        _ => CsVerdict::RjvPreferred,
    };
    let (cs_rjv, cs_merger) = match cs {
        Some(cs) => (
            Some(surplus_unchecked(cs, &rjv.outcome)?),
            Some(surplus_unchecked(cs, &merger.outcome)?),
        ),
        None => (None, None),
    };
    if violations.is_empty() {
        let ordered = match (case, verdict) {
            (MergerCase::EqualValue, v) => v == Verdict::Equal,
            (_, Verdict::Equal) => true,
            _ if in_window => false,
            (MergerCase::RjvValueHigher, v) => v == Verdict::Higher,
            (MergerCase::MergerValueHigher, v) => v == Verdict::Lower,
        };
        let cs_ok = match (cs_verdict, cs_rjv, cs_merger) {
            (CsVerdict::RjvPreferred, Some(r), Some(m)) => r >= m - VERDICT_TOL,
            _ => true,
        };
        if !ordered || (in_window && verdict != Verdict::Equal) {
            return Err(Error::Invariant(
                "venture-vs-merger innovation ordering contradicts the value gap",
            ));
        }
        if !cs_ok {
            return Err(Error::Invariant(
                "merger yields more consumer surplus where the venture must not lose",
            ));
        }
    }
    Ok(MergerComparison {
        rjv,
        merger,
        value_gap,
        case,
        window,
        in_window,
        innovation_delta,
        verdict,
        cs_rjv,
        cs_merger,
        cs_verdict,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio() -> CostFunction {
        CostFunction::ratio(1.0).unwrap()
    }

    fn cournot(alpha: f64, i: f64) -> ProfitQuad {
        ProfitQuad::new(
            alpha * alpha / 9.0,
            (alpha + 2.0 * i) * (alpha + 2.0 * i) / 9.0,
            (alpha - i) * (alpha - i) / 9.0,
            (alpha + i) * (alpha + i) / 9.0,
        )
    }

    fn s1_cs() -> CsTriple {
        CsTriple::new(2.0 / 9.0, 2.5 * 2.5 / 18.0, 0.5, 0.125, 0.28125)
    }

    fn fin() -> FinancingEnv {
        FinancingEnv::new(0.01, 0.1).unwrap()
    }

    #[test]
    fn s1_comparison() {
        let cs = s1_cs();
        let r = compare_rjv_vs_competition(
            &cournot(1.0, 0.5),
            Some(&cs),
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert!((r.innovation_delta + 0.041181).abs() < 1e-6);
        assert!((r.spend_delta + 0.033756).abs() < 1e-6);
        assert!((r.net_profit_delta - 0.024677).abs() < 1e-6);
        assert!((r.cs_delta.unwrap() - (0.288388 - 0.286842)).abs() < 2e-6);
        assert_eq!(r.verdict, Verdict::Lower);
        assert_eq!(r.regime, MarketRegime::Moderate);
        assert!(r.flags.icbad_candidate);
        assert!(!r.flags.b_gt_bbar);
        assert!(!r.flags.rho_gt_rhobar);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn favorable_comparison() {
        let r = compare_rjv_vs_competition(
            &cournot(2.2, 0.18),
            None,
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Higher);
        assert!((r.innovation_delta - 0.009238).abs() < 1e-6);
        assert!((r.spend_delta + 0.011357).abs() < 1e-6);
        assert!(r.flags.b_gt_bbar && r.flags.rho_gt_rhobar);
        assert!((r.thresholds.b_bar - 0.007174).abs() < 1e-6);
        assert!((r.thresholds.rho_bar.finite().unwrap() - 0.039301).abs() < 1e-6);
        assert!(r.flags.sufficient.moderate_up || r.flags.sufficient.intense_psi);
        assert!(r.net_profit_delta > 0.0);
    }

    #[test]
    fn soft_bertrand_comparison() {
        let pq = ProfitQuad::new(0.037037, 0.090133, 0.026133, 0.072593);
        let fin = FinancingEnv::new(0.0005, 0.1).unwrap();
        let r = compare_rjv_vs_competition(&pq, None, &ratio(), &fin, AssumptionPolicy::Enforce)
            .unwrap();
        assert_eq!(r.regime, MarketRegime::Soft);
        assert_eq!(r.verdict, Verdict::Higher);
        assert!(r.flags.sufficient.soft);
        assert!(r.net_profit_delta > 0.0);
    }

    #[test]
    fn zero_value_innovation_saves_cost_only() {
        let pq = ProfitQuad::new(0.2, 0.35, 0.1, 0.2);
        let fin = FinancingEnv::new(0.001, 0.1).unwrap();
        let r = compare_rjv_vs_competition(&pq, None, &ratio(), &fin, AssumptionPolicy::Enforce)
            .unwrap();
        assert_eq!(r.venture.theta_star, 0.0);
        let (c, v) = (&r.competition.outcome, &r.venture.outcome);
        assert!((v.expected_gross_profit - 2.0 * pq.pi_00).abs() < 1e-15);
        assert_eq!(v.gamma, 0.0);
        let gross = v.expected_gross_profit - c.expected_gross_profit;
        assert!((r.net_profit_delta - (gross + c.gamma)).abs() < 1e-15);
    }

    #[test]
    fn enforce_rejects_and_annotate_records() {
        let rich = FinancingEnv::new(0.03, 0.1).unwrap();
        let pq = cournot(1.0, 0.5);
        assert!(
            compare_rjv_vs_competition(&pq, None, &ratio(), &rich, AssumptionPolicy::Enforce)
                .is_err()
        );
        let r = compare_rjv_vs_competition(&pq, None, &ratio(), &rich, AssumptionPolicy::Annotate)
            .unwrap();
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn expected_surplus_examples() {
        let pq = cournot(1.0, 0.5);
        let cs = s1_cs();
        let r =
            compare_rjv_vs_competition(&pq, Some(&cs), &ratio(), &fin(), AssumptionPolicy::Enforce)
                .unwrap();
        let comp = expected_consumer_surplus(&cs, &r.competition.outcome).unwrap();
        let rjv = expected_consumer_surplus(&cs, &r.venture.outcome).unwrap();
        assert!((comp - 0.286842).abs() < 1e-6);
        assert!((rjv - 0.288388).abs() < 1e-6);
        let m = merger_unchecked(&MonopolyProfits::new(0.25, 0.5625), &ratio(), &fin());
        let cm = expected_consumer_surplus(&cs, &m.outcome).unwrap();
        assert!((cm - 0.166290).abs() < 1e-6);
        let bad = CsTriple::new(0.5, 0.3, 0.4, 0.1, 0.1);
        assert!(expected_consumer_surplus(&bad, &m.outcome).is_err());
    }

    #[test]
    fn s1_merger_comparison() {
        let mono = MonopolyProfits::new(0.25, 0.5625);
        let cs = s1_cs();
        let r = compare_rjv_vs_merger(
            &cournot(1.0, 0.5),
            &mono,
            Some(&cs),
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert_eq!(r.case, MergerCase::MergerValueHigher);
        assert_eq!(r.window, None);
        assert_eq!(r.verdict, Verdict::Lower);
        assert_eq!(r.cs_verdict, CsVerdict::Ambiguous);
        assert!((r.merger.theta_star - 0.264253).abs() < 1e-6);
    }

    #[test]
    fn merger_window_gives_equal_innovation() {
        let pq = cournot(1.0, 0.5);
        // Smaller merger value so the venture values the innovation more.
        let mono = MonopolyProfits::new(0.25, 0.25 + 0.26);
        let cf = ratio();
        let rjv = rjv_unchecked(&pq, &cf, &fin());
        let m = merger_unchecked(&mono, &cf, &fin());
        assert!(rjv.theta_rho < m.theta_u);
        let tb = 0.5 * (rjv.theta_rho + m.theta_u);
        let f = FinancingEnv::new(0.5 * cf.mass(tb), 0.1).unwrap();
        let r =
            compare_rjv_vs_merger(&pq, &mono, None, &cf, &f, AssumptionPolicy::Enforce).unwrap();
        assert_eq!(r.case, MergerCase::RjvValueHigher);
        assert!(r.in_window);
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.cs_verdict, CsVerdict::RjvPreferred);
    }

    #[test]
    fn merger_vs_competition_s1() {
        let mono = MonopolyProfits::new(0.25, 0.5625);
        let r = compare_merger_vs_competition(
            &cournot(1.0, 0.5),
            &mono,
            None,
            &ratio(),
            &fin(),
            AssumptionPolicy::Enforce,
        )
        .unwrap();
        assert_eq!(r.alternative, Alternative::Merger);
        assert!((r.innovation_delta - (0.264253 - 0.279378)).abs() < 1e-6);
        assert_eq!(r.verdict, Verdict::Lower);
    }
}
