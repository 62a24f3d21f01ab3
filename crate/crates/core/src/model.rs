//! Reduced-form market primitives and the profit transforms used by the
//! spillover and licensing extensions.
//!
//! Profits are indexed by own technology state first and rival state second:
//! `pi_i0` is the profit of a sole innovator, `pi_0i` that of the firm left
//! behind.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{finite, Error, Result};

/// Duopoly profits by technology state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfitQuad {
    pub pi_00: f64,
    pub pi_i0: f64,
    pub pi_0i: f64,
    pub pi_ii: f64,
}

impl ProfitQuad {
    /// Arguments follow the usual listing order `(pi_00, pi_I0, pi_0I, pi_II)`.
    pub const fn new(pi_00: f64, pi_i0: f64, pi_0i: f64, pi_ii: f64) -> Self {
        Self {
            pi_00,
            pi_i0,
            pi_0i,
            pi_ii,
        }
    }

    /// Gain from innovating alone: `pi_I0 - pi_00`.
    pub fn escape_value(&self) -> f64 {
        self.pi_i0 - self.pi_00
    }

    /// Gain from matching an innovating rival: `pi_II - pi_0I`.
    pub fn catch_up_value(&self) -> f64 {
        self.pi_ii - self.pi_0i
    }

    /// Per-firm gain when both firms obtain the innovation: `pi_II - pi_00`.
    pub fn joint_gain(&self) -> f64 {
        self.pi_ii - self.pi_00
    }

    /// Industry value of an innovation shared through a joint venture.
    pub fn pooled_value(&self) -> f64 {
        2.0 * self.joint_gain()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(
            self.pi_00 * factor,
            self.pi_i0 * factor,
            self.pi_0i * factor,
            self.pi_ii * factor,
        )
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        finite("pi_00", self.pi_00)?;
        finite("pi_I0", self.pi_i0)?;
        finite("pi_0I", self.pi_0i)?;
        finite("pi_II", self.pi_ii)?;
        Ok(())
    }
}

/// Profits of the merged monopolist without and with the innovation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonopolyProfits {
    pub pi_0: f64,
    pub pi_i: f64,
}

impl MonopolyProfits {
    pub const fn new(pi_0: f64, pi_i: f64) -> Self {
        Self { pi_0, pi_i }
    }

    pub fn innovation_gain(&self) -> f64 {
        self.pi_i - self.pi_0
    }

    /// Innovation must strictly raise monopoly profit.
    pub fn check(&self) -> Result<()> {
        finite("pi_0", self.pi_0)?;
        finite("pi_I", self.pi_i)?;
        if self.pi_i > self.pi_0 {
            Ok(())
        } else {
            Err(AssumptionViolation::new(AssumptionCode::MonopolyGain, self.pi_i, self.pi_0).into())
        }
    }
}

/// Consumer surplus by market state, including the two monopoly states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsTriple {
    pub cs_00: f64,
    pub cs_i0: f64,
    pub cs_ii: f64,
    pub cs_m0: f64,
    pub cs_mi: f64,
}

impl CsTriple {
    pub const fn new(cs_00: f64, cs_i0: f64, cs_ii: f64, cs_m0: f64, cs_mi: f64) -> Self {
        Self {
            cs_00,
            cs_i0,
            cs_ii,
            cs_m0,
            cs_mi,
        }
    }

    /// Returns every failed surplus ordering.
    pub fn violations(&self) -> Result<Vec<AssumptionViolation>> {
        for (name, x) in [
            ("cs_00", self.cs_00),
            ("cs_I0", self.cs_i0),
            ("cs_II", self.cs_ii),
            ("cs_m0", self.cs_m0),
            ("cs_mI", self.cs_mi),
        ] {
            finite(name, x)?;
        }
        let mut out = Vec::new();
        if !(self.cs_ii > self.cs_00 && self.cs_ii > self.cs_i0) {
            let rhs = if self.cs_00 > self.cs_i0 {
                self.cs_00
            } else {
                self.cs_i0
            };
            out.push(AssumptionViolation::new(
                AssumptionCode::ConsumersGain,
                self.cs_ii,
                rhs,
            ));
        }
        if self.cs_00 < self.cs_m0 {
            out.push(AssumptionViolation::new(
                AssumptionCode::DuopolySurplus,
                self.cs_00,
                self.cs_m0,
            ));
        }
        if self.cs_ii < self.cs_mi {
            out.push(AssumptionViolation::new(
                AssumptionCode::DuopolySurplus,
                self.cs_ii,
                self.cs_mi,
            ));
        }
        Ok(out)
    }
}

/// Intensity of product market competition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarketRegime {
    Soft,
    Moderate,
    Intense,
}

impl MarketRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            MarketRegime::Soft => "soft",
            MarketRegime::Moderate => "moderate",
            MarketRegime::Intense => "intense",
        }
    }
}

impl fmt::Display for MarketRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named modelling assumptions that operations check before running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssumptionCode {
    /// Profits are non-negative.
    A1i,
    /// Joint innovation weakly raises profits.
    A1ii,
    /// Rival innovation weakly lowers profits.
    A1iii,
    /// Escaping competition is worth at least as much as catching up.
    A1iv,
    /// The per-firm budget is smaller than the cost of the duplicated projects.
    BudgetBinding,
    /// Consumers gain from innovation.
    ConsumersGain,
    /// Monopoly profit strictly rises with innovation.
    MonopolyGain,
    /// Two active firms give at least the monopoly surplus.
    DuopolySurplus,
    /// Multi-firm regularity (non-negativity, monotonicity, decreasing differences).
    MultiFirmRegularity,
    /// Joint-venture budgets cover the borrowing cut-off in the two-venture case.
    VentureBudget,
}

impl AssumptionCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            AssumptionCode::A1i => "A1i",
            AssumptionCode::A1ii => "A1ii",
            AssumptionCode::A1iii => "A1iii",
            AssumptionCode::A1iv => "A1iv",
            AssumptionCode::BudgetBinding => "A2",
            AssumptionCode::ConsumersGain => "A3",
            AssumptionCode::MonopolyGain => "A4",
            AssumptionCode::DuopolySurplus => "A5",
            AssumptionCode::MultiFirmRegularity => "A6",
            AssumptionCode::VentureBudget => "A7",
        }
    }
}

impl fmt::Display for AssumptionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed inequality `lhs (op) rhs` together with its code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionViolation {
    pub code: AssumptionCode,
    pub lhs: f64,
    pub rhs: f64,
}

impl AssumptionViolation {
    pub const fn new(code: AssumptionCode, lhs: f64, rhs: f64) -> Self {
        Self { code, lhs, rhs }
    }
}

impl fmt::Display for AssumptionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (lhs {}, bound {})", self.code, self.lhs, self.rhs)
    }
}

/// Checks the regularity inequalities exactly (no epsilon) and returns the
/// codes of those that fail, in order.
pub fn validate_regularity(pq: &ProfitQuad) -> Result<Vec<AssumptionCode>> {
    pq.check_finite()?;
    Ok(regularity_failures(pq).map(|v| v.code).collect())
}

pub(crate) fn regularity_failures(pq: &ProfitQuad) -> impl Iterator<Item = AssumptionViolation> {
    let ProfitQuad {
        pi_00,
        pi_i0,
        pi_0i,
        pi_ii,
    } = *pq;
    let min = pi_00.min(pi_i0).min(pi_0i).min(pi_ii);
    let iii = if pi_i0 >= pi_ii {
        (pi_00, pi_0i)
    } else {
        (pi_i0, pi_ii)
    };
    [
        (min >= 0.0).then_some(()).map_or(
            Some(AssumptionViolation::new(AssumptionCode::A1i, min, 0.0)),
            |_| None,
        ),
        (pi_ii >= pi_00).then_some(()).map_or(
            Some(AssumptionViolation::new(AssumptionCode::A1ii, pi_ii, pi_00)),
            |_| None,
        ),
        (pi_i0 >= pi_ii && pi_00 >= pi_0i).then_some(()).map_or(
            Some(AssumptionViolation::new(
                AssumptionCode::A1iii,
                iii.0,
                iii.1,
            )),
            |_| None,
        ),
        (pi_i0 - pi_00 >= pi_ii - pi_0i).then_some(()).map_or(
            Some(AssumptionViolation::new(
                AssumptionCode::A1iv,
                pi_i0 - pi_00,
                pi_ii - pi_0i,
            )),
            |_| None,
        ),
    ]
    .into_iter()
    .flatten()
}

pub(crate) fn require_regular(pq: &ProfitQuad) -> Result<()> {
    pq.check_finite()?;
    match regularity_failures(pq).next() {
        Some(v) => Err(Error::Assumption(v)),
        None => Ok(()),
    }
}

/// Classifies competition intensity. Ties belong to `Moderate`.
pub fn classify_regime(pq: &ProfitQuad) -> Result<MarketRegime> {
    require_regular(pq)?;
    Ok(regime_unchecked(pq))
}

/// Regime classification without the regularity gate; used on transformed
/// quads whose rival-innovation ordering may legitimately fail.
pub(crate) fn regime_unchecked(pq: &ProfitQuad) -> MarketRegime {
    let avoid_catch_up = pq.pi_i0 - pq.pi_ii;
    if avoid_catch_up > pq.pi_ii - pq.pi_0i {
        MarketRegime::Intense
    } else if avoid_catch_up < pq.pi_ii - pq.pi_00 {
        MarketRegime::Soft
    } else {
        MarketRegime::Moderate
    }
}

/// Probability that a non-investing rival obtains a discovered innovation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpilloverRate(f64);

impl SpilloverRate {
    pub fn new(sigma: f64) -> Result<Self> {
        finite("sigma", sigma)?;
        if (0.0..=1.0).contains(&sigma) {
            Ok(Self(sigma))
        } else {
            Err(Error::Domain {
                what: "spillover rate must lie in [0, 1]",
                value: sigma,
            })
        }
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Licensing block: `delta` is the industry-profit gain from royalty-softened
/// competition when the innovation is licensed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LicensingTerms {
    pub delta: f64,
    pub enabled: bool,
}

impl LicensingTerms {
    pub fn new(delta: f64, enabled: bool) -> Result<Self> {
        finite("delta", delta)?;
        if delta < 0.0 {
            return Err(Error::Domain {
                what: "licensing surplus must be non-negative",
                value: delta,
            });
        }
        Ok(Self { delta, enabled })
    }
}

/// Expected profits before spillovers are realised: the sole innovator's and
/// laggard's profits are mixed with `pi_II` at rate `sigma`.
pub fn spillover_transform(pq: &ProfitQuad, s: SpilloverRate) -> ProfitQuad {
    let sigma = s.get();
    ProfitQuad {
        pi_i0: (1.0 - sigma) * pq.pi_i0 + sigma * pq.pi_ii,
        pi_0i: (1.0 - sigma) * pq.pi_0i + sigma * pq.pi_ii,
        ..*pq
    }
}

/// Sole-innovator profit when the innovator may license to its rival with a
/// take-it-or-leave-it offer. Returns the transformed quad and whether
/// licensing takes place.
pub fn licensing_transform(pq: &ProfitQuad, lt: LicensingTerms) -> (ProfitQuad, bool) {
    if !lt.enabled {
        return (*pq, false);
    }
    let licensed = 2.0 * pq.pi_ii + lt.delta - pq.pi_0i;
    let occurs = licensed >= pq.pi_i0;
    let pi_i0 = if occurs { licensed } else { pq.pi_i0 };
    (ProfitQuad { pi_i0, ..*pq }, occurs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> ProfitQuad {
        ProfitQuad::new(1.0 / 9.0, 4.0 / 9.0, 0.25 / 9.0, 0.25)
    }

    #[test]
    fn regularity_examples() {
        assert!(
            validate_regularity(&ProfitQuad::new(0.1111, 0.4444, 0.0278, 0.25))
                .unwrap()
                .is_empty()
        );
        assert!(validate_regularity(&ProfitQuad::new(0.0, 0.0, 0.0, 0.0))
            .unwrap()
            .is_empty());
        assert_eq!(
            validate_regularity(&ProfitQuad::new(0.2, 0.1, 0.0, 0.3)).unwrap(),
            alloc::vec![AssumptionCode::A1iii, AssumptionCode::A1iv]
        );
    }

    #[test]
    fn regularity_reports_every_failure() {
        let codes = validate_regularity(&ProfitQuad::new(0.5, 0.1, 0.6, -0.1)).unwrap();
        assert_eq!(
            codes,
            alloc::vec![
                AssumptionCode::A1i,
                AssumptionCode::A1ii,
                AssumptionCode::A1iii,
            ]
        );
    }

    #[test]
    fn non_finite_rejected() {
        let err = validate_regularity(&ProfitQuad::new(f64::NAN, 0.0, 0.0, 0.0)).unwrap_err();
        assert_eq!(err, Error::NonFinite { field: "pi_00" });
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(&s1()).unwrap(), MarketRegime::Moderate);
        let bertrand = ProfitQuad::new(0.037037, 0.090133, 0.026133, 0.072593);
        assert_eq!(classify_regime(&bertrand).unwrap(), MarketRegime::Soft);
        let homogeneous = ProfitQuad::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(
            classify_regime(&homogeneous).unwrap(),
            MarketRegime::Intense
        );
    }

    #[test]
    fn regime_ties_are_moderate() {
        // pi_I0 - pi_II == pi_II - pi_0I
        let q = ProfitQuad::new(0.25, 1.0, 0.0, 0.5);
        assert_eq!(classify_regime(&q).unwrap(), MarketRegime::Moderate);
        // pi_I0 - pi_II == pi_II - pi_00
        let q = ProfitQuad::new(0.25, 0.75, 0.0, 0.5);
        assert_eq!(classify_regime(&q).unwrap(), MarketRegime::Moderate);
    }

    #[test]
    fn regime_requires_regularity() {
        let err = classify_regime(&ProfitQuad::new(0.2, 0.25, 0.0, 0.3)).unwrap_err();
        assert!(matches!(err, Error::Assumption(v) if v.code == AssumptionCode::A1iii));
    }

    #[test]
    fn spillover_examples() {
        let q = s1();
        assert_eq!(spillover_transform(&q, SpilloverRate::new(0.0).unwrap()), q);
        let full = spillover_transform(&q, SpilloverRate::new(1.0).unwrap());
        assert_eq!(full, ProfitQuad::new(q.pi_00, 0.25, 0.25, 0.25));
        let half = spillover_transform(&q, SpilloverRate::new(0.5).unwrap());
        assert!((half.pi_i0 - 0.347222).abs() < 1e-6);
        assert!((half.pi_0i - 0.138889).abs() < 1e-6);
        assert!(SpilloverRate::new(1.5).is_err());
    }

    #[test]
    fn licensing_examples() {
        let (l, occurs) = licensing_transform(&s1(), LicensingTerms::new(0.0, true).unwrap());
        assert!(occurs);
        assert!((l.pi_i0 - 0.472222).abs() < 1e-6);

        let hb = ProfitQuad::new(0.0, 1.0, 0.0, 0.0);
        let (l, occurs) = licensing_transform(&hb, LicensingTerms::new(0.0, true).unwrap());
        assert!(!occurs);
        assert_eq!(l, hb);

        let q = s1();
        let delta = 1e3 * q.pi_i0;
        let (l, occurs) = licensing_transform(&q, LicensingTerms::new(delta, true).unwrap());
        assert!(occurs);
        assert_eq!(l.pi_i0, 2.0 * q.pi_ii + delta - q.pi_0i);

        let (l, occurs) = licensing_transform(&q, LicensingTerms::new(delta, false).unwrap());
        assert!(!occurs);
        assert_eq!(l, q);
        assert!(LicensingTerms::new(-1.0, true).is_err());
    }

    #[test]
    fn monopoly_and_surplus_checks() {
        assert!(MonopolyProfits::new(0.25, 0.5625).check().is_ok());
        assert!(MonopolyProfits::new(0.25, 0.25).check().is_err());
        let cs = CsTriple::new(2.0 / 9.0, 0.3472, 0.5, 0.125, 0.28125);
        assert!(cs.violations().unwrap().is_empty());
        let bad = CsTriple::new(0.5, 0.3, 0.4, 0.6, 0.1);
        let codes: Vec<_> = bad.violations().unwrap().iter().map(|v| v.code).collect();
        assert_eq!(
            codes,
            alloc::vec![
                AssumptionCode::ConsumersGain,
                AssumptionCode::DuopolySurplus
            ]
        );
    }
}
