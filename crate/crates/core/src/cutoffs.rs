//! Cut-off projects, budget cut-offs and the threshold quantities that
//! decide when pooling R&D raises the innovation probability.

use core::fmt;

use crate::cost::CostFunction;
use crate::error::{finite, Error, Result};
use crate::model::{require_regular, MonopolyProfits, ProfitQuad};
use crate::numeric::{bisect_increasing, THETA_TOL};

/// Internal budget per firm and the external borrowing rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinancingEnv {
    pub budget: f64,
    pub rate: f64,
}

impl FinancingEnv {
    pub fn new(budget: f64, rate: f64) -> Result<Self> {
        finite("budget", budget)?;
        finite("rate", rate)?;
        if budget < 0.0 {
            return Err(Error::Domain {
                what: "budget must be non-negative",
                value: budget,
            });
        }
        if rate < 0.0 {
            return Err(Error::Domain {
                what: "interest rate must be non-negative",
                value: rate,
            });
        }
        Ok(Self { budget, rate })
    }
}

/// `∫₀^θ C`.
pub fn cost_mass(cf: &CostFunction, theta: f64) -> Result<f64> {
    finite("theta", theta)?;
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::Domain {
            what: "project index must lie in [0, 1)",
            value: theta,
        });
    }
    Ok(cf.mass(theta))
}

/// The project `θ` with `(1 + rate)·C(θ) = delta_pi`.
pub fn solve_value_cutoff(cf: &CostFunction, delta_pi: f64, effective_rate: f64) -> Result<f64> {
    finite("delta_pi", delta_pi)?;
    finite("rate", effective_rate)?;
    if delta_pi < 0.0 {
        return Err(Error::Domain {
            what: "profit difference must be non-negative",
            value: delta_pi,
        });
    }
    if effective_rate < 0.0 {
        return Err(Error::Domain {
            what: "interest rate must be non-negative",
            value: effective_rate,
        });
    }
    Ok(value_cutoff(cf, delta_pi, effective_rate))
}

pub(crate) fn value_cutoff(cf: &CostFunction, delta_pi: f64, rate: f64) -> f64 {
    if delta_pi <= 0.0 {
        return 0.0;
    }
    let target = delta_pi / (1.0 + rate);
    bisect_increasing(|t| cf.cost(t), target, 0.0, 1.0, THETA_TOL)
}

/// The project `θᴮ` whose cumulative cost equals `total_budget`, or 1 when
/// the budget exceeds every representable project mass.
pub fn budget_cutoff(cf: &CostFunction, total_budget: f64) -> Result<f64> {
    finite("budget", total_budget)?;
    if total_budget < 0.0 {
        return Err(Error::Domain {
            what: "budget must be non-negative",
            value: total_budget,
        });
    }
    Ok(budget_cutoff_unchecked(cf, total_budget))
}

pub(crate) fn budget_cutoff_unchecked(cf: &CostFunction, total_budget: f64) -> f64 {
    if total_budget <= 0.0 {
        return 0.0;
    }
    let t = bisect_increasing(|t| cf.mass(t), total_budget, 0.0, 1.0, THETA_TOL);
    if 1.0 - t <= THETA_TOL {
        1.0
    } else {
        t
    }
}

/// A threshold that may be infinite. Comparisons against `Infinite` are
/// exact: nothing exceeds it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Finite(f64),
    Infinite,
}

impl Threshold {
    pub(crate) fn ratio(num: f64, den: f64) -> Self {
        if den == 0.0 {
            Threshold::Infinite
        } else {
            Threshold::Finite(num / den)
        }
    }

    /// `x > self`.
    pub fn exceeded_by(&self, x: f64) -> bool {
        match self {
            Threshold::Finite(t) => x > *t,
            Threshold::Infinite => false,
        }
    }

    /// `x < self`.
    pub fn above(&self, x: f64) -> bool {
        match self {
            Threshold::Finite(t) => x < *t,
            Threshold::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Threshold::Finite(t) => Some(*t),
            Threshold::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Threshold::Infinite)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(t) => write!(f, "{t}"),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

/// Rate and budget thresholds of the competition-vs-RJV comparison plus the
/// merger, licensing and spillover variants when they apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRecord {
    pub rho_bar: Threshold,
    pub b_bar: f64,
    pub psi: Threshold,
    pub rho_bar_m: Option<Threshold>,
    pub rho_bar_l: Option<Threshold>,
    pub b_bar_l: Option<f64>,
    pub rho_tilde: Option<Threshold>,
    pub b_tilde: Option<f64>,
}

/// Rate threshold above which pooled (unconstrained) investment exceeds the
/// competitive escape cut-off.
pub(crate) fn rate_threshold(pq: &ProfitQuad) -> Threshold {
    Threshold::ratio(
        pq.pi_i0 - pq.pi_ii - (pq.pi_ii - pq.pi_00),
        2.0 * pq.joint_gain(),
    )
}

pub(crate) fn budget_threshold(pq: &ProfitQuad, cf: &CostFunction, rate: f64) -> f64 {
    0.5 * cf.mass(value_cutoff(cf, pq.escape_value(), rate))
}

pub(crate) fn thresholds_unchecked(
    pq: &ProfitQuad,
    mono: Option<&MonopolyProfits>,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> ThresholdRecord {
    let rho_bar_m = mono.map(|m| {
        let g = m.innovation_gain();
        Threshold::ratio(pq.escape_value() - g, g)
    });
    ThresholdRecord {
        rho_bar: rate_threshold(pq),
        b_bar: budget_threshold(pq, cf, fin.rate),
        psi: Threshold::ratio(pq.pi_i0 + pq.pi_0i - 2.0 * pq.pi_ii, 2.0 * pq.joint_gain()),
        rho_bar_m,
        rho_bar_l: None,
        b_bar_l: None,
        rho_tilde: None,
        b_tilde: None,
    }
}

pub fn compute_thresholds(
    pq: &ProfitQuad,
    mono: Option<&MonopolyProfits>,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<ThresholdRecord> {
    require_regular(pq)?;
    if let Some(m) = mono {
        m.check()?;
    }
    Ok(thresholds_unchecked(pq, mono, cf, fin))
}

/// Every cut-off of the baseline model in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSet {
    pub theta2: f64,
    pub theta1: f64,
    pub theta_rho: f64,
    pub theta_u: f64,
    pub theta_b: f64,
    pub theta_star: f64,
    pub theta_rho_m: Option<f64>,
    pub theta_u_m: Option<f64>,
    pub theta_star_m: Option<f64>,
}

/// `θᴮ` clamped into `[θᵖ, θᵘ]`; boundary cases resolve to `θᴮ`.
pub(crate) fn clamp_star(theta_b: f64, theta_rho: f64, theta_u: f64) -> f64 {
    if theta_b < theta_rho {
        theta_rho
    } else if theta_b > theta_u {
        theta_u
    } else {
        theta_b
    }
}

pub fn cutoff_set(
    pq: &ProfitQuad,
    mono: Option<&MonopolyProfits>,
    cf: &CostFunction,
    fin: &FinancingEnv,
) -> Result<CutoffSet> {
    require_regular(pq)?;
    if let Some(m) = mono {
        m.check()?;
    }
    let rate = fin.rate;
    let theta_b = budget_cutoff_unchecked(cf, 2.0 * fin.budget);
    let pooled = pq.pooled_value();
    let theta_rho = value_cutoff(cf, pooled, rate);
    let theta_u = value_cutoff(cf, pooled, 0.0);
    let merger = mono.map(|m| {
        let g = m.innovation_gain();
        let lo = value_cutoff(cf, g, rate);
        let hi = value_cutoff(cf, g, 0.0);
        (lo, hi, clamp_star(theta_b, lo, hi))
    });
    Ok(CutoffSet {
        theta2: value_cutoff(cf, pq.catch_up_value(), rate),
        theta1: value_cutoff(cf, pq.escape_value(), rate),
        theta_rho,
        theta_u,
        theta_b,
        theta_star: clamp_star(theta_b, theta_rho, theta_u),
        theta_rho_m: merger.map(|m| m.0),
        theta_u_m: merger.map(|m| m.1),
        theta_star_m: merger.map(|m| m.2),
    })
}
