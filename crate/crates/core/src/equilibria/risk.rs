//! Risk-dominance comparison of two competitive equilibria that differ only
//! in which firm funds a deviation interval, when the firms face slightly
//! different borrowing rates.

use crate::cost::CostFunction;
use crate::cutoffs::value_cutoff;
use crate::error::{finite, Error, Result};
use crate::model::ProfitQuad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskDominanceReport {
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
    /// Mass of the deviation interval.
    pub mass_d: f64,
    /// Cost integral over the deviation interval.
    pub cost_d: f64,
    /// `v1·v2 − u1·u2` in factored form, free of cancellation.
    pub margin: f64,
    pub dominant: bool,
}

/// Payoff differences of the 2×2 game between the equilibrium where the
/// low-rate firm funds `interval` and the one where the high-rate firm does.
///
/// The interval must lie between the lower cut-off at the low rate and the
/// upper cut-off at the high rate (in either order, so that quads breaking
/// the escape-vs-catch-up ordering can still be diagnosed).
pub fn risk_dominance_check(
    pq: &ProfitQuad,
    rate_low: f64,
    rate_high: f64,
    cf: &CostFunction,
    interval: (f64, f64),
) -> Result<RiskDominanceReport> {
    pq.check_finite()?;
    finite("rate_low", rate_low)?;
    finite("rate_high", rate_high)?;
    finite("interval start", interval.0)?;
    finite("interval end", interval.1)?;
    if rate_low < 0.0 {
        return Err(Error::Domain {
            what: "low rate must be non-negative",
            value: rate_low,
        });
    }
    if rate_high < rate_low {
        return Err(Error::Domain {
            what: "high rate must not be below the low rate",
            value: rate_high,
        });
    }
    let (a, b) = interval;
    let lower = value_cutoff(cf, pq.catch_up_value().max(0.0), rate_low);
    let upper = value_cutoff(cf, pq.escape_value().max(0.0), rate_high);
    let (lo, hi) = if lower <= upper {
        (lower, upper)
    } else {
        (upper, lower)
    };
    if !(lo <= a && a <= b && b <= hi) {
        return Err(Error::Domain {
            what: "deviation interval must lie between the competitive cut-offs",
            value: if a < lo { a } else { b },
        });
    }
    let m = b - a;
    let k = cf.mass_between(a, b);
    let escape = pq.escape_value();
    let lag = pq.pi_0i - pq.pi_ii;
    let low = (1.0 + rate_low) * k;
    let high = (1.0 + rate_high) * k;
    let u1 = m * lag + low;
    let u2 = m * escape - high;
    let v1 = m * escape - low;
    let v2 = m * lag + high;
    let margin = m * k * (rate_high - rate_low) * (escape + lag);
    Ok(RiskDominanceReport {
        u1,
        u2,
        v1,
        v2,
        mass_d: m,
        cost_d: k,
        margin,
        dominant: margin >= 0.0,
    })
}
