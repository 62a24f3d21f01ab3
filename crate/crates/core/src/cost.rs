//! Project cost schedules `C(θ)` on `[0, 1)` and their cumulative mass.

use alloc::vec::Vec;

use crate::error::{finite, Error, Result};
use crate::numeric::integrate;

/// Quadrature is never pushed closer than this to the singular end.
pub const UPPER_CLAMP: f64 = 1.0 - 1e-9;

const QUAD_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Family {
    /// `k·θ / (1 − θ²)`
    Ratio { k: f64 },
    /// `k·θ^p / (1 − θ)`
    Power { k: f64, p: f64 },
    /// Piecewise-linear through `(θᵢ, Cᵢ)`, then `C_n (1 − θ_n) / (1 − θ)`.
    Tabulated { theta: Vec<f64>, cost: Vec<f64> },
}

/// A strictly increasing cost schedule with `C(0) = 0` and `C(θ) → ∞` as
/// `θ → 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostFunction {
    family: Family,
}

impl CostFunction {
    pub fn ratio(k: f64) -> Result<Self> {
        positive("k", k)?;
        Ok(Self {
            family: Family::Ratio { k },
        })
    }

    pub fn power(k: f64, p: f64) -> Result<Self> {
        positive("k", k)?;
        finite("p", p)?;
        if p < 1.0 {
            return Err(Error::Domain {
                what: "power-cost exponent must be at least 1",
                value: p,
            });
        }
        Ok(Self {
            family: Family::Power { k, p },
        })
    }

    /// Samples must start at `(0, 0)` and be strictly increasing in both
    /// coordinates, with every `θ` below 1.
    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Configuration(
                "tabulated cost needs at least two samples",
            ));
        }
        for &(t, c) in samples {
            finite("theta", t)?;
            finite("cost", c)?;
        }
        if samples[0] != (0.0, 0.0) {
            return Err(Error::Configuration("tabulated cost must start at (0, 0)"));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::Configuration(
                    "tabulated cost samples must be strictly increasing",
                ));
            }
        }
        let last = samples[samples.len() - 1].0;
        if last >= 1.0 {
            return Err(Error::Domain {
                what: "tabulated project index must be below 1",
                value: last,
            });
        }
        Ok(Self {
            family: Family::Tabulated {
                theta: samples.iter().map(|s| s.0).collect(),
                cost: samples.iter().map(|s| s.1).collect(),
            },
        })
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Ratio { .. } => "ratio",
            Family::Power { .. } => "power",
            Family::Tabulated { .. } => "tabulated",
        }
    }

    /// Whether `mass` is evaluated from an antiderivative rather than by
    /// quadrature.
    pub fn has_closed_form(&self) -> bool {
        match self.family {
            Family::Power { p, .. } => p == libm::floor(p),
            _ => true,
        }
    }

    /// `C(θ)`; infinite for `θ ≥ 1`.
    pub fn cost(&self, theta: f64) -> f64 {
        if theta >= 1.0 {
            return f64::INFINITY;
        }
        let theta = theta.max(0.0);
        match &self.family {
            Family::Ratio { k } => k * theta / (1.0 - theta * theta),
            Family::Power { k, p } => k * libm::pow(theta, *p) / (1.0 - theta),
            Family::Tabulated { theta: ts, cost } => {
                let n = ts.len() - 1;
                if theta >= ts[n] {
                    return cost[n] * (1.0 - ts[n]) / (1.0 - theta);
                }
                let i = segment(ts, theta);
                let w = (theta - ts[i]) / (ts[i + 1] - ts[i]);
                cost[i] + w * (cost[i + 1] - cost[i])
            }
        }
    }

    /// `∫₀^θ C`; infinite for `θ ≥ 1`. Callers validate the domain.
    pub(crate) fn mass(&self, theta: f64) -> f64 {
        if theta >= 1.0 {
            return f64::INFINITY;
        }
        if theta <= 0.0 {
            return 0.0;
        }
        match &self.family {
            Family::Ratio { k } => -0.5 * k * libm::log1p(-theta * theta),
            Family::Power { k, p } => {
                if *p == libm::floor(*p) && *p <= 64.0 {
                    k * power_mass_integer(*p as u32, theta)
                } else {
                    // θ^p/(1−θ) = (θ^p − 1)/(1−θ) + 1/(1−θ); the first part is
                    // bounded so quadrature converges quickly.
                    let x = theta.min(UPPER_CLAMP);
                    let p = *p;
                    let smooth = integrate(
                        |t| {
                            if t >= 1.0 {
                                -p
                            } else {
                                libm::expm1(p * libm::log(t.max(f64::MIN_POSITIVE))) / (1.0 - t)
                            }
                        },
                        0.0,
                        x,
                        QUAD_REL_TOL,
                    );
                    k * (smooth - libm::log1p(-x))
                }
            }
            Family::Tabulated { theta: ts, cost } => {
                let n = ts.len() - 1;
                let upto = theta.min(ts[n]);
                let mut acc = 0.0;
                for i in 0..n {
                    if ts[i] >= upto {
                        break;
                    }
                    let hi = ts[i + 1].min(upto);
                    let c_hi = self.cost(hi);
                    acc += 0.5 * (cost[i] + c_hi) * (hi - ts[i]);
                }
                if theta > ts[n] {
                    let scale = cost[n] * (1.0 - ts[n]);
                    acc += -scale * libm::log((1.0 - theta) / (1.0 - ts[n]));
                }
                acc
            }
        }
    }

    /// `∫_a^b C` for `0 ≤ a ≤ b`.
    pub(crate) fn mass_between(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        self.mass(b) - self.mass(a)
    }
}

fn positive(field: &'static str, x: f64) -> Result<()> {
    finite(field, x)?;
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "cost scale must be positive",
            value: x,
        })
    }
}

fn segment(ts: &[f64], theta: f64) -> usize {
    match ts.binary_search_by(|t| t.total_cmp(&theta)) {
        Ok(i) => i.min(ts.len() - 2),
        Err(i) => i - 1,
    }
}

/// `∫₀^x θ^p/(1−θ) dθ = −ln(1−x) − Σ_{j=1}^{p} x^j/j = Σ_{j>p} x^j/j`.
/// The tail series avoids cancellation for small `x`.
fn power_mass_integer(p: u32, x: f64) -> f64 {
    if x <= 0.5 {
        let mut term = libm::pow(x, f64::from(p));
        let mut sum = 0.0;
        let mut j = p + 1;
        loop {
            term *= x;
            let add = term / f64::from(j);
            sum += add;
            if add <= sum * 1e-17 || j > p + 200 {
                break;
            }
            j += 1;
        }
        sum
    } else {
        let mut poly = 0.0;
        let mut xp = 1.0;
        for j in 1..=p {
            xp *= x;
            poly += xp / f64::from(j);
        }
        -libm::log1p(-x) - poly
    }
}
