//! Linear Cournot and differentiated Bertrand markets with a process
//! innovation that lowers marginal cost by `I`.

use crate::error::{finite, Error, Result};
use crate::model::{CsTriple, MonopolyProfits, ProfitQuad};

/// Everything a scenario needs from a product market.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Market {
    pub quad: ProfitQuad,
    pub monopoly: MonopolyProfits,
    pub cs: CsTriple,
}

/// Inverse demand `p = a − b·Q`, marginal cost `c`, cost reduction `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CournotPrimitives {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub innovation: f64,
}

impl CournotPrimitives {
    pub fn new(a: f64, b: f64, c: f64, innovation: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            c,
            innovation,
        };
        p.validate()?;
        Ok(p)
    }

    /// Primitives from the demand margin `α = a − c` directly.
    pub fn from_alpha(alpha: f64, b: f64, innovation: f64) -> Result<Self> {
        Self::new(alpha, b, 0.0, innovation)
    }

    pub fn alpha(&self) -> f64 {
        self.a - self.c
    }

    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("b", self.b)?;
        finite("c", self.c)?;
        finite("innovation", self.innovation)?;
        if self.b <= 0.0 {
            return Err(Error::Domain {
                what: "demand slope must be positive",
                value: self.b,
            });
        }
        if self.innovation <= 0.0 {
            return Err(Error::Domain {
                what: "cost reduction must be positive",
                value: self.innovation,
            });
        }
        if self.alpha() <= self.innovation {
            return Err(Error::Domain {
                what: "drastic innovation: demand margin must exceed the cost reduction",
                value: self.alpha(),
            });
        }
        Ok(())
    }
}

pub fn cournot_market(p: &CournotPrimitives) -> Result<Market> {
    p.validate()?;
    let (alpha, b, i) = (p.alpha(), p.b, p.innovation);
    let nine_b = 9.0 * b;
    let sq = |x: f64| x * x;
    let quad = ProfitQuad::new(
        sq(alpha) / nine_b,
        sq(alpha + 2.0 * i) / nine_b,
        sq(alpha - i) / nine_b,
        sq(alpha + i) / nine_b,
    );
    let monopoly = MonopolyProfits::new(sq(alpha) / (4.0 * b), sq(alpha + i) / (4.0 * b));
    // Total output (2α + Iᵢ + Iⱼ)/(3b); surplus b·Q²/2.
    let cs = |ii: f64, ij: f64| 0.5 * b * sq((2.0 * alpha + ii + ij) / (3.0 * b));
    let cs_mono = |x: f64| sq(x) / (8.0 * b);
    Ok(Market {
        quad,
        monopoly,
        cs: CsTriple::new(
            cs(0.0, 0.0),
            cs(i, 0.0),
            cs(i, i),
            cs_mono(alpha),
            cs_mono(alpha + i),
        ),
    })
}

/// Inverse demand `pᵢ = 1 − qᵢ − b·qⱼ`, common marginal cost `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BertrandPrimitives {
    pub b: f64,
    pub c: f64,
    pub innovation: f64,
}

impl BertrandPrimitives {
    pub fn new(b: f64, c: f64, innovation: f64) -> Result<Self> {
        let p = Self { b, c, innovation };
        p.validate()?;
        Ok(p)
    }

    /// Largest cost reduction keeping the laggard's output positive, or
    /// infinity for independent products.
    pub fn drastic_bound(&self) -> f64 {
        let (b, c) = (self.b, self.c);
        if b == 0.0 {
            f64::INFINITY
        } else {
            (b * b * c - 2.0 * c - b + b * c - b * b + 2.0) / b
        }
    }

    pub fn validate(&self) -> Result<()> {
        finite("b", self.b)?;
        finite("c", self.c)?;
        finite("innovation", self.innovation)?;
        if !(0.0..1.0).contains(&self.b) {
            return Err(Error::Domain {
                what: "substitution parameter must lie in [0, 1)",
                value: self.b,
            });
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::Domain {
                what: "marginal cost must lie in (0, 1)",
                value: self.c,
            });
        }
        if !(self.innovation > 0.0 && self.innovation <= self.c) {
            return Err(Error::Domain {
                what: "cost reduction must lie in (0, c]",
                value: self.innovation,
            });
        }
        if self.innovation >= self.drastic_bound() {
            return Err(Error::Domain {
                what: "drastic innovation: laggard output would not be positive",
                value: self.innovation,
            });
        }
        Ok(())
    }

    /// Equilibrium output of a firm with cost `ci` facing a rival with `cj`.
    pub fn output(&self, ci: f64, cj: f64) -> f64 {
        let b = self.b;
        (2.0 - b - b * b - (2.0 - b * b) * ci + b * cj) / ((4.0 - b * b) * (1.0 - b * b))
    }
}

pub fn bertrand_market(p: &BertrandPrimitives) -> Result<Market> {
    p.validate()?;
    let (b, c, i) = (p.b, p.c, p.innovation);
    let profit = |ci: f64, cj: f64| (1.0 - b * b) * p.output(ci, cj) * p.output(ci, cj);
    let cs = |ci: f64, cj: f64| {
        let (q1, q2) = (p.output(ci, cj), p.output(cj, ci));
        0.5 * (q1 * q1 + q2 * q2 + 2.0 * b * q1 * q2)
    };
    let lo = c - i;
    let quad = ProfitQuad::new(profit(c, c), profit(lo, c), profit(c, lo), profit(lo, lo));
    // Joint owner of both products, symmetric output per product.
    let mono_q = |cost: f64| (1.0 - cost) / (2.0 * (1.0 + b));
    let mono_profit = |cost: f64| (1.0 - cost) * (1.0 - cost) / (2.0 * (1.0 + b));
    let mono_cs = |cost: f64| (1.0 + b) * mono_q(cost) * mono_q(cost);
    Ok(Market {
        quad,
        monopoly: MonopolyProfits::new(mono_profit(c), mono_profit(lo)),
        cs: CsTriple::new(cs(c, c), cs(lo, c), cs(lo, lo), mono_cs(c), mono_cs(lo)),
    })
}
