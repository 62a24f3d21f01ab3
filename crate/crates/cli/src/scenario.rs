//! Scenario files: JSON with a schema version, resolved into model inputs.

use std::fs;
use std::path::Path;

use rjv_core::{
    bertrand_market, cournot_market, AssumptionPolicy, BertrandPrimitives, CostFunction,
    CournotPrimitives, CsTriple, FinancingEnv, LicensingTerms, Market, MonopolyProfits,
    MultiFirmProfits, ProfitQuad, SpilloverRate,
};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub market: MarketSpec,
    #[serde(default)]
    pub cost: CostSpec,
    pub financing: FinancingSpec,
    #[serde(default = "two_firms")]
    pub firms: u8,
    #[serde(default)]
    pub extension: Option<ExtensionSpec>,
    #[serde(default)]
    pub compare: CompareTarget,
}

fn two_firms() -> u8 {
    2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MarketSpec {
    Cournot(CournotSpec),
    Bertrand(BertrandSpec),
    Abstract(AbstractSpec),
    /// Profits by number of innovating rivals, for three or four firms.
    Multi(MultiSpec),
}

/// Either `alpha` (the demand margin `a - c`) or both `a` and `c`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CournotSpec {
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default = "unit")]
    pub b: f64,
    pub innovation: f64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BertrandSpec {
    pub b: f64,
    pub c: f64,
    pub innovation: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractSpec {
    pub quad: QuadSpec,
    #[serde(default)]
    pub monopoly: Option<MonopolySpec>,
    #[serde(default)]
    pub cs: Option<CsSpec>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSpec {
    pub pi_00: f64,
    pub pi_i0: f64,
    pub pi_0i: f64,
    pub pi_ii: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonopolySpec {
    pub pi_0: f64,
    pub pi_i: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsSpec {
    pub cs_00: f64,
    pub cs_i0: f64,
    pub cs_ii: f64,
    pub cs_m0: f64,
    pub cs_mi: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiSpec {
    pub without: Vec<f64>,
    pub with: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CostSpec {
    Ratio {
        #[serde(default = "unit")]
        k: f64,
    },
    Power {
        #[serde(default = "unit")]
        k: f64,
        p: f64,
    },
    Tabulated {
        points: Vec<(f64, f64)>,
    },
}

impl Default for CostSpec {
    fn default() -> Self {
        CostSpec::Ratio { k: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinancingSpec {
    pub budget: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ExtensionSpec {
    Spillover {
        sigma: f64,
    },
    Licensing {
        #[serde(default = "yes")]
        enabled: bool,
        #[serde(default)]
        delta: f64,
    },
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareTarget {
    #[default]
    Rjv,
    Merger,
    Both,
}

impl CompareTarget {
    pub fn rjv(&self) -> bool {
        matches!(self, CompareTarget::Rjv | CompareTarget::Both)
    }

    pub fn merger(&self) -> bool {
        matches!(self, CompareTarget::Merger | CompareTarget::Both)
    }
}

/// Market inputs after validation.
#[derive(Debug, Clone)]
pub enum Industry {
    Duopoly {
        quad: ProfitQuad,
        monopoly: Option<MonopolyProfits>,
        cs: Option<CsTriple>,
    },
    Three(MultiFirmProfits<3>),
    Four(MultiFirmProfits<4>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ext {
    None,
    Spillover(SpilloverRate),
    Licensing(LicensingTerms),
}

/// A scenario ready for the model.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: Option<String>,
    pub industry: Industry,
    pub cost: CostFunction,
    pub financing: FinancingEnv,
    pub extension: Ext,
    pub compare: CompareTarget,
}

/// Failures of the market primitives themselves (drastic innovation, bad
/// demand parameters), kept apart so sweeps can label them.
#[derive(Debug)]
pub enum ResolveError {
    Market(CliError),
    Other(CliError),
}

impl From<ResolveError> for CliError {
    fn from(e: ResolveError) -> Self {
        match e {
            ResolveError::Market(e) | ResolveError::Other(e) => e,
        }
    }
}

pub fn read_value(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        field: String::new(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses a scenario tree. Line numbers are only known when parsing text, so
/// tree errors carry the field path instead.
pub fn parse_value(path: &Path, v: Value) -> Result<ScenarioFile> {
    let file: ScenarioFile = serde_path_to_error::deserialize(v).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        field: e.path().to_string(),
        line: 0,
        column: 0,
        message: e.into_inner().to_string(),
    })?;
    check_version(file)
}

/// Reads and parses a scenario file, reporting text positions and field
/// paths on failure.
pub fn load(path: &Path) -> Result<ScenarioFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            path: path.to_path_buf(),
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    check_version(file)
}

fn check_version(file: ScenarioFile) -> Result<ScenarioFile> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::Invalid(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    Ok(file)
}

fn market_err(e: rjv_core::Error) -> ResolveError {
    ResolveError::Market(e.into())
}

fn other_err(e: rjv_core::Error) -> ResolveError {
    ResolveError::Other(e.into())
}

fn invalid(msg: impl Into<String>) -> ResolveError {
    ResolveError::Other(CliError::Invalid(msg.into()))
}

impl ScenarioFile {
    pub fn market_is_abstract_without_monopoly(&self) -> bool {
        matches!(&self.market, MarketSpec::Abstract(a) if a.monopoly.is_none())
    }

    pub fn resolve(&self) -> std::result::Result<Scenario, ResolveError> {
        let industry = match (&self.market, self.firms) {
            (MarketSpec::Multi(m), 3) => Industry::Three(MultiFirmProfits::new(
                array::<3>(&m.without, "without")?,
                array::<3>(&m.with, "with")?,
            )),
            (MarketSpec::Multi(m), 4) => Industry::Four(MultiFirmProfits::new(
                array::<4>(&m.without, "without")?,
                array::<4>(&m.with, "with")?,
            )),
            (MarketSpec::Multi(_), n) => {
                return Err(invalid(format!(
                    "a multi-firm market needs firms = 3 or 4, got {n}"
                )))
            }
            (_, 3 | 4) => {
                return Err(invalid(
                    "three and four firms need a market of kind `multi`",
                ))
            }
            (spec, 2) => duopoly(spec)?,
            (_, n) => return Err(invalid(format!("firms must be 2, 3 or 4, got {n}"))),
        };
        if !matches!(industry, Industry::Duopoly { .. }) {
            if self.compare.merger() {
                return Err(invalid("merger comparisons need exactly two firms"));
            }
            if self.extension.is_some() {
                return Err(invalid("extensions are defined for two firms only"));
            }
        }
        if self.compare.merger() {
            if let Industry::Duopoly { monopoly: None, .. } = industry {
                return Err(invalid(
                    "merger comparisons need monopoly profits (market.monopoly)",
                ));
            }
        }
        let cost = match &self.cost {
            CostSpec::Ratio { k } => CostFunction::ratio(*k),
            CostSpec::Power { k, p } => CostFunction::power(*k, *p),
            CostSpec::Tabulated { points } => CostFunction::tabulated(points),
        }
        .map_err(other_err)?;
        let financing =
            FinancingEnv::new(self.financing.budget, self.financing.rate).map_err(other_err)?;
        let extension = match self.extension {
            None => Ext::None,
            Some(ExtensionSpec::Spillover { sigma }) => {
                Ext::Spillover(SpilloverRate::new(sigma).map_err(other_err)?)
            }
            Some(ExtensionSpec::Licensing { enabled, delta }) => {
                Ext::Licensing(LicensingTerms::new(delta, enabled).map_err(other_err)?)
            }
        };
        Ok(Scenario {
            name: self.name.clone(),
            industry,
            cost,
            financing,
            extension,
            compare: self.compare,
        })
    }
}

fn array<const N: usize>(v: &[f64], field: &str) -> std::result::Result<[f64; N], ResolveError> {
    v.try_into().map_err(|_| {
        invalid(format!(
            "market.{field} must have {N} entries, one per number of innovating rivals"
        ))
    })
}

fn duopoly(spec: &MarketSpec) -> std::result::Result<Industry, ResolveError> {
    let from_market = |m: Market| Industry::Duopoly {
        quad: m.quad,
        monopoly: Some(m.monopoly),
        cs: Some(m.cs),
    };
    Ok(match spec {
        MarketSpec::Cournot(c) => {
            let p = match (c.alpha, c.a, c.c) {
                (Some(alpha), None, None) => {
                    CournotPrimitives::from_alpha(alpha, c.b, c.innovation)
                }
                (None, Some(a), Some(cost)) => CournotPrimitives::new(a, c.b, cost, c.innovation),
                _ => {
                    return Err(invalid(
                        "cournot market needs either `alpha` or both `a` and `c`",
                    ))
                }
            }
            .map_err(market_err)?;
            from_market(cournot_market(&p).map_err(market_err)?)
        }
        MarketSpec::Bertrand(b) => {
            let p = BertrandPrimitives::new(b.b, b.c, b.innovation).map_err(market_err)?;
            from_market(bertrand_market(&p).map_err(market_err)?)
        }
        MarketSpec::Abstract(a) => {
            let q = a.quad;
            Industry::Duopoly {
                quad: ProfitQuad::new(q.pi_00, q.pi_i0, q.pi_0i, q.pi_ii),
                monopoly: a.monopoly.map(|m| MonopolyProfits::new(m.pi_0, m.pi_i)),
                cs: a
                    .cs
                    .map(|c| CsTriple::new(c.cs_00, c.cs_i0, c.cs_ii, c.cs_m0, c.cs_mi)),
            }
        }
        MarketSpec::Multi(_) => unreachable!("handled by the caller"),
    })
}

pub fn policy(allow_violations: bool) -> AssumptionPolicy {
    if allow_violations {
        AssumptionPolicy::Annotate
    } else {
        AssumptionPolicy::Enforce
    }
}

/// Looks up a dotted path (`market.alpha`) in a scenario tree.
pub fn get_path<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |node, key| node.get(key))
}

/// Sets an existing numeric leaf at a dotted path.
pub fn set_path(v: &mut Value, path: &str, x: f64) -> Result<()> {
    let mut node = v;
    for key in path.split('.') {
        node = node.get_mut(key).ok_or_else(|| {
            CliError::Invalid(format!("parameter path `{path}` does not resolve"))
        })?;
    }
    if !node.is_number() {
        return Err(CliError::Invalid(format!(
            "parameter path `{path}` does not name a number"
        )));
    }
    *node = serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| CliError::Invalid(format!("non-finite value for `{path}`")))?;
    Ok(())
}
