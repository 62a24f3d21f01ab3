//! Two-parameter region sweeps.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use rjv_core::{
    compare_merger_vs_competition, compare_rjv_vs_competition, licensing_compare,
    spillover_fc_compare, AssumptionCode, AssumptionPolicy, ComparisonReport, Verdict,
};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::report::round12;
use crate::scenario::{get_path, parse_value, set_path, Ext, Industry, ResolveError};

/// One axis of a sweep: `path:min:max:steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub path: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    /// Grid value at index `i`, exact at both ends.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.max;
        }
        let t = i as f64 / (self.steps - 1) as f64;
        round12(self.min + t * (self.max - self.min))
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| CliError::Invalid(format!("axis `{s}`: {why}"));
        let mut parts = s.rsplitn(4, ':');
        let steps = parts
            .next()
            .ok_or_else(|| bad("expected path:min:max:steps"))?;
        let max = parts
            .next()
            .ok_or_else(|| bad("expected path:min:max:steps"))?;
        let min = parts
            .next()
            .ok_or_else(|| bad("expected path:min:max:steps"))?;
        let path = parts
            .next()
            .ok_or_else(|| bad("expected path:min:max:steps"))?;
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(&format!("`{t}` is not a finite number")))
        };
        let axis = Axis {
            path: path.trim().to_string(),
            min: num(min)?,
            max: num(max)?,
            steps: steps
                .trim()
                .parse()
                .map_err(|_| bad(&format!("`{steps}` is not a step count")))?,
        };
        if axis.path.is_empty() {
            return Err(bad("empty parameter path"));
        }
        if axis.steps < 2 {
            return Err(bad("at least two steps are needed"));
        }
        if axis.min >= axis.max {
            return Err(bad("min must be below max"));
        }
        Ok(axis)
    }
}

/// Region classes in palette order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    ExcludedDrastic,
    ExcludedBudget,
    RjvUpProfitable,
    RjvUpUnprofitable,
    RjvDownProfitable,
    RjvDownUnprofitable,
    Equal,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 7] = [
        RegionLabel::ExcludedDrastic,
        RegionLabel::ExcludedBudget,
        RegionLabel::RjvUpProfitable,
        RegionLabel::RjvUpUnprofitable,
        RegionLabel::RjvDownProfitable,
        RegionLabel::RjvDownUnprofitable,
        RegionLabel::Equal,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::ExcludedDrastic => "EXCLUDED_DRASTIC",
            RegionLabel::ExcludedBudget => "EXCLUDED_BUDGET",
            RegionLabel::RjvUpProfitable => "RJV_UP_PROFITABLE",
            RegionLabel::RjvUpUnprofitable => "RJV_UP_UNPROFITABLE",
            RegionLabel::RjvDownProfitable => "RJV_DOWN_PROFITABLE",
            RegionLabel::RjvDownUnprofitable => "RJV_DOWN_UNPROFITABLE",
            RegionLabel::Equal => "EQUAL",
        }
    }

    pub fn index(&self) -> usize {
        *self as usize
    }

    /// Label of a compared point from its (rounded) report fields.
    pub fn classify(innov_comp: f64, innov_alt: f64, net_profit_delta: f64) -> Self {
        let profitable = net_profit_delta > 0.0;
        match Verdict::from_delta(innov_alt - innov_comp) {
            Verdict::Higher if profitable => RegionLabel::RjvUpProfitable,
            Verdict::Higher => RegionLabel::RjvUpUnprofitable,
            Verdict::Lower if profitable => RegionLabel::RjvDownProfitable,
            Verdict::Lower => RegionLabel::RjvDownUnprofitable,
            Verdict::Equal => RegionLabel::Equal,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        RegionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| CliError::Invalid(format!("unknown region label `{s}`")))
    }
}

/// Which alternative the regions compare against competition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    #[default]
    Rjv,
    Merger,
}

/// Comparison fields of a point that was not excluded. All values rounded.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFields {
    pub regime: &'static str,
    pub theta1: f64,
    pub theta2: f64,
    pub theta_star: f64,
    pub innov_comp: f64,
    pub innov_rjv: f64,
    pub spend_comp: f64,
    pub spend_rjv: f64,
    pub net_profit_delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    pub fields: Option<PointFields>,
    pub label: RegionLabel,
}

pub const CSV_HEADER: [&str; 12] = [
    "x",
    "y",
    "regime",
    "theta1",
    "theta2",
    "theta_star",
    "innov_comp",
    "innov_rjv",
    "spend_comp",
    "spend_rjv",
    "net_profit_delta",
    "region_label",
];

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub x: Axis,
    pub y: Axis,
    pub mode: LabelMode,
    pub policy: AssumptionPolicy,
}

/// Evaluates the grid, x-major then y. `workers = None` uses the available
/// parallelism; the output does not depend on it.
pub fn run_sweep(
    source: &Path,
    base: &Value,
    spec: &SweepSpec,
    workers: Option<usize>,
) -> Result<Vec<SweepRow>> {
    for axis in [&spec.x, &spec.y] {
        match get_path(base, &axis.path) {
            Some(v) if v.is_number() => {}
            Some(_) => {
                return Err(CliError::Invalid(format!(
                    "parameter path `{}` does not name a number",
                    axis.path
                )))
            }
            None => {
                return Err(CliError::Invalid(format!(
                    "parameter path `{}` does not resolve",
                    axis.path
                )))
            }
        }
    }
    if spec.x.path == spec.y.path {
        return Err(CliError::Invalid(
            "x and y must sweep different parameters".into(),
        ));
    }
    // Reject structural problems once, before the grid.
    let file = parse_value(source, base.clone())?;
    if file.firms != 2 {
        return Err(CliError::Invalid("sweeps need a two-firm scenario".into()));
    }
    if spec.mode == LabelMode::Merger && file.market_is_abstract_without_monopoly() {
        return Err(CliError::Invalid(
            "merger regions need monopoly profits (market.monopoly)".into(),
        ));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot start workers: {e}")))?;
    let columns: Vec<Result<Vec<SweepRow>>> = pool.install(|| {
        (0..spec.x.steps)
            .into_par_iter()
            .map(|i| {
                (0..spec.y.steps)
                    .map(|j| evaluate(source, base, spec, spec.x.value(i), spec.y.value(j)))
                    .collect()
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(spec.x.steps * spec.y.steps);
    for c in columns {
        rows.extend(c?);
    }
    Ok(rows)
}

fn evaluate(source: &Path, base: &Value, spec: &SweepSpec, x: f64, y: f64) -> Result<SweepRow> {
    let mut v = base.clone();
    set_path(&mut v, &spec.x.path, x)?;
    set_path(&mut v, &spec.y.path, y)?;
    let excluded = |label| SweepRow {
        x,
        y,
        fields: None,
        label,
    };
    let s = match parse_value(source, v)?.resolve() {
        Ok(s) => s,
        Err(ResolveError::Market(_)) => return Ok(excluded(RegionLabel::ExcludedDrastic)),
        Err(ResolveError::Other(e)) => return Err(e),
    };
    let Industry::Duopoly { quad, monopoly, .. } = s.industry else {
        return Err(CliError::Invalid("sweeps need a two-firm scenario".into()));
    };
    let (cf, fin) = (&s.cost, &s.financing);
    // Compute under Annotate so the budget bound can be read off the report;
    // any other failure is then subject to the requested policy.
    let annotate = AssumptionPolicy::Annotate;
    let report: ComparisonReport = match spec.mode {
        LabelMode::Rjv => match s.extension {
            Ext::None => compare_rjv_vs_competition(&quad, None, cf, fin, annotate)?,
            Ext::Spillover(sigma) => spillover_fc_compare(&quad, sigma, cf, fin, annotate)?,
            Ext::Licensing(lt) => licensing_compare(&quad, lt, cf, fin, annotate)?,
        },
        LabelMode::Merger => {
            let mono = monopoly
                .ok_or_else(|| CliError::Invalid("merger regions need monopoly profits".into()))?;
            compare_merger_vs_competition(&quad, &mono, None, cf, fin, annotate)?
        }
    };
    if report
        .violations
        .iter()
        .any(|v| v.code == AssumptionCode::BudgetBinding)
    {
        return Ok(excluded(RegionLabel::ExcludedBudget));
    }
    if let (AssumptionPolicy::Enforce, Some(v)) = (spec.policy, report.violations.first()) {
        return Err(CliError::Assumption(*v));
    }
    let fields = PointFields {
        regime: report.regime.as_str(),
        theta1: round12(report.competition.theta1),
        theta2: round12(report.competition.theta2),
        theta_star: round12(report.venture.theta_star),
        innov_comp: round12(report.competition.outcome.innovation_prob),
        innov_rjv: round12(report.venture.outcome.innovation_prob),
        spend_comp: round12(report.competition.outcome.gamma),
        spend_rjv: round12(report.venture.outcome.gamma),
        net_profit_delta: round12(report.net_profit_delta),
    };
    let label = RegionLabel::classify(fields.innov_comp, fields.innov_rjv, fields.net_profit_delta);
    Ok(SweepRow {
        x,
        y,
        fields: Some(fields),
        label,
    })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let mut rec: Vec<String> = vec![r.x.to_string(), r.y.to_string()];
        match &r.fields {
            Some(f) => {
                rec.push(f.regime.to_string());
                rec.extend(
                    [
                        f.theta1,
                        f.theta2,
                        f.theta_star,
                        f.innov_comp,
                        f.innov_rjv,
                        f.spend_comp,
                        f.spend_rjv,
                        f.net_profit_delta,
                    ]
                    .iter()
                    .map(f64::to_string),
                );
            }
            None => rec.extend(std::iter::repeat_n(String::new(), 9)),
        }
        rec.push(r.label.as_str().to_string());
        w.write_record(&rec)?;
    }
    w.flush()
        .map_err(|e| CliError::Invalid(format!("writing csv: {e}")))?;
    Ok(())
}
