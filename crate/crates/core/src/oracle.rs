//! Brute-force check of the analytic equilibria on a discretised project
//! line: `N` equal cells, each the correct project with probability `1/N`,
//! each costing the exact cost mass over the cell.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::cost::CostFunction;
use crate::cutoffs::FinancingEnv;
use crate::error::{Error, Result};
use crate::model::ProfitQuad;

/// Largest grid solved by full enumeration of strategy profiles.
pub const MAX_EXHAUSTIVE_CELLS: usize = 14;

/// Payoff differences below this are treated as ties.
pub const PAYOFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Exhaustive,
    BestResponse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteGame {
    cells: usize,
    cell_cost: Vec<f64>,
    quad: ProfitQuad,
    fin: FinancingEnv,
}

impl DiscreteGame {
    pub fn new(
        cells: usize,
        quad: ProfitQuad,
        cf: &CostFunction,
        fin: FinancingEnv,
    ) -> Result<Self> {
        if cells == 0 {
            return Err(Error::Configuration("the grid needs at least one cell"));
        }
        quad.check_finite()?;
        let n = cells as f64;
        let cell_cost = (0..cells)
            .map(|i| {
                if i + 1 == cells {
                    f64::INFINITY
                } else {
                    cf.mass_between(i as f64 / n, (i + 1) as f64 / n)
                }
            })
            .collect();
        Ok(Self {
            cells,
            cell_cost,
            quad,
            fin,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn cell_width(&self) -> f64 {
        1.0 / self.cells as f64
    }

    pub fn cell_cost(&self) -> &[f64] {
        &self.cell_cost
    }

    pub fn quad(&self) -> &ProfitQuad {
        &self.quad
    }

    pub fn financing(&self) -> &FinancingEnv {
        &self.fin
    }

    /// Spend, net of financing, for a given outlay with budget `budget`.
    fn net_cost(&self, spend: f64, budget: f64) -> f64 {
        if spend.is_infinite() {
            f64::INFINITY
        } else {
            spend + self.fin.rate * (spend - budget).max(0.0)
        }
    }

    /// Expected payoff of a firm investing in `own` while its rival invests
    /// in `rival`.
    pub fn payoff(&self, own: &[bool], rival: &[bool]) -> f64 {
        let q = &self.quad;
        let mut value = 0.0;
        let mut spend = 0.0;
        for i in 0..self.cells {
            value += match (own[i], rival[i]) {
                (true, true) => q.pi_ii,
                (true, false) => q.pi_i0,
                (false, true) => q.pi_0i,
                (false, false) => q.pi_00,
            };
            if own[i] {
                spend += self.cell_cost[i];
            }
        }
        value / self.cells as f64 - self.net_cost(spend, self.fin.budget)
    }

    /// Largest double cut-off deviation, in cells, of a profile from the
    /// analytic cut-offs `(theta2, theta1)`.
    pub fn cutoff_deviation(&self, cutoffs: (usize, usize), analytic: (f64, f64)) -> f64 {
        let n = self.cells as f64;
        let d2 = (cutoffs.0 as f64 - analytic.0 * n).abs();
        let d1 = (cutoffs.1 as f64 - analytic.1 * n).abs();
        d2.max(d1)
    }
}

/// A firm's exact best response.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub invest: Vec<bool>,
    pub payoff: f64,
    /// Another portfolio reaches the same payoff within tolerance.
    pub tie: bool,
}

/// Cells are value-homogeneous within the two groups "rival invests" and
/// "rival does not", and costs rise with the index, so an optimal portfolio
/// takes a prefix of each group. Enumerating the prefix pairs handles the
/// borrowing kink exactly. Ties go to the smaller portfolio.
pub fn best_response(g: &DiscreteGame, rival: &[bool]) -> BestResponse {
    let q = &g.quad;
    let n = g.cells as f64;
    let mut matched = Vec::new();
    let mut open = Vec::new();
    let mut base = 0.0;
    for (i, &r) in rival.iter().enumerate() {
        if r {
            matched.push(i);
            base += q.pi_0i;
        } else {
            open.push(i);
            base += q.pi_00;
        }
    }
    base /= n;
    let v_matched = (q.pi_ii - q.pi_0i) / n;
    let v_open = (q.pi_i0 - q.pi_00) / n;
    let prefix = |idx: &[usize]| {
        let mut acc = vec![0.0; idx.len() + 1];
        for (k, &i) in idx.iter().enumerate() {
            acc[k + 1] = acc[k] + g.cell_cost[i];
        }
        acc
    };
    let cost_m = prefix(&matched);
    let cost_o = prefix(&open);
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    let mut tie = false;
    for (a, &cm) in cost_m.iter().enumerate() {
        if cm.is_infinite() {
            break;
        }
        for (b, &co) in cost_o.iter().enumerate() {
            let spend = cm + co;
            if spend.is_infinite() {
                break;
            }
            let p =
                base + a as f64 * v_matched + b as f64 * v_open - g.net_cost(spend, g.fin.budget);
            if p > best.0 + PAYOFF_TOL {
                best = (p, a, b);
                tie = false;
            } else if p >= best.0 - PAYOFF_TOL {
                tie = true;
                if a + b < best.1 + best.2 {
                    best = (p.max(best.0), a, b);
                }
            }
        }
    }
    let mut invest = vec![false; g.cells];
    for &i in &matched[..best.1] {
        invest[i] = true;
    }
    for &i in &open[..best.2] {
        invest[i] = true;
    }
    BestResponse {
        invest,
        payoff: best.0,
        tie,
    }
}

/// A pure-strategy Nash profile.
#[derive(Debug, Clone, PartialEq)]
pub struct NashProfile {
    pub firms: [Vec<bool>; 2],
    pub payoffs: [f64; 2],
    pub innovation_prob: f64,
    /// `(k2, k1)` when both firms fund cells `< k2`, exactly one funds
    /// `k2..k1` and nobody funds the rest.
    pub double_cutoff: Option<(usize, usize)>,
}

fn double_cutoff(a: &[bool], b: &[bool]) -> Option<(usize, usize)> {
    let n = a.len();
    let mut i = 0;
    while i < n && a[i] && b[i] {
        i += 1;
    }
    let k2 = i;
    while i < n && (a[i] ^ b[i]) {
        i += 1;
    }
    let k1 = i;
    if (k1..n).all(|j| !a[j] && !b[j]) {
        Some((k2, k1))
    } else {
        None
    }
}

fn profile(g: &DiscreteGame, a: Vec<bool>, b: Vec<bool>) -> NashProfile {
    let payoffs = [g.payoff(&a, &b), g.payoff(&b, &a)];
    let covered = a.iter().zip(&b).filter(|(x, y)| **x || **y).count();
    let double_cutoff = double_cutoff(&a, &b);
    NashProfile {
        innovation_prob: covered as f64 / g.cells as f64,
        firms: [a, b],
        payoffs,
        double_cutoff,
    }
}

fn unpack(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Best-response payoff against every rival strategy, indexed by bit mask,
/// plus per-mask spend for the enumeration.
#[derive(Debug, Clone)]
pub struct ExhaustiveTable {
    best: Vec<f64>,
    spend: Vec<f64>,
    ties: usize,
}

impl ExhaustiveTable {
    pub fn build(g: &DiscreteGame) -> Result<Self> {
        let n = g.cells;
        if n > MAX_EXHAUSTIVE_CELLS {
            return Err(Error::Configuration(
                "exhaustive mode supports at most 14 cells",
            ));
        }
        let size = 1usize << n;
        let mut spend = vec![0.0; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            spend[m] = spend[m & (m - 1)] + g.cell_cost[low];
        }
        let mut ties = 0;
        let best = (0..size as u32)
            .map(|m| {
                let br = best_response(g, &unpack(m, n));
                ties += usize::from(br.tie);
                br.payoff
            })
            .collect();
        Ok(Self { best, spend, ties })
    }

    /// Number of rival strategies against which the best response is not
    /// unique.
    pub fn ties(&self) -> usize {
        self.ties
    }

    pub fn profiles(&self) -> usize {
        self.best.len()
    }
}

fn mask_payoff(g: &DiscreteGame, t: &ExhaustiveTable, own: u32, rival: u32) -> f64 {
    let spend = t.spend[own as usize];
    if spend.is_infinite() {
        return f64::NEG_INFINITY;
    }
    let q = &g.quad;
    let n = g.cells as u32;
    let both = (own & rival).count_ones();
    let mine = own.count_ones() - both;
    let theirs = rival.count_ones() - both;
    let none = n - both - mine - theirs;
    let value = f64::from(both) * q.pi_ii
        + f64::from(mine) * q.pi_i0
        + f64::from(theirs) * q.pi_0i
        + f64::from(none) * q.pi_00;
    value / f64::from(n) - g.net_cost(spend, g.fin.budget)
}

/// All Nash profiles whose first firm's mask lies in `first`. Splitting the
/// mask range lets callers enumerate in parallel; concatenating chunks in
/// range order reproduces the sequential result.
pub fn exhaustive_scan(
    g: &DiscreteGame,
    t: &ExhaustiveTable,
    first: Range<u32>,
) -> Vec<NashProfile> {
    let n = g.cells;
    let size = t.best.len() as u32;
    let mut out = Vec::new();
    for a in first {
        if t.spend[a as usize].is_infinite() {
            continue;
        }
        let br_a = t.best[a as usize];
        for b in 0..size {
            if mask_payoff(g, t, a, b) < t.best[b as usize] - PAYOFF_TOL {
                continue;
            }
            if mask_payoff(g, t, b, a) < br_a - PAYOFF_TOL {
                continue;
            }
            out.push(profile(g, unpack(a, n), unpack(b, n)));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub mode: SolveMode,
    pub cells: usize,
    /// Nash profiles (exhaustive) or best-response fixed points, one per
    /// seed (best-response mode, all-zero seed first).
    pub equilibria: Vec<NashProfile>,
    /// Best-response dynamics that failed to settle (best-response mode).
    pub unconverged_seeds: usize,
    pub tie_count: usize,
    pub all_double_cutoff: bool,
}

impl OracleReport {
    fn finish(
        mode: SolveMode,
        cells: usize,
        equilibria: Vec<NashProfile>,
        unconverged_seeds: usize,
        tie_count: usize,
    ) -> Self {
        let all_double_cutoff = equilibria.iter().all(|e| e.double_cutoff.is_some());
        Self {
            mode,
            cells,
            equilibria,
            unconverged_seeds,
            tie_count,
            all_double_cutoff,
        }
    }

    /// Distinct innovation probabilities across the reported profiles.
    pub fn innovation_probs(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.equilibria.iter().map(|e| e.innovation_prob).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

pub(crate) const MAX_ROUNDS_PER_CELL: usize = 4;

/// Alternating best responses from one seed profile.
pub fn best_response_dynamics(g: &DiscreteGame, seed: bool) -> (Option<NashProfile>, usize) {
    let mut a = vec![seed; g.cells];
    let mut b = vec![seed; g.cells];
    let mut ties = 0;
    for _ in 0..MAX_ROUNDS_PER_CELL * g.cells + 16 {
        let ra = best_response(g, &b);
        ties += usize::from(ra.tie);
        let moved_a = ra.invest != a;
        a = ra.invest;
        let rb = best_response(g, &a);
        ties += usize::from(rb.tie);
        let moved_b = rb.invest != b;
        b = rb.invest;
        if !moved_a && !moved_b {
            return (Some(profile(g, a, b)), ties);
        }
    }
    (None, ties)
}

pub fn solve_discrete_game(g: &DiscreteGame, mode: SolveMode) -> Result<OracleReport> {
    match mode {
        SolveMode::Exhaustive => {
            let t = ExhaustiveTable::build(g)?;
            let eq = exhaustive_scan(g, &t, 0..t.profiles() as u32);
            Ok(OracleReport::finish(mode, g.cells, eq, 0, t.ties()))
        }
        SolveMode::BestResponse => {
            let mut eq = Vec::new();
            let mut unconverged = 0;
            let mut ties = 0;
            for seed in [false, true] {
                let (p, t) = best_response_dynamics(g, seed);
                ties += t;
                match p {
                    Some(p) => eq.push(p),
                    None => unconverged += 1,
                }
            }
            Ok(OracleReport::finish(mode, g.cells, eq, unconverged, ties))
        }
    }
}

/// Assembles an exhaustive report from parallel scan chunks.
pub fn exhaustive_report(
    g: &DiscreteGame,
    t: &ExhaustiveTable,
    equilibria: Vec<NashProfile>,
) -> OracleReport {
    OracleReport::finish(SolveMode::Exhaustive, g.cells, equilibria, 0, t.ties())
}

/// Discrete optimum of a venture with pooled budget `2B`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteVenture {
    pub prefix: usize,
    pub invest: Vec<bool>,
    pub payoff: f64,
}

/// With a single decision maker every cell has the same value, so the
/// optimum is a prefix; all prefixes are evaluated with the kinked cost.
pub fn discrete_rjv_optimum(g: &DiscreteGame) -> DiscreteVenture {
    let q = &g.quad;
    let n = g.cells as f64;
    let per_cell = 2.0 * (q.pi_ii - q.pi_00) / n;
    let pooled = 2.0 * g.fin.budget;
    let mut spend = 0.0;
    let mut best = (2.0 * q.pi_00 - g.net_cost(0.0, pooled), 0usize);
    for k in 1..=g.cells {
        spend += g.cell_cost[k - 1];
        if spend.is_infinite() {
            break;
        }
        let p = 2.0 * q.pi_00 + k as f64 * per_cell - g.net_cost(spend, pooled);
        if p > best.0 + PAYOFF_TOL {
            best = (p, k);
        }
    }
    let mut invest = vec![false; g.cells];
    invest[..best.1].iter_mut().for_each(|x| *x = true);
    DiscreteVenture {
        prefix: best.1,
        invest,
        payoff: best.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoffs::value_cutoff;

    fn s1() -> ProfitQuad {
        ProfitQuad::new(1.0 / 9.0, 4.0 / 9.0, 0.25 / 9.0, 0.25)
    }

    fn game(n: usize, q: ProfitQuad, budget: f64) -> DiscreteGame {
        let cf = CostFunction::ratio(1.0).unwrap();
        DiscreteGame::new(n, q, &cf, FinancingEnv::new(budget, 0.1).unwrap()).unwrap()
    }

    #[test]
    fn cells_partition_cost() {
        let g = game(8, s1(), 0.01);
        let cf = CostFunction::ratio(1.0).unwrap();
        let sum: f64 = g.cell_cost()[..3].iter().sum();
        assert!((sum - cf.mass(3.0 / 8.0)).abs() < 1e-15);
        assert!(g.cell_cost().windows(2).all(|w| w[1] > w[0]));
        assert!(DiscreteGame::new(0, s1(), &cf, FinancingEnv::new(0.0, 0.1).unwrap()).is_err());
    }

    #[test]
    fn s1_exhaustive_eight_cells() {
        let g = game(8, s1(), 0.01);
        let r = solve_discrete_game(&g, SolveMode::Exhaustive).unwrap();
        assert!(!r.equilibria.is_empty());
        assert!(r.all_double_cutoff);
        assert_eq!(r.innovation_probs(), [0.25]);
        // Cell 1 is cheap enough for both firms at this resolution.
        for e in &r.equilibria {
            assert_eq!(e.double_cutoff, Some((2, 2)));
        }
        let cf = CostFunction::ratio(1.0).unwrap();
        let t1 = value_cutoff(&cf, s1().escape_value(), 0.1);
        let t2 = value_cutoff(&cf, s1().catch_up_value(), 0.1);
        for e in &r.equilibria {
            assert!(g.cutoff_deviation(e.double_cutoff.unwrap(), (t2, t1)) <= 1.0);
        }
    }

    #[test]
    fn worthless_innovation_means_no_investment() {
        let q = ProfitQuad::new(0.1, 0.1 + 1e-6, 0.1, 0.1);
        let g = game(2, q, 0.0);
        let r = solve_discrete_game(&g, SolveMode::Exhaustive).unwrap();
        assert_eq!(r.equilibria.len(), 1);
        assert_eq!(r.equilibria[0].innovation_prob, 0.0);
    }

    #[test]
    fn exhaustive_bound_enforced() {
        let g = game(15, s1(), 0.01);
        assert!(solve_discrete_game(&g, SolveMode::Exhaustive).is_err());
    }

    #[test]
    fn best_response_matches_brute_force() {
        let g = game(6, s1(), 0.002);
        for rival in 0..64u32 {
            let r = unpack(rival, 6);
            let br = best_response(&g, &r);
            let brute = (0..64u32)
                .map(|m| g.payoff(&unpack(m, 6), &r))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((br.payoff - brute).abs() < 1e-14);
            assert!((g.payoff(&br.invest, &r) - br.payoff).abs() < 1e-14);
        }
    }

    #[test]
    fn best_response_mode_large_grid() {
        let g = game(200, s1(), 0.01);
        let r = solve_discrete_game(&g, SolveMode::BestResponse).unwrap();
        assert_eq!(r.unconverged_seeds, 0);
        assert!(r.all_double_cutoff);
        for e in &r.equilibria {
            let d = g.cutoff_deviation(e.double_cutoff.unwrap(), (0.194387, 0.279378));
            assert!(d <= 1.0, "deviation {d}");
        }
    }

    #[test]
    fn rjv_optimum_near_analytic() {
        let g = game(8, s1(), 0.01);
        let v = discrete_rjv_optimum(&g);
        assert!((v.prefix as f64 - 0.238197 * 8.0).abs() <= 1.0);
        let zero = game(8, ProfitQuad::new(0.2, 0.5, 0.1, 0.2), 0.01);
        assert_eq!(discrete_rjv_optimum(&zero).prefix, 0);
    }
}
