#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rjv_core::{
    cost_mass, solve_value_cutoff, validate_regularity, CostFunction, CsTriple, FinancingEnv,
    ProfitQuad,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio() -> CostFunction {
    CostFunction::ratio(1.0).unwrap()
}

pub fn s1() -> ProfitQuad {
    ProfitQuad::new(1.0 / 9.0, 4.0 / 9.0, 0.25 / 9.0, 0.25)
}

/// Regular quad built from non-negative increments:
/// `pi_0I = u`, `pi_00 = u + a`, `pi_II = pi_00 + b`, `pi_I0 = pi_II + a + c`.
pub fn quad_from(u: f64, a: f64, b: f64, c: f64) -> ProfitQuad {
    let p00 = u + a;
    let pii = p00 + b;
    ProfitQuad::new(p00, pii + a + c, u, pii)
}

/// Random quad passing every regularity check, with a strictly positive
/// escape value.
pub fn random_quad<R: Rng>(r: &mut R) -> ProfitQuad {
    loop {
        let q = quad_from(
            r.gen_range(0.0..0.3),
            r.gen_range(0.0..0.2),
            r.gen_range(0.0..0.2),
            r.gen_range(0.001..0.3),
        );
        if validate_regularity(&q).unwrap().is_empty() && q.catch_up_value() > 1e-4 {
            return q;
        }
    }
}

pub fn random_non_soft<R: Rng>(r: &mut R) -> ProfitQuad {
    loop {
        let q = random_quad(r);
        if q.pi_i0 - q.pi_ii >= q.pi_ii - q.pi_00 {
            return q;
        }
    }
}

/// Financing with the budget strictly inside the duplicated-project mass.
pub fn random_financing<R: Rng>(r: &mut R, q: &ProfitQuad, cf: &CostFunction) -> FinancingEnv {
    let rate = r.gen_range(0.0..0.5);
    let theta2 = solve_value_cutoff(cf, q.catch_up_value(), rate).unwrap();
    let cap = cost_mass(cf, theta2).unwrap();
    FinancingEnv::new(cap * r.gen_range(0.01..0.99), rate).unwrap()
}

/// Surplus figures with joint innovation best for consumers and duopoly
/// at least as good as monopoly.
pub fn random_cs<R: Rng>(r: &mut R) -> CsTriple {
    let cs_ii = r.gen_range(0.5..1.0);
    let cs_00 = cs_ii * r.gen_range(0.1..0.99);
    let cs_i0 = cs_ii * r.gen_range(0.1..0.99);
    CsTriple::new(
        cs_00,
        cs_i0,
        cs_ii,
        cs_00 * r.gen_range(0.2..1.0),
        cs_ii * r.gen_range(0.2..1.0),
    )
}

/// `θ` solving `k·θ/(1 − θ²) = w`, the stable root of `wθ² + kθ − w = 0`.
pub fn ratio_cutoff(k: f64, w: f64) -> f64 {
    if w <= 0.0 {
        0.0
    } else {
        2.0 * w / (k + (k * k + 4.0 * w * w).sqrt())
    }
}

/// `∫₀^θ k·t/(1 − t²) dt`.
pub fn ratio_mass(k: f64, theta: f64) -> f64 {
    -0.5 * k * (-theta * theta).ln_1p()
}
