//! Floating-point hill climbing for large values of
//! `|Λ_W| / (‖F₁‖₂ ‖F₂‖₄ ‖F₃‖₄)`, with every reported optimum re-verified
//! in exact arithmetic.
//!
//! Starting values are dyadic rationals and every move adds `±2^{-j}`, so
//! the climbed grids are exactly representable and convert to rationals
//! without rounding.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellman::lambda_w_tiles;
use crate::dyadic::DyadicPoint;
use crate::error::{Error, Result};
use crate::form_direct::eval_kernel;
use crate::io::FunctionFile;
use crate::scalar::{self, ExactScalar};
use crate::stepfun::StepFun2D;
use crate::triple::Triple;
use crate::verify::random::{random_stepfun_with, rng_for, ValuePool};
use crate::verify::suite::{bound_sides, BOUND_CONSTANT};

/// Largest resolution the search accepts.
pub const SEARCH_MAX_RESOLUTION: u32 = 5;

/// Number of halvings in the step schedule.
const STEP_LEVELS: u64 = 8;

/// Relative tolerance for the homogeneity comparison of float ratios.
pub const HOMOGENEITY_RTOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(rename = "M")]
    pub resolution: u32,
    pub iterations: u64,
    pub restarts: u64,
    pub seed: u64,
    pub value_pool: ValuePool,
}

impl SearchConfig {
    pub fn new(resolution: u32, iterations: u64, restarts: u64, seed: u64) -> Self {
        Self {
            resolution,
            iterations,
            restarts,
            seed,
            value_pool: ValuePool::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution > SEARCH_MAX_RESOLUTION {
            return Err(Error::Config(format!(
                "search is capped at M = {SEARCH_MAX_RESOLUTION}, got {}",
                self.resolution
            )));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.value_pool.numer_min == 0 && self.value_pool.numer_max == 0 {
            return Err(Error::Config("value pool {0} never yields a nonzero start".into()));
        }
        self.value_pool.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartOutcome {
    pub restart: u64,
    pub ratio: f64,
    pub accepted_moves: u64,
    pub lambda_exact: String,
    /// `Λ⁴ ≤ 7⁴ (‖F₁‖₂²)² ‖F₂‖₄⁴ ‖F₃‖₄⁴` in exact arithmetic.
    pub exact_recheck: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub ratio: f64,
    pub ratio_scaled: f64,
    pub ratio_matches: bool,
    /// Both sides of the exact fourth-power bound grow by exactly `3⁴`.
    pub margin_scaled: bool,
}

impl Homogeneity {
    pub fn holds(&self) -> bool {
        self.ratio_matches && self.margin_scaled
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub best_ratio: f64,
    pub best_restart: u64,
    pub best_input: FunctionFile,
    pub exact_lambda: String,
    /// Every restart's optimum passed the exact recheck.
    pub exact_recheck: bool,
    pub homogeneity: Homogeneity,
    pub restarts: Vec<RestartOutcome>,
}

impl SearchResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("search result serialises")
    }
}

/// Float evaluator for one resolution: the kernel table is computed once.
struct FloatForm {
    m: u32,
    side: usize,
    kernel: Vec<f64>,
}

impl FloatForm {
    fn new(m: u32) -> Result<Self> {
        let side = 1usize << m;
        let mut kernel = vec![0.0; side * side];
        if m > 0 {
            for s in 0..side {
                for t in 0..side {
                    let k = eval_kernel(DyadicPoint::new(m, s as u64)?, DyadicPoint::new(m, t as u64)?, m - 1);
                    kernel[s * side + t] = scalar::to_f64(&k);
                }
            }
        }
        Ok(Self { m, side, kernel })
    }

    fn lambda(&self, f: &[Vec<f64>; 3]) -> f64 {
        if self.m == 0 {
            return 0.0;
        }
        let side = self.side;
        let mut total = 0.0;
        for s in 0..side {
            for t in 0..side {
                let w = self.kernel[s * side + t];
                if w == 0.0 {
                    continue;
                }
                let mut inner = 0.0;
                for y in 0..side {
                    let yt = y ^ t;
                    let row1 = &f[0][yt * side..(yt + 1) * side];
                    let row2 = &f[1][y * side..(y + 1) * side];
                    let row3 = &f[2][y * side..(y + 1) * side];
                    for x in 0..side {
                        inner += row1[x ^ s] * row2[x ^ t] * row3[x];
                    }
                }
                total += w * inner;
            }
        }
        total / (side as f64).powi(4)
    }

    fn ratio(&self, f: &[Vec<f64>; 3]) -> Option<f64> {
        let cells = (self.side * self.side) as f64;
        let l2 = (f[0].iter().map(|v| v * v).sum::<f64>() / cells).sqrt();
        let l4 = |g: &[f64]| (g.iter().map(|v| v.powi(4)).sum::<f64>() / cells).powf(0.25);
        let denom = l2 * l4(&f[1]) * l4(&f[2]);
        (denom > 0.0).then(|| self.lambda(f).abs() / denom)
    }
}

fn to_floats(f: &StepFun2D) -> Vec<f64> {
    f.cells().iter().map(scalar::to_f64).collect()
}

fn to_triple(m: u32, f: &[Vec<f64>; 3]) -> Triple {
    let grid = |g: &[f64]| {
        let cells = g.iter().map(|&v| scalar::from_f64(v).expect("finite dyadic value")).collect();
        StepFun2D::new(m, cells).expect("square grid")
    };
    Triple::new(grid(&f[0]), grid(&f[1]), grid(&f[2])).expect("equal resolutions")
}

struct Climb {
    grids: [Vec<f64>; 3],
    ratio: f64,
    accepted: u64,
}

fn climb(form: &FloatForm, cfg: &SearchConfig, restart: u64) -> Climb {
    let mut rng = rng_for(cfg.seed, restart);
    let m = cfg.resolution;
    // Resample until every function is nonzero, so the ratio is defined.
    let (mut grids, mut ratio) = loop {
        let g = [
            to_floats(&random_stepfun_with(&mut rng, m, &cfg.value_pool)),
            to_floats(&random_stepfun_with(&mut rng, m, &cfg.value_pool)),
            to_floats(&random_stepfun_with(&mut rng, m, &cfg.value_pool)),
        ];
        if let Some(r) = form.ratio(&g) {
            break (g, r);
        }
    };
    let cells = form.side * form.side;
    let mut accepted = 0;
    for it in 0..cfg.iterations {
        let step = 0.5f64.powi((STEP_LEVELS * it / cfg.iterations) as i32);
        let slot = rng.random_range(0..3);
        let cell = rng.random_range(0..cells);
        let delta = if rng.random_bool(0.5) { step } else { -step };
        let old = grids[slot][cell];
        grids[slot][cell] = old + delta;
        match form.ratio(&grids) {
            Some(r) if r > ratio => {
                ratio = r;
                accepted += 1;
            }
            _ => grids[slot][cell] = old,
        }
    }
    Climb { grids, ratio, accepted }
}

fn homogeneity(form: &FloatForm, grids: &[Vec<f64>; 3], triple: &Triple, lambda: &ExactScalar) -> Result<Homogeneity> {
    let ratio = form.ratio(grids).unwrap_or(0.0);
    let mut scaled = grids.clone();
    scaled[0].iter_mut().for_each(|v| *v *= 3.0);
    let ratio_scaled = form.ratio(&scaled).unwrap_or(0.0);
    let ratio_matches = (ratio - ratio_scaled).abs() <= HOMOGENEITY_RTOL * ratio.abs().max(f64::MIN_POSITIVE);

    let three = scalar::int(3);
    let scaled_triple = triple.replace(0, triple.f1().scaled(&three))?;
    let scaled_lambda = lambda_w_tiles(&scaled_triple)?;
    let (lhs, rhs) = bound_sides(triple, lambda);
    let (lhs3, rhs3) = bound_sides(&scaled_triple, &scaled_lambda);
    let factor = scalar::int(81);
    Ok(Homogeneity {
        ratio,
        ratio_scaled,
        ratio_matches,
        margin_scaled: lhs3 == &lhs * &factor && rhs3 == &rhs * &factor,
    })
}

/// Hill climbing with `cfg.restarts` independent restarts, each seeded by
/// `(cfg.seed, restart)`. Deterministic for a fixed config.
pub fn search_extremal(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let form = FloatForm::new(cfg.resolution)?;
    let climbs: Vec<Climb> = (0..cfg.restarts).into_par_iter().map(|r| climb(&form, cfg, r)).collect();

    let mut restarts = Vec::with_capacity(climbs.len());
    let mut exact = Vec::with_capacity(climbs.len());
    for (r, c) in climbs.iter().enumerate() {
        let triple = to_triple(cfg.resolution, &c.grids);
        let lambda = lambda_w_tiles(&triple)?;
        let (lhs, rhs) = bound_sides(&triple, &lambda);
        restarts.push(RestartOutcome {
            restart: r as u64,
            ratio: c.ratio,
            accepted_moves: c.accepted,
            lambda_exact: scalar::render(&lambda),
            exact_recheck: lhs <= rhs,
        });
        exact.push((triple, lambda));
    }

    // Ties go to the lowest restart index.
    let best = (0..climbs.len()).fold(0, |b, i| if climbs[i].ratio > climbs[b].ratio { i } else { b });
    let (triple, lambda) = &exact[best];
    let homogeneity = homogeneity(&form, &climbs[best].grids, triple, lambda)?;

    Ok(SearchResult {
        config: cfg.clone(),
        best_ratio: climbs[best].ratio,
        best_restart: best as u64,
        best_input: FunctionFile::from_triple(triple),
        exact_lambda: scalar::render(lambda),
        exact_recheck: restarts.iter().all(|r| r.exact_recheck),
        homogeneity,
        restarts,
    })
}

/// `|Λ| / (‖F₁‖₂ ‖F₂‖₄ ‖F₃‖₄)` from exact data, rounded once at the end.
pub fn exact_ratio_approx(triple: &Triple, lambda: &ExactScalar) -> f64 {
    let (lam4, rhs) = bound_sides(triple, lambda);
    if rhs.is_zero() {
        return 0.0;
    }
    let c4 = (BOUND_CONSTANT as f64).powi(4);
    (scalar::to_f64(&lam4) / scalar::to_f64(&rhs) * c4).powf(0.25)
}
