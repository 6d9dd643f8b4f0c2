//! Seeded generation of random exact step functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};
use crate::stepfun::StepFun2D;
use crate::triple::Triple;

/// Distribution of random cell values: `p / 2^e` with `p` uniform in
/// `[numer_min, numer_max]` and `e` uniform in `[0, denom_exp_max]`; a
/// cell is zero outright with probability `zero_percent / 100`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuePool {
    pub numer_min: i64,
    pub numer_max: i64,
    pub denom_exp_max: u32,
    pub zero_percent: u32,
}

impl Default for ValuePool {
    fn default() -> Self {
        Self {
            numer_min: -8,
            numer_max: 8,
            denom_exp_max: 2,
            zero_percent: 20,
        }
    }
}

impl ValuePool {
    /// The pool `{0}`.
    pub fn zero() -> Self {
        Self {
            numer_min: 0,
            numer_max: 0,
            denom_exp_max: 0,
            zero_percent: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.numer_min > self.numer_max {
            return Err(Error::Config(format!(
                "empty numerator range [{}, {}]",
                self.numer_min, self.numer_max
            )));
        }
        if self.zero_percent > 100 {
            return Err(Error::Config(format!("zero_percent {} exceeds 100", self.zero_percent)));
        }
        if self.denom_exp_max > 62 {
            return Err(Error::Config(format!("denom_exp_max {} too large", self.denom_exp_max)));
        }
        Ok(())
    }

    pub fn sample(&self, rng: &mut impl Rng) -> ExactScalar {
        if rng.random_range(0..100) < self.zero_percent {
            return scalar::int(0);
        }
        let p = rng.random_range(self.numer_min..=self.numer_max);
        let e = rng.random_range(0..=self.denom_exp_max);
        scalar::int(p) * scalar::pow2(-(e as i32))
    }
}

/// Independent generator for `(seed, stream)`; trials and restarts use
/// their index as the stream.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_stepfun_with(rng: &mut impl Rng, m: u32, pool: &ValuePool) -> StepFun2D {
    StepFun2D::from_fn(m, |_, _| pool.sample(rng))
}

pub fn random_stepfun(m: u32, seed: u64, pool: &ValuePool) -> StepFun2D {
    random_stepfun_with(&mut ChaCha8Rng::seed_from_u64(seed), m, pool)
}

/// The three inputs of trial `stream` under `seed`.
pub fn random_triple(m: u32, seed: u64, stream: u64, pool: &ValuePool) -> Triple {
    let mut rng = rng_for(seed, stream);
    let f1 = random_stepfun_with(&mut rng, m, pool);
    let f2 = random_stepfun_with(&mut rng, m, pool);
    let f3 = random_stepfun_with(&mut rng, m, pool);
    Triple::new(f1, f2, f3).expect("equal resolutions")
}
