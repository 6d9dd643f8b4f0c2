//! Brute-force evaluation of `Λ_W` straight from its defining integral.
//!
//! This is the ground truth the phase-space evaluator is compared against,
//! so it deliberately shares no code with it: the `s` and `t` integrals are
//! explicit cell sums weighted by the dyadic kernel.

use num_traits::Zero;

use crate::dyadic::{DyadicInterval, DyadicPoint};
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};
use crate::stepfun::StepFun2D;
use crate::triple::Triple;

/// Largest resolution the brute-force evaluator accepts by default.
pub const DEFAULT_ORACLE_MAX_RESOLUTION: u32 = 5;

/// `Σ_{k=0}^{k_max} 4^k 1_{[0,2^{-k})}(s) h_{[0,2^{-k})}(t)` evaluated at the
/// points `s` and `t`.
pub fn eval_kernel(s: DyadicPoint, t: DyadicPoint, k_max: u32) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for k in 0..=k_max as i32 {
        if !DyadicInterval::new(k, 0).contains(s) {
            // [0,2^{-k}) only shrinks with k.
            break;
        }
        let sign = if DyadicInterval::new(k + 1, 0).contains(t) {
            1
        } else if DyadicInterval::new(k + 1, 1).contains(t) {
            -1
        } else {
            0
        };
        if sign != 0 {
            acc += scalar::pow2(2 * k) * scalar::int(sign);
        }
    }
    acc
}

/// `Λ_W(F₁,F₂,F₃)` with the scale sum truncated at `k = M-1`.
pub fn lambda_w_direct(triple: &Triple) -> Result<ExactScalar> {
    let m = triple.resolution();
    if m == 0 {
        return Ok(ExactScalar::zero());
    }
    lambda_w_direct_truncated(triple, m - 1)
}

/// As [`lambda_w_direct`], refusing resolutions above `max_resolution`.
pub fn lambda_w_direct_capped(triple: &Triple, max_resolution: u32) -> Result<ExactScalar> {
    if triple.resolution() > max_resolution {
        return Err(Error::Config(format!(
            "direct evaluation capped at resolution {max_resolution}, input has {}",
            triple.resolution()
        )));
    }
    lambda_w_direct(triple)
}

/// The scale sum `Σ_{k=0}^{k_max}`; terms past `M-1` need a finer `(s,t)`
/// grid, so the functions are resampled at `max(M, k_max+1)`.
pub fn lambda_w_direct_truncated(triple: &Triple, k_max: u32) -> Result<ExactScalar> {
    let res = triple.resolution().max(k_max + 1);
    let f1 = triple.f1().refine(res)?;
    let f2 = triple.f2().refine(res)?;
    let f3 = triple.f3().refine(res)?;
    Ok(quadruple_sum(&f1, &f2, &f3, k_max)? * scalar::pow2(-4 * res as i32))
}

fn quadruple_sum(f1: &StepFun2D, f2: &StepFun2D, f3: &StepFun2D, k_max: u32) -> Result<ExactScalar> {
    let res = f1.resolution();
    let side = 1u64 << res;
    let mut total = ExactScalar::zero();
    for s in 0..side {
        for t in 0..side {
            let weight = eval_kernel(DyadicPoint::new(res, s)?, DyadicPoint::new(res, t)?, k_max);
            if weight.is_zero() {
                continue;
            }
            let mut inner = ExactScalar::zero();
            for y in 0..side {
                for x in 0..side {
                    let c = f3.get(x, y);
                    if c.is_zero() {
                        continue;
                    }
                    inner += f1.get(x ^ s, y ^ t) * f2.get(x ^ t, y) * c;
                }
            }
            total += weight * inner;
        }
    }
    Ok(total)
}
