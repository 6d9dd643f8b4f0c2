//! Λ_W on random inputs, by brute force and through the phase-space
//! decomposition.

use std::time::Instant;

use walshform::scalar;
use walshform::verify::{random_triple, ValuePool};
use walshform::{lambda_w_direct, lambda_w_tiles};

fn main() -> walshform::Result<()> {
    let pool = ValuePool::default();
    for m in 1..=4 {
        let t = random_triple(m, 42, 0, &pool);
        let start = Instant::now();
        let direct = lambda_w_direct(&t)?;
        let direct_time = start.elapsed();
        let start = Instant::now();
        let tiles = lambda_w_tiles(&t)?;
        let tiles_time = start.elapsed();
        println!(
            "M={m}  Λ = {} ≈ {}  (direct {direct_time:.1?}, tiles {tiles_time:.1?}, equal: {})",
            scalar::render(&tiles),
            scalar::to_decimal(&tiles),
            direct == tiles
        );
    }
    Ok(())
}
