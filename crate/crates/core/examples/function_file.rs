//! Writes a function file, reads it back, and evaluates it.

use walshform::scalar;
use walshform::{lambda_w_tiles, FunctionFile, StepFun2D, Triple};

fn main() -> walshform::Result<()> {
    let f1 = StepFun2D::from_fn(1, |x, y| scalar::int(i64::from(x == 0 && y == 0)));
    let f2 = StepFun2D::from_fn(1, |x, y| scalar::ratio(1 + x as i64, 1 + y as i64));
    let f3 = StepFun2D::constant(1, scalar::ratio(-3, 4));
    let t = Triple::new(f1, f2, f3)?;

    let text = FunctionFile::from_triple(&t).to_json();
    println!("{text}");
    let back = FunctionFile::from_json(&text)?.to_triple()?;
    println!("round trip exact: {}", back == t);
    println!("Λ = {}", scalar::render(&lambda_w_tiles(&back)?));
    Ok(())
}
