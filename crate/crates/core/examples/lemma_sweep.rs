//! Walks every multitile of a random input and reports the tightest
//! margins in □B₋ ≤ 𝒜 ≤ □B₊.

use walshform::scalar::{self, ExactScalar};
use walshform::verify::{random_triple, ValuePool};
use walshform::{Multitile, PhaseSpace};

fn main() -> walshform::Result<()> {
    let m = std::env::args().nth(1).map_or(4, |s| s.parse().expect("resolution"));
    let t = random_triple(m, 7, 0, &ValuePool::default());

    let mut lower: Option<(ExactScalar, Multitile)> = None;
    let mut upper: Option<(ExactScalar, Multitile)> = None;
    let summary = PhaseSpace::new(&t).sweep(|p, terms| {
        let below = &terms.a - terms.box_minus();
        let above = terms.box_plus() - &terms.a;
        if lower.as_ref().is_none_or(|(v, _)| below < *v) {
            lower = Some((below, *p));
        }
        if upper.as_ref().is_none_or(|(v, _)| above < *v) {
            upper = Some((above, *p));
        }
    })?;

    println!("M={m}: {} multitiles, Λ = {}", summary.multitiles, scalar::to_decimal(&summary.lambda));
    if let (Some((lo, p)), Some((hi, q))) = (lower, upper) {
        println!("min 𝒜 − □B₋ = {} at {p}", scalar::to_decimal(&lo));
        println!("min □B₊ − 𝒜 = {} at {q}", scalar::to_decimal(&hi));
    }
    Ok(())
}
