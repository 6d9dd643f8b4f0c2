//! The level sums Ξ_k^± for one input, their telescoping, and the
//! sandwich Ξ_M^- − Ξ_0^- ≤ Λ_W ≤ Ξ_M^+ − Ξ_0^+ with both ends in closed form.

use walshform::scalar::to_decimal;
use walshform::verify::{random_triple, ValuePool};
use walshform::{xi_boundary_closed_form, Boundary, PhaseSpace, Sign};

fn main() -> walshform::Result<()> {
    let m = 4;
    let t = random_triple(m, 3, 0, &ValuePool::default());
    let s = PhaseSpace::new(&t).sweep(|_, _| {})?;

    println!("{:>3} {:>16} {:>16}", "k", "Ξ_k^+", "Ξ_k^-");
    for k in 0..=m as usize {
        println!("{k:>3} {:>16} {:>16}", to_decimal(&s.xi_plus[k]), to_decimal(&s.xi_minus[k]));
    }
    for k in 0..m as usize {
        let step = &s.xi_plus[k + 1] - &s.xi_plus[k];
        println!("Ξ⁺ step {k}→{}: equals multitile sum: {}", k + 1, step == s.box_plus[k]);
    }

    let top = m as usize;
    let lo = &s.xi_minus[top] - &s.xi_minus[0];
    let hi = &s.xi_plus[top] - &s.xi_plus[0];
    println!("{} ≤ Λ = {} ≤ {}", to_decimal(&lo), to_decimal(&s.lambda), to_decimal(&hi));
    for (which, k) in [(Boundary::Finest, top), (Boundary::Coarsest, 0)] {
        let closed = xi_boundary_closed_form(which, Sign::Plus, &t);
        println!("{which:?}: closed form matches tile sum: {}", closed == s.xi_plus[k]);
    }
    Ok(())
}
