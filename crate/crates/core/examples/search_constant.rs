//! Hill-climbs for inputs with large |Λ_W| / (‖F₁‖₂‖F₂‖₄‖F₃‖₄) and
//! rechecks each optimum exactly against the constant 7.

use walshform::verify::{search_extremal, SearchConfig};

fn main() -> walshform::Result<()> {
    let result = search_extremal(&SearchConfig::new(3, 10_000, 10, 1))?;
    for r in &result.restarts {
        println!(
            "restart {:>2}: ratio {:.6}  accepted {:>5}  exact recheck {}",
            r.restart, r.ratio, r.accepted_moves, r.exact_recheck
        );
    }
    println!("best ratio {:.6} (restart {})", result.best_ratio, result.best_restart);
    println!("Λ at the optimum: {}", result.exact_lambda);
    println!("scale invariance holds: {}", result.homogeneity.holds());
    Ok(())
}
