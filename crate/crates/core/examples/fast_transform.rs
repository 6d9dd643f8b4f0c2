//! All Walsh coefficients of a step function on an interval, computed by
//! the fast transform and checked against direct summation and Parseval.

use walshform::scalar::{self, ExactScalar};
use walshform::{bracket_1d, fwht_all_coeffs, wf_expand, DyadicInterval, FreqIndex, StepFun1D};

fn main() -> walshform::Result<()> {
    let values = [3, -1, 0, 2, 5, 5, -4, 1].map(|v| scalar::ratio(v, 2));
    let f = StepFun1D::new(3, values.to_vec())?;
    let i = DyadicInterval::unit();

    let coeffs = fwht_all_coeffs(&f, i)?;
    for (n, c) in coeffs.iter().enumerate() {
        let direct = bracket_1d(&f, i, FreqIndex(n as u64))?;
        println!("[f]_(I,{n}) = {:>6}   direct agrees: {}", scalar::render(c), *c == direct);
    }

    let energy: ExactScalar = coeffs.iter().map(|c| c * c).sum();
    println!("Σ coeff² = {}   ∫f² = {}", scalar::render(&energy), scalar::render(&f.square().integral()));
    println!("expansion reproduces f: {}", wf_expand(&f, i)? == f);
    Ok(())
}
