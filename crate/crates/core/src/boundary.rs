//! Closed forms of the extreme tile sums `Ξ_M^±` and `Ξ_0^±` as plain
//! integrals of the inputs, evaluated as cell sums with `⊕`-shifted
//! indices and without reference to tiles or wave packets.

use num_traits::Zero;

use crate::bellman::Sign;
use crate::scalar::{self, ExactScalar};
use crate::stepfun::StepFun2D;
use crate::triple::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `k = M`: tiles are single grid cells with `Ω = [0, 2^M)`.
    Finest,
    /// `k = 0`: tiles have `I = J = [0,1)`.
    Coarsest,
}

pub fn xi_boundary_closed_form(which: Boundary, sign: Sign, triple: &Triple) -> ExactScalar {
    let (main, penalty) = match which {
        Boundary::Finest => finest_parts(triple),
        Boundary::Coarsest => coarsest_parts(triple),
    };
    match sign {
        Sign::Plus => main + penalty,
        Sign::Minus => main - penalty,
    }
}

fn finest_parts(triple: &Triple) -> (ExactScalar, ExactScalar) {
    let half = scalar::ratio(1, 2);
    let mut main = ExactScalar::zero();
    let mut penalty = ExactScalar::zero();
    for ((a, b), c) in triple.f1().cells().iter().zip(triple.f2().cells()).zip(triple.f3().cells()) {
        main += a * b * c;
        let b2 = b * b;
        let c2 = c * c;
        penalty += a * a + &half * (&b2 * &c2 + &b2 * &b2 + &c2 * &c2);
    }
    let area = scalar::pow2(-2 * triple.resolution() as i32);
    (main * &area, penalty * area)
}

fn coarsest_parts(triple: &Triple) -> (ExactScalar, ExactScalar) {
    let m = triple.resolution() as i32;
    let half = scalar::ratio(1, 2);
    let main = first_term(triple) * scalar::pow2(-4 * m);
    let f1_sq = row_sums(triple.f1()).iter().map(|s| s * s).sum::<ExactScalar>() * scalar::pow2(-3 * m);
    let mixed = mixed_quartic(triple.f2(), triple.f3()) * scalar::pow2(-5 * m);
    let quart2 = pure_quartic(triple.f2()) * scalar::pow2(-5 * m);
    let quart3 = pure_quartic(triple.f3()) * scalar::pow2(-5 * m);
    (main, f1_sq + half * (mixed + quart2 + quart3))
}

/// `z ↦ Σ_x F(x,z)`.
fn row_sums(f: &StepFun2D) -> Vec<ExactScalar> {
    f.rows().map(|r| r.iter().sum()).collect()
}

/// `Σ F₁(x₁, x₂⊕x₃⊕y) F₂(x₂,y) F₃(x₃,y)` over all cells, `x₁` summed first.
fn first_term(triple: &Triple) -> ExactScalar {
    let side = triple.f1().side() as u64;
    let g1 = row_sums(triple.f1());
    let (f2, f3) = (triple.f2(), triple.f3());
    let mut acc = ExactScalar::zero();
    for y in 0..side {
        for x2 in 0..side {
            let a = f2.get(x2, y);
            if a.is_zero() {
                continue;
            }
            for x3 in 0..side {
                acc += &g1[(x2 ^ x3 ^ y) as usize] * a * f3.get(x3, y);
            }
        }
    }
    acc
}

/// `Σ F₂(x₁,y) F₂(x₂,z) F₃(x₃,y) F₃(x₄,z)` with `z = x₁⊕x₂⊕x₃⊕x₄⊕y`.
///
/// With `u = x₁⊕x₃⊕y` the inner pair only depends on `u`, giving
/// `Σ_{x₁,x₃,y} F₂(x₁,y) F₃(x₃,y) H(x₁⊕x₃⊕y)` where
/// `H(u) = Σ_{x₂,x₄} F₂(x₂,u⊕x₂⊕x₄) F₃(x₄,u⊕x₂⊕x₄)`.
fn mixed_quartic(f2: &StepFun2D, f3: &StepFun2D) -> ExactScalar {
    let side = f2.side() as u64;
    let h: Vec<ExactScalar> = (0..side)
        .map(|u| {
            let mut acc = ExactScalar::zero();
            for x2 in 0..side {
                for x4 in 0..side {
                    let z = u ^ x2 ^ x4;
                    acc += f2.get(x2, z) * f3.get(x4, z);
                }
            }
            acc
        })
        .collect();
    let mut acc = ExactScalar::zero();
    for y in 0..side {
        for x1 in 0..side {
            let a = f2.get(x1, y);
            if a.is_zero() {
                continue;
            }
            for x3 in 0..side {
                acc += a * f3.get(x3, y) * &h[(x1 ^ x3 ^ y) as usize];
            }
        }
    }
    acc
}

/// `Σ F(x₁,y₁) F(x₂,y₁) F(x₃,y₂) F(x₁⊕x₂⊕x₃,y₂)` via the Gram matrix
/// `G(a,b) = Σ_y F(a,y) F(b,y)`.
fn pure_quartic(f: &StepFun2D) -> ExactScalar {
    let side = f.side() as u64;
    let mut gram = vec![ExactScalar::zero(); (side * side) as usize];
    for a in 0..side {
        for b in a..side {
            let v: ExactScalar = (0..side).map(|y| f.get(a, y) * f.get(b, y)).sum();
            gram[(b * side + a) as usize] = v.clone();
            gram[(a * side + b) as usize] = v;
        }
    }
    let g = |a: u64, b: u64| &gram[(a * side + b) as usize];
    let shifted: Vec<ExactScalar> = (0..side).map(|v| (0..side).map(|x3| g(x3, v ^ x3)).sum()).collect();
    let mut acc = ExactScalar::zero();
    for x1 in 0..side {
        for x2 in 0..side {
            acc += g(x1, x2) * &shifted[(x1 ^ x2) as usize];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellman::xi;
    use crate::verify::random::{random_triple, ValuePool};

    /// `Ξ_0^±` from the five displayed integrals, one nested loop per
    /// variable, every variable a grid cell.
    fn coarsest_oracle(t: &Triple, sign: Sign) -> ExactScalar {
        let m = t.resolution();
        let n = 1usize << m;
        let (f1, f2, f3) = (t.f1(), t.f2(), t.f3());
        let g = |f: &StepFun2D, x: usize, y: usize| f.get(x as u64, y as u64).clone();
        let mut main = ExactScalar::zero();
        let mut p1 = ExactScalar::zero();
        let mut p2 = ExactScalar::zero();
        let mut p3 = ExactScalar::zero();
        let mut p4 = ExactScalar::zero();
        for y in 0..n {
            for x1 in 0..n {
                for x2 in 0..n {
                    p1 += g(f1, x1, y) * g(f1, x2, y);
                    for x3 in 0..n {
                        main += g(f1, x1, x2 ^ x3 ^ y) * g(f2, x2, y) * g(f3, x3, y);
                        for x4 in 0..n {
                            let z = x1 ^ x2 ^ x3 ^ x4 ^ y;
                            p2 += g(f2, x1, y) * g(f2, x2, z) * g(f3, x3, y) * g(f3, x4, z);
                        }
                        for y2 in 0..n {
                            let y1 = y;
                            p3 += g(f2, x1, y1) * g(f2, x2, y1) * g(f2, x3, y2) * g(f2, x1 ^ x2 ^ x3, y2);
                            p4 += g(f3, x1, y1) * g(f3, x2, y1) * g(f3, x3, y2) * g(f3, x1 ^ x2 ^ x3, y2);
                        }
                    }
                }
            }
        }
        let cell = |d: i32| scalar::pow2(-d * m as i32);
        let half = scalar::ratio(1, 2);
        let penalty = p1 * cell(3) + half * (p2 + p3 + p4) * cell(5);
        let main = main * cell(4);
        match sign {
            Sign::Plus => main + penalty,
            Sign::Minus => main - penalty,
        }
    }

    fn finest_oracle(t: &Triple, sign: Sign) -> ExactScalar {
        let m = t.resolution();
        let mut main = ExactScalar::zero();
        let mut penalty = ExactScalar::zero();
        for y in 0..1u64 << m {
            for x in 0..1u64 << m {
                let (a, b, c) = (t.f1().get(x, y), t.f2().get(x, y), t.f3().get(x, y));
                main += a * b * c;
                let half = scalar::ratio(1, 2);
                penalty += a * a + &half * b * b * c * c + &half * b * b * b * b + &half * c * c * c * c;
            }
        }
        let area = scalar::pow2(-2 * m as i32);
        match sign {
            Sign::Plus => (main + penalty) * area,
            Sign::Minus => (main - penalty) * area,
        }
    }

    fn ones(m: u32) -> Triple {
        let one = StepFun2D::constant(m, scalar::int(1));
        Triple::new(one.clone(), one.clone(), one).unwrap()
    }

    #[test]
    fn constant_one_gives_seven_halves() {
        for m in 0..=3 {
            let t = ones(m);
            assert_eq!(xi_boundary_closed_form(Boundary::Finest, Sign::Plus, &t), scalar::ratio(7, 2));
            assert_eq!(xi_boundary_closed_form(Boundary::Coarsest, Sign::Plus, &t), scalar::ratio(7, 2));
            assert_eq!(xi_boundary_closed_form(Boundary::Finest, Sign::Minus, &t), scalar::ratio(-3, 2));
        }
    }

    #[test]
    fn closed_forms_match_naive_integrals() {
        for m in 0..=2 {
            for trial in 0..4 {
                let t = random_triple(m, 77, trial, &ValuePool::default());
                for sign in [Sign::Plus, Sign::Minus] {
                    assert_eq!(xi_boundary_closed_form(Boundary::Finest, sign, &t), finest_oracle(&t, sign));
                    assert_eq!(xi_boundary_closed_form(Boundary::Coarsest, sign, &t), coarsest_oracle(&t, sign));
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_tile_sums() {
        for m in 1..=3 {
            for trial in 0..3 {
                let t = random_triple(m, 78, trial, &ValuePool::default());
                for sign in [Sign::Plus, Sign::Minus] {
                    assert_eq!(xi_boundary_closed_form(Boundary::Finest, sign, &t), xi(m, sign, &t).unwrap());
                    assert_eq!(xi_boundary_closed_form(Boundary::Coarsest, sign, &t), xi(0, sign, &t).unwrap());
                }
            }
        }
    }
}
