//! Exhaustive checks of the wave-packet algebra on a fixed grid.

use num_traits::Zero;

use crate::dyadic::{xor_intervals, xor_points, DyadicInterval, DyadicPoint};
use crate::scalar::{self, ExactScalar};
use crate::stepfun::{walsh_packet, wf_expand, FreqIndex, StepFun1D};
use crate::verify::suite::{Failure, Tally};

fn intervals(m: u32) -> impl Iterator<Item = DyadicInterval> {
    (0..=m).flat_map(|k| (0..1u64 << k).map(move |l| DyadicInterval::new(k as i32, l)))
}

fn points(m: u32) -> impl Iterator<Item = DyadicPoint> {
    (0..1u64 << m).map(move |c| DyadicPoint::new(m, c).expect("cell in grid"))
}

fn freqs(m: u32, i: DyadicInterval) -> impl Iterator<Item = FreqIndex> {
    (0..1u64 << (m - i.scale() as u32)).map(FreqIndex)
}

fn w(i: DyadicInterval, n: FreqIndex, x: DyadicPoint) -> i64 {
    walsh_packet(i, n, x).expect("grid fine enough").into()
}

fn record(tally: &mut Tally, ok: bool, location: impl FnOnce() -> String, lhs: i64, rhs: i64) {
    tally.record(ok, || Failure::new(Some(location()), "=", scalar::int(lhs), scalar::int(rhs)));
}

/// `w_{I,n₁} w_{I,n₂} = w_{I,n₁⊕n₂}` at every cell.
pub fn check_w1(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m) {
        for n1 in freqs(m, i) {
            for n2 in freqs(m, i) {
                let n = FreqIndex(n1.0 ^ n2.0);
                for x in points(m) {
                    let (l, r) = (w(i, n1, x) * w(i, n2, x), w(i, n, x));
                    record(&mut t, l == r, || format!("I={i} n1={} n2={} x={x}", n1.0, n2.0), l, r);
                }
            }
        }
    }
    t
}

/// `w_{I,n}(x) w_{J,n}(y) = w_{I⊕J,n}(x⊕y)` for `|I| = |J|`, `x∈I`, `y∈J`.
pub fn check_w2(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m) {
        for lj in 0..1u64 << i.scale() {
            let j = DyadicInterval::new(i.scale(), lj);
            let ij = xor_intervals(i, j).expect("equal scales");
            for n in freqs(m, i) {
                for x in points(m).filter(|x| i.contains(*x)) {
                    for y in points(m).filter(|y| j.contains(*y)) {
                        let xy = xor_points(x, y).expect("same grid");
                        let (l, r) = (w(i, n, x) * w(j, n, y), w(ij, n, xy));
                        record(&mut t, l == r, || format!("I={i} J={j} n={} x={x} y={y}", n.0), l, r);
                    }
                }
            }
        }
    }
    t
}

/// Walsh–Fourier expansion on `I` reproduces every cell indicator inside
/// `I`; by linearity this covers every function supported on `I`.
pub fn check_w3(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m) {
        for c in i.cells(m).expect("interval in grid") {
            let f = StepFun1D::from_fn(m, |x| scalar::int(i64::from(x == c)));
            let back = wf_expand(&f, i).expect("supported on I");
            let ok = back == f;
            t.record(ok, || {
                Failure::new(
                    Some(format!("I={i} indicator of cell {c}")),
                    "=",
                    back.values()[c as usize].clone(),
                    scalar::int(1),
                )
            });
        }
    }
    t
}

/// Round trip of an arbitrary function supported on `I`.
pub fn check_w3_function(f: &StepFun1D, i: DyadicInterval) -> Tally {
    let mut t = Tally::default();
    let back = wf_expand(f, i).expect("supported on I");
    let bad = (0..f.values().len()).find(|&c| back.values()[c] != f.values()[c]);
    t.record(bad.is_none(), || {
        let c = bad.unwrap_or(0);
        Failure::new(
            Some(format!("I={i} cell {c}")),
            "=",
            back.values()[c].clone(),
            f.values()[c].clone(),
        )
    });
    t
}

/// `w_{I×Ω₀} = w_{I₀×Ω} + w_{I₁×Ω}` and `w_{I×Ω₁} = w_{I₀×Ω} − w_{I₁×Ω}`
/// at every cell, for `|I||Ω| = 2`.
pub fn check_w4(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m).filter(|i| (i.scale() as u32) < m) {
        let (i0, i1) = i.halves();
        for mf in 0..1u64 << (m - i.scale() as u32 - 1) {
            let (n, n_child) = (FreqIndex(2 * mf), FreqIndex(mf));
            let n_odd = FreqIndex(2 * mf + 1);
            for x in points(m) {
                let (a, b) = (w(i0, n_child, x), w(i1, n_child, x));
                let (l0, l1) = (w(i, n, x), w(i, n_odd, x));
                record(&mut t, l0 == a + b, || format!("I={i} Ω₀ n={} x={x}", n.0), l0, a + b);
                record(&mut t, l1 == a - b, || format!("I={i} Ω₁ n={} x={x}", n_odd.0), l1, a - b);
            }
        }
    }
    t
}

/// `w_{I,0} = 1_I` and `w_{I,1} = h_I`.
pub fn check_w5(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m) {
        let (left, right) = i.halves();
        for x in points(m) {
            let ind = i64::from(i.contains(x));
            let l = w(i, FreqIndex(0), x);
            record(&mut t, l == ind, || format!("I={i} n=0 x={x}"), l, ind);
            if (i.scale() as u32) < m {
                let haar = i64::from(left.contains(x)) - i64::from(right.contains(x));
                let l = w(i, FreqIndex(1), x);
                record(&mut t, l == haar, || format!("I={i} n=1 x={x}"), l, haar);
            }
        }
    }
    t
}

/// `|I|⁻¹ ∫_I w_{I,n₁} w_{I,n₂} = δ_{n₁n₂}`.
pub fn check_orthogonality(m: u32) -> Tally {
    let mut t = Tally::default();
    for i in intervals(m) {
        let cells = i.cells(m).expect("interval in grid");
        let count = ExactScalar::from_integer((cells.end - cells.start).into());
        for n1 in freqs(m, i) {
            for n2 in freqs(m, i) {
                let mut acc = ExactScalar::zero();
                for c in cells.clone() {
                    let x = DyadicPoint::new(m, c).expect("cell in grid");
                    acc += scalar::int(w(i, n1, x) * w(i, n2, x));
                }
                let avg = acc / &count;
                let expected = scalar::int(i64::from(n1 == n2));
                let ok = avg == expected;
                t.record(ok, || {
                    Failure::new(Some(format!("I={i} n1={} n2={}", n1.0, n2.0)), "=", avg.clone(), expected.clone())
                });
            }
        }
    }
    t
}
