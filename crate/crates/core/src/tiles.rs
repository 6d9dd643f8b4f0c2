//! Tiles and multitiles of the time–time–frequency phase space
//! `[0,1)² × [0,2^M)`.

use std::fmt;

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::stepfun::FreqIndex;

/// `I×J×Ω` with `|I| = |J| = |Ω|⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    i: DyadicInterval,
    j: DyadicInterval,
    omega: DyadicInterval,
}

/// `I×J×Ω` with `|I| = |J| = 2|Ω|⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multitile {
    i: DyadicInterval,
    j: DyadicInterval,
    omega: DyadicInterval,
}

fn check_time_pair(i: DyadicInterval, j: DyadicInterval) -> std::result::Result<(), String> {
    if i.scale() != j.scale() {
        return Err(format!("|I| = 2^-{} but |J| = 2^-{}", i.scale(), j.scale()));
    }
    if !i.in_unit() || !j.in_unit() {
        return Err(format!("{i}×{j} leaves [0,1)²"));
    }
    Ok(())
}

impl Tile {
    pub fn new(i: DyadicInterval, j: DyadicInterval, omega: DyadicInterval) -> Result<Self> {
        check_time_pair(i, j).map_err(Error::NotATile)?;
        if omega.scale() != -i.scale() {
            return Err(Error::NotATile(format!("|I||Ω| ≠ 1 for I = {i}, Ω = {omega}")));
        }
        Ok(Self { i, j, omega })
    }

    pub fn i(&self) -> DyadicInterval {
        self.i
    }

    pub fn j(&self) -> DyadicInterval {
        self.j
    }

    pub fn omega(&self) -> DyadicInterval {
        self.omega
    }

    /// `k` with `|I| = 2^{-k}`.
    pub fn level(&self) -> u32 {
        self.i.scale() as u32
    }

    pub fn freq(&self) -> FreqIndex {
        FreqIndex(self.omega.index())
    }

    /// Whether `Ω ⊆ [0, 2^M)`.
    pub fn within(&self, m: u32) -> bool {
        self.level() <= m && self.omega.index() < 1u64 << (m - self.level())
    }
}

impl Multitile {
    pub fn new(i: DyadicInterval, j: DyadicInterval, omega: DyadicInterval) -> Result<Self> {
        check_time_pair(i, j).map_err(Error::NotAMultitile)?;
        if omega.scale() != -i.scale() - 1 {
            return Err(Error::NotAMultitile(format!("|I||Ω| ≠ 2 for I = {i}, Ω = {omega}")));
        }
        Ok(Self { i, j, omega })
    }

    pub fn i(&self) -> DyadicInterval {
        self.i
    }

    pub fn j(&self) -> DyadicInterval {
        self.j
    }

    pub fn omega(&self) -> DyadicInterval {
        self.omega
    }

    pub fn level(&self) -> u32 {
        self.i.scale() as u32
    }

    pub fn within(&self, m: u32) -> bool {
        self.level() < m && self.omega.index() < 1u64 << (m - self.level() - 1)
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tile {}×{}×{}", self.i, self.j, self.omega)
    }
}

impl fmt::Display for Multitile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "multitile {}×{}×{}", self.i, self.j, self.omega)
    }
}

/// Recovers the Walsh frequency `n` of `I×Ω` from `Ω = [2^k n, 2^k(n+1))`,
/// i.e. `n = (left end of Ω)·|I|`.
pub fn tile_freq(i: DyadicInterval, omega: DyadicInterval) -> Result<FreqIndex> {
    if i.length() * omega.length() != crate::scalar::int(1) {
        return Err(Error::NotATile(format!("|I||Ω| ≠ 1 for I = {i}, Ω = {omega}")));
    }
    let n = omega.left() * i.length();
    if !n.is_integer() {
        return Err(Error::NotATile(format!("non-integral frequency {n}")));
    }
    use num_traits::ToPrimitive;
    n.to_integer()
        .to_u64()
        .map(FreqIndex)
        .ok_or_else(|| Error::NotATile(format!("frequency {n} out of range")))
}

/// `𝒯_k`, ordered by `I`, then `J`, then `Ω`. Holds `2^{M+k}` tiles.
pub fn enumerate_tiles(m: u32, k: u32) -> Result<Vec<Tile>> {
    if k > m {
        return Err(Error::LevelOutOfRange { level: k, resolution: m });
    }
    let span = 1u64 << k;
    let freqs = 1u64 << (m - k);
    let mut out = Vec::with_capacity((span * span * freqs) as usize);
    for li in 0..span {
        for lj in 0..span {
            for n in 0..freqs {
                out.push(Tile {
                    i: DyadicInterval::new(k as i32, li),
                    j: DyadicInterval::new(k as i32, lj),
                    omega: DyadicInterval::new(-(k as i32), n),
                });
            }
        }
    }
    Ok(out)
}

/// `ℳ_k`, same ordering. Holds `2^{M+k-1}` multitiles; empty when `M = 0`.
pub fn enumerate_multitiles(m: u32, k: u32) -> Result<Vec<Multitile>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    if k >= m {
        return Err(Error::LevelOutOfRange { level: k, resolution: m });
    }
    let span = 1u64 << k;
    let freqs = 1u64 << (m - k - 1);
    let mut out = Vec::with_capacity((span * span * freqs) as usize);
    for li in 0..span {
        for lj in 0..span {
            for mf in 0..freqs {
                out.push(Multitile {
                    i: DyadicInterval::new(k as i32, li),
                    j: DyadicInterval::new(k as i32, lj),
                    omega: DyadicInterval::new(-(k as i32) - 1, mf),
                });
            }
        }
    }
    Ok(out)
}

/// `(P₀₀, P₀₁, P₁₀, P₁₁)`, the children `I_α×J_β×Ω`.
pub fn split_horizontal(p: &Multitile) -> (Tile, Tile, Tile, Tile) {
    let (i0, i1) = p.i.halves();
    let (j0, j1) = p.j.halves();
    let t = |i, j| Tile { i, j, omega: p.omega };
    (t(i0, j0), t(i0, j1), t(i1, j0), t(i1, j1))
}

/// `(P⁰, P¹) = (I×J×Ω₀, I×J×Ω₁)`.
pub fn split_vertical(p: &Multitile) -> (Tile, Tile) {
    let (o0, o1) = p.omega.halves();
    let lower = Tile { i: p.i, j: p.j, omega: o0 };
    let upper = Tile { i: p.i, j: p.j, omega: o1 };
    // The two frequencies are n and n⊕1 with the even one first.
    debug_assert!(lower.freq().0 % 2 == 0 && lower.freq().0 ^ 1 == upper.freq().0);
    (lower, upper)
}
