//! Dyadic points, dyadic intervals, and the digitwise `⊕` operation.
//!
//! Points live on a fixed grid of `2^M` cells in `[0,1)`: the point with
//! cell index `idx` is `idx · 2^{-M}`, whose binary digits after the point
//! are the bits of `idx` read from the most significant end. Digitwise
//! addition mod 2 is therefore a plain XOR of cell indices.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// Largest supported grid resolution.
pub const MAX_RESOLUTION: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicPoint {
    resolution: u32,
    idx: u64,
}

impl DyadicPoint {
    pub fn new(resolution: u32, idx: u64) -> Result<Self> {
        if resolution > MAX_RESOLUTION {
            return Err(Error::Domain(format!("resolution {resolution} exceeds {MAX_RESOLUTION}")));
        }
        if idx >= 1u64 << resolution {
            return Err(Error::Domain(format!("cell {idx} outside grid of 2^{resolution}")));
        }
        Ok(Self { resolution, idx })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn index(&self) -> u64 {
        self.idx
    }

    /// Binary digit `x_{-d}`, i.e. the `d`-th digit after the point.
    ///
    /// Digits at or before the point (`d ≤ 0`) vanish since the point lies
    /// in `[0,1)`; digits finer than the grid are zero as well.
    pub fn digit(&self, d: i64) -> u8 {
        if d <= 0 || d > i64::from(self.resolution) {
            return 0;
        }
        ((self.idx >> (i64::from(self.resolution) - d)) & 1) as u8
    }

    pub fn value(&self) -> ExactScalar {
        ExactScalar::from_integer(self.idx.into()) * scalar::pow2(-(self.resolution as i32))
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^-{}", self.idx, self.resolution)
    }
}

pub fn xor_points(a: DyadicPoint, b: DyadicPoint) -> Result<DyadicPoint> {
    if a.resolution != b.resolution {
        return Err(Error::ResolutionMismatch {
            left: a.resolution,
            right: b.resolution,
        });
    }
    Ok(DyadicPoint {
        resolution: a.resolution,
        idx: a.idx ^ b.idx,
    })
}

/// `[2^{-scale}·index, 2^{-scale}·(index+1))`.
///
/// Negative scales describe intervals longer than one, which is how
/// frequency intervals inside `[0, 2^M)` are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicInterval {
    scale: i32,
    index: u64,
}

impl DyadicInterval {
    pub fn new(scale: i32, index: u64) -> Self {
        Self { scale, index }
    }

    /// `[0,1)`.
    pub fn unit() -> Self {
        Self::new(0, 0)
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn length(&self) -> ExactScalar {
        scalar::pow2(-self.scale)
    }

    pub fn left(&self) -> ExactScalar {
        ExactScalar::from_integer(self.index.into()) * self.length()
    }

    pub fn right(&self) -> ExactScalar {
        ExactScalar::from_integer((self.index + 1).into()) * self.length()
    }

    pub fn halves(&self) -> (Self, Self) {
        (
            Self::new(self.scale + 1, 2 * self.index),
            Self::new(self.scale + 1, 2 * self.index + 1),
        )
    }

    pub fn parent(&self) -> Self {
        Self::new(self.scale - 1, self.index / 2)
    }

    pub fn in_unit(&self) -> bool {
        self.scale >= 0 && (self.scale as u32) < 64 && self.index < 1u64 << self.scale
    }

    /// Half-open range of grid cells covered by this interval at resolution
    /// `m`. Fails when the interval leaves `[0,1)` or is finer than a cell.
    pub fn cells(&self, m: u32) -> Result<std::ops::Range<u64>> {
        if !self.in_unit() {
            return Err(Error::Domain(format!("{self} is not contained in [0,1)")));
        }
        if self.scale as u32 > m {
            return Err(Error::Domain(format!("{self} is finer than the 2^-{m} grid")));
        }
        let width = 1u64 << (m - self.scale as u32);
        Ok(self.index * width..(self.index + 1) * width)
    }

    pub fn contains(&self, x: DyadicPoint) -> bool {
        if self.scale < 0 {
            return self.index == 0;
        }
        let scale = self.scale as u32;
        if scale <= x.resolution {
            x.idx >> (x.resolution - scale) == self.index
        } else {
            // x sits at the left end of its cell: finer digits are zero.
            u128::from(x.idx) << (scale - x.resolution) == u128::from(self.index)
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.left(), self.right())
    }
}

pub fn xor_intervals(a: DyadicInterval, b: DyadicInterval) -> Result<DyadicInterval> {
    if a.scale != b.scale {
        return Err(Error::ScaleMismatch {
            left: a.scale,
            right: b.scale,
        });
    }
    Ok(DyadicInterval::new(a.scale, a.index ^ b.index))
}

pub fn halves(i: DyadicInterval) -> (DyadicInterval, DyadicInterval) {
    i.halves()
}
