//! Dyadic step functions, Walsh wave packets and their brackets.
//!
//! Packets are `L∞`-normalised: `w_{I,n}(x) = (-1)^{Σ_j n_j x_{-(j+k+1)}}`
//! on `I = [2^{-k}ℓ, 2^{-k}(ℓ+1))` and zero off `I`. The bracket
//! `[f]_{I,n} = |I|^{-1} ∫_I f w_{I,n}` is the matching Walsh–Fourier
//! coefficient; `n = 0` gives the plain average over `I`.

use num_traits::Zero;

use crate::dyadic::{DyadicInterval, DyadicPoint, MAX_RESOLUTION};
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// Walsh frequency `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreqIndex(pub u64);

impl FreqIndex {
    pub fn bit_len(&self) -> u32 {
        64 - self.0.leading_zeros()
    }
}

/// A step function on `[0,1)` constant on the `2^M` cells of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFun1D {
    resolution: u32,
    values: Vec<ExactScalar>,
}

impl StepFun1D {
    pub fn new(resolution: u32, values: Vec<ExactScalar>) -> Result<Self> {
        check_resolution(resolution)?;
        let expected = 1usize << resolution;
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "expected {expected} values at resolution {resolution}, got {}",
                values.len()
            )));
        }
        Ok(Self { resolution, values })
    }

    pub fn zeros(resolution: u32) -> Self {
        Self {
            resolution,
            values: vec![ExactScalar::zero(); 1 << resolution],
        }
    }

    pub fn from_fn(resolution: u32, f: impl FnMut(u64) -> ExactScalar) -> Self {
        Self {
            resolution,
            values: (0..1u64 << resolution).map(f).collect(),
        }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ExactScalar> {
        self.values
    }

    pub fn integral(&self) -> ExactScalar {
        self.values.iter().sum::<ExactScalar>() * scalar::pow2(-(self.resolution as i32))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_resolution(self.resolution, other.resolution)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Self {
            resolution: self.resolution,
            values,
        })
    }

    pub fn square(&self) -> Self {
        Self {
            resolution: self.resolution,
            values: self.values.iter().map(|v| v * v).collect(),
        }
    }
}

/// A step function on `[0,1)²`, stored row-major with row = y-cell and
/// column = x-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFun2D {
    resolution: u32,
    grid: Vec<ExactScalar>,
}

impl StepFun2D {
    pub fn new(resolution: u32, grid: Vec<ExactScalar>) -> Result<Self> {
        check_resolution(resolution)?;
        let side = 1usize << resolution;
        if grid.len() != side * side {
            return Err(Error::Shape(format!(
                "expected {side}x{side} grid at resolution {resolution}, got {} cells",
                grid.len()
            )));
        }
        Ok(Self { resolution, grid })
    }

    /// Builds a grid from its rows (`rows[y][x]`).
    pub fn from_rows(resolution: u32, rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let side = 1usize << resolution.min(MAX_RESOLUTION);
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(Error::Shape(format!(
                "expected {side} rows of {side} values at resolution {resolution}"
            )));
        }
        Self::new(resolution, rows.into_iter().flatten().collect())
    }

    pub fn zeros(resolution: u32) -> Self {
        Self::constant(resolution, ExactScalar::zero())
    }

    pub fn constant(resolution: u32, c: ExactScalar) -> Self {
        Self {
            resolution,
            grid: vec![c; 1 << (2 * resolution)],
        }
    }

    /// `f(x_cell, y_cell)` on every cell.
    pub fn from_fn(resolution: u32, mut f: impl FnMut(u64, u64) -> ExactScalar) -> Self {
        let side = 1u64 << resolution;
        let mut grid = Vec::with_capacity((side * side) as usize);
        for y in 0..side {
            for x in 0..side {
                grid.push(f(x, y));
            }
        }
        Self { resolution, grid }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn side(&self) -> usize {
        1 << self.resolution
    }

    pub fn get(&self, x: u64, y: u64) -> &ExactScalar {
        &self.grid[(y as usize) * self.side() + x as usize]
    }

    pub fn set(&mut self, x: u64, y: u64, v: ExactScalar) {
        let side = self.side();
        self.grid[(y as usize) * side + x as usize] = v;
    }

    pub fn cells(&self) -> &[ExactScalar] {
        &self.grid
    }

    pub fn row(&self, y: u64) -> &[ExactScalar] {
        let side = self.side();
        &self.grid[y as usize * side..(y as usize + 1) * side]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExactScalar]> {
        self.grid.chunks(self.side())
    }

    pub fn column(&self, x: u64) -> Vec<ExactScalar> {
        (0..self.side() as u64).map(|y| self.get(x, y).clone()).collect()
    }

    pub fn scaled(&self, c: &ExactScalar) -> Self {
        Self {
            resolution: self.resolution,
            grid: self.grid.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &ExactScalar, other: &Self) -> Result<Self> {
        same_resolution(self.resolution, other.resolution)?;
        Ok(Self {
            resolution: self.resolution,
            grid: self.grid.iter().zip(&other.grid).map(|(a, b)| a + c * b).collect(),
        })
    }

    /// The same function sampled on a finer grid.
    pub fn refine(&self, resolution: u32) -> Result<Self> {
        if resolution < self.resolution {
            return Err(Error::Domain(format!(
                "cannot refine resolution {} down to {resolution}",
                self.resolution
            )));
        }
        check_resolution(resolution)?;
        let shift = resolution - self.resolution;
        Ok(Self::from_fn(resolution, |x, y| self.get(x >> shift, y >> shift).clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(Zero::is_zero)
    }
}

fn check_resolution(resolution: u32) -> Result<()> {
    if resolution > MAX_RESOLUTION {
        return Err(Error::Domain(format!("resolution {resolution} exceeds {MAX_RESOLUTION}")));
    }
    Ok(())
}

pub(crate) fn same_resolution(a: u32, b: u32) -> Result<()> {
    if a != b {
        return Err(Error::ResolutionMismatch { left: a, right: b });
    }
    Ok(())
}

/// `w_{I,n}(x)` as `±1`, or `0` off `I`.
pub fn walsh_packet(i: DyadicInterval, n: FreqIndex, x: DyadicPoint) -> Result<i8> {
    let needed = i64::from(i.scale()) + i64::from(n.bit_len());
    if needed > i64::from(x.resolution()) {
        return Err(Error::InsufficientResolution {
            needed,
            available: x.resolution(),
        });
    }
    if !i.contains(x) {
        return Ok(0);
    }
    let k = i64::from(i.scale());
    let mut parity = 0u8;
    for j in 0..n.bit_len() {
        if (n.0 >> j) & 1 == 1 {
            parity ^= x.digit(i64::from(j) + k + 1);
        }
    }
    Ok(if parity == 0 { 1 } else { -1 })
}

pub fn walsh_packet_value(i: DyadicInterval, n: FreqIndex, x: DyadicPoint) -> Result<ExactScalar> {
    walsh_packet(i, n, x).map(|s| scalar::int(s.into()))
}

/// Number of frequencies carried by an interval of scale `k` at resolution
/// `m`: brackets with `n ≥ 2^{m-k}` vanish identically.
pub fn frequency_count(m: u32, i: DyadicInterval) -> u64 {
    1u64 << (m - i.scale() as u32)
}

fn bracket_values(values: &[ExactScalar], m: u32, i: DyadicInterval, n: FreqIndex) -> Result<ExactScalar> {
    let cells = i.cells(m)?;
    if n.0 >= frequency_count(m, i) {
        return Ok(ExactScalar::zero());
    }
    let mut acc = ExactScalar::zero();
    for c in cells.clone() {
        match walsh_packet(i, n, DyadicPoint::new(m, c)?)? {
            1 => acc += &values[c as usize],
            -1 => acc -= &values[c as usize],
            _ => unreachable!("cell {c} lies in {i}"),
        }
    }
    Ok(acc / ExactScalar::from_integer((cells.end - cells.start).into()))
}

/// `[f]_{I,n}` by direct summation over the cells of `I`.
pub fn bracket_1d(f: &StepFun1D, i: DyadicInterval, n: FreqIndex) -> Result<ExactScalar> {
    bracket_values(&f.values, f.resolution, i, n)
}

/// `y ↦ [F(·,y)]_{x,I,n}`.
pub fn bracket_x(f: &StepFun2D, i: DyadicInterval, n: FreqIndex) -> Result<StepFun1D> {
    let values = f
        .rows()
        .map(|row| bracket_values(row, f.resolution, i, n))
        .collect::<Result<Vec<_>>>()?;
    StepFun1D::new(f.resolution, values)
}

/// `x ↦ [F(x,·)]_{y,J,n}`.
pub fn bracket_y(f: &StepFun2D, j: DyadicInterval, n: FreqIndex) -> Result<StepFun1D> {
    let values = (0..f.side() as u64)
        .map(|x| bracket_values(&f.column(x), f.resolution, j, n))
        .collect::<Result<Vec<_>>>()?;
    StepFun1D::new(f.resolution, values)
}

/// Reverses the low `bits` bits of `v`.
pub(crate) fn reverse_bits(v: u64, bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        v.reverse_bits() >> (64 - bits)
    }
}

/// Sign of `w_{I,n}` at local offset `u` inside an interval spanning
/// `2^bits` cells: frequency bit `j` pairs with local digit `j+1` counted
/// from the most significant end, hence the bit reversal.
#[inline]
pub(crate) fn packet_is_negative(n: u64, u: u64, bits: u32) -> bool {
    (n & reverse_bits(u, bits)).count_ones() & 1 == 1
}

/// All brackets of a segment of `2^L` cell values, `n = 0..2^L`.
///
/// Natural-order Walsh–Hadamard butterflies applied to the bit-reversed
/// segment, then divided by `2^L`.
pub(crate) fn walsh_coefficients(segment: &[ExactScalar]) -> Vec<ExactScalar> {
    let len = segment.len();
    debug_assert!(len.is_power_of_two());
    let bits = len.trailing_zeros();
    let mut a: Vec<ExactScalar> = (0..len as u64)
        .map(|v| segment[reverse_bits(v, bits) as usize].clone())
        .collect();
    let mut h = 1;
    while h < len {
        for start in (0..len).step_by(2 * h) {
            for i in start..start + h {
                let (lo, hi) = a.split_at_mut(i + h);
                let sum = &lo[i] + &hi[0];
                hi[0] = &lo[i] - &hi[0];
                lo[i] = sum;
            }
        }
        h *= 2;
    }
    let norm = ExactScalar::from_integer(len.into());
    a.into_iter().map(|v| v / &norm).collect()
}

/// `[f]_{I,n}` for every `n < 2^{M-k}` in `O(N log N)`.
pub fn fwht_all_coeffs(f: &StepFun1D, i: DyadicInterval) -> Result<Vec<ExactScalar>> {
    let cells = i.cells(f.resolution)?;
    Ok(walsh_coefficients(&f.values[cells.start as usize..cells.end as usize]))
}

/// Rebuilds `f` from its Walsh–Fourier coefficients on `I`.
pub fn wf_expand(f: &StepFun1D, i: DyadicInterval) -> Result<StepFun1D> {
    let cells = i.cells(f.resolution)?;
    if let Some(c) = (0..f.values.len() as u64).find(|c| !cells.contains(c) && !f.values[*c as usize].is_zero()) {
        return Err(Error::Domain(format!("function is nonzero at cell {c} outside {i}")));
    }
    let coeffs = fwht_all_coeffs(f, i)?;
    let mut out = vec![ExactScalar::zero(); f.values.len()];
    for c in cells {
        let x = DyadicPoint::new(f.resolution, c)?;
        let mut acc = ExactScalar::zero();
        for (n, coeff) in coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            match walsh_packet(i, FreqIndex(n as u64), x)? {
                1 => acc += coeff,
                _ => acc -= coeff,
            }
        }
        out[c as usize] = acc;
    }
    StepFun1D::new(f.resolution, out)
}

/// `(‖F‖₂², ‖F‖₄⁴)`.
pub fn norms(f: &StepFun2D) -> (ExactScalar, ExactScalar) {
    let mut sq = ExactScalar::zero();
    let mut quad = ExactScalar::zero();
    for v in &f.grid {
        let v2 = v * v;
        quad += &v2 * &v2;
        sq += v2;
    }
    let area = scalar::pow2(-2 * f.resolution as i32);
    (sq * &area, quad * area)
}
