//! Bellman functions `B₁…B₅`, the local form `𝒜`, the cross terms
//! `𝒜₁…𝒜₅`, and the level-by-level phase-space evaluator of `Λ_W`.
//!
//! Two routes to every tile quantity exist. The free functions
//! [`bellman_b`], [`box_diff`], [`a_form`] and [`cross_terms`] evaluate
//! one (multi)tile from scratch through direct-summation brackets. The
//! [`PhaseSpace`] evaluator instead computes every `x`-bracket of a level
//! once with the fast Walsh transform and reuses it across all tiles and
//! multitiles of that level.

use num_traits::Zero;
use rayon::prelude::*;

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};
use crate::stepfun::{bracket_1d, bracket_x, packet_is_negative, walsh_coefficients, FreqIndex, StepFun1D};
use crate::tiles::{split_horizontal, split_vertical, Multitile, Tile};
use crate::triple::Triple;

/// `(B₁, …, B₅)` at one tile.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BellmanVector {
    pub b1: ExactScalar,
    pub b2: ExactScalar,
    pub b3: ExactScalar,
    pub b4: ExactScalar,
    pub b5: ExactScalar,
}

/// Which tile functional to take a difference of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Selector {
    B1,
    B2,
    B3,
    B4,
    B5,
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl BellmanVector {
    fn tail(&self) -> ExactScalar {
        (&self.b3 + &self.b4 + &self.b5) * scalar::ratio(1, 2)
    }

    /// `B₊ = B₁ + B₂ + ½(B₃ + B₄ + B₅)`.
    pub fn plus(&self) -> ExactScalar {
        &self.b1 + &self.b2 + self.tail()
    }

    /// `B₋ = B₁ − B₂ − ½(B₃ + B₄ + B₅)`.
    pub fn minus(&self) -> ExactScalar {
        &self.b1 - &self.b2 - self.tail()
    }

    pub fn signed(&self, sign: Sign) -> ExactScalar {
        match sign {
            Sign::Plus => self.plus(),
            Sign::Minus => self.minus(),
        }
    }

    pub fn select(&self, sel: Selector) -> ExactScalar {
        match sel {
            Selector::B1 => self.b1.clone(),
            Selector::B2 => self.b2.clone(),
            Selector::B3 => self.b3.clone(),
            Selector::B4 => self.b4.clone(),
            Selector::B5 => self.b5.clone(),
            Selector::Plus => self.plus(),
            Selector::Minus => self.minus(),
        }
    }

    fn add_scaled(&mut self, c: &ExactScalar, other: &Self) {
        self.b1 += c * &other.b1;
        self.b2 += c * &other.b2;
        self.b3 += c * &other.b3;
        self.b4 += c * &other.b4;
        self.b5 += c * &other.b5;
    }
}

/// Every quantity attached to one multitile `P = I×J×Ω`.
///
/// `s2`, `r3`, `r4`, `r5` are the remainders in the expansions of
/// `□B₂ … □B₅`: `□B₂ = s2`, `□B₃ = 𝒜₂ + 𝒜₃ + r3`, `□B₄ = 𝒜₄ + r4`,
/// `□B₅ = 𝒜₅ + r5`, each remainder a sum of squares.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultitileTerms {
    pub a: ExactScalar,
    pub a1: ExactScalar,
    pub a2: ExactScalar,
    pub a3: ExactScalar,
    pub a4: ExactScalar,
    pub a5: ExactScalar,
    pub s2: ExactScalar,
    pub r3: ExactScalar,
    pub r4: ExactScalar,
    pub r5: ExactScalar,
    /// `(□B₁, …, □B₅)`.
    pub box_b: BellmanVector,
}

impl MultitileTerms {
    pub fn box_plus(&self) -> ExactScalar {
        self.box_b.plus()
    }

    pub fn box_minus(&self) -> ExactScalar {
        self.box_b.minus()
    }

    pub fn cross(&self) -> [ExactScalar; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a5.clone()]
    }
}

// ---------------------------------------------------------------------------
// y-brackets over a column of x-brackets

/// `[g]_{y,J,n}` for `g` given on the full `2^M` grid.
fn y_bracket(g: &[ExactScalar], m: u32, j: DyadicInterval, n: u64) -> ExactScalar {
    let bits = m - j.scale() as u32;
    if n >> bits != 0 {
        return ExactScalar::zero();
    }
    let start = (j.index() << bits) as usize;
    let mut acc = ExactScalar::zero();
    for (u, v) in g[start..start + (1 << bits)].iter().enumerate() {
        if packet_is_negative(n, u as u64, bits) {
            acc -= v;
        } else {
            acc += v;
        }
    }
    acc / ExactScalar::from_integer((1u64 << bits).into())
}

/// `[g·h]_{y,J,n}` without materialising the product.
fn y_bracket_prod(g: &[ExactScalar], h: &[ExactScalar], m: u32, j: DyadicInterval, n: u64) -> ExactScalar {
    let bits = m - j.scale() as u32;
    if n >> bits != 0 {
        return ExactScalar::zero();
    }
    let start = (j.index() << bits) as usize;
    let end = start + (1 << bits);
    let mut acc = ExactScalar::zero();
    for (u, (a, b)) in g[start..end].iter().zip(&h[start..end]).enumerate() {
        let p = a * b;
        if packet_is_negative(n, u as u64, bits) {
            acc -= p;
        } else {
            acc += p;
        }
    }
    acc / ExactScalar::from_integer((1u64 << bits).into())
}

/// The `x`-brackets a multitile `I×J×Ω` (with `Ω ↔ m` at scale of `I_α`)
/// needs, as functions of `y`:
/// `[F₁]_{x,I,0}`, `[F₁]_{x,I,1}`, `[F₂]_{x,I×Ω_γ}`, `[F₃]_{x,I×Ω_γ}`.
struct LocalRows<'a> {
    f1_avg: &'a [ExactScalar],
    f1_haar: &'a [ExactScalar],
    f2: [&'a [ExactScalar]; 2],
    f3: [&'a [ExactScalar]; 2],
}

/// Everything except the `□B` differences, which come from tile values.
fn local_terms(rows: &LocalRows<'_>, m: u32, j: DyadicInterval, mf: u64) -> MultitileTerms {
    let (j0, j1) = j.halves();
    let halves = [j0, j1];
    let n = |g: usize| 2 * mf + g as u64;

    let mut t = MultitileTerms::default();
    // mixed[γ][δ] = [[F₂]_{x,I×Ω_δ} [F₃]_{x,I×Ω_{δ⊕1}}]_{y,J×Ω_γ}
    let mut mixed: [[ExactScalar; 2]; 2] = Default::default();
    for (g, row) in mixed.iter_mut().enumerate() {
        for (d, cell) in row.iter_mut().enumerate() {
            *cell = y_bracket_prod(rows.f2[d], rows.f3[d ^ 1], m, j, n(g));
        }
    }
    for g in 0..2 {
        let avg = y_bracket(rows.f1_avg, m, j, n(g));
        let haar = y_bracket(rows.f1_haar, m, j, n(g));
        let diag = y_bracket_prod(rows.f2[g ^ 1], rows.f3[g ^ 1], m, j, n(g));
        t.a += &avg * &diag;
        t.r3 += &diag * &diag;
        t.s2 += &haar * &haar;
        for cell in &mixed[g] {
            t.a1 += &haar * cell;
            t.a2 += cell * cell;
        }
    }
    for jb in halves {
        for d in 0..2 {
            let mut prod = scalar::int(1);
            for g in 0..2 {
                prod *= y_bracket_prod(rows.f2[g], rows.f3[g ^ d], m, jb, mf);
            }
            t.a3 += prod;
        }
        let mut p4 = scalar::int(1);
        let mut p5 = scalar::int(1);
        for g in 0..2 {
            p4 *= y_bracket_prod(rows.f2[g], rows.f2[g], m, jb, 0);
            p5 *= y_bracket_prod(rows.f3[g], rows.f3[g], m, jb, 0);
        }
        t.a4 += p4;
        t.a5 += p5;
    }
    let four = scalar::int(4);
    for (f, r) in [(&rows.f2, &mut t.r4), (&rows.f3, &mut t.r5)] {
        for g in 0..2 {
            let v = y_bracket_prod(f[g], f[g], m, j, 1);
            *r += &v * &v;
        }
        for e in 0..2 {
            let v = y_bracket_prod(f[0], f[1], m, j, e);
            *r += &four * &v * &v;
        }
    }
    t
}

fn check_tile(t: &Tile, m: u32) -> Result<()> {
    if !t.within(m) {
        return Err(Error::Domain(format!("{t} lies outside [0,1)²×[0,2^{m})")));
    }
    Ok(())
}

fn check_multitile(p: &Multitile, m: u32) -> Result<()> {
    if !p.within(m) {
        return Err(Error::Domain(format!("{p} lies outside [0,1)²×[0,2^{m})")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Reference route: one (multi)tile at a time, direct-summation brackets.

/// `(B₁(T), …, B₅(T))`.
pub fn bellman_b(t: &Tile, triple: &Triple) -> Result<BellmanVector> {
    let m = triple.resolution();
    check_tile(t, m)?;
    let n = t.freq();
    let x1 = bracket_x(triple.f1(), t.i(), FreqIndex(0))?;
    let x2 = bracket_x(triple.f2(), t.i(), n)?;
    let x3 = bracket_x(triple.f3(), t.i(), n)?;
    let a1 = bracket_1d(&x1, t.j(), n)?;
    let p23 = bracket_1d(&x2.mul(&x3)?, t.j(), n)?;
    let q2 = bracket_1d(&x2.square(), t.j(), FreqIndex(0))?;
    let q3 = bracket_1d(&x3.square(), t.j(), FreqIndex(0))?;
    Ok(BellmanVector {
        b1: &a1 * &p23,
        b2: &a1 * &a1,
        b3: &p23 * &p23,
        b4: &q2 * &q2,
        b5: &q3 * &q3,
    })
}

/// `(□B)(P) = ¼ Σ_{α,β} B(P_{α,β}) − Σ_γ B(P^γ)` for every component.
fn box_vector(p: &Multitile, triple: &Triple) -> Result<BellmanVector> {
    check_multitile(p, triple.resolution())?;
    let (p00, p01, p10, p11) = split_horizontal(p);
    let (lower, upper) = split_vertical(p);
    let quarter = scalar::ratio(1, 4);
    let minus_one = scalar::int(-1);
    let mut acc = BellmanVector::default();
    for child in [p00, p01, p10, p11] {
        acc.add_scaled(&quarter, &bellman_b(&child, triple)?);
    }
    for child in [lower, upper] {
        acc.add_scaled(&minus_one, &bellman_b(&child, triple)?);
    }
    Ok(acc)
}

pub fn box_diff(sel: Selector, p: &Multitile, triple: &Triple) -> Result<ExactScalar> {
    box_vector(p, triple).map(|v| v.select(sel))
}

fn direct_local_terms(p: &Multitile, triple: &Triple) -> Result<MultitileTerms> {
    let m = triple.resolution();
    check_multitile(p, m)?;
    let mf = p.omega().index();
    let rows = |slot: usize, n: u64| -> Result<StepFun1D> { bracket_x(triple.get(slot), p.i(), FreqIndex(n)) };
    let f1_avg = rows(0, 0)?;
    let f1_haar = rows(0, 1)?;
    let f2 = [rows(1, 2 * mf)?, rows(1, 2 * mf + 1)?];
    let f3 = [rows(2, 2 * mf)?, rows(2, 2 * mf + 1)?];
    let local = LocalRows {
        f1_avg: f1_avg.values(),
        f1_haar: f1_haar.values(),
        f2: [f2[0].values(), f2[1].values()],
        f3: [f3[0].values(), f3[1].values()],
    };
    Ok(local_terms(&local, m, p.j(), mf))
}

/// `𝒜(P) = Σ_γ [[F₁]_{x,I,0}]_{y,J×Ω_γ} [[F₂]_{x,I×Ω_{γ⊕1}} [F₃]_{x,I×Ω_{γ⊕1}}]_{y,J×Ω_γ}`.
pub fn a_form(p: &Multitile, triple: &Triple) -> Result<ExactScalar> {
    Ok(direct_local_terms(p, triple)?.a)
}

/// `(𝒜₁, …, 𝒜₅)` at `P`.
pub fn cross_terms(p: &Multitile, triple: &Triple) -> Result<[ExactScalar; 5]> {
    Ok(direct_local_terms(p, triple)?.cross())
}

/// All multitile quantities at `P` through the reference route.
pub fn multitile_terms(p: &Multitile, triple: &Triple) -> Result<MultitileTerms> {
    let mut t = direct_local_terms(p, triple)?;
    t.box_b = box_vector(p, triple)?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Cached route.

/// Every `x`-bracket `[F_s(·,y)]_{x,I,n}` of one level `k`: all `2^k`
/// intervals `I`, all `2^{M-k}` frequencies, all `2^M` rows.
pub struct LevelBrackets {
    m: u32,
    k: u32,
    data: [Vec<ExactScalar>; 3],
}

impl LevelBrackets {
    pub fn build(triple: &Triple, k: u32) -> Result<Self> {
        let m = triple.resolution();
        if k > m {
            return Err(Error::LevelOutOfRange { level: k, resolution: m });
        }
        let side = 1usize << m;
        let width = 1usize << (m - k);
        let data = [0, 1, 2].map(|slot| {
            let f = triple.get(slot);
            // Rows are transformed independently, one segment per interval.
            let per_row: Vec<Vec<ExactScalar>> = (0..side)
                .into_par_iter()
                .map(|y| {
                    let row = f.row(y as u64);
                    row.chunks(width).flat_map(walsh_coefficients).collect()
                })
                .collect();
            // Layout: ((ℓ_I · width) + n) · side + y.
            let mut out = vec![ExactScalar::zero(); side * side];
            for (y, coeffs) in per_row.into_iter().enumerate() {
                for (pos, c) in coeffs.into_iter().enumerate() {
                    out[pos * side + y] = c;
                }
            }
            out
        });
        Ok(Self { m, k, data })
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    /// `y ↦ [F_slot(·,y)]_{x,I,n}` for `I` of index `li` at this level.
    pub fn row(&self, slot: usize, li: u64, n: u64) -> &[ExactScalar] {
        let side = 1usize << self.m;
        let width = 1u64 << (self.m - self.k);
        let pos = (li * width + n) as usize;
        &self.data[slot][pos * side..(pos + 1) * side]
    }
}

/// `B(T)` for every tile of one level, indexed by `(ℓ_I, ℓ_J, n)`.
pub struct TileTable {
    m: u32,
    k: u32,
    values: Vec<BellmanVector>,
}

impl TileTable {
    pub fn build(level: &LevelBrackets) -> Self {
        let (m, k) = (level.m, level.k);
        let span = 1u64 << k;
        let width = 1u64 << (m - k);
        let values = (0..span)
            .into_par_iter()
            .flat_map_iter(|li| {
                let avg = level.row(0, li, 0);
                let mut block = vec![BellmanVector::default(); (span * width) as usize];
                for lj in 0..span {
                    let j = DyadicInterval::new(k as i32, lj);
                    let start = (lj * width) as usize;
                    let a1_all = walsh_coefficients(&avg[start..start + width as usize]);
                    for n in 0..width {
                        let x2 = level.row(1, li, n);
                        let x3 = level.row(2, li, n);
                        let a1 = &a1_all[n as usize];
                        let p23 = y_bracket_prod(x2, x3, m, j, n);
                        let q2 = y_bracket_prod(x2, x2, m, j, 0);
                        let q3 = y_bracket_prod(x3, x3, m, j, 0);
                        block[(lj * width + n) as usize] = BellmanVector {
                            b1: a1 * &p23,
                            b2: a1 * a1,
                            b3: &p23 * &p23,
                            b4: &q2 * &q2,
                            b5: &q3 * &q3,
                        };
                    }
                }
                block
            })
            .collect();
        Self { m, k, values }
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn get(&self, li: u64, lj: u64, n: u64) -> &BellmanVector {
        let span = 1u64 << self.k;
        let width = 1u64 << (self.m - self.k);
        &self.values[((li * span + lj) * width + n) as usize]
    }

    pub fn at(&self, t: &Tile) -> &BellmanVector {
        self.get(t.i().index(), t.j().index(), t.freq().0)
    }

    /// `Ξ_k^± = Σ_{T∈𝒯_k} |I×J| B_±(T)`.
    pub fn xi(&self, sign: Sign) -> ExactScalar {
        let sum: ExactScalar = self.values.iter().map(|b| b.signed(sign)).sum();
        sum * scalar::pow2(-2 * self.k as i32)
    }
}

/// Multitile quantities of level `k` from the cached brackets and the
/// tile tables of levels `k` and `k+1`.
pub fn level_terms(level: &LevelBrackets, coarse: &TileTable, fine: &TileTable) -> Vec<(Multitile, MultitileTerms)> {
    let (m, k) = (level.m, level.k);
    debug_assert!(coarse.k == k && fine.k == k + 1);
    let span = 1u64 << k;
    let freqs = 1u64 << (m - k - 1);
    let quarter = scalar::ratio(1, 4);
    let minus_one = scalar::int(-1);
    (0..span)
        .into_par_iter()
        .flat_map_iter(|li| {
            let mut out = Vec::with_capacity((span * freqs) as usize);
            let i = DyadicInterval::new(k as i32, li);
            for lj in 0..span {
                let j = DyadicInterval::new(k as i32, lj);
                for mf in 0..freqs {
                    let rows = LocalRows {
                        f1_avg: level.row(0, li, 0),
                        f1_haar: level.row(0, li, 1),
                        f2: [level.row(1, li, 2 * mf), level.row(1, li, 2 * mf + 1)],
                        f3: [level.row(2, li, 2 * mf), level.row(2, li, 2 * mf + 1)],
                    };
                    let mut t = local_terms(&rows, m, j, mf);
                    let mut boxed = BellmanVector::default();
                    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        boxed.add_scaled(&quarter, fine.get(2 * li + a, 2 * lj + b, mf));
                    }
                    for g in 0..2 {
                        boxed.add_scaled(&minus_one, coarse.get(li, lj, 2 * mf + g));
                    }
                    t.box_b = boxed;
                    let p = Multitile::new(i, j, DyadicInterval::new(-(k as i32) - 1, mf))
                        .expect("enumerated multitile is valid");
                    out.push((p, t));
                }
            }
            out
        })
        .collect()
}

/// Level sums gathered during a full sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub resolution: u32,
    /// `Σ_{P∈ℳ} |I×J| 𝒜(P)`.
    pub lambda: ExactScalar,
    /// `Ξ_k^+` for `k = 0..=M`.
    pub xi_plus: Vec<ExactScalar>,
    /// `Ξ_k^-` for `k = 0..=M`.
    pub xi_minus: Vec<ExactScalar>,
    /// `Σ_{P∈ℳ_k} |I×J| □B₊(P)` for `k = 0..M`.
    pub box_plus: Vec<ExactScalar>,
    /// `Σ_{P∈ℳ_k} |I×J| □B₋(P)` for `k = 0..M`.
    pub box_minus: Vec<ExactScalar>,
    pub multitiles: u64,
}

/// Level-by-level evaluator over the whole phase space. Only two adjacent
/// levels of brackets and tile values are alive at any time.
pub struct PhaseSpace<'a> {
    triple: &'a Triple,
}

impl<'a> PhaseSpace<'a> {
    pub fn new(triple: &'a Triple) -> Self {
        Self { triple }
    }

    /// Visits every multitile in `(k, ℓ_I, ℓ_J, ℓ_Ω)` order.
    pub fn sweep(&self, mut visit: impl FnMut(&Multitile, &MultitileTerms)) -> Result<SweepSummary> {
        let m = self.triple.resolution();
        let mut summary = SweepSummary {
            resolution: m,
            lambda: ExactScalar::zero(),
            xi_plus: Vec::new(),
            xi_minus: Vec::new(),
            box_plus: Vec::new(),
            box_minus: Vec::new(),
            multitiles: 0,
        };
        let mut level = LevelBrackets::build(self.triple, 0)?;
        let mut table = TileTable::build(&level);
        for k in 0..m {
            let next_level = LevelBrackets::build(self.triple, k + 1)?;
            let next_table = TileTable::build(&next_level);
            let weight = scalar::pow2(-2 * k as i32);
            let mut lam = ExactScalar::zero();
            let mut bp = ExactScalar::zero();
            let mut bm = ExactScalar::zero();
            for (p, t) in level_terms(&level, &table, &next_table) {
                lam += &t.a;
                bp += t.box_plus();
                bm += t.box_minus();
                summary.multitiles += 1;
                visit(&p, &t);
            }
            summary.lambda += lam * &weight;
            summary.box_plus.push(bp * &weight);
            summary.box_minus.push(bm * &weight);
            summary.xi_plus.push(table.xi(Sign::Plus));
            summary.xi_minus.push(table.xi(Sign::Minus));
            level = next_level;
            table = next_table;
        }
        summary.xi_plus.push(table.xi(Sign::Plus));
        summary.xi_minus.push(table.xi(Sign::Minus));
        Ok(summary)
    }
}

/// `Λ_W = Σ_{P∈ℳ} |I×J| 𝒜(P)`.
pub fn lambda_w_tiles(triple: &Triple) -> Result<ExactScalar> {
    PhaseSpace::new(triple).sweep(|_, _| {}).map(|s| s.lambda)
}

/// `Ξ_k^±` summed over the tiles of level `k`.
pub fn xi(k: u32, sign: Sign, triple: &Triple) -> Result<ExactScalar> {
    let level = LevelBrackets::build(triple, k)?;
    Ok(TileTable::build(&level).xi(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form_direct::lambda_w_direct;
    use crate::stepfun::StepFun2D;
    use crate::tiles::{enumerate_multitiles, enumerate_tiles};
    use crate::verify::random::{random_triple, ValuePool};

    fn constants(m: u32, a: i64, b: i64, c: i64) -> Triple {
        Triple::new(
            StepFun2D::constant(m, scalar::int(a)),
            StepFun2D::constant(m, scalar::int(b)),
            StepFun2D::constant(m, scalar::int(c)),
        )
        .unwrap()
    }

    fn rnd(m: u32, trial: u64) -> Triple {
        random_triple(m, 0x5eed, trial, &ValuePool::default())
    }

    fn br(f: &StepFun2D, i: DyadicInterval, nx: u64, j: DyadicInterval, ny: u64) -> ExactScalar {
        bracket_1d(&bracket_x(f, i, FreqIndex(nx)).unwrap(), j, FreqIndex(ny)).unwrap()
    }

    /// `𝒜(P)` spelled out with the generic bracket routines.
    fn a_oracle(p: &Multitile, t: &Triple) -> ExactScalar {
        let mf = p.omega().index();
        let mut acc = ExactScalar::zero();
        for g in 0..2u64 {
            let n = 2 * mf + g;
            let other = 2 * mf + (g ^ 1);
            let x2 = bracket_x(t.f2(), p.i(), FreqIndex(other)).unwrap();
            let x3 = bracket_x(t.f3(), p.i(), FreqIndex(other)).unwrap();
            let prod = bracket_1d(&x2.mul(&x3).unwrap(), p.j(), FreqIndex(n)).unwrap();
            acc += br(t.f1(), p.i(), 0, p.j(), n) * prod;
        }
        acc
    }

    /// `Σ_γ [[F₁]_{x,I,1}]²_{y,J×Ω_γ}`.
    fn s2_oracle(p: &Multitile, t: &Triple) -> ExactScalar {
        let mf = p.omega().index();
        (0..2)
            .map(|g| {
                let v = br(t.f1(), p.i(), 1, p.j(), 2 * mf + g);
                &v * &v
            })
            .sum()
    }

    #[test]
    fn bellman_examples() {
        let zero = constants(2, 0, 0, 0);
        let ones = constants(2, 1, 1, 1);
        for t in enumerate_tiles(2, 1).unwrap() {
            assert_eq!(bellman_b(&t, &zero).unwrap(), BellmanVector::default());
            let b = bellman_b(&t, &ones).unwrap();
            if t.freq().0 == 0 {
                let one = scalar::int(1);
                assert_eq!(b, BellmanVector { b1: one.clone(), b2: one.clone(), b3: one.clone(), b4: one.clone(), b5: one });
            } else {
                // B₄, B₅ average squares at frequency 0 and survive.
                assert!(b.b1.is_zero() && b.b2.is_zero() && b.b3.is_zero());
            }
        }
        let unit = Tile::new(DyadicInterval::unit(), DyadicInterval::unit(), DyadicInterval::unit()).unwrap();
        assert_eq!(bellman_b(&unit, &constants(0, 1, 1, 1)).unwrap().plus(), scalar::ratio(7, 2));
    }

    #[test]
    fn squares_are_nonnegative() {
        for trial in 0..4 {
            let t = rnd(3, trial);
            for k in 0..=3 {
                for tile in enumerate_tiles(3, k).unwrap() {
                    let b = bellman_b(&tile, &t).unwrap();
                    assert!(b.b2 >= ExactScalar::zero() && b.b3 >= ExactScalar::zero());
                    assert!(b.b4 >= ExactScalar::zero() && b.b5 >= ExactScalar::zero());
                }
            }
        }
    }

    #[test]
    fn tile_outside_phase_space_is_rejected() {
        let far = Tile::new(DyadicInterval::unit(), DyadicInterval::unit(), DyadicInterval::new(0, 8)).unwrap();
        assert!(matches!(bellman_b(&far, &rnd(2, 0)), Err(Error::Domain(_))));
    }

    #[test]
    fn box_examples() {
        let zero = constants(2, 0, 0, 0);
        let sels = [Selector::B1, Selector::B2, Selector::B3, Selector::B4, Selector::B5, Selector::Plus, Selector::Minus];
        for p in enumerate_multitiles(2, 0).unwrap() {
            for sel in sels {
                assert!(box_diff(sel, &p, &zero).unwrap().is_zero());
            }
        }
        for trial in 0..3 {
            let t = rnd(3, trial);
            for k in 0..3 {
                for p in enumerate_multitiles(3, k).unwrap() {
                    let d = |s| box_diff(s, &p, &t).unwrap();
                    let lhs = d(Selector::Plus) - d(Selector::Minus);
                    let rhs = scalar::int(2) * d(Selector::B2) + d(Selector::B3) + d(Selector::B4) + d(Selector::B5);
                    assert_eq!(lhs, rhs);
                    assert_eq!(d(Selector::B2), s2_oracle(&p, &t));
                    assert!(d(Selector::B2) >= ExactScalar::zero());
                }
            }
        }
    }

    #[test]
    fn a_form_examples() {
        let t = rnd(2, 0);
        let no_f1 = t.replace(0, StepFun2D::zeros(2)).unwrap();
        let consts = constants(2, 3, -1, 2);
        for k in 0..2 {
            for p in enumerate_multitiles(2, k).unwrap() {
                assert!(a_form(&p, &no_f1).unwrap().is_zero());
                assert!(a_form(&p, &consts).unwrap().is_zero());
            }
        }
        for trial in 0..6 {
            let t = rnd(1, trial);
            let p = enumerate_multitiles(1, 0).unwrap()[0];
            assert_eq!(a_form(&p, &t).unwrap(), lambda_w_direct(&t).unwrap());
        }
    }

    #[test]
    fn a_form_matches_definition() {
        for trial in 0..3 {
            let t = rnd(3, trial);
            for k in 0..3 {
                for p in enumerate_multitiles(3, k).unwrap() {
                    let a = a_form(&p, &t).unwrap();
                    assert_eq!(a, a_oracle(&p, &t), "{p}");
                    // 𝒜₁ is what separates 𝒜 from □B₁.
                    let a1 = &cross_terms(&p, &t).unwrap()[0];
                    assert_eq!(*a1, box_diff(Selector::B1, &p, &t).unwrap() - a);
                }
            }
        }
    }

    #[test]
    fn cross_term_signs() {
        let zero = ExactScalar::zero();
        for trial in 0..4 {
            let t = rnd(3, trial);
            let no_f2 = t.replace(1, StepFun2D::zeros(3)).unwrap();
            for k in 0..3 {
                for p in enumerate_multitiles(3, k).unwrap() {
                    let c = cross_terms(&p, &t).unwrap();
                    assert!(c[1] >= zero && c[3] >= zero && c[4] >= zero);
                    let c0 = cross_terms(&p, &no_f2).unwrap();
                    assert!(c0[1].is_zero() && c0[2].is_zero() && c0[3].is_zero());
                    assert_eq!(c0[4], c[4]);
                }
            }
        }
        let p = enumerate_multitiles(2, 0).unwrap()[0];
        assert!(cross_terms(&p, &constants(2, 0, 0, 0)).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn cached_route_matches_reference() {
        for trial in 0..3 {
            let t = rnd(3, trial);
            let levels: Vec<_> = (0..=3).map(|k| LevelBrackets::build(&t, k).unwrap()).collect();
            let tables: Vec<_> = levels.iter().map(TileTable::build).collect();
            for k in 0..=3u32 {
                for tile in enumerate_tiles(3, k).unwrap() {
                    assert_eq!(*tables[k as usize].at(&tile), bellman_b(&tile, &t).unwrap());
                }
            }
            for k in 0..3usize {
                let got = level_terms(&levels[k], &tables[k], &tables[k + 1]);
                let expected = enumerate_multitiles(3, k as u32).unwrap();
                assert_eq!(got.len(), expected.len());
                for ((p, terms), q) in got.iter().zip(&expected) {
                    assert_eq!(p, q);
                    assert_eq!(*terms, multitile_terms(q, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn level_brackets_are_x_brackets() {
        let t = rnd(3, 7);
        let level = LevelBrackets::build(&t, 1).unwrap();
        for slot in 0..3 {
            for li in 0..2 {
                for n in 0..4 {
                    let direct = bracket_x(t.get(slot), DyadicInterval::new(1, li), FreqIndex(n)).unwrap();
                    assert_eq!(level.row(slot, li, n), direct.values());
                }
            }
        }
        assert!(LevelBrackets::build(&t, 4).is_err());
    }

    #[test]
    fn decomposition_matches_direct() {
        let f = StepFun2D::from_fn(1, |x, y| scalar::int(i64::from(x == 0 && y == 0)));
        let ind = Triple::new(f.clone(), f.clone(), f).unwrap();
        assert_eq!(lambda_w_tiles(&ind).unwrap(), scalar::ratio(1, 16));
        assert!(lambda_w_tiles(&constants(2, 0, 4, 4)).unwrap().is_zero());
        for m in 1..=3 {
            for trial in 0..4 {
                let t = rnd(m, trial);
                assert_eq!(lambda_w_tiles(&t).unwrap(), lambda_w_direct(&t).unwrap(), "m={m} trial={trial}");
            }
        }
        assert!(lambda_w_tiles(&rnd(0, 0)).unwrap().is_zero());
    }

    #[test]
    fn xi_examples() {
        assert!(xi(2, Sign::Plus, &constants(2, 0, 0, 0)).unwrap().is_zero());
        let ones = constants(3, 1, 1, 1);
        assert_eq!(xi(3, Sign::Plus, &ones).unwrap(), scalar::ratio(7, 2));
        assert_eq!(xi(3, Sign::Minus, &ones).unwrap(), scalar::ratio(-3, 2));
        assert!(matches!(xi(4, Sign::Plus, &ones), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn xi_matches_tile_by_tile_sum() {
        let t = rnd(2, 3);
        for k in 0..=2 {
            for sign in [Sign::Plus, Sign::Minus] {
                let sum: ExactScalar = enumerate_tiles(2, k)
                    .unwrap()
                    .iter()
                    .map(|tile| bellman_b(tile, &t).unwrap().signed(sign) * tile.i().length() * tile.j().length())
                    .sum();
                assert_eq!(xi(k, sign, &t).unwrap(), sum);
            }
        }
    }

    #[test]
    fn sweep_telescopes_against_reference_boxes() {
        let t = rnd(3, 9);
        let mut visited = Vec::new();
        let s = PhaseSpace::new(&t).sweep(|p, _| visited.push(*p)).unwrap();
        assert_eq!(s.multitiles, visited.len() as u64);
        assert_eq!(s.xi_plus.len(), 4);
        for k in 0..3u32 {
            let mut bp = ExactScalar::zero();
            for p in enumerate_multitiles(3, k).unwrap() {
                bp += box_diff(Selector::Plus, &p, &t).unwrap() * p.i().length() * p.j().length();
            }
            assert_eq!(bp, s.box_plus[k as usize]);
            assert_eq!(&s.xi_plus[k as usize + 1] - &s.xi_plus[k as usize], bp);
            assert_eq!(s.xi_minus[k as usize], xi(k, Sign::Minus, &t).unwrap());
        }
        let keys: Vec<_> = visited.iter().map(|p| (p.level(), p.i().index(), p.j().index(), p.omega().index())).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
