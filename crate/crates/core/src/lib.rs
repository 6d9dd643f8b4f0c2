//! Exact evaluation of the Walsh-model trilinear form
//!
//! ```text
//! Λ_W(F₁,F₂,F₃) = Σ_k 4^k ∫_{[0,1)⁴} F₁(x⊕s, y⊕t) F₂(x⊕t, y) F₃(x, y)
//!                      1_{[0,2^-k)}(s) h_{[0,2^-k)}(t) dx dy ds dt
//! ```
//!
//! on dyadic step functions, together with the phase-space machinery that
//! bounds it: tiles and multitiles, the Bellman functions `B₁…B₅`, their
//! first-order differences `□B`, and the level sums `Ξ_k^±` whose
//! telescoping sandwiches `Λ_W` and yields
//! `|Λ_W| ≤ 7 ‖F₁‖₂ ‖F₂‖₄ ‖F₃‖₄`.
//!
//! All arithmetic is exact ([`ExactScalar`] is an arbitrary-precision
//! rational), so every identity and inequality can be checked with no
//! tolerance. See the crate's `examples/` directory for one runnable
//! program per capability.

pub mod bellman;
pub mod boundary;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod form_direct;
pub mod io;
pub mod scalar;
pub mod stepfun;
pub mod tiles;
pub mod triple;
pub mod verify;

pub use bellman::{
    a_form, bellman_b, box_diff, cross_terms, lambda_w_tiles, multitile_terms, xi, BellmanVector, MultitileTerms,
    PhaseSpace, Selector, Sign, SweepSummary,
};
pub use boundary::{xi_boundary_closed_form, Boundary};
pub use dyadic::{halves, xor_intervals, xor_points, DyadicInterval, DyadicPoint};
pub use error::{Error, Result};
pub use form_direct::{eval_kernel, lambda_w_direct, lambda_w_direct_capped, lambda_w_direct_truncated};
pub use io::FunctionFile;
pub use scalar::ExactScalar;
pub use stepfun::{
    bracket_1d, bracket_x, bracket_y, fwht_all_coeffs, norms, walsh_packet, walsh_packet_value, wf_expand, FreqIndex,
    StepFun1D, StepFun2D,
};
pub use tiles::{
    enumerate_multitiles, enumerate_tiles, split_horizontal, split_vertical, tile_freq, Multitile, Tile,
};
pub use triple::Triple;
