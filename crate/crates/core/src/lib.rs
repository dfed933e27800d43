//! Exact verification of the degenerate-Whittaker dimension identity for
//! `GL_3n(F_q)` cuspidal representations.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: Laurent polynomials and rational functions in `q` over big integers.
//! * [`qseries`]: `q`-Pochhammer products, truncated series in `x`, and the
//!   summation kernel for sums of `q`-hypergeometric terms.
//! * [`identity`]: both sides of every displayed identity and the proof chains.
//! * [`gf`]: small finite fields, matrices over them, and enumeration oracles.
//! * [`jacquet`]: the dimension of the twisted Jacquet module computed three ways.
//!
//! Data-parallel loops go through [`Exec`]; with the default `parallel` feature
//! they run on rayon, otherwise sequentially.

pub mod exact;
pub mod exec;
pub mod gf;
pub mod identity;
pub mod jacquet;
pub mod qseries;

pub use exec::Exec;
