//! Adaptive filters for two-microphone noise cancellation.
//!
//! The crate provides the classical stochastic-gradient and least-squares
//! filters ([`filter`]), the sliding-window Euclidean direction search and
//! matching-pursuit affine projection filters ([`feds`]), audio/CSV plumbing
//! plus a deterministic scenario generator ([`signal`]), and the noise
//! cancellation harness that wires them together ([`anc`]).
//!
//! Every filter implements [`AdaptiveFilter`], which consumes one
//! `(input, desired)` pair per call:
//!
//! ```
//! use adaptive_anc::{AdaptiveFilter, filter::Nlms};
//!
//! let mut f = Nlms::new(4, 0.5, 1e-8).unwrap();
//! let out = f.step(0.3, 0.1).unwrap();
//! assert!((out.error - 0.1).abs() < 1e-15);
//! ```

pub mod anc;
mod error;
pub mod feds;
pub mod filter;
pub mod signal;

pub use error::{Error, Result};
pub use filter::{AdaptiveFilter, StepOutput};
