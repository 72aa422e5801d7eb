//! Polynomial threshold functions for decision lists, Expanded-Winnow, and
//! restriction-based parity learning, all in exact arithmetic.
//!
//! * [`boolean`]: concept classes and conversions between them.
//! * [`poly`]: exact multilinear polynomials over `{0,1}^n`.
//! * [`ptf`]: threshold constructions and their exhaustive verifiers.
//! * [`winnow`]: online learners over monomial features.
//! * [`parity`]: bit-packed GF(2) elimination and the parity learners.

pub mod bits;
pub mod boolean;
pub mod error;
pub mod parity;
pub mod poly;
pub mod ptf;
pub mod rng;
pub mod winnow;

pub use error::{Error, Result};
