//! Bit-vector helpers. Inputs are `&[bool]` with `x[0]` standing for `x_1`.
//!
//! Enumeration of the cube is lexicographic in the printed string, so `x_1`
//! is the most significant position of the lex index.

use crate::error::{Error, Result};

/// Environment variable overriding the default exhaustion limit.
pub const EXHAUSTION_LIMIT_ENV: &str = "PTFLAB_EXHAUSTION_LIMIT";

/// Default upper bound on `n` for exhaustive enumeration of `{0,1}^n`.
pub const DEFAULT_EXHAUSTION_LIMIT: usize = 22;

/// The exhaustion limit, honoring [`EXHAUSTION_LIMIT_ENV`] when it parses.
pub fn exhaustion_limit() -> usize {
    std::env::var(EXHAUSTION_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXHAUSTION_LIMIT)
}

pub fn check_len(x: &[bool], n: usize) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n, got: x.len() })
    }
}

/// The point of `{0,1}^n` at position `index` in lexicographic order.
pub fn point(index: u64, n: usize) -> Vec<bool> {
    (0..n).map(|j| (index >> (n - 1 - j)) & 1 == 1).collect()
}

/// Inverse of [`point`].
pub fn lex_index(x: &[bool]) -> u64 {
    x.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// All of `{0,1}^n` in lexicographic order.
pub fn cube(n: usize) -> impl Iterator<Item = Vec<bool>> {
    assert!(n < 64, "cube dimension {n} too large");
    (0..1u64 << n).map(move |i| point(i, n))
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
        })
        .collect()
}

pub fn format_bits(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
