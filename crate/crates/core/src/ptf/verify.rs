use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{InnerApprox, Ptf};
use crate::bits::{format_bits, point};
use crate::boolean::{Concept, ModifiedDecisionList};
use crate::error::{Error, Result};

/// Outcome of an exhaustive check over `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub domain_size: u64,
    /// Inputs where the check failed, zero hits included.
    pub mismatches: u64,
    /// Inputs where the polynomial vanished.
    pub zero_hits: u64,
    /// Lexicographically first failing input, `x_1` leftmost.
    pub first_witness: Option<String>,
    /// Largest `|p̃(x) − C·f(x)| / C`, for approximator checks.
    pub max_error: Option<String>,
    pub degree: usize,
    pub weight: String,
    pub valid: bool,
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::ExhaustionLimit { n, limit })
    } else {
        Ok(())
    }
}

/// Checks `sign(p(x)) = concept(x)` on every input; `p(x) = 0` always fails.
pub fn verify_ptf_exhaustive(ptf: &Ptf, concept: &Concept, limit: usize) -> Result<VerifyReport> {
    let n = concept.n();
    if ptf.poly.n() != n {
        return Err(Error::AmbientMismatch(ptf.poly.n(), n));
    }
    check_limit(n, limit)?;
    let signs = ptf.poly.cube_signs();
    let (mismatches, zero_hits, first) = signs
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let want = concept.eval_unchecked(&point(idx as u64, n));
            let bad = s as i64 != want || s == 0;
            (bad as u64, (s == 0) as u64, if bad { idx } else { usize::MAX })
        })
        .reduce(|| (0, 0, usize::MAX), |a, b| (a.0 + b.0, a.1 + b.1, a.2.min(b.2)));
    Ok(VerifyReport {
        n,
        domain_size: signs.len() as u64,
        mismatches,
        zero_hits,
        first_witness: (first != usize::MAX).then(|| format_bits(&point(first as u64, n))),
        max_error: None,
        degree: ptf.degree(),
        weight: ptf.weight().to_string(),
        valid: mismatches == 0,
    })
}

/// Checks `|p̃(x) − C·f(x)| ≤ C/h` everywhere, and `p̃(x) = 0` exactly where
/// no literal of `f` fires (the origin, for positive literals).
pub fn verify_inner_exhaustive(
    approx: &InnerApprox,
    f: &ModifiedDecisionList,
    limit: usize,
) -> Result<VerifyReport> {
    let n = f.n();
    if approx.poly.n() != n {
        return Err(Error::AmbientMismatch(approx.poly.n(), n));
    }
    check_limit(n, limit)?;
    let values = approx.poly.cube_values();
    let c = &approx.scale;
    let h = BigInt::from(approx.h);
    let mut mismatches = 0u64;
    let mut zero_hits = 0u64;
    let mut first = None;
    let mut worst = BigInt::zero();
    for (idx, v) in values.iter().enumerate() {
        let x = point(idx as u64, n);
        let fx = f.eval_unchecked(&x);
        let err = (v - c * fx).abs();
        let bad = &err * &h > *c || (fx == 0 && !v.is_zero());
        if v.is_zero() {
            zero_hits += 1;
        }
        if bad {
            mismatches += 1;
            first.get_or_insert(idx);
        }
        worst = worst.max(err);
    }
    Ok(VerifyReport {
        n,
        domain_size: values.len() as u64,
        mismatches,
        zero_hits,
        first_witness: first.map(|i| format_bits(&point(i as u64, n))),
        max_error: Some(BigRational::new(worst, c.clone()).to_string()),
        degree: approx.poly.degree(),
        weight: approx.poly.weight().to_string(),
        valid: mismatches == 0,
    })
}
