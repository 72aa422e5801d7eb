//! Chebyshev-amplified approximator for modified decision lists.
//!
//! For a block of nominal length `h` over coordinates `y_1..y_h`:
//!
//! * `A_i = h − i + y_i + Σ_{j<i} (1 − y_j)` equals `h` exactly when `T_i` fires,
//! * `q(t) = C_d(t·(1 + 1/h))` with `d = ⌈√h⌉`,
//! * `P_i = (q(A_i/h) / q(1))^e` with `e = max(2, 2⌈log₂ h⌉)`,
//! * `p = Σ b_i P_i − (Σ b_i P_i)(0)`, then cleared to integers.
//!
//! The `P_i` depend only on `(h, i)`, so they are built once per `h` and shared.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::boolean::{Label, Literal, ModifiedDecisionList};
use crate::error::{invalid, Result};
use crate::poly::{
    chebyshev, substitute_literals, IntPoly, Monomial,
    SparsePoly, UniPoly,
};

/// `⌈√h⌉`.
pub fn chebyshev_degree(h: usize) -> usize {
    let mut d = 0;
    while d * d < h {
        d += 1;
    }
    d
}

/// `max(2, 2⌈log₂ h⌉)`: even, and `(1/2)^e ≤ 1/h²`.
pub fn amplification_exponent(h: usize) -> u32 {
    let ceil_log2 = usize::BITS - (h.max(1) - 1).leading_zeros();
    (2 * ceil_log2).max(2)
}

/// The label-independent pieces of the approximator for one block length.
#[derive(Debug)]
pub struct ApproxBasis {
    pub h: usize,
    pub d: usize,
    pub e: u32,
    /// `q(t) = C_d(t(1 + 1/h))`.
    pub q: UniPoly<BigRational>,
    /// `q(1)`.
    pub q_at_one: BigRational,
    /// `P_1..P_h` over `h` coordinates.
    pub terms: Vec<SparsePoly>,
    /// Least common denominator of every coefficient of every `P_i`.
    pub denominator: BigInt,
    /// `denominator · P_i`.
    pub scaled_terms: Vec<IntPoly>,
}

/// `A_i` (1-based `i`) over `h` coordinates.
pub fn block_argument(h: usize, i: usize) -> SparsePoly {
    assert!(1 <= i && i <= h, "A_i needs 1 <= i <= h");
    let mut a = SparsePoly::constant(h, BigRational::from_integer(BigInt::from(h - 1)));
    a.add_term(Monomial::var(i - 1), BigRational::one());
    for j in 0..i - 1 {
        a.add_term(Monomial::var(j), -BigRational::one());
    }
    a
}

fn build_basis(h: usize) -> ApproxBasis {
    let d = chebyshev_degree(h);
    let e = amplification_exponent(h);
    let hr = BigRational::from_integer(BigInt::from(h));
    let stretch = (hr.clone() + BigRational::one()) / hr.clone();
    let q = chebyshev(d).to_rational().compose_affine(&stretch, &BigRational::zero());
    let q_at_one = q.eval(&BigRational::one());
    // g(a) = (q(a/h) / q(1))^e, applied to the integer-valued A_i
    let g = q
        .compose_affine(&(BigRational::one() / hr), &BigRational::zero())
        .scale(&(BigRational::one() / q_at_one.clone()))
        .pow(e);
    let terms: Vec<SparsePoly> = (1..=h).map(|i| expand_block_term(&g, h, i)).collect();
    let denominator = terms
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let factor = BigRational::from_integer(denominator.clone());
    let scaled_terms = terms
        .iter()
        .map(|p| p.scale(&factor).to_integer().expect("common denominator clears P_i"))
        .collect();
    ApproxBasis { h, d, e, q, q_at_one, terms, denominator, scaled_terms }
}

/// Multilinear expansion of `g(A_i)` over `h` coordinates.
///
/// `A_i = h − 1 + y_i − S` with `S = Σ_{j<i} y_j`, so on the cube `g(A_i)` is a
/// function `φ(S, y_i)`. The coefficient of `y_T` is then the `|T ∖ {i}|`-th
/// forward difference of `φ(·, 0)` (or of `φ(·, 1) − φ(·, 0)` when `i ∈ T`).
/// Equal to `compose_univariate(g, A_i)`, without the `2^i`-term Horner passes.
fn expand_block_term(g: &UniPoly<BigRational>, h: usize, i: usize) -> SparsePoly {
    let at = |a: i64| g.eval(&BigRational::from_integer(BigInt::from(a)));
    let base = h as i64 - 1;
    let off: Vec<BigRational> = (0..i as i64).map(|s| at(base - s)).collect();
    let on: Vec<BigRational> = (0..i as i64).map(|s| at(base + 1 - s)).collect();
    let jump: Vec<BigRational> = on.iter().zip(&off).map(|(a, b)| a - b).collect();
    let without = forward_differences(off);
    let with = forward_differences(jump);
    let last = Monomial::var(i - 1);
    let terms = (0u128..1 << (i - 1)).flat_map(|mask| {
        let m = Monomial::from_mask(mask);
        let deg = m.degree();
        [(m, without[deg].clone()), (m.times(last), with[deg].clone())]
    });
    SparsePoly::from_terms(h, terms).expect("monomials within h coordinates")
}

/// `[Δ^0 v(0), Δ^1 v(0), …]`.
fn forward_differences(mut v: Vec<BigRational>) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(v.len());
    while !v.is_empty() {
        out.push(v[0].clone());
        v = v.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Shared basis for block length `h ≥ 1`.
pub fn approximator_basis(h: usize) -> Arc<ApproxBasis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ApproxBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&h) {
        return Arc::clone(b);
    }
    let basis = Arc::new(build_basis(h));
    Arc::clone(cache.lock().unwrap().entry(h).or_insert(basis))
}

/// The approximator `p̃` with its scale `C`: `|p̃ − C·f| ≤ C/h` and `p̃(0) = 0`.
#[derive(Clone, Debug)]
pub struct InnerApprox {
    pub poly: IntPoly,
    pub scale: BigInt,
    pub h: usize,
    pub d: usize,
    pub e: u32,
}

/// Approximator over abstract coordinates `y_1..y_m` for labels `b_1..b_m`,
/// built with nominal block length `h ≥ m`. A short block is the full-length
/// construction with the missing labels set to zero.
pub(crate) fn abstract_inner(labels: &[Label], h: usize) -> (IntPoly, BigInt) {
    debug_assert!(labels.len() <= h && h >= 1);
    let basis = approximator_basis(h);
    let m = labels.len();
    // R = Σ b_i P_i = N / D with N integral; in lowest terms the lcm of the
    // coefficient denominators is D / gcd(D, content(N)).
    let mut numer = IntPoly::zero(h);
    for (p, b) in basis.scaled_terms.iter().zip(labels) {
        numer.add_scaled(p, &BigInt::from(b.value())).unwrap();
    }
    let n0 = numer.constant_term();
    numer.add_term(Monomial::ONE, -n0);
    let g = numer.terms().fold(basis.denominator.clone(), |acc, (_, c)| acc.gcd(c));
    let scale = &basis.denominator / &g;
    let poly = if g.is_one() { numer } else { numer.scale_down(&g) };
    let poly = poly.with_ambient(m).expect("P_i for i <= m only uses y_1..y_i");
    (poly, scale)
}

/// Rescales approximators to a common `C = lcm(C_i)`.
pub(crate) fn common_scale(parts: Vec<(IntPoly, BigInt)>) -> (Vec<IntPoly>, BigInt) {
    let scale = parts.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c));
    let polys = parts
        .into_iter()
        .map(|(p, c)| p.scale(&(&scale / &c)))
        .collect();
    (polys, scale)
}

/// Inner approximator for a modified decision list of length `h ≥ 2`.
pub fn inner_approx(f: &ModifiedDecisionList) -> Result<InnerApprox> {
    let h = f.len();
    if h < 2 {
        return Err(invalid(format!("inner approximator needs h >= 2, got {h}")));
    }
    let labels: Vec<Label> = f.items().iter().map(|(_, b)| *b).collect();
    let lits: Vec<Literal> = f.items().iter().map(|(l, _)| *l).collect();
    let (abstract_poly, scale) = abstract_inner(&labels, h);
    let poly = substitute_literals(&abstract_poly, &lits, f.n())?;
    let basis = approximator_basis(h);
    Ok(InnerApprox { poly, scale, h, d: basis.d, e: basis.e })
}
