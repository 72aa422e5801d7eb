//! Polynomial threshold constructions for decision lists and their relatives.
//!
//! Every construction first works over abstract coordinates `y_i` (one per list
//! position) and then substitutes the polynomial of the `i`-th condition: a
//! literal `x` / `1 − x`, or a conjunction's 0/1 interpolator.

mod inner;
mod profile;
mod verify;

pub use inner::{
    amplification_exponent, approximator_basis, block_argument, chebyshev_degree, inner_approx,
    ApproxBasis, InnerApprox,
};
pub use profile::{rows_to_csv, tradeoff_profile, Family, TradeoffRow};
pub use verify::{verify_inner_exhaustive, verify_ptf_exhaustive, VerifyReport};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::boolean::{
    split_blocks, tree_to_rdl, DecisionList, DecisionTree, Label, Literal, ModifiedDecisionList,
    RDecisionList,
};
use crate::error::{invalid, Result};
use crate::poly::{
    conjunction_interpolator, literal_poly, log2_big, substitute_literals, IntPoly,
};

use inner::{abstract_inner, common_scale};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Exact block polynomials combined with powers of 2.
    Outer,
    /// Chebyshev block approximators combined with powers of 3.
    Compose,
    /// `Compose` with the block length chosen from `k` alone.
    Main,
    /// `Compose` over conjunction conditions.
    Rdl,
    /// Constant or other exact representation of a trivial list.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PtfMeta {
    pub construction: Construction,
    /// List length.
    pub k: usize,
    pub n: usize,
    pub h: Option<usize>,
    pub d_cheb: Option<usize>,
    pub exponent: Option<u32>,
    /// Common scale `C` of the block approximators, as a decimal string.
    pub scale: String,
    pub degree: usize,
    pub weight: String,
    pub log2_weight: f64,
}

/// An integer polynomial whose sign is meant to compute a concept.
#[derive(Clone, Debug)]
pub struct Ptf {
    pub poly: IntPoly,
    pub meta: PtfMeta,
}

impl Ptf {
    fn new(poly: IntPoly, construction: Construction, k: usize, h: Option<usize>, scale: BigInt) -> Ptf {
        let (d_cheb, exponent) = match (construction, h) {
            (Construction::Compose | Construction::Main | Construction::Rdl, Some(h)) => {
                (Some(chebyshev_degree(h)), Some(amplification_exponent(h)))
            }
            _ => (None, None),
        };
        let weight = poly.weight();
        let meta = PtfMeta {
            construction,
            k,
            n: poly.n(),
            h,
            d_cheb,
            exponent,
            scale: scale.to_string(),
            degree: poly.degree(),
            log2_weight: if weight.is_positive() { log2_big(&weight) } else { f64::NEG_INFINITY },
            weight: weight.to_string(),
        };
        Ptf { poly, meta }
    }

    pub fn weight(&self) -> BigInt {
        self.poly.weight()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// `C` as an integer.
    pub fn scale(&self) -> BigInt {
        self.meta.scale.parse().expect("scale is written from a BigInt")
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `ℓ̃_1 b_1 + (1−ℓ̃_1)ℓ̃_2 b_2 + … + (1−ℓ̃_1)⋯(1−ℓ̃_{h−1})ℓ̃_h b_h`.
pub fn modified_dl_exact_poly(f: &ModifiedDecisionList) -> Result<IntPoly> {
    let n = f.n();
    let mut out = IntPoly::zero(n);
    let mut none_fired = IntPoly::one(n);
    for &(lit, b) in f.items() {
        let l = literal_poly(lit, n)?;
        out.add_scaled(&none_fired.mul(&l)?, &int(b.value()))?;
        none_fired = none_fired.mul(&IntPoly::one(n).sub(&l)?)?;
    }
    Ok(out)
}

/// `Σ_i 2^{K−i+1} f_i + b_{k+1}` with exact block polynomials, `K = ⌈k/h⌉`.
///
/// Degree at most `h`, weight at most `4·2^{K+h}`.
pub fn outer_ptf(list: &DecisionList, h: usize) -> Result<Ptf> {
    let k = list.len();
    if k == 0 {
        let poly = IntPoly::constant(list.n(), int(list.default_label().value()));
        return Ok(Ptf::new(poly, Construction::Exact, 0, None, BigInt::one()));
    }
    if h == 0 || h > k {
        return Err(invalid(format!("outer construction needs 1 <= h <= k = {k}, got h = {h}")));
    }
    let blocks = split_blocks(list, h)?;
    let count = blocks.blocks.len() as u32;
    let mut poly = IntPoly::constant(list.n(), int(blocks.default.value()));
    for (i, f) in blocks.blocks.iter().enumerate() {
        let mult = BigInt::from(2).pow(count - i as u32);
        poly.add_scaled(&modified_dl_exact_poly(f)?, &mult)?;
    }
    Ok(Ptf::new(poly, Construction::Outer, k, Some(h), BigInt::one()))
}

/// `H = Σ_i 3^{K−i+1} p̃_i + C·b_{k+1}` over coordinates `y_1..y_k`.
fn compose_abstract(labels: &[Label], default: Label, h: usize) -> (IntPoly, BigInt) {
    let k = labels.len();
    let parts = labels.chunks(h).map(|chunk| abstract_inner(chunk, h)).collect();
    let (polys, scale) = common_scale(parts);
    let count = polys.len() as u32;
    let mut out = IntPoly::constant(k, &scale * int(default.value()));
    for (i, p) in polys.iter().enumerate() {
        let offset = i * h;
        let map: Vec<usize> = (0..p.n()).map(|j| offset + j).collect();
        let placed = p.rename(&map, k).expect("block fits in k coordinates");
        out.add_scaled(&placed, &BigInt::from(3).pow(count - i as u32)).unwrap();
    }
    (out, scale)
}

fn check_compose_range(k: usize, h: usize) -> Result<()> {
    if h < 2 || h > k {
        Err(invalid(format!("composition needs 2 <= h <= k = {k}, got h = {h}")))
    } else {
        Ok(())
    }
}

/// Outer construction with base 3 over Chebyshev block approximators.
pub fn compose_ptf(list: &DecisionList, h: usize) -> Result<Ptf> {
    let k = list.len();
    check_compose_range(k, h)?;
    let labels: Vec<Label> = list.items().iter().map(|(_, b)| *b).collect();
    let lits: Vec<Literal> = list.items().iter().map(|(l, _)| *l).collect();
    let (abstract_poly, scale) = compose_abstract(&labels, list.default_label(), h);
    let poly = substitute_literals(&abstract_poly, &lits, list.n())?;
    Ok(Ptf::new(poly, Construction::Compose, k, Some(h), scale))
}

/// Block length `max(2, round(k^{2/3} / log₂^{4/3} k))`, capped at `k`.
pub fn main_block_length(k: usize) -> usize {
    if k < 2 {
        return k;
    }
    let kf = k as f64;
    let raw = kf.powf(2.0 / 3.0) / kf.log2().powf(4.0 / 3.0);
    (raw.round() as usize).max(2).min(k)
}

/// [`compose_ptf`] at [`main_block_length`].
pub fn main_ptf(list: &DecisionList) -> Result<Ptf> {
    let k = list.len();
    if k < 2 {
        return Err(invalid(format!("main construction needs k >= 2, got {k}")));
    }
    let mut ptf = compose_ptf(list, main_block_length(k))?;
    ptf.meta.construction = Construction::Main;
    Ok(ptf)
}

/// Upper bound on the degree of `compose_ptf` for any list of length `k`
/// with block length `h`.
pub fn compose_degree_bound(k: usize, h: usize) -> usize {
    let basis = approximator_basis(h);
    basis.terms[..h.min(k)].iter().map(|p| p.degree()).max().unwrap_or(0)
}

/// Composition over abstract conditions, then each `y_i` replaced by the
/// interpolator of the `i`-th conjunction.
pub fn rdl_ptf(list: &RDecisionList, h: usize) -> Result<Ptf> {
    let k = list.len();
    check_compose_range(k, h)?;
    let labels: Vec<Label> = list.items().iter().map(|(_, b)| *b).collect();
    let (abstract_poly, scale) = compose_abstract(&labels, list.default_label(), h);
    let images = list
        .items()
        .iter()
        .map(|(c, _)| conjunction_interpolator(c, list.n()))
        .collect::<Result<Vec<_>>>()?;
    let poly = abstract_poly.substitute(&images)?;
    Ok(Ptf::new(poly, Construction::Rdl, k, Some(h), scale))
}

/// PTF for a decision tree via its rank-bounded r-decision list.
///
/// Lists shorter than 2 cannot be composed; they get the exact outer form.
pub fn tree_ptf(tree: &DecisionTree) -> Result<Ptf> {
    let list = tree_to_rdl(tree)?;
    let k = list.len();
    if k >= 2 {
        return rdl_ptf(&list, main_block_length(k));
    }
    let n = tree.n();
    let mut poly = IntPoly::constant(n, int(list.default_label().value()));
    for (c, b) in list.items() {
        poly.add_scaled(&conjunction_interpolator(c, n)?, &int(2 * b.value()))?;
    }
    Ok(Ptf::new(poly, Construction::Exact, k, None, BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::cube;
    use crate::boolean::{oddmaxbit, random_decision_list, Concept};
    use crate::poly::Monomial;

    fn ip(n: usize, terms: &[(&[usize], i64)]) -> IntPoly {
        IntPoly::from_terms(n, terms.iter().map(|(v, c)| (Monomial::from_vars(v.iter().copied()), int(*c))))
            .unwrap()
    }

    #[test]
    fn telescoping_block() {
        let f = ModifiedDecisionList::new(
            2,
            vec![(Literal::pos(0), Label::Pos), (Literal::pos(1), Label::Neg)],
        )
        .unwrap();
        let p = modified_dl_exact_poly(&f).unwrap();
        assert_eq!(p, ip(2, &[(&[0], 1), (&[1], -1), (&[0, 1], 1)]));
        for x in cube(2) {
            assert_eq!(p.eval(&x).unwrap(), int(f.eval(&x).unwrap()));
        }
        let g = ModifiedDecisionList::new(1, vec![(Literal::pos(0), Label::Pos)]).unwrap();
        assert_eq!(modified_dl_exact_poly(&g).unwrap(), ip(1, &[(&[0], 1)]));
    }

    #[test]
    fn telescoping_weight_bound() {
        for seed in 0..100u64 {
            let h = 1 + (seed as usize % 8);
            let l = random_decision_list(h, h + 2, seed).unwrap();
            let f = ModifiedDecisionList::new(l.n(), l.items().to_vec()).unwrap();
            let p = modified_dl_exact_poly(&f).unwrap();
            assert!(p.degree() <= h);
            assert!(p.weight() <= BigInt::one() << (h + 1));
            for x in cube(l.n()) {
                assert_eq!(p.eval(&x).unwrap(), int(f.eval(&x).unwrap()));
            }
        }
    }

    #[test]
    fn outer_edge_cases() {
        let empty = DecisionList::new(3, vec![], Label::Neg).unwrap();
        let p = outer_ptf(&empty, 2).unwrap();
        assert_eq!(p.poly, IntPoly::constant(3, int(-1)));
        let l = random_decision_list(9, 9, 4).unwrap();
        let p = outer_ptf(&l, 3).unwrap();
        assert!(p.degree() <= 3);
        assert!(p.weight() <= int(4 << 6));
        let single = outer_ptf(&l, 9).unwrap();
        assert!(single.weight() <= int(4 << 10));
        assert!(outer_ptf(&l, 0).is_err());
        assert!(outer_ptf(&l, 10).is_err());
    }

    #[test]
    fn compose_small_lists() {
        for seed in 0..20 {
            let l = random_decision_list(6, 6, seed).unwrap();
            for h in 2..=6 {
                let p = compose_ptf(&l, h).unwrap();
                let r = verify_ptf_exhaustive(&p, &Concept::from(l.clone()), 22).unwrap();
                assert!(r.valid, "seed {seed} h {h}: {r:?}");
            }
        }
        let l = random_decision_list(4, 5, 0).unwrap();
        assert!(compose_ptf(&l, 1).is_err());
        assert!(compose_ptf(&l, 5).is_err());
    }

    #[test]
    fn main_block_lengths() {
        assert_eq!(main_block_length(2), 2);
        assert_eq!(main_block_length(8), 2);
        assert_eq!(main_block_length(27), 2);
        let l = oddmaxbit(8).unwrap();
        let p = main_ptf(&l).unwrap();
        assert_eq!(p.meta.h, Some(2));
        assert!(p.degree() <= 2 * 2 * 2);
        assert!(main_ptf(&oddmaxbit(1).unwrap()).is_err());
    }

    #[test]
    fn width_one_rdl_matches_compose() {
        for seed in 0..5 {
            let l = random_decision_list(7, 9, seed).unwrap();
            for h in 2..=7 {
                let a = compose_ptf(&l, h).unwrap();
                let b = rdl_ptf(&l.to_rdl(), h).unwrap();
                assert_eq!(a.poly, b.poly);
            }
        }
    }
}
