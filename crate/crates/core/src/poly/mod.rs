//! Exact multilinear polynomial arithmetic over `{0,1}^n`.

mod monomial;
mod sparse;
mod univariate;

pub use monomial::{Monomial, MAX_VARS};
pub use sparse::{log2_big, Coeff, IntPoly, Poly, SparsePoly};
pub(crate) use sparse::lex_slot;
pub use univariate::{chebyshev, compose_univariate, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::boolean::{Conjunction, Literal};
use crate::error::{Error, Result};

/// Returns `(C·p, C)` with `C` the lcm of the coefficient denominators.
pub fn clear_denominators(p: &SparsePoly) -> (IntPoly, BigInt) {
    let scale = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let cleared = p
        .scale(&BigRational::from_integer(scale.clone()))
        .to_integer()
        .expect("lcm clears every denominator");
    (cleared, scale)
}

/// `x` for a positive literal, `1 − x` for a negated one.
pub fn literal_poly(lit: Literal, n: usize) -> Result<IntPoly> {
    let x = IntPoly::var(n, lit.var)?;
    Ok(if lit.negated { IntPoly::one(n).sub(&x)? } else { x })
}

/// The 0/1 indicator of a conjunction: the product of its literal polynomials.
pub fn conjunction_interpolator(c: &Conjunction, n: usize) -> Result<IntPoly> {
    c.literals()
        .iter()
        .try_fold(IntPoly::one(n), |acc, &lit| acc.mul(&literal_poly(lit, n)?))
}

/// Substitutes the literal polynomial of `lits[i]` for `y_{i+1}` and lands in
/// ambient dimension `n`. Same result as [`Poly::substitute`] with
/// [`literal_poly`] images.
pub fn substitute_literals(p: &IntPoly, lits: &[Literal], n: usize) -> Result<IntPoly> {
    if lits.len() != p.n() {
        return Err(Error::AmbientMismatch(lits.len(), p.n()));
    }
    let k = p.n();
    let mut out = IntPoly::zero(n);
    if k <= 16 {
        // dense sweep: for each negated y_j, y_j·m = (1 − x)·m splits each term in two
        let mut dense = vec![BigInt::zero(); 1 << k];
        for (m, c) in p.terms() {
            dense[m.mask() as usize] = c.clone();
        }
        for (j, lit) in lits.iter().enumerate() {
            if !lit.negated {
                continue;
            }
            let bit = 1usize << j;
            for mask in 0..dense.len() {
                if mask & bit != 0 && !dense[mask].is_zero() {
                    let v = std::mem::take(&mut dense[mask]);
                    dense[mask ^ bit] += &v;
                    dense[mask] = -v;
                }
            }
        }
        for (mask, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                let m = Monomial::from_vars(Monomial::from_mask(mask as u128).vars().map(|j| lits[j].var));
                check_var_in(m, n)?;
                out.add_term(m, c);
            }
        }
        return Ok(out);
    }
    for (m, c) in p.terms() {
        let (neg, pos): (Vec<usize>, Vec<usize>) = m.vars().partition(|&j| lits[j].negated);
        let base = Monomial::from_vars(pos.iter().map(|&j| lits[j].var));
        for subset in 0u64..(1 << neg.len()) {
            let mut mono = base;
            for (t, &j) in neg.iter().enumerate() {
                if subset >> t & 1 == 1 {
                    mono = mono.times(Monomial::var(lits[j].var));
                }
            }
            check_var_in(mono, n)?;
            let coeff = if subset.count_ones() % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(mono, coeff);
        }
    }
    Ok(out)
}

fn check_var_in(m: Monomial, n: usize) -> Result<()> {
    if m.span() > n {
        Err(Error::VariableOutOfRange { index: m.span() - 1, n })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{cube, parse_bits};
    use crate::boolean::Literal;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_poly(n: usize, terms: &[(&[usize], i64)]) -> IntPoly {
        IntPoly::from_terms(
            n,
            terms.iter().map(|(vs, c)| (Monomial::from_vars(vs.iter().copied()), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn multilinear_square() {
        let x = IntPoly::var(1, 0).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x);
        assert_eq!(x.pow(0), IntPoly::one(1));
        assert_eq!(x.pow(5), x);
    }

    #[test]
    fn evaluation() {
        let p = int_poly(1, &[(&[0], 2), (&[], -1)]);
        assert_eq!(p.eval(&[true]).unwrap(), BigInt::from(1));
        assert_eq!(p.eval(&[false]).unwrap(), BigInt::from(-1));
        let c = IntPoly::constant(3, BigInt::from(7));
        for x in cube(3) {
            assert_eq!(c.eval(&x).unwrap(), BigInt::from(7));
        }
        assert!(p.eval(&[true, false]).is_err());
    }

    #[test]
    fn ambient_mismatch() {
        let a = IntPoly::one(2);
        let b = IntPoly::one(3);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn weight_and_degree() {
        let p = int_poly(2, &[(&[0, 1], 3), (&[], -2)]);
        assert_eq!(p.weight(), BigInt::from(5));
        assert_eq!(p.degree(), 2);
        let z = IntPoly::zero(4);
        assert_eq!(z.weight(), BigInt::zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn clearing_denominators() {
        let p = SparsePoly::from_terms(
            1,
            [(Monomial::var(0), rat(1, 2)), (Monomial::ONE, rat(1, 3))],
        )
        .unwrap();
        let (q, c) = clear_denominators(&p);
        assert_eq!(c, BigInt::from(6));
        assert_eq!(q, int_poly(1, &[(&[0], 3), (&[], 2)]));
        let ip = int_poly(2, &[(&[0], 4), (&[1], -1)]);
        assert_eq!(clear_denominators(&ip.to_rational()), (ip, BigInt::one()));
    }

    #[test]
    fn literals_and_conjunctions() {
        let nl = literal_poly(Literal::neg(1), 2).unwrap();
        assert_eq!(nl, int_poly(2, &[(&[], 1), (&[1], -1)]));
        let c = Conjunction::new(vec![Literal::pos(0), Literal::neg(1)]).unwrap();
        let p = conjunction_interpolator(&c, 2).unwrap();
        assert_eq!(p, int_poly(2, &[(&[0], 1), (&[0, 1], -1)]));
        assert_eq!(p.weight(), BigInt::from(2));
        assert_eq!(conjunction_interpolator(&Conjunction::default(), 3).unwrap(), IntPoly::one(3));
    }

    #[test]
    fn conjunction_interpolator_is_indicator() {
        for w in 0..=5usize {
            let lits = (0..w).map(|v| Literal { var: v, negated: v % 2 == 1 }).collect();
            let c = Conjunction::new(lits).unwrap();
            let p = conjunction_interpolator(&c, 6).unwrap();
            assert!(p.degree() <= w);
            assert!(p.weight() <= BigInt::one() << w);
            for x in cube(6) {
                assert_eq!(p.eval(&x).unwrap(), BigInt::from(c.eval(&x) as i64));
            }
        }
    }

    #[test]
    fn text_form() {
        let p = int_poly(3, &[(&[1, 0], 3), (&[], -2), (&[2], 1)]);
        let text = p.to_string();
        assert_eq!(text, "-2\n+1 * x_3\n+3 * x_1 * x_2\n");
        assert_eq!(IntPoly::parse(3, &text).unwrap(), p);
        assert_eq!(IntPoly::zero(2).to_string(), "0\n");
        assert!(IntPoly::parse(2, "+1 * x_3").is_err());
        let r = SparsePoly::from_terms(1, [(Monomial::var(0), rat(-3, 2))]).unwrap();
        assert_eq!(SparsePoly::parse(1, &r.to_string()).unwrap(), r);
    }

    #[test]
    fn cube_values_match_pointwise() {
        let p = int_poly(4, &[(&[0, 3], 5), (&[], -2), (&[2], 1), (&[1, 2, 3], -7)]);
        let vals = p.cube_values();
        let signs = p.cube_signs();
        for (i, x) in cube(4).enumerate() {
            let v = p.eval(&x).unwrap();
            assert_eq!(vals[i], v);
            assert_eq!(signs[i] as i64, if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 });
        }
        assert_eq!(p.eval(&parse_bits("1001").unwrap()).unwrap(), BigInt::from(3));
    }

    #[test]
    fn literal_substitution_matches_generic() {
        let p = int_poly(3, &[(&[], 2), (&[0], -3), (&[0, 2], 5), (&[0, 1, 2], 7)]);
        let lits = [Literal::neg(4), Literal::pos(1), Literal::neg(0)];
        let images: Vec<IntPoly> = lits.iter().map(|&l| literal_poly(l, 5).unwrap()).collect();
        let generic = p.substitute(&images).unwrap();
        assert_eq!(substitute_literals(&p, &lits, 5).unwrap(), generic);
        for x in cube(5) {
            let y: Vec<bool> = lits.iter().map(|l| l.fires(&x)).collect();
            assert_eq!(generic.eval(&x).unwrap(), p.eval(&y).unwrap());
        }
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((0u128..(1 << n), -6i64..=6, 1i64..=4), 0..6).prop_map(move |ts| {
            SparsePoly::from_terms(n, ts.into_iter().map(|(m, a, b)| (Monomial::from_mask(m), rat(a, b))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_is_pointwise(p in arb_poly(6), q in arb_poly(6)) {
            let pq = p.mul(&q).unwrap();
            for x in cube(6) {
                prop_assert_eq!(pq.eval(&x).unwrap(), p.eval(&x).unwrap() * q.eval(&x).unwrap());
            }
        }

        #[test]
        fn ring_laws(p in arb_poly(4), q in arb_poly(4), r in arb_poly(4)) {
            prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
            prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
            prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
            prop_assert_eq!(p.pow(3), p.mul(&p).unwrap().mul(&p).unwrap());
        }

        #[test]
        fn composition_is_pointwise(
            q in prop::collection::vec((-5i64..=5, 1i64..=3), 0..5),
            a in arb_poly(5),
        ) {
            let q = UniPoly::new(q.into_iter().map(|(n, d)| rat(n, d)).collect());
            let qa = compose_univariate(&q, &a);
            for x in cube(5) {
                prop_assert_eq!(qa.eval(&x).unwrap(), q.eval(&a.eval(&x).unwrap()));
            }
        }

        #[test]
        fn cleared_denominators_are_exact_and_minimal(p in arb_poly(5)) {
            let (q, c) = clear_denominators(&p);
            prop_assert!(c.is_positive());
            let cr = BigRational::from_integer(c.clone());
            for x in cube(5) {
                prop_assert_eq!(BigRational::from_integer(q.eval(&x).unwrap()), cr.clone() * p.eval(&x).unwrap());
            }
            for prime in [2u32, 3, 5, 7] {
                let prime = BigInt::from(prime);
                if (&c % &prime).is_zero() {
                    let divisible = q.terms().all(|(_, a)| (a % &prime).is_zero());
                    prop_assert!(!divisible, "C = {} not minimal", c);
                }
            }
        }
    }
}
