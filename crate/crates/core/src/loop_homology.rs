//! Loop homology `ℍ*(LM; Q) = Λ(a_1..a_r) ⊗ Q[u_1..u_r]`.
//!
//! `a_i` is odd of degree `-d_i`, `u_i` is even of degree `d_i - 1`. The BV
//! operator is the second order operator `Δ = Σ_i ∂/∂u_i ∘ ∂/∂a_i`, where
//! `∂/∂a_i` is a left derivative. The loop bracket is whatever makes the
//! BV identity hold:
//!
//! ```text
//! {b, c} = (-1)^|b| (Δ(b·c) - Δb·c - (-1)^|b| b·Δc)
//! ```

use crate::algebra::{Mutation, StringAlgebra};
use crate::error::{AlgebraError, Result};
use crate::kernel::{rat, Element, GeneratorTag, Ring};

impl StringAlgebra {
    /// The odd generator `a_i` (one-based).
    pub fn a(&self, i: usize) -> Element {
        Element::generator(GeneratorTag::odd(i, Ring::LoopHomology), self.rank())
            .expect("generator index in range")
    }

    /// The even generator `u_i` (one-based).
    pub fn u(&self, i: usize) -> Element {
        let tag = GeneratorTag::even(i, Ring::LoopHomology).expect("loop ring has u");
        Element::generator(tag, self.rank()).expect("generator index in range")
    }

    /// The unit `s_*[M]` of the loop product.
    pub fn loop_unit(&self) -> Element {
        self.one(Ring::LoopHomology)
    }

    pub fn check_loop(&self, x: &Element) -> Result<()> {
        self.model().check_rank(x)?;
        if x.ring() != Ring::LoopHomology {
            return Err(AlgebraError::RingMismatch {
                expected: Ring::LoopHomology,
                found: x.ring(),
            });
        }
        Ok(())
    }

    pub fn loop_product(&self, b: &Element, c: &Element) -> Element {
        self.expect_ring(b, Ring::LoopHomology, "loop product");
        self.expect_ring(c, Ring::LoopHomology, "loop product");
        b * c
    }

    pub fn bv_delta(&self, b: &Element) -> Element {
        self.expect_ring(b, Ring::LoopHomology, "Δ");
        let unsigned = self.has(Mutation::UnsignedOddDerivative);
        let no_factor = self.has(Mutation::DroppedExponentFactor);
        b.map_terms(|m, c| {
            let mut out = self.zero(Ring::LoopHomology);
            for i in m.odd_indices() {
                let k = m.exponents()[i];
                if k == 0 {
                    continue;
                }
                let negative = !unsigned && m.odd_before(i) % 2 == 1;
                let factor = if no_factor { rat(1) } else { rat(k.into()) };
                let coeff = c * factor;
                out.add_term(
                    m.without_odd(i).with_exponent(i, k - 1),
                    if negative { -coeff } else { coeff },
                );
            }
            out
        })
    }

    /// The loop bracket, extended bilinearly over parity components.
    pub fn loop_bracket(&self, b: &Element, c: &Element) -> Element {
        self.expect_ring(b, Ring::LoopHomology, "bracket");
        self.expect_ring(c, Ring::LoopHomology, "bracket");
        let mut out = self.zero(Ring::LoopHomology);
        for (p, bp) in b.parity_parts().iter().enumerate() {
            if bp.is_zero() {
                continue;
            }
            let delta_b = self.bv_delta(bp);
            for (q, cq) in c.parity_parts().iter().enumerate() {
                if cq.is_zero() {
                    continue;
                }
                let sign_parity = if self.has(Mutation::BracketWrongParity) {
                    q
                } else {
                    p
                };
                let delta_cq = self.bv_delta(cq);
                let mut inner = self.bv_delta(&(bp * cq));
                if !self.has(Mutation::BracketDropsLeftDelta) {
                    inner -= &(&delta_b * cq);
                }
                inner -= &(bp * &delta_cq).signed(sign_parity == 1);
                let term = inner.signed(sign_parity == 1);
                out += &term.signed(self.has(Mutation::BracketSignFlip));
            }
        }
        out
    }

    /// Includes an intersection-ring class of `M` (an exterior loop class)
    /// as a class of constant loops.
    pub fn s_star(&self, x: &Element) -> Result<Element> {
        self.check_loop(x)?;
        if !x.is_exterior() {
            return Err(AlgebraError::NotInSubring {
                what: x.to_string(),
                subring: "intersection ring of M (exterior in a_i)",
            });
        }
        Ok(x.clone())
    }

    pub fn is_constant_loop_class(&self, b: &Element) -> bool {
        b.ring() == Ring::LoopHomology && b.is_exterior()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Monomial, Rational};
    use crate::model::ModelSpec;

    fn s3() -> StringAlgebra {
        StringAlgebra::new(ModelSpec::sphere(3).unwrap())
    }

    fn su3() -> StringAlgebra {
        StringAlgebra::new(ModelSpec::special_unitary(3).unwrap())
    }

    /// Δ computed by writing the monomial as a word and differentiating
    /// letter by letter from the left: ∂/∂a_i picks up (-1)^(number of odd
    /// letters passed), then ∂/∂u_i multiplies by the exponent.
    fn delta_by_word(alg: &StringAlgebra, odd: &[usize], exps: &[u32]) -> Element {
        let rank = alg.rank();
        let mut out = alg.zero(Ring::LoopHomology);
        for (pos, &i) in odd.iter().enumerate() {
            if exps[i] == 0 {
                continue;
            }
            let rest: Vec<usize> = odd.iter().copied().filter(|&j| j != i).collect();
            let mut e = exps.to_vec();
            e[i] -= 1;
            let sign = if pos % 2 == 1 { -1 } else { 1 };
            out.add_term(
                Monomial::new(&rest, e),
                Rational::from_integer((sign * exps[i] as i64).into()),
            );
        }
        assert_eq!(out.rank(), rank);
        out
    }

    #[test]
    fn loop_product_examples() {
        let alg = s3();
        let (a1, u1) = (alg.a(1), alg.u(1));
        assert_eq!(alg.loop_product(&a1, &u1).to_string(), "a1*u1");
        assert_eq!(alg.loop_product(&alg.loop_unit(), &u1), u1);
        assert!(alg.loop_product(&a1, &a1).is_zero());
    }

    #[test]
    fn delta_on_sphere() {
        let alg = s3();
        let (a1, u1) = (alg.a(1), alg.u(1));
        for k in 1..=6u32 {
            let x = &a1 * &u1.pow(k);
            assert_eq!(alg.bv_delta(&x), delta_by_word(&alg, &[0], &[k]));
            assert_eq!(alg.bv_delta(&x), u1.pow(k - 1).scale_int(k.into()));
            assert!(alg.bv_delta(&u1.pow(k)).is_zero());
        }
        assert!(alg.bv_delta(&a1).is_zero());
        assert!(alg.bv_delta(&alg.loop_unit()).is_zero());
    }

    #[test]
    fn delta_sign_from_passing_odd_generator() {
        let alg = su3();
        let x = &(&alg.a(1) * &alg.a(2)) * &alg.u(2);
        assert_eq!(alg.bv_delta(&x), -alg.a(1));
        assert_eq!(alg.bv_delta(&x), delta_by_word(&alg, &[0, 1], &[0, 1]));
        let y = &(&alg.a(1) * &alg.a(2)) * &(&alg.u(1) * &alg.u(2));
        assert_eq!(alg.bv_delta(&y), delta_by_word(&alg, &[0, 1], &[1, 1]));
        assert!(alg.bv_delta(&alg.bv_delta(&y)).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let alg = s3();
        let (a1, u1) = (alg.a(1), alg.u(1));
        assert_eq!(alg.loop_bracket(&a1, &u1), alg.loop_unit().scale_int(-1));
        assert!(alg.loop_bracket(&a1, &a1).is_zero());
        for k in 1..=5u32 {
            let expected = u1.pow(k - 1).scale_int(-(k as i64));
            assert_eq!(alg.loop_bracket(&a1, &u1.pow(k)), expected);
        }
    }

    #[test]
    fn bracket_of_a_with_u_power_by_poisson_induction() {
        // {a, u^k} = {a, u}·u^(k-1) + u·{a, u^(k-1)} since u is even.
        let alg = s3();
        let (a1, u1) = (alg.a(1), alg.u(1));
        let mut previous = alg.loop_bracket(&a1, &u1);
        for k in 2..=5u32 {
            let induced = &(&alg.loop_bracket(&a1, &u1) * &u1.pow(k - 1)) + &(&u1 * &previous);
            let direct = alg.loop_bracket(&a1, &u1.pow(k));
            assert_eq!(direct, induced);
            previous = direct;
        }
    }

    #[test]
    fn bracket_pairs_a_with_u_diagonally() {
        let alg = su3();
        for i in 1..=2 {
            for j in 1..=2 {
                let expected = if i == j {
                    alg.loop_unit().scale_int(-1)
                } else {
                    alg.zero(Ring::LoopHomology)
                };
                assert_eq!(alg.loop_bracket(&alg.a(i), &alg.u(j)), expected);
            }
        }
    }

    #[test]
    fn constant_loop_classes() {
        let alg = su3();
        let a12 = &alg.a(1) * &alg.a(2);
        assert_eq!(alg.s_star(&alg.loop_unit()).unwrap(), alg.loop_unit());
        assert_eq!(alg.s_star(&a12).unwrap(), a12);
        assert!(!alg.is_constant_loop_class(&alg.u(1)));
        assert!(alg.is_constant_loop_class(&a12));
        assert!(alg.s_star(&alg.u(1)).is_err());
        assert!(alg.bv_delta(&a12).is_zero());
    }

    #[test]
    fn inhomogeneous_bracket_is_bilinear() {
        let alg = su3();
        let b = &alg.a(1) + &(&alg.u(1) * &alg.a(2));
        let c = &alg.u(1).pow(2) + &alg.u(2);
        let split =
            &alg.loop_bracket(&alg.a(1), &c) + &alg.loop_bracket(&(&alg.u(1) * &alg.a(2)), &c);
        assert_eq!(alg.loop_bracket(&b, &c), split);
    }
}
