//! Cohomology `H*(LM; Q) = Λ(α_1..α_r) ⊗ Q[v_1..v_r]` with `v_i = Δα_i`,
//! the base ring `H*(M) = Λ(α)`, and Poincaré duality between `H*(M)` and
//! the constant-loop subring of loop homology.

use crate::algebra::{Mutation, StringAlgebra};
use crate::error::{AlgebraError, Result};
use crate::kernel::{Element, GeneratorTag, Monomial, Rational, Ring};

impl StringAlgebra {
    /// `α_i` in `H*(LM)` (pulled back from the base).
    pub fn alpha(&self, i: usize) -> Element {
        Element::generator(GeneratorTag::odd(i, Ring::Cohomology), self.rank())
            .expect("generator index in range")
    }

    /// `v_i = Δα_i`.
    pub fn v(&self, i: usize) -> Element {
        let tag = GeneratorTag::even(i, Ring::Cohomology).expect("cohomology has v");
        Element::generator(tag, self.rank()).expect("generator index in range")
    }

    /// `α_i` in `H*(M)`.
    pub fn base_alpha(&self, i: usize) -> Element {
        Element::generator(GeneratorTag::odd(i, Ring::BaseCohomology), self.rank())
            .expect("generator index in range")
    }

    pub fn cup(&self, x: &Element, y: &Element) -> Element {
        assert!(
            matches!(x.ring(), Ring::Cohomology | Ring::BaseCohomology),
            "cup: {} is not a cohomology ring",
            x.ring()
        );
        x * y
    }

    /// The degree -1 derivation with `Δα_i = v_i` and `Δv_i = 0`.
    pub fn coh_delta(&self, x: &Element) -> Element {
        self.expect_ring(x, Ring::Cohomology, "cohomology Δ");
        let unsigned = self.has(Mutation::UnsignedCohomologyDelta);
        x.map_terms(|m, c| {
            let mut out = self.zero(Ring::Cohomology);
            for i in m.odd_indices() {
                let negative = !unsigned && m.odd_before(i) % 2 == 1;
                let k = m.exponents()[i];
                out.add_term(
                    m.without_odd(i).with_exponent(i, k + 1),
                    if negative { -c.clone() } else { c.clone() },
                );
            }
            out
        })
    }

    /// `p*: H*(M) → H*(LM)`.
    pub fn pullback(&self, omega: &Element) -> Element {
        self.expect_ring(omega, Ring::BaseCohomology, "pullback");
        omega.retag(Ring::Cohomology)
    }

    pub fn is_base(&self, omega: &Element) -> bool {
        match omega.ring() {
            Ring::BaseCohomology => true,
            Ring::Cohomology => omega.is_exterior(),
            Ring::LoopHomology => false,
        }
    }

    /// The class in `H*(M)` of a cohomology class lying in the image of `p*`.
    pub fn base_part(&self, omega: &Element) -> Result<Element> {
        self.model().check_rank(omega)?;
        match omega.ring() {
            Ring::BaseCohomology => Ok(omega.clone()),
            Ring::Cohomology if omega.is_exterior() => Ok(omega.retag(Ring::BaseCohomology)),
            Ring::Cohomology => Err(AlgebraError::NotInSubring {
                what: omega.to_string(),
                subring: "base cohomology H*(M)",
            }),
            found => Err(AlgebraError::RingMismatch {
                expected: Ring::BaseCohomology,
                found,
            }),
        }
    }

    /// `D: ℍ*(M) → H*(M)`, sending `a_i ↦ α_i` multiplicatively.
    pub fn poincare_dual(&self, x: &Element) -> Result<Element> {
        self.check_loop(x)?;
        if !x.is_exterior() {
            return Err(AlgebraError::NotInSubring {
                what: x.to_string(),
                subring: "intersection ring of M (exterior in a_i)",
            });
        }
        Ok(x.retag(Ring::BaseCohomology))
    }

    pub fn poincare_dual_inverse(&self, omega: &Element) -> Result<Element> {
        Ok(self.base_part(omega)?.retag(Ring::LoopHomology))
    }
}

/// Splits a cohomology monomial as `α_T · Π v_i^{k_i}`. The `v_i` are even,
/// so the split carries no sign.
pub fn decompose(m: &Monomial) -> (Monomial, Vec<u32>) {
    (m.odd_part(), m.exponents().to_vec())
}

/// Decomposes every term of a cohomology class.
pub fn decompose_terms(omega: &Element) -> Vec<(Monomial, Vec<u32>, Rational)> {
    omega
        .terms()
        .map(|(m, c)| {
            let (odd, k) = decompose(m);
            (odd, k, c.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Degree;
    use crate::model::ModelSpec;

    fn su3() -> StringAlgebra {
        StringAlgebra::new(ModelSpec::special_unitary(3).unwrap())
    }

    #[test]
    fn cup_examples() {
        let alg = su3();
        let (a1, a2, v1) = (alg.alpha(1), alg.alpha(2), alg.v(1));
        assert!(alg.cup(&a1, &a1).is_zero());
        assert_eq!(alg.cup(&v1, &a1).to_string(), "alpha1*v1");
        assert_eq!(alg.cup(&a1, &a2), -alg.cup(&a2, &a1));
    }

    #[test]
    fn delta_examples() {
        let alg = su3();
        assert_eq!(alg.coh_delta(&alg.alpha(1)), alg.v(1));
        // d1 = 3, so the second term carries a minus sign.
        let expected = &alg.cup(&alg.v(1), &alg.alpha(2)) - &alg.cup(&alg.alpha(1), &alg.v(2));
        assert_eq!(
            alg.coh_delta(&alg.cup(&alg.alpha(1), &alg.alpha(2))),
            expected
        );
        for k in 0..4 {
            assert!(alg.coh_delta(&alg.v(1).pow(k)).is_zero());
        }
    }

    #[test]
    fn duality_examples() {
        let alg = su3();
        assert_eq!(
            alg.poincare_dual(&alg.loop_unit()).unwrap(),
            alg.one(Ring::BaseCohomology)
        );
        let a12 = &alg.a(1) * &alg.a(2);
        let alpha12 = &alg.base_alpha(1) * &alg.base_alpha(2);
        assert_eq!(alg.poincare_dual(&a12).unwrap(), alpha12);
        assert_eq!(alg.poincare_dual_inverse(&alg.alpha(1)).unwrap(), alg.a(1));
        assert_eq!(alg.poincare_dual_inverse(&alpha12).unwrap(), a12);
        assert!(alg.poincare_dual(&alg.u(1)).is_err());
        assert!(alg.poincare_dual_inverse(&alg.v(1)).is_err());
        let top = alg.poincare_dual(&a12).unwrap();
        assert_eq!(alg.model().degree(&top), Degree::Homogeneous(8));
        assert_eq!(alg.model().degree(&a12), Degree::Homogeneous(-8));
    }

    #[test]
    fn decompose_examples() {
        let alg = StringAlgebra::new(ModelSpec::sphere(3).unwrap());
        let x = alg.cup(&alg.alpha(1), &alg.v(1).pow(2));
        let (m, _) = x.terms().next().unwrap();
        let (odd, k) = decompose(m);
        assert_eq!(odd, Monomial::new(&[0], vec![0]));
        assert_eq!(k, vec![2]);
        assert!(!alg.is_base(&alg.v(1)));
        assert!(alg.is_base(&alg.alpha(1)));
        let (odd, k) = decompose(&Monomial::unit(1));
        assert!(odd.is_unit());
        assert_eq!(k, vec![0]);
    }
}
