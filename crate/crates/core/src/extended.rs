//! The cap action of `H*(LM)` on `ℍ*(LM)`, the extended BV algebra
//! `A = H*(M) ⊕ ℍ*(LM)`, and the loop-intersection calculator.
//!
//! On a cohomology monomial `ω = α_T · Π v_i^{k_i}` the cap product is
//!
//! ```text
//! ω ∩ b = (-1)^{Σ k_i d_i} a_T · {a_1, … {a_1, … {a_r, b}…}}
//! ```
//!
//! with `{a_i, -}` applied `k_i` times, ascending in `i`, and
//! `a_T = D⁻¹(α_T)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::kernel::{Degree, Element, Monomial, Rational, Ring};
use crate::model::ModelSpec;
use crate::StringAlgebra;

impl StringAlgebra {
    /// `ω ∩ b` for `ω` in `H*(LM)` (or `H*(M)`, pulled back) and `b` in
    /// loop homology. The result has degree `|b| - |ω|`.
    pub fn cap(&self, omega: &Element, b: &Element) -> Element {
        let omega = match omega.ring() {
            Ring::BaseCohomology => self.pullback(omega),
            _ => omega.clone(),
        };
        self.expect_ring(&omega, Ring::Cohomology, "cap");
        self.expect_ring(b, Ring::LoopHomology, "cap");
        let mut nested: BTreeMap<Vec<u32>, Element> = BTreeMap::new();
        let mut out = self.zero(Ring::LoopHomology);
        for (m, c) in omega.terms() {
            let exps = m.exponents().to_vec();
            let brackets = nested
                .entry(exps.clone())
                .or_insert_with(|| self.iterated_brackets(&exps, b));
            if brackets.is_zero() {
                continue;
            }
            let flips: i64 = exps
                .iter()
                .enumerate()
                .map(|(i, &k)| i64::from(k) * self.model().degree_of(i))
                .sum();
            let dual = Element::monomial(Ring::LoopHomology, m.odd_part(), c.clone());
            out += &(&dual * brackets).signed(flips % 2 != 0);
        }
        out
    }

    fn iterated_brackets(&self, exps: &[u32], b: &Element) -> Element {
        let mut x = b.clone();
        for (i, &k) in exps.iter().enumerate() {
            let a = self.a(i + 1);
            for _ in 0..k {
                if x.is_zero() {
                    return x;
                }
                x = self.loop_bracket(&a, &x);
            }
        }
        x
    }

    pub fn check_cohomology(&self, omega: &Element) -> Result<()> {
        self.model().check_rank(omega)?;
        match omega.ring() {
            Ring::Cohomology | Ring::BaseCohomology => Ok(()),
            found => Err(AlgebraError::RingMismatch {
                expected: Ring::Cohomology,
                found,
            }),
        }
    }

    pub fn try_cap(&self, omega: &Element, b: &Element) -> Result<Element> {
        self.check_cohomology(omega)?;
        self.check_loop(b)?;
        Ok(self.cap(omega, b))
    }

    /// `(1, 0)`: the unit `1 ∈ H⁰(M)`.
    pub fn extended_unit(&self) -> ExtendedClass {
        ExtendedClass::from_base(self.one(Ring::BaseCohomology))
    }

    pub fn extended_zero(&self) -> ExtendedClass {
        ExtendedClass {
            base: self.zero(Ring::BaseCohomology),
            lp: self.zero(Ring::LoopHomology),
        }
    }

    /// `α·β = α∪β`, `α·b = α∩b`, `b·α = (-1)^{|α||b|} α·b`, `b·c` the loop
    /// product.
    pub fn extended_product(&self, x: &ExtendedClass, y: &ExtendedClass) -> ExtendedClass {
        let base = self.cup(&x.base, &y.base);
        let mut lp = self.cap(&x.base, &y.lp);
        for (p, alpha) in y.base.parity_parts().iter().enumerate() {
            for (q, b) in x.lp.parity_parts().iter().enumerate() {
                if alpha.is_zero() || b.is_zero() {
                    continue;
                }
                lp += &self.cap(alpha, b).signed(p * q == 1);
            }
        }
        lp += &self.loop_product(&x.lp, &y.lp);
        ExtendedClass { base, lp }
    }

    /// `{α, b} = (-1)^{|α|} Δα ∩ b` for `α` in `H*(M)`, bilinear over
    /// parity components.
    pub fn base_bracket(&self, alpha: &Element, b: &Element) -> Element {
        let mut out = self.zero(Ring::LoopHomology);
        for (p, part) in alpha.parity_parts().iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let delta = self.coh_delta(&self.pullback(part));
            out += &self.cap(&delta, b).signed(p == 1);
        }
        out
    }

    /// `{α,β} = 0`, `{α,b} = (-1)^{|α|} Δα∩b`,
    /// `{b,α} = -(-1)^{(|α|+1)(|b|+1)} {α,b}`, `{b,c}` the loop bracket.
    pub fn extended_bracket(&self, x: &ExtendedClass, y: &ExtendedClass) -> ExtendedClass {
        let mut lp = self.base_bracket(&x.base, &y.lp);
        for (p, alpha) in y.base.parity_parts().iter().enumerate() {
            for (q, b) in x.lp.parity_parts().iter().enumerate() {
                if alpha.is_zero() || b.is_zero() {
                    continue;
                }
                // -(-1)^{(p+1)(q+1)}: negative unless both parities are even.
                let negative = (p + 1) * (q + 1) % 2 == 0;
                lp += &self.base_bracket(alpha, b).signed(negative);
            }
        }
        lp += &self.loop_bracket(&x.lp, &y.lp);
        ExtendedClass {
            base: self.zero(Ring::BaseCohomology),
            lp,
        }
    }

    /// Trivial on `H*(M)`, the loop BV operator on `ℍ*(LM)`.
    pub fn extended_delta(&self, x: &ExtendedClass) -> ExtendedClass {
        ExtendedClass {
            base: self.zero(Ring::BaseCohomology),
            lp: self.bv_delta(&x.lp),
        }
    }

    /// Homology class of the loops in the family `b` that meet the cycles
    /// dual to `at_basepoint` at fixed times and those dual to `free_time`
    /// at unspecified times:
    ///
    /// ```text
    /// (-1)^{Σ_j j|β_j| - s} (α_1 ⋯ α_r' · Δβ_1 ⋯ Δβ_s) ∩ b
    /// ```
    pub fn loop_intersection(
        &self,
        at_basepoint: &[Element],
        free_time: &[Element],
        b: &Element,
    ) -> Result<Element> {
        self.check_loop(b)?;
        let mut omega = self.one(Ring::Cohomology);
        for alpha in at_basepoint {
            let alpha = self.base_part(alpha)?;
            omega = self.cup(&omega, &self.pullback(&alpha));
        }
        let mut exponent: i64 = -(free_time.len() as i64);
        for (j, beta) in free_time.iter().enumerate() {
            let beta = self.base_part(beta)?;
            let degree = match self.model().degree(&beta) {
                Degree::Homogeneous(d) => d,
                Degree::Any => 0,
                Degree::Inhomogeneous => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "free-time class #{} ({beta})",
                        j + 1
                    )))
                }
            };
            exponent += (j as i64 + 1) * degree;
            omega = self.cup(&omega, &self.coh_delta(&self.pullback(&beta)));
        }
        Ok(self.cap(&omega, b).signed(exponent % 2 != 0))
    }
}

/// An element `(ω, b)` of `H*(M) ⊕ ℍ*(LM)`. A class of `H^k(M)` counts as
/// homological degree `-k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedClass {
    base: Element,
    lp: Element,
}

impl ExtendedClass {
    pub fn new(base: Element, lp: Element) -> Result<Self> {
        if base.ring() != Ring::BaseCohomology {
            return Err(AlgebraError::RingMismatch {
                expected: Ring::BaseCohomology,
                found: base.ring(),
            });
        }
        if lp.ring() != Ring::LoopHomology {
            return Err(AlgebraError::RingMismatch {
                expected: Ring::LoopHomology,
                found: lp.ring(),
            });
        }
        if base.rank() != lp.rank() {
            return Err(AlgebraError::ModelMismatch {
                expected: base.rank(),
                found: lp.rank(),
            });
        }
        Ok(ExtendedClass { base, lp })
    }

    pub fn from_base(base: Element) -> Self {
        let lp = Element::zero(Ring::LoopHomology, base.rank());
        Self::new(base, lp).expect("base cohomology class")
    }

    pub fn from_loop(lp: Element) -> Self {
        let base = Element::zero(Ring::BaseCohomology, lp.rank());
        Self::new(base, lp).expect("loop homology class")
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    pub fn loop_part(&self) -> &Element {
        &self.lp
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.lp.is_zero()
    }

    /// Homological degree.
    pub fn degree(&self, model: &ModelSpec) -> Degree {
        let base = model.degree(&self.base);
        let lp = model.degree(&self.lp);
        match (base, lp) {
            (Degree::Inhomogeneous, _) | (_, Degree::Inhomogeneous) => Degree::Inhomogeneous,
            (Degree::Any, d) => d,
            (Degree::Homogeneous(k), Degree::Any) => Degree::Homogeneous(-k),
            (Degree::Homogeneous(k), Degree::Homogeneous(d)) if d == -k => Degree::Homogeneous(d),
            _ => Degree::Inhomogeneous,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExtendedClass {
            base: self.base.scale(q),
            lp: self.lp.scale(q),
        }
    }

    pub fn signed(self, negative: bool) -> Self {
        if negative {
            -self
        } else {
            self
        }
    }

    /// Number of monomials across both parts.
    pub fn len(&self) -> usize {
        self.base.len() + self.lp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every monomial as a separate class, base part first.
    pub fn split_terms(&self) -> Vec<ExtendedClass> {
        let base = self.base.terms().map(|(m, c)| {
            Self::from_base(Element::monomial(
                Ring::BaseCohomology,
                m.clone(),
                c.clone(),
            ))
        });
        let lp = self.lp.terms().map(|(m, c)| {
            Self::from_loop(Element::monomial(Ring::LoopHomology, m.clone(), c.clone()))
        });
        base.chain(lp).collect()
    }

    /// Keeps the terms for which `keep(ring, monomial)` holds.
    pub fn restrict(&self, keep: impl Fn(Ring, &Monomial) -> bool) -> Self {
        let filter = |x: &Element| {
            Element::from_terms(
                x.ring(),
                x.rank(),
                x.terms()
                    .filter(|(m, _)| keep(x.ring(), m))
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect::<Vec<_>>(),
            )
        };
        ExtendedClass {
            base: filter(&self.base),
            lp: filter(&self.lp),
        }
    }
}

impl fmt::Display for ExtendedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base, self.lp)
    }
}

impl Add<&ExtendedClass> for &ExtendedClass {
    type Output = ExtendedClass;
    fn add(self, rhs: &ExtendedClass) -> ExtendedClass {
        ExtendedClass {
            base: &self.base + &rhs.base,
            lp: &self.lp + &rhs.lp,
        }
    }
}

impl Sub<&ExtendedClass> for &ExtendedClass {
    type Output = ExtendedClass;
    fn sub(self, rhs: &ExtendedClass) -> ExtendedClass {
        ExtendedClass {
            base: &self.base - &rhs.base,
            lp: &self.lp - &rhs.lp,
        }
    }
}

impl Neg for ExtendedClass {
    type Output = ExtendedClass;
    fn neg(self) -> ExtendedClass {
        ExtendedClass {
            base: -self.base,
            lp: -self.lp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn s3() -> StringAlgebra {
        StringAlgebra::new(ModelSpec::sphere(3).unwrap())
    }

    /// Independent expansion of `{a_1, x}` on the sphere: writing
    /// `x = p(u) + a·q(u)`, Δ(a·x) = Δ(a·p) = p'(u) and Δ(a) = 0, so
    /// `{a, x} = -(Δ(a·x) + a·Δx) = -p'(u) - a·q'(u)`.
    fn sphere_bracket_with_a(x: &Element) -> Element {
        let mut out = Element::zero(Ring::LoopHomology, 1);
        for (m, c) in x.terms() {
            let k = m.exponents()[0];
            if k == 0 {
                continue;
            }
            let lowered = m.with_exponent(0, k - 1);
            out.add_term(lowered, -(c * rat(k.into())));
        }
        out
    }

    #[test]
    fn sphere_desk_values_against_expansion() {
        let alg = s3();
        let (u1, v1) = (alg.u(1), alg.v(1));
        assert_eq!(sphere_bracket_with_a(&u1), alg.loop_unit().scale_int(-1));
        // cap(v, u²) = (-1)^3 {a, u²}
        let expected = -sphere_bracket_with_a(&u1.pow(2));
        assert_eq!(expected, u1.scale_int(2));
        assert_eq!(alg.cap(&v1, &u1.pow(2)), expected);
        // cap(v², u³) = {a, {a, u³}}
        let expected = sphere_bracket_with_a(&sphere_bracket_with_a(&u1.pow(3)));
        assert_eq!(expected, u1.scale_int(6));
        assert_eq!(alg.cap(&v1.pow(2), &u1.pow(3)), expected);
    }

    #[test]
    fn cap_examples() {
        let alg = s3();
        let (u1, v1, alpha1) = (alg.u(1), alg.v(1), alg.alpha(1));
        for k in 0..5 {
            assert_eq!(alg.cap(&alpha1, &u1.pow(k)), &alg.a(1) * &u1.pow(k));
        }
        assert!(alg.cap(&v1, &alg.loop_unit()).is_zero());
        assert!(alg.cap(&v1, &alg.a(1)).is_zero());
        assert_eq!(alg.cap(&alg.one(Ring::Cohomology), &u1), u1);
    }

    #[test]
    fn extended_examples() {
        let alg = s3();
        let alpha = ExtendedClass::from_base(alg.base_alpha(1));
        let uk = ExtendedClass::from_loop(alg.u(1).pow(3));
        assert_eq!(
            alg.extended_product(&alpha, &uk),
            ExtendedClass::from_loop(&alg.a(1) * &alg.u(1).pow(3))
        );
        let u = ExtendedClass::from_loop(alg.u(1));
        assert_eq!(
            alg.extended_bracket(&alpha, &u),
            ExtendedClass::from_loop(alg.loop_unit().scale_int(-1))
        );
        assert!(alg.extended_bracket(&alpha, &alpha).is_zero());
        assert!(alg.extended_delta(&alpha).is_zero());
        assert_eq!(
            alg.extended_delta(&ExtendedClass::from_loop(&alg.a(1) * &alg.u(1))),
            ExtendedClass::from_loop(alg.loop_unit())
        );
        let one = alg.extended_unit();
        assert_eq!(alg.extended_product(&one, &alpha), alpha);
        assert_eq!(alg.extended_product(&uk, &one), uk);
    }

    #[test]
    fn extended_degree() {
        let alg = s3();
        let m = alg.model();
        let alpha = ExtendedClass::from_base(alg.base_alpha(1));
        assert_eq!(alpha.degree(m), Degree::Homogeneous(-3));
        let mixed = &alpha + &ExtendedClass::from_loop(alg.a(1));
        assert_eq!(mixed.degree(m), Degree::Homogeneous(-3));
        let bad = &alpha + &ExtendedClass::from_loop(alg.u(1));
        assert_eq!(bad.degree(m), Degree::Inhomogeneous);
    }

    #[test]
    fn intersection_examples() {
        let alg = s3();
        let u1 = alg.u(1);
        let alpha = alg.base_alpha(1);
        let out = alg
            .loop_intersection(&[], std::slice::from_ref(&alpha), &u1.pow(2))
            .unwrap();
        assert_eq!(out, u1.scale_int(2));
        let out = alg
            .loop_intersection(&[], &[alpha.clone(), alpha.clone()], &u1.pow(3))
            .unwrap();
        assert_eq!(out, u1.scale_int(-6));
        let b = &u1.pow(2) + &alg.a(1);
        let out = alg
            .loop_intersection(std::slice::from_ref(&alpha), &[], &b)
            .unwrap();
        assert_eq!(out, &alg.a(1) * &b);
        assert_eq!(alg.loop_intersection(&[], &[], &b).unwrap(), b);
    }

    #[test]
    fn intersection_rejects_inhomogeneous_free_class() {
        let alg = StringAlgebra::new(ModelSpec::special_unitary(3).unwrap());
        let beta = &alg.base_alpha(1) + &alg.base_alpha(2);
        let err = alg.loop_intersection(&[], &[beta], &alg.u(1)).unwrap_err();
        assert!(matches!(err, AlgebraError::Inhomogeneous(_)));
        assert!(alg.loop_intersection(&[], &[alg.v(1)], &alg.u(1)).is_err());
    }
}
