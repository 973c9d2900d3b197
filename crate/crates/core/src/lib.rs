//! Exact computations in the string-topology BV algebra of the free loop
//! space of a manifold whose rational cohomology is an exterior algebra on
//! odd generators.
//!
//! For `H*(M; Q) = Λ(α_1, …, α_r)` with `|α_i| = d_i` odd, the loop
//! homology is `Λ(a) ⊗ Q[u]` with a second order BV operator, and the
//! cohomology of the loop space is `Λ(α) ⊗ Q[Δα]`. This crate implements
//! both rings, the loop bracket, the cap action of cohomology on loop
//! homology, the extended algebra `H*(M) ⊕ ℍ*(LM)`, a randomized exact
//! identity checker, and a small expression language.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod extended;
pub mod kernel;
pub mod loop_homology;
pub mod model;
pub mod sample;
pub mod verify;

pub use algebra::{Mutation, StringAlgebra};
pub use error::{AlgebraError, Result};
pub use extended::ExtendedClass;
pub use kernel::{Degree, Element, GeneratorKind, GeneratorTag, Monomial, Rational, Ring};
pub use model::ModelSpec;
