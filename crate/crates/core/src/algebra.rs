//! The algebra context shared by all structure maps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::kernel::{Element, Ring};
use crate::model::ModelSpec;

/// Deliberate defects in Δ or the bracket. Only used to confirm that the
/// verification suite notices a wrong sign or a dropped term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Loop Δ forgets the Koszul sign of the odd derivative.
    UnsignedOddDerivative,
    /// Loop Δ lowers the even exponent without multiplying by it.
    DroppedExponentFactor,
    /// The bracket has the opposite overall sign.
    BracketSignFlip,
    /// The bracket omits the `Δb·c` term.
    BracketDropsLeftDelta,
    /// The bracket takes its sign from the second argument.
    BracketWrongParity,
    /// Cohomology Δ forgets the Koszul sign of the derivation.
    UnsignedCohomologyDelta,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::UnsignedOddDerivative,
        Mutation::DroppedExponentFactor,
        Mutation::BracketSignFlip,
        Mutation::BracketDropsLeftDelta,
        Mutation::BracketWrongParity,
        Mutation::UnsignedCohomologyDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::UnsignedOddDerivative => "unsigned-odd-derivative",
            Mutation::DroppedExponentFactor => "dropped-exponent-factor",
            Mutation::BracketSignFlip => "bracket-sign-flip",
            Mutation::BracketDropsLeftDelta => "bracket-drops-left-delta",
            Mutation::BracketWrongParity => "bracket-wrong-parity",
            Mutation::UnsignedCohomologyDelta => "unsigned-cohomology-delta",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Mutation::ALL.iter().map(|m| m.name()).collect();
                format!(
                    "unknown mutation `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// The string-topology structure of one model: loop homology with its BV
/// operator and bracket, the cohomology ring with its Δ, the cap action,
/// and the extended algebra `H*(M) ⊕ ℍ*(LM)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringAlgebra {
    model: ModelSpec,
    mutation: Option<Mutation>,
}

impl StringAlgebra {
    pub fn new(model: ModelSpec) -> Self {
        StringAlgebra {
            model,
            mutation: None,
        }
    }

    /// A deliberately broken copy, for sensitivity testing.
    pub fn mutated(model: ModelSpec, mutation: Mutation) -> Self {
        StringAlgebra {
            model,
            mutation: Some(mutation),
        }
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub(crate) fn has(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn rank(&self) -> usize {
        self.model.rank()
    }

    pub fn zero(&self, ring: Ring) -> Element {
        Element::zero(ring, self.rank())
    }

    pub fn one(&self, ring: Ring) -> Element {
        Element::one(ring, self.rank())
    }

    pub(crate) fn expect_ring(&self, x: &Element, ring: Ring, op: &str) {
        assert_eq!(
            x.ring(),
            ring,
            "{op}: expected a {ring} class, got a {} class",
            x.ring()
        );
        assert_eq!(
            x.rank(),
            self.rank(),
            "{op}: element belongs to another model"
        );
    }
}
