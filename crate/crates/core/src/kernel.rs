//! Graded-commutative monomial arithmetic over the rationals.
//!
//! All three rings share one representation: a monomial is an exterior
//! subset of odd generators (a bitmask) together with an exponent vector for
//! the even generators. Odd generators always come first in ascending index
//! order, so the only Koszul signs that arise are from reordering odd
//! generators among themselves.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::model::ModelSpec;

pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ring {
    /// `Λ(a) ⊗ Q[u]`, graded by shifted homological degree.
    LoopHomology,
    /// `Λ(α) ⊗ Q[v]` with `v_i = Δα_i`, cohomologically graded.
    Cohomology,
    /// The exterior algebra `Λ(α)` of the base manifold.
    BaseCohomology,
}

impl Ring {
    pub fn as_str(self) -> &'static str {
        match self {
            Ring::LoopHomology => "loop-homology",
            Ring::Cohomology => "cohomology",
            Ring::BaseCohomology => "base-cohomology",
        }
    }

    pub fn odd_name(self) -> &'static str {
        match self {
            Ring::LoopHomology => "a",
            Ring::Cohomology | Ring::BaseCohomology => "alpha",
        }
    }

    pub fn even_name(self) -> &'static str {
        match self {
            Ring::LoopHomology => "u",
            Ring::Cohomology | Ring::BaseCohomology => "v",
        }
    }

    pub fn admits_even(self) -> bool {
        !matches!(self, Ring::BaseCohomology)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Odd,
    Even,
}

/// Names one generator of one ring, e.g. `u_2` in loop homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorTag {
    pub kind: GeneratorKind,
    /// One-based, as in `a1`.
    pub index: usize,
    pub ring: Ring,
}

impl GeneratorTag {
    pub fn new(kind: GeneratorKind, index: usize, ring: Ring) -> Result<Self> {
        if index == 0 {
            return Err(AlgebraError::InvalidGenerator(
                "generator indices start at 1".into(),
            ));
        }
        if kind == GeneratorKind::Even && !ring.admits_even() {
            return Err(AlgebraError::InvalidGenerator(format!(
                "{ring} has no even generators (v{index} is not a base class)"
            )));
        }
        Ok(GeneratorTag { kind, index, ring })
    }

    pub fn odd(index: usize, ring: Ring) -> Self {
        Self::new(GeneratorKind::Odd, index, ring).expect("valid odd generator")
    }

    pub fn even(index: usize, ring: Ring) -> Result<Self> {
        Self::new(GeneratorKind::Even, index, ring)
    }
}

/// A canonical basis word: `g_T · Π e_i^{k_i}` with `T` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    odd: u64,
    even: Vec<u32>,
}

fn mask_bit(i: usize) -> u64 {
    1u64 << i
}

/// Parity of the number of transpositions needed to sort the concatenation
/// of two ascending odd-index sets.
fn merge_sign(left: u64, right: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = right;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (left >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

impl Monomial {
    pub fn unit(rank: usize) -> Self {
        Monomial {
            odd: 0,
            even: vec![0; rank],
        }
    }

    /// Builds a monomial from a zero-based odd index set and exponents.
    /// Duplicate odd indices are collapsed; callers wanting the vanishing
    /// of odd squares should multiply instead.
    pub fn new(odd_indices: &[usize], exponents: Vec<u32>) -> Self {
        let odd = odd_indices.iter().fold(0, |m, &i| m | mask_bit(i));
        Monomial {
            odd,
            even: exponents,
        }
    }

    pub fn from_mask(odd: u64, exponents: Vec<u32>) -> Self {
        Monomial {
            odd,
            even: exponents,
        }
    }

    pub fn rank(&self) -> usize {
        self.even.len()
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn exponents(&self) -> &[u32] {
        &self.even
    }

    /// Zero-based indices of the odd generators present, ascending.
    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&i| self.odd & mask_bit(i) != 0)
    }

    pub fn has_odd(&self, i: usize) -> bool {
        self.odd & mask_bit(i) != 0
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    /// Koszul parity. Every odd generator has odd degree and every even
    /// generator has even degree, in all three rings.
    pub fn parity(&self) -> u32 {
        self.odd.count_ones() % 2
    }

    pub fn is_unit(&self) -> bool {
        self.odd == 0 && self.is_exterior()
    }

    /// True when no even generator appears.
    pub fn is_exterior(&self) -> bool {
        self.even.iter().all(|&k| k == 0)
    }

    /// Number of odd generators strictly before index `i`.
    pub fn odd_before(&self, i: usize) -> u32 {
        (self.odd & (mask_bit(i) - 1)).count_ones()
    }

    /// Product of two monomials: `None` if an odd generator repeats,
    /// otherwise `(negative, product)`.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let negative = merge_sign(self.odd, other.odd);
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(a, b)| a + b)
            .collect();
        Some((
            negative,
            Monomial {
                odd: self.odd | other.odd,
                even,
            },
        ))
    }

    pub fn without_odd(&self, i: usize) -> Monomial {
        Monomial {
            odd: self.odd & !mask_bit(i),
            even: self.even.clone(),
        }
    }

    pub fn with_odd(&self, i: usize) -> Monomial {
        Monomial {
            odd: self.odd | mask_bit(i),
            even: self.even.clone(),
        }
    }

    pub fn with_exponent(&self, i: usize, k: u32) -> Monomial {
        let mut even = self.even.clone();
        even[i] = k;
        Monomial {
            odd: self.odd,
            even,
        }
    }

    /// The exterior part alone.
    pub fn odd_part(&self) -> Monomial {
        Monomial {
            odd: self.odd,
            even: vec![0; self.rank()],
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ring: Ring, unicode: bool) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first && !unicode {
                f.write_str("*")?;
            }
            first = false;
            Ok(())
        };
        for i in self.odd_indices() {
            sep(f)?;
            write_generator(f, ring, GeneratorKind::Odd, i + 1, unicode)?;
        }
        for (i, &k) in self.even.iter().enumerate() {
            if k == 0 {
                continue;
            }
            sep(f)?;
            write_generator(f, ring, GeneratorKind::Even, i + 1, unicode)?;
            if k > 1 {
                if unicode {
                    f.write_str(&superscript(k))?;
                } else {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

fn write_generator(
    f: &mut fmt::Formatter<'_>,
    ring: Ring,
    kind: GeneratorKind,
    index: usize,
    unicode: bool,
) -> fmt::Result {
    if !unicode {
        let name = match kind {
            GeneratorKind::Odd => ring.odd_name(),
            GeneratorKind::Even => ring.even_name(),
        };
        return write!(f, "{name}{index}");
    }
    let name = match (ring, kind) {
        (Ring::LoopHomology, GeneratorKind::Odd) => "a",
        (Ring::LoopHomology, GeneratorKind::Even) => "u",
        (_, GeneratorKind::Odd) => "α",
        (_, GeneratorKind::Even) => "Δα",
    };
    write!(f, "{name}{}", subscript(index))
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// The graded degree of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    /// The zero element, which is homogeneous of every degree.
    Any,
    Homogeneous(i64),
    Inhomogeneous,
}

impl Degree {
    pub fn value(self) -> Option<i64> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Degree::Inhomogeneous)
    }

    /// Whether an element of this degree may be regarded as homogeneous of
    /// degree `d`.
    pub fn admits(self, d: i64) -> bool {
        match self {
            Degree::Any => true,
            Degree::Homogeneous(e) => e == d,
            Degree::Inhomogeneous => false,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Any => f.write_str("any"),
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Inhomogeneous => f.write_str("inhomogeneous"),
        }
    }
}

impl ModelSpec {
    /// Degree of a monomial in the given ring's grading: `|a_i| = -d_i`,
    /// `|u_i| = d_i - 1` in loop homology, `|α_i| = d_i`, `|v_i| = d_i - 1`
    /// in cohomology.
    pub fn monomial_degree(&self, ring: Ring, m: &Monomial) -> i64 {
        let odd: i64 = m.odd_indices().map(|i| self.degree_of(i)).sum();
        let even: i64 = m
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, &k)| i64::from(k) * (self.degree_of(i) - 1))
            .sum();
        match ring {
            Ring::LoopHomology => even - odd,
            Ring::Cohomology | Ring::BaseCohomology => odd + even,
        }
    }

    pub fn degree(&self, x: &Element) -> Degree {
        let mut degrees = x.terms().map(|(m, _)| self.monomial_degree(x.ring(), m));
        match degrees.next() {
            None => Degree::Any,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Inhomogeneous
                }
            }
        }
    }

    /// Splits an element into homogeneous pieces keyed by degree.
    pub fn homogeneous_components(&self, x: &Element) -> BTreeMap<i64, Element> {
        let mut parts: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            let d = self.monomial_degree(x.ring(), m);
            parts
                .entry(d)
                .or_insert_with(|| Element::zero(x.ring(), x.rank()))
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    pub fn check_rank(&self, x: &Element) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(AlgebraError::ModelMismatch {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }
}

/// A finite rational combination of canonical monomials in one ring.
///
/// Zero coefficients are never stored, so structural equality is exact
/// equality of elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    rank: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(ring: Ring, rank: usize) -> Self {
        Element {
            ring,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring, rank: usize) -> Self {
        Self::monomial(ring, Monomial::unit(rank), Rational::one())
    }

    pub fn scalar(ring: Ring, rank: usize, q: Rational) -> Self {
        Self::monomial(ring, Monomial::unit(rank), q)
    }

    pub fn monomial(ring: Ring, m: Monomial, coeff: Rational) -> Self {
        let mut x = Self::zero(ring, m.rank());
        assert!(
            ring.admits_even() || m.is_exterior(),
            "{ring} has no even generators"
        );
        x.add_term(m, coeff);
        x
    }

    pub fn generator(tag: GeneratorTag, rank: usize) -> Result<Self> {
        if tag.index > rank {
            return Err(AlgebraError::InvalidGenerator(format!(
                "generator index {} exceeds the model's {rank} generators",
                tag.index
            )));
        }
        let i = tag.index - 1;
        let m = match tag.kind {
            GeneratorKind::Odd => Monomial::unit(rank).with_odd(i),
            GeneratorKind::Even => Monomial::unit(rank).with_exponent(i, 1),
        };
        Ok(Self::monomial(tag.ring, m, Rational::one()))
    }

    /// Normalizes a word in generators to canonical form, tracking the
    /// Koszul sign of each adjacent transposition (bubble sort).
    pub fn from_word(ring: Ring, rank: usize, word: &[(GeneratorKind, usize)]) -> Result<Self> {
        for &(kind, index) in word {
            let tag = GeneratorTag::new(kind, index, ring)?;
            if tag.index > rank {
                return Err(AlgebraError::InvalidGenerator(format!(
                    "generator index {index} exceeds the model's {rank} generators"
                )));
            }
        }
        // Sort key: odd generators first by index, then even ones.
        let key = |&(kind, index): &(GeneratorKind, usize)| match kind {
            GeneratorKind::Odd => (0, index),
            GeneratorKind::Even => (1, index),
        };
        let mut w = word.to_vec();
        let mut negative = false;
        for end in (1..w.len()).rev() {
            for j in 0..end {
                if key(&w[j]) > key(&w[j + 1]) {
                    if w[j].0 == GeneratorKind::Odd && w[j + 1].0 == GeneratorKind::Odd {
                        negative = !negative;
                    }
                    w.swap(j, j + 1);
                }
            }
        }
        let mut m = Monomial::unit(rank);
        for pair in w.windows(2) {
            if pair[0] == pair[1] && pair[0].0 == GeneratorKind::Odd {
                return Ok(Self::zero(ring, rank));
            }
        }
        for (kind, index) in w {
            match kind {
                GeneratorKind::Odd => m = m.with_odd(index - 1),
                GeneratorKind::Even => {
                    let k = m.exponents()[index - 1];
                    m = m.with_exponent(index - 1, k + 1);
                }
            }
        }
        let coeff = if negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        Ok(Self::monomial(ring, m, coeff))
    }

    pub fn from_terms(
        ring: Ring,
        rank: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut x = Self::zero(ring, rank);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.rank(), self.rank, "monomial rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Same terms, reinterpreted in another ring.
    pub fn retag(&self, ring: Ring) -> Element {
        assert!(
            ring.admits_even() || self.is_exterior(),
            "cannot place a class with even generators in {ring}"
        );
        Element {
            ring,
            rank: self.rank,
            terms: self.terms.clone(),
        }
    }

    /// True if every monomial lies in the exterior subring.
    pub fn is_exterior(&self) -> bool {
        self.terms.keys().all(Monomial::is_exterior)
    }

    /// Splits into even and odd Koszul parts.
    pub fn parity_parts(&self) -> [Element; 2] {
        let mut parts = [
            Element::zero(self.ring, self.rank),
            Element::zero(self.ring, self.rank),
        ];
        for (m, c) in &self.terms {
            parts[m.parity() as usize]
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Element) -> Element {
        let mut out = Element::zero(self.ring, self.rank);
        for (m, c) in &self.terms {
            out += &f(m, c);
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Element {
        if q.is_zero() {
            return Element::zero(self.ring, self.rank);
        }
        Element {
            ring: self.ring,
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&rat(n))
    }

    /// Multiplies by `-1` when `negative` is set.
    pub fn signed(self, negative: bool) -> Element {
        if negative {
            -self
        } else {
            self
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        if self.rank != other.rank {
            return Err(AlgebraError::ModelMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = Element::zero(self.ring, self.rank);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                if let Some((negative, p)) = m.mul(n) {
                    let coeff = c * d;
                    out.add_term(p, if negative { -coeff } else { coeff });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut out = Element::one(self.ring, self.rank);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Writes the element with Unicode generator names (`a₁u₁²`).
    pub fn pretty(&self) -> String {
        struct Pretty<'a>(&'a Element);
        impl fmt::Display for Pretty<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write(f, true)
            }
        }
        Pretty(self).to_string()
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, unicode: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_unit() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}")?;
                    f.write_str(if unicode { "·" } else { "*" })?;
                }
                m.write(f, self.ring, unicode)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

impl std::ops::AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.check_compatible(rhs).expect("add");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.check_compatible(rhs).expect("sub");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("add")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            ring: self.ring,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(mut self) -> Element {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Graded-commutative product. Panics on ring or model mismatch; use
/// [`Element::try_mul`] to get an error instead.
impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("mul")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> ModelSpec {
        ModelSpec::sphere(3).unwrap()
    }

    fn su3() -> ModelSpec {
        ModelSpec::special_unitary(3).unwrap()
    }

    fn gen(kind: GeneratorKind, i: usize, ring: Ring, rank: usize) -> Element {
        Element::generator(GeneratorTag::new(kind, i, ring).unwrap(), rank).unwrap()
    }

    fn a(i: usize, rank: usize) -> Element {
        gen(GeneratorKind::Odd, i, Ring::LoopHomology, rank)
    }

    fn u(i: usize, rank: usize) -> Element {
        gen(GeneratorKind::Even, i, Ring::LoopHomology, rank)
    }

    #[test]
    fn degree_of_generators() {
        let m = s3();
        assert_eq!(m.degree(&a(1, 1)), Degree::Homogeneous(-3));
        assert_eq!(m.degree(&u(1, 1)), Degree::Homogeneous(2));
        assert_eq!(
            m.degree(&Element::one(Ring::LoopHomology, 1)),
            Degree::Homogeneous(0)
        );
        assert_eq!(
            m.degree(&(&(&a(1, 1) * &u(1, 1)) + &u(1, 1))),
            Degree::Inhomogeneous
        );
        assert_eq!(m.degree(&Element::zero(Ring::LoopHomology, 1)), Degree::Any);
        let alpha = gen(GeneratorKind::Odd, 1, Ring::Cohomology, 1);
        let v = gen(GeneratorKind::Even, 1, Ring::Cohomology, 1);
        assert_eq!(m.degree(&alpha), Degree::Homogeneous(3));
        assert_eq!(m.degree(&v), Degree::Homogeneous(2));
    }

    #[test]
    fn koszul_products() {
        let (a1, a2) = (a(1, 2), a(2, 2));
        assert_eq!(&a2 * &a1, -(&a1 * &a2));
        assert!((&a1 * &a1).is_zero());
        let u1 = u(1, 2);
        let lhs = &(&a1 + &u1) * &u1;
        let rhs = &(&a1 * &u1) + &(&u1 * &u1);
        assert_eq!(lhs, rhs);
        assert_eq!(&u1 * &a1, &a1 * &u1);
    }

    #[test]
    fn add_scale_equal() {
        let a1 = a(1, 1);
        assert!((&a1 + &-&a1).is_zero());
        let two_u = u(1, 1).scale_int(2);
        assert_eq!(two_u.scale(&ratio(1, 2)), u(1, 1));
        let w = Element::from_word(
            Ring::LoopHomology,
            2,
            &[(GeneratorKind::Odd, 2), (GeneratorKind::Odd, 1)],
        )
        .unwrap();
        assert_eq!(&a(1, 2) * &a(2, 2), -w);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let alpha = gen(GeneratorKind::Odd, 1, Ring::Cohomology, 1);
        let err = a(1, 1).try_mul(&alpha).unwrap_err();
        assert!(matches!(err, AlgebraError::RingMismatch { .. }));
        assert!(matches!(
            a(1, 1).try_add(&a(1, 2)).unwrap_err(),
            AlgebraError::ModelMismatch { .. }
        ));
    }

    #[test]
    fn base_ring_rejects_even_generators() {
        assert!(GeneratorTag::new(GeneratorKind::Even, 1, Ring::BaseCohomology).is_err());
        assert!(GeneratorTag::new(GeneratorKind::Odd, 1, Ring::BaseCohomology).is_ok());
        assert!(Element::generator(GeneratorTag::odd(3, Ring::LoopHomology), 2).is_err());
    }

    #[test]
    fn from_word_matches_products() {
        use GeneratorKind::*;
        let word = [(Even, 2), (Odd, 2), (Even, 1), (Odd, 1), (Even, 2)];
        let w = Element::from_word(Ring::LoopHomology, 2, &word).unwrap();
        let p = [&u(2, 2), &a(2, 2), &u(1, 2), &a(1, 2), &u(2, 2)]
            .into_iter()
            .fold(Element::one(Ring::LoopHomology, 2), |acc, g| &acc * g);
        assert_eq!(w, p);
        assert_eq!(su3().degree(&w), Degree::Homogeneous(4 + 2 - 3 - 5 + 4));
        let dup = Element::from_word(Ring::LoopHomology, 2, &[(Odd, 1), (Even, 1), (Odd, 1)]);
        assert!(dup.unwrap().is_zero());
    }

    #[test]
    fn display_forms() {
        let x = &(&a(1, 2) * &u(2, 2).pow(3)).scale(&ratio(-1, 2))
            + &Element::one(Ring::LoopHomology, 2);
        assert_eq!(x.to_string(), "-1/2*a1*u2^3 + 1");
        assert_eq!(x.pretty(), "-1/2·a₁u₂³ + 1");
        assert_eq!(Element::zero(Ring::Cohomology, 1).to_string(), "0");
    }

    #[test]
    fn homogeneous_split() {
        let m = su3();
        let x = &(&a(1, 2) + &u(1, 2)) + &u(2, 2).pow(2);
        let parts = m.homogeneous_components(&x);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-3, 2, 8]);
        let [even, odd] = x.parity_parts();
        assert_eq!(odd, a(1, 2));
        assert_eq!(even.len(), 2);
    }
}
