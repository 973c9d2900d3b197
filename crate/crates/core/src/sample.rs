//! Seeded sampling of random homogeneous elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Element, Monomial, Rational, Ring};
use crate::model::ModelSpec;

/// Default cap on the total even exponent of sampled monomials.
pub const DEFAULT_EXPONENT_CAP: u32 = 8;

/// An inclusive range of graded degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeWindow {
    pub min: i64,
    pub max: i64,
}

impl DegreeWindow {
    pub fn new(min: i64, max: i64) -> Self {
        assert!(min <= max, "empty degree window [{min}, {max}]");
        DegreeWindow { min, max }
    }

    pub fn single(d: i64) -> Self {
        DegreeWindow { min: d, max: d }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.min <= d && d <= self.max
    }
}

/// Every basis monomial of a ring inside a degree window, grouped by degree.
#[derive(Debug, Clone)]
pub struct MonomialTable {
    ring: Ring,
    rank: usize,
    by_degree: BTreeMap<i64, Vec<Monomial>>,
}

impl MonomialTable {
    pub fn new(model: &ModelSpec, ring: Ring, window: DegreeWindow, exponent_cap: u32) -> Self {
        let rank = model.rank();
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        let even_cap = if ring.admits_even() { exponent_cap } else { 0 };
        let exponent_vectors = exponent_vectors(rank, even_cap);
        for mask in 0..(1u64 << rank) {
            for exps in &exponent_vectors {
                let m = Monomial::from_mask(mask, exps.clone());
                let d = model.monomial_degree(ring, &m);
                if window.contains(d) {
                    by_degree.entry(d).or_default().push(m);
                }
            }
        }
        MonomialTable {
            ring,
            rank,
            by_degree,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn monomials(&self, degree: i64) -> &[Monomial] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn all(&self) -> impl Iterator<Item = (i64, &Monomial)> {
        self.by_degree
            .iter()
            .flat_map(|(&d, ms)| ms.iter().map(move |m| (d, m)))
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// A random homogeneous element: a degree chosen uniformly among those
    /// present, then up to `max_terms` distinct monomials of that degree
    /// with small nonzero rational coefficients.
    pub fn sample<R: Rng>(&self, rng: &mut R, max_terms: usize) -> Element {
        let degrees: Vec<i64> = self.degrees().collect();
        match degrees.choose(rng) {
            None => Element::zero(self.ring, self.rank),
            Some(&d) => self.sample_in_degree(rng, d, max_terms),
        }
    }

    pub fn sample_in_degree<R: Rng>(&self, rng: &mut R, degree: i64, max_terms: usize) -> Element {
        let pool = self.monomials(degree);
        if pool.is_empty() {
            return Element::zero(self.ring, self.rank);
        }
        let count = rng.gen_range(1..=max_terms.max(1)).min(pool.len());
        let picks = pool.choose_multiple(rng, count);
        Element::from_terms(
            self.ring,
            self.rank,
            picks
                .map(|m| (m.clone(), small_rational(rng)))
                .collect::<Vec<_>>(),
        )
    }
}

fn exponent_vectors(rank: usize, cap: u32) -> Vec<Vec<u32>> {
    fn go(rank: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == rank {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            go(rank, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, cap, &mut Vec::with_capacity(rank), &mut out);
    out
}

/// `±n/m` with `1 ≤ n ≤ 5`, `1 ≤ m ≤ 3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(1..=5);
    let den: i64 = rng.gen_range(1..=3);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(BigInt::from(sign * num), BigInt::from(den))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws one random homogeneous element with degree in `window`,
/// deterministically from `seed`, using [`DEFAULT_EXPONENT_CAP`].
pub fn random_element(
    model: &ModelSpec,
    ring: Ring,
    window: DegreeWindow,
    max_terms: usize,
    seed: u64,
) -> Element {
    random_element_with_cap(model, ring, window, max_terms, seed, DEFAULT_EXPONENT_CAP)
}

pub fn random_element_with_cap(
    model: &ModelSpec,
    ring: Ring,
    window: DegreeWindow,
    max_terms: usize,
    seed: u64,
    exponent_cap: u32,
) -> Element {
    assert!(max_terms >= 1, "max_terms must be at least 1");
    let table = MonomialTable::new(model, ring, window, exponent_cap);
    table.sample(&mut seeded_rng(seed), max_terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Degree;

    #[test]
    fn single_monomial_window() {
        let s3 = ModelSpec::sphere(3).unwrap();
        let x = random_element(&s3, Ring::LoopHomology, DegreeWindow::single(-3), 1, 7);
        assert_eq!(x.len(), 1);
        let (m, c) = x.terms().next().unwrap();
        assert_eq!(m, &Monomial::new(&[0], vec![0]));
        assert!(*c != Rational::from_integer(0.into()));
        let y = random_element(&s3, Ring::LoopHomology, DegreeWindow::single(-3), 1, 7);
        assert_eq!(x, y);
    }

    #[test]
    fn degree_two_is_spanned_by_u() {
        // Brute-force: a^e u^k has degree 2k - 3e; degree 2 forces e = 0, k = 1.
        let s3 = ModelSpec::sphere(3).unwrap();
        let mut expected = Vec::new();
        for e in 0..=1u32 {
            for k in 0..=8u32 {
                if 2 * k as i64 - 3 * e as i64 == 2 {
                    expected.push(Monomial::new(if e == 1 { &[0] } else { &[] }, vec![k]));
                }
            }
        }
        assert_eq!(expected, vec![Monomial::new(&[], vec![1])]);
        let x = random_element(&s3, Ring::LoopHomology, DegreeWindow::single(2), 2, 11);
        assert!(x.terms().all(|(m, _)| expected.contains(m)));
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn samples_are_homogeneous_and_in_window() {
        let su3 = ModelSpec::special_unitary(3).unwrap();
        let window = DegreeWindow::new(-10, 16);
        for seed in 0..50 {
            for ring in [Ring::LoopHomology, Ring::Cohomology, Ring::BaseCohomology] {
                let x = random_element(&su3, ring, window, 4, seed);
                match su3.degree(&x) {
                    Degree::Homogeneous(d) => assert!(window.contains(d)),
                    other => panic!("unexpected degree {other:?}"),
                }
                if ring == Ring::BaseCohomology {
                    assert!(x.is_exterior());
                }
            }
        }
    }

    #[test]
    fn empty_window_gives_zero() {
        let s3 = ModelSpec::sphere(3).unwrap();
        let x = random_element(&s3, Ring::LoopHomology, DegreeWindow::single(-5), 3, 0);
        assert!(x.is_zero());
    }
}
