use std::cmp::Ordering;
use std::fmt;

use crate::combinatorics::{
    multisets, rank_multiset_elements, unrank_multiset_elements, Rank,
};
use crate::{Error, Result};

/// A `k`-multiset over the universe `[m] = {1, ..., m}`, stored as its
/// multiplicity vector: `counts[i]` is the number of copies of element
/// `i + 1`, and the counts sum to `k ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    /// Builds a multiset from its multiplicity vector.
    pub fn from_counts(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NotCanonical("universe must have m ≥ 1 elements".into()));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::NotCanonical("multiset must have cardinality k ≥ 1".into()));
        }
        Ok(Multiset { counts })
    }

    /// Builds a multiset over `[m]` from an element list (any order,
    /// repetitions allowed).
    pub fn from_elements(m: u32, elements: &[u32]) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotCanonical("universe must have m ≥ 1 elements".into()));
        }
        let mut counts = vec![0u32; m as usize];
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::NotCanonical(format!(
                    "element {e} outside universe [{m}]"
                )));
            }
            counts[e as usize - 1] += 1;
        }
        Self::from_counts(counts)
    }

    /// Universe size `m`.
    pub fn m(&self) -> u32 {
        self.counts.len() as u32
    }

    /// Cardinality `k` (total number of elements, with repetition).
    pub fn k(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Multiplicity of element `x` (1-based).
    pub fn count_of(&self, x: u32) -> u32 {
        assert!(x >= 1 && x <= self.m(), "element {x} outside universe");
        self.counts[x as usize - 1]
    }

    pub fn contains(&self, x: u32) -> bool {
        self.count_of(x) > 0
    }

    /// Sorted element list with repetitions, e.g. `[1, 2, 2, 4]`.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k() as usize);
        for (i, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    /// The set of distinct elements present in the multiset.
    pub fn support(&self) -> Support {
        Support {
            elements: self
                .counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, _)| i as u32 + 1)
                .collect(),
        }
    }

    pub fn support_size(&self) -> u32 {
        self.counts.iter().filter(|&&c| c > 0).count() as u32
    }

    /// Size of the multiset intersection: `Σ_i min(a_i, b_i)`, counting
    /// common elements with repetitions.
    ///
    /// # Panics
    /// When the two multisets do not share the same `(m, k)` context.
    pub fn intersection_size(&self, other: &Multiset) -> u32 {
        assert_eq!(
            self.m(),
            other.m(),
            "intersection_size: universe mismatch"
        );
        debug_assert_eq!(self.k(), other.k(), "intersection_size: cardinality mismatch");
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.min(b))
            .sum()
    }

    pub fn is_disjoint(&self, other: &Multiset) -> bool {
        self.counts
            .iter()
            .zip(&other.counts)
            .all(|(&a, &b)| a.min(b) == 0)
    }

    /// Pointwise multiplicity dominance: `self` contains `other` as a
    /// multiset. The two need only share the universe.
    pub fn dominates(&self, other: &Multiset) -> bool {
        assert_eq!(self.m(), other.m(), "dominates: universe mismatch");
        self.counts.iter().zip(&other.counts).all(|(&a, &b)| a >= b)
    }

    /// Canonical rank within the `(m, k)` class (lexicographic on element
    /// lists).
    pub fn rank(&self) -> Result<Rank> {
        rank_multiset_elements(&self.elements(), self.m())
    }

    pub fn unrank(rank: Rank, m: u32, k: u32) -> Result<Self> {
        let elements = unrank_multiset_elements(rank, m, k)?;
        Self::from_elements(m, &elements)
    }

    /// Parses an element list such as `"1 2 2 4"` over universe `[m]`.
    pub fn parse_elements(m: u32, text: &str) -> Result<Self> {
        let elements: Vec<u32> = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad element {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Self::from_elements(m, &elements)
    }
}

impl Ord for Multiset {
    /// Canonical order: by `(m, k)` context first, then lexicographic on the
    /// sorted element list. Within a fixed context this matches rank order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.m()
            .cmp(&other.m())
            .then_with(|| self.k().cmp(&other.k()))
            // Element-lex order: the multiset with more copies of the first
            // differing element is the smaller one.
            .then_with(|| {
                for (a, b) in self.counts.iter().zip(&other.counts) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Multiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}@{}", self, self.m())
    }
}

/// All `k`-multisets of `[m]` in canonical rank order.
pub fn all_multisets(m: u32, k: u32) -> impl Iterator<Item = Multiset> {
    multisets(m, k).map(move |elements| {
        Multiset::from_elements(m, &elements).expect("enumerated multiset is canonical")
    })
}

/// The set of distinct elements of a multiset, sorted ascending. Always
/// nonempty for a valid multiset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Support {
    elements: Vec<u32>,
}

impl Support {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_disjoint(&self, other: &Support) -> bool {
        self.elements.iter().all(|e| !other.contains(*e))
    }

    /// `[m] \ support`, sorted ascending. Empty only for full support.
    pub fn complement(&self, m: u32) -> Vec<u32> {
        (1..=m).filter(|x| !self.contains(*x)).collect()
    }

    /// True when every element of `self` also lies in `other`.
    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.elements.iter().all(|e| other.contains(*e))
    }

    /// Number of common elements with a sorted slice.
    pub fn intersection_with_set(&self, sorted: &[u32]) -> u32 {
        self.elements
            .iter()
            .filter(|e| sorted.binary_search(e).is_ok())
            .count() as u32
    }
}
