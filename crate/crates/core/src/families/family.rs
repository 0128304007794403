use std::fmt;

use super::multiset::Multiset;
use crate::{Error, Result};

/// A finite collection of distinct `k`-multisets sharing one `(m, k)`
/// context, stored sorted in canonical rank order so that set comparisons
/// and serialized output are reproducible.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    m: u32,
    k: u32,
    members: Vec<Multiset>,
}

impl Family {
    pub fn empty(m: u32, k: u32) -> Self {
        Family {
            m,
            k,
            members: Vec::new(),
        }
    }

    /// Collects members into a family, checking the shared context and
    /// removing duplicates.
    pub fn new(m: u32, k: u32, members: impl IntoIterator<Item = Multiset>) -> Result<Self> {
        let mut members: Vec<Multiset> = members.into_iter().collect();
        for a in &members {
            if a.m() != m || a.k() != k {
                return Err(Error::ContextMismatch(format!(
                    "family context is (m={m}, k={k}) but member {{{a}}} has (m={}, k={})",
                    a.m(),
                    a.k()
                )));
            }
        }
        members.sort();
        members.dedup();
        Ok(Family { m, k, members })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Multiset] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Multiset> {
        self.members.iter()
    }

    pub fn contains(&self, a: &Multiset) -> bool {
        self.members.binary_search(a).is_ok()
    }

    fn assert_same_context(&self, other: &Family) {
        assert!(
            self.m == other.m && self.k == other.k,
            "family context mismatch: (m={}, k={}) vs (m={}, k={})",
            self.m,
            self.k,
            other.m,
            other.k
        );
    }

    pub fn union(&self, other: &Family) -> Family {
        self.assert_same_context(other);
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        members.sort();
        members.dedup();
        Family {
            m: self.m,
            k: self.k,
            members,
        }
    }

    pub fn difference(&self, other: &Family) -> Family {
        self.assert_same_context(other);
        Family {
            m: self.m,
            k: self.k,
            members: self
                .members
                .iter()
                .filter(|a| !other.contains(a))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.assert_same_context(other);
        self.members.iter().all(|a| other.contains(a))
    }

    /// True when every pair of distinct members has multiset intersection of
    /// size at least `t`. Empty and singleton families qualify vacuously.
    pub fn is_t_intersecting(&self, t: u32) -> bool {
        self.first_violating_pair(t).is_none()
    }

    /// First (by canonical order) pair of members whose intersection is
    /// smaller than `t`, if any.
    pub fn first_violating_pair(&self, t: u32) -> Option<(&Multiset, &Multiset)> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if a.intersection_size(b) < t {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// An element contained in every member (the defining witness of a star),
    /// smallest first, if one exists.
    pub fn common_element(&self) -> Option<u32> {
        (1..=self.m).find(|&x| self.members.iter().all(|a| a.contains(x)))
    }

    /// Serializes to the interchange form: a JSON array of length-`m` counts
    /// vectors, members in canonical order.
    pub fn to_json(&self) -> String {
        let rows: Vec<&[u32]> = self.members.iter().map(|a| a.counts()).collect();
        serde_json::to_string(&rows).expect("counts vectors always serialize")
    }

    /// Parses the JSON interchange form, inferring `(m, k)` from the rows.
    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u32>> = serde_json::from_str(text)?;
        let first = rows
            .first()
            .ok_or_else(|| Error::Parse("empty family file: cannot infer (m, k)".into()))?;
        let m = first.len() as u32;
        let k: u32 = first.iter().sum();
        let members = rows
            .into_iter()
            .map(Multiset::from_counts)
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, k, members)
    }

    /// Human-readable form: one member per line as a space-separated element
    /// list (e.g. `1 2 2 4`).
    pub fn to_element_text(&self) -> String {
        let mut out = String::new();
        for a in &self.members {
            out.push_str(&a.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_element_text(m: u32, text: &str) -> Result<Self> {
        let members = text
            .lines()
            .filter(|line| !line.trim().is_empty())
            .map(|line| Multiset::parse_elements(m, line))
            .collect::<Result<Vec<_>>>()?;
        let k = members
            .first()
            .map(|a| a.k())
            .ok_or_else(|| Error::Parse("empty family text".into()))?;
        Self::new(m, k, members)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Family(m={}, k={}, {} members)",
            self.m,
            self.k,
            self.members.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::multiset::all_multisets;

    fn ms(m: u32, elems: &[u32]) -> Multiset {
        Multiset::from_elements(m, elems).unwrap()
    }

    #[test]
    fn dedup_and_order() {
        let f = Family::new(
            3,
            2,
            vec![ms(3, &[1, 3]), ms(3, &[1, 1]), ms(3, &[1, 3])],
        )
        .unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.members()[0], ms(3, &[1, 1]));
        assert!(f.contains(&ms(3, &[1, 3])));
        assert!(!f.contains(&ms(3, &[2, 3])));
    }

    #[test]
    fn context_is_enforced() {
        assert!(Family::new(3, 2, vec![ms(2, &[1, 1])]).is_err());
        assert!(Family::new(3, 2, vec![ms(3, &[1, 1, 1])]).is_err());
    }

    #[test]
    fn intersecting_checks() {
        let not = Family::new(2, 2, vec![ms(2, &[1, 1]), ms(2, &[1, 2]), ms(2, &[2, 2])]).unwrap();
        assert!(!not.is_t_intersecting(1));
        let (a, b) = not.first_violating_pair(1).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("1 1".into(), "2 2".into()));
        assert!(Family::empty(4, 2).is_t_intersecting(1));
        assert!(Family::new(4, 2, vec![ms(4, &[3, 4])]).unwrap().is_t_intersecting(2));
    }

    #[test]
    fn common_element_detects_stars() {
        let star = Family::new(3, 2, vec![ms(3, &[1, 1]), ms(3, &[1, 2]), ms(3, &[1, 3])]).unwrap();
        assert_eq!(star.common_element(), Some(1));
        let all: Family = Family::new(2, 2, all_multisets(2, 2)).unwrap();
        assert_eq!(all.common_element(), None);
    }

    #[test]
    fn json_roundtrip_and_text() {
        let f = Family::new(3, 2, vec![ms(3, &[1, 2]), ms(3, &[1, 1])]).unwrap();
        let json = f.to_json();
        assert_eq!(json, "[[2,0,0],[1,1,0]]");
        assert_eq!(Family::from_json(&json).unwrap(), f);
        assert_eq!(f.to_element_text(), "1 1\n1 2\n");
        assert_eq!(Family::from_element_text(3, &f.to_element_text()).unwrap(), f);
        assert!(Family::from_json("[]").is_err());
    }
}
