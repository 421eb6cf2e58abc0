use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::code::check_antichain;
use super::{BinaryWord, Point};
use crate::error::Result;

/// A clopen subset of Cantor space, stored as a reduced sorted antichain:
/// no two words are siblings, so equal sets have equal representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CylinderSet {
    words: Vec<BinaryWord>,
}

impl CylinderSet {
    /// Canonical form of `⋃ [w]` for an antichain of words.
    pub fn reduce(words: impl IntoIterator<Item = BinaryWord>) -> Result<Self> {
        let mut words: Vec<BinaryWord> = words.into_iter().collect();
        words.sort();
        check_antichain(&words)?;
        Ok(Self::from_sorted_antichain(words))
    }

    /// Canonical form of `⋃ [w]` for arbitrary words; words covered by a
    /// shorter one are dropped first.
    pub fn union_of(words: impl IntoIterator<Item = BinaryWord>) -> Self {
        let mut words: Vec<BinaryWord> = words.into_iter().collect();
        words.sort();
        words.dedup();
        let mut kept: Vec<BinaryWord> = Vec::with_capacity(words.len());
        for w in words {
            if kept.last().is_none_or(|k| !k.is_prefix_of(&w)) {
                kept.push(w);
            }
        }
        Self::from_sorted_antichain(kept)
    }

    fn from_sorted_antichain(sorted: Vec<BinaryWord>) -> Self {
        // Siblings are adjacent in sorted order; a merged parent can only
        // pair with the element directly below it on the stack or the next
        // input word.
        let mut stack: Vec<BinaryWord> = Vec::with_capacity(sorted.len());
        for w in sorted {
            let mut cur = w;
            while let Some(top) = stack.last() {
                if cur.last() == Some(1) && top.sibling().as_ref() == Some(&cur) {
                    stack.pop();
                    cur = cur.parent().expect("nonempty");
                } else {
                    break;
                }
            }
            stack.push(cur);
        }
        CylinderSet { words: stack }
    }

    pub fn empty() -> Self {
        CylinderSet { words: Vec::new() }
    }

    pub fn whole() -> Self {
        CylinderSet {
            words: vec![BinaryWord::empty()],
        }
    }

    pub fn cylinder(word: BinaryWord) -> Self {
        CylinderSet { words: vec![word] }
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        self.words.iter().any(|w| x.in_cylinder(w))
    }

    pub fn intersection(&self, other: &CylinderSet) -> CylinderSet {
        let mut out = Vec::new();
        for u in &self.words {
            for v in &other.words {
                if u.is_prefix_of(v) {
                    out.push(v.clone());
                } else if v.is_prefix_of(u) {
                    out.push(u.clone());
                }
            }
        }
        CylinderSet::union_of(out)
    }

    pub fn union(&self, other: &CylinderSet) -> CylinderSet {
        CylinderSet::union_of(self.words.iter().chain(&other.words).cloned())
    }

    pub fn complement(&self) -> CylinderSet {
        if self.words.is_empty() {
            return CylinderSet::whole();
        }
        let members: BTreeSet<&BinaryWord> = self.words.iter().collect();
        let mut inner: BTreeSet<BinaryWord> = BTreeSet::new();
        for w in &self.words {
            for n in 0..w.len() {
                inner.insert(w.prefix(n));
            }
        }
        let mut out = Vec::new();
        for p in &inner {
            for bit in [0, 1] {
                let c = p.child(bit);
                if !inner.contains(&c) && !members.contains(&c) {
                    out.push(c);
                }
            }
        }
        CylinderSet::union_of(out)
    }

    pub fn difference(&self, other: &CylinderSet) -> CylinderSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &CylinderSet) -> bool {
        self.intersection(other) == *self
    }

    pub fn is_disjoint(&self, other: &CylinderSet) -> bool {
        self.intersection(other).is_empty()
    }
}

impl Serialize for CylinderSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.words.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CylinderSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let words = Vec::<BinaryWord>::deserialize(deserializer)?;
        CylinderSet::reduce(words).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn set(ws: &[&str]) -> CylinderSet {
        CylinderSet::reduce(ws.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(set(&["10", "11"]).words(), &[w("1")]);
        assert_eq!(set(&["00", "01", "10", "11"]).words(), &[w("")]);
        assert_eq!(set(&["0", "10"]).words(), &[w("0"), w("10")]);
        assert!(CylinderSet::reduce([w("1"), w("10")]).is_err());
    }

    #[test]
    fn reduce_cascades_both_directions() {
        assert_eq!(set(&["0", "10", "110", "111"]), CylinderSet::whole());
        assert_eq!(set(&["000", "001", "01", "1"]), CylinderSet::whole());
        assert_eq!(set(&["010", "011", "00"]).words(), &[w("0")]);
    }

    #[test]
    fn boolean_operations() {
        let a = set(&["0"]);
        let b = set(&["01", "1"]);
        assert_eq!(a.intersection(&b), set(&["01"]));
        assert_eq!(a.union(&b), CylinderSet::whole());
        assert_eq!(a.complement(), set(&["1"]));
        assert_eq!(set(&["010"]).complement(), set(&["00", "011", "1"]));
        assert_eq!(CylinderSet::whole().complement(), CylinderSet::empty());
        assert_eq!(b.difference(&a), set(&["1"]));
        assert!(set(&["10", "11"]).is_subset(&set(&["1"])));
        assert!(!set(&["1"]).is_subset(&set(&["10"])));
        assert!(set(&["0"]).is_disjoint(&set(&["10", "11"])));
    }

    #[test]
    fn union_of_drops_covered_words() {
        assert_eq!(
            CylinderSet::union_of([w("01"), w("0"), w("011")]),
            set(&["0"])
        );
    }
}
