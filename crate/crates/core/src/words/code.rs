use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BinaryWord, Point};
use crate::error::{Error, Result};

/// A finite antichain of binary words, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixCode {
    words: Vec<BinaryWord>,
}

impl PrefixCode {
    /// Rejects inputs in which some word is a prefix of another (duplicates
    /// included).
    pub fn new(words: impl IntoIterator<Item = BinaryWord>) -> Result<Self> {
        let mut words: Vec<BinaryWord> = words.into_iter().collect();
        words.sort();
        check_antichain(&words)?;
        Ok(PrefixCode { words })
    }

    pub(crate) fn from_sorted_unchecked(words: Vec<BinaryWord>) -> Self {
        debug_assert!(check_antichain(&words).is_ok());
        PrefixCode { words }
    }

    /// `{ε}`, the trivial partition of Cantor space.
    pub fn root() -> Self {
        PrefixCode {
            words: vec![BinaryWord::empty()],
        }
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn into_words(self) -> Vec<BinaryWord> {
        self.words
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(BinaryWord::len).max().unwrap_or(0)
    }

    /// Whether the Kraft sum `Σ 2^(−|u|)` equals one.
    pub fn is_complete(&self) -> bool {
        kraft_is_complete(&self.words)
    }

    /// Index of the code word that is a prefix of `word`, if any.
    pub fn index_of_prefix(&self, word: &BinaryWord) -> Option<usize> {
        // In a sorted antichain the only candidate is the last word <= `word`.
        let idx = self.words.partition_point(|u| u <= word);
        let i = idx.checked_sub(1)?;
        self.words[i].is_prefix_of(word).then_some(i)
    }

    /// Index of the code word prefixing the point. Always `Some` for a
    /// complete code.
    pub fn index_of_point_prefix(&self, x: &Point) -> Option<usize> {
        self.index_of_prefix(&x.prefix(self.max_len()))
    }

    /// Indices of code words having `word` as a (not necessarily proper) prefix.
    pub fn extensions_of(&self, word: &BinaryWord) -> std::ops::Range<usize> {
        let start = self.words.partition_point(|u| u < word);
        let len = self.words[start..]
            .iter()
            .take_while(|u| word.is_prefix_of(u))
            .count();
        start..start + len
    }

    /// Complete prefix code of exactly `m` words refining `self`, obtained by
    /// repeatedly splitting the lexicographically smallest of the shortest
    /// words.
    pub fn subdivide_to_size(&self, m: usize) -> Result<PrefixCode> {
        if !self.is_complete() {
            return Err(Error::IncompleteCode { which: "input" });
        }
        if m < self.len() {
            return Err(Error::SubdivideTooSmall {
                have: self.len(),
                want: m,
            });
        }
        Ok(PrefixCode::from_sorted_unchecked(split_shallowest(
            self.words.clone(),
            m,
        )))
    }
}

/// Splits the antichain `words` (any antichain, complete or not) until it
/// holds `m` words, always splitting the lexicographically smallest of the
/// shortest words. Returns the sorted result.
pub(crate) fn split_shallowest(words: Vec<BinaryWord>, m: usize) -> Vec<BinaryWord> {
    let mut queue: BTreeSet<(usize, BinaryWord)> =
        words.into_iter().map(|w| (w.len(), w)).collect();
    while queue.len() < m {
        let Some((_, w)) = queue.pop_first() else {
            break;
        };
        let (l, r) = (w.child(0), w.child(1));
        queue.insert((l.len(), l));
        queue.insert((r.len(), r));
    }
    let mut out: Vec<BinaryWord> = queue.into_iter().map(|(_, w)| w).collect();
    out.sort();
    out
}

pub(crate) fn check_antichain(sorted: &[BinaryWord]) -> Result<()> {
    // Sorted order places every extension of `u` directly after `u`, so
    // checking neighbours suffices.
    for pair in sorted.windows(2) {
        if pair[0].is_prefix_of(&pair[1]) {
            return Err(Error::NotAntichain {
                prefix: pair[0].clone(),
                word: pair[1].clone(),
            });
        }
    }
    Ok(())
}

/// Exact Kraft test with per-length counts and binary carries: the sum is
/// one iff every level carries an even count up to a single root.
pub(crate) fn kraft_is_complete(words: &[BinaryWord]) -> bool {
    let Some(max) = words.iter().map(BinaryWord::len).max() else {
        return false;
    };
    let mut counts = vec![0usize; max + 1];
    for w in words {
        counts[w.len()] += 1;
    }
    for level in (1..=max).rev() {
        if !counts[level].is_multiple_of(2) {
            return false;
        }
        counts[level - 1] += counts[level] / 2;
    }
    counts[0] == 1
}

/// The coarsest complete prefix code refining both inputs: the maximal
/// words of `a ∪ b`.
pub fn refine_common(a: &PrefixCode, b: &PrefixCode) -> Result<PrefixCode> {
    if !a.is_complete() {
        return Err(Error::IncompleteCode { which: "first" });
    }
    if !b.is_complete() {
        return Err(Error::IncompleteCode { which: "second" });
    }
    let mut all: Vec<BinaryWord> = a.words.iter().chain(&b.words).cloned().collect();
    all.sort();
    all.dedup();
    let leaves = all
        .iter()
        .enumerate()
        .filter(|(i, w)| all.get(i + 1).is_none_or(|next| !w.is_prefix_of(next)))
        .map(|(_, w)| w.clone())
        .collect();
    Ok(PrefixCode::from_sorted_unchecked(leaves))
}

impl Serialize for PrefixCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.words.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PrefixCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let words = Vec::<BinaryWord>::deserialize(deserializer)?;
        PrefixCode::new(words).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn code(ws: &[&str]) -> PrefixCode {
        PrefixCode::new(ws.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn kraft_examples() {
        assert!(code(&["0", "10", "11"]).is_complete());
        assert!(!code(&["0", "10"]).is_complete());
        assert!(code(&[""]).is_complete());
        assert!(!PrefixCode::new([]).unwrap().is_complete());
        assert!(code(&["000", "001", "01", "1"]).is_complete());
        assert!(!code(&["00", "01", "10"]).is_complete());
    }

    #[test]
    fn rejects_non_antichain() {
        let err = PrefixCode::new([w("0"), w("01")]).unwrap_err();
        assert_eq!(
            err,
            Error::NotAntichain {
                prefix: w("0"),
                word: w("01")
            }
        );
        assert!(PrefixCode::new([w("1"), w("1")]).is_err());
        assert!(PrefixCode::new([w(""), w("1")]).is_err());
    }

    #[test]
    fn refine_examples() {
        let r = refine_common(&code(&["0", "1"]), &code(&["00", "01", "1"])).unwrap();
        assert_eq!(r, code(&["00", "01", "1"]));
        let r = refine_common(&code(&["0", "10", "11"]), &code(&["00", "01", "1"])).unwrap();
        assert_eq!(r, code(&["00", "01", "10", "11"]));
        let r = refine_common(&code(&[""]), &code(&["0", "1"])).unwrap();
        assert_eq!(r, code(&["0", "1"]));
        assert!(refine_common(&code(&["0"]), &code(&["0", "1"])).is_err());
    }

    #[test]
    fn subdivide_examples() {
        assert_eq!(
            code(&["0", "1"]).subdivide_to_size(3).unwrap(),
            code(&["00", "01", "1"])
        );
        assert_eq!(
            PrefixCode::root().subdivide_to_size(2).unwrap(),
            code(&["0", "1"])
        );
        assert_eq!(
            code(&["0", "1"]).subdivide_to_size(4).unwrap(),
            code(&["00", "01", "10", "11"])
        );
        assert_eq!(
            code(&["0", "1"]).subdivide_to_size(1),
            Err(Error::SubdivideTooSmall { have: 2, want: 1 })
        );
    }

    #[test]
    fn prefix_lookup() {
        let c = code(&["0", "10", "11"]);
        assert_eq!(c.index_of_prefix(&w("0110")), Some(0));
        assert_eq!(c.index_of_prefix(&w("11")), Some(2));
        assert_eq!(c.index_of_prefix(&w("1")), None);
        assert_eq!(c.extensions_of(&w("1")), 1..3);
        assert_eq!(c.extensions_of(&w("01")), 1..1);
        assert_eq!(c.extensions_of(&w("")), 0..3);
    }
}
