//! Finite binary words, eventually periodic points of Cantor space, prefix
//! codes and clopen cylinder sets.
//!
//! Everything here is exact. Words are stored one bit per byte; ordering is
//! the usual lexicographic order in which a word precedes its extensions.

mod code;
mod cylinder;
mod point;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) use code::split_shallowest;
pub use code::{refine_common, PrefixCode};
pub use cylinder::CylinderSet;
pub use point::Point;

/// A finite word over `{0, 1}`, identified with the cylinder of all
/// sequences it prefixes. The empty word is the whole space.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    /// Panics if any entry is not 0 or 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        let bits: Vec<u8> = bits.into_iter().collect();
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BinaryWord(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.0.push(bit);
    }

    pub fn child(&self, bit: u8) -> Self {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    pub fn parent(&self) -> Option<Self> {
        if self.is_empty() {
            None
        } else {
            Some(BinaryWord(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The word differing from `self` only in its last bit.
    pub fn sibling(&self) -> Option<Self> {
        let mut w = self.clone();
        let last = w.0.last_mut()?;
        *last ^= 1;
        Some(w)
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.0);
        bits.extend_from_slice(&other.0);
        BinaryWord(bits)
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Prefix-comparable words denote nested cylinders; incomparable words
    /// denote disjoint ones.
    pub fn is_comparable(&self, other: &BinaryWord) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The suffix left after removing the first `n` bits.
    pub fn suffix_from(&self, n: usize) -> Self {
        BinaryWord(self.0[n.min(self.len())..].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Self {
        BinaryWord(self.0[..n.min(self.len())].to_vec())
    }

    /// `self` followed by zeros up to length `n` (unchanged if already that long).
    pub fn padded(&self, n: usize) -> Self {
        let mut w = self.clone();
        while w.len() < n {
            w.push(0);
        }
        w
    }

    /// Big-endian binary expansion of `value` in exactly `width` bits.
    pub fn from_index(value: usize, width: usize) -> Self {
        BinaryWord((0..width).rev().map(|i| ((value >> i) & 1) as u8).collect())
    }

    pub(crate) fn from_vec_unchecked(bits: Vec<u8>) -> Self {
        BinaryWord(bits)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl BinaryWord {
    /// The plain bit string, with the empty word rendered as `""`.
    pub fn to_bit_string(&self) -> String {
        self.0
            .iter()
            .map(|&b| if b == 0 { '0' } else { '1' })
            .collect()
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and fixed data: `w("010")`. Panics on bad input.
pub fn w(s: &str) -> BinaryWord {
    s.parse().expect("valid bit string")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(w("0110").bits(), &[0, 1, 1, 0]);
        assert_eq!(w("").to_string(), "ε");
        assert_eq!(w("ε"), BinaryWord::empty());
        assert!("012".parse::<BinaryWord>().is_err());
    }

    #[test]
    fn ordering_puts_prefixes_first() {
        let mut v = vec![w("1"), w("01"), w("0"), w(""), w("00")];
        v.sort();
        assert_eq!(v, vec![w(""), w("0"), w("00"), w("01"), w("1")]);
    }

    #[test]
    fn sibling_and_parent() {
        assert_eq!(w("010").sibling(), Some(w("011")));
        assert_eq!(w("").sibling(), None);
        assert_eq!(w("01").parent(), Some(w("0")));
    }

    #[test]
    fn index_words() {
        assert_eq!(BinaryWord::from_index(5, 4), w("0101"));
        assert_eq!(BinaryWord::from_index(0, 0), w(""));
        assert_eq!(w("1").padded(3), w("100"));
    }

    #[test]
    fn json_is_plain_string() {
        assert_eq!(serde_json::to_string(&w("")).unwrap(), "\"\"");
        let back: BinaryWord = serde_json::from_str("\"101\"").unwrap();
        assert_eq!(back, w("101"));
    }
}
