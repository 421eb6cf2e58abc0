use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BinaryWord;
use crate::error::{Error, Result};

/// An eventually periodic point `pre · per^ω` of Cantor space.
///
/// Always held in canonical form: the period is primitive and the preperiod
/// is as short as possible. Structural equality is therefore equality of the
/// denoted sequences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pre: BinaryWord,
    per: BinaryWord,
}

impl Point {
    /// Builds the canonical point denoting `pre · per^ω`.
    pub fn new(pre: BinaryWord, per: BinaryWord) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut pre = pre.bits().to_vec();
        let mut per = primitive_root(per.bits()).to_vec();
        // Absorb trailing preperiod bits into a rotation of the period.
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Point {
            pre: BinaryWord::from_vec_unchecked(pre),
            per: BinaryWord::from_vec_unchecked(per),
        })
    }

    /// `b^ω`.
    pub fn constant(bit: u8) -> Self {
        Point {
            pre: BinaryWord::empty(),
            per: BinaryWord::from_bits([bit]),
        }
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.pre
    }

    pub fn period(&self) -> &BinaryWord {
        &self.per
    }

    pub fn bit(&self, n: usize) -> u8 {
        let pre = self.pre.bits();
        if n < pre.len() {
            pre[n]
        } else {
            let per = self.per.bits();
            per[(n - pre.len()) % per.len()]
        }
    }

    /// The first `n` bits.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord::from_vec_unchecked((0..n).map(|i| self.bit(i)).collect())
    }

    /// Whether the point lies in the cylinder `[word]`.
    pub fn in_cylinder(&self, word: &BinaryWord) -> bool {
        word.bits()
            .iter()
            .enumerate()
            .all(|(i, &b)| self.bit(i) == b)
    }

    /// The tail after dropping the first `n` bits.
    pub fn drop_prefix(&self, n: usize) -> Point {
        if n <= self.pre.len() {
            // A suffix of a minimal preperiod stays minimal.
            return Point {
                pre: self.pre.suffix_from(n),
                per: self.per.clone(),
            };
        }
        let mut per = self.per.bits().to_vec();
        let shift = (n - self.pre.len()) % per.len();
        per.rotate_left(shift);
        Point {
            pre: BinaryWord::empty(),
            per: BinaryWord::from_vec_unchecked(per),
        }
    }

    /// `word · self`, renormalized.
    pub fn prepend(&self, word: &BinaryWord) -> Point {
        Point::new(word.concat(&self.pre), self.per.clone()).expect("period is nonempty")
    }

    /// Number of leading bits that suffice to tell `self` and `other` apart
    /// when they differ: `|pre₁| + |pre₂| + 2·lcm(|per₁|, |per₂|)`.
    pub fn separation_bound(&self, other: &Point) -> usize {
        let (p, q) = (self.per.len(), other.per.len());
        self.pre.len() + other.pre.len() + 2 * (p / gcd(p, q) * q)
    }

    /// Index of the first bit where the two points differ.
    pub fn first_difference(&self, other: &Point) -> Option<usize> {
        (0..self.separation_bound(other)).find(|&i| self.bit(i) != other.bit(i))
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive_root(bits: &[u8]) -> &[u8] {
    let n = bits.len();
    (1..=n)
        .filter(|&d| n.is_multiple_of(d))
        .find(|&d| bits.chunks(d).all(|c| c == &bits[..d]))
        .map(|d| &bits[..d])
        .unwrap_or(bits)
}

/// `pre(per)`, e.g. `1(0)` for `1000…` and `(01)` for `0101…`.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})",
            self.pre.to_bit_string(),
            self.per.to_bit_string()
        )
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Accepts `pre(per)` notation or the JSON object form.
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::InvalidPoint(e.to_string()));
        }
        let bad = || Error::InvalidPoint(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let pre: BinaryWord = s[..open].parse().map_err(|_| bad())?;
        let per: BinaryWord = inner.parse().map_err(|_| bad())?;
        Point::new(pre, per)
    }
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    pre: BinaryWord,
    per: BinaryWord,
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PointRepr {
            pre: self.pre.clone(),
            per: self.per.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PointRepr::deserialize(deserializer)?;
        Point::new(repr.pre, repr.per).map_err(serde::de::Error::custom)
    }
}
