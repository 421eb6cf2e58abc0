//! Elements of Thompson's group V as prefix-replacement maps between
//! complete prefix codes, in reduced canonical form.

mod pingpong;
mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{refine_common, BinaryWord, CylinderSet, Point, PrefixCode};

pub use pingpong::{free_generators, pingpong_generators, PINGPONG_A, PINGPONG_B};
pub(crate) use random::random_code as random_code_words;

/// Default bound for [`VElement::order`].
pub const DEFAULT_ORDER_BOUND: usize = 12;

/// A homeomorphism `u·x ↦ φ(u)·x` of Cantor space.
///
/// Pairs are sorted by domain word and contain no reducible sibling pair
/// (`u0 ↦ v0`, `u1 ↦ v1`), so two elements are equal iff they act equally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VElement {
    pairs: Vec<(BinaryWord, BinaryWord)>,
}

impl VElement {
    pub fn identity() -> Self {
        VElement {
            pairs: vec![(BinaryWord::empty(), BinaryWord::empty())],
        }
    }

    /// Builds an element from `domain[i] ↦ range[j]` for each `(i, j)` in `bij`.
    pub fn make(domain: &PrefixCode, range: &PrefixCode, bij: &[(usize, usize)]) -> Result<Self> {
        if !domain.is_complete() {
            return Err(Error::IncompleteCode { which: "domain" });
        }
        if !range.is_complete() {
            return Err(Error::IncompleteCode { which: "range" });
        }
        if domain.len() != range.len() {
            return Err(Error::CardinalityMismatch {
                domain: domain.len(),
                range: range.len(),
            });
        }
        let n = domain.len();
        if bij.len() != n {
            return Err(Error::NotBijection(format!(
                "{} index pairs for {} words",
                bij.len(),
                n
            )));
        }
        let mut seen_dom = vec![false; n];
        let mut seen_ran = vec![false; n];
        let mut pairs = Vec::with_capacity(n);
        for &(i, j) in bij {
            if i >= n || j >= n {
                return Err(Error::NotBijection(format!(
                    "index pair ({i}, {j}) out of range"
                )));
            }
            if std::mem::replace(&mut seen_dom[i], true) {
                return Err(Error::NotBijection(format!("domain index {i} used twice")));
            }
            if std::mem::replace(&mut seen_ran[j], true) {
                return Err(Error::NotBijection(format!("range index {j} used twice")));
            }
            pairs.push((domain.words()[i].clone(), range.words()[j].clone()));
        }
        Ok(Self::canonical(pairs))
    }

    /// Builds an element from explicit `(u, v)` pairs, validating that both
    /// sides are complete prefix codes and the map is a bijection.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (BinaryWord, BinaryWord)>) -> Result<Self> {
        let pairs: Vec<(BinaryWord, BinaryWord)> = pairs.into_iter().collect();
        let domain = PrefixCode::new(pairs.iter().map(|(u, _)| u.clone()))?;
        let range = PrefixCode::new(pairs.iter().map(|(_, v)| v.clone()))?;
        if !domain.is_complete() {
            return Err(Error::IncompleteCode { which: "domain" });
        }
        if !range.is_complete() {
            return Err(Error::IncompleteCode { which: "range" });
        }
        Ok(Self::canonical(pairs))
    }

    /// Sorts and applies the sibling-merge reduction to a fixed point. The
    /// input must already be a valid bijection between complete codes.
    fn canonical(mut pairs: Vec<(BinaryWord, BinaryWord)>) -> Self {
        pairs.sort();
        let mut stack: Vec<(BinaryWord, BinaryWord)> = Vec::with_capacity(pairs.len());
        for pair in pairs {
            let mut cur = pair;
            while let Some(top) = stack.last() {
                let mergeable = cur.0.last() == Some(1)
                    && cur.1.last() == Some(1)
                    && top.0.sibling().as_ref() == Some(&cur.0)
                    && top.1.sibling().as_ref() == Some(&cur.1);
                if !mergeable {
                    break;
                }
                stack.pop();
                cur = (
                    cur.0.parent().expect("nonempty"),
                    cur.1.parent().expect("nonempty"),
                );
            }
            stack.push(cur);
        }
        VElement { pairs: stack }
    }

    pub fn pairs(&self) -> &[(BinaryWord, BinaryWord)] {
        &self.pairs
    }

    /// Number of pairs in the reduced form.
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(self.pairs.iter().map(|(u, _)| u.clone()).collect())
    }

    pub fn range_code(&self) -> PrefixCode {
        let mut range: Vec<BinaryWord> = self.pairs.iter().map(|(_, v)| v.clone()).collect();
        range.sort();
        PrefixCode::from_sorted_unchecked(range)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].0.is_empty() && self.pairs[0].1.is_empty()
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &VElement) -> VElement {
        let inner_range: BTreeMap<&BinaryWord, &BinaryWord> =
            inner.pairs.iter().map(|(u, v)| (v, u)).collect();
        let inner_range_code = inner.range_code();
        let outer_domain = self.domain_code();
        let common = refine_common(&inner_range_code, &outer_domain).expect("codes are complete");
        let pairs = common
            .words()
            .iter()
            .map(|w| {
                let r = &inner_range_code.words()[inner_range_code
                    .index_of_prefix(w)
                    .expect("refinement has a prefix in each code")];
                let d = outer_domain
                    .index_of_prefix(w)
                    .expect("refinement has a prefix in each code");
                let pulled = inner_range[r].concat(&w.suffix_from(r.len()));
                let pushed = self.pairs[d]
                    .1
                    .concat(&w.suffix_from(self.pairs[d].0.len()));
                (pulled, pushed)
            })
            .collect();
        Self::canonical(pairs)
    }

    pub fn inverse(&self) -> VElement {
        Self::canonical(
            self.pairs
                .iter()
                .map(|(u, v)| (v.clone(), u.clone()))
                .collect(),
        )
    }

    /// `self ∘ self ∘ … ` (`n` times); `n = 0` gives the identity.
    pub fn pow(&self, n: usize) -> VElement {
        (0..n).fold(VElement::identity(), |acc, _| self.compose(&acc))
    }

    /// `self ∘ other ∘ self⁻¹ ∘ other⁻¹`.
    pub fn commutator(&self, other: &VElement) -> VElement {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Smallest `n ≥ 1` with `selfⁿ = id`, searched up to `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    fn pair_for(&self, x: &Point) -> &(BinaryWord, BinaryWord) {
        let depth = self.pairs.iter().map(|(u, _)| u.len()).max().unwrap_or(0);
        let head = x.prefix(depth);
        let idx = self.pairs.partition_point(|(u, _)| u <= &head) - 1;
        debug_assert!(self.pairs[idx].0.is_prefix_of(&head));
        &self.pairs[idx]
    }

    /// The image point, again eventually periodic.
    pub fn act(&self, x: &Point) -> Point {
        let (u, v) = self.pair_for(x);
        x.drop_prefix(u.len()).prepend(v)
    }

    /// Bit `n` of the image of `x`, read off the single replacement pair
    /// that applies to `x` without constructing the image.
    pub fn eval_bit(&self, x: &Point, n: usize) -> u8 {
        let (u, v) = self.pair_for(x);
        if n < v.len() {
            v.bits()[n]
        } else {
            x.bit(n - v.len() + u.len())
        }
    }

    /// The image of a clopen set.
    pub fn image_of(&self, set: &CylinderSet) -> CylinderSet {
        let domain = self.domain_code();
        let mut out = Vec::new();
        for w in set.words() {
            if let Some(i) = domain.index_of_prefix(w) {
                let (u, v) = &self.pairs[i];
                out.push(v.concat(&w.suffix_from(u.len())));
            } else {
                out.extend(domain.extensions_of(w).map(|i| self.pairs[i].1.clone()));
            }
        }
        CylinderSet::union_of(out)
    }

    /// A word `c` with `self([c]) ∩ [c] = ∅`, taken from the first pair
    /// (in canonical order) that is not fixed.
    pub fn displaced_cylinder(&self) -> Result<BinaryWord> {
        let (u, v) = self
            .pairs
            .iter()
            .find(|(u, v)| u != v)
            .ok_or(Error::IdentityElement)?;
        Ok(if !u.is_comparable(v) {
            u.clone()
        } else if u.is_prefix_of(v) {
            u.child(v.bits()[u.len()] ^ 1)
        } else {
            u.child(u.bits()[v.len()] ^ 1)
        })
    }

    /// A point moved by `self`: the displaced cylinder followed by `0^ω`.
    pub fn moved_point(&self) -> Result<Point> {
        Ok(Point::constant(0).prepend(&self.displaced_cylinder()?))
    }
}

impl Mul for &VElement {
    type Output = VElement;

    fn mul(self, rhs: &VElement) -> VElement {
        self.compose(rhs)
    }
}

impl fmt::Debug for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (u, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}→{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    u: BinaryWord,
    v: BinaryWord,
}

impl Serialize for VElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr: Vec<PairRepr> = self
            .pairs
            .iter()
            .map(|(u, v)| PairRepr {
                u: u.clone(),
                v: v.clone(),
            })
            .collect();
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = Vec::<PairRepr>::deserialize(deserializer)?;
        VElement::from_pairs(repr.into_iter().map(|p| (p.u, p.v))).map_err(serde::de::Error::custom)
    }
}

/// `v_make` with explicit `(u, v)` pairs, for fixed data. Panics if invalid.
pub fn velement(pairs: &[(&str, &str)]) -> VElement {
    VElement::from_pairs(
        pairs
            .iter()
            .map(|(u, v)| (u.parse().expect("bits"), v.parse().expect("bits"))),
    )
    .expect("valid element")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{w, PrefixCode};

    fn code(ws: &[&str]) -> PrefixCode {
        PrefixCode::new(ws.iter().map(|s| w(s))).unwrap()
    }

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn make_examples() {
        let a = VElement::make(&code(&["0", "1"]), &code(&["1", "0"]), &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(a, velement(&[("0", "1"), ("1", "0")]));

        let reduced = VElement::make(
            &code(&["00", "01", "1"]),
            &code(&["10", "11", "0"]),
            // indices refer to sorted codes: range sorted is {0, 10, 11}
            &[(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert_eq!(reduced, a);

        let id = VElement::make(&code(&["0", "1"]), &code(&["0", "1"]), &[(0, 0), (1, 1)]).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.pairs(), &[(w(""), w(""))]);
    }

    #[test]
    fn make_errors() {
        assert_eq!(
            VElement::make(&code(&["0"]), &code(&["0", "1"]), &[(0, 0)]),
            Err(Error::IncompleteCode { which: "domain" })
        );
        assert_eq!(
            VElement::make(
                &code(&["0", "1"]),
                &code(&["0", "10", "11"]),
                &[(0, 0), (1, 1)]
            ),
            Err(Error::CardinalityMismatch {
                domain: 2,
                range: 3
            })
        );
        assert!(matches!(
            VElement::make(&code(&["0", "1"]), &code(&["0", "1"]), &[(0, 0), (1, 0)]),
            Err(Error::NotBijection(_))
        ));
        assert!(VElement::from_pairs([(w("0"), w("1")), (w("1"), w("1"))]).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let (a, b) = pingpong_generators();
        assert!((&a * &a).is_identity());
        assert!(b.compose(&b.compose(&b)).is_identity());
        let b2 = &b * &b;
        assert_eq!(b2, velement(&[("0", "11"), ("10", "0"), ("11", "10")]));
        assert_eq!(b.inverse(), b2);
        assert_eq!(a.inverse(), a);
        assert!(VElement::identity().inverse().is_identity());
        assert_ne!(a, b);
    }

    #[test]
    fn act_examples() {
        let (a, b) = pingpong_generators();
        assert_eq!(a.act(&pt("(0)")), pt("1(0)"));
        assert_eq!(b.act(&pt("(0)")), pt("10(0)"));
        assert_eq!(b.act(&pt("(0)")).preperiod(), &w("1"));
        assert_eq!(VElement::identity().act(&pt("01(110)")), pt("01(110)"));
    }

    #[test]
    fn eval_bit_examples() {
        let (_, b) = pingpong_generators();
        assert_eq!(b.eval_bit(&pt("(0)"), 0), 1);
        assert_eq!(b.eval_bit(&pt("(0)"), 5), 0);
    }

    #[test]
    fn cylinder_images() {
        let (a, b) = pingpong_generators();
        let big_b = CylinderSet::reduce([w("10"), w("11")]).unwrap();
        assert_eq!(a.image_of(&big_b), CylinderSet::cylinder(w("0")));
        let a_set = CylinderSet::cylinder(w("0"));
        assert_eq!(b.image_of(&a_set), CylinderSet::cylinder(w("10")));
        assert_eq!((&b * &b).image_of(&a_set), CylinderSet::cylinder(w("11")));
        assert_eq!(VElement::identity().image_of(&big_b), big_b);
        // a cylinder coarser than the domain code is split before mapping
        assert_eq!(
            b.image_of(&CylinderSet::cylinder(w("1"))),
            CylinderSet::reduce([w("0"), w("11")]).unwrap()
        );
    }

    #[test]
    fn displaced_cylinder_examples() {
        let (a, b) = pingpong_generators();
        assert_eq!(a.displaced_cylinder().unwrap(), w("0"));
        assert_eq!(b.displaced_cylinder().unwrap(), w("0"));
        let f = velement(&[("0", "01"), ("10", "00"), ("11", "1")]);
        assert_eq!(f.displaced_cylinder().unwrap(), w("00"));
        assert_eq!(
            f.image_of(&CylinderSet::cylinder(w("00"))),
            CylinderSet::cylinder(w("010"))
        );
        let g = f.inverse();
        let c = g.displaced_cylinder().unwrap();
        assert!(g
            .image_of(&CylinderSet::cylinder(c.clone()))
            .is_disjoint(&CylinderSet::cylinder(c)));
        assert_eq!(
            VElement::identity().displaced_cylinder(),
            Err(Error::IdentityElement)
        );
    }

    #[test]
    fn moved_point_examples() {
        let (a, b) = pingpong_generators();
        let x = a.moved_point().unwrap();
        assert_eq!(x, pt("(0)"));
        assert_eq!(a.act(&x), pt("1(0)"));
        assert_eq!(b.moved_point().unwrap(), pt("(0)"));
        let b2 = &b * &b;
        assert_eq!(b2.moved_point().unwrap(), pt("(0)"));
        assert_eq!(b2.act(&pt("(0)")), pt("11(0)"));
        assert!(VElement::identity().moved_point().is_err());
    }

    #[test]
    fn orders() {
        let (a, b) = pingpong_generators();
        assert_eq!(a.order(DEFAULT_ORDER_BOUND), Some(2));
        assert_eq!(b.order(DEFAULT_ORDER_BOUND), Some(3));
        assert_eq!(VElement::identity().order(DEFAULT_ORDER_BOUND), Some(1));
        let (x1, _) = free_generators();
        assert_eq!(x1.order(DEFAULT_ORDER_BOUND), None);
    }

    #[test]
    fn json_round_trip() {
        let (_, b) = pingpong_generators();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(
            s,
            r#"[{"u":"0","v":"10"},{"u":"10","v":"11"},{"u":"11","v":"0"}]"#
        );
        let back: VElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
        let bad = r#"[{"u":"0","v":"1"}]"#;
        let err = serde_json::from_str::<VElement>(bad)
            .unwrap_err()
            .to_string();
        assert!(err.contains("not complete"), "{err}");
    }
}
