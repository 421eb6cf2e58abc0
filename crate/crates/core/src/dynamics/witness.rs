//! Witnesses for antidiagonal minimality of the natural action of V and
//! its two consequences, expansivity and centerlessness.

use crate::error::{Error, Result};
use crate::thompson::VElement;
use crate::words::{split_shallowest, BinaryWord, CylinderSet, Point};

/// Number of bits needed to write `0..=n`, i.e. `⌈log₂(n + 1)⌉`.
pub(crate) fn index_width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// An element `g` with `g·points[i] ∈ [targets[i]]` for every `i`.
///
/// The points are told apart by their `k`-prefixes `v_i`, and the targets
/// are refined to pairwise incomparable words `u_i` by padding them to a
/// common length and appending the index of the point. `g` maps `v_i` to
/// `u_i`; the complements of `{v_i}` and `{u_i}` are subdivided to equal
/// size and matched in lexicographic order.
pub fn antidiagonal_witness(points: &[Point], targets: &[BinaryWord]) -> Result<VElement> {
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyInput("no points"));
    }
    if targets.len() != n {
        return Err(Error::LengthMismatch(format!(
            "{n} points but {} targets",
            targets.len()
        )));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::Duplicate(format!("point {p}")));
        }
    }

    let width = index_width(n);
    let target_len = targets.iter().map(BinaryWord::len).max().unwrap_or(0);
    let min_depth = target_len + width;
    // Distinct eventually periodic points differ within their pairwise
    // separation bounds, so this search terminates.
    let depth = (min_depth..)
        .find(|&k| {
            let mut prefixes: Vec<BinaryWord> = points.iter().map(|p| p.prefix(k)).collect();
            prefixes.sort();
            prefixes.windows(2).all(|w| w[0] != w[1])
        })
        .expect("distinct points have distinct long prefixes");

    let sources: Vec<BinaryWord> = points.iter().map(|p| p.prefix(depth)).collect();
    let images: Vec<BinaryWord> = targets
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.padded(target_len)
                .concat(&BinaryWord::from_index(i, width))
        })
        .collect();

    // Neither side covers the whole space: 2^depth >= 2^width > n.
    let mut rest_dom = complement_words(&sources);
    let mut rest_ran = complement_words(&images);
    if rest_dom.len() < rest_ran.len() {
        rest_dom = split_shallowest(rest_dom, rest_ran.len());
    } else {
        rest_ran = split_shallowest(rest_ran, rest_dom.len());
    }

    let pairs = sources
        .into_iter()
        .zip(images)
        .chain(rest_dom.into_iter().zip(rest_ran));
    let g = VElement::from_pairs(pairs)?;

    for (i, (p, t)) in points.iter().zip(targets).enumerate() {
        if !g.act(p).in_cylinder(t) {
            return Err(Error::WitnessFailed(format!(
                "point {i} ({p}) not sent into [{t}]"
            )));
        }
    }
    Ok(g)
}

fn complement_words(words: &[BinaryWord]) -> Vec<BinaryWord> {
    let set = CylinderSet::reduce(words.iter().cloned()).expect("pairwise incomparable");
    set.complement().words().to_vec()
}

/// An element sending `x` into `[0]` and `y` into `[1]`.
pub fn expansivity_witness(x: &Point, y: &Point) -> Result<VElement> {
    if x == y {
        return Err(Error::Duplicate(format!("points are equal: {x}")));
    }
    antidiagonal_witness(
        &[x.clone(), y.clone()],
        &[BinaryWord::from_bits([0]), BinaryWord::from_bits([1])],
    )
}

/// For non-identity `f`, a pair `(g, x)` with `g·(f·x) ≠ f·(g·x)`.
///
/// `x` is moved by `f` and `[c]` is a cylinder with `f([c]) ∩ [c] = ∅`.
/// `g` sends both `f·x` and `x` into `[c]`, so `g·f·x ∈ [c]` while
/// `f·g·x ∈ f([c])`.
pub fn centerless_witness(f: &VElement) -> Result<(VElement, Point)> {
    let x = f.moved_point()?;
    let y = f.act(&x);
    let c = f.displaced_cylinder()?;
    let g = antidiagonal_witness(&[y.clone(), x.clone()], &[c.clone(), c])?;
    if g.act(&y) == f.act(&g.act(&x)) {
        return Err(Error::WitnessFailed(format!(
            "g and f agree on both orders at {x}"
        )));
    }
    Ok((g, x))
}
