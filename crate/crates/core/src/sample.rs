//! Seeded random instances for tests and verification suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::groups::{Alphabet, Family, FreeWord, Generator, Letter};
use crate::words::{BinaryWord, Point, PrefixCode};

/// An RNG derived from `(master seed, stream id, index)`, so that trials
/// are independent of evaluation order.
pub fn trial_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub fn random_word<R: Rng + ?Sized>(len: usize, rng: &mut R) -> BinaryWord {
    BinaryWord::from_bits((0..len).map(|_| rng.gen_range(0..=1u8)))
}

/// A random eventually periodic point with `|pre| + |per| <= max_total`
/// (before normalization). `max_total` must be at least 1.
pub fn random_point<R: Rng + ?Sized>(max_total: usize, rng: &mut R) -> Point {
    let per_len = rng.gen_range(1..=max_total.max(1));
    let pre_len = rng.gen_range(0..=max_total.max(1) - per_len);
    Point::new(random_word(pre_len, rng), random_word(per_len, rng)).expect("nonempty period")
}

/// `n` pairwise distinct random points (see [`random_point`]).
pub fn random_distinct_points<R: Rng + ?Sized>(
    n: usize,
    max_total: usize,
    rng: &mut R,
) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_point(max_total, rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A random complete prefix code with `size` words of length `<= depth`.
pub fn random_complete_code<R: Rng + ?Sized>(size: usize, depth: usize, rng: &mut R) -> PrefixCode {
    PrefixCode::new(crate::thompson::random_code_words(size, depth, rng)).expect("antichain")
}

/// A uniformly random freely reduced D-word of length exactly `len` over
/// `d₁, d₂`.
pub fn random_d_word<R: Rng + ?Sized>(len: usize, rng: &mut R) -> FreeWord {
    random_reduced_word(Alphabet::D, &[Family::D], len, rng)
}

/// A random freely reduced word of length exactly `len` over generators
/// with index 1 and 2 from the given families.
pub fn random_reduced_word<R: Rng + ?Sized>(
    alphabet: Alphabet,
    families: &[Family],
    len: usize,
    rng: &mut R,
) -> FreeWord {
    let letters: Vec<Letter> = families
        .iter()
        .flat_map(|&f| (1..=2).map(move |i| Generator::new(f, i)))
        .flat_map(|g| [g.letter(), g.letter().inv()])
        .collect();
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = *letters.choose(rng).expect("nonempty alphabet");
        if out.last() != Some(&l.inv()) {
            out.push(l);
        }
    }
    FreeWord::new(alphabet, out).expect("letters belong to alphabet")
}

/// Up to `max_sites` distinct reduced D-words of length `<= max_len`,
/// always including the empty word. At least two sites when `max_sites >= 2`.
pub fn random_window_sites<R: Rng + ?Sized>(
    max_sites: usize,
    max_len: usize,
    rng: &mut R,
) -> Vec<FreeWord> {
    let want = if max_sites >= 2 {
        rng.gen_range(2..=max_sites)
    } else {
        max_sites
    };
    let mut sites = vec![FreeWord::identity(Alphabet::D)];
    while sites.len() < want {
        let len = rng.gen_range(1..=max_len.max(1));
        let w = random_d_word(len, rng);
        if !sites.contains(&w) {
            sites.push(w);
        }
    }
    sites.truncate(want.max(1));
    sites.shuffle(rng);
    sites
}
