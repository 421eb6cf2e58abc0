use rand::seq::SliceRandom;
use rand::Rng;

use super::VElement;
use crate::words::BinaryWord;

impl VElement {
    /// A random element whose domain and range codes are independent random
    /// subdivisions of `{ε}` with all words of length at most `depth`, of a
    /// common random size in `1..=2^depth`, matched by a uniform bijection.
    pub fn random<R: Rng + ?Sized>(depth: usize, rng: &mut R) -> VElement {
        let depth = depth.clamp(1, 20);
        let size = rng.gen_range(1..=1usize << depth);
        let domain = random_code(size, depth, rng);
        let mut range = random_code(size, depth, rng);
        range.shuffle(rng);
        VElement::canonical(domain.into_iter().zip(range).collect())
    }
}

/// A complete prefix code of `size` words of length `<= depth`, grown by
/// splitting uniformly chosen splittable leaves. Requires `size <= 2^depth`.
pub(crate) fn random_code<R: Rng + ?Sized>(
    size: usize,
    depth: usize,
    rng: &mut R,
) -> Vec<BinaryWord> {
    debug_assert!(size >= 1 && size <= 1usize << depth);
    let mut leaves = vec![BinaryWord::empty()];
    while leaves.len() < size {
        let splittable: Vec<usize> = (0..leaves.len())
            .filter(|&i| leaves[i].len() < depth)
            .collect();
        let idx = splittable[rng.gen_range(0..splittable.len())];
        let leaf = leaves.swap_remove(idx);
        leaves.push(leaf.child(0));
        leaves.push(leaf.child(1));
    }
    leaves.sort();
    leaves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::PrefixCode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_elements_are_valid_and_deterministic() {
        for seed in 0..200 {
            let f = VElement::random(4, &mut ChaCha8Rng::seed_from_u64(seed));
            let g = VElement::random(4, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(f, g);
            assert!(f.domain_code().is_complete());
            assert!(f.range_code().is_complete());
            assert!(f.pairs().iter().all(|(u, v)| u.len() <= 4 && v.len() <= 4));
            assert!(f.compose(&f.inverse()).is_identity());
            // round trip through validated construction
            assert_eq!(VElement::from_pairs(f.pairs().to_vec()).unwrap(), f);
        }
    }

    #[test]
    fn random_code_is_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 1..=16 {
            let c = PrefixCode::new(random_code(size, 4, &mut rng)).unwrap();
            assert_eq!(c.len(), size);
            assert!(c.is_complete());
        }
    }
}
