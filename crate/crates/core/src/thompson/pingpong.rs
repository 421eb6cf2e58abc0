use super::{velement, VElement};

/// `a(ix) = (1−i)x`.
pub const PINGPONG_A: [(&str, &str); 2] = [("0", "1"), ("1", "0")];

/// The 3-cycle `(0x 10x 11x)`.
pub const PINGPONG_B: [(&str, &str); 3] = [("0", "10"), ("10", "11"), ("11", "0")];

/// The involution `a` and the order-three rotation `b`. With `A = [0]` and
/// `B = [10] ∪ [11]` they satisfy `a·B ⊆ A` and `b·A ∪ b²·A ⊆ B`, so they
/// generate a copy of `ℤ₂ ∗ ℤ₃`.
pub fn pingpong_generators() -> (VElement, VElement) {
    (velement(&PINGPONG_A), velement(&PINGPONG_B))
}

/// `x₁ = [a, b] = a·b·a·b²` and `x₂ = [a, b²] = a·b²·a·b`, free generators
/// of the commutator subgroup of `⟨a, b⟩ ≅ ℤ₂ ∗ ℤ₃`.
pub fn free_generators() -> (VElement, VElement) {
    let (a, b) = pingpong_generators();
    let b2 = &b * &b;
    let x1 = a.compose(&b).compose(&a).compose(&b2);
    let x2 = a.compose(&b2).compose(&a).compose(&b);
    (x1, x2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_generators_are_commutators() {
        let (a, b) = pingpong_generators();
        let (x1, x2) = free_generators();
        assert_eq!(x1, a.commutator(&b));
        assert_eq!(x2, a.commutator(&(&b * &b)));
        assert!(!x1.is_identity());
        assert_ne!(x1, x2);
    }
}
