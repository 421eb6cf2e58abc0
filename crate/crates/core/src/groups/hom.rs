use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::free::{Alphabet, Family, FreeWord, Generator, Letter};
use super::semidirect::Psi;
use crate::error::{Error, Result};
use crate::thompson::{free_generators, pingpong_generators, VElement};

/// A homomorphism from a free group into V, given by generator images.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VHom {
    images: BTreeMap<Generator, (VElement, VElement)>,
}

impl VHom {
    pub fn new(assignment: impl IntoIterator<Item = (Generator, VElement)>) -> Self {
        VHom {
            images: assignment
                .into_iter()
                .map(|(g, e)| {
                    let inv = e.inverse();
                    (g, (e, inv))
                })
                .collect(),
        }
    }

    /// `d₁ ↦ x₁ = [a, b]`, `d₂ ↦ x₂ = [a, b²]`.
    pub fn default_d() -> Self {
        let (x1, x2) = free_generators();
        VHom::new([
            (Generator::new(Family::D, 1), x1),
            (Generator::new(Family::D, 2), x2),
        ])
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.images.keys().copied()
    }

    pub fn image(&self, g: Generator) -> Option<&VElement> {
        self.images.get(&g).map(|(e, _)| e)
    }

    fn letter_image(&self, l: Letter) -> Result<&VElement> {
        let (e, inv) = self
            .images
            .get(&l.gen)
            .ok_or_else(|| Error::UncoveredGenerator(l.gen.to_string()))?;
        Ok(if l.inverse { inv } else { e })
    }

    /// The image of `w`; `l₁ l₂ … lₙ ↦ φ(l₁) ∘ φ(l₂) ∘ … ∘ φ(lₙ)`.
    pub fn eval(&self, w: &FreeWord) -> Result<VElement> {
        let mut acc = VElement::identity();
        for &l in w.letters().iter().rev() {
            acc = self.letter_image(l)?.compose(&acc);
        }
        Ok(acc)
    }

    /// Exhaustively evaluates every nonempty freely reduced word of length
    /// at most `max_len` over this homomorphism's generators.
    pub fn freeness_certificate(&self, max_len: usize) -> FreenessReport {
        let letters: Vec<Letter> = self
            .images
            .keys()
            .flat_map(|&g| [g.letter(), g.letter().inv()])
            .collect();
        let mut report = FreenessReport {
            max_len,
            words_checked: 0,
            counterexample: None,
        };
        let mut prefix = Vec::new();
        self.search(
            &letters,
            max_len,
            &mut prefix,
            &VElement::identity(),
            &mut report,
        );
        report
    }

    fn search(
        &self,
        letters: &[Letter],
        remaining: usize,
        prefix: &mut Vec<Letter>,
        image: &VElement,
        report: &mut FreenessReport,
    ) {
        if remaining == 0 || report.counterexample.is_some() {
            return;
        }
        for &l in letters {
            if prefix.last() == Some(&l.inv()) {
                continue;
            }
            let next = image.compose(self.letter_image(l).expect("letter of this hom"));
            prefix.push(l);
            report.words_checked += 1;
            if next.is_identity() {
                report.counterexample = Some(prefix.clone());
                prefix.pop();
                return;
            }
            self.search(letters, remaining - 1, prefix, &next, report);
            prefix.pop();
            if report.counterexample.is_some() {
                return;
            }
        }
    }

    /// True iff no nonempty reduced word of length `<= max_len` maps to the
    /// identity.
    pub fn freeness_check(&self, max_len: usize) -> bool {
        self.freeness_certificate(max_len).counterexample.is_none()
    }
}

/// Outcome of [`VHom::freeness_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// A nonempty reduced word mapping to the identity, if one was found.
    pub counterexample: Option<Vec<Letter>>,
}

/// Number of nonempty reduced words of length `<= max_len` in a free group
/// of the given rank.
pub fn reduced_word_count(rank: usize, max_len: usize) -> usize {
    (1..=max_len)
        .map(|l| 2 * rank * (2 * rank - 1).pow(l as u32 - 1))
        .sum()
}

/// JSON object mapping generator names to elements, e.g. `{"d1": [...]}`.
impl Serialize for VHom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &VElement> = self
            .images
            .iter()
            .map(|(g, (e, _))| (g.to_string(), e))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VHom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, VElement>::deserialize(deserializer)?;
        let mut assignment = Vec::new();
        for (name, e) in map {
            let l: Letter = name.parse().map_err(serde::de::Error::custom)?;
            if l.inverse {
                return Err(serde::de::Error::custom(format!(
                    "generator name expected, got {name}"
                )));
            }
            assignment.push((l.gen, e));
        }
        Ok(VHom::new(assignment))
    }
}

/// The concrete realization of `((A ∗ B) × C) ⋊ D` acting on Cantor space:
/// V-images of A- and B-letters, and the letter map `D → B` behind `ψ`.
/// C acts trivially and has no images.
#[derive(Clone, Debug)]
pub struct Instance {
    pub psi: Psi,
    pub ab: VHom,
}

impl Default for Instance {
    /// `a₁ ↦ a`, `a₂ ↦ b` (the ping-pong pair), `b₁ ↦ x₁`, `b₂ ↦ x₂`, and
    /// `d_i ↦ b_i`, so that `d_i` acts through `x_i`.
    fn default() -> Self {
        let (a, b) = pingpong_generators();
        let (x1, x2) = free_generators();
        Instance {
            psi: Psi::default(),
            ab: VHom::new([
                (Generator::new(Family::A, 1), a),
                (Generator::new(Family::A, 2), b),
                (Generator::new(Family::B, 1), x1),
                (Generator::new(Family::B, 2), x2),
            ]),
        }
    }
}

impl Instance {
    /// V-image of an AB-word.
    pub fn eval_ab(&self, w: &FreeWord) -> Result<VElement> {
        if w.alphabet() != Alphabet::AB
            && w.alphabet() != Alphabet::A
            && w.alphabet() != Alphabet::B
        {
            return Err(Error::AlphabetMismatch {
                left: Alphabet::AB.to_string(),
                right: w.alphabet().to_string(),
            });
        }
        self.ab.eval(w)
    }

    /// `W_d`: the V-image of the B-word that `d` rewrites to.
    pub fn conjugator(&self, d: &FreeWord) -> Result<VElement> {
        self.ab.eval(&self.psi.rewrite(d)?)
    }

    /// The homomorphism `d ↦ W_d` on D-generators, for the given indices.
    pub fn d_hom(&self, indices: impl IntoIterator<Item = u8>) -> Result<VHom> {
        let mut assignment = Vec::new();
        for i in indices {
            let g = Generator::new(Family::D, i);
            let d = FreeWord::new(Alphabet::D, [g.letter()])?;
            assignment.push((g, self.conjugator(&d)?));
        }
        Ok(VHom::new(assignment))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::D, s)
    }

    #[test]
    fn eval_examples() {
        let h = VHom::default_d();
        assert!(h.eval(&d("")).unwrap().is_identity());
        let (x1, x2) = free_generators();
        assert_eq!(h.eval(&d("d1")).unwrap(), x1);
        assert!(!x1.is_identity());
        assert_eq!(h.eval(&d("d1 d2^-1")).unwrap(), x1.compose(&x2.inverse()));
        assert!(matches!(
            h.eval(&d("d3")),
            Err(Error::UncoveredGenerator(_))
        ));
    }

    #[test]
    fn freeness_examples() {
        let report = VHom::default_d().freeness_certificate(4);
        assert!(report.counterexample.is_none());
        assert_eq!(report.words_checked, reduced_word_count(2, 4));

        let (a, _) = pingpong_generators();
        let collapsed = VHom::new([
            (Generator::new(Family::D, 1), a.clone()),
            (Generator::new(Family::D, 2), a),
        ]);
        assert!(!collapsed.freeness_check(2));

        let trivial = VHom::new([
            (Generator::new(Family::D, 1), VElement::identity()),
            (Generator::new(Family::D, 2), free_generators().0),
        ]);
        assert!(!trivial.freeness_check(1));
    }

    #[test]
    fn word_counts() {
        assert_eq!(reduced_word_count(2, 1), 4);
        assert_eq!(reduced_word_count(2, 2), 16);
        assert_eq!(reduced_word_count(2, 8), 13120);
    }

    #[test]
    fn default_instance_matches_default_d_hom() {
        let inst = Instance::default();
        assert_eq!(inst.d_hom([1, 2]).unwrap(), VHom::default_d());
    }

    #[test]
    fn hom_json() {
        let h = VHom::default_d();
        let s = serde_json::to_string(&h).unwrap();
        let back: VHom = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<VHom>(r#"{"d1^-1": [{"u":"","v":""}]}"#).is_err());
    }
}
