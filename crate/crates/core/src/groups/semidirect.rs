use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::free::{AbWord, Alphabet, CWord, DWord, Family, FreeWord, Generator};
use crate::error::{Error, Result};

/// The action `ψ : D → Aut(A ∗ B)`: A-letters are fixed and every B-letter
/// is conjugated by the image `W_d` of `d` in `B`, `ψ_d(b) = W_d b W_d⁻¹`.
///
/// `W_d` is obtained by rewriting `d` letterwise through a map from D-generators
/// to B-words; the default sends `d_i` to `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi {
    letter_map: BTreeMap<u8, FreeWord>,
}

impl Default for Psi {
    fn default() -> Self {
        let letter_map = (1..=2)
            .map(|i| {
                (
                    i,
                    FreeWord::new(Alphabet::B, [Generator::new(Family::B, i).letter()])
                        .expect("B letter"),
                )
            })
            .collect();
        Psi { letter_map }
    }
}

impl Psi {
    /// `letter_map[i]` is the B-word that `d_i` is sent to.
    pub fn new(letter_map: BTreeMap<u8, FreeWord>) -> Result<Self> {
        for w in letter_map.values() {
            if w.alphabet() != Alphabet::B {
                return Err(Error::AlphabetMismatch {
                    left: Alphabet::B.to_string(),
                    right: w.alphabet().to_string(),
                });
            }
        }
        Ok(Psi { letter_map })
    }

    /// `W_d`, the B-word `d` is rewritten to.
    pub fn rewrite(&self, d: &FreeWord) -> Result<FreeWord> {
        expect_alphabet(d, Alphabet::D)?;
        let mut out = FreeWord::identity(Alphabet::B);
        for l in d.letters() {
            let image = self
                .letter_map
                .get(&l.gen.index)
                .ok_or_else(|| Error::UncoveredGenerator(l.gen.to_string()))?;
            let image = if l.inverse {
                image.inv()
            } else {
                image.clone()
            };
            out.extend_reduced(image.letters().iter().copied());
        }
        Ok(out)
    }

    /// `ψ_d(w)` for an AB-word `w`.
    pub fn apply(&self, d: &FreeWord, w: &FreeWord) -> Result<FreeWord> {
        expect_alphabet(w, Alphabet::AB)?;
        let conj = self.rewrite(d)?;
        let conj_inv = conj.inv();
        let mut out = FreeWord::identity(Alphabet::AB);
        for &l in w.letters() {
            if l.gen.family == Family::B {
                out.extend_reduced(conj.letters().iter().copied());
                out.extend_reduced([l]);
                out.extend_reduced(conj_inv.letters().iter().copied());
            } else {
                out.extend_reduced([l]);
            }
        }
        Ok(out)
    }
}

fn expect_alphabet(w: &FreeWord, alphabet: Alphabet) -> Result<()> {
    if w.alphabet() == alphabet {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: alphabet.to_string(),
            right: w.alphabet().to_string(),
        })
    }
}

/// `(k, h)` with `k = (k_ab, k_c) ∈ (A ∗ B) × C` and `h ∈ D`, an element of
/// `((A ∗ B) × C) ⋊ D` where `D` acts through `ψ` on `A ∗ B` and trivially
/// on `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub k_ab: FreeWord,
    pub k_c: FreeWord,
    pub h: FreeWord,
}

impl SemidirectElement {
    pub fn new(k_ab: FreeWord, k_c: FreeWord, h: FreeWord) -> Result<Self> {
        expect_alphabet(&k_ab, Alphabet::AB)?;
        expect_alphabet(&k_c, Alphabet::C)?;
        expect_alphabet(&h, Alphabet::D)?;
        Ok(SemidirectElement { k_ab, k_c, h })
    }

    pub fn identity() -> Self {
        SemidirectElement {
            k_ab: FreeWord::identity(Alphabet::AB),
            k_c: FreeWord::identity(Alphabet::C),
            h: FreeWord::identity(Alphabet::D),
        }
    }

    /// Shorthand from whitespace-separated token strings. Panics on bad input.
    pub fn parse(k_ab: &str, k_c: &str, h: &str) -> Self {
        SemidirectElement {
            k_ab: FreeWord::parse(Alphabet::AB, k_ab),
            k_c: FreeWord::parse(Alphabet::C, k_c),
            h: FreeWord::parse(Alphabet::D, h),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.k_ab.is_empty() && self.k_c.is_empty() && self.h.is_empty()
    }
}

/// Group operations of the semidirect product for a fixed `ψ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Semidirect {
    pub psi: Psi,
}

impl Semidirect {
    pub fn new(psi: Psi) -> Self {
        Semidirect { psi }
    }

    /// `(k, h)(k', h') = (k ψ_h(k'), h h')`.
    pub fn mul(&self, x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
        Ok(SemidirectElement {
            k_ab: x.k_ab.mul(&self.psi.apply(&x.h, &y.k_ab)?)?,
            k_c: x.k_c.mul(&y.k_c)?,
            h: x.h.mul(&y.h)?,
        })
    }

    /// `(ψ_{h⁻¹}(k_ab⁻¹), k_c⁻¹, h⁻¹)`.
    pub fn inv(&self, x: &SemidirectElement) -> Result<SemidirectElement> {
        let h_inv = x.h.inv();
        Ok(SemidirectElement {
            k_ab: self.psi.apply(&h_inv, &x.k_ab.inv())?,
            k_c: x.k_c.inv(),
            h: h_inv,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SemidirectRepr {
    k_ab: AbWord,
    k_c: CWord,
    h: DWord,
}

impl Serialize for SemidirectElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SemidirectRepr {
            k_ab: AbWord(self.k_ab.clone()),
            k_c: CWord(self.k_c.clone()),
            h: DWord(self.h.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SemidirectElement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let r = SemidirectRepr::deserialize(deserializer)?;
        Ok(SemidirectElement {
            k_ab: r.k_ab.0,
            k_c: r.k_c.0,
            h: r.h.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::AB, s)
    }

    fn d(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::D, s)
    }

    #[test]
    fn psi_examples() {
        let psi = Psi::default();
        assert_eq!(psi.apply(&d(""), &ab("a1 b2^-1")).unwrap(), ab("a1 b2^-1"));
        assert_eq!(psi.apply(&d("d1"), &ab("a1")).unwrap(), ab("a1"));
        assert_eq!(psi.apply(&d("d1"), &ab("b2")).unwrap(), ab("b1 b2 b1^-1"));
        assert_eq!(psi.apply(&d("d1"), &ab("b1")).unwrap(), ab("b1"));
        assert_eq!(
            psi.apply(&d("d1 d2^-1"), &ab("b1 a2")).unwrap(),
            ab("b1 b2^-1 b1 b2 b1^-1 a2")
        );
    }

    #[test]
    fn psi_rejects_wrong_alphabets() {
        let psi = Psi::default();
        assert!(psi.apply(&ab("a1"), &ab("a1")).is_err());
        assert!(psi.apply(&d("d3"), &ab("b1")).is_err());
    }

    #[test]
    fn mul_examples() {
        let g = Semidirect::default();
        let x = SemidirectElement::parse("a1", "", "");
        let y = SemidirectElement::parse("b1", "", "d1");
        assert_eq!(
            g.mul(&x, &y).unwrap(),
            SemidirectElement::parse("a1 b1", "", "d1")
        );

        let x = SemidirectElement::parse("", "", "d1");
        let y = SemidirectElement::parse("b1", "", "");
        assert_eq!(
            g.mul(&x, &y).unwrap(),
            SemidirectElement::parse("b1", "", "d1")
        );

        let x = SemidirectElement::parse("", "c1", "d2");
        let y = SemidirectElement::parse("", "c2^-1", "");
        assert_eq!(
            g.mul(&x, &y).unwrap(),
            SemidirectElement::parse("", "c1 c2^-1", "d2")
        );
    }

    #[test]
    fn inv_examples() {
        let g = Semidirect::default();
        let id = SemidirectElement::identity();
        assert_eq!(g.inv(&id).unwrap(), id);
        let x = SemidirectElement::parse("", "", "d1");
        assert_eq!(
            g.inv(&x).unwrap(),
            SemidirectElement::parse("", "", "d1^-1")
        );
        let x = SemidirectElement::parse("b2", "", "d1");
        let xi = g.inv(&x).unwrap();
        assert_eq!(xi, SemidirectElement::parse("b1^-1 b2^-1 b1", "", "d1^-1"));
        assert!(g.mul(&x, &xi).unwrap().is_identity());
        assert!(g.mul(&xi, &x).unwrap().is_identity());
    }

    #[test]
    fn json_shape() {
        let x = SemidirectElement::parse("b2 a1^-1", "c1", "d1");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"k_ab":["b2","a1^-1"],"k_c":["c1"],"h":["d1"]}"#);
        assert_eq!(serde_json::from_str::<SemidirectElement>(&s).unwrap(), x);
    }
}
