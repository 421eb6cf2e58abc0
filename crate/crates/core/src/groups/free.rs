use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which free factor a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    fn symbol(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }
}

/// A free generator, e.g. `b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub family: Family,
    pub index: u8,
}

impl Generator {
    pub const fn new(family: Family, index: u8) -> Self {
        Generator { family, index }
    }

    pub fn letter(self) -> Letter {
        Letter {
            gen: self,
            inverse: false,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// Tokens look like `a1`, `b2^-1`; `^1` is accepted as an explicit exponent.
impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidToken(s.to_string());
        let (base, inverse) = match s.split_once('^') {
            None => (s, false),
            Some((base, "-1")) => (base, true),
            Some((base, "1")) => (base, false),
            Some(_) => return Err(bad()),
        };
        let mut chars = base.chars();
        let family = match chars.next() {
            Some('a') => Family::A,
            Some('b') => Family::B,
            Some('c') => Family::C,
            Some('d') => Family::D,
            _ => return Err(bad()),
        };
        let index: u8 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter {
            gen: Generator { family, index },
            inverse,
        })
    }
}

/// The free group a word lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    A,
    B,
    /// The free product `A ∗ B`.
    AB,
    C,
    D,
}

impl Alphabet {
    pub fn admits(self, family: Family) -> bool {
        matches!(
            (self, family),
            (Alphabet::A, Family::A)
                | (Alphabet::B, Family::B)
                | (Alphabet::AB, Family::A | Family::B)
                | (Alphabet::C, Family::C)
                | (Alphabet::D, Family::D)
        )
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A freely reduced word in one of the free groups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        FreeWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Checks membership in the alphabet and freely reduces.
    pub fn new(alphabet: Alphabet, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = FreeWord::identity(alphabet);
        for l in letters {
            if !alphabet.admits(l.gen.family) {
                return Err(Error::LetterOutsideAlphabet {
                    letter: l.to_string(),
                    alphabet: alphabet.to_string(),
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    pub fn from_tokens<S: AsRef<str>>(alphabet: Alphabet, tokens: &[S]) -> Result<Self> {
        let letters = tokens
            .iter()
            .map(|t| t.as_ref().parse())
            .collect::<Result<Vec<Letter>>>()?;
        FreeWord::new(alphabet, letters)
    }

    /// Whitespace-separated tokens; panics on malformed input.
    pub fn parse(alphabet: Alphabet, s: &str) -> FreeWord {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        FreeWord::from_tokens(alphabet, &tokens).expect("valid word")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tokens(&self) -> Vec<String> {
        self.letters.iter().map(Letter::to_string).collect()
    }

    /// Appends a letter with free cancellation.
    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub(crate) fn extend_reduced(&mut self, letters: impl IntoIterator<Item = Letter>) {
        for l in letters {
            self.push(l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        let mut out = self.clone();
        out.extend_reduced(other.letters.iter().copied());
        Ok(out)
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// The same letters viewed in a larger alphabet (e.g. an A-word as an
    /// AB-word).
    pub fn retag(&self, alphabet: Alphabet) -> Result<FreeWord> {
        FreeWord::new(alphabet, self.letters.iter().copied())
    }
}

/// `word_reduce`: free reduction of an arbitrary letter sequence.
pub fn word_reduce(alphabet: Alphabet, letters: &[Letter]) -> Result<FreeWord> {
    FreeWord::new(alphabet, letters.iter().copied())
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.alphabet, self)
    }
}

/// Serializes as an array of tokens. The alphabet is not recorded; it is
/// fixed by the context (see [`DWord`] for the D-word wrapper).
impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.tokens().serialize(serializer)
    }
}

macro_rules! tagged_word {
    ($name:ident, $alphabet:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub FreeWord);

        impl Serialize for $name {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                self.0.serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(
                deserializer: D,
            ) -> std::result::Result<Self, D::Error> {
                let tokens = Vec::<String>::deserialize(deserializer)?;
                FreeWord::from_tokens($alphabet, &tokens)
                    .map($name)
                    .map_err(serde::de::Error::custom)
            }
        }
    };
}

tagged_word!(
    DWord,
    Alphabet::D,
    "JSON wrapper for a word over D-letters."
);
tagged_word!(
    AbWord,
    Alphabet::AB,
    "JSON wrapper for a word over A- and B-letters."
);
tagged_word!(
    CWord,
    Alphabet::C,
    "JSON wrapper for a word over C-letters."
);

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::AB, s)
    }

    #[test]
    fn multiplication_cancels() {
        assert_eq!(ab("a1 b1").mul(&ab("b1^-1 a2")).unwrap(), ab("a1 a2"));
        assert_eq!(ab("a1 b1^-1").inv(), ab("b1 a1^-1"));
        assert!(ab("a1 a1^-1").is_empty());
        assert!(ab("a1 b2 b2^-1 a1^-1").is_empty());
        let w = ab("a1 b2^-1 a2");
        assert!(w.mul(&w.inv()).unwrap().is_empty());
    }

    #[test]
    fn alphabet_checks() {
        let d = FreeWord::parse(Alphabet::D, "d1");
        assert!(matches!(
            ab("a1").mul(&d),
            Err(Error::AlphabetMismatch { .. })
        ));
        assert!(matches!(
            FreeWord::from_tokens(Alphabet::A, &["b1"]),
            Err(Error::LetterOutsideAlphabet { .. })
        ));
        assert_eq!(
            FreeWord::parse(Alphabet::A, "a1")
                .retag(Alphabet::AB)
                .unwrap(),
            ab("a1")
        );
    }

    #[test]
    fn token_parsing() {
        assert_eq!("b2^-1".parse::<Letter>().unwrap().to_string(), "b2^-1");
        assert_eq!("d1^1".parse::<Letter>().unwrap().to_string(), "d1");
        for bad in ["x1", "a", "a0", "a1^2", "a-1", ""] {
            assert!(bad.parse::<Letter>().is_err(), "{bad}");
        }
    }

    #[test]
    fn json_tokens() {
        let w = DWord(FreeWord::parse(Alphabet::D, "d1 d2^-1"));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"["d1","d2^-1"]"#);
        assert_eq!(serde_json::from_str::<DWord>(&s).unwrap(), w);
        assert!(serde_json::from_str::<DWord>(r#"["a1"]"#).is_err());
        // reduction happens on the way in
        let r: DWord = serde_json::from_str(r#"["d1","d1^-1"]"#).unwrap();
        assert!(r.0.is_empty());
    }
}
