//! Weighted generators and the alphabets that order them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::word::Word;

/// A named generator with a positive weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidAlphabet("generator name is empty".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidAlphabet(format!(
                "generator `{name}` has degree 0"
            )));
        }
        Ok(Generator { name, degree })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// An ordered list of generators. Position in the list is precedence: the
/// first generator is the smallest letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    generators: Vec<Generator>,
    index: HashMap<String, u16>,
}

impl Alphabet {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many generators".into()));
        }
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i as u16).is_some() {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        Ok(Alphabet { generators, index })
    }

    /// Alphabet of the given names, all of degree 1, in precedence order.
    pub fn uniform<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let gens = names
            .iter()
            .map(|n| Generator::new(n.as_ref(), 1))
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(gens)
    }

    pub fn weighted<S: AsRef<str>>(gens: &[(S, u32)]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|(n, d)| Generator::new(n.as_ref(), *d))
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(gens)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, letter: u16) -> Option<&Generator> {
        self.generators.get(letter as usize)
    }

    pub fn letter(&self, name: &str) -> Option<u16> {
        self.index.get(name).copied()
    }

    pub fn is_uniform(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 1)
    }

    /// Sum of the letter weights; 0 for the empty word.
    pub fn word_degree(&self, letters: &[u16]) -> Result<u32> {
        letters.iter().try_fold(0u32, |acc, &l| {
            self.generators
                .get(l as usize)
                .map(|g| acc + g.degree)
                .ok_or(Error::MalformedWord {
                    letter: l as usize,
                    size: self.generators.len(),
                })
        })
    }

    pub fn word(&self, letters: Vec<u16>) -> Result<Word> {
        let degree = self.word_degree(&letters)?;
        Ok(Word::from_parts(letters, degree))
    }

    /// Parses a compact word such as `"bba"`, one character per letter.
    /// Only meaningful when every generator name is a single character.
    pub fn parse_compact(&self, s: &str) -> Result<Word> {
        let letters = s
            .chars()
            .map(|c| {
                self.letter(c.encode_utf8(&mut [0; 4]))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown generator `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.word(letters)
    }

    pub fn subword(&self, w: &Word, range: std::ops::Range<usize>) -> Word {
        let letters = w.letters()[range].to_vec();
        let degree = letters
            .iter()
            .map(|&l| self.generators[l as usize].degree)
            .sum();
        Word::from_parts(letters, degree)
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.generators[letters[i] as usize].name();
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_degree_cases() {
        let abc = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        assert_eq!(abc.word_degree(&[]).unwrap(), 0);
        assert_eq!(abc.word_degree(&[0, 2, 2]).unwrap(), 3);

        let m = Alphabet::weighted(&[("a", 1), ("b", 2), ("c", 1)]).unwrap();
        let bab = m.parse_compact("bab").unwrap();
        assert_eq!(bab.degree(), 5);
    }

    #[test]
    fn out_of_range_letter_is_malformed() {
        let xy = Alphabet::uniform(&["x", "y"]).unwrap();
        assert_eq!(
            xy.word_degree(&[0, 2]),
            Err(Error::MalformedWord { letter: 2, size: 2 })
        );
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(Generator::new("", 1).is_err());
        assert!(Generator::new("x", 0).is_err());
        assert!(Alphabet::uniform(&["x", "x"]).is_err());
    }

    #[test]
    fn display_groups_powers() {
        let xy = Alphabet::uniform(&["x", "y"]).unwrap();
        let w = xy.parse_compact("xxxyxx").unwrap();
        assert_eq!(xy.display_word(&w), "x^3*y*x^2");
        assert_eq!(xy.display_word(&Word::empty()), "1");
    }
}
