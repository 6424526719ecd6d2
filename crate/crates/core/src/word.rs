/// A word over an alphabet: a sequence of letter indices with its weighted
/// degree cached.
///
/// The derived ordering compares degree first and then letters
/// lexicographically, which is the degree-lexicographic order. Polynomials use
/// it as their storage order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    degree: u32,
    letters: Vec<u16>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            degree: 0,
            letters: Vec::new(),
        }
    }

    /// Builds a word whose degree the caller has already computed. Use
    /// [`Alphabet::word`](crate::Alphabet::word) when the degree is not known.
    pub(crate) fn from_parts(letters: Vec<u16>, degree: u32) -> Self {
        Word { degree, letters }
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    /// `left · self · right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut letters = Vec::with_capacity(left.len() + self.len() + right.len());
        letters.extend_from_slice(&left.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&right.letters);
        Word {
            degree: left.degree + self.degree + right.degree,
            letters,
        }
    }

    /// Replaces `len` letters at `pos` (of total degree `removed`) by `insert`.
    pub(crate) fn splice(&self, pos: usize, len: usize, removed: u32, insert: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() - len + insert.len());
        letters.extend_from_slice(&self.letters[..pos]);
        letters.extend_from_slice(&insert.letters);
        letters.extend_from_slice(&self.letters[pos + len..]);
        Word {
            degree: self.degree - removed + insert.degree,
            letters,
        }
    }

    /// Position of the first occurrence of `pattern` as a factor.
    pub fn find_factor(&self, pattern: &[u16]) -> Option<usize> {
        if pattern.is_empty() {
            return Some(0);
        }
        if pattern.len() > self.len() {
            return None;
        }
        self.letters
            .windows(pattern.len())
            .position(|window| window == pattern)
    }

    pub fn contains_factor(&self, pattern: &[u16]) -> bool {
        self.find_factor(pattern).is_some()
    }
}
