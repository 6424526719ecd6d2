//! Monomial orders on words.

use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Weighted degree first, then lexicographic by precedence.
    Deglex,
    /// Letter count first, then lexicographic by precedence.
    Shortlex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Deglex => f.write_str("deglex"),
            OrderKind::Shortlex => f.write_str("shortlex"),
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deglex" => Ok(OrderKind::Deglex),
            "shortlex" => Ok(OrderKind::Shortlex),
            other => Err(Error::InvalidArgument(format!("unknown order `{other}`"))),
        }
    }
}

/// A total, well-founded, multiplicative order on the words of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    alphabet: Alphabet,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, alphabet: Alphabet) -> Self {
        MonomialOrder { kind, alphabet }
    }

    pub fn deglex(alphabet: Alphabet) -> Self {
        Self::new(OrderKind::Deglex, alphabet)
    }

    pub fn shortlex(alphabet: Alphabet) -> Self {
        Self::new(OrderKind::Shortlex, alphabet)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn check(&self, w: &Word) -> Result<()> {
        let size = self.alphabet.len();
        match w.letters().iter().find(|&&l| l as usize >= size) {
            Some(&l) => Err(Error::MalformedWord {
                letter: l as usize,
                size,
            }),
            None => Ok(()),
        }
    }

    /// Compares two words, rejecting letters outside this order's alphabet.
    pub fn compare(&self, a: &Word, b: &Word) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison for words already known to be over the alphabet.
    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.primary(a)
            .cmp(&self.primary(b))
            .then_with(|| a.letters().cmp(b.letters()))
    }

    /// The grading the order compares first.
    pub fn primary(&self, w: &Word) -> u32 {
        match self.kind {
            OrderKind::Deglex => w.degree(),
            OrderKind::Shortlex => w.len() as u32,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shortlex_orients_bba_above_abb() {
        let abc = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let ord = MonomialOrder::shortlex(abc.clone());
        let abb = abc.parse_compact("abb").unwrap();
        let bba = abc.parse_compact("bba").unwrap();
        assert_eq!(ord.compare(&abb, &bba).unwrap(), Ordering::Less);
        assert_eq!(ord.compare(&bba, &bba).unwrap(), Ordering::Equal);
    }

    #[test]
    fn deglex_puts_y_initial_word_last() {
        let xy = Alphabet::uniform(&["x", "y"]).unwrap();
        let ord = MonomialOrder::deglex(xy.clone());
        let a = xy.parse_compact("xxxy").unwrap();
        let b = xy.parse_compact("yxxx").unwrap();
        assert_eq!(ord.compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn deglex_and_shortlex_differ_on_weights() {
        let m = Alphabet::weighted(&[("a", 1), ("b", 2), ("c", 1)]).unwrap();
        let b = m.parse_compact("b").unwrap();
        let aa = m.parse_compact("aa").unwrap();
        // degree 2 each: lex decides, a < b
        assert_eq!(MonomialOrder::deglex(m.clone()).cmp(&aa, &b), Ordering::Less);
        // length 1 < 2
        assert_eq!(MonomialOrder::shortlex(m).cmp(&aa, &b), Ordering::Greater);
    }

    #[test]
    fn mixed_alphabet_is_an_error() {
        let xy = Alphabet::uniform(&["x", "y"]).unwrap();
        let abc = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let c = abc.parse_compact("c").unwrap();
        let ord = MonomialOrder::deglex(xy.clone());
        assert!(ord.compare(&c, &xy.parse_compact("x").unwrap()).is_err());
    }

    fn arb_word() -> impl Strategy<Value = Vec<u16>> {
        proptest::collection::vec(0u16..3, 0..=6)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(
            u in arb_word(), v in arb_word(), w1 in arb_word(), w2 in arb_word(),
            shortlex in any::<bool>(),
        ) {
            let m = Alphabet::weighted(&[("a", 1), ("b", 2), ("c", 1)]).unwrap();
            let kind = if shortlex { OrderKind::Shortlex } else { OrderKind::Deglex };
            let ord = MonomialOrder::new(kind, m.clone());
            let (u, v, w1, w2) = (m.word(u).unwrap(), m.word(v).unwrap(), m.word(w1).unwrap(), m.word(w2).unwrap());
            prop_assert_eq!(ord.cmp(&w1, &w2), ord.cmp(&w1.wrap(&u, &v), &w2.wrap(&u, &v)));
        }

        #[test]
        fn sorting_is_a_strict_total_order(words in proptest::collection::vec(proptest::collection::vec(0u16..3, 0..=12), 1..40)) {
            let m = Alphabet::weighted(&[("a", 1), ("b", 2), ("c", 1)]).unwrap();
            let ord = MonomialOrder::deglex(m.clone());
            let mut ws: Vec<Word> = words.into_iter().map(|l| m.word(l).unwrap()).collect();
            ws.sort_by(|a, b| ord.cmp(a, b));
            ws.dedup();
            for pair in ws.windows(2) {
                prop_assert_eq!(ord.cmp(&pair[0], &pair[1]), Ordering::Less);
                prop_assert_eq!(ord.cmp(&pair[1], &pair[0]), Ordering::Greater);
            }
            // finitely many predecessors of the same degree: they are a subset
            // of the words of that degree, of which there are finitely many
            for w in &ws {
                prop_assert!(ord.primary(w) == w.degree());
            }
        }
    }
}
