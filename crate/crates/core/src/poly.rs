//! Noncommutative polynomials with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alphabet::Alphabet;
use crate::order::MonomialOrder;
use crate::word::Word;

/// Coefficients are exact rationals everywhere.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// A finite linear combination of words. Zero coefficients are never stored,
/// so two polynomials are equal exactly when their term maps are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn word(word: Word) -> Self {
        NcPoly::monomial(word, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degree-lexicographic order.
    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · p`
    pub fn add_scaled(&mut self, c: &Scalar, p: &NcPoly) {
        for (w, a) in &p.terms {
            self.add_term(w.clone(), c * a);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Maps every term `u` to `left · u · right`, keeping coefficients.
    pub fn mul_words(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(left, right), c.clone()))
                .collect(),
        }
    }

    /// The common degree of all terms, or `None` when degrees differ. The zero
    /// polynomial reports degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Word::degree);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Largest term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Word, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn max_letter_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn display(&self, alphabet: &Alphabet, order: Option<&MonomialOrder>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        match order {
            Some(ord) => terms.sort_by(|a, b| ord.cmp(b.0, a.0)),
            None => terms.reverse(),
        }
        let mut out = String::new();
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let word = alphabet.display_word(w);
            if w.is_empty() {
                out.push_str(&format_scalar(&abs));
            } else if abs.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format_scalar(&abs));
                out.push('*');
                out.push_str(&word);
            }
        }
        out
    }
}

pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;

    fn add(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;

    fn sub(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;

    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl FromIterator<(Word, Scalar)> for NcPoly {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        NcPoly::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> Alphabet {
        Alphabet::uniform(&["x", "y"]).unwrap()
    }

    fn poly(a: &Alphabet, terms: &[(i64, &str)]) -> NcPoly {
        terms
            .iter()
            .map(|&(c, w)| (a.parse_compact(w).unwrap(), int(c)))
            .collect()
    }

    fn f1() -> NcPoly {
        poly(&xy(), &[(1, "xxxy"), (-3, "xxyx"), (3, "xyxx"), (-1, "yxxx")])
    }

    #[test]
    fn additive_inverse() {
        let p = f1();
        assert!((&p + &p.scale(&int(-1))).is_zero());
    }

    #[test]
    fn right_multiplication_by_x4() {
        let a = xy();
        let x4 = a.parse_compact("xxxx").unwrap();
        assert_eq!(f1().mul_words(&Word::empty(), &Word::empty()), f1());
        let expected = poly(
            &a,
            &[
                (1, "xxxyxxxx"),
                (-3, "xxyxxxxx"),
                (3, "xyxxxxxx"),
                (-1, "yxxxxxxx"),
            ],
        );
        assert_eq!(f1().mul_words(&Word::empty(), &x4), expected);
    }

    #[test]
    fn homogeneity() {
        let a = xy();
        assert_eq!(f1().homogeneous_degree(), Some(4));
        assert_eq!(poly(&a, &[(1, "x"), (1, "xx")]).homogeneous_degree(), None);
        assert_eq!(NcPoly::zero().homogeneous_degree(), Some(0));
    }

    #[test]
    fn display_is_leading_first() {
        let a = xy();
        let ord = MonomialOrder::deglex(a.clone());
        assert_eq!(
            f1().display(&a, Some(&ord)),
            "-y*x^3 + 3*x*y*x^2 - 3*x^2*y*x + x^3*y"
        );
        let half = NcPoly::monomial(a.parse_compact("y").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(half.display(&a, None), "1/2*y");
    }

    fn arb_poly() -> impl Strategy<Value = NcPoly> {
        proptest::collection::vec((proptest::collection::vec(0u16..2, 0..4), -3i64..=3), 0..6).prop_map(|ts| {
            let a = Alphabet::uniform(&["x", "y"]).unwrap();
            ts.into_iter().map(|(l, c)| (a.word(l).unwrap(), int(c))).collect()
        })
    }

    proptest! {
        #[test]
        fn canonical_arithmetic(p in arb_poly(), q in arb_poly(), r in arb_poly(),
                                u in proptest::collection::vec(0u16..2, 0..3),
                                v in proptest::collection::vec(0u16..2, 0..3)) {
            let a = Alphabet::uniform(&["x", "y"]).unwrap();
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert!((&p - &p).is_zero());
            let (u, v) = (a.word(u).unwrap(), a.word(v).unwrap());
            prop_assert_eq!((&p + &q).mul_words(&u, &v), &p.mul_words(&u, &v) + &q.mul_words(&u, &v));
            prop_assert!((&p + &q).terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
