//! Row echelon form of sparse polynomial rows over the rationals.

use std::collections::BTreeMap;

use num_traits::One;

use crate::poly::{NcPoly, Scalar};
use crate::word::Word;

/// Rows kept in echelon form, keyed by their pivot, the largest word present.
/// Every stored row has pivot coefficient 1.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<Word, NcPoly>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Word> {
        self.rows.keys()
    }

    /// Subtracts rows until no term of `p` is a pivot.
    pub fn reduce(&self, p: &NcPoly) -> NcPoly {
        let mut rest = p.clone();
        let mut out = NcPoly::zero();
        while let Some((w, c)) = rest.terms().next_back().map(|(w, c)| (w.clone(), c.clone())) {
            match self.rows.get(&w) {
                Some(row) => rest.add_scaled(&-c, row),
                None => {
                    rest.add_term(w.clone(), -c.clone());
                    out.add_term(w, c);
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &NcPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Adds `p` to the span. Returns false when it was already a member.
    pub fn insert(&mut self, p: &NcPoly) -> bool {
        let r = self.reduce(p);
        let Some((pivot, c)) = r.terms().next_back() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = Scalar::one() / c;
        self.rows.insert(pivot, r.scale(&inv));
        true
    }

    /// The unique reduced basis: each row has pivot coefficient 1 and no other
    /// pivot among its terms. Rows are listed by increasing pivot.
    pub fn reduced_basis(&self) -> Vec<NcPoly> {
        // Pivots are visited in increasing order and every tail term lies
        // below its pivot, so reducing by the rows done so far suffices.
        let mut done = Echelon::new();
        for (pivot, row) in &self.rows {
            let tail = &row.clone() - &NcPoly::word(pivot.clone());
            let mut full = done.reduce(&tail);
            full.add_term(pivot.clone(), Scalar::one());
            done.rows.insert(pivot.clone(), full);
        }
        done.rows.into_values().collect()
    }
}
