//! Veronese subalgebras: generators are the degree-`d` words, relations are
//! the multiples `v·f·w` of the relators landing in degrees `d` and `2d`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::alphabet::{Alphabet, Generator};
use crate::error::{Error, Result};
use crate::growth::{normal_word_counts, DimensionSeries, Flavor};
use crate::linalg::Echelon;
use crate::order::MonomialOrder;
use crate::poly::{NcPoly, Scalar};
use crate::presentation::{parse_relation_list, Presentation};
use crate::rewrite::RewriteSystem;
use crate::serde_display;
use crate::word::Word;

/// Largest number of letters `m^d` accepted.
pub const MAX_LETTERS: usize = 1024;

/// The dimensions `(1, h_d, h_{2d}, …, h_{dM})` of the Veronese subalgebra.
pub fn veronese_dims(h: &DimensionSeries, d: usize, max_letter_degree: usize) -> Result<DimensionSeries> {
    if h.flavor() != Flavor::Graded {
        return Err(Error::WrongFlavor { expected: "graded" });
    }
    if d == 0 {
        return Err(Error::InvalidArgument("Veronese degree must be at least 1".into()));
    }
    let need = d * max_letter_degree;
    let values = (0..=max_letter_degree)
        .map(|m| {
            h.get(d * m).cloned().ok_or(Error::SeriesTooShort {
                len: h.len(),
                min: need + 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionSeries::graded(values))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeroneseLetter {
    pub name: String,
    /// The degree-`d` word this letter stands for, rendered over the source
    /// alphabet.
    pub source: String,
    #[serde(skip)]
    pub word: Word,
}

/// A presentation of a Veronese subalgebra in letters of degree 1.
///
/// Letter `k` stands for the `k`-th degree-`d` word in lexicographic order,
/// so comparing letters compares their source words. Eliminated letters keep
/// their index but no longer occur in any stored relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPresentation {
    source: Presentation,
    d: u32,
    letters: Vec<VeroneseLetter>,
    alphabet: Alphabet,
    linear_relations: Vec<NcPoly>,
    quadratic_relations: Vec<NcPoly>,
    eliminated: BTreeMap<u16, NcPoly>,
}

/// Letter names: the upper-cased first source letter followed by the rank of
/// the word among those with the same first letter, largest first. Over
/// `x < y` with `d = 4` this gives `X1 = xy³, …, X8 = x⁴, Y1 = y⁴, …, Y8 = yx³`.
/// Falls back to `L1, L2, …` when that scheme does not give distinct names.
fn letter_names(alphabet: &Alphabet, words: &[Vec<u16>]) -> Vec<String> {
    let m = alphabet.len();
    let per_first = words.len() / m;
    let names: Vec<String> = words
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let first = alphabet.generators()[w[0] as usize].name().to_uppercase();
            format!("{first}{}", per_first - k % per_first)
        })
        .collect();
    let distinct = names.iter().collect::<HashSet<_>>().len() == names.len();
    let valid = alphabet.generators().iter().all(|g| g.name().len() == 1);
    if distinct && valid {
        names
    } else {
        (1..=words.len()).map(|k| format!("L{k}")).collect()
    }
}

fn all_words(m: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m as u16).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Builds the letters and the raw relations of the degree-`d` Veronese
/// subalgebra. Linear relations are all `v·f·w` of degree `d`, quadratic
/// relations all `v·f·w` of degree `2d`, each degree-`2d` word read as a pair
/// of letters. Requires `2d` to be at least every relator degree.
pub fn veronese_presentation(pres: &Presentation, d: u32) -> Result<QuadPresentation> {
    let source_alphabet = pres.alphabet();
    if let Some(g) = source_alphabet.generators().iter().find(|g| g.degree() != 1) {
        return Err(Error::Unsupported(format!(
            "generator `{}` has degree {}; only degree-1 generators are supported",
            g.name(),
            g.degree()
        )));
    }
    let mut degrees = Vec::new();
    for r in pres.relators() {
        let deg = r
            .homogeneous_degree()
            .ok_or_else(|| Error::NonHomogeneous(r.display(source_alphabet, None)))?;
        degrees.push(deg);
    }
    let max_rel = degrees.iter().copied().max().unwrap_or(0);
    // relators of degree up to 2d still map to letter relations
    if d == 0 || 2 * d < max_rel {
        return Err(Error::DegreeBoundTooSmall {
            bound: d,
            degree: max_rel.max(1),
        });
    }
    let m = source_alphabet.len();
    let count = (m as u128).checked_pow(d).filter(|&c| c <= MAX_LETTERS as u128);
    let Some(count) = count else {
        return Err(Error::SizeGuard(format!(
            "{m}^{d} letters, at most {MAX_LETTERS} allowed"
        )));
    };
    let words = all_words(m, d as usize);
    debug_assert_eq!(words.len() as u128, count);
    let names = letter_names(source_alphabet, &words);
    let letters: Vec<VeroneseLetter> = words
        .iter()
        .zip(&names)
        .map(|(w, n)| {
            let word = source_alphabet.word(w.clone()).expect("letters in range");
            VeroneseLetter {
                name: n.clone(),
                source: source_alphabet.display_word(&word),
                word,
            }
        })
        .collect();
    let alphabet = Alphabet::new(
        names
            .iter()
            .map(|n| Generator::new(n.clone(), 1).expect("nonempty name"))
            .collect(),
    )?;

    let letter_of = |chunk: &[u16]| -> u16 {
        chunk.iter().fold(0usize, |acc, &l| acc * m + l as usize) as u16
    };
    let d = d as usize;
    let to_letters = |p: &NcPoly| -> NcPoly {
        p.terms()
            .map(|(w, c)| {
                let ls: Vec<u16> = w.letters().chunks(d).map(letter_of).collect();
                (alphabet.word(ls).expect("letters in range"), c.clone())
            })
            .collect()
    };
    let mut linear_relations = Vec::new();
    let mut quadratic_relations = Vec::new();
    for (r, &deg) in pres.relators().iter().zip(&degrees) {
        for (target, out) in [(d, &mut linear_relations), (2 * d, &mut quadratic_relations)] {
            let Some(pad) = target.checked_sub(deg as usize) else {
                continue;
            };
            for left in 0..=pad {
                for v in all_words(m, left) {
                    let v = source_alphabet.word(v).expect("letters in range");
                    for w in all_words(m, pad - left) {
                        let w = source_alphabet.word(w).expect("letters in range");
                        let p = to_letters(&r.mul_words(&v, &w));
                        if !p.is_zero() {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    Ok(QuadPresentation {
        source: pres.clone(),
        d: d as u32,
        letters,
        alphabet,
        linear_relations,
        quadratic_relations,
        eliminated: BTreeMap::new(),
    })
}

impl QuadPresentation {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    /// All `m^d` letters, including eliminated ones.
    pub fn letters(&self) -> &[VeroneseLetter] {
        &self.letters
    }

    /// The alphabet of all letters, including eliminated ones.
    pub fn letter_alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn linear_relations(&self) -> &[NcPoly] {
        &self.linear_relations
    }

    pub fn quadratic_relations(&self) -> &[NcPoly] {
        &self.quadratic_relations
    }

    /// Removed letters with the combination of kept letters each one equals.
    pub fn eliminated(&self) -> &BTreeMap<u16, NcPoly> {
        &self.eliminated
    }

    pub fn kept_letters(&self) -> Vec<u16> {
        (0..self.letters.len() as u16)
            .filter(|l| !self.eliminated.contains_key(l))
            .collect()
    }

    /// Number of letters not eliminated.
    pub fn generator_count(&self) -> usize {
        self.letters.len() - self.eliminated.len()
    }

    /// Replaces every eliminated letter by its combination.
    pub fn substitute(&self, p: &NcPoly) -> NcPoly {
        if self.eliminated.is_empty() {
            return p.clone();
        }
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::monomial(Word::empty(), c.clone());
            for &l in w.letters() {
                let factor = match self.eliminated.get(&l) {
                    Some(q) => q.clone(),
                    None => NcPoly::word(self.alphabet.word(vec![l]).expect("letter in range")),
                };
                let mut next = NcPoly::zero();
                for (u, a) in acc.terms() {
                    for (v, b) in factor.terms() {
                        next.add_term(u.concat(v), a * b);
                    }
                }
                acc = next;
            }
            out.add_scaled(&Scalar::one(), &acc);
        }
        out
    }

    /// Rewrites a polynomial in letters as one in the source alphabet.
    pub fn expand(&self, p: &NcPoly) -> NcPoly {
        p.terms()
            .map(|(w, c)| {
                let word = w
                    .letters()
                    .iter()
                    .fold(Word::empty(), |acc, &l| acc.concat(&self.letters[l as usize].word));
                (word, c.clone())
            })
            .collect()
    }

    /// Echelon form of the quadratic relations.
    pub fn quadratic_span(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.quadratic_relations {
            e.insert(r);
        }
        e
    }

    /// The presentation over the kept letters only, with a reduced basis of
    /// the relations. Letters keep their relative precedence; the order is
    /// deglex.
    pub fn to_presentation(&self) -> Presentation {
        let kept = self.kept_letters();
        let index: BTreeMap<u16, u16> = kept.iter().enumerate().map(|(i, &l)| (l, i as u16)).collect();
        let alphabet = Alphabet::new(
            kept.iter()
                .map(|&l| Generator::new(self.letters[l as usize].name.clone(), 1).expect("nonempty"))
                .collect(),
        )
        .expect("distinct names");
        let mut span = Echelon::new();
        for r in self.linear_relations.iter().chain(&self.quadratic_relations) {
            span.insert(r);
        }
        let relators = span
            .reduced_basis()
            .into_iter()
            .rev()
            .map(|r| {
                r.terms()
                    .map(|(w, c)| {
                        let ls = w.letters().iter().map(|l| index[l]).collect();
                        (alphabet.word(ls).expect("kept letter"), c.clone())
                    })
                    .collect()
            })
            .collect();
        let name = self.source.name().map(|n| format!("V{}({n})", self.d));
        Presentation::new(name, MonomialOrder::deglex(alphabet), relators)
    }
}

/// Solves the linear relations, removing in each the largest letter, and
/// substitutes the solutions into the quadratic relations. Letters equal to 0
/// are removed as well.
pub fn eliminate_linear(qp: &QuadPresentation) -> QuadPresentation {
    if qp.linear_relations.is_empty() {
        return qp.clone();
    }
    let mut span = Echelon::new();
    for r in &qp.linear_relations {
        span.insert(&qp.substitute(r));
    }
    let mut out = qp.clone();
    for row in span.reduced_basis() {
        let (pivot, _) = row.terms().next_back().expect("nonzero row");
        let letter = pivot.letters()[0];
        let solution = -&(&row - &NcPoly::word(pivot.clone()));
        out.eliminated.insert(letter, solution);
    }
    out.linear_relations.clear();
    out.quadratic_relations = qp
        .quadratic_relations
        .iter()
        .map(|r| out.substitute(r))
        .filter(|r| !r.is_zero())
        .collect();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub generators: usize,
    pub rank: usize,
    #[serde(serialize_with = "serde_display::ser")]
    pub h2d: BigUint,
    /// `generators² − h2d`.
    #[serde(serialize_with = "serde_display::ser")]
    pub expected: BigInt,
    pub matches: bool,
}

/// Dimension of the span of the quadratic relations, compared with the
/// number the dimension `h2d` of the degree-`2d` component predicts.
pub fn relation_rank(qp: &QuadPresentation, h2d: &BigUint) -> RankReport {
    let g = qp.generator_count();
    let rank = qp.quadratic_span().rank();
    let expected = BigInt::from(g * g) - BigInt::from(h2d.clone());
    RankReport {
        generators: g,
        rank,
        h2d: h2d.clone(),
        matches: BigInt::from(rank) == expected,
        expected,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticityRow {
    pub letter_degree: usize,
    pub source_degree: usize,
    #[serde(serialize_with = "serde_display::ser")]
    pub expected: BigUint,
    #[serde(serialize_with = "serde_display::ser")]
    pub computed: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticityReport {
    pub d: u32,
    pub rows: Vec<QuadraticityRow>,
    pub rules: usize,
    pub passed: bool,
}

/// Completes the letter presentation on its own to letter degree
/// `max_letter_degree` and compares its normal-word counts with `h_{dm}`.
pub fn verify_quadraticity(
    qp: &QuadPresentation,
    h: &DimensionSeries,
    max_letter_degree: u32,
) -> Result<QuadraticityReport> {
    if max_letter_degree == 0 {
        return Err(Error::InvalidArgument("letter degree bound must be at least 1".into()));
    }
    let d = qp.d as usize;
    let expected = veronese_dims(h, d, max_letter_degree as usize)?;
    let pres = qp.to_presentation();
    let sys = RewriteSystem::from_relators(pres.order().clone(), pres.relators())?.complete(max_letter_degree)?;
    let computed = normal_word_counts(&sys, max_letter_degree)?;
    let rows: Vec<QuadraticityRow> = (0..=max_letter_degree as usize)
        .map(|m| QuadraticityRow {
            letter_degree: m,
            source_degree: d * m,
            expected: expected.values()[m].clone(),
            computed: computed.values()[m].clone(),
        })
        .collect();
    Ok(QuadraticityReport {
        d: qp.d,
        passed: rows.iter().all(|r| r.expected == r.computed),
        rules: sys.rules().len(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NotMember,
    /// Neither linear nor quadratic in the letters.
    WrongDegree,
    ParseError(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixEntry {
    pub line: usize,
    pub name: String,
    pub text: String,
    /// 1 for linear, 2 for quadratic, absent otherwise.
    pub degree: Option<u32>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub entries: Vec<AppendixEntry>,
    pub linear_total: usize,
    pub linear_members: usize,
    pub quadratic_total: usize,
    pub quadratic_members: usize,
    /// Names of all lines that are not members.
    pub failures: Vec<String>,
}

/// Tests each listed relation for membership in the computed relation space.
/// Eliminated letters are substituted first; a linear relation must then
/// vanish and a quadratic one must lie in the span of the quadratic
/// relations. Lines that fail to parse are reported, not fatal.
pub fn appendix_reconcile(qp: &QuadPresentation, listed: &str) -> AppendixReport {
    let qp = eliminate_linear(qp);
    let span = qp.quadratic_span();
    let mut entries = Vec::new();
    for item in parse_relation_list(listed, qp.letter_alphabet()) {
        let (degree, verdict) = match &item.relation {
            Err(e) => (None, Verdict::ParseError(e.to_string())),
            Ok(p) => match p.homogeneous_degree() {
                Some(deg @ (1 | 2)) => {
                    let s = qp.substitute(p);
                    let member = if deg == 1 { s.is_zero() } else { span.contains(&s) };
                    (Some(deg), if member { Verdict::Member } else { Verdict::NotMember })
                }
                _ => (None, Verdict::WrongDegree),
            },
        };
        entries.push(AppendixEntry {
            line: item.line,
            name: item.name,
            text: item.text,
            degree,
            verdict,
        });
    }
    let count = |deg: u32, member: bool| {
        entries
            .iter()
            .filter(|e| e.degree == Some(deg) && (!member || e.verdict == Verdict::Member))
            .count()
    };
    AppendixReport {
        linear_total: count(1, false),
        linear_members: count(1, true),
        quadratic_total: count(2, false),
        quadratic_members: count(2, true),
        failures: entries
            .iter()
            .filter(|e| e.verdict != Verdict::Member)
            .map(|e| e.name.clone())
            .collect(),
        entries,
    }
}
