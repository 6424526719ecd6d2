//! Rewriting systems with polynomial right-hand sides.
//!
//! A rule `w → p` replaces the word `w` by the polynomial `p`, every term of
//! which is smaller than `w` in the system's monomial order. Reduction is
//! therefore terminating. Completion resolves overlap and inclusion
//! ambiguities in order of increasing superposition degree, up to a degree
//! bound. For homogeneous relators the truncated system answers every
//! question about elements of degree at most the bound exactly.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{NcPoly, Scalar};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    lhs: Word,
    rhs: NcPoly,
}

impl RewriteRule {
    /// Builds a rule, checking that every right-hand term is below `lhs`.
    pub fn new(lhs: Word, rhs: NcPoly, order: &MonomialOrder) -> Result<Self> {
        order.compare(&lhs, &lhs)?;
        for w in rhs.words() {
            if order.compare(w, &lhs)? != std::cmp::Ordering::Less {
                return Err(Error::InvalidArgument(format!(
                    "right-hand term {} is not below {}",
                    order.alphabet().display_word(w),
                    order.alphabet().display_word(&lhs)
                )));
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &NcPoly {
        &self.rhs
    }

    /// The rule read as the relator `lhs − rhs`.
    pub fn relator(&self) -> NcPoly {
        &NcPoly::word(self.lhs.clone()) - &self.rhs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero() || self.rhs.homogeneous_degree() == Some(self.lhs.degree())
    }

    pub fn display(&self, alphabet: &Alphabet, order: &MonomialOrder) -> String {
        format!(
            "{} -> {}",
            alphabet.display_word(&self.lhs),
            self.rhs.display(alphabet, Some(order))
        )
    }
}

/// Orients a relator around its order-maximal word: `c·w + rest = 0` becomes
/// `w → −rest / c`.
pub fn orient(relator: &NcPoly, order: &MonomialOrder) -> Result<RewriteRule> {
    let (lead, c) = relator.leading(order).ok_or(Error::ZeroRelator)?;
    let lead = lead.clone();
    let inv = -(Scalar::one() / c);
    let mut rhs = NcPoly::zero();
    for (w, a) in relator.terms() {
        if *w != lead {
            rhs.add_term(w.clone(), a * &inv);
        }
    }
    RewriteRule::new(lead, rhs, order)
}

/// Finds left-hand sides occurring as factors of a word.
#[derive(Debug, Clone, Default)]
struct Matcher {
    by_lhs: HashMap<Vec<u16>, usize>,
    lengths: BTreeMap<usize, usize>,
}

impl Matcher {
    fn insert(&mut self, lhs: &Word, rule: usize) {
        if self.by_lhs.insert(lhs.letters().to_vec(), rule).is_none() {
            *self.lengths.entry(lhs.len()).or_default() += 1;
        }
    }

    fn remove(&mut self, lhs: &Word) {
        if self.by_lhs.remove(lhs.letters()).is_some() {
            let n = self.lengths.get_mut(&lhs.len()).expect("length tracked");
            *n -= 1;
            if *n == 0 {
                self.lengths.remove(&lhs.len());
            }
        }
    }

    /// Leftmost, then shortest, occurrence of a left-hand side.
    fn find(&self, letters: &[u16]) -> Option<(usize, usize)> {
        for pos in 0..=letters.len() {
            for &len in self.lengths.keys() {
                if pos + len > letters.len() {
                    break;
                }
                if let Some(&rule) = self.by_lhs.get(&letters[pos..pos + len]) {
                    return Some((rule, pos));
                }
            }
        }
        None
    }
}

/// Reduces `p` to normal form, always rewriting the largest reducible term.
fn reduce_with(p: &NcPoly, rules: &[RewriteRule], matcher: &Matcher, order: &MonomialOrder) -> NcPoly {
    if matcher.by_lhs.is_empty() {
        return p.clone();
    }
    // keyed by (order grading, letters) so the last entry is the order maximum
    let mut work: BTreeMap<(u32, Vec<u16>), (u32, Scalar)> = p
        .terms()
        .map(|(w, c)| ((order.primary(w), w.letters().to_vec()), (w.degree(), c.clone())))
        .collect();
    let mut out = NcPoly::zero();
    while let Some(((_, letters), (degree, c))) = work.pop_last() {
        let word = Word::from_parts(letters, degree);
        match matcher.find(word.letters()) {
            None => out.add_term(word, c),
            Some((r, pos)) => {
                let rule = &rules[r];
                for (t, a) in rule.rhs.terms() {
                    let next = word.splice(pos, rule.lhs.len(), rule.lhs.degree(), t);
                    let key = (order.primary(&next), next.letters().to_vec());
                    let add = &c * a;
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert((next.degree(), add));
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            e.get_mut().1 += add;
                            if e.get().1.is_zero() {
                                e.remove();
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    /// A proper suffix of the first left-hand side is a proper prefix of the second.
    Overlap,
    /// The second left-hand side is a factor of the first.
    Inclusion,
}

/// A word that admits two different one-step reductions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    /// Indices of the two rules involved, in the roles described by `kind`.
    pub rules: (usize, usize),
    /// Overlap length for overlaps; position of the inner left-hand side for inclusions.
    pub offset: usize,
    pub word: Word,
    /// Results of applying the first and the second rule once.
    pub reducts: (NcPoly, NcPoly),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Superposition {
    degree: u32,
    kind: AmbiguityKind,
    first: usize,
    second: usize,
    offset: usize,
}

/// All superpositions of `lhs[first]` with `lhs[second]` of degree at most `max_degree`.
fn superpositions(
    alphabet: &Alphabet,
    first: usize,
    a: &Word,
    second: usize,
    b: &Word,
    max_degree: u32,
    out: &mut Vec<Superposition>,
) {
    let (la, lb) = (a.letters(), b.letters());
    for k in 1..la.len().min(lb.len()) {
        if la[la.len() - k..] == lb[..k] {
            let shared = alphabet.subword(b, 0..k).degree();
            let degree = a.degree() + b.degree() - shared;
            if degree <= max_degree {
                out.push(Superposition {
                    degree,
                    kind: AmbiguityKind::Overlap,
                    first,
                    second,
                    offset: k,
                });
            }
        }
    }
    if first != second && a.degree() <= max_degree && lb.len() <= la.len() {
        // identical left-hand sides are reported once, with first < second
        if la == lb && first > second {
            return;
        }
        let mut start = 0;
        while start + lb.len() <= la.len() {
            if la[start..start + lb.len()] == *lb {
                out.push(Superposition {
                    degree: a.degree(),
                    kind: AmbiguityKind::Inclusion,
                    first,
                    second,
                    offset: start,
                });
            }
            start += 1;
            if lb.is_empty() {
                break;
            }
        }
    }
}

fn resolve_superposition(
    alphabet: &Alphabet,
    s: &Superposition,
    rules: &[RewriteRule],
) -> Ambiguity {
    let (r1, r2) = (&rules[s.first], &rules[s.second]);
    let (word, reducts) = match s.kind {
        AmbiguityKind::Overlap => {
            let k = s.offset;
            let u = alphabet.subword(&r1.lhs, 0..r1.lhs.len() - k);
            let v = alphabet.subword(&r2.lhs, k..r2.lhs.len());
            let word = r1.lhs.concat(&v);
            let first = r1.rhs.mul_words(&Word::empty(), &v);
            let second = r2.rhs.mul_words(&u, &Word::empty());
            (word, (first, second))
        }
        AmbiguityKind::Inclusion => {
            let p = s.offset;
            let u = alphabet.subword(&r1.lhs, 0..p);
            let v = alphabet.subword(&r1.lhs, p + r2.lhs.len()..r1.lhs.len());
            (r1.lhs.clone(), (r1.rhs.clone(), r2.rhs.mul_words(&u, &v)))
        }
    };
    Ambiguity {
        kind: s.kind,
        rules: (s.first, s.second),
        offset: s.offset,
        word,
        reducts,
    }
}

/// An ordered list of rewrite rules together with the degree up to which it
/// has been completed (0 for a raw system).
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    order: MonomialOrder,
    rules: Vec<RewriteRule>,
    completed_to: u32,
    matcher: Matcher,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.rules == other.rules
            && self.completed_to == other.completed_to
    }
}

impl RewriteSystem {
    /// A raw system. Rules are sorted by left-hand degree, then by the order.
    pub fn new(order: MonomialOrder, mut rules: Vec<RewriteRule>) -> Result<Self> {
        for r in &rules {
            RewriteRule::new(r.lhs.clone(), r.rhs.clone(), &order)?;
        }
        sort_rules(&order, &mut rules);
        Ok(Self::assemble(order, rules, 0))
    }

    /// Orients every nonzero relator. Zero relators are vacuous and skipped.
    pub fn from_relators(order: MonomialOrder, relators: &[NcPoly]) -> Result<Self> {
        let rules = relators
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| orient(p, &order))
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, rules)
    }

    fn assemble(order: MonomialOrder, rules: Vec<RewriteRule>, completed_to: u32) -> Self {
        let mut matcher = Matcher::default();
        // reversed so that, among equal left-hand sides, the first rule wins
        for (i, r) in rules.iter().enumerate().rev() {
            matcher.remove(&r.lhs);
            matcher.insert(&r.lhs, i);
        }
        RewriteSystem {
            order,
            rules,
            completed_to,
            matcher,
        }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.order.alphabet()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn completed_to(&self) -> u32 {
        self.completed_to
    }

    pub fn max_lhs_degree(&self) -> u32 {
        self.rules.iter().map(|r| r.lhs.degree()).max().unwrap_or(0)
    }

    pub fn reduce(&self, p: &NcPoly) -> NcPoly {
        reduce_with(p, &self.rules, &self.matcher, &self.order)
    }

    pub fn reduce_word(&self, w: &Word) -> NcPoly {
        self.reduce(&NcPoly::word(w.clone()))
    }

    /// True iff no left-hand side occurs as a factor of `w`.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.matcher.find(w.letters()).is_none()
    }

    /// Every overlap and inclusion ambiguity of superposition degree at most
    /// `max_degree`, sorted by degree, then kind, rule pair and offset.
    pub fn ambiguities(&self, max_degree: u32) -> Vec<Ambiguity> {
        let alphabet = self.alphabet();
        let mut sups = Vec::new();
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                superpositions(alphabet, i, &a.lhs, j, &b.lhs, max_degree, &mut sups);
            }
        }
        sups.sort();
        sups.iter()
            .map(|s| resolve_superposition(alphabet, s, &self.rules))
            .collect()
    }

    /// True when no left-hand side contains another as a factor and every
    /// right-hand side is in normal form.
    pub fn is_interreduced(&self) -> bool {
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                if i != j && a.lhs.contains_factor(b.lhs.letters()) {
                    return false;
                }
            }
            if a.rhs.words().any(|w| !self.is_irreducible(w)) {
                return false;
            }
        }
        true
    }

    /// Completes the system up to `max_degree`.
    ///
    /// Ambiguities are processed in increasing superposition degree and in
    /// FIFO order within a degree. A nonzero reduced difference of the two
    /// reducts is oriented into a new rule, which immediately renormalizes the
    /// right-hand sides of the others.
    pub fn complete(&self, max_degree: u32) -> Result<RewriteSystem> {
        for r in &self.rules {
            if !r.is_homogeneous() {
                return Err(Error::NonHomogeneous(
                    r.display(self.alphabet(), &self.order),
                ));
            }
            if r.lhs.degree() > max_degree {
                return Err(Error::DegreeBoundTooSmall {
                    bound: max_degree,
                    degree: r.lhs.degree(),
                });
            }
        }
        let mut run = Completion {
            order: self.order.clone(),
            max_degree,
            rules: Vec::new(),
            alive: Vec::new(),
            matcher: Matcher::default(),
            queue: BTreeMap::new(),
        };
        for r in &self.rules {
            run.push(r.lhs.degree(), Pending::Relator(r.relator()));
        }
        run.run()?;
        let mut rules: Vec<RewriteRule> = run
            .rules
            .into_iter()
            .zip(run.alive)
            .filter_map(|(r, alive)| alive.then_some(r))
            .collect();
        sort_rules(&self.order, &mut rules);
        Ok(Self::assemble(self.order.clone(), rules, max_degree))
    }
}

fn sort_rules(order: &MonomialOrder, rules: &mut [RewriteRule]) {
    rules.sort_by(|a, b| {
        a.lhs
            .degree()
            .cmp(&b.lhs.degree())
            .then_with(|| order.cmp(&a.lhs, &b.lhs))
    });
}

enum Pending {
    Relator(NcPoly),
    Ambiguity(Superposition),
}

struct Completion {
    order: MonomialOrder,
    max_degree: u32,
    rules: Vec<RewriteRule>,
    alive: Vec<bool>,
    matcher: Matcher,
    queue: BTreeMap<u32, VecDeque<Pending>>,
}

impl Completion {
    fn push(&mut self, degree: u32, item: Pending) {
        if degree <= self.max_degree {
            self.queue.entry(degree).or_default().push_back(item);
        }
    }

    fn pop(&mut self) -> Option<Pending> {
        let mut entry = self.queue.first_entry()?;
        let item = entry.get_mut().pop_front();
        if entry.get().is_empty() {
            entry.remove();
        }
        item
    }

    fn reduce(&self, p: &NcPoly) -> NcPoly {
        reduce_with(p, &self.rules, &self.matcher, &self.order)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(item) = self.pop() {
            let p = match item {
                Pending::Relator(p) => p,
                Pending::Ambiguity(s) => {
                    if !(self.alive[s.first] && self.alive[s.second]) {
                        continue;
                    }
                    let amb = resolve_superposition(self.order.alphabet(), &s, &self.rules);
                    &amb.reducts.0 - &amb.reducts.1
                }
            };
            let r = self.reduce(&p);
            if !r.is_zero() {
                let rule = orient(&r, &self.order)?;
                self.add_rule(rule);
            }
        }
        Ok(())
    }

    fn add_rule(&mut self, rule: RewriteRule) {
        let idx = self.rules.len();
        let lhs = rule.lhs.clone();
        self.rules.push(rule);
        self.alive.push(true);
        self.matcher.insert(&lhs, idx);

        for i in 0..idx {
            if !self.alive[i] {
                continue;
            }
            if self.rules[i].lhs.contains_factor(lhs.letters()) {
                // subsumed: its relator goes back through the queue
                self.alive[i] = false;
                let old = self.rules[i].lhs.clone();
                self.matcher.remove(&old);
                let relator = self.rules[i].relator();
                self.push(old.degree(), Pending::Relator(relator));
            } else if self.rules[i].rhs.words().any(|w| w.contains_factor(lhs.letters())) {
                let rhs = self.reduce(&self.rules[i].rhs);
                self.rules[i].rhs = rhs;
            }
        }

        let mut sups = Vec::new();
        let alphabet = self.order.alphabet().clone();
        for i in 0..=idx {
            if !self.alive[i] {
                continue;
            }
            superpositions(&alphabet, idx, &lhs, i, &self.rules[i].lhs, self.max_degree, &mut sups);
            if i != idx {
                superpositions(&alphabet, i, &self.rules[i].lhs, idx, &lhs, self.max_degree, &mut sups);
            }
        }
        sups.sort();
        for s in sups {
            self.push(s.degree, Pending::Ambiguity(s));
        }
    }
}
