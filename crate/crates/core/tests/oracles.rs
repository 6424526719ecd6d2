//! Cross-checks between independent computations of the same quantities.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use ncalg::builtins;
use ncalg::growth::{brute_force_counts, closed_form_comparison, cumulative, normal_word_counts};
use ncalg::lie::{build_l, graded_dims};
use ncalg::pbw::enveloping_series;
use ncalg::veronese::{eliminate_linear, veronese_presentation, QuadPresentation};
use ncalg::{classify_growth, GrowthLabel, NcPoly, Presentation, RewriteSystem, Scalar};

/// Gaussian elimination on rows indexed by column numbers, pivoting on the
/// smallest column. Kept separate from the library's echelon code.
#[derive(Default)]
struct Span {
    rows: HashMap<usize, BTreeMap<usize, Scalar>>,
}

impl Span {
    fn reduce(&self, row: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut row = row.clone();
        let mut floor = 0;
        loop {
            let Some((&col, c)) = row.range(floor..).next() else {
                return row;
            };
            let c = c.clone();
            match self.rows.get(&col) {
                None => floor = col + 1,
                Some(pivot_row) => {
                    for (k, v) in pivot_row {
                        let entry = row.entry(*k).or_insert_with(Scalar::zero);
                        *entry -= &c * v;
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                }
            }
        }
    }

    fn insert(&mut self, row: &BTreeMap<usize, Scalar>) {
        let r = self.reduce(row);
        if let Some((&col, c)) = r.iter().next() {
            let inv = Scalar::one() / c;
            self.rows.insert(col, r.iter().map(|(k, v)| (*k, v * &inv)).collect());
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Columns are words read as base-`m` numbers; all letters have degree 1.
fn to_row(p: &NcPoly, m: usize) -> BTreeMap<usize, Scalar> {
    p.terms()
        .map(|(w, c)| (w.letters().iter().fold(0, |acc, &l| acc * m + l as usize), c.clone()))
        .collect()
}

fn words(m: usize, len: usize) -> Vec<Vec<u16>> {
    (0..m.pow(len as u32))
        .map(|mut k| {
            let mut w = vec![0u16; len];
            for slot in w.iter_mut().rev() {
                *slot = (k % m) as u16;
                k /= m;
            }
            w
        })
        .collect()
}

/// The degree-`n` part of the two-sided ideal of the relators of `p`.
fn ideal_in_degree(p: &Presentation, n: usize) -> Span {
    let a = p.alphabet();
    let m = a.len();
    let mut span = Span::default();
    for r in p.relators() {
        let deg = r.homogeneous_degree().unwrap() as usize;
        if deg > n {
            continue;
        }
        for left in 0..=n - deg {
            for u in words(m, left) {
                for v in words(m, n - deg - left) {
                    let prod = r.mul_words(&a.word(u.clone()).unwrap(), &a.word(v).unwrap());
                    span.insert(&to_row(&prod, m));
                }
            }
        }
    }
    span
}

fn completed(p: &Presentation, n: u32) -> RewriteSystem {
    RewriteSystem::from_relators(p.order().clone(), p.relators()).unwrap().complete(n).unwrap()
}

#[test]
fn rules_lie_in_the_ideal_and_counts_match_its_codimension() {
    for (p, n) in [(builtins::u(), 9usize), (builtins::a(), 7)] {
        let sys = completed(&p, n as u32);
        let h = normal_word_counts(&sys, n as u32).unwrap();
        let m = p.alphabet().len();
        for deg in 0..=n {
            let span = ideal_in_degree(&p, deg);
            for rule in sys.rules().iter().filter(|r| r.lhs().degree() as usize == deg) {
                let rest = span.reduce(&to_row(&rule.relator(), m));
                assert!(rest.is_empty(), "rule of degree {deg} outside the ideal");
            }
            let codim = m.pow(deg as u32) - span.rank();
            assert_eq!(BigUint::from(codim), h.values()[deg], "degree {deg}");
        }
    }
}

#[test]
fn automaton_agrees_with_enumeration() {
    for p in [builtins::u(), builtins::a()] {
        let sys = completed(&p, 12);
        assert_eq!(normal_word_counts(&sys, 12).unwrap(), brute_force_counts(&sys, 12).unwrap());
    }
}

#[test]
fn enveloping_counts_agree_with_the_product_formula() {
    let sys = completed(&builtins::u(), 12);
    let h = normal_word_counts(&sys, 12).unwrap();
    let l = build_l(12).unwrap();
    let b = enveloping_series(&graded_dims(&l, 12), 12).unwrap();
    assert_eq!(b.coeffs(), h.values());
    assert_eq!(
        h.to_u64().unwrap(),
        vec![1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232, 344, 504]
    );
}

#[test]
fn closed_form_is_off_by_the_pure_b_words() {
    let sys = completed(&builtins::a(), 12);
    let rows = closed_form_comparison(&sys, 12).unwrap();
    let automaton: Vec<u64> = rows.iter().map(|r| u64::try_from(&r.automaton).unwrap()).collect();
    assert_eq!(automaton, [1, 3, 9, 20, 39, 70, 119, 194, 306, 470, 706, 1040, 1507]);
    for r in &rows {
        let expected = if r.degree == 0 { 0 } else { 1 };
        assert_eq!(r.delta, BigInt::from(expected), "degree {}", r.degree);
        assert_eq!(r.flagged, expected != 0);
    }
}

#[test]
fn growth_functions_are_monotone_and_submultiplicative() {
    for p in [builtins::u(), builtins::a()] {
        let sys = completed(&p, 12);
        let gamma = cumulative(&normal_word_counts(&sys, 12).unwrap()).unwrap();
        let g = gamma.values();
        assert!(g.windows(2).all(|w| w[0] <= w[1]));
        for a in 0..=12 {
            for b in 0..=12 - a {
                assert!(g[a + b] <= &g[a] * &g[b], "{a}+{b}");
            }
        }
    }
}

#[test]
fn enveloping_growth_is_intermediate() {
    let l = build_l(200).unwrap();
    let b = enveloping_series(&graded_dims(&l, 200), 200).unwrap();
    let gamma = cumulative(&b.into_series()).unwrap();
    let class = classify_growth(&gamma).unwrap();
    assert_eq!(class.label, GrowthLabel::Intermediate);
    let alpha = class.exponent.unwrap();
    assert!((0.4..=0.6).contains(&alpha), "alpha {alpha}");
    let trimmed = gamma.from_degree(gamma.len() / 4);
    assert_eq!(trimmed.start(), 50);
    assert_eq!(classify_growth(&trimmed).unwrap().label, GrowthLabel::Intermediate);
}

fn veronese_cases() -> Vec<(Presentation, u32)> {
    vec![(builtins::u(), 4), (builtins::a(), 3)]
}

#[test]
fn veronese_relations_vanish_in_the_algebra() {
    for (p, d) in veronese_cases() {
        let sys = completed(&p, 2 * d);
        let raw = veronese_presentation(&p, d).unwrap();
        let elim = eliminate_linear(&raw);
        for r in raw.linear_relations().iter().chain(raw.quadratic_relations()) {
            assert!(sys.reduce(&raw.expand(r)).is_zero());
        }
        for r in elim.quadratic_relations() {
            assert!(sys.reduce(&elim.expand(r)).is_zero());
        }
        for (&letter, value) in elim.eliminated() {
            let word = NcPoly::word(raw.letter_alphabet().word(vec![letter]).unwrap());
            assert_eq!(sys.reduce(&raw.expand(&word)), sys.reduce(&elim.expand(value)));
        }
    }
}

fn dense_rank(qp: &QuadPresentation) -> usize {
    let m = qp.letters().len();
    let mut span = Span::default();
    for r in qp.quadratic_relations() {
        span.insert(&to_row(r, m));
    }
    span.rank()
}

#[test]
fn relation_rank_matches_an_independent_elimination() {
    let expected = [(14, 96, 100u64), (20, 281, 119)];
    for ((p, d), (g, rank, h2d)) in veronese_cases().into_iter().zip(expected) {
        let elim = eliminate_linear(&veronese_presentation(&p, d).unwrap());
        assert_eq!(elim.generator_count(), g);
        assert_eq!(dense_rank(&elim), rank);
        let sys = completed(&p, 2 * d);
        let h = normal_word_counts(&sys, 2 * d).unwrap();
        assert_eq!(h.values()[2 * d as usize], BigUint::from(h2d));
        let report = ncalg::veronese::relation_rank(&elim, &h.values()[2 * d as usize]);
        assert_eq!(report.rank, rank);
        assert!(report.matches);
    }
}

#[test]
fn appendix_lines_reconcile_except_two() {
    let elim = eliminate_linear(&veronese_presentation(&builtins::u(), 4).unwrap());
    let report = ncalg::veronese::appendix_reconcile(&elim, builtins::V4U_APPENDIX);
    assert_eq!((report.linear_members, report.linear_total), (2, 2));
    assert_eq!((report.quadratic_members, report.quadratic_total), (94, 96));
    assert_eq!(report.failures, ["68", "92"]);

    // each failing line differs from its word-level form in one letter
    let corrected = "68: X1*X3 = X5*Y3 - 3*X3*Y3 + 3*X2*Y3\n92: Y1*X2 = Y5*Y2 - 3*Y3*Y2 + 3*Y2*Y2\n";
    let fixed = ncalg::veronese::appendix_reconcile(&elim, corrected);
    assert_eq!(fixed.quadratic_members, 2);
}
