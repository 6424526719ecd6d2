//! The graded Lie algebra with basis `x_k, y_k` in degree `2k−1` and `z_k` in
//! degree `2k`, given by closed-form structure constants, together with its
//! realization by 2×2 matrices over `ℚ[t]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::DimensionSeries;
use crate::poly::{format_scalar, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisLabel {
    family: Family,
    index: u32,
}

impl BasisLabel {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("basis indices start at 1".into()));
        }
        Ok(BasisLabel { family, index })
    }

    pub fn x(k: u32) -> Self {
        Self::new(Family::X, k).expect("index at least 1")
    }

    pub fn y(k: u32) -> Self {
        Self::new(Family::Y, k).expect("index at least 1")
    }

    pub fn z(k: u32) -> Self {
        Self::new(Family::Z, k).expect("index at least 1")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn degree(&self) -> u32 {
        match self.family {
            Family::X | Family::Y => 2 * self.index - 1,
            Family::Z => 2 * self.index,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A finite linear combination of basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<BasisLabel, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: BasisLabel) -> Self {
        Self::term(label, Scalar::one())
    }

    pub fn term(label: BasisLabel, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(label, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisLabel, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (l, c) in terms {
            e.add_term(l, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> Scalar {
        self.terms.get(label).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, label: BasisLabel, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &LieElement) {
        for (l, a) in &other.terms {
            self.add_term(*l, c * a);
        }
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        let mut e = Self::zero();
        e.add_scaled(c, self);
        e
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(BasisLabel::degree).max().unwrap_or(0)
    }

    /// The common degree of all terms; `None` for mixed degrees, `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(BasisLabel::degree);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }
}

impl std::ops::Add<&LieElement> for &LieElement {
    type Output = LieElement;

    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl std::ops::Sub<&LieElement> for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}*{l}", format_scalar(&abs))?;
            }
        }
        Ok(())
    }
}

/// Bracket of two basis vectors:
/// `[x_i,y_j] = z_{i+j−1}`, `[x_i,z_j] = −2x_{i+j}`, `[y_i,z_j] = 2y_{i+j}`,
/// and `[x_i,x_j] = [y_i,y_j] = [z_i,z_j] = 0`, extended by antisymmetry.
fn closed_form_bracket(a: BasisLabel, b: BasisLabel) -> LieElement {
    use Family::*;
    let (i, j) = (a.index, b.index);
    match (a.family, b.family) {
        (X, Y) => LieElement::basis(BasisLabel::z(i + j - 1)),
        (Y, X) => LieElement::term(BasisLabel::z(i + j - 1), int(-1)),
        (X, Z) => LieElement::term(BasisLabel::x(i + j), int(-2)),
        (Z, X) => LieElement::term(BasisLabel::x(i + j), int(2)),
        (Y, Z) => LieElement::term(BasisLabel::y(i + j), int(2)),
        (Z, Y) => LieElement::term(BasisLabel::y(i + j), int(-2)),
        _ => LieElement::zero(),
    }
}

/// A graded Lie algebra truncated at a degree, stored as a basis and a sparse
/// table of nonzero brackets of basis vectors.
#[derive(Debug, Clone)]
pub struct GradedLie {
    max_degree: u32,
    basis: Vec<BasisLabel>,
    brackets: HashMap<(BasisLabel, BasisLabel), LieElement>,
}

/// The truncation to degree `max_degree` of the Lie algebra with basis
/// `x_k, y_k, z_k` and the closed-form brackets.
pub fn build_l(max_degree: u32) -> Result<GradedLie> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("truncation degree must be at least 1".into()));
    }
    let mut basis = Vec::new();
    for k in 1..=max_degree.div_ceil(2) {
        for label in [BasisLabel::x(k), BasisLabel::y(k), BasisLabel::z(k)] {
            if label.degree() <= max_degree {
                basis.push(label);
            }
        }
    }
    basis.sort_by_key(|l| (l.degree(), *l));
    let mut brackets = HashMap::new();
    for &a in &basis {
        for &b in &basis {
            if a.degree() + b.degree() <= max_degree {
                let c = closed_form_bracket(a, b);
                if !c.is_zero() {
                    brackets.insert((a, b), c);
                }
            }
        }
    }
    Ok(GradedLie {
        max_degree,
        basis,
        brackets,
    })
}

impl GradedLie {
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Basis labels sorted by degree.
    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    /// Number of stored nonzero brackets.
    pub fn nonzero_brackets(&self) -> usize {
        self.brackets.len()
    }

    pub fn bracket_basis(&self, a: BasisLabel, b: BasisLabel) -> Result<LieElement> {
        let degree = a.degree() + b.degree();
        if degree > self.max_degree {
            return Err(Error::Truncation {
                degree,
                max: self.max_degree,
            });
        }
        Ok(self.brackets.get(&(a, b)).cloned().unwrap_or_default())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        for e in [a, b] {
            if let Some(l) = e.terms.keys().find(|l| l.degree() > self.max_degree) {
                return Err(Error::Truncation {
                    degree: l.degree(),
                    max: self.max_degree,
                });
            }
        }
        let mut out = LieElement::zero();
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                let c = self.bracket_basis(*la, *lb)?;
                out.add_scaled(&(ca * cb), &c);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub max_degree: u32,
    pub checked: usize,
    /// Offending tuples, each rendered as label names.
    pub violations: Vec<Vec<String>>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0` on every ordered triple of
/// basis vectors with total degree at most `max_degree`.
pub fn jacobi_check(g: &GradedLie, max_degree: u32) -> Result<StructureReport> {
    let max_degree = max_degree.min(g.max_degree);
    let basis: Vec<BasisLabel> = g.basis.iter().copied().filter(|l| l.degree() <= max_degree).collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                if a.degree() + b.degree() + c.degree() > max_degree {
                    continue;
                }
                checked += 1;
                let (ea, eb, ec) = (LieElement::basis(a), LieElement::basis(b), LieElement::basis(c));
                let mut sum = g.bracket(&ea, &g.bracket(&eb, &ec)?)?;
                sum = &sum + &g.bracket(&eb, &g.bracket(&ec, &ea)?)?;
                sum = &sum + &g.bracket(&ec, &g.bracket(&ea, &eb)?)?;
                if !sum.is_zero() {
                    violations.push(vec![a.to_string(), b.to_string(), c.to_string()]);
                }
            }
        }
    }
    Ok(StructureReport {
        max_degree,
        checked,
        violations,
    })
}

/// Checks `[a,b] = −[b,a]` and that every nonzero bracket is homogeneous of
/// degree `deg a + deg b`, over all pairs within the truncation.
pub fn antisymmetry_check(g: &GradedLie) -> StructureReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    for &a in &g.basis {
        for &b in &g.basis {
            let Ok(ab) = g.bracket_basis(a, b) else {
                continue;
            };
            let ba = g.bracket_basis(b, a).expect("same degree as [a,b]");
            checked += 1;
            let graded = ab.is_zero() || ab.homogeneous_degree() == Some(a.degree() + b.degree());
            if !(&ab + &ba).is_zero() || !graded {
                violations.push(vec![a.to_string(), b.to_string()]);
            }
        }
    }
    StructureReport {
        max_degree: g.max_degree,
        checked,
        violations,
    }
}

/// Dimension of each graded piece in degrees `0..=max_degree`, clamped to the
/// truncation of `g`.
pub fn graded_dims(g: &GradedLie, max_degree: u32) -> DimensionSeries {
    let n = max_degree.min(g.max_degree) as usize;
    let mut counts = vec![0u64; n + 1];
    for l in &g.basis {
        if let Some(slot) = counts.get_mut(l.degree() as usize) {
            *slot += 1;
        }
    }
    DimensionSeries::graded(counts.into_iter().map(BigUint::from).collect())
}

/// A univariate polynomial in `t`, coefficients from the constant term up,
/// without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPoly(Vec<Scalar>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    /// `c · t^k`
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        TPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff `t` divides the polynomial.
    pub fn divisible_by_t(&self) -> bool {
        self.0.first().is_none_or(Zero::is_zero)
    }

    fn add_scaled(&self, c: &Scalar, other: &TPoly) -> TPoly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Scalar], i: usize| v.get(i).cloned().unwrap_or_else(Scalar::zero);
        TPoly::from_coeffs((0..n).map(|i| get(&self.0, i) + c * get(&other.0, i)).collect())
    }

    fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(v)
    }
}

/// A 2×2 matrix over `ℚ[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyMatrix {
    pub entries: [[TPoly; 2]; 2],
}

impl PolyMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The matrix realizing a basis vector: `x_i` has `t^{i−1}` in position
    /// (1,2), `y_i` has `t^i` in position (2,1), `z_i = diag(t^i, −t^i)`.
    pub fn of_label(l: BasisLabel) -> Self {
        let i = l.index as usize;
        let mut m = Self::zero();
        match l.family {
            Family::X => m.entries[0][1] = TPoly::monomial(int(1), i - 1),
            Family::Y => m.entries[1][0] = TPoly::monomial(int(1), i),
            Family::Z => {
                m.entries[0][0] = TPoly::monomial(int(1), i);
                m.entries[1][1] = TPoly::monomial(int(-1), i);
            }
        }
        m
    }

    pub fn of_element(e: &LieElement) -> Self {
        let mut m = Self::zero();
        for (l, c) in e.terms() {
            m = m.add_scaled(c, &Self::of_label(*l));
        }
        m
    }

    pub fn add_scaled(&self, c: &Scalar, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zero();
        for r in 0..2 {
            for s in 0..2 {
                out.entries[r][s] = self.entries[r][s].add_scaled(c, &other.entries[r][s]);
            }
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zero();
        for r in 0..2 {
            for s in 0..2 {
                let a = self.entries[r][0].mul(&other.entries[0][s]);
                let b = self.entries[r][1].mul(&other.entries[1][s]);
                out.entries[r][s] = a.add_scaled(&int(1), &b);
            }
        }
        out
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &PolyMatrix) -> PolyMatrix {
        self.mul(other).add_scaled(&int(-1), &other.mul(self))
    }

    pub fn trace(&self) -> TPoly {
        self.entries[0][0].add_scaled(&int(1), &self.entries[1][1])
    }

    /// Trace zero and every entry other than (1,2) divisible by `t`.
    pub fn in_model(&self) -> bool {
        self.trace().is_zero()
            && [(0, 0), (1, 0), (1, 1)]
                .iter()
                .all(|&(r, s)| self.entries[r][s].divisible_by_t())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixModelReport {
    pub max_index: u32,
    pub pairs_checked: usize,
    /// Pairs whose matrix commutator differs from the structure constants.
    pub mismatches: Vec<(String, String)>,
    /// Labels or commutators whose matrix leaves the model.
    pub membership_failures: Vec<String>,
}

impl MatrixModelReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.membership_failures.is_empty()
    }
}

/// Compares matrix commutators of the realizations of all basis vectors with
/// index at most `max_index` against the structure constants.
pub fn matrix_model_check(max_index: u32) -> Result<MatrixModelReport> {
    if max_index == 0 {
        return Err(Error::InvalidArgument("index bound must be at least 1".into()));
    }
    let g = build_l(4 * max_index)?;
    let labels: Vec<BasisLabel> = (1..=max_index)
        .flat_map(|k| [BasisLabel::x(k), BasisLabel::y(k), BasisLabel::z(k)])
        .collect();
    let mut pairs_checked = 0;
    let mut mismatches = Vec::new();
    let mut membership_failures = Vec::new();
    for &a in &labels {
        if !PolyMatrix::of_label(a).in_model() {
            membership_failures.push(a.to_string());
        }
    }
    for &a in &labels {
        for &b in &labels {
            pairs_checked += 1;
            let product = PolyMatrix::of_label(a).commutator(&PolyMatrix::of_label(b));
            let expected = PolyMatrix::of_element(&g.bracket_basis(a, b)?);
            if product != expected {
                mismatches.push((a.to_string(), b.to_string()));
            }
            if !product.in_model() {
                membership_failures.push(format!("[{a},{b}]"));
            }
        }
    }
    Ok(MatrixModelReport {
        max_index,
        pairs_checked,
        mismatches,
        membership_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(l: BasisLabel) -> LieElement {
        LieElement::basis(l)
    }

    #[test]
    fn structure_constant_examples() {
        let g = build_l(12).unwrap();
        assert_eq!(g.bracket(&b(BasisLabel::x(1)), &b(BasisLabel::y(1))).unwrap(), b(BasisLabel::z(1)));
        assert_eq!(
            g.bracket(&b(BasisLabel::x(2)), &b(BasisLabel::z(3))).unwrap(),
            LieElement::term(BasisLabel::x(5), int(-2))
        );
        assert!(g.bracket(&b(BasisLabel::x(3)), &b(BasisLabel::x(4))).unwrap().is_zero());
        assert!(g.bracket(&b(BasisLabel::z(1)), &b(BasisLabel::z(2))).unwrap().is_zero());
    }

    #[test]
    fn bilinear_expansion() {
        let g = build_l(4).unwrap();
        let v = &b(BasisLabel::x(1)) + &b(BasisLabel::y(1));
        let w = &b(BasisLabel::x(1)) - &b(BasisLabel::y(1));
        // [x1,x1] − [x1,y1] + [y1,x1] − [y1,y1] = −2 z1
        assert_eq!(g.bracket(&v, &w).unwrap(), LieElement::term(BasisLabel::z(1), int(-2)));
        assert!(g.bracket(&v, &v).unwrap().is_zero());
        assert_eq!(g.bracket(&v, &w).unwrap().to_string(), "-2*z1");
    }

    #[test]
    fn truncation_is_enforced() {
        let g = build_l(3).unwrap();
        assert_eq!(
            g.bracket(&b(BasisLabel::x(2)), &b(BasisLabel::y(1))),
            Err(Error::Truncation { degree: 4, max: 3 })
        );
        assert!(build_l(0).is_err());
        assert!(BasisLabel::new(Family::X, 0).is_err());
    }

    #[test]
    fn degrees_follow_the_labels() {
        assert_eq!(BasisLabel::x(3).degree(), 5);
        assert_eq!(BasisLabel::y(1).degree(), 1);
        assert_eq!(BasisLabel::z(2).degree(), 4);
        let g = build_l(7).unwrap();
        let names: Vec<String> = g.basis().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["x1", "y1", "z1", "x2", "y2", "z2", "x3", "y3", "z3", "x4", "y4"]);
    }

    #[test]
    fn jacobi_on_small_triples() {
        let g = build_l(6).unwrap();
        let (x, y, z) = (b(BasisLabel::x(1)), b(BasisLabel::y(1)), b(BasisLabel::z(1)));
        // [x1,[y1,z1]] = 2[x1,y2] = 2z2, [y1,[z1,x1]] = 2[y1,x2] = −2z2, [z1,[x1,y1]] = 0
        assert_eq!(
            g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap(),
            LieElement::term(BasisLabel::z(2), int(2))
        );
        assert_eq!(
            g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap(),
            LieElement::term(BasisLabel::z(2), int(-2))
        );
        assert!(g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap().is_zero());
        let r = jacobi_check(&g, 6).unwrap();
        assert!(r.passed());
        assert!(r.checked > 0);
    }

    #[test]
    fn jacobi_sweep_to_24() {
        let g = build_l(24).unwrap();
        let r = jacobi_check(&g, 24).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(antisymmetry_check(&g).passed());
    }

    #[test]
    fn matrix_model_examples() {
        let x1 = PolyMatrix::of_label(BasisLabel::x(1));
        let y1 = PolyMatrix::of_label(BasisLabel::y(1));
        assert_eq!(x1.commutator(&y1), PolyMatrix::of_label(BasisLabel::z(1)));
        assert_eq!(x1.commutator(&y1).entries[1][1], TPoly::monomial(int(-1), 1));
        let x2 = PolyMatrix::of_label(BasisLabel::x(2));
        let y3 = PolyMatrix::of_label(BasisLabel::y(3));
        assert_eq!(x2.commutator(&y3), PolyMatrix::of_label(BasisLabel::z(4)));
        // a constant in position (2,1) leaves the model
        let mut outside = PolyMatrix::zero();
        outside.entries[1][0] = TPoly::monomial(int(1), 0);
        assert!(!outside.in_model());
    }

    #[test]
    fn matrix_model_agrees_to_index_8() {
        let r = matrix_model_check(8).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pairs_checked, 24 * 24);
    }

    #[test]
    fn graded_dims_alternate() {
        let g = build_l(20).unwrap();
        let a = graded_dims(&g, 20).to_u64().unwrap();
        assert_eq!(a[0], 0);
        for (n, &d) in a.iter().enumerate().skip(1) {
            assert_eq!(d, if n % 2 == 1 { 2 } else { 1 });
        }
        let cum: u64 = a.iter().sum();
        assert!((20..=40).contains(&cum));
        assert_eq!(graded_dims(&g, 50).len(), 21);
    }

    fn arb_element(max_index: u32) -> impl Strategy<Value = LieElement> {
        proptest::collection::vec((0usize..3, 1..=max_index, -3i64..=3), 0..5).prop_map(|ts| {
            LieElement::from_terms(ts.into_iter().map(|(f, k, c)| {
                let fam = [Family::X, Family::Y, Family::Z][f];
                (BasisLabel::new(fam, k).unwrap(), int(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn bracket_is_alternating_and_graded(a in arb_element(5), c in arb_element(5)) {
            let g = build_l(20).unwrap();
            prop_assert!(g.bracket(&a, &a).unwrap().is_zero());
            let ac = g.bracket(&a, &c).unwrap();
            let ca = g.bracket(&c, &a).unwrap();
            prop_assert!((&ac + &ca).is_zero());
            prop_assert_eq!(
                PolyMatrix::of_element(&ac),
                PolyMatrix::of_element(&a).commutator(&PolyMatrix::of_element(&c))
            );
        }
    }
}
