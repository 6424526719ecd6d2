//! Counting normal words, growth functions and growth classification.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::automaton::FactorAutomaton;
use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `h_n`: dimension of the degree-`n` component.
    Graded,
    /// `γ(n) = h_0 + … + h_n`: dimension of the span of degree at most `n`.
    Cumulative,
}

/// A sequence of dimensions indexed by degree, starting at degree `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSeries {
    values: Vec<BigUint>,
    flavor: Flavor,
    start: usize,
}

impl DimensionSeries {
    pub fn new(values: Vec<BigUint>, flavor: Flavor) -> Self {
        DimensionSeries {
            values,
            flavor,
            start: 0,
        }
    }

    pub fn graded(values: Vec<BigUint>) -> Self {
        Self::new(values, Flavor::Graded)
    }

    pub fn graded_u64(values: &[u64]) -> Self {
        Self::graded(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn cumulative_values(values: Vec<BigUint>) -> Self {
        Self::new(values, Flavor::Cumulative)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Degree of the first stored value.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest degree covered, if any.
    pub fn max_degree(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.start + self.values.len() - 1)
    }

    /// Value at degree `n`.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i))
    }

    /// Values at degree `n` as u64, for small series in tests and reports.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.values.iter().map(|v| v.to_u64()).collect()
    }

    /// Drops the samples of degree below `degree`, keeping degree labels.
    pub fn from_degree(&self, degree: usize) -> DimensionSeries {
        let skip = degree.saturating_sub(self.start).min(self.values.len());
        DimensionSeries {
            values: self.values[skip..].to_vec(),
            flavor: self.flavor,
            start: self.start + skip,
        }
    }

    /// The degrees together with their values.
    pub fn points(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.start + i, v))
    }
}

/// Prefix sums of a graded series.
pub fn cumulative(series: &DimensionSeries) -> Result<DimensionSeries> {
    if series.flavor != Flavor::Graded {
        return Err(Error::WrongFlavor { expected: "graded" });
    }
    let mut acc = BigUint::zero();
    let values = series
        .values
        .iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect();
    Ok(DimensionSeries {
        values,
        flavor: Flavor::Cumulative,
        start: series.start,
    })
}

/// Number of irreducible words in each weighted degree `0..=max_degree`.
///
/// Runs a transfer dynamic program over the failure-link automaton of the
/// left-hand sides. The system must be completed at least to `max_degree`,
/// otherwise irreducible words are not a basis.
pub fn normal_word_counts(sys: &RewriteSystem, max_degree: u32) -> Result<DimensionSeries> {
    if sys.completed_to() < max_degree {
        return Err(Error::InsufficientCompletion {
            completed: sys.completed_to(),
            requested: max_degree,
        });
    }
    let alphabet = sys.alphabet();
    let aut = FactorAutomaton::new(
        alphabet.len(),
        sys.rules().iter().map(|r| r.lhs().letters()),
    );
    let weights: Vec<usize> = alphabet.generators().iter().map(|g| g.degree() as usize).collect();
    let n = max_degree as usize;
    let states = aut.states();
    // by_degree[d][s]: irreducible words of degree d leading to state s
    let mut by_degree: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); states]; n + 1];
    if !aut.is_dead(aut.start()) {
        by_degree[0][aut.start()] = BigUint::one();
    }
    for d in 1..=n {
        let mut row = vec![BigUint::zero(); states];
        for (letter, &w) in weights.iter().enumerate() {
            if w > d {
                continue;
            }
            for (s, count) in by_degree[d - w].iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                let t = aut.next(s, letter as u16);
                if !aut.is_dead(t) {
                    row[t] += count;
                }
            }
        }
        by_degree[d] = row;
    }
    Ok(DimensionSeries::graded(
        by_degree.into_iter().map(|row| row.into_iter().sum()).collect(),
    ))
}

pub const BRUTE_FORCE_MAX_LETTERS: usize = 4;
pub const BRUTE_FORCE_MAX_DEGREE: u32 = 14;

/// Enumerates every word of degree at most `max_degree` and tests each for
/// left-hand-side factors directly. Independent oracle for
/// [`normal_word_counts`].
pub fn brute_force_counts(sys: &RewriteSystem, max_degree: u32) -> Result<DimensionSeries> {
    let alphabet = sys.alphabet();
    if alphabet.len() > BRUTE_FORCE_MAX_LETTERS {
        return Err(Error::SizeGuard(format!(
            "{} letters, at most {BRUTE_FORCE_MAX_LETTERS} allowed",
            alphabet.len()
        )));
    }
    if max_degree > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::SizeGuard(format!(
            "degree {max_degree}, at most {BRUTE_FORCE_MAX_DEGREE} allowed"
        )));
    }
    if sys.completed_to() < max_degree {
        return Err(Error::InsufficientCompletion {
            completed: sys.completed_to(),
            requested: max_degree,
        });
    }
    let weights: Vec<u32> = alphabet.generators().iter().map(|g| g.degree()).collect();
    let patterns: Vec<&[u16]> = sys.rules().iter().map(|r| r.lhs().letters()).collect();
    let mut counts = vec![0u64; max_degree as usize + 1];
    let mut word = Vec::new();
    enumerate(&weights, &patterns, max_degree, 0, &mut word, &mut counts);
    Ok(DimensionSeries::graded_u64(&counts))
}

fn enumerate(
    weights: &[u32],
    patterns: &[&[u16]],
    max_degree: u32,
    degree: u32,
    word: &mut Vec<u16>,
    counts: &mut [u64],
) {
    let avoids = !patterns.iter().any(|p| {
        p.is_empty() || (p.len() <= word.len() && word.windows(p.len()).any(|w| w == *p))
    });
    if avoids {
        counts[degree as usize] += 1;
    }
    for (letter, &w) in weights.iter().enumerate() {
        if degree + w <= max_degree {
            word.push(letter as u16);
            enumerate(weights, patterns, max_degree, degree + w, word, counts);
            word.pop();
        }
    }
}

static PARTITIONS: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Number of partitions of `n`, by Euler's pentagonal-number recurrence
/// `p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
/// Values are memoized process-wide.
pub fn partition_p(n: i64) -> Result<BigUint> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    let n = n as usize;
    let mut memo = PARTITIONS.lock().unwrap_or_else(|e| e.into_inner());
    if memo.is_empty() {
        memo.push(BigInt::one());
    }
    while memo.len() <= n {
        let m = memo.len();
        let mut sum = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = memo[m - g1].clone();
            if g2 <= m {
                term += &memo[m - g2];
            }
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        memo.push(sum);
    }
    Ok(memo[n].to_biguint().expect("partition numbers are nonnegative"))
}

/// `Σ_{j=0}^{n} (2j+1)·p(n−j)`.
pub fn kobayashi_closed_form(n: u64) -> BigUint {
    (0..=n)
        .map(|j| BigUint::from(2 * j + 1) * partition_p((n - j) as i64).expect("nonnegative"))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormRow {
    pub degree: u32,
    #[serde(serialize_with = "crate::serde_display::ser")]
    pub automaton: BigUint,
    #[serde(serialize_with = "crate::serde_display::ser")]
    pub closed_form: BigUint,
    /// `closed_form − automaton`.
    #[serde(serialize_with = "crate::serde_display::ser")]
    pub delta: BigInt,
    pub flagged: bool,
}

/// Side-by-side comparison of the normal-word counts of `sys` with
/// [`kobayashi_closed_form`]. The automaton count is the reference; any
/// nonzero difference is flagged.
pub fn closed_form_comparison(sys: &RewriteSystem, max_degree: u32) -> Result<Vec<ClosedFormRow>> {
    let counts = normal_word_counts(sys, max_degree)?;
    Ok(counts
        .points()
        .map(|(n, h)| {
            let closed = kobayashi_closed_form(n as u64);
            let delta = BigInt::from(closed.clone()) - BigInt::from(h.clone());
            ClosedFormRow {
                degree: n as u32,
                automaton: h.clone(),
                closed_form: closed,
                flagged: !delta.is_zero(),
                delta,
            }
        })
        .collect())
}

/// Natural logarithm of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Least-squares slope and residuals of `ys` against `xs`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, Vec<f64>) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| y - (intercept + slope * x))
        .collect();
    (slope, intercept, residuals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthLabel {
    Polynomial,
    Intermediate,
    Exponential,
}

impl std::fmt::Display for GrowthLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GrowthLabel::Polynomial => "polynomial",
            GrowthLabel::Intermediate => "intermediate",
            GrowthLabel::Exponential => "exponential",
        })
    }
}

/// Thresholds of the finite-sample growth classifier.
pub mod thresholds {
    /// Minimum number of samples accepted by the classifier.
    pub const MIN_SAMPLES: usize = 16;
    /// Median consecutive ratio above which growth may be exponential.
    pub const EXPONENTIAL_RATIO: f64 = 1.05;
    /// Relative drop of the late ratio median against the early one that
    /// still counts as non-decreasing.
    pub const RATIO_DRIFT: f64 = 1e-3;
    /// Log-log slope below which growth may be polynomial.
    pub const POLYNOMIAL_MAX_DEGREE: f64 = 8.0;
    /// Largest change between consecutive local log-log slopes for
    /// polynomial growth.
    pub const SLOPE_FLATNESS: f64 = 1e-2;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthDiagnostics {
    /// Median of `γ(n+1)/γ(n)` over the top quarter of the samples.
    pub ratio_median: f64,
    /// Medians of the earlier and later halves of those ratios.
    pub ratio_early: f64,
    pub ratio_late: f64,
    /// Least-squares slope of `ln γ` against `ln n` over the top half.
    pub log_slope: f64,
    /// Largest change between consecutive local slopes over the top half.
    pub max_slope_change: f64,
    /// Least-squares slope of `ln ln γ` against `ln n` over the top half.
    pub loglog_slope: Option<f64>,
    /// Degree range of the top half.
    pub fit_range: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthClass {
    pub label: GrowthLabel,
    /// For intermediate growth: the fitted α in `exp(n^α)`.
    pub exponent: Option<f64>,
    /// For polynomial growth: the fitted degree.
    pub degree: Option<f64>,
    pub diagnostics: GrowthDiagnostics,
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Labels a cumulative growth series as polynomial, intermediate or
/// exponential.
///
/// 1. Exponential when the median of `γ(n+1)/γ(n)` over the top quarter of
///    the samples exceeds [`thresholds::EXPONENTIAL_RATIO`] and the ratios do
///    not decrease: the median of the later half of those ratios is at least
///    `(1 − RATIO_DRIFT)` times the median of the earlier half.
/// 2. Otherwise polynomial when the least-squares slope of `ln γ` against
///    `ln n` over the top half is below [`thresholds::POLYNOMIAL_MAX_DEGREE`]
///    and consecutive local slopes differ by at most
///    [`thresholds::SLOPE_FLATNESS`]. The slope is the reported degree.
/// 3. Otherwise intermediate, with α the least-squares slope of `ln ln γ`
///    against `ln n` over the top half.
pub fn classify_growth(series: &DimensionSeries) -> Result<GrowthClass> {
    use thresholds::*;
    if series.flavor != Flavor::Cumulative {
        return Err(Error::WrongFlavor {
            expected: "cumulative",
        });
    }
    if series.len() < MIN_SAMPLES {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            min: MIN_SAMPLES,
        });
    }
    let points: Vec<(usize, f64)> = series.points().map(|(n, v)| (n, ln_big(v))).collect();
    let count = points.len();

    let quarter = count / 4;
    let ratios: Vec<f64> = points[count - quarter - 1..]
        .windows(2)
        .map(|w| (w[1].1 - w[0].1).exp())
        .collect();
    if ratios.iter().any(|r| !r.is_finite()) {
        return Err(Error::InvalidArgument(
            "growth series must be positive in its top quarter".into(),
        ));
    }
    let ratio_median = median(&ratios);
    let half = ratios.len() / 2;
    let ratio_early = median(&ratios[..half]);
    let ratio_late = median(&ratios[ratios.len() - half..]);

    let top: Vec<(usize, f64)> = points[count / 2..]
        .iter()
        .copied()
        .filter(|&(n, _)| n >= 1)
        .collect();
    if top.iter().any(|(_, l)| !l.is_finite()) {
        return Err(Error::InvalidArgument(
            "growth series must be positive in its top half".into(),
        ));
    }
    let xs: Vec<f64> = top.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = top.iter().map(|&(_, l)| l).collect();
    let (log_slope, _, _) = least_squares(&xs, &ys);
    let local: Vec<f64> = top
        .windows(2)
        .zip(xs.windows(2))
        .map(|(p, x)| (p[1].1 - p[0].1) / (x[1] - x[0]))
        .collect();
    let max_slope_change = local
        .windows(2)
        .map(|s| (s[1] - s[0]).abs())
        .fold(0.0, f64::max);
    let loglog_slope = if ys.iter().all(|&l| l > 0.0) {
        let lls: Vec<f64> = ys.iter().map(|l| l.ln()).collect();
        Some(least_squares(&xs, &lls).0)
    } else {
        None
    };

    let diagnostics = GrowthDiagnostics {
        ratio_median,
        ratio_early,
        ratio_late,
        log_slope,
        max_slope_change,
        loglog_slope,
        fit_range: (top[0].0, top[top.len() - 1].0),
    };
    let (label, exponent, degree) =
        if ratio_median > EXPONENTIAL_RATIO && ratio_late >= ratio_early * (1.0 - RATIO_DRIFT) {
            (GrowthLabel::Exponential, None, None)
        } else if log_slope < POLYNOMIAL_MAX_DEGREE && max_slope_change <= SLOPE_FLATNESS {
            (GrowthLabel::Polynomial, None, Some(log_slope))
        } else {
            (GrowthLabel::Intermediate, loglog_slope, None)
        };
    Ok(GrowthClass {
        label,
        exponent,
        degree,
        diagnostics,
    })
}
