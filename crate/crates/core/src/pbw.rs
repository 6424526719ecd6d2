//! Dimension counts of universal enveloping algebras from the graded
//! dimensions of a Lie algebra: `Σ b_n tⁿ = ∏_{n≥1} (1 − tⁿ)^{−a_n}`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::{cumulative, least_squares, ln_big, DimensionSeries, Flavor};
use crate::serde_display;

/// A power series in `t` with nonnegative integer coefficients, truncated at
/// a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    #[serde(serialize_with = "serde_display::ser_vec")]
    coeffs: Vec<BigUint>,
}

impl PowerSeries {
    /// The constant series 1 truncated at `max_degree`.
    pub fn one(max_degree: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); max_degree + 1];
        coeffs[0] = BigUint::one();
        PowerSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&BigUint> {
        self.coeffs.get(n)
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Multiplies in place by `(1 − t^k)^{−m} = Σ_j C(m+j−1, j) t^{kj}`.
    pub fn mul_inverse_power(&mut self, k: usize, m: &BigUint) {
        if m.is_zero() || k == 0 || k > self.max_degree() {
            return;
        }
        let n = self.max_degree();
        let mut binom = vec![BigUint::one()];
        for j in 1..=n / k {
            let next = &binom[j - 1] * (m + BigUint::from(j - 1)) / BigUint::from(j);
            binom.push(next);
        }
        let old = std::mem::take(&mut self.coeffs);
        self.coeffs = (0..=n)
            .map(|d| {
                (0..=d / k)
                    .map(|j| &binom[j] * &old[d - k * j])
                    .sum()
            })
            .collect();
    }

    pub fn into_series(self) -> DimensionSeries {
        DimensionSeries::graded(self.coeffs)
    }
}

fn check_lie_dims(a: &DimensionSeries, max_degree: usize) -> Result<()> {
    if a.flavor() != Flavor::Graded {
        return Err(Error::WrongFlavor { expected: "graded" });
    }
    if a.start() != 0 || a.len() < max_degree + 1 {
        return Err(Error::SeriesTooShort {
            len: a.len(),
            min: max_degree + 1,
        });
    }
    if !a.values()[0].is_zero() {
        return Err(Error::InvalidArgument("a Lie algebra has no degree-0 part".into()));
    }
    Ok(())
}

/// Expands `∏_{n=1}^{N} (1 − tⁿ)^{−a_n}` up to degree `N`.
pub fn enveloping_series(a: &DimensionSeries, max_degree: usize) -> Result<PowerSeries> {
    enveloping_series_in_order(a, max_degree, 1..=max_degree)
}

/// As [`enveloping_series`], multiplying the factors in the given order of
/// degrees. Degrees outside `1..=max_degree` are skipped.
pub fn enveloping_series_in_order<I>(a: &DimensionSeries, max_degree: usize, order: I) -> Result<PowerSeries>
where
    I: IntoIterator<Item = usize>,
{
    check_lie_dims(a, max_degree)?;
    let mut series = PowerSeries::one(max_degree);
    for k in order {
        if (1..=max_degree).contains(&k) {
            series.mul_inverse_power(k, &a.values()[k]);
        }
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwRow {
    pub degree: usize,
    #[serde(serialize_with = "serde_display::ser")]
    pub predicted: BigUint,
    #[serde(serialize_with = "serde_display::ser")]
    pub observed: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub max_degree: usize,
    pub rows: Vec<PbwRow>,
    /// Degrees at which the two sides differ.
    pub mismatches: Vec<usize>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the product expansion of `lie_dims` with independently computed
/// enveloping-algebra dimensions, degree by degree up to `max_degree`.
pub fn pbw_cross_check(
    lie_dims: &DimensionSeries,
    env_counts: &DimensionSeries,
    max_degree: usize,
) -> Result<PbwReport> {
    let predicted = enveloping_series(lie_dims, max_degree)?;
    if env_counts.flavor() != Flavor::Graded {
        return Err(Error::WrongFlavor { expected: "graded" });
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for d in 0..=max_degree {
        let observed = env_counts.get(d).cloned().ok_or(Error::SeriesTooShort {
            len: env_counts.len(),
            min: max_degree + 1,
        })?;
        let p = predicted.coeffs[d].clone();
        if p != observed {
            mismatches.push(d);
        }
        rows.push(PbwRow {
            degree: d,
            predicted: p,
            observed,
        });
    }
    Ok(PbwReport {
        max_degree,
        rows,
        mismatches,
    })
}

pub const EXPONENT_FIT_MIN_DEGREE: usize = 100;
pub const EXPONENT_FIT_MAX_POWER: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    /// `a_n = (n+1)^power`.
    pub power: u32,
    pub max_degree: usize,
    /// `(power+1)/(power+2)`.
    pub target: f64,
    /// Slope of `ln ln B(n)` against `ln n` over the top half, `B` cumulative.
    pub alpha: f64,
    pub residuals: Vec<f64>,
    /// The same fit applied to the graded `b_n`, for diagnostics.
    pub graded_alpha: f64,
}

/// Fits the growth exponent of the enveloping algebra of a Lie algebra with
/// `a_n = (n+1)^power` in every degree `n ≥ 1`.
pub fn exponent_fit(power: u32, max_degree: usize) -> Result<ExponentFit> {
    if power > EXPONENT_FIT_MAX_POWER {
        return Err(Error::Unsupported(format!(
            "power {power}, at most {EXPONENT_FIT_MAX_POWER} supported"
        )));
    }
    if max_degree < EXPONENT_FIT_MIN_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "fit degree {max_degree} too small, at least {EXPONENT_FIT_MIN_DEGREE} needed"
        )));
    }
    let a = DimensionSeries::graded(
        (0..=max_degree)
            .map(|n| match n {
                0 => BigUint::zero(),
                n => BigUint::from(n + 1).pow(power),
            })
            .collect(),
    );
    let b = enveloping_series(&a, max_degree)?.into_series();
    let cum = cumulative(&b)?;
    let fit = |s: &DimensionSeries| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = s
            .points()
            .filter(|&(n, _)| n >= max_degree / 2)
            .map(|(n, v)| ((n as f64).ln(), ln_big(v).ln()))
            .unzip();
        least_squares(&xs, &ys)
    };
    let (alpha, _, residuals) = fit(&cum);
    let (graded_alpha, _, _) = fit(&b);
    Ok(ExponentFit {
        power,
        max_degree,
        target: (power + 1) as f64 / (power + 2) as f64,
        alpha,
        residuals,
        graded_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::partition_p;
    use crate::lie::{build_l, graded_dims};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Euler transform: `n·b_n = Σ_{k=1}^{n} c_k b_{n−k}` with
    /// `c_k = Σ_{d|k} d·a_d`.
    fn euler_transform(a: &[u64], n: usize) -> Vec<BigInt> {
        let c: Vec<BigInt> = (0..=n)
            .map(|k| {
                (1..=k)
                    .filter(|d| k % d == 0)
                    .map(|d| BigInt::from(d as u64 * a.get(d).copied().unwrap_or(0)))
                    .sum()
            })
            .collect();
        let mut b = vec![BigInt::one()];
        for m in 1..=n {
            let s: BigInt = (1..=m).map(|k| &c[k] * &b[m - k]).sum();
            b.push(s / BigInt::from(m));
        }
        b
    }

    fn series(a: &[u64]) -> DimensionSeries {
        DimensionSeries::graded_u64(a)
    }

    #[test]
    fn trivial_products() {
        let mut a = vec![0u64; 11];
        a[1] = 1;
        assert_eq!(enveloping_series(&series(&a), 10).unwrap().to_u64().unwrap(), vec![1; 11]);
        let zero = enveloping_series(&series(&[0; 11]), 10).unwrap().to_u64().unwrap();
        assert_eq!(zero[0], 1);
        assert!(zero[1..].iter().all(|&b| b == 0));
    }

    #[test]
    fn lie_dims_give_the_enveloping_counts() {
        let g = build_l(8).unwrap();
        let b = enveloping_series(&graded_dims(&g, 8), 8).unwrap();
        assert_eq!(b.to_u64().unwrap(), vec![1, 2, 4, 8, 14, 24, 40, 64, 100]);
    }

    #[test]
    fn all_ones_gives_partitions() {
        let mut a = vec![1u64; 41];
        a[0] = 0;
        let b = enveloping_series(&series(&a), 40).unwrap();
        for n in 0..=40 {
            assert_eq!(b.coeffs()[n], partition_p(n as i64).unwrap());
        }
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            enveloping_series(&series(&[1, 1, 1]), 2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            enveloping_series(&series(&[0, 1]), 2),
            Err(Error::SeriesTooShort { .. })
        ));
        assert!(matches!(exponent_fit(3, 200), Err(Error::Unsupported(_))));
        assert!(matches!(exponent_fit(1, 99), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cross_check_controls() {
        let g = build_l(8).unwrap();
        let dims = graded_dims(&g, 8);
        let env = series(&[1, 2, 4, 8, 14, 24, 40, 64, 100]);
        assert!(pbw_cross_check(&dims, &env, 8).unwrap().passed());

        let mut perturbed = dims.to_u64().unwrap();
        perturbed[2] = 2;
        let r = pbw_cross_check(&series(&perturbed), &env, 8).unwrap();
        assert_eq!(r.mismatches.first(), Some(&2));

        let mut line = vec![0u64; 9];
        line[1] = 1;
        assert!(pbw_cross_check(&series(&line), &series(&[1; 9]), 8).unwrap().passed());
    }

    #[test]
    fn exponent_fits_land_near_their_targets() {
        let bands = [(0, 0.40, 0.60), (1, 0.56, 0.76), (2, 0.65, 0.85)];
        for (d, lo, hi) in bands {
            let f = exponent_fit(d, 200).unwrap();
            assert!((lo..=hi).contains(&f.alpha), "d={d}: {}", f.alpha);
            assert_eq!(f.residuals.len(), 101);
        }
    }

    proptest! {
        #[test]
        fn product_matches_euler_transform(a in proptest::collection::vec(0u64..5, 1..=24)) {
            let mut a = a;
            a[0] = 0;
            let n = a.len() - 1;
            let b = enveloping_series(&series(&a), n).unwrap();
            let oracle = euler_transform(&a, n);
            for (x, y) in b.coeffs().iter().zip(&oracle) {
                prop_assert_eq!(&BigInt::from(x.clone()), y);
            }
        }

        #[test]
        fn factor_order_is_irrelevant((a, order) in proptest::collection::vec(0u64..4, 2..=16)
            .prop_flat_map(|a| {
                let order: Vec<usize> = (1..a.len()).collect();
                (Just(a), Just(order).prop_shuffle())
            })) {
            let mut a = a;
            a[0] = 0;
            let n = a.len() - 1;
            let forward = enveloping_series(&series(&a), n).unwrap();
            let shuffled = enveloping_series_in_order(&series(&a), n, order).unwrap();
            prop_assert_eq!(forward, shuffled);
        }
    }
}
