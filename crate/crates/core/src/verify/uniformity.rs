use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Check, Error, Result};
use crate::transforms::{Bounds, Dataset};

use super::support::bin_index;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformityCheck {
    /// Pearson χ² statistic.
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub bins: usize,
}

impl UniformityCheck {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }
}

/// Pearson χ² goodness of fit of the `bins x bins` histogram of `d` over
/// `domain` against equal cell probabilities `1 / bins^2`.
///
/// Needs `n >= 5 * bins^2`. Points outside `domain` are an error.
pub fn check_uniformity(d: &Dataset, bins: usize, domain: &Bounds) -> Result<UniformityCheck> {
    if bins < 2 {
        return Err(Error::InvalidParameter {
            name: "bins",
            constraint: "bins ≥ 2",
            value: bins as f64,
        });
    }
    if !domain.is_proper() {
        return Err(Error::InvalidDomain);
    }
    let cells = bins * bins;
    let required = 5 * cells;
    if d.len() < required {
        return Err(Error::Undersampled {
            check: Check::Uniformity,
            required,
            actual: d.len(),
        });
    }
    let outside = d
        .points()
        .iter()
        .filter(|&&p| !domain.contains(p, 1e-12))
        .count();
    if outside > 0 {
        return Err(Error::OutOfDomain { count: outside });
    }

    let mut counts = vec![0u64; cells];
    for p in d.points() {
        let i = bin_index(p.x1, domain.lo.x1, domain.width(0), bins);
        let j = bin_index(p.x2, domain.lo.x2, domain.width(1), bins);
        counts[i * bins + j] += 1;
    }
    let expected = d.len() as f64 / cells as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&o| {
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let dof = cells - 1;
    let chi2 = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(UniformityCheck {
        statistic,
        degrees_of_freedom: dof,
        p_value: chi2.sf(statistic),
        bins,
    })
}
