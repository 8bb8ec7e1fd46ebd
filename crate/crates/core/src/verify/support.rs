use serde::Serialize;

use crate::error::{Check, Error, Result};
use crate::transforms::{Bounds, Dataset, Point2};

/// Tolerance when comparing an empirical bounding box with the expected one.
pub const SUPPORT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompactSupportCheck {
    pub pass: bool,
    pub bounds: Bounds,
    pub expected: Bounds,
}

/// Passes iff the empirical bounding box of `d` lies inside `expected`.
pub fn check_compact_support(d: &Dataset, expected: &Bounds) -> CompactSupportCheck {
    let bounds = d.bounds();
    CompactSupportCheck {
        pass: expected.contains_bounds(&bounds, SUPPORT_SLACK),
        bounds,
        expected: *expected,
    }
}

/// Equal-width histogram estimate of the joint and marginal supports.
///
/// A cell (or marginal interval) counts as part of the support when it holds
/// at least `min_count` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportGrid {
    bins_per_axis: usize,
    min_count: usize,
    bounds: Bounds,
    counts: Vec<usize>,
    marginal_counts: [Vec<usize>; 2],
}

impl SupportGrid {
    pub fn build(
        points: &[Point2],
        bounds: Bounds,
        bins_per_axis: usize,
        min_count: usize,
    ) -> Result<Self> {
        if bins_per_axis < 2 {
            return Err(Error::InvalidParameter {
                name: "bins",
                constraint: "bins ≥ 2",
                value: bins_per_axis as f64,
            });
        }
        if !bounds.is_proper() {
            return Err(Error::InvalidDomain);
        }
        let k = bins_per_axis;
        let mut counts = vec![0usize; k * k];
        let mut marginal_counts = [vec![0usize; k], vec![0usize; k]];
        for &p in points {
            let i = bin_index(p.x1, bounds.lo.x1, bounds.width(0), k);
            let j = bin_index(p.x2, bounds.lo.x2, bounds.width(1), k);
            counts[i * k + j] += 1;
            marginal_counts[0][i] += 1;
            marginal_counts[1][j] += 1;
        }
        Ok(SupportGrid {
            bins_per_axis,
            min_count,
            bounds,
            counts,
            marginal_counts,
        })
    }

    pub fn bins_per_axis(&self) -> usize {
        self.bins_per_axis
    }

    pub fn min_count(&self) -> usize {
        self.min_count
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.counts[i * self.bins_per_axis + j]
    }

    pub fn occupied(&self, i: usize, j: usize) -> bool {
        self.count(i, j) >= self.min_count
    }

    pub fn marginal_occupied(&self, axis: usize, i: usize) -> bool {
        self.marginal_counts[axis][i] >= self.min_count
    }

    /// Cells in the product of the occupied marginal intervals, and how many
    /// of those are themselves occupied.
    pub fn product_coverage(&self) -> (usize, usize) {
        let k = self.bins_per_axis;
        let mut product = 0;
        let mut covered = 0;
        for i in (0..k).filter(|&i| self.marginal_occupied(0, i)) {
            for j in (0..k).filter(|&j| self.marginal_occupied(1, j)) {
                product += 1;
                if self.occupied(i, j) {
                    covered += 1;
                }
            }
        }
        (product, covered)
    }
}

/// Index of the equal-width bin holding `x`; the upper edge goes to the last bin.
pub(crate) fn bin_index(x: f64, lo: f64, width: f64, bins: usize) -> usize {
    let t = ((x - lo) / width * bins as f64).floor();
    if t <= 0.0 {
        0
    } else {
        (t as usize).min(bins - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentSupportCheck {
    pub pass: bool,
    /// Occupied fraction of the product of the occupied marginal cells.
    pub fraction: f64,
    pub bins: usize,
    pub min_count: usize,
    #[serde(skip)]
    pub grid: SupportGrid,
}

/// Tests `supp(Z1, Z2) = supp(Z1) x supp(Z2)` on a `bins x bins` grid over
/// the empirical bounding box of `d`.
///
/// Passes iff every cell in the product of occupied marginal intervals is
/// occupied. Requires `n >= 5 * bins^2 * min_count` so that a cell of a
/// product-supported distribution is expected to hold well over `min_count`
/// points.
pub fn check_independent_support(
    d: &Dataset,
    bins: usize,
    min_count: usize,
) -> Result<IndependentSupportCheck> {
    let required = bins
        .saturating_mul(bins)
        .saturating_mul(min_count)
        .saturating_mul(5);
    if d.len() < required {
        return Err(Error::Undersampled {
            check: Check::IndependentSupport,
            required,
            actual: d.len(),
        });
    }
    let grid = SupportGrid::build(d.points(), d.bounds(), bins, min_count)?;
    let (product, covered) = grid.product_coverage();
    let fraction = if product == 0 {
        0.0
    } else {
        covered as f64 / product as f64
    };
    Ok(IndependentSupportCheck {
        pass: product > 0 && covered == product,
        fraction,
        bins,
        min_count,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{sample_uniform_disk, sample_uniform_square, Label};

    #[test]
    fn uniform_square_is_compact_in_unit_box() {
        let d = sample_uniform_square(10_000, 1).unwrap();
        assert!(check_compact_support(&d, &Bounds::unit_square()).pass);
    }

    #[test]
    fn outlier_breaks_compact_support() {
        let d = Dataset::new(
            vec![Point2::new(1.5, 0.0), Point2::new(0.0, 0.0)],
            Label::LatentZ,
            0,
        )
        .unwrap();
        let c = check_compact_support(&d, &Bounds::unit_square());
        assert!(!c.pass);
        assert_eq!(c.bounds.hi.x1, 1.5);
    }

    #[test]
    fn square_has_independent_support() {
        let d = sample_uniform_square(100_000, 2).unwrap();
        let c = check_independent_support(&d, 10, 5).unwrap();
        assert!(c.pass);
        assert_eq!(c.fraction, 1.0);
    }

    #[test]
    fn disk_does_not() {
        let d = sample_uniform_disk(100_000, 2).unwrap();
        let c = check_independent_support(&d, 10, 5).unwrap();
        assert!(!c.pass);
        // The four corner cells lie entirely outside the disk.
        for (i, j) in [(0, 0), (0, 9), (9, 0), (9, 9)] {
            assert_eq!(c.grid.count(i, j), 0);
        }
        assert!(c.fraction < 1.0);
    }

    #[test]
    fn occupied_cells_have_occupied_marginals() {
        let d = sample_uniform_disk(20_000, 5).unwrap();
        let g = SupportGrid::build(d.points(), d.bounds(), 8, 5).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if g.occupied(i, j) {
                    assert!(g.marginal_occupied(0, i) && g.marginal_occupied(1, j));
                }
            }
        }
    }

    #[test]
    fn undersampled_reports_required_n() {
        let d = sample_uniform_square(2499, 1).unwrap();
        match check_independent_support(&d, 10, 5) {
            Err(Error::Undersampled {
                required, actual, ..
            }) => {
                assert_eq!(required, 2500);
                assert_eq!(actual, 2499);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bin_index_edges() {
        assert_eq!(bin_index(-1.0, -1.0, 2.0, 10), 0);
        assert_eq!(bin_index(1.0, -1.0, 2.0, 10), 9);
        assert_eq!(bin_index(-0.79, -1.0, 2.0, 10), 1);
        assert_eq!(bin_index(0.0, -1.0, 2.0, 10), 5);
    }
}
