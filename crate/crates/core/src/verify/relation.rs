use serde::Serialize;

use crate::error::{Check, Error, Result};
use crate::transforms::Dataset;

/// Pairing of latent coordinates with alternative-representation coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assignment {
    /// `Z_1 <-> Z'_1`, `Z_2 <-> Z'_2`.
    Identity,
    /// `Z_1 <-> Z'_2`, `Z_2 <-> Z'_1`.
    Swap,
}

impl Assignment {
    pub const ALL: [Assignment; 2] = [Assignment::Identity, Assignment::Swap];

    /// Coordinate of `Z'` paired with latent coordinate `j`.
    pub fn partner(self, j: usize) -> usize {
        match self {
            Assignment::Identity => j,
            Assignment::Swap => 1 - j,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NotMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    CoordinateWise,
    NotCoordinateWise,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateScores {
    pub latent_axis: usize,
    pub partner_axis: usize,
    /// How far `Z_j` is from being a function of `Z'_{π(j)}`.
    pub latent_given_partner: f64,
    /// How far `Z'_{π(j)}` is from being a function of `Z_j`.
    pub partner_given_latent: f64,
    /// Shape of the binned conditional mean of `Z_j` along `Z'_{π(j)}`.
    pub monotonicity: Monotonicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssignmentScores {
    pub assignment: Assignment,
    pub coordinates: [CoordinateScores; 2],
}

impl AssignmentScores {
    pub fn max_score(&self) -> f64 {
        self.coordinates
            .iter()
            .flat_map(|c| [c.latent_given_partner, c.partner_given_latent])
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordRelationVerdict {
    pub best_assignment: Assignment,
    pub per_assignment: [AssignmentScores; 2],
    pub bins: usize,
    pub threshold: f64,
    pub verdict: Relation,
}

impl CoordRelationVerdict {
    pub fn best(&self) -> &AssignmentScores {
        self.per_assignment
            .iter()
            .find(|s| s.assignment == self.best_assignment)
            .expect("best assignment is scored")
    }

    /// `min over π of max score`, the quantity compared with the threshold.
    pub fn min_max_score(&self) -> f64 {
        self.best().max_score()
    }
}

/// Fraction of the variance of `target` left unexplained by `key`.
///
/// The sample is sorted by `key` and cut into `bins` groups of equal count.
/// Within each group `target` is regressed linearly on `key`; the score is
/// the pooled residual sum of squares divided by the total sum of squares of
/// `target`. It is 0 when `target` is a smooth function of `key` (up to
/// within-bin curvature, which shrinks like `bins^-4`) and near 1 when `key`
/// carries no information about `target`.
pub fn functional_score(key: &[f64], target: &[f64], bins: usize) -> f64 {
    functional_profile(key, target, bins).0
}

/// Score plus the within-bin means of `target`, in increasing `key` order.
fn functional_profile(key: &[f64], target: &[f64], bins: usize) -> (f64, Vec<f64>) {
    debug_assert_eq!(key.len(), target.len());
    let n = key.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| key[i].total_cmp(&key[j]));

    let mean = target.iter().sum::<f64>() / n as f64;
    let total_ss: f64 = target.iter().map(|t| (t - mean) * (t - mean)).sum();

    let mut residual_ss = 0.0;
    let mut bin_means = Vec::with_capacity(bins);
    for b in 0..bins {
        let idx = &order[b * n / bins..(b + 1) * n / bins];
        if idx.is_empty() {
            continue;
        }
        let m = idx.len() as f64;
        let kx = idx.iter().map(|&i| key[i]).sum::<f64>() / m;
        let ty = idx.iter().map(|&i| target[i]).sum::<f64>() / m;
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for &i in idx {
            let dx = key[i] - kx;
            let dy = target[i] - ty;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        residual_ss += if sxx > 0.0 {
            syy - sxy * sxy / sxx
        } else {
            syy
        };
        bin_means.push(ty);
    }

    let score = if total_ss > 0.0 {
        (residual_ss.max(0.0) / total_ss).min(1.0)
    } else {
        0.0
    };
    (score, bin_means)
}

fn monotonicity(means: &[f64]) -> Monotonicity {
    let steps = || means.windows(2).map(|w| w[1] - w[0]);
    if steps().all(|d| d >= 0.0) {
        Monotonicity::Increasing
    } else if steps().all(|d| d <= 0.0) {
        Monotonicity::Decreasing
    } else {
        Monotonicity::NotMonotone
    }
}

/// Tests whether `Zp` is a permutation of coordinate-wise bijections of `Z`.
///
/// For both assignments and both coordinates the [`functional_score`] is
/// computed in both directions, since a bijection must be a function either
/// way. The verdict is coordinate-wise iff some assignment has all four
/// scores at or below `threshold`. Requires `n >= 50 * bins`.
pub fn check_coordinatewise_relation(
    z: &Dataset,
    zp: &Dataset,
    bins: usize,
    threshold: f64,
) -> Result<CoordRelationVerdict> {
    if z.len() != zp.len() {
        return Err(Error::Pairing {
            left: z.len(),
            right: zp.len(),
        });
    }
    if bins < 2 {
        return Err(Error::InvalidParameter {
            name: "bins",
            constraint: "bins ≥ 2",
            value: bins as f64,
        });
    }
    let required = 50 * bins;
    if z.len() < required {
        return Err(Error::Undersampled {
            check: Check::CoordinateRelation,
            required,
            actual: z.len(),
        });
    }

    let latent = [z.coords(0), z.coords(1)];
    let other = [zp.coords(0), zp.coords(1)];
    let per_assignment = Assignment::ALL.map(|assignment| {
        let coordinates = [0, 1].map(|j| {
            let k = assignment.partner(j);
            let (latent_given_partner, means) = functional_profile(&other[k], &latent[j], bins);
            CoordinateScores {
                latent_axis: j,
                partner_axis: k,
                latent_given_partner,
                partner_given_latent: functional_score(&latent[j], &other[k], bins),
                monotonicity: monotonicity(&means),
            }
        });
        AssignmentScores {
            assignment,
            coordinates,
        }
    });
    let best = per_assignment
        .iter()
        .min_by(|a, b| a.max_score().total_cmp(&b.max_score()))
        .expect("two assignments");
    let verdict = if best.max_score() <= threshold {
        Relation::CoordinateWise
    } else {
        Relation::NotCoordinateWise
    };
    Ok(CoordRelationVerdict {
        best_assignment: best.assignment,
        per_assignment,
        bins,
        threshold,
        verdict,
    })
}
