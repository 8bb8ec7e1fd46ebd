use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Dataset, Label, Point2};

/// The generator behind every random draw in the crate. ChaCha8 output is
/// specified bit-for-bit, so a seed reproduces the same stream on any
/// platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
fn unit_coord<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    2.0 * rng.gen::<f64>() - 1.0
}

/// `n` i.i.d. draws from `Unif([-1, 1]^2)`, labelled [`Label::LatentZ`].
pub fn sample_uniform_square(n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    let mut rng = seeded_rng(seed);
    let points = (0..n)
        .map(|_| {
            let x1 = unit_coord(&mut rng);
            let x2 = unit_coord(&mut rng);
            Point2::new(x1, x2)
        })
        .collect();
    Dataset::new(points, Label::LatentZ, seed)
}

/// `n` i.i.d. draws from the uniform distribution on the closed unit disk,
/// by rejection from the square. Its support is not a product set, which
/// makes it the negative control for the independent-support check.
pub fn sample_uniform_disk(n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    let mut rng = seeded_rng(seed);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = Point2::new(unit_coord(&mut rng), unit_coord(&mut rng));
        if p.x1 * p.x1 + p.x2 * p.x2 <= 1.0 {
            points.push(p);
        }
    }
    Dataset::new(points, Label::LatentZ, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sample_in_range() {
        let d = sample_uniform_square(4, 7).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.label(), Label::LatentZ);
        assert_eq!(d.seed(), 7);
        for p in d.points() {
            assert!((-1.0..=1.0).contains(&p.x1) && (-1.0..=1.0).contains(&p.x2));
        }
    }

    #[test]
    fn zero_points_is_an_error() {
        assert!(matches!(
            sample_uniform_square(0, 1),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            sample_uniform_disk(0, 1),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn same_seed_same_bits() {
        let a = sample_uniform_square(1000, 99).unwrap();
        let b = sample_uniform_square(1000, 99).unwrap();
        let bits = |d: &Dataset| -> Vec<(u64, u64)> {
            d.points()
                .iter()
                .map(|p| (p.x1.to_bits(), p.x2.to_bits()))
                .collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_ne!(a, sample_uniform_square(1000, 100).unwrap());
    }

    #[test]
    fn disk_points_inside_unit_circle() {
        let d = sample_uniform_disk(5000, 3).unwrap();
        assert_eq!(d.len(), 5000);
        assert!(d.points().iter().all(|p| p.norm() <= 1.0 + 1e-15));
    }
}
