use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{PlaneMap, Point2};

/// Matrices with `|det| <= SINGULAR_DET_THRESHOLD` are rejected as singular.
pub const SINGULAR_DET_THRESHOLD: f64 = 1e-9;

/// Invertible 2x2 mixing matrix `A` with its inverse cached at construction.
///
/// `mix` computes `A z`; `unmix` computes `A^{-1} x`, which is the encoder
/// `f` of the latent representation `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct Mixing2 {
    m: [[f64; 2]; 2],
    det: f64,
    inv: [[f64; 2]; 2],
}

impl Mixing2 {
    /// Builds `[[a11, a12], [a21, a22]]`.
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<Self> {
        for (name, v) in [("a11", a11), ("a12", a12), ("a21", a21), ("a22", a22)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    constraint: "finite",
                    value: v,
                });
            }
        }
        let det = a11 * a22 - a12 * a21;
        if det.abs() <= SINGULAR_DET_THRESHOLD {
            return Err(Error::SingularMixing {
                det,
                threshold: SINGULAR_DET_THRESHOLD,
            });
        }
        let inv = [[a22 / det, -a12 / det], [-a21 / det, a11 / det]];
        Ok(Mixing2 {
            m: [[a11, a12], [a21, a22]],
            det,
            inv,
        })
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0).expect("identity is invertible")
    }

    /// The horizontal shear `[[1, 0.5], [0, 1]]` used by default.
    pub fn default_shear() -> Self {
        Self::new(1.0, 0.5, 0.0, 1.0).expect("shear is invertible")
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn inverse_rows(&self) -> [[f64; 2]; 2] {
        self.inv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// `A z`.
    #[inline]
    pub fn mix(&self, z: Point2) -> Point2 {
        mat_vec(&self.m, z)
    }

    /// `A^{-1} x`.
    #[inline]
    pub fn unmix(&self, x: Point2) -> Point2 {
        mat_vec(&self.inv, x)
    }

    /// The encoder `x -> A^{-1} x` as a [`PlaneMap`].
    pub fn unmixer(&self) -> Unmix {
        Unmix(*self)
    }
}

#[inline]
fn mat_vec(m: &[[f64; 2]; 2], p: Point2) -> Point2 {
    Point2::new(
        m[0][0] * p.x1 + m[0][1] * p.x2,
        m[1][0] * p.x1 + m[1][1] * p.x2,
    )
}

impl TryFrom<[[f64; 2]; 2]> for Mixing2 {
    type Error = Error;

    fn try_from(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<Mixing2> for [[f64; 2]; 2] {
    fn from(m: Mixing2) -> Self {
        m.m
    }
}

/// The forward map `z -> A z`.
impl PlaneMap for Mixing2 {
    fn apply(&self, p: Point2) -> Result<Point2> {
        Ok(self.mix(p.ensure_finite()?))
    }
}

/// The inverse map `x -> A^{-1} x`.
#[derive(Debug, Clone, Copy)]
pub struct Unmix(pub Mixing2);

impl PlaneMap for Unmix {
    fn apply(&self, p: Point2) -> Result<Point2> {
        Ok(self.0.unmix(p.ensure_finite()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(p: Point2, x1: f64, x2: f64, tol: f64) {
        assert!(
            (p.x1 - x1).abs() <= tol && (p.x2 - x2).abs() <= tol,
            "{p:?} vs ({x1}, {x2})"
        );
    }

    #[test]
    fn mix_examples() {
        let z = Point2::new(0.3, -0.5);
        assert_eq!(Mixing2::identity().mix(z), z);
        assert_close(
            Mixing2::default_shear().mix(Point2::new(1.0, 1.0)),
            1.5,
            1.0,
            0.0,
        );
        let swap = Mixing2::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(swap.mix(Point2::new(0.2, 0.9)), Point2::new(0.9, 0.2));
    }

    #[test]
    fn unmix_examples() {
        let x = Point2::new(0.4, 0.4);
        assert_eq!(Mixing2::identity().unmix(x), x);
        let two = Mixing2::new(2.0, 0.0, 0.0, 2.0).unwrap();
        assert_close(two.unmix(Point2::new(1.0, -1.0)), 0.5, -0.5, 0.0);
    }

    #[test]
    fn cached_inverse_is_an_inverse() {
        for rows in [
            [[1.0, 0.5], [0.0, 1.0]],
            [[0.3, -2.0], [1.7, 0.25]],
            [[-4.0, 1e-3], [2.5, 7.0]],
        ] {
            let m = Mixing2::from_rows(rows).unwrap();
            let (a, b) = (m.rows(), m.inverse_rows());
            for (i, row) in a.iter().enumerate() {
                for (j, (b0, b1)) in b[0].iter().zip(&b[1]).enumerate() {
                    let prod = row[0] * b0 + row[1] * b1;
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((prod - want).abs() <= 1e-12, "{rows:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_near_singular() {
        assert!(matches!(
            Mixing2::new(1.0, 2.0, 0.5, 1.0),
            Err(Error::SingularMixing { .. })
        ));
        assert!(matches!(
            Mixing2::new(1e-5, 0.0, 0.0, 1e-5),
            Err(Error::SingularMixing { .. })
        ));
        assert!(Mixing2::new(1e-4, 0.0, 0.0, 1e-4).is_ok());
        assert!(Mixing2::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }
}
