use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{PlaneMap, Point2};

/// Parameters of the measure-preserving automorphism
///
/// ```text
/// h(z) = z                          if |z| > c
/// h(z) = z * exp(i a (|z| - c))     if |z| <= c
/// ```
///
/// with `z = z1 + i z2`. Inside the disk of radius `c` every circle is rotated
/// rigidly by an angle that grows linearly from `-a c` at the origin to `0` on
/// the boundary, so `h` is continuous, radius-preserving and has unit
/// Jacobian determinant away from `|z| = c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpaParams {
    a: f64,
    c: f64,
}

impl MpaParams {
    /// `a` is the rotation rate in radians per unit radius, `c` the cutoff
    /// radius. Requires `a != 0` and `0 < c < 1`.
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !a.is_finite() || a == 0.0 {
            return Err(Error::InvalidParameter {
                name: "a",
                constraint: "a ≠ 0",
                value: a,
            });
        }
        Self::with_cutoff(a, c)
    }

    /// Fixture with `a = 0`, i.e. `h` is the identity. It satisfies every
    /// premise but cannot be a counterexample, which makes it the control for
    /// the soundness side of the conclusion test.
    pub fn degenerate(c: f64) -> Result<Self> {
        Self::with_cutoff(0.0, c)
    }

    fn with_cutoff(a: f64, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParameter {
                name: "c",
                constraint: "c ∈ (0,1)",
                value: c,
            });
        }
        Ok(MpaParams { a, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == 0.0
    }

    /// Rotation angle applied at radius `r`; zero outside the cutoff.
    #[inline]
    pub fn angle_at(&self, r: f64) -> f64 {
        if r > self.c {
            0.0
        } else {
            self.a * (r - self.c)
        }
    }

    /// `h(z)`.
    pub fn forward(&self, z: Point2) -> Result<Point2> {
        Ok(rotate_inside(self.a, self.c, z.ensure_finite()?))
    }

    /// `h^{-1}(z')`: the same map with `a` replaced by `-a`.
    pub fn inverse(&self, zp: Point2) -> Result<Point2> {
        Ok(rotate_inside(-self.a, self.c, zp.ensure_finite()?))
    }

    pub fn inverse_map(&self) -> MpaInverse {
        MpaInverse(*self)
    }
}

#[inline]
fn rotate_inside(a: f64, c: f64, z: Point2) -> Point2 {
    let r = z.norm();
    if r > c {
        z
    } else {
        z.rotated(a * (r - c))
    }
}

impl PlaneMap for MpaParams {
    fn apply(&self, p: Point2) -> Result<Point2> {
        self.forward(p)
    }

    fn jacobian_break_radius(&self) -> Option<f64> {
        Some(self.c)
    }
}

/// `h^{-1}` as a [`PlaneMap`].
#[derive(Debug, Clone, Copy)]
pub struct MpaInverse(pub MpaParams);

impl PlaneMap for MpaInverse {
    fn apply(&self, p: Point2) -> Result<Point2> {
        self.0.inverse(p)
    }

    fn jacobian_break_radius(&self) -> Option<f64> {
        Some(self.0.c)
    }
}
