use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane, used both for latent and for observed samples.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn try_new(x1: f64, x2: f64) -> Result<Self> {
        let p = Point2 { x1, x2 };
        p.ensure_finite()?;
        Ok(p)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    pub(crate) fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::InvalidPoint {
                x1: self.x1,
                x2: self.x2,
            })
        }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Polar angle in `(-pi, pi]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.x2.atan2(self.x1)
    }

    #[inline]
    pub fn coord(self, axis: usize) -> f64 {
        match axis {
            0 => self.x1,
            1 => self.x2,
            _ => panic!("axis {axis} out of range for a planar point"),
        }
    }

    #[inline]
    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Rotation about the origin by `theta` radians (multiplication by `e^{i theta}`).
    #[inline]
    pub fn rotated(self, theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        Point2::new(c * self.x1 - s * self.x2, s * self.x1 + c * self.x2)
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x1 * k, self.x2 * k)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x1, x2): (f64, f64)) -> Self {
        Point2::new(x1, x2)
    }
}

/// Axis-aligned rectangle `[lo.x1, hi.x1] x [lo.x2, hi.x2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: Point2,
    pub hi: Point2,
}

impl Bounds {
    pub const fn new(lo: Point2, hi: Point2) -> Self {
        Bounds { lo, hi }
    }

    /// The latent square `[-1, 1]^2`.
    pub const fn unit_square() -> Self {
        Bounds::new(Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0))
    }

    /// Smallest rectangle containing every point. `None` for an empty slice.
    pub fn enclosing(points: &[Point2]) -> Option<Self> {
        let first = *points.first()?;
        let mut b = Bounds::new(first, first);
        for p in &points[1..] {
            b.lo.x1 = b.lo.x1.min(p.x1);
            b.lo.x2 = b.lo.x2.min(p.x2);
            b.hi.x1 = b.hi.x1.max(p.x1);
            b.hi.x2 = b.hi.x2.max(p.x2);
        }
        Some(b)
    }

    /// True when both sides have positive finite length.
    pub fn is_proper(&self) -> bool {
        self.lo.is_finite()
            && self.hi.is_finite()
            && self.hi.x1 > self.lo.x1
            && self.hi.x2 > self.lo.x2
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.hi.coord(axis) - self.lo.coord(axis)
    }

    pub fn contains(&self, p: Point2, slack: f64) -> bool {
        p.x1 >= self.lo.x1 - slack
            && p.x1 <= self.hi.x1 + slack
            && p.x2 >= self.lo.x2 - slack
            && p.x2 <= self.hi.x2 + slack
    }

    pub fn contains_bounds(&self, inner: &Bounds, slack: f64) -> bool {
        self.contains(inner.lo, slack) && self.contains(inner.hi, slack)
    }
}

/// Which random vector a dataset holds samples of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    LatentZ,
    ObservedX,
    LatentZprime,
}

impl Label {
    /// Column names used when the dataset is written as CSV.
    pub fn columns(self) -> (&'static str, &'static str) {
        match self {
            Label::ObservedX => ("x1", "x2"),
            Label::LatentZ | Label::LatentZprime => ("z1", "z2"),
        }
    }

    pub fn file_stem(self) -> &'static str {
        match self {
            Label::LatentZ => "Z",
            Label::ObservedX => "X",
            Label::LatentZprime => "Zprime",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::LatentZ => "latent-Z",
            Label::ObservedX => "observed-X",
            Label::LatentZprime => "latent-Zprime",
        })
    }
}

/// An immutable, non-empty, ordered sample of planar points.
///
/// Index `i` of datasets produced by the same pipeline call refers to the
/// same underlying draw.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<Point2>,
    label: Label,
    seed: u64,
}

impl Dataset {
    pub fn new(points: Vec<Point2>, label: Label, seed: u64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        for p in &points {
            p.ensure_finite()?;
        }
        Ok(Dataset {
            points,
            label,
            seed,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::enclosing(&self.points).expect("dataset is non-empty")
    }

    pub fn coords(&self, axis: usize) -> Vec<f64> {
        self.points.iter().map(|p| p.coord(axis)).collect()
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    pub(crate) fn ensure_label(&self, expected: Label) -> Result<()> {
        if self.label == expected {
            Ok(())
        } else {
            Err(Error::LabelMismatch {
                expected,
                found: self.label,
            })
        }
    }
}
