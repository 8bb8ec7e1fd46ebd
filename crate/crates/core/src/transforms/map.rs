use crate::error::Result;

use super::Point2;

/// A map of the plane into itself.
///
/// Implementations are pure, so a single map can be evaluated pointwise from
/// several threads at once.
pub trait PlaneMap: Sync {
    fn apply(&self, p: Point2) -> Result<Point2>;

    /// Radius of a circle about the origin across which the map's Jacobian
    /// jumps, if there is one.
    fn jacobian_break_radius(&self) -> Option<f64> {
        None
    }
}

impl<M: PlaneMap + ?Sized> PlaneMap for &M {
    fn apply(&self, p: Point2) -> Result<Point2> {
        (**self).apply(p)
    }

    fn jacobian_break_radius(&self) -> Option<f64> {
        (**self).jacobian_break_radius()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl PlaneMap for Identity {
    fn apply(&self, p: Point2) -> Result<Point2> {
        p.ensure_finite()
    }
}

/// Wraps an infallible closure as a [`PlaneMap`].
#[derive(Clone, Copy)]
pub struct FnMap<F>(pub F);

impl<F> PlaneMap for FnMap<F>
where
    F: Fn(Point2) -> Point2 + Sync,
{
    fn apply(&self, p: Point2) -> Result<Point2> {
        (self.0)(p).ensure_finite()
    }
}

/// `outer ∘ inner`.
#[derive(Debug, Clone, Copy)]
pub struct Compose<Outer, Inner> {
    pub outer: Outer,
    pub inner: Inner,
}

impl<Outer, Inner> Compose<Outer, Inner> {
    pub fn new(outer: Outer, inner: Inner) -> Self {
        Compose { outer, inner }
    }
}

impl<Outer: PlaneMap, Inner: PlaneMap> PlaneMap for Compose<Outer, Inner> {
    fn apply(&self, p: Point2) -> Result<Point2> {
        self.outer.apply(self.inner.apply(p)?)
    }
}
