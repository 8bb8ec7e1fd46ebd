use crate::error::{Error, Result};

use super::{PlaneMap, Point2};

/// Central-difference estimate of `|det J|` of `map` at `z` with step `step`.
///
/// Maps that report a [`PlaneMap::jacobian_break_radius`] are only probed at
/// points more than `10 * step` away from that circle, so the stencil never
/// straddles the discontinuity.
pub fn jacobian_det_fd<M: PlaneMap + ?Sized>(map: &M, z: Point2, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidStep(step));
    }
    z.ensure_finite()?;
    if let Some(radius) = map.jacobian_break_radius() {
        let distance = (z.norm() - radius).abs();
        let required = 10.0 * step;
        if distance <= required {
            return Err(Error::IllConditionedPoint { distance, required });
        }
    }
    let e1 = Point2::new(step, 0.0);
    let e2 = Point2::new(0.0, step);
    let col1 = (map.apply(z + e1)? - map.apply(z - e1)?) * (0.5 / step);
    let col2 = (map.apply(z + e2)? - map.apply(z - e2)?) * (0.5 / step);
    Ok((col1.x1 * col2.x2 - col2.x1 * col1.x2).abs())
}
