use serde::Serialize;

use crate::error::{Error, Result};
use crate::transforms::{Dataset, PlaneMap};

/// Largest tolerated round-trip reconstruction error.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaCheck {
    pub pass: bool,
    /// `max_i |fwd(Z_i) - Z'_i|`
    pub max_forward_error: f64,
    /// `max_i |inv(Z'_i) - Z_i|`
    pub max_inverse_error: f64,
    pub tolerance: f64,
}

impl SigmaCheck {
    pub fn max_error(&self) -> f64 {
        self.max_forward_error.max(self.max_inverse_error)
    }
}

/// Certifies that each representation is an explicit function of the other
/// on the sample: `fwd` must carry `Z` onto `Z'` and `inv` must carry `Z'`
/// back onto `Z`, pointwise. With continuous `fwd` and `inv` this is the
/// route to `σ(Z) = σ(Z')`.
pub fn check_sigma_algebra_proxy<F, G>(
    z: &Dataset,
    zp: &Dataset,
    fwd: &F,
    inv: &G,
) -> Result<SigmaCheck>
where
    F: PlaneMap + ?Sized,
    G: PlaneMap + ?Sized,
{
    if z.len() != zp.len() {
        return Err(Error::Pairing {
            left: z.len(),
            right: zp.len(),
        });
    }
    let mut max_forward_error = 0.0_f64;
    let mut max_inverse_error = 0.0_f64;
    for (&a, &b) in z.points().iter().zip(zp.points()) {
        max_forward_error = max_forward_error.max(fwd.apply(a)?.dist(b));
        max_inverse_error = max_inverse_error.max(inv.apply(b)?.dist(a));
    }
    Ok(SigmaCheck {
        pass: max_forward_error < ROUND_TRIP_TOLERANCE && max_inverse_error < ROUND_TRIP_TOLERANCE,
        max_forward_error,
        max_inverse_error,
        tolerance: ROUND_TRIP_TOLERANCE,
    })
}
