use rand::Rng;
use serde::Serialize;

use crate::error::{Check, Error, Result};
use crate::transforms::{seeded_rng, Bounds, PlaneMap, Point2};

/// Distance between the two points of every probed pair.
pub const CONTINUITY_PAIR_SEPARATION: f64 = 1e-7;

pub const MIN_CONTINUITY_PAIRS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuityCheck {
    pub pass: bool,
    /// Largest observed `|T(u + d) - T(u)| / |d|`.
    pub max_ratio: f64,
    pub l_max: f64,
    pub n_pairs: usize,
}

/// Scans for gross discontinuities of `map` over `domain`.
///
/// Each probe draws a random segment with both ends in `domain` and bisects
/// it, keeping the half across which `map` changes most, until it is no
/// longer than [`CONTINUITY_PAIR_SEPARATION`]. The reported ratio is taken on
/// the pair `(u, u + d)` with `|d|` equal to that separation and covering the
/// final sub-segment. A jump of size `J` inside a segment survives the
/// bisection and produces a ratio near `J / 1e-7`, while a map with local
/// Lipschitz constant `L` never exceeds `L`.
///
/// Passes iff the maximum ratio is at most `l_max`.
pub fn check_continuity<M: PlaneMap + ?Sized>(
    map: &M,
    domain: &Bounds,
    n_pairs: usize,
    seed: u64,
    l_max: f64,
) -> Result<ContinuityCheck> {
    if !domain.is_proper() {
        return Err(Error::InvalidDomain);
    }
    if n_pairs < MIN_CONTINUITY_PAIRS {
        return Err(Error::Undersampled {
            check: Check::Continuity,
            required: MIN_CONTINUITY_PAIRS,
            actual: n_pairs,
        });
    }
    let mut rng = seeded_rng(seed);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        Point2::new(
            domain.lo.x1 + domain.width(0) * rng.gen::<f64>(),
            domain.lo.x2 + domain.width(1) * rng.gen::<f64>(),
        )
    };

    let mut max_ratio = 0.0_f64;
    for _ in 0..n_pairs {
        let mut u = draw(&mut rng);
        let mut v = draw(&mut rng);
        if u.dist(v) <= CONTINUITY_PAIR_SEPARATION {
            // Degenerate draw; probe along x1 instead.
            v = u + Point2::new(CONTINUITY_PAIR_SEPARATION, 0.0);
        }
        let mut tu = map.apply(u)?;
        let mut tv = map.apply(v)?;
        while u.dist(v) > CONTINUITY_PAIR_SEPARATION {
            let m = (u + v) * 0.5;
            let tm = map.apply(m)?;
            if tm.dist(tu) >= tv.dist(tm) {
                v = m;
                tv = tm;
            } else {
                u = m;
                tu = tm;
            }
        }
        let dir = v - u;
        let len = dir.norm();
        let end = if len > 0.0 {
            u + dir * (CONTINUITY_PAIR_SEPARATION / len)
        } else {
            u + Point2::new(CONTINUITY_PAIR_SEPARATION, 0.0)
        };
        let ratio = map.apply(end)?.dist(tu) / end.dist(u);
        max_ratio = max_ratio.max(ratio);
    }
    Ok(ContinuityCheck {
        pass: max_ratio <= l_max,
        max_ratio,
        l_max,
        n_pairs,
    })
}
