use crate::error::Result;

use super::{Dataset, Label, Mixing2, MpaParams};

/// Observations and the alternative latent representation generated from one
/// latent sample. Index `i` in both datasets comes from latent point `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub x: Dataset,
    pub zprime: Dataset,
}

/// Runs `X = A Z` and `Z' = h(A^{-1} X)` pointwise over a latent sample.
///
/// `Z'` is computed through the observations, i.e. with the encoder
/// `f' = h ∘ A^{-1}`, rather than as `h(Z)` directly.
pub fn apply_pipeline(
    mixing: &Mixing2,
    params: &MpaParams,
    zs: &Dataset,
) -> Result<PipelineOutput> {
    zs.ensure_label(Label::LatentZ)?;
    let xs: Vec<_> = zs.points().iter().map(|&z| mixing.mix(z)).collect();
    let zps = xs
        .iter()
        .map(|&x| params.forward(mixing.unmix(x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PipelineOutput {
        x: Dataset::new(xs, Label::ObservedX, zs.seed())?,
        zprime: Dataset::new(zps, Label::LatentZprime, zs.seed())?,
    })
}
