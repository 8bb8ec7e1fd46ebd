//! Generative pipeline: uniform latents, invertible linear mixing and the
//! radius-dependent rotation automorphism with its analytic inverse.

mod jacobian;
mod map;
mod mixing;
mod mpa;
mod pipeline;
mod point;
mod sampling;

pub use jacobian::jacobian_det_fd;
pub use map::{Compose, FnMap, Identity, PlaneMap};
pub use mixing::{Mixing2, Unmix, SINGULAR_DET_THRESHOLD};
pub use mpa::{MpaInverse, MpaParams};
pub use pipeline::{apply_pipeline, PipelineOutput};
pub use point::{Bounds, Dataset, Label, Point2};
pub use sampling::{sample_uniform_disk, sample_uniform_square, seeded_rng};
