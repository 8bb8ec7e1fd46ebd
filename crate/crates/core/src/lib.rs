//! Numerical construction and audit of a measure-preserving automorphism
//! counterexample to identifiability under the independent support condition.
//!
//! The generative pipeline is
//!
//! ```text
//! Z ~ Unif([-1, 1]^2),   X = A Z,   Z' = h(A^{-1} X)
//! ```
//!
//! where `h` rotates every point with `|z| <= c` about the origin by the
//! radius-dependent angle `a (|z| - c)` and leaves the rest of the plane fixed.
//! `Z` and `Z'` are both continuous invertible functions of `X`, both are
//! uniform on the square (so both have compact, rectangular support), and yet
//! `Z'` is not a permutation of coordinate-wise bijections of `Z`.
//!
//! The crate is split into three layers:
//!
//! * [`transforms`]: points, datasets, the mixing matrix, the automorphism and
//!   the generative pipeline;
//! * [`verify`]: sample-level audits of every premise of the identifiability
//!   claim plus a test of its conclusion, collected by [`verify::run_audit`];
//! * [`runner`]: configuration, report and point-cloud persistence, figure
//!   emission and the subcommands behind the `mpa-audit` binary.
//!
//! ```
//! use mpa_audit::transforms::{sample_uniform_square, Mixing2, MpaParams};
//! use mpa_audit::verify::{run_audit, AuditConfig};
//!
//! let mixing = Mixing2::new(1.0, 0.5, 0.0, 1.0).unwrap();
//! let params = MpaParams::new(3.6, 0.9).unwrap();
//! let report = run_audit(&mixing, &params, 20_000, 42, &AuditConfig::default()).unwrap();
//! assert!(report.premises_pass());
//! assert!(report.counterexample_certified());
//! ```

pub mod error;
pub mod runner;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
