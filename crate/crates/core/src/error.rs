use std::fmt;

use thiserror::Error;

use crate::transforms::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Identity of an audit stage, attached to errors raised inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Pipeline,
    Continuity,
    SigmaAlgebra,
    CompactSupport,
    IndependentSupport,
    Uniformity,
    CoordinateRelation,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Check::Pipeline => "pipeline",
            Check::Continuity => "continuity",
            Check::SigmaAlgebra => "sigma-algebra",
            Check::CompactSupport => "compact-support",
            Check::IndependentSupport => "independent-support",
            Check::Uniformity => "uniformity",
            Check::CoordinateRelation => "coordinate-relation",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset must contain at least one point")]
    EmptyDataset,

    #[error("point ({x1}, {x2}) has a non-finite coordinate")]
    InvalidPoint { x1: f64, x2: f64 },

    #[error("mixing matrix is singular or near-singular (|det| = {det:e} <= {threshold:e})")]
    SingularMixing { det: f64, threshold: f64 },

    #[error("parameter `{name}` = {value} violates constraint {constraint}")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("expected a dataset labelled {expected}, got {found}")]
    LabelMismatch { expected: Label, found: Label },

    #[error(
        "evaluation point lies {distance:e} from the Jacobian discontinuity circle, \
         closer than the required {required:e}"
    )]
    IllConditionedPoint { distance: f64, required: f64 },

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("domain box is degenerate or non-finite")]
    InvalidDomain,

    #[error("paired datasets differ in length ({left} vs {right})")]
    Pairing { left: usize, right: usize },

    #[error("{check} needs at least {required} samples, got {actual}")]
    Undersampled {
        check: Check,
        required: usize,
        actual: usize,
    },

    #[error("{count} point(s) fall outside the histogram domain")]
    OutOfDomain { count: usize },

    #[error("{check} check failed: {source}")]
    InCheck {
        check: Check,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_check(self, check: Check) -> Self {
        match self {
            already @ Error::InCheck { .. } => already,
            other => Error::InCheck {
                check,
                source: Box::new(other),
            },
        }
    }
}
