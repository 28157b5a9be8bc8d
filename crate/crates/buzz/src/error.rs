use std::fmt;

use thiserror::Error;

use crate::geometry::VertexId;
use crate::schedule::Violation;

/// Pipeline stage an error originated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Generate,
    Load,
    Embed,
    Subsample,
    Build,
    Compute,
    Report,
    Write,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Generate => "generate",
            Stage::Load => "load",
            Stage::Embed => "embed",
            Stage::Subsample => "subsample",
            Stage::Build => "build",
            Stage::Compute => "compute",
            Stage::Report => "report",
            Stage::Write => "write",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum BuzzError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("series of length {len} is too short for d = {dim}, tau = {tau}: need at least {min} samples")]
    SeriesTooShort {
        len: usize,
        dim: usize,
        tau: usize,
        min: usize,
    },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("vertex id {0} appears more than once")]
    IdCollision(VertexId),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(Violation),

    #[error("filtration is not face-ordered: {0}")]
    NotFaceOrdered(String),

    #[error("integration produced a non-finite state at step {step} (t = {t})")]
    IntegrationBlowup { step: usize, t: f64 },

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<BuzzError>,
    },
}

impl BuzzError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        BuzzError::Parameter(msg.into())
    }

    /// Tags the error with the pipeline stage it came from.
    pub fn at(self, stage: Stage) -> Self {
        match self {
            e @ BuzzError::Stage { .. } => e,
            e => BuzzError::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            BuzzError::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, BuzzError>;

pub(crate) trait StageExt<T> {
    fn stage(self, stage: Stage) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: Stage) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}
