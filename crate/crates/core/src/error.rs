use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("multiplicity {0} not in 0..=2")]
    BadMultiplicity(u8),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("vertex set intersects the exceptional set at vertex {0}")]
    ExceptionalVertex(usize),

    #[error("instance too large: n = {n} exceeds cap {cap} (pass force to override)")]
    InstanceTooLarge { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("assembly failed at stage {stage}: {reason}")]
    Assembly { stage: usize, reason: String },

    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
