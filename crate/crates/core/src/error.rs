use thiserror::Error;

/// Errors raised by the exact evaluation layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("resolution mismatch: {left} vs {right}")]
    ResolutionMismatch { left: u32, right: u32 },

    #[error("scale mismatch: {left} vs {right}")]
    ScaleMismatch { left: i32, right: i32 },

    #[error("resolution {available} too coarse, {needed} binary digits required")]
    InsufficientResolution { needed: i64, available: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a tile: {0}")]
    NotATile(String),

    #[error("not a multitile: {0}")]
    NotAMultitile(String),

    #[error("level {level} out of range for resolution {resolution}")]
    LevelOutOfRange { level: u32, resolution: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ResolutionMismatch { .. } => "resolution_mismatch",
            Error::ScaleMismatch { .. } => "scale_mismatch",
            Error::InsufficientResolution { .. } => "insufficient_resolution",
            Error::Domain(_) => "domain",
            Error::NotATile(_) => "not_a_tile",
            Error::NotAMultitile(_) => "not_a_multitile",
            Error::LevelOutOfRange { .. } => "level_out_of_range",
            Error::Parse(_) => "parse",
            Error::Shape(_) => "shape",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
