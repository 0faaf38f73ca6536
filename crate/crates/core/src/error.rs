use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage, used to label errors and training log records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Selection,
    Genetic,
    Refine,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Selection => "selection",
            Stage::Genetic => "genetic",
            Stage::Refine => "refine",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid architecture, range or stage configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller broke an operation's precondition (length mismatch etc).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("missing glyph {0}")]
    MissingGlyph(char),

    #[error("glyph {file}: expected {expected_w}x{expected_h} pixels, found {found_w}x{found_h}")]
    GlyphDimensions {
        file: String,
        expected_w: usize,
        expected_h: usize,
        found_w: usize,
        found_h: usize,
    },

    #[error("bitmap parse error in {source_name}: {reason}")]
    BitmapParse { source_name: String, reason: String },

    #[error(
        "selection starvation: {passed} of {drawn} random Rsets produced unique codes \
         (pass rate {rate:.3e}), pool target {target} not reached within sample cap"
    )]
    SelectionStarvation {
        drawn: usize,
        passed: usize,
        target: usize,
        rate: f64,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("unsupported model file version {found} (expected {expected})")]
    ModelVersion { found: u32, expected: u32 },

    #[error("model checksum failure: {0}")]
    ModelChecksum(String),

    #[error("malformed model file at line {line}: {reason}")]
    ModelMalformed { line: usize, reason: String },

    #[error("netlist parse error at line {line}: {reason}")]
    NetlistParse { line: usize, reason: String },

    #[error("netlist self-check failed: {0}")]
    SelfCheck(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_stage(self, stage: Stage) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
