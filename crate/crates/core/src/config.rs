//! Run configuration, read from TOML.
//!
//! ```toml
//! seed = 1
//!
//! [arch]                 # required, every key
//! n_inputs = 1296
//! fan_ins = [6, 6, 3]
//! logic_high = 1.0
//! threshold = 0.5
//!
//! [resistance]           # optional, ohms
//! min = 1.0
//! max = 1e4
//!
//! [glyphs]               # optional; builtin set when `dir` is absent
//! dir = "glyphs"
//!
//! [selection]  [genetic]  [refine]  [test]   # optional overrides
//! ```
//!
//! Everything is validated at load time, so a `RunConfig` in hand is usable.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::circuit::ArchitectureSpec;
use crate::error::{Error, Result};
use crate::evolution::{GeneticConfig, RefineConfig, SelectionConfig, TrainConfig, ValueRange};
use crate::harness::TestProtocol;
use crate::imaging::GlyphSource;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchSection {
    pub n_inputs: usize,
    pub fan_ins: Vec<usize>,
    pub logic_high: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResistanceSection {
    pub min: f64,
    pub max: f64,
}

impl Default for ResistanceSection {
    fn default() -> Self {
        ResistanceSection { min: 1.0, max: 1e4 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlyphSection {
    /// Directory with `A.pbm` .. `Z.pbm`, relative to the config file.
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    pub arch: ArchSection,
    #[serde(default)]
    pub resistance: ResistanceSection,
    #[serde(default)]
    pub glyphs: GlyphSection,
    #[serde(default)]
    pub selection: SelectionConfig,
    #[serde(default)]
    pub genetic: GeneticConfig,
    #[serde(default)]
    pub refine: RefineConfig,
    #[serde(default)]
    pub test: TestProtocol,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads and validates; a relative glyph directory is resolved against
    /// the config file's own directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), strip_config(e))))?;
        if let Some(dir) = &cfg.glyphs.dir {
            if dir.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                cfg.glyphs.dir = Some(base.join(dir));
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config always serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.arch::<f64>()?;
        self.train_config::<f64>()?;
        self.test.validate()
    }

    pub fn arch<T: Scalar>(&self) -> Result<ArchitectureSpec<T>> {
        ArchitectureSpec::with_levels(
            self.arch.n_inputs,
            self.arch.fan_ins.clone(),
            T::of(self.arch.logic_high),
            T::of(self.arch.threshold),
        )
    }

    pub fn range<T: Scalar>(&self) -> Result<ValueRange<T>> {
        ValueRange::new(T::of(self.resistance.min), T::of(self.resistance.max))
    }

    pub fn train_config<T: Scalar>(&self) -> Result<TrainConfig<T>> {
        let cfg = TrainConfig {
            range: self.range()?,
            selection: self.selection.clone(),
            genetic: self.genetic.clone(),
            refine: self.refine.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn glyph_source(&self) -> GlyphSource {
        match &self.glyphs.dir {
            Some(d) => GlyphSource::Dir(d.clone()),
            None => GlyphSource::Builtin,
        }
    }
}

fn strip_config(e: Error) -> String {
    match e {
        Error::Config(s) => s,
        other => other.to_string(),
    }
}
