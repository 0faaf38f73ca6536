//! Versioned plain-text model file.
//!
//! ```text
//! memnet-model
//! version 1
//! scalar f64
//! n_inputs 1296
//! fan_ins 6,6,3
//! logic_high <v>
//! threshold <v>
//! range <min> <max>
//! seed <u64>
//! iterations <n>
//! final_abe <v>
//! converged <bool>
//! codebook
//! A 010110100011
//! ...                      (26 lines)
//! rset <len>
//! <resistance>             (one per line, canonical gene order)
//! checksum sha256:<hex of every preceding byte>
//! ```
//!
//! Reals are written with enough significant digits to round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::circuit::{ArchitectureSpec, Resistance, Rset};
use crate::codes::Codebook;
use crate::error::{Error, Result};
use crate::evolution::{TrainedModel, TrainingMeta, ValueRange};
use crate::imaging::ALPHABET;
use crate::scalar::Scalar;

pub const MODEL_VERSION: u32 = 1;
const MAGIC: &str = "memnet-model";

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

pub fn model_to_text<T: Scalar>(model: &TrainedModel<T>) -> String {
    let a = &model.arch;
    let m = &model.meta;
    let fans: Vec<String> = a.fan_ins().iter().map(usize::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "version {MODEL_VERSION}");
    let _ = writeln!(s, "scalar {}", T::NAME);
    let _ = writeln!(s, "n_inputs {}", a.n_inputs());
    let _ = writeln!(s, "fan_ins {}", fans.join(","));
    let _ = writeln!(s, "logic_high {}", a.logic_high().to_exact_string());
    let _ = writeln!(s, "threshold {}", a.threshold().to_exact_string());
    let _ = writeln!(
        s,
        "range {} {}",
        m.range.min.to_exact_string(),
        m.range.max.to_exact_string()
    );
    let _ = writeln!(s, "seed {}", m.seed);
    let _ = writeln!(s, "iterations {}", m.iterations);
    let _ = writeln!(s, "final_abe {}", m.final_abe.to_exact_string());
    let _ = writeln!(s, "converged {}", m.converged);
    s.push_str("codebook\n");
    s.push_str(&model.codebook.to_text());
    let _ = writeln!(s, "rset {}", model.rset.len());
    for r in model.rset.values() {
        s.push_str(&r.value().to_exact_string());
        s.push('\n');
    }
    let sum = sha256_hex(s.as_bytes());
    let _ = writeln!(s, "checksum sha256:{sum}");
    s
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::ModelMalformed {
            line: self.pos,
            reason: reason.into(),
        }
    }

    fn next(&mut self) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.malformed("unexpected end of file"))?;
        self.pos += 1;
        Ok(line)
    }

    fn field(&mut self, key: &str) -> Result<&'a str> {
        let line = self.next()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(self.malformed(format!("expected `{key} ...`, found {line:?}"))),
        }
    }

    fn parse<V: FromStr>(&mut self, key: &str) -> Result<V> {
        let raw = self.field(key)?;
        raw.parse()
            .map_err(|_| self.malformed(format!("bad value for {key}: {raw:?}")))
    }
}

pub fn model_from_text<T: Scalar>(text: &str) -> Result<TrainedModel<T>> {
    let all: Vec<&str> = text.lines().collect();
    if all.first() != Some(&MAGIC) {
        return Err(Error::ModelMalformed {
            line: 1,
            reason: format!("missing `{MAGIC}` header"),
        });
    }
    let version = all
        .get(1)
        .and_then(|l| l.strip_prefix("version "))
        .and_then(|v| v.parse::<u32>().ok())
        .ok_or_else(|| Error::ModelMalformed {
            line: 2,
            reason: "missing version line".into(),
        })?;
    if version != MODEL_VERSION {
        return Err(Error::ModelVersion {
            found: version,
            expected: MODEL_VERSION,
        });
    }
    let last = all.last().copied().unwrap_or("");
    let Some(expected) = last.strip_prefix("checksum sha256:") else {
        return Err(Error::ModelChecksum(
            "no checksum line at end of file (truncated?)".into(),
        ));
    };
    let body_len = text
        .rfind("checksum sha256:")
        .expect("last line holds the checksum");
    let actual = sha256_hex(&text.as_bytes()[..body_len]);
    if actual != expected.trim() {
        return Err(Error::ModelChecksum(format!(
            "stored {expected}, computed {actual}"
        )));
    }

    let mut p = Lines {
        lines: all[..all.len() - 1].to_vec(),
        pos: 2,
    };
    let scalar = p.field("scalar")?;
    if scalar != T::NAME {
        return Err(p.malformed(format!("file stores {scalar}, reader expects {}", T::NAME)));
    }
    let n_inputs: usize = p.parse("n_inputs")?;
    let fans_raw = p.field("fan_ins")?;
    let fan_ins = fans_raw
        .split(',')
        .map(|f| f.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| p.malformed(format!("bad fan_ins {fans_raw:?}")))?;
    let logic_high: T = p.parse("logic_high")?;
    let threshold: T = p.parse("threshold")?;
    let range_raw = p.field("range")?;
    let (lo, hi) = range_raw
        .split_once(' ')
        .and_then(|(a, b)| Some((a.parse::<T>().ok()?, b.parse::<T>().ok()?)))
        .ok_or_else(|| p.malformed(format!("bad range {range_raw:?}")))?;
    let seed: u64 = p.parse("seed")?;
    let iterations: usize = p.parse("iterations")?;
    let final_abe: f64 = p.parse("final_abe")?;
    let converged: bool = p.parse("converged")?;
    if p.next()? != "codebook" {
        return Err(p.malformed("expected `codebook`"));
    }
    let mut cb_text = String::new();
    for _ in 0..ALPHABET.len() {
        cb_text.push_str(p.next()?);
        cb_text.push('\n');
    }
    let codebook = Codebook::from_text(&cb_text).map_err(|e| p.malformed(e.to_string()))?;
    let len: usize = p.parse("rset")?;
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        let raw = p.next()?;
        let v: T = raw
            .parse()
            .map_err(|_| p.malformed(format!("bad resistance {raw:?}")))?;
        let r = if v.is_infinite() && v > T::zero() {
            Resistance::open()
        } else {
            Resistance::new(v).map_err(|e| p.malformed(e.to_string()))?
        };
        values.push(r);
    }
    if p.pos != p.lines.len() {
        return Err(p.malformed("trailing content before checksum"));
    }
    let arch = ArchitectureSpec::with_levels(n_inputs, fan_ins, logic_high, threshold)?;
    if len != arch.rset_len() {
        return Err(Error::ModelMalformed {
            line: p.pos,
            reason: format!(
                "rset has {len} values, architecture needs {}",
                arch.rset_len()
            ),
        });
    }
    if codebook.code_len() != arch.n_outputs() {
        return Err(Error::ModelMalformed {
            line: p.pos,
            reason: "codebook length does not match architecture outputs".into(),
        });
    }
    Ok(TrainedModel {
        arch,
        rset: Rset::new(values),
        codebook,
        meta: TrainingMeta {
            seed,
            iterations,
            final_abe,
            converged,
            range: ValueRange::new(lo, hi)?,
        },
    })
}

pub fn save_model<T: Scalar>(model: &TrainedModel<T>, path: &Path) -> Result<()> {
    std::fs::write(path, model_to_text(model)).map_err(|e| Error::io(path, e))
}

pub fn load_model<T: Scalar>(path: &Path) -> Result<TrainedModel<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    model_from_text(&text)
}
