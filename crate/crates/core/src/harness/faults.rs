//! Memory-element faults: open (zero conductance), short (`R_min`) or a
//! random new value.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use super::evaluate::{evaluate_network, TestProtocol};
use crate::circuit::{Network, Resistance, Rset};
use crate::error::{Error, Result};
use crate::evolution::{stream, StreamTag, TrainedModel, ValueRange};
use crate::imaging::GlyphSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaultKind {
    Open,
    Short,
    RandomRevalue,
}

impl FaultKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FaultKind::Open => "open",
            FaultKind::Short => "short",
            FaultKind::RandomRevalue => "random-revalue",
        }
    }
}

impl std::fmt::Display for FaultKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FaultKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(FaultKind::Open),
            "short" => Ok(FaultKind::Short),
            "random-revalue" => Ok(FaultKind::RandomRevalue),
            other => Err(Error::Config(format!("unknown fault kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultModel {
    pub kind: FaultKind,
    pub rate: f64,
}

impl FaultModel {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rate) {
            return Err(Error::Config(format!(
                "fault rate {} outside [0, 1]",
                self.rate
            )));
        }
        Ok(())
    }
}

/// Each resistor independently faulted with probability `rate`.
pub fn inject_faults<T: Scalar, R: Rng + ?Sized>(
    rset: &Rset<T>,
    fm: &FaultModel,
    range: &ValueRange<T>,
    rng: &mut R,
) -> Result<Rset<T>> {
    fm.validate()?;
    let mut out = rset.clone();
    if fm.rate == 0.0 {
        return Ok(out);
    }
    for g in 0..out.len() {
        if rng.random_bool(fm.rate) {
            let v = match fm.kind {
                FaultKind::Open => Resistance::open(),
                FaultKind::Short => Resistance::new(range.min)?,
                FaultKind::RandomRevalue => range.sample(rng),
            };
            out.set(g, v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rate: f64,
    pub mean_acc: f64,
    pub std_acc: f64,
    pub reps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaultSweep {
    pub kind: FaultKind,
    pub rows: Vec<SweepRow>,
}

impl FaultSweep {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("rate,mean_acc,std_acc,reps\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.rate, r.mean_acc, r.std_acc, r.reps);
        }
        s
    }
}

/// Accuracy mean and sample standard deviation per fault rate over `reps`
/// independent fault draws. Every evaluation uses the same deformation seed,
/// so the rate-0 row equals a plain evaluation with `seed`.
pub fn fault_sweep<T: Scalar>(
    model: &TrainedModel<T>,
    glyphs: &GlyphSet,
    protocol: &TestProtocol,
    kind: FaultKind,
    rates: &[f64],
    reps: usize,
    seed: u64,
) -> Result<FaultSweep> {
    if rates.is_empty() || reps == 0 {
        return Err(Error::Config(
            "fault sweep needs at least one rate and one rep".into(),
        ));
    }
    if rates.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Config(format!(
            "fault rates must be sorted ascending: {rates:?}"
        )));
    }
    let mut rows = Vec::with_capacity(rates.len());
    for (ri, &rate) in rates.iter().enumerate() {
        let fm = FaultModel { kind, rate };
        fm.validate()?;
        let counts = (0..reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = stream(seed, StreamTag::Faults, (ri * reps + r) as u64);
                let rset = inject_faults(&model.rset, &fm, &model.meta.range, &mut rng)?;
                let net = Network::new(model.arch.clone(), rset)?;
                let report = evaluate_network(&net, &model.codebook, glyphs, protocol, seed)?;
                let correct: usize = (0..report.confusion.len())
                    .map(|i| report.confusion[i][i])
                    .sum();
                Ok((correct, report.samples))
            })
            .collect::<Result<Vec<(usize, usize)>>>()?;
        // Mean from integer counts, so identical reps reproduce the plain
        // evaluation's accuracy bit for bit.
        let (correct, samples) = counts
            .iter()
            .fold((0, 0), |(c, n), &(ci, ni)| (c + ci, n + ni));
        let mean = correct as f64 / samples as f64;
        let accs: Vec<f64> = counts.iter().map(|&(c, n)| c as f64 / n as f64).collect();
        let std = if reps > 1 {
            (accs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt()
        } else {
            0.0
        };
        rows.push(SweepRow {
            rate,
            mean_acc: mean,
            std_acc: std,
            reps,
        });
    }
    Ok(FaultSweep { kind, rows })
}
