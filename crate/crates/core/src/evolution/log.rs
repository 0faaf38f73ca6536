use std::fmt::Write as _;

use crate::error::Stage;

/// One stage event: `stage iteration abe min_spacing seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRecord {
    pub stage: Stage,
    pub iteration: usize,
    pub abe: f64,
    pub min_spacing: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainingLog {
    pub records: Vec<LogRecord>,
}

impl TrainingLog {
    pub fn push(
        &mut self,
        stage: Stage,
        iteration: usize,
        abe: f64,
        min_spacing: usize,
        seed: u64,
    ) {
        self.records.push(LogRecord {
            stage,
            iteration,
            abe,
            min_spacing,
            seed,
        });
    }

    /// Whitespace-separated columns with a `#` header line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# stage iteration abe min_spacing seed\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{} {} {:.6} {} {}",
                r.stage, r.iteration, r.abe, r.min_spacing, r.seed
            );
        }
        out
    }
}
