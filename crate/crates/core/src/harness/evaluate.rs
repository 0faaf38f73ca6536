use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::circuit::Network;
use crate::codes::{hamming_unchecked, Codebook, DECODE_SPACING};
use crate::error::{Error, Result};
use crate::evolution::{
    stream, Composition, Deformer, RandomDeformer, SamplingMode, StreamTag, TrainedModel,
};
use crate::imaging::{
    bitmap_to_inputs, DeformOp, DeformationDistribution, GlyphSet, ALPHABET, DEFAULT_ORDER,
    GLYPH_SIZE,
};
use crate::scalar::Scalar;

/// Test-set generation: `n_sets` deformed copies of all 26 glyphs.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TestProtocol {
    pub dist: DeformationDistribution,
    pub n_sets: usize,
    pub mode: SamplingMode,
    pub order: Vec<DeformOp>,
}

impl Default for TestProtocol {
    fn default() -> Self {
        TestProtocol {
            dist: DeformationDistribution::TEST,
            n_sets: 10_000,
            mode: SamplingMode::TruncatedNormal,
            order: DEFAULT_ORDER.to_vec(),
        }
    }
}

impl TestProtocol {
    pub fn identity(n_sets: usize) -> Self {
        TestProtocol {
            dist: DeformationDistribution::IDENTITY,
            n_sets,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.dist.validate()?;
        if self.n_sets == 0 {
            return Err(Error::Config("test: n_sets must be >= 1".into()));
        }
        if self.order.is_empty() {
            return Err(Error::Config("test: deformation order is empty".into()));
        }
        Ok(())
    }

    /// Shifts are clamped to the canvas.
    pub fn deformer(&self) -> Deformer {
        if self.dist.is_identity() {
            return Deformer::Identity;
        }
        Deformer::Random(RandomDeformer {
            dist: self.dist,
            sampling: self.mode,
            composition: Composition::Composed,
            order: self.order.clone(),
            max_shift: Some(GLYPH_SIZE as i32 - 1),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Correct decodes over all samples; rejects count as wrong.
    pub accuracy: f64,
    pub abe: f64,
    pub max_bit_error: usize,
    pub rejects: usize,
    pub samples: usize,
    /// `confusion[true][decoded]`, column 26 holds rejects.
    pub confusion: Vec<Vec<usize>>,
    pub decode_radius: usize,
    pub runtime: Duration,
    pub seed: u64,
}

impl EvalReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "samples        {}", self.samples);
        let _ = writeln!(s, "accuracy       {:.6}", self.accuracy);
        let _ = writeln!(s, "abe            {:.6}", self.abe);
        let _ = writeln!(s, "max_bit_error  {}", self.max_bit_error);
        let _ = writeln!(s, "rejects        {}", self.rejects);
        let _ = writeln!(s, "decode_radius  {}", self.decode_radius);
        let _ = writeln!(s, "seed           {}", self.seed);
        let _ = writeln!(s, "runtime_s      {:.3}", self.runtime.as_secs_f64());
        let _ = writeln!(s, "per character (correct / rejected / total):");
        for (c, row) in ALPHABET.iter().zip(&self.confusion) {
            let total: usize = row.iter().sum();
            let idx = ALPHABET.iter().position(|a| a == c).unwrap();
            let _ = writeln!(s, "  {c}  {} / {} / {}", row[idx], row[26], total);
        }
        s
    }

    pub fn summary_csv(&self) -> String {
        format!(
            "samples,accuracy,abe,max_bit_error,rejects,decode_radius,seed,runtime_s\n{},{},{},{},{},{},{},{:.3}\n",
            self.samples,
            self.accuracy,
            self.abe,
            self.max_bit_error,
            self.rejects,
            self.decode_radius,
            self.seed,
            self.runtime.as_secs_f64()
        )
    }

    pub fn confusion_csv(&self) -> String {
        let mut s = String::from("true,decoded,count\n");
        for (t, row) in self.confusion.iter().enumerate() {
            for (d, &n) in row.iter().enumerate() {
                if n > 0 {
                    let dec = if d == 26 {
                        "reject".to_string()
                    } else {
                        ALPHABET[d].to_string()
                    };
                    let _ = writeln!(s, "{},{dec},{n}", ALPHABET[t]);
                }
            }
        }
        s
    }
}

struct SetStats {
    correct: usize,
    bit_errors: usize,
    max_bit_error: usize,
    rejects: usize,
    confusion: Vec<[usize; 27]>,
}

/// Decodes at radius 1 when the codebook spacing allows it, otherwise by
/// exact match.
pub fn evaluate_network<T: Scalar>(
    net: &Network<T>,
    codebook: &Codebook,
    glyphs: &GlyphSet,
    protocol: &TestProtocol,
    seed: u64,
) -> Result<EvalReport> {
    protocol.validate()?;
    let start = Instant::now();
    let spacing = codebook.min_pairwise_distance()?;
    let decoder = codebook.decoder(if spacing >= DECODE_SPACING { 1 } else { 0 })?;
    let deformer = protocol.deformer();
    let n_in = net.arch().n_inputs();
    let n_out = net.arch().n_outputs();
    let per_set = (0..protocol.n_sets)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream(seed, StreamTag::Evaluate, s as u64);
            let mut st = SetStats {
                correct: 0,
                bit_errors: 0,
                max_bit_error: 0,
                rejects: 0,
                confusion: vec![[0; 27]; ALPHABET.len()],
            };
            for (c, bmp) in glyphs.bitmaps().iter().enumerate() {
                let x = bitmap_to_inputs(&deformer.apply(bmp, &mut rng)?, n_in)?;
                let out = net.eval_outputs(&x, 0..n_out);
                let e = hamming_unchecked(&out, codebook.main_codes()[c].bits());
                st.bit_errors += e;
                st.max_bit_error = st.max_bit_error.max(e);
                match decoder.decode_index(&out) {
                    Some(d) => {
                        st.confusion[c][d] += 1;
                        if d == c {
                            st.correct += 1;
                        }
                    }
                    None => {
                        st.confusion[c][26] += 1;
                        st.rejects += 1;
                    }
                }
            }
            Ok(st)
        })
        .collect::<Result<Vec<_>>>()?;

    let samples = protocol.n_sets * glyphs.bitmaps().len();
    let mut confusion = vec![vec![0; 27]; ALPHABET.len()];
    let (mut correct, mut bits, mut max_e, mut rejects) = (0, 0, 0, 0);
    for st in per_set {
        correct += st.correct;
        bits += st.bit_errors;
        max_e = max_e.max(st.max_bit_error);
        rejects += st.rejects;
        for (row, add) in confusion.iter_mut().zip(&st.confusion) {
            for (a, b) in row.iter_mut().zip(add) {
                *a += b;
            }
        }
    }
    Ok(EvalReport {
        accuracy: correct as f64 / samples as f64,
        abe: bits as f64 / samples as f64,
        max_bit_error: max_e,
        rejects,
        samples,
        confusion,
        decode_radius: decoder.radius(),
        runtime: start.elapsed(),
        seed,
    })
}

pub fn evaluate<T: Scalar>(
    model: &TrainedModel<T>,
    glyphs: &GlyphSet,
    protocol: &TestProtocol,
    seed: u64,
) -> Result<EvalReport> {
    evaluate_network(&model.network()?, &model.codebook, glyphs, protocol, seed)
}
