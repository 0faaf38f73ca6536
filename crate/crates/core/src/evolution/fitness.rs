//! Average bit error (ABE): mean Hamming distance, in bits per character,
//! between the network output on deformed glyphs and the main codes.

use rand::Rng;

use super::sampler::Deformer;
use crate::circuit::Network;
use crate::codes::{hamming_unchecked, Codebook};
use crate::error::{Error, Result};
use crate::imaging::{bitmap_to_inputs, GlyphSet};
use crate::scalar::Scalar;

/// A fixed set of deformed inputs, drawn trial-major (all 26 characters for
/// trial 0, then trial 1, ...). Reusing one batch for two networks compares
/// them on identical samples.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    samples: Vec<(usize, Vec<bool>)>,
}

impl SampleBatch {
    pub fn draw<R: Rng + ?Sized>(
        glyphs: &GlyphSet,
        n_inputs: usize,
        deformer: &Deformer,
        trials_per_char: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if trials_per_char == 0 {
            return Err(Error::Contract("trials_per_char must be at least 1".into()));
        }
        let mut samples = Vec::with_capacity(trials_per_char * glyphs.bitmaps().len());
        for _ in 0..trials_per_char {
            for (c, bmp) in glyphs.bitmaps().iter().enumerate() {
                let deformed = deformer.apply(bmp, rng)?;
                samples.push((c, bitmap_to_inputs(&deformed, n_inputs)?));
            }
        }
        Ok(SampleBatch { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[(usize, Vec<bool>)] {
        &self.samples
    }

    /// Bit errors summed over the batch, per output position.
    pub fn output_errors<T: Scalar>(&self, net: &Network<T>, cb: &Codebook) -> Vec<usize> {
        let n_out = net.arch().n_outputs();
        let mut errs = vec![0; n_out];
        for (c, x) in &self.samples {
            let out = net.eval_outputs(x, 0..n_out);
            for (k, (o, m)) in out.iter().zip(cb.main_codes()[*c].bits()).enumerate() {
                if o != m {
                    errs[k] += 1;
                }
            }
        }
        errs
    }

    /// Like [`output_errors`](Self::output_errors) but only for output `k`,
    /// evaluating just that output's tree.
    pub fn output_error<T: Scalar>(&self, net: &Network<T>, cb: &Codebook, k: usize) -> usize {
        self.samples
            .iter()
            .filter(|(c, x)| net.eval_outputs(x, k..k + 1)[0] != cb.main_codes()[*c].bit(k))
            .count()
    }

    /// Total bit errors over the batch.
    pub fn total_errors<T: Scalar>(&self, net: &Network<T>, cb: &Codebook) -> usize {
        let n_out = net.arch().n_outputs();
        self.samples
            .iter()
            .map(|(c, x)| {
                hamming_unchecked(&net.eval_outputs(x, 0..n_out), cb.main_codes()[*c].bits())
            })
            .sum()
    }
}

/// Mean bit errors per character over 26 × `trials_per_char` deformed samples.
pub fn abe<T: Scalar, R: Rng + ?Sized>(
    net: &Network<T>,
    glyphs: &GlyphSet,
    cb: &Codebook,
    deformer: &Deformer,
    trials_per_char: usize,
    rng: &mut R,
) -> Result<f64> {
    let batch = SampleBatch::draw(
        glyphs,
        net.arch().n_inputs(),
        deformer,
        trials_per_char,
        rng,
    )?;
    Ok(batch.total_errors(net, cb) as f64 / batch.len() as f64)
}

/// Error rate of each output bit; the entries sum to the ABE of the same draw.
pub fn per_output_bit_error<T: Scalar, R: Rng + ?Sized>(
    net: &Network<T>,
    glyphs: &GlyphSet,
    cb: &Codebook,
    deformer: &Deformer,
    trials_per_char: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let batch = SampleBatch::draw(
        glyphs,
        net.arch().n_inputs(),
        deformer,
        trials_per_char,
        rng,
    )?;
    let n = batch.len() as f64;
    Ok(batch
        .output_errors(net, cb)
        .into_iter()
        .map(|e| e as f64 / n)
        .collect())
}
