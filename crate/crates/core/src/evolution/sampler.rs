use rand::Rng;

use crate::error::Result;
use crate::imaging::{
    apply_salt_pepper, deform_with_order, sample_params, sample_params_uniform, Bitmap, DeformOp,
    DeformationDistribution, DeformationParams, DEFAULT_ORDER,
};

/// How σ values turn into concrete parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Centered normal truncated to ±3σ.
    #[default]
    TruncatedNormal,
    /// Uniform on ±σ.
    UniformRange,
}

/// Whether every deformation is applied to each sample or only one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Composition {
    #[default]
    Composed,
    /// One deformation kind, picked uniformly per sample.
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomDeformer {
    pub dist: DeformationDistribution,
    pub sampling: SamplingMode,
    pub composition: Composition,
    pub order: Vec<DeformOp>,
    /// Cap on |shift| in pixels, if any.
    pub max_shift: Option<i32>,
}

impl RandomDeformer {
    pub fn new(dist: DeformationDistribution) -> Self {
        RandomDeformer {
            dist,
            sampling: SamplingMode::TruncatedNormal,
            composition: Composition::Composed,
            order: DEFAULT_ORDER.to_vec(),
            max_shift: None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DeformationParams {
        let mut p = match self.sampling {
            SamplingMode::TruncatedNormal => sample_params(&self.dist, rng),
            SamplingMode::UniformRange => sample_params_uniform(&self.dist, rng),
        };
        if let Some(m) = self.max_shift {
            p.shift_x = p.shift_x.clamp(-m, m);
            p.shift_y = p.shift_y.clamp(-m, m);
        }
        if self.composition == Composition::Single {
            let keep = self.order[rng.random_range(0..self.order.len())];
            let id = DeformationParams::IDENTITY;
            p = DeformationParams {
                noise_p: if keep == DeformOp::Noise {
                    p.noise_p
                } else {
                    id.noise_p
                },
                rotation_deg: if keep == DeformOp::Rotate {
                    p.rotation_deg
                } else {
                    id.rotation_deg
                },
                scale: if keep == DeformOp::Scale {
                    p.scale
                } else {
                    id.scale
                },
                shift_x: if keep == DeformOp::Shift {
                    p.shift_x
                } else {
                    0
                },
                shift_y: if keep == DeformOp::Shift {
                    p.shift_y
                } else {
                    0
                },
            };
        }
        p
    }
}

/// Source of deformed glyph samples for fitness and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Deformer {
    Identity,
    SaltPepper(f64),
    Random(RandomDeformer),
}

impl Deformer {
    pub fn from_distribution(dist: DeformationDistribution) -> Self {
        Deformer::Random(RandomDeformer::new(dist))
    }

    pub fn apply<R: Rng + ?Sized>(&self, bmp: &Bitmap, rng: &mut R) -> Result<Bitmap> {
        match self {
            Deformer::Identity => Ok(bmp.clone()),
            Deformer::SaltPepper(p) => apply_salt_pepper(bmp, *p, rng),
            Deformer::Random(d) => {
                let params = d.sample(rng);
                deform_with_order(bmp, &params, &d.order, rng)
            }
        }
    }
}
