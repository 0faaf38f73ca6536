//! Salt-and-pepper noise, rotation, scaling and shifts on binary bitmaps.
//!
//! Geometric operations inverse-map each output pixel to the nearest source
//! pixel about the image center `((W−1)/2, (H−1)/2)`; sources off the canvas
//! read as background.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::bitmap::Bitmap;
use crate::error::{Error, Result};

/// One concrete deformation. Rotation is clockwise-positive degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    pub noise_p: f64,
    pub rotation_deg: f64,
    pub scale: f64,
    pub shift_x: i32,
    pub shift_y: i32,
}

impl DeformationParams {
    pub const IDENTITY: DeformationParams = DeformationParams {
        noise_p: 0.0,
        rotation_deg: 0.0,
        scale: 1.0,
        shift_x: 0,
        shift_y: 0,
    };

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.noise_p) {
            return Err(Error::Contract(format!(
                "noise probability {} outside [0, 1]",
                self.noise_p
            )));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Contract(format!(
                "scale factor {} must be positive",
                self.scale
            )));
        }
        if !self.rotation_deg.is_finite() {
            return Err(Error::Contract("rotation angle must be finite".into()));
        }
        Ok(())
    }
}

/// Standard deviations of the centered normals the deformations are drawn
/// from. Every draw is truncated to ±3σ.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDistribution {
    /// Salt-and-pepper probability.
    pub noise: f64,
    pub rotation_deg: f64,
    /// Fractional scale change; the factor is `1 + draw`.
    pub scale: f64,
    pub shift_px: f64,
}

impl DeformationDistribution {
    pub const IDENTITY: DeformationDistribution = DeformationDistribution {
        noise: 0.0,
        rotation_deg: 0.0,
        scale: 0.0,
        shift_px: 0.0,
    };

    /// Training deformations: 4 % noise, 5°, 5 %, 5 px.
    pub const TRAINING: DeformationDistribution = DeformationDistribution {
        noise: 0.04,
        rotation_deg: 5.0,
        scale: 0.05,
        shift_px: 5.0,
    };

    /// Test deformations: 12 % noise, 15°, 15 %, 15 px.
    pub const TEST: DeformationDistribution = DeformationDistribution {
        noise: 0.12,
        rotation_deg: 15.0,
        scale: 0.15,
        shift_px: 15.0,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("noise", self.noise),
            ("rotation_deg", self.rotation_deg),
            ("scale", self.scale),
            ("shift_px", self.shift_px),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("sigma {name} must be >= 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeformOp {
    Scale,
    Rotate,
    Shift,
    Noise,
}

pub const DEFAULT_ORDER: [DeformOp; 4] = [
    DeformOp::Scale,
    DeformOp::Rotate,
    DeformOp::Shift,
    DeformOp::Noise,
];

fn truncated_normal<R: Rng + ?Sized>(sigma: f64, rng: &mut R) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    loop {
        let z: f64 = StandardNormal.sample(rng);
        if z.abs() <= 3.0 {
            return z * sigma;
        }
    }
}

fn round_shift(draw: f64, bound: f64) -> i32 {
    let limit = bound.floor();
    draw.round().clamp(-limit, limit) as i32
}

/// Draws every field from `N(0, σ²)` truncated to `[−3σ, 3σ]` by rejection.
pub fn sample_params<R: Rng + ?Sized>(
    dist: &DeformationDistribution,
    rng: &mut R,
) -> DeformationParams {
    let noise = truncated_normal(dist.noise, rng);
    let rot = truncated_normal(dist.rotation_deg, rng);
    let scale = truncated_normal(dist.scale, rng);
    let sx = truncated_normal(dist.shift_px, rng);
    let sy = truncated_normal(dist.shift_px, rng);
    DeformationParams {
        noise_p: noise.abs().clamp(0.0, 1.0),
        rotation_deg: rot,
        scale: (1.0 + scale).max(f64::MIN_POSITIVE),
        shift_x: round_shift(sx, 3.0 * dist.shift_px),
        shift_y: round_shift(sy, 3.0 * dist.shift_px),
    }
}

/// Alternative reading of the σ values as hard ranges: every field uniform
/// on `[−σ, σ]`, noise probability uniform on `[0, σ_noise]`.
pub fn sample_params_uniform<R: Rng + ?Sized>(
    dist: &DeformationDistribution,
    rng: &mut R,
) -> DeformationParams {
    let mut sym = |s: f64| {
        if s == 0.0 {
            0.0
        } else {
            rng.random_range(-s..=s)
        }
    };
    let noise = sym(dist.noise);
    let rot = sym(dist.rotation_deg);
    let scale = sym(dist.scale);
    let sx = sym(dist.shift_px);
    let sy = sym(dist.shift_px);
    DeformationParams {
        noise_p: noise.abs().clamp(0.0, 1.0),
        rotation_deg: rot,
        scale: (1.0 + scale).max(f64::MIN_POSITIVE),
        shift_x: round_shift(sx, dist.shift_px),
        shift_y: round_shift(sy, dist.shift_px),
    }
}

/// Each pixel, with probability `p`, is replaced by a fair coin.
pub fn apply_salt_pepper<R: Rng + ?Sized>(bmp: &Bitmap, p: f64, rng: &mut R) -> Result<Bitmap> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Contract(format!(
            "noise probability {p} outside [0, 1]"
        )));
    }
    let mut out = bmp.clone();
    if p == 0.0 {
        return Ok(out);
    }
    for px in out.pixels_mut() {
        if rng.random::<f64>() < p {
            *px = rng.random::<bool>();
        }
    }
    Ok(out)
}

fn center(bmp: &Bitmap) -> (f64, f64) {
    (
        (bmp.width() as f64 - 1.0) / 2.0,
        (bmp.height() as f64 - 1.0) / 2.0,
    )
}

fn inverse_map(bmp: &Bitmap, mut source: impl FnMut(f64, f64) -> (f64, f64)) -> Bitmap {
    let (cx, cy) = center(bmp);
    let mut out = Bitmap::new(bmp.width(), bmp.height());
    for y in 0..bmp.height() {
        for x in 0..bmp.width() {
            let (sx, sy) = source(x as f64 - cx, y as f64 - cy);
            let ink = bmp.get_or_background((cx + sx).round() as i64, (cy + sy).round() as i64);
            if ink {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// `(sin, cos)` with exact values at multiples of 90°.
fn sin_cos_deg(degrees: f64) -> (f64, f64) {
    let quarter = degrees / 90.0;
    if quarter.fract() == 0.0 {
        match (quarter as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        }
    } else {
        degrees.to_radians().sin_cos()
    }
}

/// Clockwise rotation (y axis points down) by `degrees` about the center.
pub fn rotate(bmp: &Bitmap, degrees: f64) -> Bitmap {
    if degrees == 0.0 || !degrees.is_finite() {
        return bmp.clone();
    }
    let (s, c) = sin_cos_deg(degrees);
    inverse_map(bmp, |dx, dy| (dx * c + dy * s, -dx * s + dy * c))
}

/// Scaling about the center on the same canvas.
pub fn scale(bmp: &Bitmap, factor: f64) -> Result<Bitmap> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::Contract(format!(
            "scale factor {factor} must be positive"
        )));
    }
    if factor == 1.0 {
        return Ok(bmp.clone());
    }
    Ok(inverse_map(bmp, |dx, dy| (dx / factor, dy / factor)))
}

/// Output pixel `(x, y)` takes input pixel `(x − dx, y − dy)`.
pub fn shift(bmp: &Bitmap, dx: i32, dy: i32) -> Bitmap {
    let mut out = Bitmap::new(bmp.width(), bmp.height());
    for y in 0..bmp.height() {
        for x in 0..bmp.width() {
            if bmp.get_or_background(x as i64 - dx as i64, y as i64 - dy as i64) {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// Applies `params` in the default order: scale, rotate, shift, noise.
pub fn deform<R: Rng + ?Sized>(
    bmp: &Bitmap,
    params: &DeformationParams,
    rng: &mut R,
) -> Result<Bitmap> {
    deform_with_order(bmp, params, &DEFAULT_ORDER, rng)
}

pub fn deform_with_order<R: Rng + ?Sized>(
    bmp: &Bitmap,
    params: &DeformationParams,
    order: &[DeformOp],
    rng: &mut R,
) -> Result<Bitmap> {
    params.validate()?;
    let mut out = bmp.clone();
    for op in order {
        out = match op {
            DeformOp::Scale => scale(&out, params.scale)?,
            DeformOp::Rotate => rotate(&out, params.rotation_deg),
            DeformOp::Shift if params.shift_x == 0 && params.shift_y == 0 => out,
            DeformOp::Shift => shift(&out, params.shift_x, params.shift_y),
            DeformOp::Noise => apply_salt_pepper(&out, params.noise_p, rng)?,
        };
    }
    Ok(out)
}
