//! Character bitmaps, the built-in glyph set and the deformation model.

mod bitmap;
mod deform;
mod glyphs;
mod pbm;

pub use bitmap::{bitmap_to_inputs, Bitmap};
pub use deform::{
    apply_salt_pepper, deform, deform_with_order, rotate, sample_params, sample_params_uniform,
    scale, shift, DeformOp, DeformationDistribution, DeformationParams, DEFAULT_ORDER,
};
pub use glyphs::{load_glyphs, GlyphSet, GlyphSource, ALPHABET, GLYPH_SIZE};
pub use pbm::{parse_p1, to_p1};
