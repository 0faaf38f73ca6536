use std::path::{Path, PathBuf};

use super::bitmap::Bitmap;
use super::pbm::{parse_p1, to_p1};
use crate::error::{Error, Result};

pub const ALPHABET: [char; 26] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S',
    'T', 'U', 'V', 'W', 'X', 'Y', 'Z',
];

pub const GLYPH_SIZE: usize = 36;

// Bold sans-serif capitals, letter body fitted to 28 px and centered.
const BUILTIN: [&str; 26] = [
    include_str!("../../glyphs/A.pbm"),
    include_str!("../../glyphs/B.pbm"),
    include_str!("../../glyphs/C.pbm"),
    include_str!("../../glyphs/D.pbm"),
    include_str!("../../glyphs/E.pbm"),
    include_str!("../../glyphs/F.pbm"),
    include_str!("../../glyphs/G.pbm"),
    include_str!("../../glyphs/H.pbm"),
    include_str!("../../glyphs/I.pbm"),
    include_str!("../../glyphs/J.pbm"),
    include_str!("../../glyphs/K.pbm"),
    include_str!("../../glyphs/L.pbm"),
    include_str!("../../glyphs/M.pbm"),
    include_str!("../../glyphs/N.pbm"),
    include_str!("../../glyphs/O.pbm"),
    include_str!("../../glyphs/P.pbm"),
    include_str!("../../glyphs/Q.pbm"),
    include_str!("../../glyphs/R.pbm"),
    include_str!("../../glyphs/S.pbm"),
    include_str!("../../glyphs/T.pbm"),
    include_str!("../../glyphs/U.pbm"),
    include_str!("../../glyphs/V.pbm"),
    include_str!("../../glyphs/W.pbm"),
    include_str!("../../glyphs/X.pbm"),
    include_str!("../../glyphs/Y.pbm"),
    include_str!("../../glyphs/Z.pbm"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlyphSource {
    Builtin,
    /// Directory holding `A.pbm` .. `Z.pbm`.
    Dir(PathBuf),
}

/// The 26 capitals A..Z, all 36x36.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphSet {
    bitmaps: Vec<Bitmap>,
    label: String,
}

impl GlyphSet {
    pub fn builtin() -> Self {
        let bitmaps = BUILTIN
            .iter()
            .zip(ALPHABET)
            .map(|(text, c)| {
                parse_p1(text, &format!("builtin {c}")).expect("built-in glyphs parse")
            })
            .collect();
        GlyphSet {
            bitmaps,
            label: "builtin".to_string(),
        }
    }

    pub fn from_bitmaps(bitmaps: Vec<Bitmap>, label: impl Into<String>) -> Result<Self> {
        if bitmaps.len() != ALPHABET.len() {
            return Err(Error::MissingGlyph(ALPHABET[bitmaps.len().min(25)]));
        }
        for (bmp, c) in bitmaps.iter().zip(ALPHABET) {
            check_dims(bmp, &c.to_string())?;
        }
        Ok(GlyphSet {
            bitmaps,
            label: label.into(),
        })
    }

    pub fn bitmaps(&self) -> &[Bitmap] {
        &self.bitmaps
    }

    pub fn glyph(&self, c: char) -> Option<&Bitmap> {
        ALPHABET
            .iter()
            .position(|&a| a == c)
            .map(|i| &self.bitmaps[i])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Writes `A.pbm` .. `Z.pbm` into `dir`, creating it if needed.
    pub fn export(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (bmp, c) in self.bitmaps.iter().zip(ALPHABET) {
            let path = dir.join(format!("{c}.pbm"));
            std::fs::write(&path, to_p1(bmp)).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

fn check_dims(bmp: &Bitmap, file: &str) -> Result<()> {
    if bmp.width() != GLYPH_SIZE || bmp.height() != GLYPH_SIZE {
        return Err(Error::GlyphDimensions {
            file: file.to_string(),
            expected_w: GLYPH_SIZE,
            expected_h: GLYPH_SIZE,
            found_w: bmp.width(),
            found_h: bmp.height(),
        });
    }
    Ok(())
}

pub fn load_glyphs(source: &GlyphSource) -> Result<GlyphSet> {
    let dir = match source {
        GlyphSource::Builtin => return Ok(GlyphSet::builtin()),
        GlyphSource::Dir(dir) => dir,
    };
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "glyph directory not found"),
        ));
    }
    let mut bitmaps = Vec::with_capacity(ALPHABET.len());
    for c in ALPHABET {
        let path = dir.join(format!("{c}.pbm"));
        if !path.is_file() {
            return Err(Error::MissingGlyph(c));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let name = path.display().to_string();
        let bmp = parse_p1(&text, &name)?;
        check_dims(&bmp, &name)?;
        bitmaps.push(bmp);
    }
    Ok(GlyphSet {
        bitmaps,
        label: dir.display().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_set_is_complete() {
        let g = load_glyphs(&GlyphSource::Builtin).unwrap();
        assert_eq!(g.bitmaps().len(), 26);
        for b in g.bitmaps() {
            assert_eq!((b.width(), b.height()), (36, 36));
            assert!(b.ink_count() > 50);
        }
        // every glyph distinct
        for i in 0..26 {
            for j in i + 1..26 {
                assert_ne!(g.bitmaps()[i], g.bitmaps()[j]);
            }
        }
    }

    #[test]
    fn directory_round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let g = GlyphSet::builtin();
        g.export(dir.path()).unwrap();
        let back = load_glyphs(&GlyphSource::Dir(dir.path().to_path_buf())).unwrap();
        assert_eq!(back.bitmaps(), g.bitmaps());

        std::fs::remove_file(dir.path().join("Z.pbm")).unwrap();
        let err = load_glyphs(&GlyphSource::Dir(dir.path().to_path_buf())).unwrap_err();
        assert_eq!(err.to_string(), "missing glyph Z");

        std::fs::write(dir.path().join("Z.pbm"), to_p1(&Bitmap::new(35, 36))).unwrap();
        let err = load_glyphs(&GlyphSource::Dir(dir.path().to_path_buf())).unwrap_err();
        assert!(
            matches!(err, Error::GlyphDimensions { found_w: 35, .. }),
            "{err}"
        );
        assert!(err.to_string().contains("Z.pbm"));

        std::fs::write(dir.path().join("Z.pbm"), "P1\n36 36\n0 1 x").unwrap();
        assert!(matches!(
            load_glyphs(&GlyphSource::Dir(dir.path().to_path_buf())),
            Err(Error::BitmapParse { .. })
        ));
    }

    #[test]
    fn empty_directory_reports_first_missing() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_glyphs(&GlyphSource::Dir(dir.path().to_path_buf())).unwrap_err();
        assert_eq!(err.to_string(), "missing glyph A");
    }
}
