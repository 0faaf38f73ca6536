//! Plain portable bitmap (`P1`): header, width and height, then 0/1 tokens.

use super::bitmap::Bitmap;
use crate::error::{Error, Result};

pub fn parse_p1(text: &str, source_name: &str) -> Result<Bitmap> {
    let err = |reason: String| Error::BitmapParse {
        source_name: source_name.to_string(),
        reason,
    };
    // '#' starts a comment running to end of line
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    match tokens.next() {
        Some("P1") => {}
        other => return Err(err(format!("expected magic P1, found {other:?}"))),
    }
    let mut dim = |what: &str| -> Result<usize> {
        let tok = tokens
            .next()
            .ok_or_else(|| err(format!("missing {what}")))?;
        tok.parse().map_err(|_| err(format!("bad {what} {tok:?}")))
    };
    let width = dim("width")?;
    let height = dim("height")?;
    let mut pixels = Vec::with_capacity(width * height);
    for tok in tokens {
        // P1 allows digits without separators
        for ch in tok.chars() {
            match ch {
                '0' => pixels.push(false),
                '1' => pixels.push(true),
                other => return Err(err(format!("invalid pixel {other:?}"))),
            }
        }
    }
    if pixels.len() != width * height {
        return Err(err(format!(
            "expected {} pixels, found {}",
            width * height,
            pixels.len()
        )));
    }
    Bitmap::from_pixels(width, height, pixels)
}

pub fn to_p1(bmp: &Bitmap) -> String {
    let mut out = format!("P1\n{} {}\n", bmp.width(), bmp.height());
    for row in bmp.pixels().chunks(bmp.width()) {
        let line: Vec<&str> = row.iter().map(|&p| if p { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
