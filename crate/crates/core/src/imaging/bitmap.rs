use crate::error::{Error, Result};

/// Binary image, row-major, `true` = ink.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitmap {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize) -> Self {
        Bitmap {
            width,
            height,
            pixels: vec![false; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::Contract(format!(
                "{width}x{height} bitmap needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(Bitmap {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    /// Pixel at signed coordinates; anything outside the canvas is background.
    pub fn get_or_background(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            false
        } else {
            self.get(x as usize, y as usize)
        }
    }

    pub fn set(&mut self, x: usize, y: usize, ink: bool) {
        self.pixels[y * self.width + x] = ink;
    }

    pub fn ink_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    pub(crate) fn pixels_mut(&mut self) -> &mut [bool] {
        &mut self.pixels
    }
}

/// Row-major flattening into network inputs, ink = 1.
pub fn bitmap_to_inputs(bmp: &Bitmap, n_inputs: usize) -> Result<Vec<bool>> {
    if bmp.pixels.len() != n_inputs {
        return Err(Error::Contract(format!(
            "{}x{} bitmap gives {} inputs, network expects {n_inputs}",
            bmp.width,
            bmp.height,
            bmp.pixels.len()
        )));
    }
    Ok(bmp.pixels.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_examples() {
        let mut b = Bitmap::new(36, 36);
        assert_eq!(bitmap_to_inputs(&b, 1296).unwrap(), vec![false; 1296]);
        b.set(2, 1, true);
        let x = bitmap_to_inputs(&b, 1296).unwrap();
        assert_eq!(x.len(), 1296);
        assert!(x[36 + 2]);
        assert!(bitmap_to_inputs(&Bitmap::new(6, 6), 1296).is_err());
    }

    #[test]
    fn background_outside_canvas() {
        let mut b = Bitmap::new(3, 2);
        b.set(2, 1, true);
        assert!(b.get_or_background(2, 1));
        assert!(!b.get_or_background(3, 1));
        assert!(!b.get_or_background(-1, 0));
        assert!(Bitmap::from_pixels(3, 2, vec![false; 5]).is_err());
    }
}
