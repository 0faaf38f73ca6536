//! Output codes: Hamming bookkeeping, one-bit code sets and radius-1 decoding.
//!
//! Main codes are not assigned up front. They are whatever a network emits
//! for the clean glyphs, so a [`Codebook`] is always derived from an Rset
//! via [`extract_main_codes`].

use std::fmt;
use std::str::FromStr;

use crate::circuit::Network;
use crate::error::{Error, Result};
use crate::imaging::{bitmap_to_inputs, GlyphSet, ALPHABET};
use crate::scalar::Scalar;

/// Spacing needed for radius-1 balls around main codes to be disjoint.
pub const DECODE_SPACING: usize = 3;

/// Fixed-length output bit vector; bit `k` is the output of last-layer cell `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    bits: Vec<bool>,
}

impl Code {
    pub fn new(bits: Vec<bool>) -> Self {
        Code { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Code {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn set(&mut self, k: usize, value: bool) {
        self.bits[k] = value;
    }

    pub fn flipped(&self, k: usize) -> Code {
        let mut c = self.clone();
        c.bits[k] = !c.bits[k];
        c
    }

    pub fn complement(&self) -> Code {
        Code {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Code {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Contract(format!("invalid code digit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Code::new)
    }
}

/// Number of differing bit positions.
pub fn hamming(a: &Code, b: &Code) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::Contract(format!(
            "hamming: code lengths differ ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    Ok(hamming_unchecked(a.bits(), b.bits()))
}

#[inline]
pub(crate) fn hamming_unchecked(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn char_index(c: char) -> Option<usize> {
    ALPHABET.iter().position(|&a| a == c)
}

/// Main code per character (A..Z order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    main_codes: Vec<Code>,
}

impl Codebook {
    pub fn new(main_codes: Vec<Code>) -> Result<Self> {
        if main_codes.len() != ALPHABET.len() {
            return Err(Error::Contract(format!(
                "codebook needs {} main codes, got {}",
                ALPHABET.len(),
                main_codes.len()
            )));
        }
        let len = main_codes[0].len();
        if main_codes.iter().any(|c| c.len() != len) {
            return Err(Error::Contract("codebook codes differ in length".into()));
        }
        Ok(Codebook { main_codes })
    }

    pub fn main_codes(&self) -> &[Code] {
        &self.main_codes
    }

    pub fn main_code(&self, c: char) -> Result<&Code> {
        char_index(c)
            .map(|i| &self.main_codes[i])
            .ok_or_else(|| Error::Contract(format!("unknown character {c:?}")))
    }

    pub fn code_len(&self) -> usize {
        self.main_codes[0].len()
    }

    /// Main code of `c` followed by its one-bit neighbours in bit order.
    pub fn code_set(&self, c: char) -> Result<Vec<Code>> {
        let main = self.main_code(c)?;
        let mut set = Vec::with_capacity(main.len() + 1);
        set.push(main.clone());
        set.extend((0..main.len()).map(|k| main.flipped(k)));
        Ok(set)
    }

    pub fn min_pairwise_distance(&self) -> Result<usize> {
        min_pairwise_distance(&self.main_codes)
    }

    pub fn all_unique(&self) -> bool {
        self.min_pairwise_distance().map(|d| d > 0).unwrap_or(false)
    }

    /// Returns the unique character within distance 1 of `observed`, or `None`.
    ///
    /// Refuses to run when the main-code spacing is below 3, where radius-1
    /// balls may overlap.
    pub fn decode(&self, observed: &Code) -> Result<Option<char>> {
        self.decoder(1)?.decode(observed)
    }

    /// Decoder with the given radius. Fails unless spacing ≥ 2·radius + 1.
    pub fn decoder(&self, radius: usize) -> Result<Decoder<'_>> {
        let spacing = self.min_pairwise_distance()?;
        if spacing < 2 * radius + 1 {
            return Err(Error::Contract(format!(
                "decode radius {radius} needs main-code spacing >= {}, codebook has {spacing}",
                2 * radius + 1
            )));
        }
        Ok(Decoder {
            codebook: self,
            radius,
        })
    }

    pub fn bit_errors(&self, c: char, observed: &Code) -> Result<usize> {
        hamming(observed, self.main_code(c)?)
    }

    /// One line per character: `A 010110100011`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, code) in ALPHABET.iter().zip(&self.main_codes) {
            out.push(*c);
            out.push(' ');
            out.push_str(&code.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut codes: Vec<Option<Code>> = vec![None; ALPHABET.len()];
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace();
            let (Some(ch), Some(bits), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Contract(format!("bad codebook line {line:?}")));
            };
            let mut chars = ch.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Contract(format!("bad codebook character {ch:?}")));
            };
            let idx =
                char_index(c).ok_or_else(|| Error::Contract(format!("unknown character {c:?}")))?;
            if codes[idx].is_some() {
                return Err(Error::Contract(format!("duplicate codebook entry for {c}")));
            }
            codes[idx] = Some(bits.parse()?);
        }
        let codes = codes
            .into_iter()
            .zip(ALPHABET)
            .map(|(code, c)| code.ok_or_else(|| Error::Contract(format!("codebook missing {c}"))))
            .collect::<Result<Vec<_>>>()?;
        Codebook::new(codes)
    }
}

pub fn min_pairwise_distance(codes: &[Code]) -> Result<usize> {
    if codes.len() < 2 {
        return Err(Error::Contract(
            "min_pairwise_distance needs at least 2 codes".into(),
        ));
    }
    let mut best = usize::MAX;
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            best = best.min(hamming(&codes[i], &codes[j])?);
        }
    }
    Ok(best)
}

/// Validated decoder; construction guarantees the balls are disjoint.
#[derive(Debug, Clone, Copy)]
pub struct Decoder<'a> {
    codebook: &'a Codebook,
    radius: usize,
}

impl Decoder<'_> {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn decode(&self, observed: &Code) -> Result<Option<char>> {
        if observed.len() != self.codebook.code_len() {
            return Err(Error::Contract(format!(
                "observed code has {} bits, codebook uses {}",
                observed.len(),
                self.codebook.code_len()
            )));
        }
        Ok(self.decode_index(observed.bits()).map(|i| ALPHABET[i]))
    }

    pub(crate) fn decode_index(&self, observed: &[bool]) -> Option<usize> {
        self.codebook
            .main_codes
            .iter()
            .position(|m| hamming_unchecked(m.bits(), observed) <= self.radius)
    }
}

/// Noise-free forward outputs of `net` on every glyph.
pub fn extract_main_codes<T: Scalar>(net: &Network<T>, glyphs: &GlyphSet) -> Result<Codebook> {
    let codes = glyphs
        .bitmaps()
        .iter()
        .map(|bmp| {
            let inputs = bitmap_to_inputs(bmp, net.arch().n_inputs())?;
            net.forward(&inputs)
        })
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(codes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(s: &str) -> Code {
        s.parse().unwrap()
    }

    /// 26 codes of length 12 with pairwise distance >= 3 (greedy lexicode).
    pub(crate) fn spaced_codes() -> Vec<Code> {
        let mut out: Vec<Code> = Vec::new();
        for v in 0u32..4096 {
            let c = Code::new((0..12).map(|k| v >> k & 1 == 1).collect());
            if out.iter().all(|o| hamming(o, &c).unwrap() >= 3) {
                out.push(c);
                if out.len() == 26 {
                    break;
                }
            }
        }
        out
    }

    #[test]
    fn hamming_examples() {
        let a = code("010110100011");
        assert_eq!(hamming(&a, &a).unwrap(), 0);
        assert_eq!(hamming(&a, &a.complement()).unwrap(), 12);
        assert_eq!(
            hamming(&code("000000000000"), &code("000000000111")).unwrap(),
            3
        );
        assert!(hamming(&code("01"), &code("011")).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let mut codes = spaced_codes();
        codes[1] = codes[0].clone();
        assert_eq!(min_pairwise_distance(&codes).unwrap(), 0);
        assert_eq!(
            min_pairwise_distance(&[code("000000000000"), code("111111111111")]).unwrap(),
            12
        );
        assert!(min_pairwise_distance(&[code("0")]).is_err());
    }

    #[test]
    fn code_sets_have_thirteen_members() {
        let cb = Codebook::new(spaced_codes()).unwrap();
        for c in ALPHABET {
            let set = cb.code_set(c).unwrap();
            assert_eq!(set.len(), 13);
            assert_eq!(&set[0], cb.main_code(c).unwrap());
        }
        // spacing >= 3: all 26 sets pairwise disjoint
        let mut all: Vec<Code> = ALPHABET
            .iter()
            .flat_map(|&c| cb.code_set(c).unwrap())
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 26 * 13);
    }

    #[test]
    fn decode_examples() {
        let cb = Codebook::new(spaced_codes()).unwrap();
        let a = cb.main_code('A').unwrap().clone();
        assert_eq!(cb.decode(&a).unwrap(), Some('A'));
        assert_eq!(cb.decode(&a.flipped(5)).unwrap(), Some('A'));
        // find some word at distance >= 2 from every main code
        let far = (0u32..4096)
            .map(|v| Code::new((0..12).map(|k| v >> k & 1 == 1).collect()))
            .find(|w| cb.main_codes().iter().all(|m| hamming(m, w).unwrap() >= 2))
            .unwrap();
        assert_eq!(cb.decode(&far).unwrap(), None);
    }

    #[test]
    fn decode_refuses_when_spacing_below_three() {
        let mut codes = spaced_codes();
        codes[1] = codes[0].flipped(0).flipped(1);
        let cb = Codebook::new(codes).unwrap();
        assert_eq!(cb.min_pairwise_distance().unwrap(), 2);
        assert!(matches!(
            cb.decode(cb.main_code('A').unwrap()),
            Err(Error::Contract(_))
        ));
        // exact matching is still well defined
        assert_eq!(
            cb.decoder(0)
                .unwrap()
                .decode(cb.main_code('B').unwrap())
                .unwrap(),
            Some('B')
        );
    }

    #[test]
    fn decode_is_total_and_partitions_code_space() {
        let cb = Codebook::new(spaced_codes()).unwrap();
        let mut per_char = [0usize; 26];
        let mut rejects = 0;
        for v in 0u32..4096 {
            let w = Code::new((0..12).map(|k| v >> k & 1 == 1).collect());
            match cb.decode(&w).unwrap() {
                Some(c) => {
                    per_char[char_index(c).unwrap()] += 1;
                    assert!(cb.bit_errors(c, &w).unwrap() <= 1);
                }
                None => rejects += 1,
            }
        }
        assert!(per_char.iter().all(|&n| n == 13));
        assert_eq!(rejects, 4096 - 26 * 13);
    }

    #[test]
    fn bit_errors_examples() {
        let cb = Codebook::new(spaced_codes()).unwrap();
        let z = cb.main_code('Z').unwrap().clone();
        assert_eq!(cb.bit_errors('Z', &z).unwrap(), 0);
        assert_eq!(cb.bit_errors('Z', &z.complement()).unwrap(), 12);
        assert!(cb.bit_errors('a', &z).is_err());
    }

    #[test]
    fn text_round_trip() {
        let cb = Codebook::new(spaced_codes()).unwrap();
        let text = cb.to_text();
        assert!(text.starts_with("A 000000000000\n"));
        assert_eq!(Codebook::from_text(&text).unwrap(), cb);
        let short: String = text.lines().take(25).map(|l| format!("{l}\n")).collect();
        assert!(Codebook::from_text(&short).is_err());
    }

    fn arb_code(len: usize) -> impl Strategy<Value = Code> {
        proptest::collection::vec(any::<bool>(), len).prop_map(Code::new)
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric(a in arb_code(12), b in arb_code(12), c in arb_code(12)) {
            let ab = hamming(&a, &b).unwrap();
            prop_assert_eq!(ab, hamming(&b, &a).unwrap());
            prop_assert_eq!(hamming(&a, &a).unwrap(), 0);
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(hamming(&a, &c).unwrap() <= ab + hamming(&b, &c).unwrap());
        }
    }
}
