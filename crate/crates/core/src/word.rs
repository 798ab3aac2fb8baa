//! Words over `Z_q` and the two distances used throughout the crate.
//!
//! Digit position 1 is the leftmost digit, so prefixing a code with `0`
//! attaches the new digit on the left.

use std::fmt;

use crate::error::{Error, Result};

/// A length-`n` word over the alphabet `{0, .., radix - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    radix: u32,
    digits: Vec<u32>,
}

impl Word {
    pub fn new(radix: u32, digits: Vec<u32>) -> Result<Self> {
        if radix < 2 {
            return Err(Error::InvalidParameter(format!("radix {radix} < 2")));
        }
        if digits.is_empty() {
            return Err(Error::InvalidParameter("empty word".into()));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= radix) {
            return Err(Error::DigitOutOfRange { digit, radix });
        }
        Ok(Word { radix, digits })
    }

    /// Parses a digit string such as `"0121"`.
    pub fn parse(radix: u32, text: &str) -> Result<Self> {
        let digits = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::InvalidParameter(format!("not a digit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(radix, digits)
    }

    pub fn zeros(radix: u32, len: usize) -> Self {
        Word { radix, digits: vec![0; len] }
    }

    /// The all-`d` word `dd..d`.
    pub fn constant(radix: u32, len: usize, d: u32) -> Self {
        Word { radix, digits: vec![d % radix; len] }
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }

    fn check_shape(&self, other: &Word) -> Result<()> {
        if self.radix != other.radix {
            return Err(Error::RadixMismatch { expected: self.radix, found: other.radix });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn weight(&self) -> usize {
        weight(&self.digits)
    }

    pub fn hamming_distance(&self, other: &Word) -> Result<usize> {
        self.check_shape(other)?;
        Ok(hamming(&self.digits, &other.digits))
    }

    pub fn lee_distance(&self, other: &Word) -> Result<u64> {
        self.check_shape(other)?;
        Ok(lee(self.radix, &self.digits, &other.digits))
    }

    /// Digit-wise sum modulo the radix.
    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_shape(other)?;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(a, b)| (a + b) % self.radix)
            .collect();
        Ok(Word { radix: self.radix, digits })
    }

    /// Digit-wise difference modulo the radix.
    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.check_shape(other)?;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(a, b)| (a + self.radix - b) % self.radix)
            .collect();
        Ok(Word { radix: self.radix, digits })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.radix, &self.digits))
    }
}

/// Renders digits as a plain string when every digit is a single decimal
/// character, and space-separated otherwise.
pub fn render(radix: u32, digits: &[u32]) -> String {
    if radix <= 10 {
        digits.iter().map(|d| char::from_digit(*d, 10).unwrap()).collect()
    } else {
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Number of non-zero digits.
pub fn weight(digits: &[u32]) -> usize {
    digits.iter().filter(|&&d| d != 0).count()
}

pub fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Lee distance between two equal-length digit slices over `Z_radix`.
pub fn lee(radix: u32, a: &[u32], b: &[u32]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x.abs_diff(y);
            u64::from(d.min(radix - d))
        })
        .sum()
}
