//! Ordered sequences of words and the structural transforms the
//! constructions are assembled from.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{render, Word};

/// An ordered list of equal-length words with a cyclicity claim.
///
/// Words are stored contiguously; `word(i)` borrows the `i`-th one.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    radix: u32,
    length: usize,
    cyclic: bool,
    data: Vec<u32>,
}

impl Code {
    /// An empty code of the given shape.
    pub fn empty(radix: u32, length: usize, cyclic: bool) -> Self {
        Code { radix, length, cyclic, data: Vec::new() }
    }

    pub fn with_capacity(radix: u32, length: usize, cyclic: bool, words: usize) -> Self {
        Code { radix, length, cyclic, data: Vec::with_capacity(words * length) }
    }

    /// Builds a code from digit vectors, validating shape and digit range.
    pub fn from_words<I, W>(radix: u32, cyclic: bool, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[u32]>,
    {
        let mut iter = words.into_iter().peekable();
        let length = match iter.peek() {
            Some(w) => w.as_ref().len(),
            None => return Err(Error::EmptyCode),
        };
        let mut code = Code::empty(radix, length, cyclic);
        for w in iter {
            code.push(w.as_ref())?;
        }
        Ok(code)
    }

    /// Parses whitespace-separated digit strings, e.g. `"00 01 11 10"`.
    pub fn parse(radix: u32, cyclic: bool, text: &str) -> Result<Self> {
        let words = text
            .split_whitespace()
            .map(|t| Word::parse(radix, t).map(Word::into_digits))
            .collect::<Result<Vec<_>>>()?;
        Code::from_words(radix, cyclic, words)
    }

    pub fn push(&mut self, word: &[u32]) -> Result<()> {
        if word.len() != self.length {
            return Err(Error::LengthMismatch { expected: self.length, found: word.len() });
        }
        if let Some(&digit) = word.iter().find(|&&d| d >= self.radix) {
            return Err(Error::DigitOutOfRange { digit, radix: self.radix });
        }
        self.data.extend_from_slice(word);
        Ok(())
    }

    /// Appends without validation; callers guarantee shape.
    pub(crate) fn push_unchecked(&mut self, word: &[u32]) {
        debug_assert_eq!(word.len(), self.length);
        self.data.extend_from_slice(word);
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    /// Number of digits per word.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn set_cyclic(&mut self, cyclic: bool) {
        self.cyclic = cyclic;
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        if self.length == 0 {
            0
        } else {
            self.data.len() / self.length
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn word(&self, i: usize) -> &[u32] {
        &self.data[i * self.length..(i + 1) * self.length]
    }

    pub fn first(&self) -> Option<&[u32]> {
        (!self.is_empty()).then(|| self.word(0))
    }

    pub fn last(&self) -> Option<&[u32]> {
        (!self.is_empty()).then(|| self.word(self.len() - 1))
    }

    pub fn words(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.length.max(1))
    }

    pub fn to_word(&self, i: usize) -> Word {
        Word::new(self.radix, self.word(i).to_vec()).expect("code words are validated on insertion")
    }

    /// Concatenates `other` after `self`; shapes must agree.
    pub fn extend(&mut self, other: &Code) -> Result<()> {
        if other.radix != self.radix {
            return Err(Error::RadixMismatch { expected: self.radix, found: other.radix });
        }
        if other.length != self.length {
            return Err(Error::LengthMismatch { expected: self.length, found: other.length });
        }
        self.data.extend_from_slice(&other.data);
        Ok(())
    }

    /// One rendered word per line.
    pub fn render_lines(&self) -> Vec<String> {
        self.words().map(|w| render(self.radix, w)).collect()
    }

    pub fn apply(&self, t: &Transform) -> Result<Code> {
        apply_transform(self, t)
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Code(q={}, n={}, cyclic={}, [{}])",
            self.radix,
            self.length,
            self.cyclic,
            self.render_lines().join(", ")
        )
    }
}

/// A non-cyclic code with declared first and last words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointPath {
    pub code: Code,
    pub start: Vec<u32>,
    pub end: Vec<u32>,
}

impl EndpointPath {
    /// Wraps `code`, checking that it starts and ends where declared.
    pub fn new(code: Code, start: Vec<u32>, end: Vec<u32>) -> Result<Self> {
        if code.first() != Some(start.as_slice()) || code.last() != Some(end.as_slice()) {
            return Err(Error::Internal(format!(
                "path endpoints {:?}..{:?} differ from declared {}..{}",
                code.first().map(|w| render(code.radix(), w)),
                code.last().map(|w| render(code.radix(), w)),
                render(code.radix(), &start),
                render(code.radix(), &end),
            )));
        }
        Ok(EndpointPath { code, start, end })
    }

    pub fn into_code(self) -> Code {
        self.code
    }
}

/// Element-wise and order transforms on codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    /// Attach digit `d` on the left of every word.
    Prefix(u32),
    /// Attach digit `d` on the right of every word.
    Suffix(u32),
    /// Binary complement of every word.
    ComplementEach,
    /// List the words in reverse order.
    ReverseOrder,
    /// Reverse the digit order inside each word.
    ReverseEachWord,
    /// Add `i` to every digit (mod q).
    AddDiagonal(u32),
    /// Add a fixed word to every word (mod q).
    Translate(Word),
    DropFirst,
    SwapLastTwo,
}

pub fn apply_transform(c: &Code, t: &Transform) -> Result<Code> {
    let q = c.radix;
    let n = c.length;
    let mut out = match t {
        Transform::Prefix(_) | Transform::Suffix(_) => {
            Code::with_capacity(q, n + 1, c.cyclic, c.len())
        }
        _ => Code::with_capacity(q, n, c.cyclic, c.len()),
    };
    match t {
        Transform::Prefix(d) | Transform::Suffix(d) => {
            if *d >= q {
                return Err(Error::DigitOutOfRange { digit: *d, radix: q });
            }
            let mut buf = Vec::with_capacity(n + 1);
            for w in c.words() {
                buf.clear();
                if matches!(t, Transform::Prefix(_)) {
                    buf.push(*d);
                    buf.extend_from_slice(w);
                } else {
                    buf.extend_from_slice(w);
                    buf.push(*d);
                }
                out.push_unchecked(&buf);
            }
        }
        Transform::ComplementEach => {
            if q != 2 {
                return Err(Error::NotBinary);
            }
            out.data = c.data.iter().map(|b| 1 - b).collect();
        }
        Transform::ReverseOrder => {
            for i in (0..c.len()).rev() {
                out.push_unchecked(c.word(i));
            }
        }
        Transform::ReverseEachWord => {
            let mut buf = Vec::with_capacity(n);
            for w in c.words() {
                buf.clear();
                buf.extend(w.iter().rev());
                out.push_unchecked(&buf);
            }
        }
        Transform::AddDiagonal(i) => {
            out.data = c.data.iter().map(|d| (d + i % q) % q).collect();
        }
        Transform::Translate(w) => {
            if w.radix() != q {
                return Err(Error::RadixMismatch { expected: q, found: w.radix() });
            }
            if w.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: w.len() });
            }
            let shift = w.digits();
            out.data = c
                .data
                .iter()
                .enumerate()
                .map(|(k, d)| (d + shift[k % n]) % q)
                .collect();
        }
        Transform::DropFirst => {
            if c.is_empty() {
                return Err(Error::EmptyCode);
            }
            out.data = c.data[n..].to_vec();
        }
        Transform::SwapLastTwo => {
            let len = c.len();
            if len < 2 {
                return Err(Error::InvalidParameter("swap_last_two needs two words".into()));
            }
            out.data = c.data.clone();
            let (a, b) = out.data.split_at_mut((len - 1) * n);
            a[(len - 2) * n..].swap_with_slice(&mut b[..n]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::lee;

    fn code(q: u32, s: &str) -> Code {
        Code::parse(q, false, s).unwrap()
    }

    #[test]
    fn prefix_and_suffix() {
        let c = code(2, "0 1");
        assert_eq!(c.apply(&Transform::Prefix(0)).unwrap(), code(2, "00 01"));
        assert_eq!(c.apply(&Transform::Suffix(1)).unwrap(), code(2, "01 11"));
        assert!(c.apply(&Transform::Prefix(2)).is_err());
    }

    #[test]
    fn complement_each() {
        let c = code(2, "00 01 11 10");
        assert_eq!(c.apply(&Transform::ComplementEach).unwrap(), code(2, "11 10 00 01"));
        assert_eq!(code(3, "01").apply(&Transform::ComplementEach), Err(Error::NotBinary));
    }

    #[test]
    fn add_diagonal_ternary() {
        let c = code(3, "000 002 001");
        assert_eq!(c.apply(&Transform::AddDiagonal(1)).unwrap(), code(3, "111 110 112"));
    }

    #[test]
    fn order_transforms() {
        let c = code(3, "012 120 201");
        assert_eq!(c.apply(&Transform::ReverseOrder).unwrap(), code(3, "201 120 012"));
        assert_eq!(c.apply(&Transform::ReverseEachWord).unwrap(), code(3, "210 021 102"));
        assert_eq!(c.apply(&Transform::DropFirst).unwrap(), code(3, "120 201"));
        assert_eq!(c.apply(&Transform::SwapLastTwo).unwrap(), code(3, "012 201 120"));
    }

    #[test]
    fn translate() {
        let c = code(4, "00 13");
        let shift = Word::parse(4, "31").unwrap();
        assert_eq!(c.apply(&Transform::Translate(shift)).unwrap(), code(4, "31 00"));
        let bad = Word::parse(4, "1").unwrap();
        assert!(matches!(
            c.apply(&Transform::Translate(bad)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn drop_first_on_empty() {
        let c = Code::empty(2, 3, false);
        assert_eq!(c.apply(&Transform::DropFirst), Err(Error::EmptyCode));
    }

    #[test]
    fn isometries_keep_lee_distances() {
        let c = code(5, "013 420 344 102");
        let shift = Word::parse(5, "241").unwrap();
        for t in [
            Transform::AddDiagonal(3),
            Transform::Translate(shift),
            Transform::ReverseEachWord,
        ] {
            let d = c.apply(&t).unwrap();
            for i in 0..c.len() {
                for j in 0..c.len() {
                    assert_eq!(lee(5, c.word(i), c.word(j)), lee(5, d.word(i), d.word(j)));
                }
            }
        }
    }
}
