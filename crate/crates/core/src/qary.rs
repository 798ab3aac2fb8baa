//! Quasi-complementary Gray codes over `Z_q^n` in the Lee and Hamming
//! metrics.
//!
//! Most constructions start from a binary skeleton path and replace every
//! skeleton word by a reflected `(q-1)`-ary code on its support, using the
//! sentinel digits `1` and `q-1` as entry and exit values.

use crate::binary::{monotone_gray, ruskey_path, MonotoneVariant};
use crate::code::{Code, EndpointPath, Transform};
use crate::error::{invalid, nonexistent, Error, Result};
use crate::word::Word;

/// Upper bound on the number of words any generator here will materialise.
pub const MAX_WORDS: u64 = 1 << 31;

/// A reflected `(q-1)`-ary code placed on a set of positions.
///
/// `support` lists positions most significant first; the last one changes
/// fastest. `high[k]` says whether `support[k]` starts at `q-1` rather than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportInstance {
    pub radix: u32,
    pub support: Vec<usize>,
    pub high: Vec<bool>,
}

impl SupportInstance {
    pub fn new(radix: u32, support: Vec<usize>, high: Vec<bool>) -> Result<Self> {
        if radix < 2 {
            return Err(invalid(format!("radix {radix} < 2")));
        }
        if support.is_empty() {
            return Err(invalid("support instance needs a non-empty support"));
        }
        if support.len() != high.len() {
            return Err(invalid("one orientation per support position"));
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != support.len() {
            return Err(invalid("support positions must be distinct"));
        }
        Ok(SupportInstance { radix, support, high })
    }

    fn sentinel(&self, k: usize) -> u32 {
        if self.high[k] {
            self.radix - 1
        } else {
            1
        }
    }
}

/// The words of one support instance as a standalone code of length `n`.
pub fn reflected_on_support(inst: &SupportInstance, n: usize) -> Result<Code> {
    if inst.radix < 3 {
        return Err(invalid("reflected_on_support needs q >= 3"));
    }
    if let Some(&p) = inst.support.iter().find(|&&p| p >= n) {
        return Err(invalid(format!("support position {} outside length {n}", p + 1)));
    }
    let mut word = vec![0u32; n];
    for (k, &p) in inst.support.iter().enumerate() {
        word[p] = inst.sentinel(k);
    }
    let mut code = Code::empty(inst.radix, n, false);
    walk_instance(inst.radix, &inst.support, &mut word, &mut |w| code.push_unchecked(w));
    Ok(code)
}

/// Emits the reflected code on `support`, starting from `word` (whose
/// support digits must be sentinels). `word` is left at the final value.
fn walk_instance(q: u32, support: &[usize], word: &mut [u32], emit: &mut impl FnMut(&[u32])) {
    let mut up: Vec<bool> = support.iter().map(|&p| word[p] == 1).collect();
    emit(word);
    loop {
        let mover = (0..support.len()).rev().find(|&k| {
            let d = word[support[k]];
            if up[k] {
                d + 1 <= q - 1
            } else {
                d > 1
            }
        });
        let Some(k) = mover else { return };
        for flip in &mut up[k + 1..] {
            *flip = !*flip;
        }
        let p = support[k];
        if up[k] {
            word[p] += 1;
        } else {
            word[p] -= 1;
        }
        emit(word);
    }
}

struct ExpansionTrace {
    /// Position receiving each free sentinel choice, in order.
    choices: Vec<usize>,
    last: Vec<u32>,
}

/// Expands a binary skeleton path into a `q`-ary path. `high` decides each
/// free sentinel choice by its index.
fn expand_skeleton(
    q: u32,
    skeleton: &Code,
    high: &dyn Fn(usize) -> bool,
    emit: &mut impl FnMut(&[u32]),
) -> Result<ExpansionTrace> {
    let n = skeleton.length();
    let mut word = vec![0u32; n];
    let mut choices = Vec::new();
    let mut choose = |p: usize, word: &mut [u32]| {
        word[p] = if high(choices.len()) { q - 1 } else { 1 };
        choices.push(p);
    };
    let mut support = Vec::with_capacity(n);
    for (t, b) in skeleton.words().enumerate() {
        if t == 0 {
            for p in (0..n).filter(|&p| b[p] == 1) {
                choose(p, &mut word);
            }
        } else {
            let prev = skeleton.word(t - 1);
            let changed: Vec<usize> = (0..n).filter(|&p| prev[p] != b[p]).collect();
            if changed.len() != 1 {
                return Err(Error::Internal(format!("skeleton step {t} changes {} bits", changed.len())));
            }
            let p = changed[0];
            if b[p] == 1 {
                choose(p, &mut word);
            } else {
                word[p] = 0;
            }
        }
        support.clear();
        support.extend((0..n).filter(|&p| b[p] == 1));
        if support.is_empty() {
            emit(&word);
        } else {
            walk_instance(q, &support, &mut word, emit);
        }
    }
    Ok(ExpansionTrace { choices, last: word })
}

/// Two-pass planning: run with every choice low, then flip the last choice
/// of each position that finished at `q-1`. Returns the choice vector.
fn plan_choices(q: u32, skeleton: &Code) -> Result<Vec<bool>> {
    let trace = expand_skeleton(q, skeleton, &|_| false, &mut |_| {})?;
    let mut high = vec![false; trace.choices.len()];
    for (p, &d) in trace.last.iter().enumerate() {
        if d == q - 1 && q > 2 {
            let idx = trace.choices.iter().rposition(|&c| c == p).ok_or_else(|| {
                Error::Internal(format!("position {} never received a sentinel", p + 1))
            })?;
            high[idx] = true;
        }
    }
    Ok(high)
}

fn planned_expansion(q: u32, skeleton: &Code, cyclic: bool) -> Result<Code> {
    let n = skeleton.length();
    let high = plan_choices(q, skeleton)?;
    let mut code = Code::with_capacity(q, n, cyclic, word_count(q, n)? as usize);
    let trace = expand_skeleton(q, skeleton, &|i| high[i], &mut |w| code.push_unchecked(w))?;
    if trace.last.iter().any(|&d| d != 1) {
        return Err(Error::Internal("expansion did not end at the all-ones word".into()));
    }
    Ok(code)
}

fn word_count(q: u32, n: usize) -> Result<u64> {
    u32::try_from(n)
        .ok()
        .and_then(|e| u64::from(q).checked_pow(e))
        .filter(|&c| c <= MAX_WORDS)
        .ok_or_else(|| invalid(format!("{q}^{n} words exceeds the generation limit")))
}

fn check_radix(q: u32, min: u32) -> Result<()> {
    if q < min {
        return Err(invalid(format!("q must be at least {min}, got {q}")));
    }
    Ok(())
}

fn odd_n_path(q: u32, n: usize) -> Result<EndpointPath> {
    if n % 2 == 0 {
        return Err(invalid(format!("n must be odd, got {n}")));
    }
    word_count(q, n)?;
    let skeleton = ruskey_path(n)?.into_code().apply(&Transform::ReverseEachWord)?;
    let code = planned_expansion(q, &skeleton, false)?;
    EndpointPath::new(code, vec![0; n], vec![1; n])
}

/// Lee Gray path `0^n -> 1^n` over `Z_q^n` for odd `n`, by support expansion
/// of the position-mirrored suffix-recursive binary path.
pub fn lee_code_odd_n(q: u32, n: usize) -> Result<EndpointPath> {
    check_radix(q, 3)?;
    odd_n_path(q, n)
}

/// Lee Gray path `0^n -> 1^n` whenever `n` is odd or `q` is odd.
///
/// For even `n` (odd `q`) this is `0G, (q-1)G^R, (q-2)G, ..., 1G` with `G`
/// the odd-length path on `n - 1` digits.
pub fn lee_path_any(q: u32, n: usize) -> Result<EndpointPath> {
    check_radix(q, 3)?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if n % 2 == 1 {
        return lee_code_odd_n(q, n);
    }
    if q % 2 == 0 {
        return Err(invalid(format!(
            "no Lee path 0^n -> 1^n construction for even n = {n} and even q = {q}"
        )));
    }
    word_count(q, n)?;
    let g = lee_code_odd_n(q, n - 1)?.into_code();
    let g_rev = g.apply(&Transform::ReverseOrder)?;
    let mut code = Code::with_capacity(q, n, false, g.len() * q as usize);
    let mut buf = vec![0u32; n];
    for (block, digit) in std::iter::once(0).chain((1..q).rev()).enumerate() {
        let src = if block % 2 == 0 { &g } else { &g_rev };
        buf[0] = digit;
        for w in src.words() {
            buf[1..].copy_from_slice(w);
            code.push_unchecked(&buf);
        }
    }
    EndpointPath::new(code, vec![0; n], vec![1; n])
}

/// Blocks `0A + i(1..1)` for `i = 0..q-1`, cyclic.
fn diagonal_blocks(a: &Code) -> Code {
    let q = a.radix();
    let n = a.length() + 1;
    let mut code = Code::with_capacity(q, n, true, a.len() * q as usize);
    let mut buf = vec![0u32; n];
    for i in 0..q {
        for w in a.words() {
            buf[0] = i;
            for (slot, &d) in buf[1..].iter_mut().zip(w) {
                *slot = (d + i) % q;
            }
            code.push_unchecked(&buf);
        }
    }
    code
}

fn counting_code(q: u32) -> Code {
    let mut code = Code::with_capacity(q, 1, true, q as usize);
    for d in 0..q {
        code.push_unchecked(&[d]);
    }
    code
}

/// Cyclic Lee Gray code with `word(i + q^{n-1}) = word(i) + (1..1)`.
///
/// Exists iff `n = 1`, `n` is even or `q` is odd; otherwise
/// [`Error::Nonexistent`]. For `q = 2` this is a complementary binary code.
pub fn quasi_complementary_lee(q: u32, n: usize) -> Result<Code> {
    check_radix(q, 2)?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    word_count(q, n)?;
    if n == 1 {
        return Ok(counting_code(q));
    }
    if n % 2 == 1 && q % 2 == 0 {
        return Err(nonexistent(format!(
            "no quasi-complementary Lee code for odd n = {n} and even q = {q}: \
             0^n and 1^n would sit an even number of steps apart at odd Lee distance"
        )));
    }
    let a = if n % 2 == 0 { odd_n_path(q, n - 1)? } else { lee_path_any(q, n - 1)? };
    Ok(diagonal_blocks(&a.code))
}

/// The `q` words `w + i(1..1)` left out of a missing-words code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingSet {
    pub anchor: Word,
    pub words: Vec<Word>,
}

impl MissingSet {
    pub fn new(anchor: Word) -> Self {
        let q = anchor.radix();
        let words = (0..q)
            .map(|i| anchor.add(&Word::constant(q, anchor.len(), i)).expect("same shape"))
            .collect();
        MissingSet { anchor, words }
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.words.iter().any(|m| m.digits() == w)
    }
}

/// Cyclic Lee Gray code on `Z_q^n` minus `w + i(1..1)` (`q` even, `n` odd),
/// with `word + (1..1)` always `(q^n - q)/q` places later.
pub fn quasi_complementary_lee_missing(q: u32, n: usize, w: &Word) -> Result<(Code, MissingSet)> {
    if q < 4 || q % 2 == 1 {
        return Err(invalid(format!("missing-words code needs even q >= 4, got {q}")));
    }
    if n < 3 || n % 2 == 0 {
        return Err(invalid(format!("missing-words code needs odd n >= 3, got {n}")));
    }
    if w.radix() != q {
        return Err(Error::RadixMismatch { expected: q, found: w.radix() });
    }
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: w.len() });
    }
    word_count(q, n)?;
    let a = missing_ingredient(q, n - 1)?;
    let mut code = diagonal_blocks(&a);
    let mut base = vec![0u32; n];
    base[1] = q - 1;
    let shift = w.sub(&Word::new(q, base)?)?;
    code = code.apply(&Transform::Translate(shift))?;
    Ok((code, MissingSet::new(w.clone())))
}

/// Lee path `0^m -> 1^m` over every word except `(q-1)0..0`.
fn missing_ingredient(q: u32, m: usize) -> Result<Code> {
    let skeleton = monotone_gray(m, MonotoneVariant::Shifted)?.into_code();
    let full = planned_expansion(q, &skeleton, false)?;
    let qs = q as usize;
    for d in 1..q {
        let mut e = vec![0; m];
        e[0] = d;
        if full.word(d as usize - 1) != e.as_slice() {
            return Err(Error::Internal("expansion does not open with the low sweep of position 1".into()));
        }
    }
    let mut trimmed = Code::with_capacity(q, m, false, full.len());
    for w in full.words().skip(qs - 1) {
        trimmed.push_unchecked(w);
    }
    let on_pair = |w: &[u32]| w[0] != 0 && w.iter().skip(1).filter(|&&d| d != 0).count() == 1;
    let start = trimmed
        .words()
        .position(on_pair)
        .ok_or_else(|| Error::Internal("no weight-2 instance on position 1".into()))?;
    let end = start + (qs - 1) * (qs - 1);
    let mut out = Code::with_capacity(q, m, false, full.len());
    let mut relocated = 0;
    let mut e = vec![0u32; m];
    for i in 0..trimmed.len() {
        let w = trimmed.word(i);
        out.push_unchecked(w);
        if i >= start && i + 1 < end {
            let (a, b) = (w[0], trimmed.word(i + 1)[0]);
            if a != b && a.min(b) % 2 == 1 && a.min(b) + 3 <= q {
                e[0] = a;
                out.push_unchecked(&e);
                e[0] = b;
                out.push_unchecked(&e);
                relocated += 2;
            }
        }
    }
    if relocated != qs - 2 || out.len() as u64 != word_count(q, m)? - 1 {
        return Err(Error::Internal(format!("relocated {relocated} of {} leading words", qs - 2)));
    }
    Ok(out)
}

/// Cyclic Lee Gray code (`q` even, `n` odd) in which `w + (1..1)` sits
/// `q^{n-1} + Δ` places after `w` with `1 <= |Δ| <= q-1`.
///
/// `G'(i) = G(i/q)` followed by `i mod q` on even blocks and
/// `(q-1-i) mod q` on odd blocks, with `G` the quasi-complementary code on
/// `n - 1` digits.
pub fn lee_separation_bounded(q: u32, n: usize) -> Result<Code> {
    if q < 4 || q % 2 == 1 {
        return Err(invalid(format!("bounded-separation code needs even q >= 4, got {q}")));
    }
    if n < 3 || n % 2 == 0 {
        return Err(invalid(format!("bounded-separation code needs odd n >= 3, got {n}")));
    }
    word_count(q, n)?;
    let mut code = digit_sweep_doubling(&quasi_complementary_lee(q, n - 1)?);
    code.set_cyclic(true);
    Ok(code)
}

fn digit_sweep_doubling(g: &Code) -> Code {
    let q = g.radix();
    let n = g.length() + 1;
    let mut code = Code::with_capacity(q, n, false, g.len() * q as usize);
    let mut buf = vec![0u32; n];
    for (b, w) in g.words().enumerate() {
        buf[..n - 1].copy_from_slice(w);
        for r in 0..q {
            buf[n - 1] = if b % 2 == 0 { r } else { q - 1 - r };
            code.push_unchecked(&buf);
        }
    }
    code
}

/// Hamming Gray path `0^n -> 1^n` for even `q` and even `n`: the digit-sweep
/// doubling of the odd-length Lee path with its last two words swapped.
pub fn hamming_ingredient_even(q: u32, n: usize) -> Result<EndpointPath> {
    if q < 4 || q % 2 == 1 {
        return Err(invalid(format!("needs even q >= 4, got {q}")));
    }
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("needs even n >= 2, got {n}")));
    }
    word_count(q, n)?;
    let g = lee_code_odd_n(q, n - 1)?.into_code();
    let code = digit_sweep_doubling(&g).apply(&Transform::SwapLastTwo)?;
    EndpointPath::new(code, vec![0; n], vec![1; n])
}

/// Cyclic Hamming Gray code with `word(i + q^{n-1}) = word(i) + (1..1)` for
/// every `q >= 3` and `n >= 1`.
pub fn quasi_complementary_hamming(q: u32, n: usize) -> Result<Code> {
    if q == 2 {
        return Err(invalid("q = 2 is the binary complementary family"));
    }
    check_radix(q, 3)?;
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    word_count(q, n)?;
    if n == 1 {
        return Ok(counting_code(q));
    }
    let m = n - 1;
    let a = if m % 2 == 1 {
        lee_code_odd_n(q, m)?
    } else if q % 2 == 1 {
        lee_path_any(q, m)?
    } else {
        hamming_ingredient_even(q, m)?
    };
    Ok(diagonal_blocks(&a.code))
}

/// Index of the first step moving a digit directly between the sentinels
/// `1` and `q-1` (only meaningful for `q >= 4`).
pub fn sentinel_jump(code: &Code) -> Option<usize> {
    let q = code.radix();
    if q < 4 {
        return None;
    }
    (1..code.len()).find(|&i| {
        code.word(i - 1)
            .iter()
            .zip(code.word(i))
            .any(|(&a, &b)| (a == 1 && b == q - 1) || (a == q - 1 && b == 1))
    })
}
