//! Adjacent-interchange Gray codes for permutations in which the word
//! `n!/2` places after any word is its reversal.
//!
//! Permutations are codes of radix `n + 1` over the symbols `1..=n`.
//! Large constructions stream their first half through a callback so that
//! orders 12 and 13 can be checked without materialising them.

mod gamma;

pub use gamma::{
    b_flip_allowed, gamma_edge, gamma_graph, gamma_path, gamma_vertex_to_permutation, GammaGraph,
    GammaVertex,
};

use crate::code::Code;
use crate::combinations::adjacent_transposition_combinations;
use crate::error::{invalid, nonexistent, Error, Result};
use crate::verify::{verify_code, CodeSpec, Metric, Pairing, Report, Universe};

/// Multi-level plain changes: `levels` lists the moving symbols from the
/// fastest to the slowest; every other symbol is background.
struct PlainChanges {
    word: Vec<u8>,
    levels: Vec<u8>,
    /// `level_of[s]` is the level index of symbol `s`, or `usize::MAX`.
    level_of: Vec<usize>,
    left: Vec<bool>,
}

impl PlainChanges {
    fn new(word: Vec<u8>, levels: Vec<u8>) -> Self {
        let mut level_of = vec![usize::MAX; word.len() + 1];
        for (i, &s) in levels.iter().enumerate() {
            level_of[s as usize] = i;
        }
        let left = vec![true; levels.len()];
        PlainChanges { word, levels, level_of, left }
    }

    /// Moves the fastest unblocked level one place; `false` when none can.
    fn step(&mut self) -> bool {
        for li in 0..self.levels.len() {
            let sym = self.levels[li];
            let p = self.word.iter().position(|&s| s == sym).unwrap();
            let target = if self.left[li] { p.checked_sub(1) } else { Some(p + 1).filter(|&t| t < self.word.len()) };
            match target {
                Some(t) if self.level_of[self.word[t] as usize] >= li => {
                    self.word.swap(p, t);
                    return true;
                }
                _ => self.left[li] = !self.left[li],
            }
        }
        false
    }
}

fn identity(n: usize) -> Vec<u8> {
    (1..=n as u8).collect()
}

fn to_code(n: usize, words: &[Vec<u8>], cyclic: bool) -> Code {
    let mut code = Code::with_capacity(n as u32 + 1, n, cyclic, words.len());
    let mut buf = vec![0u32; n];
    for w in words {
        for (slot, &s) in buf.iter_mut().zip(w) {
            *slot = u32::from(s);
        }
        code.push_unchecked(&buf);
    }
    code
}

fn sjt_words(n: usize) -> Vec<Vec<u8>> {
    let mut pc = PlainChanges::new(identity(n), (2..=n as u8).rev().collect());
    let mut out = vec![pc.word.clone()];
    while pc.step() {
        out.push(pc.word.clone());
    }
    out
}

/// Plain changes (Steinhaus–Johnson–Trotter) from `12..n`, cyclic.
pub fn sjt(n: usize) -> Result<Code> {
    if n == 0 || n > 10 {
        return Err(invalid(format!("sjt supports 1 <= n <= 10, got {n}")));
    }
    Ok(to_code(n, &sjt_words(n), true))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Completeness, adjacent steps (wrap included), the identity start and
/// `word(i + n!/2) = reverse(word(i))`.
pub fn reverse_code_spec(n: usize) -> CodeSpec {
    let ident: Vec<u32> = (1..=n as u32).collect();
    let spec = CodeSpec::new(Metric::AdjacentTransposition)
        .cyclic()
        .universe(Universe::Permutations)
        .starts_with(ident);
    if n >= 2 {
        spec.pairing(Pairing::Reversal, [factorial(n) as usize / 2])
    } else {
        spec
    }
}

/// Verifies `c` against [`reverse_code_spec`].
pub fn verify_reverse_code(c: &Code) -> Result<Report> {
    let n = c.length();
    if c.radix() != n as u32 + 1 {
        return Err(invalid("permutation codes use radix n + 1"));
    }
    verify_code(c, &reverse_code_spec(n))
}

/// The four words before the midpoint are `(n-1)(n-2)..312` with `n`
/// inserted at positions 4, 3, 2, 1. Requires a valid reverse code.
pub fn property_p_check(c: &Code) -> Result<bool> {
    let n = c.length();
    if n < 4 {
        return Err(invalid("property P needs n >= 4"));
    }
    let report = verify_reverse_code(c)?;
    if !report.pass() {
        return Err(invalid(format!("not a reverse code: {report}")));
    }
    let half = c.len() / 2;
    Ok((0..4).all(|k| c.word(half - 4 + k) == property_p_word(n, 4 - k).as_slice()))
}

/// `(n-1)(n-2)..312` with `n` inserted at 1-based position `pos`.
fn property_p_word(n: usize, pos: usize) -> Vec<u32> {
    let mut base: Vec<u32> = (3..n as u32).rev().chain([1, 2]).collect();
    base.insert(pos - 1, n as u32);
    base
}

/// Streams the first `n!/2` words of the reverse code of order `n`.
pub fn reverse_first_half(n: usize, emit: &mut dyn FnMut(&[u8])) -> Result<()> {
    match n {
        0 => Err(invalid("n must be at least 1")),
        1 => {
            emit(&[1]);
            Ok(())
        }
        2..=4 => {
            let words = sjt_words(n);
            for w in &words[..words.len() / 2] {
                emit(w);
            }
            Ok(())
        }
        _ if n % 4 == 0 => thm_0mod4_stream(n, emit),
        _ if n % 4 == 1 => thm_1mod4_stream(n, emit),
        _ => Err(nonexistent(format!(
            "no reverse Gray code for permutations of order {n}: n ≡ {} (mod 4)",
            n % 4
        ))),
    }
}

fn with_reversals(n: usize, first: Vec<Vec<u8>>) -> Code {
    let mut all = first.clone();
    all.extend(first.into_iter().map(|mut w| {
        w.reverse();
        w
    }));
    to_code(n, &all, true)
}

fn collect_half(n: usize) -> Result<Vec<Vec<u8>>> {
    let mut out = Vec::with_capacity((factorial(n) / 2) as usize);
    reverse_first_half(n, &mut |w| out.push(w.to_vec()))?;
    Ok(out)
}

const MAX_MATERIALISED: usize = 11;

/// Reverse adjacent-interchange Gray code of order `n`; exists iff `n <= 4`
/// or `n ≡ 0, 1 (mod 4)`.
pub fn reverse_perm_code(n: usize) -> Result<Code> {
    if n > MAX_MATERIALISED {
        return Err(invalid(format!(
            "order {n} is too large to materialise; use the streaming first half"
        )));
    }
    if n == 1 {
        return sjt(1);
    }
    Ok(with_reversals(n, collect_half(n)?))
}

/// Order `n ≡ 0 (mod 4)`, `n >= 8`, with property P.
pub fn thm_0mod4(n: usize) -> Result<Code> {
    if n % 4 != 0 || n < 8 {
        return Err(invalid(format!("thm_0mod4 needs n ≡ 0 (mod 4), n >= 8, got {n}")));
    }
    reverse_perm_code(n)
}

/// Order `n ≡ 1 (mod 4)`, `n >= 5`.
pub fn thm_1mod4(n: usize) -> Result<Code> {
    if n % 4 != 1 || n < 5 {
        return Err(invalid(format!("thm_1mod4 needs n ≡ 1 (mod 4), n >= 5, got {n}")));
    }
    reverse_perm_code(n)
}

fn swap_position(a: &[u8], b: &[u8]) -> Result<usize> {
    let p = a
        .iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .ok_or_else(|| Error::Internal("repeated word in ingredient code".into()))?;
    if p + 1 >= a.len() || a[p] != b[p + 1] || a[p + 1] != b[p] || a[p + 2..] != b[p + 2..] {
        return Err(Error::Internal("ingredient step is not an adjacent interchange".into()));
    }
    Ok(p)
}

fn thm_0mod4_stream(n: usize, emit: &mut dyn FnMut(&[u8])) -> Result<()> {
    if n % 4 != 0 || n < 8 {
        return Err(invalid(format!("n ≡ 0 (mod 4), n >= 8 required, got {n}")));
    }
    let g1 = collect_half(n - 3)?;
    let g1_swaps = g1.windows(2).map(|w| swap_position(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    let g2 = adjacent_transposition_combinations(n)?;
    let g2_swaps: Vec<usize> = (1..g2.len())
        .map(|i| g2.word(i - 1).iter().zip(g2.word(i)).position(|(a, b)| a != b).unwrap())
        .collect();

    // phase 1: triple {n-2, n-1, n} sweeps with G2, reorders with G3, G1 steps the rest
    let mut word = identity(n);
    emit(&word);
    for &g1_swap in &g1_swaps {
        for pass in 0..6 {
            if pass > 0 {
                let base = if pass % 2 == 1 { 0 } else { n - 3 };
                let off = (pass - 1) % 2;
                word.swap(base + off, base + off + 1);
                emit(&word);
            }
            let forward = pass % 2 == 0;
            for k in 0..g2_swaps.len() {
                let p = if forward { g2_swaps[k] } else { g2_swaps[g2_swaps.len() - 1 - k] };
                word.swap(p, p + 1);
                emit(&word);
            }
        }
        word.swap(g1_swap, g1_swap + 1);
        emit(&word);
    }
    let (n8, n1, n2) = (n as u8, n as u8 - 1, n as u8 - 2);
    let mut stop: Vec<u8> = (3..=n as u8 - 3).rev().chain([1, 2]).collect();
    stop.extend([n2, n8, n1]);
    if word != stop {
        return Err(Error::Internal("phase 1 did not reach its stop word".into()));
    }

    // phase 2: plain changes on n-1 (fastest), n, n-2, all starting leftwards
    let mut target: Vec<u8> = vec![n as u8 - 3, n2];
    target.extend((3..=n as u8 - 4).rev().chain([1, 2]));
    target.extend([n8, n1]);
    let mut pc = PlainChanges::new(word, vec![n1, n8, n2]);
    while pc.word != target {
        if !pc.step() {
            return Err(Error::Internal("phase 2 halted before its stop word".into()));
        }
        emit(&pc.word);
    }

    // phase 3: the Hamilton path on the remaining positions
    let mut buf = vec![0u8; n];
    for vx in gamma_path(n as u32)?.into_iter().skip(1) {
        for (slot, s) in buf.iter_mut().zip(gamma_vertex_to_permutation(vx, n as u32)?) {
            *slot = s as u8;
        }
        emit(&buf);
    }
    Ok(())
}

/// `g` with symbol `n` inserted at 0-based position `pos`.
fn insert_top(g: &[u8], n: u8, pos: usize, out: &mut Vec<u8>) {
    out.clear();
    out.extend_from_slice(&g[..pos]);
    out.push(n);
    out.extend_from_slice(&g[pos..]);
}

fn thm_1mod4_stream(n: usize, emit: &mut dyn FnMut(&[u8])) -> Result<()> {
    if n % 4 != 1 || n < 5 {
        return Err(invalid(format!("n ≡ 1 (mod 4), n >= 5 required, got {n}")));
    }
    let top = n as u8;
    let half = (factorial(n - 1) / 2) as usize;
    // the last four words of G's first half carry property P; s is the first
    let s = half - 4;
    let mut tail: Vec<Vec<u8>> = Vec::with_capacity(3);
    let mut t = 0usize;
    let mut buf = Vec::with_capacity(n);
    let mut bad_tail = false;
    reverse_first_half(n - 1, &mut |g| {
        if t <= s {
            let right_to_left = t % 2 == 0;
            for k in 0..n {
                let pos = if right_to_left { n - 1 - k } else { k };
                insert_top(g, top, pos, &mut buf);
                emit(&buf);
            }
        } else if tail.len() < 3 {
            tail.push(g.to_vec());
        } else {
            bad_tail = true;
        }
        t += 1;
    })?;
    if bad_tail || t != half || tail.len() != 3 {
        return Err(Error::Internal("ingredient first half has the wrong length".into()));
    }
    let (g1, g2, g3) = (&tail[0], &tail[1], &tail[2]);
    let mut put = |g: &[u8], pos: usize| {
        insert_top(g, top, pos, &mut buf);
        emit(&buf);
    };
    put(g1, 0);
    put(g2, 0);
    put(g2, 1);
    for pos in 1..n {
        put(g1, pos);
    }
    put(g2, n - 1);
    put(g3, n - 1);
    for p in (3..n).rev() {
        let (a, b) = if (n - 1 - p) % 2 == 0 { (g3, g2) } else { (g2, g3) };
        put(a, p - 1);
        put(b, p - 1);
    }
    put(g3, 1);
    put(g3, 0);
    Ok(())
}

/// Outcome of checking a first half on the fly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfCheck {
    pub words: u64,
    pub expected: u64,
    pub first_error: Option<String>,
}

impl HalfCheck {
    pub fn pass(&self) -> bool {
        self.first_error.is_none() && self.words == self.expected
    }
}

/// Streams the first half of the order-`n` code and checks, with bounded
/// memory, everything that makes the full code a reverse code: identity
/// start, adjacent steps, 1 before 2, no repeats, `n!/2` words, and an
/// adjacent seam to the reversal of the first word.
pub fn verify_first_half_streaming(n: usize) -> Result<HalfCheck> {
    if !(3..=13).contains(&n) {
        return Err(invalid("streaming verification supports 3 <= n <= 13"));
    }
    let expected = factorial(n) / 2;
    // mixed-radix weights over the inversion counts of symbols 3..=n
    let mut weight = vec![0u64; n + 1];
    let mut w = 1u64;
    for s in 3..=n {
        weight[s] = w;
        w *= s as u64;
    }
    let mut seen = vec![0u64; expected.div_ceil(64) as usize];
    let mut prev: Vec<u8> = Vec::new();
    let mut rank = 0u64;
    let mut count = 0u64;
    let mut error: Option<String> = None;
    reverse_first_half(n, &mut |cur| {
        if error.is_some() {
            count += 1;
            return;
        }
        if count == 0 {
            if cur != identity(n).as_slice() {
                error = Some("does not start at the identity".into());
            }
        } else {
            let Some(p) = adjacent_swap(&prev, cur) else {
                error = Some(format!("word {count} is not an adjacent interchange of its predecessor"));
                count += 1;
                return;
            };
            let (a, b) = (prev[p], prev[p + 1]);
            let larger = a.max(b) as usize;
            if larger >= 3 {
                // inversion count of `larger` (smaller symbols to its right)
                if a > b {
                    rank -= weight[larger];
                } else {
                    rank += weight[larger];
                }
            }
        }
        let one = cur.iter().position(|&s| s == 1);
        let two = cur.iter().position(|&s| s == 2);
        if one > two {
            error = Some(format!("word {count} has 2 before 1"));
        } else if count >= expected {
            error = Some("more than n!/2 words".into());
        } else {
            let (i, bit) = ((rank / 64) as usize, rank % 64);
            if seen[i] >> bit & 1 == 1 {
                error = Some(format!("word {count} repeats an earlier word"));
            }
            seen[i] |= 1 << bit;
        }
        prev.clear();
        prev.extend_from_slice(cur);
        count += 1;
    })?;
    if error.is_none() && count == expected {
        let mut rev = identity(n);
        rev.reverse();
        if adjacent_swap(&prev, &rev).is_none() {
            error = Some("last word of the first half is not adjacent to n..21".into());
        }
    }
    Ok(HalfCheck { words: count, expected, first_error: error })
}

fn adjacent_swap(a: &[u8], b: &[u8]) -> Option<usize> {
    let p = a.iter().zip(b).position(|(x, y)| x != y)?;
    (p + 1 < a.len() && a[p] == b[p + 1] && a[p + 1] == b[p] && a[p + 2..] == b[p + 2..]).then_some(p)
}

/// Cyclic code of the `n(n-1)` arrangements of `{1, 2, 3, .., 3}` (`n` odd)
/// under adjacent interchanges.
pub fn multiset_cycle(n: usize) -> Result<Code> {
    if n < 3 || n % 2 == 0 {
        return Err(invalid(format!("multiset cycle needs odd n >= 3, got {n}")));
    }
    let cycle = multiset_positions(n);
    let mut code = Code::with_capacity(4, n, true, cycle.len());
    let mut buf = vec![3u32; n];
    for &(y, z) in &cycle {
        buf.fill(3);
        buf[y - 1] = 1;
        buf[z - 1] = 2;
        code.push_unchecked(&buf);
    }
    Ok(code)
}

/// `(position of 1, position of 2)` along the cycle, 1-based.
pub fn multiset_positions(n: usize) -> Vec<(usize, usize)> {
    if n == 3 {
        return vec![(1, 3), (2, 3), (3, 2), (3, 1), (2, 1), (1, 2)];
    }
    let mut out = vec![(1, 3)];
    out.extend(multiset_positions(n - 2).into_iter().rev().map(|(y, z)| (y + 1, z + 1)));
    out.extend((4..=n).map(|z| (1, z)));
    out.extend((2..n).map(|y| (y, n)));
    out.extend((1..n).rev().map(|z| (n, z)));
    out.extend((2..n).rev().map(|y| (y, 1)));
    out.push((1, 2));
    out
}
