//! Binary constructions: the reflected code, endpoint-controlled Hamilton
//! paths in the hypercube, reflected doubling, complementary codes for even
//! `n` and the two relaxations for odd `n`.

use crate::code::{Code, EndpointPath, Transform};
use crate::error::{invalid, nonexistent, Error, Result};
use crate::verify::{verify_code, CodeSpec, Metric};
use crate::word::render;

/// The reflected Gray code on `n` bits, leftmost bit most significant.
pub fn brgc(n: usize) -> Result<Code> {
    if n == 0 || n > 30 {
        return Err(invalid(format!("brgc needs 1 <= n <= 30, got {n}")));
    }
    let mut code = Code::with_capacity(2, n, true, 1 << n);
    let mut buf = vec![0u32; n];
    for i in 0u32..1 << n {
        let g = i ^ (i >> 1);
        for (k, slot) in buf.iter_mut().enumerate() {
            *slot = (g >> (n - 1 - k)) & 1;
        }
        code.push_unchecked(&buf);
    }
    Ok(code)
}

/// Hamilton path in the `n`-cube built by suffix recursion: `0^n -> 1^n`
/// for odd `n` and `0^n -> 01^{n-1}` for even `n`.
///
/// `E(n+1) = O(n)0, BRRC(n)1` and `O(n+1) = E(n)0, BRC(n)1`, where `BRC` is
/// the complemented reflected code and `BRRC` its reversal, from `E(1) = 0,1`.
pub fn ruskey_path(n: usize) -> Result<EndpointPath> {
    if n == 0 || n > 24 {
        return Err(invalid(format!("ruskey_path needs 1 <= n <= 24, got {n}")));
    }
    let code = ruskey_code(n)?;
    let start = vec![0; n];
    let mut end = vec![1; n];
    if n % 2 == 0 {
        end[0] = 0;
    }
    EndpointPath::new(code, start, end)
}

fn ruskey_code(n: usize) -> Result<Code> {
    if n == 1 {
        return Code::from_words(2, false, [[0u32], [1]]);
    }
    let prev = ruskey_code(n - 1)?;
    let brc = brgc(n - 1)?.apply(&Transform::ComplementEach)?;
    // n even: O(n) = E(n-1)0, BRC(n-1)1;  n odd: E(n) = O(n-1)0, BRRC(n-1)1
    let tail = if n % 2 == 0 { brc } else { brc.apply(&Transform::ReverseOrder)? };
    let mut code = prev.apply(&Transform::Suffix(0))?;
    code.extend(&tail.apply(&Transform::Suffix(1))?)?;
    code.set_cyclic(false);
    Ok(code)
}

/// `0P, 1P̄` with `P = ruskey_path(n-1)`: a cyclic Gray code in which the
/// complement of every word sits exactly `2^{n-1}` places later.
pub fn complementary_even(n: usize) -> Result<Code> {
    if n % 2 == 1 {
        return Err(nonexistent(format!(
            "n = {n} is odd: complementary binary code cannot exist (word parity alternates)"
        )));
    }
    if n == 0 {
        return Err(invalid("n must be at least 2"));
    }
    let p = ruskey_path(n - 1)?.into_code();
    let mut code = p.apply(&Transform::Prefix(0))?;
    code.extend(&p.apply(&Transform::ComplementEach)?.apply(&Transform::Prefix(1))?)?;
    code.set_cyclic(true);
    Ok(code)
}

/// Doubles a binary Gray code on `n` bits to one on `n + 1` bits:
/// word `i` is `g(i/2)` followed by `0` when `i mod 4` is 0 or 3 and by `1`
/// otherwise.
pub fn double_rev_ref(g: &Code) -> Result<Code> {
    if g.radix() != 2 {
        return Err(Error::NotBinary);
    }
    if g.is_empty() {
        return Err(Error::EmptyCode);
    }
    let spec = CodeSpec { require_cyclic: g.is_cyclic(), ..CodeSpec::new(Metric::Hamming) };
    let report = verify_code(g, &spec)?;
    if !report.pass() {
        return Err(Error::NotGray(report.to_string()));
    }
    let n = g.length();
    let len = g.len();
    // odd lengths leave the wrap step with two changed bits
    let mut out = Code::with_capacity(2, n + 1, g.is_cyclic() && len % 2 == 0, 2 * len);
    let mut buf = vec![0u32; n + 1];
    for i in 0..2 * len {
        buf[..n].copy_from_slice(g.word(i / 2));
        buf[n] = u32::from(matches!(i % 4, 1 | 2));
        out.push_unchecked(&buf);
    }
    Ok(out)
}

/// Cyclic ordering of all `n`-bit words except `0^n` and `1^n` in which every
/// complementary pair is `2^{n-1} - 1` apart (`n` odd).
pub fn odd_missing_two(n: usize) -> Result<Code> {
    if n % 2 == 0 || n < 3 {
        return Err(invalid(format!("odd_missing_two needs odd n >= 3, got {n}")));
    }
    let g = ruskey_path(n - 2)?.into_code();
    let h = double_rev_ref(&g)?;
    let h1 = h.apply(&Transform::DropFirst)?;
    let mut code = h1.apply(&Transform::Prefix(0))?;
    code.extend(&h1.apply(&Transform::ComplementEach)?.apply(&Transform::Prefix(1))?)?;
    code.set_cyclic(true);
    Ok(code)
}

/// Cyclic ordering of all `n`-bit words (`n` odd) with every complementary
/// pair at separation `2^{n-1} - 1` or `2^{n-1} + 1`.
pub fn odd_all_words(n: usize) -> Result<Code> {
    if n % 2 == 0 || n < 3 {
        return Err(invalid(format!("odd_all_words needs odd n >= 3, got {n}")));
    }
    double_rev_ref(&complementary_even(n - 1)?)
}

/// Endpoint shape of a weight-monotone path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneVariant {
    /// `0^n -> 1^n`, `n` odd.
    Plain,
    /// `10^{n-1}, 0^n, ..., 1^n`, `n` even.
    Shifted,
}

const MONOTONE_BUDGET: u64 = 200_000_000;

/// A weight-monotone Hamilton path in the `n`-cube: for every `i < j`,
/// `weight(w_i) <= weight(w_j) + 1`.
///
/// The shifted variant also guarantees that, strictly between the first
/// weight-2 word containing position 1 and the final word, every position is
/// zero in some word. Found by depth-first search with level pruning.
pub fn monotone_gray(n: usize, variant: MonotoneVariant) -> Result<EndpointPath> {
    match variant {
        MonotoneVariant::Plain if n % 2 == 0 || n == 0 => {
            return Err(invalid(format!("plain monotone path needs odd n, got {n}")))
        }
        MonotoneVariant::Shifted if n % 2 == 1 || n < 2 => {
            return Err(invalid(format!("shifted monotone path needs even n >= 2, got {n}")))
        }
        _ => {}
    }
    if n > 12 {
        return Err(invalid("monotone search is limited to n <= 12"));
    }
    let full = (1u32 << n) - 1;
    let prefix: Vec<u32> = match variant {
        MonotoneVariant::Plain => vec![0],
        MonotoneVariant::Shifted => vec![1 << (n - 1), 0],
    };
    let mut search = MonotoneSearch::new(n, variant);
    let path = search.run(&prefix, full).ok_or(Error::SearchBudget)?;
    let mut code = Code::with_capacity(2, n, false, path.len());
    let mut buf = vec![0u32; n];
    for &v in &path {
        to_bits(v, &mut buf);
        code.push_unchecked(&buf);
    }
    let start = code.word(0).to_vec();
    EndpointPath::new(code, start, vec![1; n])
}

fn to_bits(v: u32, buf: &mut [u32]) {
    let n = buf.len();
    for (k, slot) in buf.iter_mut().enumerate() {
        *slot = (v >> (n - 1 - k)) & 1;
    }
}

struct MonotoneSearch {
    n: usize,
    variant: MonotoneVariant,
    visited: Vec<bool>,
    unvisited_at: Vec<usize>,
    nodes: u64,
}

impl MonotoneSearch {
    fn new(n: usize, variant: MonotoneVariant) -> Self {
        let mut unvisited_at = vec![0; n + 1];
        for v in 0u32..1 << n {
            unvisited_at[v.count_ones() as usize] += 1;
        }
        MonotoneSearch { n, variant, visited: vec![false; 1 << n], unvisited_at, nodes: 0 }
    }

    fn visit(&mut self, v: u32) {
        self.visited[v as usize] = true;
        self.unvisited_at[v.count_ones() as usize] -= 1;
    }

    fn unvisit(&mut self, v: u32) {
        self.visited[v as usize] = false;
        self.unvisited_at[v.count_ones() as usize] += 1;
    }

    fn lowest_open_level(&self) -> Option<usize> {
        self.unvisited_at.iter().position(|&c| c > 0)
    }

    fn onward(&self, v: u32) -> usize {
        (0..self.n).filter(|&b| !self.visited[(v ^ (1 << b)) as usize]).count()
    }

    fn run(&mut self, prefix: &[u32], target: u32) -> Option<Vec<u32>> {
        let mut path = Vec::with_capacity(1 << self.n);
        let mut max_weight = 0;
        for &v in prefix {
            self.visit(v);
            path.push(v);
            max_weight = max_weight.max(v.count_ones() as usize);
        }
        let total = 1usize << self.n;
        // each frame: candidates for the next vertex, cursor, running max weight
        let first = self.candidates(*path.last()?, max_weight, target, total, path.len());
        let mut stack: Vec<(Vec<u32>, usize, usize)> = vec![(first, 0, max_weight)];
        while let Some((cands, next, parent_max)) = stack.last_mut() {
            if path.len() == total && self.accept(&path) {
                return Some(path);
            }
            if *next >= cands.len() {
                stack.pop();
                if stack.is_empty() {
                    return None;
                }
                let v = path.pop().unwrap();
                self.unvisit(v);
                continue;
            }
            let v = cands[*next];
            *next += 1;
            let new_max = (*parent_max).max(v.count_ones() as usize);
            self.nodes += 1;
            if self.nodes > MONOTONE_BUDGET {
                return None;
            }
            self.visit(v);
            path.push(v);
            let ok = path.len() < total
                && self.lowest_open_level().map_or(true, |low| new_max <= low + 1);
            let cands = if ok {
                self.candidates(v, new_max, target, total, path.len())
            } else {
                Vec::new()
            };
            stack.push((cands, 0, new_max));
        }
        None
    }

    fn candidates(&self, v: u32, max_weight: usize, target: u32, total: usize, len: usize) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.n)
            .map(|b| v ^ (1 << b))
            .filter(|&u| !self.visited[u as usize])
            .filter(|&u| u.count_ones() as usize + 1 >= max_weight)
            .filter(|&u| u != target || len + 1 == total)
            .collect();
        out.sort_by_key(|&u| (u.count_ones(), self.onward(u), std::cmp::Reverse(u)));
        out
    }

    fn accept(&self, path: &[u32]) -> bool {
        match self.variant {
            MonotoneVariant::Plain => true,
            MonotoneVariant::Shifted => shifted_facts_hold(self.n, path),
        }
    }
}

/// Fact (b) of the shifted variant, on bitmask words (position 1 = MSB).
/// For `n = 2` the only candidate word is the final one, so (b) is vacuous.
fn shifted_facts_hold(n: usize, path: &[u32]) -> bool {
    if n == 2 {
        return path.last() == Some(&3);
    }
    let top = 1u32 << (n - 1);
    let Some(f) = path.iter().position(|&w| w.count_ones() == 2 && w & top != 0) else {
        return false;
    };
    let last = path.len() - 1;
    if f + 1 >= last {
        return false;
    }
    let zero_seen = path[f + 1..last].iter().fold(0u32, |acc, &w| acc | !w);
    zero_seen & ((1 << n) - 1) == (1 << n) - 1
}

/// Checks the monotone contract of a path (and, for the shifted variant,
/// the two structural facts). Returns the list of failed conditions.
pub fn monotone_violations(path: &Code, variant: MonotoneVariant) -> Vec<String> {
    let mut problems = Vec::new();
    if path.radix() != 2 || path.is_empty() {
        problems.push("not a non-empty binary code".to_string());
        return problems;
    }
    let n = path.length();
    let weights: Vec<usize> = path.words().map(crate::word::weight).collect();
    let mut max_so_far = 0;
    for (j, &w) in weights.iter().enumerate() {
        if j > 0 && max_so_far > w + 1 {
            problems.push(format!("weight drops to {w} at word {j} after weight {max_so_far}"));
        }
        max_so_far = max_so_far.max(w);
    }
    if path.last() != Some(vec![1; n].as_slice()) {
        problems.push("does not end at the all-ones word".into());
    }
    match variant {
        MonotoneVariant::Plain => {
            if path.first() != Some(vec![0; n].as_slice()) {
                problems.push("does not start at the zero word".into());
            }
        }
        MonotoneVariant::Shifted => {
            let mut e1 = vec![0; n];
            e1[0] = 1;
            if path.len() < 2 || path.word(0) != e1.as_slice() || path.word(1) != vec![0; n].as_slice() {
                problems.push(format!("does not start with {}, {}", render(2, &e1), "0".repeat(n)));
            }
            let words: Vec<u32> =
                path.words().map(|w| w.iter().fold(0u32, |acc, &b| (acc << 1) | b)).collect();
            if !shifted_facts_hold(n, &words) {
                problems.push("positions not all cleared after the first weight-2 word on position 1".into());
            }
        }
    }
    problems
}
