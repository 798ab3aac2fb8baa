//! Property checking for codes: minimal-change steps, completeness over a
//! universe of words, and pairing rules with their separation profile.
//!
//! The verifier is the single arbiter used by every generator test, the CLI
//! and the acceptance suite. It never trusts how a code was built.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::code::Code;
use crate::error::{invalid, Error, Result};
use crate::word::{hamming, lee, render};

/// The minimal-change relation required between consecutive words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    Lee,
    /// Two neighbouring, distinct entries are exchanged.
    AdjacentTransposition,
    /// Binary: two positions change and only zeros lie strictly between them.
    StrongMinimalChange,
    /// Binary: two positions change and the interior is all zeros or all ones.
    ComplementarySmc,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Lee => "lee",
            Metric::AdjacentTransposition => "transposition",
            Metric::StrongMinimalChange => "smc",
            Metric::ComplementarySmc => "csmc",
        }
    }

    /// Whether `a -> b` is a single minimal change under this metric.
    pub fn is_step(self, radix: u32, a: &[u32], b: &[u32]) -> bool {
        match self {
            Metric::Hamming => hamming(a, b) == 1,
            Metric::Lee => lee(radix, a, b) == 1,
            Metric::AdjacentTransposition => match changed_pair(a, b) {
                Some((i, j)) => j == i + 1,
                None => false,
            },
            Metric::StrongMinimalChange => match changed_pair(a, b) {
                Some((i, j)) => a[i + 1..j].iter().all(|&x| x == 0),
                None => false,
            },
            Metric::ComplementarySmc => match changed_pair(a, b) {
                Some((i, j)) => {
                    let inner = &a[i + 1..j];
                    inner.iter().all(|&x| x == 0) || inner.iter().all(|&x| x == 1)
                }
                None => false,
            },
        }
    }
}

/// Positions `i < j` if `b` is `a` with the distinct entries at `i` and `j`
/// exchanged.
fn changed_pair(a: &[u32], b: &[u32]) -> Option<(usize, usize)> {
    let mut diff = a.iter().zip(b).enumerate().filter(|(_, (x, y))| x != y).map(|(k, _)| k);
    let i = diff.next()?;
    let j = diff.next()?;
    if diff.next().is_some() {
        return None;
    }
    (a[i] == b[j] && a[j] == b[i]).then_some((i, j))
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a word is mapped to its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Binary complement.
    Complement,
    /// Add `k` to every digit, modulo the radix.
    AddDiagonal(u32),
    /// Left-right reversal of the word.
    Reversal,
}

impl Pairing {
    pub fn apply_into(self, radix: u32, w: &[u32], out: &mut Vec<u32>) {
        out.clear();
        match self {
            Pairing::Complement => out.extend(w.iter().map(|b| 1 - b)),
            Pairing::AddDiagonal(k) => out.extend(w.iter().map(|d| (d + k % radix) % radix)),
            Pairing::Reversal => out.extend(w.iter().rev()),
        }
    }

    pub fn apply(self, radix: u32, w: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(w.len());
        self.apply_into(radix, w, &mut out);
        out
    }

    pub fn name(self) -> String {
        match self {
            Pairing::Complement => "complement".into(),
            Pairing::AddDiagonal(1) => "diagonal".into(),
            Pairing::AddDiagonal(k) => format!("diagonal({k})"),
            Pairing::Reversal => "reversal".into(),
        }
    }
}

/// The multiset of words a complete code must list exactly once each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    /// Every word of `Z_q^n`.
    All,
    /// Every word of `Z_q^n` except the listed ones.
    AllExcept(Vec<Vec<u32>>),
    /// Binary words with exactly `k` ones.
    Weight(usize),
    /// Permutations of the symbols `1..=n`.
    Permutations,
    /// Distinct arrangements of the given multiset of symbols.
    Multiset(Vec<u32>),
    Explicit(Vec<Vec<u32>>),
}

impl Universe {
    /// All member words of length `n` over `Z_radix`, in rank order.
    pub fn enumerate(&self, radix: u32, n: usize) -> Result<Vec<Vec<u32>>> {
        let index = Index::build(self, radix, n)?;
        Ok((0..index.size())
            .filter(|&i| index.is_member(i))
            .map(|i| index.unrank(i, n))
            .collect())
    }
}

/// Dense ranking of a universe for a fixed word shape.
enum Index {
    MixedRadix { radix: u64, size: usize, excluded: BTreeSet<usize> },
    Weight { k: usize, size: usize, binom: Vec<Vec<u64>> },
    Permutation { size: usize },
    Table { map: HashMap<Vec<u32>, usize>, words: Vec<Vec<u32>> },
}

const MAX_UNIVERSE: u64 = 1 << 31;

impl Index {
    fn build(universe: &Universe, radix: u32, n: usize) -> Result<Index> {
        match universe {
            Universe::All | Universe::AllExcept(_) => {
                let size = u64::from(radix)
                    .checked_pow(n as u32)
                    .filter(|&s| s <= MAX_UNIVERSE)
                    .ok_or_else(|| invalid("universe too large to index"))?;
                let mut excluded = BTreeSet::new();
                if let Universe::AllExcept(ws) = universe {
                    for w in ws {
                        if w.len() != n || w.iter().any(|&d| d >= radix) {
                            return Err(invalid("excluded word has the wrong shape"));
                        }
                        excluded.insert(mixed_rank(u64::from(radix), w));
                    }
                }
                Ok(Index::MixedRadix { radix: u64::from(radix), size: size as usize, excluded })
            }
            Universe::Weight(k) => {
                if radix != 2 {
                    return Err(invalid("weight universe needs radix 2"));
                }
                if *k > n {
                    return Err(invalid("weight exceeds word length"));
                }
                let binom = binomials(n);
                let size = binom[n][*k] as usize;
                Ok(Index::Weight { k: *k, size, binom })
            }
            Universe::Permutations => {
                if n > 12 {
                    return Err(invalid("permutation universe too large to index"));
                }
                if radix <= n as u32 {
                    return Err(invalid("permutation symbols 1..=n need radix > n"));
                }
                Ok(Index::Permutation { size: (1..=n).product() })
            }
            Universe::Multiset(symbols) => {
                if symbols.len() != n {
                    return Err(invalid("multiset size differs from word length"));
                }
                let words = multiset_arrangements(symbols);
                Index::table(words)
            }
            Universe::Explicit(words) => Index::table(words.clone()),
        }
    }

    fn table(words: Vec<Vec<u32>>) -> Result<Index> {
        let mut map = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if map.insert(w.clone(), i).is_some() {
                return Err(invalid("explicit universe lists a word twice"));
            }
        }
        Ok(Index::Table { map, words })
    }

    fn size(&self) -> usize {
        match self {
            Index::MixedRadix { size, .. }
            | Index::Weight { size, .. }
            | Index::Permutation { size } => *size,
            Index::Table { words, .. } => words.len(),
        }
    }

    /// Number of members (excluded words are indexed but not members).
    fn members(&self) -> usize {
        match self {
            Index::MixedRadix { size, excluded, .. } => size - excluded.len(),
            _ => self.size(),
        }
    }

    fn is_member(&self, idx: usize) -> bool {
        match self {
            Index::MixedRadix { excluded, .. } => !excluded.contains(&idx),
            _ => true,
        }
    }

    fn rank(&self, w: &[u32]) -> Option<usize> {
        match self {
            Index::MixedRadix { radix, .. } => {
                if w.iter().any(|&d| u64::from(d) >= *radix) {
                    return None;
                }
                Some(mixed_rank(*radix, w))
            }
            Index::Weight { k, binom, .. } => {
                if w.iter().any(|&d| d > 1) || w.iter().filter(|&&d| d == 1).count() != *k {
                    return None;
                }
                // colex rank of the support
                let mut r = 0u64;
                let mut seen = 0;
                for (pos, &d) in w.iter().enumerate() {
                    if d == 1 {
                        seen += 1;
                        r += binom[pos][seen];
                    }
                }
                Some(r as usize)
            }
            Index::Permutation { .. } => perm_rank(w),
            Index::Table { map, .. } => map.get(w).copied(),
        }
    }

    fn unrank(&self, idx: usize, n: usize) -> Vec<u32> {
        match self {
            Index::MixedRadix { radix, .. } => {
                let mut out = vec![0; n];
                let mut x = idx as u64;
                for slot in out.iter_mut().rev() {
                    *slot = (x % radix) as u32;
                    x /= radix;
                }
                out
            }
            Index::Weight { k, binom, .. } => {
                let mut out = vec![0; n];
                let mut r = idx as u64;
                let mut remaining = *k;
                for pos in (0..n).rev() {
                    if remaining > 0 && binom[pos][remaining] <= r {
                        r -= binom[pos][remaining];
                        out[pos] = 1;
                        remaining -= 1;
                    }
                }
                out
            }
            Index::Permutation { .. } => perm_unrank(idx, n),
            Index::Table { words, .. } => words[idx].clone(),
        }
    }
}

fn mixed_rank(radix: u64, w: &[u32]) -> usize {
    w.iter().fold(0u64, |acc, &d| acc * radix + u64::from(d)) as usize
}

pub(crate) fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut b = vec![vec![0u64; n + 2]; n + 2];
    for i in 0..=n + 1 {
        b[i][0] = 1;
        for j in 1..=i {
            b[i][j] = b[i - 1][j - 1] + if j < i { b[i - 1][j] } else { 0 };
        }
    }
    b
}

/// Lehmer rank of a permutation of `1..=n`; `None` if `w` is not one.
pub(crate) fn perm_rank(w: &[u32]) -> Option<usize> {
    let n = w.len();
    let mut seen = 0u64;
    let mut rank = 0usize;
    for (i, &s) in w.iter().enumerate() {
        if s == 0 || s as usize > n || seen & (1 << s) != 0 {
            return None;
        }
        seen |= 1 << s;
        let smaller_right = w[i + 1..].iter().filter(|&&t| t < s).count();
        rank = rank * (n - i) + smaller_right;
    }
    Some(rank)
}

fn perm_unrank(mut idx: usize, n: usize) -> Vec<u32> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = idx % base;
        idx /= base;
    }
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    digits.iter().map(|&d| pool.remove(d)).collect()
}

/// All distinct arrangements of a multiset, in lexicographic order.
pub fn multiset_arrangements(symbols: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = symbols.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // standard next-permutation on a sorted multiset
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// A pairing rule with the set of admissible separations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSpec {
    pub rule: Pairing,
    pub separations: BTreeSet<usize>,
}

/// Declarative bundle of properties a code is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub metric: Metric,
    pub require_step_one: bool,
    pub require_cyclic: bool,
    pub universe: Option<Universe>,
    pub pairing: Option<PairingSpec>,
    pub start: Option<Vec<u32>>,
    pub end: Option<Vec<u32>>,
}

impl CodeSpec {
    pub fn new(metric: Metric) -> Self {
        CodeSpec {
            metric,
            require_step_one: true,
            require_cyclic: false,
            universe: None,
            pairing: None,
            start: None,
            end: None,
        }
    }

    pub fn cyclic(mut self) -> Self {
        self.require_cyclic = true;
        self
    }

    pub fn universe(mut self, u: Universe) -> Self {
        self.universe = Some(u);
        self
    }

    pub fn complete(self) -> Self {
        self.universe(Universe::All)
    }

    pub fn pairing(mut self, rule: Pairing, separations: impl IntoIterator<Item = usize>) -> Self {
        self.pairing = Some(PairingSpec { rule, separations: separations.into_iter().collect() });
        self
    }

    pub fn endpoints(mut self, start: Vec<u32>, end: Vec<u32>) -> Self {
        self.start = Some(start);
        self.end = Some(end);
        self
    }

    pub fn starts_with(mut self, start: Vec<u32>) -> Self {
        self.start = Some(start);
        self
    }
}

/// Which property a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Step,
    WrapStep,
    Start,
    End,
    Length,
    Outside,
    Duplicate,
    Missing,
    PairAbsent,
    Separation,
    Custom(&'static str),
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Step => "step",
            Property::WrapStep => "wrap step",
            Property::Start => "start word",
            Property::End => "end word",
            Property::Length => "code length",
            Property::Outside => "word outside universe",
            Property::Duplicate => "duplicate word",
            Property::Missing => "missing word",
            Property::PairAbsent => "paired word absent",
            Property::Separation => "separation",
            Property::Custom(name) => name,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed check. `index` (and `other`, when two words are involved)
/// are zero-based word positions in the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub index: usize,
    pub other: Option<usize>,
    pub detail: String,
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    /// The first recorded violations, in check order (capped).
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub separation_profile: Option<BTreeMap<usize, u64>>,
}

const MAX_RECORDED: usize = 256;

impl Report {
    pub fn pass(&self) -> bool {
        self.violation_count == 0
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn record(&mut self, property: Property, index: usize, other: Option<usize>, detail: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation { property, index, other, detail });
        }
    }

    pub fn has(&self, property: Property) -> bool {
        self.violations.iter().any(|v| v.property == property)
    }

    /// Merges the violations of `other` after those of `self`.
    pub fn merge(&mut self, other: Report) {
        let unrecorded = other.violation_count - other.violations.len();
        for v in other.violations {
            self.record(v.property, v.index, v.other, v.detail);
        }
        self.violation_count += unrecorded;
        if self.separation_profile.is_none() {
            self.separation_profile = other.separation_profile;
        }
    }

    /// Observed separations as a compact `value x count` list.
    pub fn profile_summary(&self) -> Option<String> {
        self.separation_profile.as_ref().map(|p| {
            p.iter().map(|(s, c)| format!("{s}x{c}")).collect::<Vec<_>>().join(" ")
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return f.write_str("PASS");
        }
        write!(f, "FAIL ({} violations)", self.violation_count)?;
        if let Some(v) = self.first() {
            write!(f, ": {} at word {}: {}", v.property, v.index, v.detail)?;
        }
        Ok(())
    }
}

fn check_spec(c: &Code, s: &CodeSpec) -> Result<()> {
    let q = c.radix();
    if matches!(s.metric, Metric::StrongMinimalChange | Metric::ComplementarySmc) && q != 2 {
        return Err(invalid(format!("metric {} needs radix 2", s.metric)));
    }
    for w in [&s.start, &s.end].into_iter().flatten() {
        if w.len() != c.length() {
            return Err(Error::LengthMismatch { expected: c.length(), found: w.len() });
        }
    }
    if let Some(p) = &s.pairing {
        if p.rule == Pairing::Complement && q != 2 {
            return Err(invalid("complement pairing needs radix 2"));
        }
        if p.separations.is_empty() {
            return Err(invalid("pairing needs a non-empty separation set"));
        }
        let n = c.len();
        if p.separations.iter().any(|&d| d == 0 || d >= n.max(1)) {
            return Err(invalid(format!("separations must lie in [1, {}]", n.saturating_sub(1))));
        }
    }
    Ok(())
}

/// Checks `c` against `s`: steps (with the wrap step iff cyclicity is
/// required), endpoints, completeness, then the pairing rule.
///
/// Property failures are reported in the returned [`Report`]; an error is
/// returned only when the spec cannot be applied to the code.
pub fn verify_code(c: &Code, s: &CodeSpec) -> Result<Report> {
    check_spec(c, s)?;
    let q = c.radix();
    let n = c.length();
    let len = c.len();
    let mut report = Report::default();

    if s.require_step_one {
        for i in 1..len {
            if !s.metric.is_step(q, c.word(i - 1), c.word(i)) {
                report.record(
                    Property::Step,
                    i,
                    Some(i - 1),
                    format!(
                        "{} -> {} is not a {} step",
                        render(q, c.word(i - 1)),
                        render(q, c.word(i)),
                        s.metric
                    ),
                );
            }
        }
        if s.require_cyclic && len > 1 && !s.metric.is_step(q, c.word(len - 1), c.word(0)) {
            report.record(
                Property::WrapStep,
                0,
                Some(len - 1),
                format!(
                    "{} -> {} is not a {} step",
                    render(q, c.word(len - 1)),
                    render(q, c.word(0)),
                    s.metric
                ),
            );
        }
    }

    if let Some(start) = &s.start {
        if c.first() != Some(start.as_slice()) {
            report.record(Property::Start, 0, None, format!("expected {}", render(q, start)));
        }
    }
    if let Some(end) = &s.end {
        if c.last() != Some(end.as_slice()) {
            report.record(
                Property::End,
                len.saturating_sub(1),
                None,
                format!("expected {}", render(q, end)),
            );
        }
    }

    // Position lookup by universe rank, shared with the pairing check.
    let mut positions: Option<(Index, Vec<usize>)> = None;
    if let Some(u) = &s.universe {
        let index = Index::build(u, q, n)?;
        let mut first_at = vec![usize::MAX; index.size()];
        for (i, w) in c.words().enumerate() {
            match index.rank(w) {
                Some(r) if index.is_member(r) => {
                    if first_at[r] == usize::MAX {
                        first_at[r] = i;
                    } else {
                        report.record(
                            Property::Duplicate,
                            i,
                            Some(first_at[r]),
                            format!("{} already listed", render(q, w)),
                        );
                    }
                }
                _ => report.record(Property::Outside, i, None, render(q, w)),
            }
        }
        for (r, &at) in first_at.iter().enumerate() {
            if at == usize::MAX && index.is_member(r) {
                let w = index.unrank(r, n);
                report.record(Property::Missing, len, None, render(q, &w));
            }
        }
        if len != index.members() {
            report.record(
                Property::Length,
                len,
                None,
                format!("{} words, universe has {}", len, index.members()),
            );
        }
        positions = Some((index, first_at));
    }

    if let Some(p) = &s.pairing {
        let lookup: Box<dyn Fn(&[u32]) -> Option<usize>> = match &positions {
            Some((index, first_at)) => Box::new(move |w: &[u32]| {
                index.rank(w).and_then(|r| first_at.get(r).copied()).filter(|&i| i != usize::MAX)
            }),
            None => {
                let mut map: HashMap<&[u32], usize> = HashMap::with_capacity(len);
                for (i, w) in c.words().enumerate() {
                    map.entry(w).or_insert(i);
                }
                Box::new(move |w: &[u32]| map.get(w).copied())
            }
        };
        let mut profile = BTreeMap::new();
        let mut buf = Vec::with_capacity(n);
        for (i, w) in c.words().enumerate() {
            p.rule.apply_into(q, w, &mut buf);
            let Some(j) = lookup(&buf) else {
                report.record(
                    Property::PairAbsent,
                    i,
                    None,
                    format!("{} of {} is not in the code", p.rule.name(), render(q, w)),
                );
                continue;
            };
            let sep = if s.require_cyclic || c.is_cyclic() {
                (j + len - i) % len
            } else {
                j.abs_diff(i)
            };
            *profile.entry(sep).or_insert(0u64) += 1;
            if !p.separations.contains(&sep) {
                report.record(
                    Property::Separation,
                    i,
                    Some(j),
                    format!("{} -> {} at separation {}", render(q, w), render(q, &buf), sep),
                );
            }
        }
        report.separation_profile = Some(profile);
    }

    Ok(report)
}

/// Multiset of forward separations from each word to its partner.
pub fn separation_profile(c: &Code, pairing: Pairing) -> Result<BTreeMap<usize, u64>> {
    if pairing == Pairing::Complement && c.radix() != 2 {
        return Err(Error::NotBinary);
    }
    let len = c.len();
    let mut at: HashMap<&[u32], usize> = HashMap::with_capacity(len);
    for (i, w) in c.words().enumerate() {
        at.entry(w).or_insert(i);
    }
    let mut profile = BTreeMap::new();
    let mut buf = Vec::new();
    for (i, w) in c.words().enumerate() {
        pairing.apply_into(c.radix(), w, &mut buf);
        let j = *at.get(buf.as_slice()).ok_or_else(|| {
            invalid(format!("paired word {} absent", render(c.radix(), &buf)))
        })?;
        let sep = if c.is_cyclic() { (j + len - i) % len } else { j.abs_diff(i) };
        *profile.entry(sep).or_insert(0) += 1;
    }
    Ok(profile)
}
