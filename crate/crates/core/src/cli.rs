//! Command-line front end: `generate`, `verify` and `info`.
//!
//! Exit codes: 0 success or PASS, 1 verification failure, 2 invalid
//! parameters or a code that cannot exist, 3 parse or I/O failure.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::binary::{complementary_even, odd_all_words, odd_missing_two};
use crate::code::Code;
use crate::combinations::{adjacent_transposition_combinations, choose, complementary_subsets, eades_mckay};
use crate::error::{Error, Result};
use crate::permutations::{multiset_cycle, reverse_code_spec, reverse_perm_code, sjt};
use crate::qary::{
    lee_separation_bounded, quasi_complementary_hamming, quasi_complementary_lee,
    quasi_complementary_lee_missing, MissingSet,
};
use crate::verify::{verify_code, CodeSpec, Metric, Pairing, Property, Report, Universe, Violation};
use crate::word::{render, Word};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Default for `GRAYCODE_MAX_WORDS`.
pub const DEFAULT_MAX_WORDS: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum FamilyId {
    BinaryComplementary,
    BinaryOddMissingTwo,
    BinaryOddAll,
    QaryLee,
    QaryLeeMissing,
    QaryLeeBounded,
    QaryHamming,
    SubsetsComplementary,
    SubsetsSmc,
    SubsetsAdjacent,
    PermReverse,
    PermSjt,
    MultisetCycle,
}

impl FamilyId {
    pub const ALL: [FamilyId; 13] = [
        FamilyId::BinaryComplementary,
        FamilyId::BinaryOddMissingTwo,
        FamilyId::BinaryOddAll,
        FamilyId::QaryLee,
        FamilyId::QaryLeeMissing,
        FamilyId::QaryLeeBounded,
        FamilyId::QaryHamming,
        FamilyId::SubsetsComplementary,
        FamilyId::SubsetsSmc,
        FamilyId::SubsetsAdjacent,
        FamilyId::PermReverse,
        FamilyId::PermSjt,
        FamilyId::MultisetCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::BinaryComplementary => "binary-complementary",
            FamilyId::BinaryOddMissingTwo => "binary-odd-missing-two",
            FamilyId::BinaryOddAll => "binary-odd-all",
            FamilyId::QaryLee => "qary-lee",
            FamilyId::QaryLeeMissing => "qary-lee-missing",
            FamilyId::QaryLeeBounded => "qary-lee-bounded",
            FamilyId::QaryHamming => "qary-hamming",
            FamilyId::SubsetsComplementary => "subsets-complementary",
            FamilyId::SubsetsSmc => "subsets-smc",
            FamilyId::SubsetsAdjacent => "subsets-adjacent",
            FamilyId::PermReverse => "perm-reverse",
            FamilyId::PermSjt => "perm-sjt",
            FamilyId::MultisetCycle => "multiset-cycle",
        }
    }

    /// Parameters the family reads.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            FamilyId::BinaryComplementary | FamilyId::BinaryOddMissingTwo | FamilyId::BinaryOddAll => &["n"],
            FamilyId::QaryLee | FamilyId::QaryLeeBounded | FamilyId::QaryHamming => &["q", "n"],
            FamilyId::QaryLeeMissing => &["q", "n", "anchor"],
            FamilyId::SubsetsComplementary => &["n"],
            FamilyId::SubsetsSmc => &["k", "m"],
            FamilyId::SubsetsAdjacent => &["m"],
            FamilyId::PermReverse | FamilyId::PermSjt | FamilyId::MultisetCycle => &["n"],
        }
    }

    /// The existence condition in words.
    pub fn condition(self) -> &'static str {
        match self {
            FamilyId::BinaryComplementary => "exists iff n is even",
            FamilyId::BinaryOddMissingTwo => "n odd, n >= 3; omits 0^n and 1^n",
            FamilyId::BinaryOddAll => "n odd, n >= 3",
            FamilyId::QaryLee => "q >= 2, n >= 1; exists iff n = 1, n is even or q is odd",
            FamilyId::QaryLeeMissing => "q even, q >= 4, n odd, n >= 3; omits anchor + i(1..1)",
            FamilyId::QaryLeeBounded => "q even, q >= 4, n odd, n >= 3",
            FamilyId::QaryHamming => "q >= 3, n >= 1",
            FamilyId::SubsetsComplementary => "n >= 1 (n-subsets of a 2n-set)",
            FamilyId::SubsetsSmc => "0 <= k <= m, 1 <= m <= 24",
            FamilyId::SubsetsAdjacent => "3-subsets of an m-set; exists for even m, none for odd m >= 5",
            FamilyId::PermReverse => "exists iff n <= 4 or n ≡ 0, 1 (mod 4)",
            FamilyId::PermSjt => "n >= 1",
            FamilyId::MultisetCycle => "n odd, n >= 3",
        }
    }

    pub fn construction(self) -> &'static str {
        match self {
            FamilyId::BinaryComplementary => {
                "suffix-recursive path on n-1 bits, prefixed by 0, then the same words complemented"
            }
            FamilyId::BinaryOddMissingTwo => {
                "double reflection of the path on n-2 bits minus its first word, prefixed by 0, then complemented"
            }
            FamilyId::BinaryOddAll => "double reflection of the complementary code on n-1 bits",
            FamilyId::QaryLee => "Lee path on n-1 digits repeated q times, block i shifted by i(1..1)",
            FamilyId::QaryLeeMissing => {
                "support expansion with the leading words relocated, repeated q times, translated to the anchor"
            }
            FamilyId::QaryLeeBounded => "last-digit sweep of the code on n-1 digits",
            FamilyId::QaryHamming => "Hamming path on n-1 digits repeated q times, block i shifted by i(1..1)",
            FamilyId::SubsetsComplementary => {
                "strong minimal change code for n-subsets of a (2n-1)-set, prefixed by 0, then complemented"
            }
            FamilyId::SubsetsSmc => "Eades-McKay recursion",
            FamilyId::SubsetsAdjacent => "Hamilton path search on the adjacent-interchange graph",
            FamilyId::PermReverse => {
                "plain changes (n <= 4), triple interleaving plus a graph path (n ≡ 0), insertion sweeps (n ≡ 1)"
            }
            FamilyId::PermSjt => "plain changes",
            FamilyId::MultisetCycle => "recursive splice of the cycle for n-2",
        }
    }
}

/// Family parameters as given on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Args)]
pub struct FamilyParams {
    /// Alphabet size.
    #[arg(long)]
    pub q: Option<u32>,
    /// Word length, or half the ground set for subsets-complementary.
    #[arg(long)]
    pub n: Option<usize>,
    /// Subset size.
    #[arg(long)]
    pub k: Option<usize>,
    /// Ground set size.
    #[arg(long)]
    pub m: Option<usize>,
    /// Anchor word for qary-lee-missing (digits); defaults to 0^n.
    #[arg(long)]
    pub anchor: Option<String>,
}

fn need<T: Copy>(value: Option<T>, name: &str, family: FamilyId) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{} needs --{name}", family.name())))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// What a valid parameter set produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Description {
    pub words: u128,
    pub radix: u32,
    pub length: usize,
    pub cyclic: bool,
    pub pairing: Option<(Pairing, Vec<usize>)>,
}

impl Description {
    pub fn summary(&self) -> String {
        let mut s = format!("{} words, {}", self.words, if self.cyclic { "cyclic" } else { "path" });
        if let Some((rule, seps)) = &self.pairing {
            let list: Vec<String> = seps.iter().map(usize::to_string).collect();
            let noun = if seps.len() == 1 { "separation" } else { "separations" };
            s.push_str(&format!(", {} at {noun} {}", rule.name(), list.join(", ")));
        }
        s
    }
}

fn pow(q: u32, n: usize) -> u128 {
    (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn as_sep(x: u128) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

/// Validates parameters against the family's existence conditions.
pub fn describe(family: FamilyId, p: &FamilyParams) -> Result<Description> {
    use FamilyId::*;
    let binary = |words: u128, cyclic, pairing| Description { words, radix: 2, length: 0, cyclic, pairing };
    let d = match family {
        BinaryComplementary => {
            let n = need(p.n, "n", family)?;
            if n == 0 {
                return Err(bad("n must be at least 1"));
            }
            if n % 2 == 1 {
                return Err(Error::Nonexistent(
                    "n odd: complementary binary code cannot exist".into(),
                ));
            }
            let len = pow(2, n);
            Description { length: n, ..binary(len, true, Some((Pairing::Complement, vec![as_sep(len / 2)]))) }
        }
        BinaryOddMissingTwo | BinaryOddAll => {
            let n = need(p.n, "n", family)?;
            if n % 2 == 0 || n < 3 {
                return Err(bad(format!("{} needs odd n >= 3, got {n}", family.name())));
            }
            let half = pow(2, n - 1);
            let (len, seps) = if family == BinaryOddAll {
                (2 * half, vec![as_sep(half - 1), as_sep(half + 1)])
            } else {
                (2 * half - 2, vec![as_sep(half - 1)])
            };
            Description { length: n, ..binary(len, true, Some((Pairing::Complement, seps))) }
        }
        QaryLee | QaryHamming | QaryLeeBounded | QaryLeeMissing => {
            let q = need(p.q, "q", family)?;
            let n = need(p.n, "n", family)?;
            if n == 0 {
                return Err(bad("n must be at least 1"));
            }
            let len = pow(q, n);
            let block = pow(q, n - 1);
            match family {
                QaryLee => {
                    if q < 2 {
                        return Err(bad("q must be at least 2"));
                    }
                    if n % 2 == 1 && n >= 3 && q % 2 == 0 {
                        return Err(Error::Nonexistent(
                            "does not exist in Lee metric; see qary-lee-missing / qary-hamming".into(),
                        ));
                    }
                }
                QaryHamming if q < 3 => {
                    return Err(bad("qary-hamming needs q >= 3; q = 2 is binary-complementary"));
                }
                QaryLeeBounded | QaryLeeMissing if q < 4 || q % 2 == 1 || n < 3 || n % 2 == 0 => {
                    return Err(bad(format!(
                        "{} needs even q >= 4 and odd n >= 3, got q = {q}, n = {n}",
                        family.name()
                    )));
                }
                _ => {}
            }
            let (words, seps) = match family {
                QaryLeeMissing => (len - q as u128, vec![as_sep(block - 1)]),
                QaryLeeBounded => {
                    let c = block;
                    let spread = q as u128 - 1;
                    let seps = (c - spread..=c + spread).filter(|&s| s != c).map(as_sep).collect();
                    (len, seps)
                }
                _ => (len, vec![as_sep(block)]),
            };
            Description { words, radix: q, length: n, cyclic: true, pairing: Some((Pairing::AddDiagonal(1), seps)) }
        }
        SubsetsComplementary => {
            let n = need(p.n, "n", family)?;
            if n == 0 {
                return Err(bad("n must be at least 1"));
            }
            let len = choose(2 * n, n) as u128;
            Description {
                length: 2 * n,
                ..binary(len, true, Some((Pairing::Complement, vec![as_sep(len / 2)])))
            }
        }
        SubsetsSmc => {
            let k = need(p.k, "k", family)?;
            let m = need(p.m, "m", family)?;
            if m == 0 || k > m || m > 24 {
                return Err(bad(format!("subsets-smc needs 0 <= k <= m <= 24, m >= 1, got k = {k}, m = {m}")));
            }
            Description { length: m, ..binary(choose(m, k) as u128, false, None) }
        }
        SubsetsAdjacent => {
            let m = need(p.m, "m", family)?;
            if m % 2 == 1 && m >= 5 {
                return Err(Error::Nonexistent(format!(
                    "m odd: no adjacent-interchange code for the 3-subsets of a {m}-set"
                )));
            }
            if m < 4 || m % 2 == 1 || m > 20 {
                return Err(bad(format!("subsets-adjacent needs even 4 <= m <= 20, got {m}")));
            }
            Description { length: m, ..binary(choose(m, 3) as u128, false, None) }
        }
        PermReverse | PermSjt => {
            let n = need(p.n, "n", family)?;
            if n == 0 {
                return Err(bad("n must be at least 1"));
            }
            if family == PermReverse && n > 4 && n % 4 >= 2 {
                return Err(Error::Nonexistent(format!("n ≡ {} (mod 4)", n % 4)));
            }
            let len = if n > 33 { u128::MAX } else { (1..=n as u128).product() };
            let pairing = (family == PermReverse && n >= 2).then(|| (Pairing::Reversal, vec![as_sep(len / 2)]));
            Description { words: len, radix: n as u32 + 1, length: n, cyclic: true, pairing }
        }
        MultisetCycle => {
            let n = need(p.n, "n", family)?;
            if n < 3 || n % 2 == 0 {
                return Err(bad(format!("multiset-cycle needs odd n >= 3, got {n}")));
            }
            Description { words: (n * (n - 1)) as u128, radix: 4, length: n, cyclic: true, pairing: None }
        }
    };
    Ok(d)
}

fn anchor_word(p: &FamilyParams, q: u32, n: usize) -> Result<Word> {
    match &p.anchor {
        None => Ok(Word::zeros(q, n)),
        Some(text) => {
            let digits = parse_word(text).map_err(bad)?;
            if digits.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: digits.len() });
            }
            Word::new(q, digits)
        }
    }
}

/// Builds the family's code; call [`describe`] first for size checks.
pub fn generate(family: FamilyId, p: &FamilyParams) -> Result<Code> {
    use FamilyId::*;
    describe(family, p)?;
    let n = p.n.unwrap_or(0);
    let q = p.q.unwrap_or(0);
    match family {
        BinaryComplementary => complementary_even(n),
        BinaryOddMissingTwo => odd_missing_two(n),
        BinaryOddAll => odd_all_words(n),
        QaryLee => quasi_complementary_lee(q, n),
        QaryLeeMissing => Ok(quasi_complementary_lee_missing(q, n, &anchor_word(p, q, n)?)?.0),
        QaryLeeBounded => lee_separation_bounded(q, n),
        QaryHamming => quasi_complementary_hamming(q, n),
        SubsetsComplementary => complementary_subsets(n),
        SubsetsSmc => eades_mckay(p.k.unwrap_or(0), p.m.unwrap_or(0)),
        SubsetsAdjacent => adjacent_transposition_combinations(p.m.unwrap_or(0)),
        PermReverse => reverse_perm_code(n),
        PermSjt => sjt(n),
        MultisetCycle => multiset_cycle(n),
    }
}

/// The property bundle every code of the family must satisfy.
pub fn family_spec(family: FamilyId, p: &FamilyParams) -> Result<CodeSpec> {
    use FamilyId::*;
    let d = describe(family, p)?;
    let n = d.length;
    let paired = |spec: CodeSpec| match &d.pairing {
        Some((rule, seps)) => spec.pairing(*rule, seps.iter().copied()),
        None => spec,
    };
    let spec = match family {
        BinaryComplementary | BinaryOddAll => paired(CodeSpec::new(Metric::Hamming).cyclic().complete()),
        BinaryOddMissingTwo => paired(
            CodeSpec::new(Metric::Hamming).cyclic().universe(Universe::AllExcept(vec![vec![0; n], vec![1; n]])),
        ),
        QaryLee | QaryLeeBounded => paired(CodeSpec::new(Metric::Lee).cyclic().complete()),
        QaryHamming => paired(CodeSpec::new(Metric::Hamming).cyclic().complete()),
        QaryLeeMissing => {
            let missing = MissingSet::new(anchor_word(p, d.radix, n)?);
            let words = missing.words.iter().map(|w| w.digits().to_vec()).collect();
            paired(CodeSpec::new(Metric::Lee).cyclic().universe(Universe::AllExcept(words)))
        }
        SubsetsComplementary => {
            paired(CodeSpec::new(Metric::ComplementarySmc).cyclic().universe(Universe::Weight(n / 2)))
        }
        SubsetsSmc | SubsetsAdjacent => {
            let k = if family == SubsetsSmc { p.k.unwrap_or(0) } else { 3 };
            let metric =
                if family == SubsetsSmc { Metric::StrongMinimalChange } else { Metric::AdjacentTransposition };
            let mut start = vec![0; n - k];
            start.extend(vec![1; k]);
            let mut end = vec![1; k];
            end.extend(vec![0; n - k]);
            CodeSpec::new(metric).universe(Universe::Weight(k)).endpoints(start, end)
        }
        PermReverse => reverse_code_spec(n),
        PermSjt => CodeSpec::new(Metric::AdjacentTransposition)
            .cyclic()
            .universe(Universe::Permutations)
            .starts_with((1..=n as u32).collect()),
        MultisetCycle => {
            let mut symbols = vec![3; n];
            symbols[0] = 1;
            symbols[1] = 2;
            CodeSpec::new(Metric::AdjacentTransposition).cyclic().universe(Universe::Multiset(symbols))
        }
    };
    Ok(spec)
}

/// Output layout of `generate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Digits concatenated (radix <= 10).
    Digits,
    /// Decimal digits separated by single spaces.
    Spaced,
}

fn default_format(family: FamilyId, radix: u32) -> Format {
    match family {
        FamilyId::PermReverse | FamilyId::PermSjt => Format::Spaced,
        _ if radix > 10 => Format::Spaced,
        _ => Format::Digits,
    }
}

/// Renders one word per line, each followed by a newline.
pub fn write_code(code: &Code, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let mut line = String::new();
    for w in code.words() {
        line.clear();
        match format {
            Format::Digits => {
                for &d in w {
                    line.push(char::from_digit(d, 10).expect("checked digit range"));
                }
            }
            Format::Spaced => {
                for (i, d) in w.iter().enumerate() {
                    if i > 0 {
                        line.push(' ');
                    }
                    line.push_str(&d.to_string());
                }
            }
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// A word in either layout: space-separated decimals, or one digit per
/// character.
pub fn parse_word(text: &str) -> std::result::Result<Vec<u32>, String> {
    let text = text.trim();
    if text.contains(char::is_whitespace) {
        text.split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| format!("not a number: {t:?}")))
            .collect()
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(|| format!("not a digit: {c:?}"))).collect()
    }
}

/// A code read from text, with the 1-based source line of every word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCode {
    pub code: Code,
    pub lines: Vec<usize>,
}

impl ParsedCode {
    /// Source line of word `i`, if the word exists.
    pub fn line(&self, i: usize) -> Option<usize> {
        self.lines.get(i).copied()
    }
}

/// Parses one word per line; blank lines and lines starting with `#` are
/// skipped. A line without spaces is one digit per character, except that
/// it is a single number when the radix exceeds 10 or the length is 1. The radix defaults to one more than the largest digit (at
/// least 2).
pub fn parse_code(
    text: &str,
    radix: Option<u32>,
    length: Option<usize>,
    cyclic: bool,
) -> std::result::Result<ParsedCode, String> {
    let mut words = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let single = radix.is_some_and(|q| q > 10) || length == Some(1);
        let w = if single && !t.contains(char::is_whitespace) {
            t.parse::<u32>().map(|d| vec![d]).map_err(|_| format!("line {}: not a number: {t:?}", i + 1))?
        } else {
            parse_word(t).map_err(|e| format!("line {}: {e}", i + 1))?
        };
        let expected = length.or_else(|| words.first().map(Vec::len));
        if let Some(len) = expected {
            if w.len() != len {
                return Err(format!("line {}: word has length {}, expected {len}", i + 1, w.len()));
            }
        }
        if let Some(q) = radix {
            if let Some(&d) = w.iter().find(|&&d| d >= q) {
                return Err(format!("line {}: digit {d} out of range for radix {q}", i + 1));
            }
        }
        words.push(w);
        lines.push(i + 1);
    }
    if words.is_empty() {
        return Err("no words".into());
    }
    let q = radix.unwrap_or_else(|| words.iter().flatten().copied().max().unwrap_or(0).max(1) + 1);
    let code = Code::from_words(q, cyclic, words).map_err(|e| e.to_string())?;
    Ok(ParsedCode { code, lines })
}

fn line_of(parsed: &ParsedCode, i: usize) -> String {
    match parsed.line(i) {
        Some(l) => l.to_string(),
        None => "end".into(),
    }
}

/// One human-readable line per violation, positions given as file lines.
pub fn describe_violation(parsed: &ParsedCode, v: &Violation) -> String {
    let q = parsed.code.radix();
    match v.property {
        Property::Duplicate => {
            let first = v.other.map(|o| line_of(parsed, o)).unwrap_or_default();
            format!(
                "duplicate word {} at lines {} and {}",
                render(q, parsed.code.word(v.index)),
                first,
                line_of(parsed, v.index)
            )
        }
        Property::Step | Property::WrapStep | Property::Separation => {
            let other = v.other.map(|o| line_of(parsed, o)).unwrap_or_default();
            format!("{} at lines {} and {}: {}", v.property, other, line_of(parsed, v.index), v.detail)
        }
        Property::Missing => format!("missing word {}", v.detail),
        Property::Length => format!("code length: {}", v.detail),
        _ => format!("{} at line {}: {}", v.property, line_of(parsed, v.index), v.detail),
    }
}

/// Full text printed by `verify`.
pub fn render_report(parsed: &ParsedCode, report: &Report) -> String {
    let mut out = String::new();
    if report.pass() {
        out.push_str(&format!("PASS ({} words)\n", parsed.code.len()));
    } else {
        out.push_str(&format!("FAIL ({} violations)\n", report.violation_count));
        for v in &report.violations {
            out.push_str(&describe_violation(parsed, v));
            out.push('\n');
        }
        let unlisted = report.violation_count - report.violations.len();
        if unlisted > 0 {
            out.push_str(&format!("... {unlisted} more\n"));
        }
    }
    if let Some(summary) = report.profile_summary() {
        out.push_str(&format!("separation profile: {summary}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Hamming,
    Lee,
    Transposition,
    Smc,
    Csmc,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Hamming => Metric::Hamming,
            MetricArg::Lee => Metric::Lee,
            MetricArg::Transposition => Metric::AdjacentTransposition,
            MetricArg::Smc => Metric::StrongMinimalChange,
            MetricArg::Csmc => Metric::ComplementarySmc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    Complement,
    Diagonal,
    Reversal,
}

#[derive(Debug, Parser)]
#[command(name = "compgray", version, about = "Generate and verify complementary Gray codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a code, one word per line.
    Generate(GenerateArgs),
    /// Check a code file against a property bundle.
    Verify(VerifyArgs),
    /// Show existence conditions and expected shape.
    Info(InfoArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyId,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file; `-` reads standard input.
    pub file: PathBuf,
    /// Take the whole property bundle from a family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyId>,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, value_enum, default_value = "hamming")]
    pub metric: MetricArg,
    #[arg(long)]
    pub radix: Option<u32>,
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub cyclic: bool,
    /// Every word of Z_q^n exactly once.
    #[arg(long)]
    pub complete: bool,
    /// all, weight=K, permutations or multiset=S1,S2,...
    #[arg(long)]
    pub universe: Option<String>,
    /// Word left out of the complete universe (repeatable).
    #[arg(long)]
    pub exclude: Vec<String>,
    #[arg(long, value_enum)]
    pub pairing: Option<PairingArg>,
    /// Step added to every digit by the diagonal pairing.
    #[arg(long, default_value_t = 1)]
    pub diagonal: u32,
    /// Allowed separations, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub separations: Vec<usize>,
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub end: Option<String>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[arg(long, value_enum)]
    pub family: FamilyId,
    #[command(flatten)]
    pub params: FamilyParams,
}

/// Reads `GRAYCODE_MAX_WORDS`.
pub fn max_words_from_env() -> std::result::Result<u128, String> {
    match std::env::var("GRAYCODE_MAX_WORDS") {
        Err(_) => Ok(DEFAULT_MAX_WORDS),
        Ok(v) => {
            let t = v.trim();
            let parsed = t.parse::<u128>().ok().or_else(|| {
                t.parse::<f64>().ok().filter(|x| x.is_finite() && *x >= 0.0).map(|x| x as u128)
            });
            parsed.ok_or_else(|| format!("GRAYCODE_MAX_WORDS is not a number: {v:?}"))
        }
    }
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match cli.command {
        Command::Generate(a) => cmd_generate(&a, stdout, stderr),
        Command::Verify(a) => cmd_verify(&a, stdout, stderr),
        Command::Info(a) => cmd_info(&a, stdout, stderr),
    }
}

fn cmd_generate(a: &GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let d = match describe(a.family, &a.params) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", a.family.name());
            return EXIT_INVALID;
        }
    };
    let cap = match max_words_from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return EXIT_INVALID;
        }
    };
    if d.words > cap {
        let _ = writeln!(stderr, "{}: {} words exceeds GRAYCODE_MAX_WORDS = {cap}", a.family.name(), d.words);
        return EXIT_INVALID;
    }
    let format = a.format.unwrap_or_else(|| default_format(a.family, d.radix));
    if format == Format::Digits && d.radix > 10 {
        let _ = writeln!(stderr, "digits format needs every symbol below 10; use --format spaced");
        return EXIT_INVALID;
    }
    let code = match generate(a.family, &a.params) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", a.family.name());
            return error_exit(&e);
        }
    };
    let written = match &a.out {
        None => {
            let mut w = BufWriter::new(stdout);
            write_code(&code, format, &mut w).and_then(|_| w.flush())
        }
        Some(path) => fs::File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_code(&code, format, &mut w)?;
            w.flush()
        }),
    };
    match written {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(stderr, "write failed: {e}");
            EXIT_IO
        }
    }
}

fn parse_universe(text: &str) -> std::result::Result<Universe, String> {
    let (head, tail) = text.split_once('=').unwrap_or((text, ""));
    match head {
        "all" => Ok(Universe::All),
        "permutations" => Ok(Universe::Permutations),
        "weight" => tail.parse().map(Universe::Weight).map_err(|_| format!("bad weight {tail:?}")),
        "multiset" => tail
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad symbol {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Universe::Multiset),
        _ => Err(format!("unknown universe {text:?}")),
    }
}

fn flag_spec(a: &VerifyArgs) -> std::result::Result<CodeSpec, String> {
    let mut spec = CodeSpec::new(a.metric.into());
    if a.cyclic {
        spec = spec.cyclic();
    }
    let mut universe = match &a.universe {
        Some(u) => Some(parse_universe(u)?),
        None if a.complete => Some(Universe::All),
        None => None,
    };
    if !a.exclude.is_empty() {
        let words = a.exclude.iter().map(|w| parse_word(w)).collect::<std::result::Result<Vec<_>, _>>()?;
        universe = match universe {
            None | Some(Universe::All) => Some(Universe::AllExcept(words)),
            Some(_) => return Err("--exclude only combines with the complete universe".into()),
        };
    }
    if let Some(u) = universe {
        spec = spec.universe(u);
    }
    if let Some(rule) = a.pairing {
        if a.separations.is_empty() {
            return Err("--pairing needs --separations".into());
        }
        let rule = match rule {
            PairingArg::Complement => Pairing::Complement,
            PairingArg::Diagonal => Pairing::AddDiagonal(a.diagonal),
            PairingArg::Reversal => Pairing::Reversal,
        };
        spec = spec.pairing(rule, a.separations.iter().copied());
    }
    if let Some(s) = &a.start {
        spec.start = Some(parse_word(s)?);
    }
    if let Some(e) = &a.end {
        spec.end = Some(parse_word(e)?);
    }
    Ok(spec)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let text = if a.file.as_os_str() == "-" {
        let mut s = String::new();
        io::Read::read_to_string(&mut io::stdin(), &mut s).map(|_| s)
    } else {
        fs::read_to_string(&a.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", a.file.display());
            return EXIT_IO;
        }
    };
    let (spec, radix, length) = match a.family {
        Some(f) => match (family_spec(f, &a.params), describe(f, &a.params)) {
            (Ok(s), Ok(d)) => (s, Some(d.radix), Some(d.length)),
            (Err(e), _) | (_, Err(e)) => {
                let _ = writeln!(stderr, "{}: {e}", f.name());
                return EXIT_INVALID;
            }
        },
        None => match flag_spec(a) {
            Ok(s) => (s, a.radix, a.length),
            Err(e) => {
                let _ = writeln!(stderr, "{e}");
                return EXIT_INVALID;
            }
        },
    };
    let parsed = match parse_code(&text, radix, length, spec.require_cyclic) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", a.file.display());
            return EXIT_IO;
        }
    };
    let report = match verify_code(&parsed.code, &spec) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return EXIT_INVALID;
        }
    };
    let _ = stdout.write_all(render_report(&parsed, &report).as_bytes());
    if report.pass() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_info(a: &InfoArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let f = a.family;
    let params: Vec<String> = f
        .parameters()
        .iter()
        .filter_map(|&name| {
            let v = match name {
                "q" => a.params.q.map(|x| x.to_string()),
                "n" => a.params.n.map(|x| x.to_string()),
                "k" => a.params.k.map(|x| x.to_string()),
                "m" => a.params.m.map(|x| x.to_string()),
                _ => a.params.anchor.clone(),
            };
            v.map(|v| format!("{name} = {v}"))
        })
        .collect();
    let mut out = String::new();
    if params.is_empty() {
        out.push_str(&format!("{}\n", f.name()));
    } else {
        out.push_str(&format!("{} ({})\n", f.name(), params.join(", ")));
    }
    out.push_str(&format!("condition: {}\n", f.condition()));
    out.push_str(&format!("construction: {}\n", f.construction()));
    let needed_missing = f.parameters().iter().any(|&name| match name {
        "q" => a.params.q.is_none(),
        "n" => a.params.n.is_none(),
        "k" => a.params.k.is_none(),
        "m" => a.params.m.is_none(),
        _ => false,
    });
    if !needed_missing {
        match describe(f, &a.params) {
            Ok(d) => out.push_str(&format!("{}\n", d.summary())),
            Err(Error::Nonexistent(msg)) if msg.starts_with("does not exist") => {
                out.push_str(&format!("{msg}\n"))
            }
            Err(e @ Error::Nonexistent(_)) => out.push_str(&format!("{e}\n")),
            Err(e) => {
                let _ = writeln!(stderr, "{}: {e}", f.name());
                return EXIT_INVALID;
            }
        }
    }
    let _ = stdout.write_all(out.as_bytes());
    EXIT_PASS
}

/// Distinct words of a parsed file that occur more than once.
pub fn duplicated_words(parsed: &ParsedCode) -> BTreeSet<String> {
    let mut seen = std::collections::HashSet::new();
    let q = parsed.code.radix();
    parsed.code.words().filter(|w| !seen.insert(w.to_vec())).map(|w| render(q, w)).collect()
}
