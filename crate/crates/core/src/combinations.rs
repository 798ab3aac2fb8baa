//! Gray codes for `k`-subsets in incidence-vector form.

use crate::code::{Code, Transform};
use crate::error::{invalid, Error, Result};
use crate::oracle::{hamilton_search, InstanceGraph, SearchMode, SearchOutcome};
use crate::verify::{binomials, Metric, Universe};

/// Strong minimal change code for the `k`-subsets of an `m`-set, from
/// `0^{m-k}1^k` to `1^k0^{m-k}`.
pub fn eades_mckay(k: usize, m: usize) -> Result<Code> {
    if m == 0 || k > m {
        return Err(invalid(format!("need 0 <= k <= m and m >= 1, got k = {k}, m = {m}")));
    }
    if m > 24 {
        return Err(invalid("eades_mckay is limited to m <= 24"));
    }
    let words = em_list(m, k);
    let mut code = Code::with_capacity(2, m, false, words.len());
    for w in &words {
        let mirrored: Vec<u32> = w.iter().rev().copied().collect();
        code.push_unchecked(&mirrored);
    }
    Ok(code)
}

/// `E(n,k) = E(n-1,k)0, E(n-2,k-1)^R 01, E(n-2,k-2)11`, from `1^k0^{n-k}`
/// to `0^{n-k}1^k`.
fn em_list(n: usize, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![0; n]];
    }
    if k == n {
        return vec![vec![1; n]];
    }
    let mut out: Vec<Vec<u32>> = em_list(n - 1, k)
        .into_iter()
        .map(|mut w| {
            w.push(0);
            w
        })
        .collect();
    if n >= 2 && k - 1 <= n - 2 {
        out.extend(em_list(n - 2, k - 1).into_iter().rev().map(|mut w| {
            w.extend([0, 1]);
            w
        }));
    }
    if n >= 2 && k >= 2 {
        out.extend(em_list(n - 2, k - 2).into_iter().map(|mut w| {
            w.extend([1, 1]);
            w
        }));
    }
    out
}

/// Cyclic code of the `n`-subsets of a `2n`-set in which consecutive subsets
/// differ by a complementary strong minimal change and word `i + C(2n,n)/2`
/// is the complement of word `i`.
pub fn complementary_subsets(n: usize) -> Result<Code> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let first = eades_mckay(n, 2 * n - 1)?.apply(&Transform::Suffix(0))?;
    let mut code = first.clone();
    code.extend(&first.apply(&Transform::ComplementEach)?)?;
    let mut code = code.apply(&Transform::ReverseEachWord)?;
    code.set_cyclic(true);
    Ok(code)
}

const ADJACENT_BUDGET: u64 = 50_000_000;

/// Path through the 3-subsets of an `m`-set (`m` even) in which each step
/// moves one element to a neighbouring position, from `0^{m-3}111` to
/// `1110^{m-3}`.
pub fn adjacent_transposition_combinations(m: usize) -> Result<Code> {
    if m < 4 || m % 2 == 1 {
        return Err(invalid(format!(
            "adjacent-interchange 3-subset codes need even m >= 4, got {m}"
        )));
    }
    if m > 20 {
        return Err(invalid("adjacent_transposition_combinations is limited to m <= 20"));
    }
    let mut start = vec![0u32; m];
    start[m - 3..].fill(1);
    let mut end = vec![0u32; m];
    end[..3].fill(1);
    let g = InstanceGraph::for_metric(2, m, &Universe::Weight(3), Metric::AdjacentTransposition)?
        .anchored(Some(&start), Some(&end))?;
    let path = match hamilton_search(&g, SearchMode::Path, ADJACENT_BUDGET)? {
        SearchOutcome::Found(p) => p,
        SearchOutcome::Exhausted => return Err(Error::Internal("no adjacent-interchange path".into())),
        SearchOutcome::BudgetExceeded => return Err(Error::SearchBudget),
    };
    g.to_code(2, &path, false)
}

/// Renders an incidence vector as its elements in ascending order
/// (1-based), e.g. `011100` as `234`.
pub fn render_subset(incidence: &[u32]) -> String {
    let elems: Vec<String> = incidence
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if incidence.len() <= 9 {
        elems.concat()
    } else {
        elems.join(" ")
    }
}

/// Inverse of [`render_subset`] for an `m`-set.
pub fn parse_subset(text: &str, m: usize) -> Result<Vec<u32>> {
    let elems: Vec<usize> = if text.contains(char::is_whitespace) || m > 9 {
        text.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| invalid(format!("bad element {t:?}"))))
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| invalid(format!("bad element {c:?}"))))
            .collect::<Result<_>>()?
    };
    let mut out = vec![0u32; m];
    for e in elems {
        if e == 0 || e > m {
            return Err(invalid(format!("element {e} outside 1..={m}")));
        }
        if out[e - 1] == 1 {
            return Err(invalid(format!("element {e} repeated")));
        }
        out[e - 1] = 1;
    }
    Ok(out)
}

/// `C(m, k)`.
pub fn choose(m: usize, k: usize) -> u64 {
    if k > m {
        0
    } else {
        binomials(m)[m][k]
    }
}
