//! Brute-force Hamilton path and cycle search on small instance graphs, and
//! exhaustive spot checks of the nonexistence claims.

use std::fmt;

use crate::code::Code;
use crate::error::{invalid, Result};
use crate::verify::{Metric, Pairing, Universe};
use crate::word::render;

/// Default cap on the number of vertices accepted by [`hamilton_search`].
pub const DEFAULT_VERTEX_BOUND: usize = 5_000;

/// Default cap on search nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// A finite graph on labelled vertices with optional anchors and a pairing
/// constraint.
#[derive(Debug, Clone)]
pub struct InstanceGraph {
    pub labels: Vec<Vec<u32>>,
    pub adj: Vec<Vec<usize>>,
    pub start: Option<usize>,
    pub end: Option<usize>,
    /// `partner[v]` must sit exactly `separation` places after `v`
    /// (cyclically in cycle mode).
    pub pairing: Option<(Vec<usize>, usize)>,
}

impl InstanceGraph {
    /// Builds the graph on `labels` with an edge wherever `adjacent` holds.
    /// Neighbour lists are sorted by label index.
    pub fn from_predicate(labels: Vec<Vec<u32>>, adjacent: impl Fn(&[u32], &[u32]) -> bool) -> Self {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(&labels[i], &labels[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        InstanceGraph { labels, adj, start: None, end: None, pairing: None }
    }

    /// The step graph of `metric` on the words of `universe` over `Z_q^n`.
    pub fn for_metric(q: u32, n: usize, universe: &Universe, metric: Metric) -> Result<Self> {
        let labels = universe.enumerate(q, n)?;
        Ok(Self::from_predicate(labels, |a, b| metric.is_step(q, a, b)))
    }

    pub fn vertex(&self, label: &[u32]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn anchored(mut self, start: Option<&[u32]>, end: Option<&[u32]>) -> Result<Self> {
        self.start = start.map(|s| self.vertex(s).ok_or_else(|| invalid("start anchor is not a vertex"))).transpose()?;
        self.end = end.map(|e| self.vertex(e).ok_or_else(|| invalid("end anchor is not a vertex"))).transpose()?;
        Ok(self)
    }

    /// Requires `rule(v)` to appear `separation` places after `v`.
    pub fn paired(mut self, q: u32, rule: Pairing, separation: usize) -> Result<Self> {
        let partner = self
            .labels
            .iter()
            .map(|l| {
                let image = rule.apply(q, l);
                self.vertex(&image).ok_or_else(|| invalid("pairing leaves the vertex set"))
            })
            .collect::<Result<Vec<_>>>()?;
        self.pairing = Some((partner, separation));
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Proper 2-colouring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.len()];
        for root in 0..self.len() {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Converts a vertex sequence back into a code.
    pub fn to_code(&self, q: u32, order: &[usize], cyclic: bool) -> Result<Code> {
        Code::from_words(q, cyclic, order.iter().map(|&v| &self.labels[v]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<usize>),
    /// The whole search space was explored without a witness.
    Exhausted,
    /// The node budget ran out; nothing is known.
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Depth-first Hamilton search with fewest-onward-moves ordering and
/// dead-end pruning: an unvisited vertex left with a single free neighbour
/// must be the final vertex.
pub fn hamilton_search(g: &InstanceGraph, mode: SearchMode, budget: u64) -> Result<SearchOutcome> {
    hamilton_search_bounded(g, mode, budget, DEFAULT_VERTEX_BOUND)
}

pub fn hamilton_search_bounded(
    g: &InstanceGraph,
    mode: SearchMode,
    budget: u64,
    vertex_bound: usize,
) -> Result<SearchOutcome> {
    let total = g.len();
    if total > vertex_bound {
        return Err(invalid(format!("{total} vertices exceeds the bound {vertex_bound}")));
    }
    if total == 0 {
        return Ok(SearchOutcome::Exhausted);
    }
    if mode == SearchMode::Cycle && g.end.is_some() {
        return Err(invalid("cycle search takes no end anchor"));
    }
    if let Some((_, s)) = &g.pairing {
        if *s == 0 || *s >= total {
            return Err(invalid("pairing separation outside 1..N-1"));
        }
    }
    let starts: Vec<usize> = match (g.start, mode) {
        (Some(s), _) => vec![s],
        // a cycle may be rotated to start anywhere
        (None, SearchMode::Cycle) => vec![0],
        (None, SearchMode::Path) => (0..total).collect(),
    };
    let mut search = Search::new(g, mode);
    for s in starts {
        match search.run(s, budget) {
            SearchOutcome::Exhausted => continue,
            other => return Ok(other),
        }
    }
    Ok(SearchOutcome::Exhausted)
}

struct Search<'a> {
    g: &'a InstanceGraph,
    mode: SearchMode,
    visited: Vec<bool>,
    free: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a InstanceGraph, mode: SearchMode) -> Self {
        let free = g.adj.iter().map(Vec::len).collect();
        Search { g, mode, visited: vec![false; g.len()], free, nodes: 0 }
    }

    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        for &u in &self.g.adj[v] {
            self.free[u] -= 1;
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.visited[v] = false;
        for &u in &self.g.adj[v] {
            self.free[u] += 1;
        }
    }

    /// Whether `w` may end the path.
    fn may_end(&self, w: usize, first: usize) -> bool {
        match self.mode {
            SearchMode::Path => self.g.end.map_or(true, |e| e == w),
            SearchMode::Cycle => self.g.has_edge(w, first),
        }
    }

    fn run(&mut self, first: usize, budget: u64) -> SearchOutcome {
        let total = self.g.len();
        let mut path = vec![first];
        self.visit(first);
        if total == 1 {
            let ok = self.complete(&path);
            self.unvisit(first);
            return if ok { SearchOutcome::Found(path) } else { SearchOutcome::Exhausted };
        }
        let mut stack = vec![(self.candidates(&path), 0usize)];
        while let Some((cands, cursor)) = stack.last_mut() {
            if *cursor >= cands.len() {
                stack.pop();
                let v = path.pop().unwrap();
                self.unvisit(v);
                continue;
            }
            let u = cands[*cursor];
            *cursor += 1;
            self.nodes += 1;
            if self.nodes > budget {
                for &v in &path {
                    self.unvisit(v);
                }
                return SearchOutcome::BudgetExceeded;
            }
            let head = *path.last().unwrap();
            self.visit(u);
            path.push(u);
            if path.len() == total {
                if self.complete(&path) {
                    let witness = path.clone();
                    for &v in &path {
                        self.unvisit(v);
                    }
                    return SearchOutcome::Found(witness);
                }
                path.pop();
                self.unvisit(u);
                continue;
            }
            if self.dead_end(head, u, first) {
                path.pop();
                self.unvisit(u);
                continue;
            }
            let next = self.candidates(&path);
            stack.push((next, 0));
        }
        SearchOutcome::Exhausted
    }

    fn complete(&self, path: &[usize]) -> bool {
        let total = path.len();
        let first = path[0];
        let last = path[total - 1];
        if self.mode == SearchMode::Path {
            if let Some(e) = self.g.end {
                if e != last {
                    return false;
                }
            }
        } else if total > 1 && !self.g.has_edge(last, first) {
            return false;
        }
        if let Some((partner, s)) = &self.g.pairing {
            for (i, &v) in path.iter().enumerate() {
                let j = i + s;
                let j = match self.mode {
                    SearchMode::Cycle => j % total,
                    SearchMode::Path if j < total => j,
                    SearchMode::Path => continue,
                };
                if path[j] != partner[v] {
                    return false;
                }
            }
        }
        true
    }

    /// After moving from `head` to `u`: some vertex has no way in, or a
    /// vertex other than a legal final vertex is left with one way in.
    fn dead_end(&self, head: usize, u: usize, first: usize) -> bool {
        for &w in &self.g.adj[head] {
            if self.visited[w] {
                continue;
            }
            let avail = self.free[w] + usize::from(self.g.has_edge(w, u));
            if avail == 0 || (avail == 1 && !self.g.has_edge(w, u) && !self.may_end(w, first)) {
                return true;
            }
        }
        let forced = self.g.adj[u]
            .iter()
            .filter(|&&w| !self.visited[w] && self.free[w] == 0 && !self.may_end(w, first))
            .count();
        forced > 1
    }

    fn candidates(&self, path: &[usize]) -> Vec<usize> {
        let total = self.g.len();
        let head = *path.last().unwrap();
        let len = path.len();
        if let Some((partner, s)) = &self.g.pairing {
            if len >= *s {
                let want = partner[path[len - s]];
                let ok = !self.visited[want] && self.g.has_edge(head, want);
                return if ok { vec![want] } else { Vec::new() };
            }
        }
        let mut out: Vec<usize> = self.g.adj[head]
            .iter()
            .copied()
            .filter(|&u| !self.visited[u])
            .filter(|&u| self.mode == SearchMode::Cycle || self.g.end != Some(u) || len + 1 == total)
            .filter(|&u| match &self.g.pairing {
                // a partner placed too early breaks the constraint
                Some((partner, s)) => {
                    let p = partner[u];
                    p == u || !self.visited[p] || (len >= *s && path[len - s] == p)
                }
                None => true,
            })
            .collect();
        out.sort_by_key(|&u| (self.free[u], u));
        out
    }
}

/// One line per exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub name: String,
    pub expected: bool,
    pub observed: Option<bool>,
}

impl SpotCheck {
    pub fn agrees(&self) -> bool {
        self.observed == Some(self.expected)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpotReport {
    pub checks: Vec<SpotCheck>,
}

impl SpotReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(SpotCheck::agrees)
    }
}

impl fmt::Display for SpotReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let observed = match c.observed {
                Some(true) => "exists",
                Some(false) => "none",
                None => "unknown",
            };
            let expected = if c.expected { "exists" } else { "none" };
            writeln!(
                f,
                "{} {}: expected {expected}, observed {observed}",
                if c.agrees() { "ok  " } else { "FAIL" },
                c.name
            )?;
        }
        Ok(())
    }
}

fn outcome_bit(o: &SearchOutcome) -> Option<bool> {
    match o {
        SearchOutcome::Found(_) => Some(true),
        SearchOutcome::Exhausted => Some(false),
        SearchOutcome::BudgetExceeded => None,
    }
}

/// Complementary cyclic binary code on `n` bits, by exhaustive search.
pub fn complementary_binary_exists(n: usize) -> Result<Option<bool>> {
    let g = InstanceGraph::for_metric(2, n, &Universe::All, Metric::Hamming)?
        .paired(2, Pairing::Complement, 1 << (n - 1))?;
    Ok(outcome_bit(&hamilton_search(&g, SearchMode::Cycle, DEFAULT_NODE_BUDGET)?))
}

/// Runs the fixed battery of small existence and nonexistence checks.
pub fn nonexistence_spot_checks() -> Result<SpotReport> {
    let mut report = SpotReport::default();
    report.checks.push(SpotCheck {
        name: "complementary binary cycle, n = 3".into(),
        expected: false,
        observed: complementary_binary_exists(3)?,
    });
    report.checks.push(SpotCheck {
        name: "complementary binary cycle, n = 2".into(),
        expected: true,
        observed: complementary_binary_exists(2)?,
    });
    report.checks.push(SpotCheck {
        name: "complementary binary cycle, n = 4".into(),
        expected: true,
        observed: complementary_binary_exists(4)?,
    });
    let torus = InstanceGraph::for_metric(4, 3, &Universe::All, Metric::Lee)?;
    report.checks.push(SpotCheck {
        name: "Lee graph on Z_4^3 is bipartite".into(),
        expected: true,
        observed: Some(torus.two_coloring().is_some()),
    });
    // 000 and 111 differ in colour, yet sit q^{n-1} = 16 (even) steps apart
    let color = torus.two_coloring().unwrap_or_default();
    let zero = torus.vertex(&[0, 0, 0]);
    let ones = torus.vertex(&[1, 1, 1]);
    let separation = 4usize.pow(3 - 1);
    let parity_mismatch = match (zero, ones) {
        (Some(a), Some(b)) if !color.is_empty() => color[a] != color[b] && separation % 2 == 0,
        _ => false,
    };
    report.checks.push(SpotCheck {
        name: "Z_4^3: 000 and 111 have opposite colours at even separation 16".into(),
        expected: true,
        observed: Some(parity_mismatch),
    });
    let q2 = InstanceGraph::for_metric(2, 2, &Universe::All, Metric::Hamming)?
        .anchored(Some(&[0, 0]), Some(&[1, 1]))?;
    report.checks.push(SpotCheck {
        name: "Hamilton path 00 -> 11 in Q_2".into(),
        expected: false,
        observed: outcome_bit(&hamilton_search(&q2, SearchMode::Path, DEFAULT_NODE_BUDGET)?),
    });
    let q3 = InstanceGraph::for_metric(2, 3, &Universe::All, Metric::Hamming)?
        .anchored(Some(&[0, 0, 0]), Some(&[1, 1, 1]))?;
    report.checks.push(SpotCheck {
        name: "Hamilton path 000 -> 111 in Q_3".into(),
        expected: true,
        observed: outcome_bit(&hamilton_search(&q3, SearchMode::Path, DEFAULT_NODE_BUDGET)?),
    });
    Ok(report)
}

/// Renders a witness one label per line.
pub fn render_witness(g: &InstanceGraph, q: u32, order: &[usize]) -> Vec<String> {
    order.iter().map(|&v| render(q, &g.labels[v])).collect()
}
