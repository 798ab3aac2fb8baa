//! The graph on the positions of the two largest symbols that finishes the
//! `n ≡ 0 (mod 4)` reverse code.

use std::fmt;

use crate::error::{invalid, Result};

/// `y` is the position of `n-1`, `z` the position of `n` (both 1-based),
/// and `b = 0` iff `n-2` precedes `n-3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaVertex {
    pub y: u32,
    pub z: u32,
    pub b: u8,
}

impl GammaVertex {
    pub const fn new(y: u32, z: u32, b: u8) -> Self {
        GammaVertex { y, z, b }
    }

    pub fn is_valid(&self, n: u32) -> bool {
        self.y != self.z && (1..=n).contains(&self.y) && (1..=n).contains(&self.z) && self.b <= 1
    }

    fn shifted(self, by: u32) -> Self {
        GammaVertex::new(self.y + by, self.z + by, self.b)
    }
}

impl fmt::Display for GammaVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.y, self.z, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    pub n: u32,
    pub vertices: Vec<GammaVertex>,
}

impl GammaGraph {
    pub fn has_vertex(&self, v: GammaVertex) -> bool {
        v.is_valid(self.n)
    }

    pub fn has_edge(&self, a: GammaVertex, c: GammaVertex) -> bool {
        gamma_edge(self.n, a, c)
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for (i, &a) in self.vertices.iter().enumerate() {
            for &c in &self.vertices[i + 1..] {
                count += usize::from(self.has_edge(a, c));
            }
        }
        count
    }
}

/// Whether `n-2` and `n-3` may be exchanged with `n-1` at `y` and `n` at `z`.
pub fn b_flip_allowed(y: u32, z: u32) -> bool {
    (y != 2 && z != 2 && !matches!((y, z), (1, 3) | (3, 1))) || matches!((y, z), (1, 2) | (2, 1))
}

pub fn gamma_edge(n: u32, a: GammaVertex, c: GammaVertex) -> bool {
    if !a.is_valid(n) || !c.is_valid(n) || a == c {
        return false;
    }
    if a.y == c.y && a.z == c.z {
        return b_flip_allowed(a.y, a.z);
    }
    if a.b != c.b {
        return false;
    }
    let slide = (a.z == c.z && a.y.abs_diff(c.y) == 1) || (a.y == c.y && a.z.abs_diff(c.z) == 1);
    let swap = a.y == c.z && a.z == c.y && a.y.abs_diff(a.z) == 1;
    slide || swap
}

/// All `2n(n-1)` vertices, sorted.
pub fn gamma_graph(n: u32) -> Result<GammaGraph> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("gamma graph needs even n >= 2, got {n}")));
    }
    let mut vertices = Vec::with_capacity((2 * n * (n - 1)) as usize);
    for y in 1..=n {
        for z in 1..=n {
            if y != z {
                for b in 0..2 {
                    vertices.push(GammaVertex::new(y, z, b));
                }
            }
        }
    }
    Ok(GammaGraph { n, vertices })
}

const fn v(y: u32, z: u32, b: u8) -> GammaVertex {
    GammaVertex::new(y, z, b)
}

const GAMMA_2: [GammaVertex; 4] = [v(2, 1, 1), v(1, 2, 1), v(1, 2, 0), v(2, 1, 0)];

const GAMMA_4: [GammaVertex; 24] = [
    v(4, 3, 1), v(4, 3, 0), v(4, 2, 0), v(4, 2, 1), v(3, 2, 1), v(2, 3, 1), v(2, 3, 0), v(3, 2, 0),
    v(3, 1, 0), v(4, 1, 0), v(4, 1, 1), v(3, 1, 1), v(2, 1, 1), v(1, 2, 1), v(1, 3, 1), v(1, 4, 1),
    v(2, 4, 1), v(3, 4, 1), v(3, 4, 0), v(2, 4, 0), v(1, 4, 0), v(1, 3, 0), v(1, 2, 0), v(2, 1, 0),
];

/// Path through every vertex of `Γ_n` from `(n, n-1, 1)` to `(2, 1, 0)`.
///
/// For `n = 4` this is the listed pseudo-path, which uses a non-edge of
/// `Γ_4` but is valid once embedded in a larger graph.
pub fn gamma_path(n: u32) -> Result<Vec<GammaVertex>> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("gamma path needs even n >= 2, got {n}")));
    }
    match n {
        2 => return Ok(GAMMA_2.to_vec()),
        4 => return Ok(GAMMA_4.to_vec()),
        _ => {}
    }
    let mut p = Vec::with_capacity((2 * n * (n - 1)) as usize);
    if n == 6 {
        p.extend([
            v(6, 5, 1), v(5, 6, 1), v(5, 6, 0), v(6, 5, 0), v(6, 4, 0), v(6, 4, 1), v(5, 4, 1),
            v(5, 4, 0), v(5, 3, 0), v(5, 3, 1),
        ]);
    } else {
        p.extend([
            v(n, n - 1, 1), v(n - 1, n, 1), v(n - 1, n, 0), v(n, n - 1, 0), v(n, n - 2, 0),
            v(n - 1, n - 2, 0), v(n - 1, n - 3, 0), v(n, n - 3, 0), v(n, n - 3, 1), v(n, n - 2, 1),
            v(n - 1, n - 2, 1), v(n - 1, n - 3, 1),
        ]);
    }
    // inner copy runs (n-2, n-3, 1) -> (4, 3, 0)
    p.extend(gamma_path(n - 4)?.into_iter().map(|x| x.shifted(2)));
    if n == 6 {
        p.extend([v(4, 2, 0), v(5, 2, 0), v(6, 2, 0), v(6, 3, 0), v(6, 3, 1), v(6, 2, 1)]);
        p.extend([v(5, 2, 1), v(4, 2, 1), v(3, 2, 1)]);
    } else {
        p.extend((4..=n).map(|y| v(y, 2, 0)));
        p.extend((3..=n - 4).map(|z| v(n, z, 0)));
        p.extend((3..=n - 4).rev().map(|z| v(n - 1, z, 0)));
        p.extend((3..=n - 4).map(|z| v(n - 1, z, 1)));
        p.extend((2..=n - 4).rev().map(|z| v(n, z, 1)));
        p.extend((3..=n - 1).rev().map(|y| v(y, 2, 1)));
    }
    p.extend((3..=n).map(|z| v(2, z, 1)));
    p.extend((3..=n - 2).map(|y| v(y, n, 1)));
    p.extend((3..=n - 2).rev().map(|y| v(y, n - 1, 1)));
    p.extend((3..=n - 2).map(|y| v(y, n - 1, 0)));
    p.extend((2..=n - 2).rev().map(|y| v(y, n, 0)));
    p.extend((3..=n - 1).rev().map(|z| v(2, z, 0)));
    p.extend([v(3, 2, 0)]);
    p.extend((3..=n).map(|y| v(y, 1, 0)));
    p.extend((2..=n).rev().map(|y| v(y, 1, 1)));
    p.extend((2..=n).map(|z| v(1, z, 1)));
    p.extend((2..=n).rev().map(|z| v(1, z, 0)));
    p.push(v(2, 1, 0));
    Ok(p)
}

/// The permutation (symbols `1..=n`) encoded by a vertex: `n-1` at `y`, `n`
/// at `z`, the pair `n-2, n-3` (ordered by `b`) in the two leftmost free
/// positions and `n-4, ..., 3, 1, 2` in the rest.
pub fn gamma_vertex_to_permutation(vx: GammaVertex, n: u32) -> Result<Vec<u32>> {
    if n < 4 || !vx.is_valid(n) {
        return Err(invalid(format!("{vx} is not a vertex of the graph for n = {n}")));
    }
    let mut out = vec![0u32; n as usize];
    out[vx.y as usize - 1] = n - 1;
    out[vx.z as usize - 1] = n;
    let pair = if vx.b == 0 { [n - 2, n - 3] } else { [n - 3, n - 2] };
    let rest = (3..n - 3).rev().chain([1, 2]);
    let mut fill = pair.into_iter().chain(rest);
    for slot in out.iter_mut().filter(|s| **s == 0) {
        *slot = fill.next().unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steps_valid(n: u32, path: &[GammaVertex]) -> Vec<usize> {
        (1..path.len()).filter(|&i| !gamma_edge(n, path[i - 1], path[i])).collect()
    }

    #[test]
    fn graph_sizes_and_rules() {
        let g2 = gamma_graph(2).unwrap();
        assert_eq!(g2.vertices.len(), 4);
        assert!(g2.has_edge(v(1, 2, 0), v(1, 2, 1)));
        assert!(g2.has_edge(v(2, 1, 0), v(2, 1, 1)));
        let g4 = gamma_graph(4).unwrap();
        assert_eq!(g4.vertices.len(), 24);
        assert!(!g4.has_edge(v(4, 2, 0), v(4, 2, 1)));
        assert!(g4.has_edge(v(1, 2, 0), v(1, 2, 1)));
        assert!(!g4.has_edge(v(1, 3, 0), v(1, 3, 1)));
        assert!(g4.has_edge(v(2, 3, 1), v(3, 2, 1)));
        assert!(!g4.has_edge(v(1, 2, 0), v(1, 3, 1)));
        assert!(gamma_graph(5).is_err());
    }

    #[test]
    fn paths_are_hamiltonian() {
        for n in (2..=20).step_by(2) {
            let p = gamma_path(n).unwrap();
            let mut sorted = p.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, gamma_graph(n).unwrap().vertices, "n = {n}");
            assert_eq!(p[0], v(n, n - 1, 1));
            assert_eq!(*p.last().unwrap(), v(2, 1, 0));
            if n != 4 {
                assert_eq!(steps_valid(n, &p), Vec::<usize>::new(), "n = {n}");
            }
        }
    }

    #[test]
    fn pseudo_path_only_valid_when_embedded() {
        let p = gamma_path(4).unwrap();
        assert!(!steps_valid(4, &p).is_empty());
        let shifted: Vec<GammaVertex> = p.iter().map(|x| x.shifted(2)).collect();
        assert!(steps_valid(8, &shifted).is_empty());
    }

    #[test]
    fn vertex_mapping() {
        let n = 8;
        assert_eq!(gamma_vertex_to_permutation(v(8, 7, 1), n).unwrap(), [5, 6, 4, 3, 1, 2, 8, 7]);
        assert_eq!(gamma_vertex_to_permutation(v(2, 1, 0), n).unwrap(), [8, 7, 6, 5, 4, 3, 1, 2]);
        assert_eq!(gamma_vertex_to_permutation(v(1, 4, 0), n).unwrap(), [7, 6, 5, 8, 4, 3, 1, 2]);
        assert!(gamma_vertex_to_permutation(v(3, 3, 0), n).is_err());
    }
}
