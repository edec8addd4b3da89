use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{rat, ExactMatrix, QuadScalar};

pub const MAX_VERTICES: usize = 32;

/// Simple undirected graph on at most 32 vertices; row `i` of `adj` is the
/// neighbour bitset of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::OutOfRange(format!("graphs have 1..={MAX_VERTICES} vertices, got {n}")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// From neighbour bitsets; checked for symmetry and loops.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Self> {
        let n = adj.len();
        let g = Graph { n, adj };
        Self::empty(n)?;
        for u in 0..n {
            if g.adj[u] >> n != 0 || g.has_edge(u, u) {
                return Err(Error::OutOfRange("adjacency must be loopless and within range".into()));
            }
            for v in 0..n {
                if g.has_edge(u, v) != g.has_edge(v, u) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            g.adj[u] = ((1u64 << n) - 1) as u32 & !(1 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange("cycles need at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
        Self::from_edges(a + b, &edges)
    }

    pub fn disjoint_union(parts: &[Graph]) -> Result<Self> {
        let n = parts.iter().map(Graph::n).sum();
        let mut g = Self::empty(n)?;
        let mut off = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge(u + off, v + off)?;
            }
            off += p.n;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::OutOfRange(format!("edge ({u}, {v}) invalid for n = {}", self.n)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency_bits(&self) -> &[u32] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v))).collect()
    }

    /// Graph with vertex `i` playing the role of `perm[i]` in `self`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut g = Self::empty(self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { QuadScalar::one() } else { QuadScalar::zero() })
            .expect("valid dimension")
    }

    /// Inverse of [`Graph::adjacency_matrix`] up to a positive scalar: the
    /// support of a symmetric zero-diagonal matrix whose nonzero entries are
    /// all equal.
    pub fn from_support(m: &ExactMatrix) -> Option<Self> {
        let n = m.n();
        if n > MAX_VERTICES || !m.is_symmetric() {
            return None;
        }
        let mut value: Option<&QuadScalar> = None;
        let mut g = Graph::empty(n).ok()?;
        for i in 0..n {
            for j in 0..n {
                let e = m.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if i == j || value.is_some_and(|v| v != e) {
                    return None;
                }
                value = Some(e);
                g.adj[i] |= 1 << j;
            }
        }
        Some(g)
    }

    /// Common degree, if every vertex has it.
    pub fn is_k_regular(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> usize {
        (self.adj[u] & self.adj[v]).count_ones() as usize
    }

    pub fn complement(&self) -> Self {
        let full = ((1u64 << self.n) - 1) as u32;
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Upper-triangle bits in column order `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn column_bits(&self) -> Vec<bool> {
        (1..self.n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| self.has_edge(i, j)).collect()
    }

    /// graph6 text: `n + 63`, then the column-order upper triangle packed six
    /// bits per character (most significant first, zero padded), each plus 63.
    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        for chunk in self.column_bits().chunks(6) {
            let mut v = 0u8;
            for k in 0..6 {
                v = v << 1 | u8::from(chunk.get(k).copied().unwrap_or(false));
            }
            out.push((v + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let bad = || Error::Parse(format!("invalid graph6 string `{s}`"));
        let (&first, rest) = bytes.split_first().ok_or_else(bad)?;
        if !(63..=126).contains(&first) {
            return Err(bad());
        }
        let n = (first - 63) as usize;
        let pairs = n * n.saturating_sub(1) / 2;
        if rest.len() != pairs.div_ceil(6) {
            return Err(bad());
        }
        let mut bits = Vec::with_capacity(rest.len() * 6);
        for &c in rest {
            if !(63..=126).contains(&c) {
                return Err(bad());
            }
            let v = c - 63;
            for k in (0..6).rev() {
                bits.push(v >> k & 1 == 1);
            }
        }
        let mut g = Self::empty(n)?;
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[idx] {
                    g.add_edge(i, j)?;
                }
                idx += 1;
            }
        }
        Ok(g)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Graph::from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

/// `(1/k) A(G)` for a `k`-regular graph with `k >= 1`.
pub fn scale_to_ds(g: &Graph) -> Result<ExactMatrix> {
    match g.is_k_regular() {
        Some(k) if k >= 1 => Ok(g.adjacency_matrix().scale_rational(&rat(1, k as i64))),
        _ => Err(Error::NotRegular),
    }
}

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k (k - lambda - 1) = (v - k - 1) mu`.
    pub fn feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let k = g.is_k_regular()?;
    let n = g.n();
    if k == 0 || k == n - 1 {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbours(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams {
        v: n,
        k,
        lambda: lambda?,
        mu: mu?,
    })
}
