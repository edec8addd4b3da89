//! Isomorph-free generation of regular graphs.
//!
//! A labelled graph is canonical when its column-order upper-triangle string
//! `(0,1), (0,2), (1,2), (0,3), ...` is lexicographically least over all
//! relabelings. The first `m` columns describe the subgraph induced on the
//! first `m` vertices, so every prefix of a canonical graph is canonical and
//! the classes can be grown one vertex at a time (orderly generation).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::permsim::are_perm_similar;

use super::graph::Graph;

pub const ENUMERATION_LIMIT: usize = 10;
pub const CANONICAL_LIMIT: usize = 12;

/// Neighbours of `v` among the first `j` entries of `sigma`, as the bitset
/// `{ i : adj(sigma[i], v) }`.
fn column(adj: &[u32], sigma: &[usize], v: usize) -> u32 {
    sigma.iter().enumerate().fold(0, |acc, (i, &u)| acc | ((adj[u] >> v & 1) << i))
}

/// Order of two columns; bit 0 is the most significant position.
fn cmp_column(a: u32, b: u32) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    if a & low == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn prefix_mask(j: usize) -> u32 {
    ((1u64 << j) - 1) as u32
}

/// False as soon as some relabeling of the first `m` vertices gives a
/// smaller string.
fn is_canonical(adj: &[u32], m: usize) -> bool {
    fn go(adj: &[u32], m: usize, sigma: &mut Vec<usize>, used: u32) -> bool {
        let j = sigma.len();
        if j == m {
            return true;
        }
        let target = adj[j] & prefix_mask(j);
        for v in 0..m {
            if used >> v & 1 == 1 {
                continue;
            }
            match cmp_column(column(adj, sigma, v), target) {
                Ordering::Less => return false,
                Ordering::Greater => {}
                Ordering::Equal => {
                    sigma.push(v);
                    let ok = go(adj, m, sigma, used | 1 << v);
                    sigma.pop();
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
    go(adj, m, &mut Vec::with_capacity(m), 0)
}

/// Relabeling of `g` with the least column-order string.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::OverBudget { n, limit: CANONICAL_LIMIT });
    }
    let adj = g.adjacency_bits();
    let mut best: Vec<u32> = (0..n).map(|j| adj[j] & prefix_mask(j)).collect();
    let mut best_sigma: Vec<usize> = (0..n).collect();
    let mut cols = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);

    #[allow(clippy::too_many_arguments)]
    fn go(
        adj: &[u32],
        n: usize,
        sigma: &mut Vec<usize>,
        cols: &mut Vec<u32>,
        used: u32,
        best: &mut Vec<u32>,
        best_sigma: &mut Vec<usize>,
    ) {
        let j = sigma.len();
        if j == n {
            if cols.iter().zip(best.iter()).map(|(&a, &b)| cmp_column(a, b)).find(|o| o.is_ne()) == Some(Ordering::Less) {
                best.clone_from(cols);
                best_sigma.clone_from(sigma);
            }
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 {
                continue;
            }
            cols.push(column(adj, sigma, v));
            let ord = cols.iter().zip(best.iter()).map(|(&a, &b)| cmp_column(a, b)).find(|o| o.is_ne());
            if ord != Some(Ordering::Greater) {
                sigma.push(v);
                go(adj, n, sigma, cols, used | 1 << v, best, best_sigma);
                sigma.pop();
            }
            cols.pop();
        }
    }
    go(adj, n, &mut sigma, &mut cols, 0, &mut best, &mut best_sigma);
    g.relabeled(&best_sigma)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() {
        return Ok(false);
    }
    Ok(are_perm_similar(&g.adjacency_matrix(), &h.adjacency_matrix())?.is_similar())
}

struct Orderly {
    n: usize,
    k: usize,
    out: Vec<Vec<u32>>,
}

impl Orderly {
    /// `adj` holds a canonical graph on the first `m` vertices.
    fn extend(&mut self, adj: &mut Vec<u32>, m: usize) {
        if m == self.n {
            self.out.push(adj.clone());
            return;
        }
        // vertices left to add after this one
        let rest = self.n - m - 1;
        let mut forced = 0u32;
        let mut optional = 0u32;
        for i in 0..m {
            let d = adj[i].count_ones() as usize;
            if d + rest < self.k {
                if d + 1 + rest < self.k {
                    return;
                }
                forced |= 1 << i;
            } else if d < self.k {
                optional |= 1 << i;
            }
        }
        let base = forced.count_ones() as usize;
        // subsets of `optional`, ascending
        let mut sub = 0u32;
        loop {
            let s = forced | sub;
            let size = base + sub.count_ones() as usize;
            if size <= self.k && size + rest >= self.k {
                for i in 0..m {
                    if s >> i & 1 == 1 {
                        adj[i] |= 1 << m;
                    }
                }
                adj.push(s);
                if is_canonical(adj, m + 1) {
                    self.extend(adj, m + 1);
                }
                adj.pop();
                for a in adj.iter_mut() {
                    *a &= !(1 << m);
                }
            }
            if sub == optional {
                break;
            }
            sub = (sub.wrapping_sub(optional)) & optional;
        }
    }
}

/// Every `k`-regular graph on `n` vertices up to isomorphism, each in
/// canonical labelling, sorted by canonical string.
pub fn enumerate_regular(n: usize, k: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(Error::OverBudget { n, limit: ENUMERATION_LIMIT });
    }
    if k >= n {
        return Err(Error::Infeasible(format!("degree {k} needs more than {n} vertices")));
    }
    if n * k % 2 == 1 {
        return Err(Error::Infeasible(format!("n k = {} is odd", n * k)));
    }
    // one graph each, and the slowest to confirm canonical
    if k == 0 {
        return Ok(vec![Graph::empty(n)?]);
    }
    if k == n - 1 {
        return Ok(vec![Graph::complete(n)?]);
    }
    let mut gen = Orderly { n, k, out: Vec::new() };
    gen.extend(&mut Vec::with_capacity(n), 0);
    let mut graphs: Vec<(Vec<bool>, Graph)> = gen
        .out
        .into_iter()
        .map(|adj| {
            let g = Graph::from_adjacency(adj).expect("generated graphs are simple");
            (g.column_bits(), g)
        })
        .collect();
    graphs.sort();
    Ok(graphs.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// All `k`-regular edge subsets on `n` vertices, deduplicated by trying
    /// every permutation.
    fn brute_force_count(n: usize, k: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut perms = vec![(0..n).collect::<Vec<_>>()];
        // Heap's algorithm
        let mut p: Vec<usize> = (0..n).collect();
        let mut c = vec![0; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    p.swap(0, i);
                } else {
                    p.swap(c[i], i);
                }
                perms.push(p.clone());
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if g.is_k_regular() != Some(k) {
                continue;
            }
            let key = perms.iter().map(|p| g.relabeled(p).unwrap().column_bits()).min().unwrap();
            seen.insert(key);
        }
        seen.len()
    }

    #[test]
    fn counts_match_brute_force() {
        for (n, k) in [(4, 2), (4, 3), (5, 2), (5, 4), (6, 2), (6, 3), (6, 4)] {
            assert_eq!(enumerate_regular(n, k).unwrap().len(), brute_force_count(n, k), "n={n} k={k}");
        }
    }

    #[test]
    fn known_counts() {
        let table = [((4, 2), 1), ((4, 3), 1), ((5, 2), 1), ((6, 2), 2), ((6, 3), 2), ((7, 2), 2), ((7, 4), 2), ((8, 2), 3), ((8, 3), 6), ((8, 4), 6), ((9, 4), 16), ((10, 3), 21)];
        for ((n, k), count) in table {
            assert_eq!(enumerate_regular(n, k).unwrap().len(), count, "n={n} k={k}");
        }
    }

    #[test]
    fn infeasible_parameters() {
        assert!(matches!(enumerate_regular(5, 3), Err(Error::Infeasible(_))));
        assert!(matches!(enumerate_regular(4, 4), Err(Error::Infeasible(_))));
        assert!(matches!(enumerate_regular(11, 2), Err(Error::OverBudget { .. })));
    }

    #[test]
    fn outputs_are_canonical_regular_and_distinct() {
        for (n, k) in [(6, 2), (6, 3), (7, 4), (8, 3)] {
            let gs = enumerate_regular(n, k).unwrap();
            for (i, g) in gs.iter().enumerate() {
                assert_eq!(g.is_k_regular(), Some(k));
                assert_eq!(&canonical_graph(g).unwrap(), g);
                let shifted: Vec<usize> = (0..n).map(|v| (v + 3) % n).collect();
                assert_eq!(&canonical_graph(&g.relabeled(&shifted).unwrap()).unwrap(), g);
                for h in &gs[i + 1..] {
                    assert!(!are_isomorphic(g, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn six_vertex_cycles() {
        let gs = enumerate_regular(6, 2).unwrap();
        let c6 = Graph::cycle(6).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = Graph::disjoint_union(&[k3.clone(), k3]).unwrap();
        assert!(gs.iter().any(|g| are_isomorphic(g, &c6).unwrap()));
        assert!(gs.iter().any(|g| are_isomorphic(g, &two_k3).unwrap()));
    }
}
