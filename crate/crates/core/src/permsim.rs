//! Permutation similarity `B = P^T A P`: invariant prefilters, a witness
//! search and a canonical form.
//!
//! Permutations are stored as image vectors `perm` with
//! `B[i][j] = A[perm[i]][perm[j]]`, which is what [`ExactMatrix::permuted`]
//! computes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, QuadScalar};

/// Largest dimension accepted by the searches.
pub const PERM_LIMIT: usize = 12;

/// The invariant (or the full search) that separated two matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    EntryMultiset,
    DiagonalMultiset,
    RowProfile,
    ColourRefinement,
    ExhaustiveSearch,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Separation::EntryMultiset => "entry multiset",
            Separation::DiagonalMultiset => "diagonal multiset",
            Separation::RowProfile => "row/column profile",
            Separation::ColourRefinement => "colour refinement",
            Separation::ExhaustiveSearch => "exhaustive search",
        };
        f.write_str(s)
    }
}

/// Outcome of [`are_perm_similar`]: the lexicographically least witness, or
/// the stage that ruled one out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermWitness {
    pub permutation: Option<Vec<usize>>,
    pub invariant_report: Option<Separation>,
}

impl PermWitness {
    pub fn is_similar(&self) -> bool {
        self.permutation.is_some()
    }

    /// One-based image notation, e.g. `[2,1,3]`.
    pub fn one_based(&self) -> Option<String> {
        self.permutation.as_deref().map(format_permutation)
    }
}

pub fn format_permutation(perm: &[usize]) -> String {
    let parts: Vec<String> = perm.iter().map(|p| (p + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_permutation(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("invalid permutation `{s}`"));
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let perm: Vec<usize> = inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().ok().and_then(|v| v.checked_sub(1)).ok_or_else(bad))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; perm.len()];
    for &p in &perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(bad());
        }
    }
    Ok(perm)
}

pub fn entry_multiset(m: &ExactMatrix) -> Vec<QuadScalar> {
    let mut v = m.entries().to_vec();
    v.sort();
    v
}

pub fn diagonal_multiset(m: &ExactMatrix) -> Vec<QuadScalar> {
    let mut v = m.diagonal();
    v.sort();
    v
}

/// Entries of several matrices replaced by their rank among all distinct
/// values, so the searches compare small integers with the exact order.
fn rank_encode(ms: &[&ExactMatrix]) -> Vec<Vec<u32>> {
    let mut values: Vec<&QuadScalar> = ms.iter().flat_map(|m| m.entries()).collect();
    values.sort();
    values.dedup();
    let index: BTreeMap<&QuadScalar, u32> = values.into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    ms.iter().map(|m| m.entries().iter().map(|e| index[e]).collect()).collect()
}

fn row_profiles(m: &[u32], n: usize) -> Vec<(u32, Vec<u32>, Vec<u32>)> {
    let mut out: Vec<_> = (0..n)
        .map(|i| {
            let mut r: Vec<u32> = (0..n).map(|j| m[i * n + j]).collect();
            let mut c: Vec<u32> = (0..n).map(|j| m[j * n + i]).collect();
            r.sort_unstable();
            c.sort_unstable();
            (m[i * n + i], r, c)
        })
        .collect();
    out.sort();
    out
}

/// Joint 1-dimensional colour refinement of the vertex sets of `a` and `b`
/// (edge colours in both directions); returns stable colours per matrix.
fn refine_colours(a: &[u32], b: &[u32], n: usize) -> (Vec<u32>, Vec<u32>) {
    let mats = [a, b];
    let mut colours: Vec<Vec<u32>> = mats.iter().map(|m| (0..n).map(|i| m[i * n + i]).collect()).collect();
    let mut classes = 0;
    loop {
        type Sig = (u32, Vec<(u32, u32, u32)>);
        let sigs: Vec<Vec<Sig>> = (0..2)
            .map(|k| {
                let (m, c) = (mats[k], &colours[k]);
                (0..n)
                    .map(|i| {
                        let mut nb: Vec<(u32, u32, u32)> = (0..n).filter(|&j| j != i).map(|j| (c[j], m[i * n + j], m[j * n + i])).collect();
                        nb.sort_unstable();
                        (c[i], nb)
                    })
                    .collect()
            })
            .collect();
        let mut all: Vec<&Sig> = sigs.iter().flatten().collect();
        all.sort();
        all.dedup();
        let next: Vec<Vec<u32>> = sigs
            .iter()
            .map(|s| s.iter().map(|x| all.binary_search(&x).expect("present") as u32).collect())
            .collect();
        let count = all.len();
        colours = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let b = colours.pop().expect("two");
    let a = colours.pop().expect("two");
    (a, b)
}

fn check_budget(n: usize) -> Result<()> {
    if n > PERM_LIMIT {
        Err(Error::OverBudget { n, limit: PERM_LIMIT })
    } else {
        Ok(())
    }
}

/// Find the lexicographically least `perm` with `a.permuted(perm) == b`, or
/// report which invariant separates the two matrices.
pub fn are_perm_similar(a: &ExactMatrix, b: &ExactMatrix) -> Result<PermWitness> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.n() });
    }
    check_budget(n)?;
    let separated = |s| {
        Ok(PermWitness {
            permutation: None,
            invariant_report: Some(s),
        })
    };
    if entry_multiset(a) != entry_multiset(b) {
        return separated(Separation::EntryMultiset);
    }
    if diagonal_multiset(a) != diagonal_multiset(b) {
        return separated(Separation::DiagonalMultiset);
    }
    let enc = rank_encode(&[a, b]);
    let (ea, eb) = (&enc[0], &enc[1]);
    if row_profiles(ea, n) != row_profiles(eb, n) {
        return separated(Separation::RowProfile);
    }
    let (ca, cb) = refine_colours(ea, eb, n);
    let (mut ha, mut hb) = (ca.clone(), cb.clone());
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return separated(Separation::ColourRefinement);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, n, ea, eb, &ca, &cb, &mut perm, &mut used) {
        Ok(PermWitness {
            permutation: Some(perm),
            invariant_report: None,
        })
    } else {
        separated(Separation::ExhaustiveSearch)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(i: usize, n: usize, a: &[u32], b: &[u32], ca: &[u32], cb: &[u32], perm: &mut [usize], used: &mut [bool]) -> bool {
    if i == n {
        return true;
    }
    for v in 0..n {
        if used[v] || ca[v] != cb[i] || a[v * n + v] != b[i * n + i] {
            continue;
        }
        let consistent = (0..i).all(|k| {
            let u = perm[k];
            a[v * n + u] == b[i * n + k] && a[u * n + v] == b[k * n + i]
        });
        if !consistent {
            continue;
        }
        perm[i] = v;
        used[v] = true;
        if extend(i + 1, n, a, b, ca, cb, perm, used) {
            return true;
        }
        used[v] = false;
    }
    perm[i] = usize::MAX;
    false
}

/// The row-major lexicographically least `P^T M P`, with the permutation
/// attaining it.
pub fn canonical_form_with_perm(m: &ExactMatrix) -> Result<(ExactMatrix, Vec<usize>)> {
    let n = m.n();
    check_budget(n)?;
    let enc = rank_encode(&[m]).pop().expect("one matrix");
    let mut search = Canon {
        n,
        m: &enc,
        best: None,
        best_perm: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<usize>>()];
    search.descend(0, &mut Vec::new(), &mut Vec::new(), cells);
    let perm = search.best_perm;
    Ok((m.permuted(&perm)?, perm))
}

pub fn canonical_form(m: &ExactMatrix) -> Result<ExactMatrix> {
    canonical_form_with_perm(m).map(|(c, _)| c)
}

struct Canon<'a> {
    n: usize,
    m: &'a [u32],
    best: Option<Vec<u32>>,
    best_perm: Vec<usize>,
}

impl Canon<'_> {
    fn at(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.n + j]
    }

    /// Swapping `u` and `v` is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        let n = self.n;
        if self.at(u, u) != self.at(v, v) || self.at(u, v) != self.at(v, u) {
            return false;
        }
        (0..n).filter(|&w| w != u && w != v).all(|w| self.at(u, w) == self.at(v, w) && self.at(w, u) == self.at(w, v))
    }

    /// Row `r` of the result when `v` takes position `r`, plus the refined
    /// cells for the positions after `r`.
    fn row_for(&self, prefix: &[usize], v: usize, cells: &[Vec<usize>]) -> (Vec<u32>, Vec<Vec<usize>>) {
        let mut row: Vec<u32> = prefix.iter().map(|&u| self.at(v, u)).collect();
        row.push(self.at(v, v));
        let mut refined = Vec::new();
        for (k, cell) in cells.iter().enumerate() {
            let mut members: Vec<usize> = if k == 0 { cell.iter().copied().filter(|&u| u != v).collect() } else { cell.clone() };
            members.sort_by_key(|&u| (self.at(v, u), u));
            let mut start = 0;
            while start < members.len() {
                let key = self.at(v, members[start]);
                let mut end = start;
                while end < members.len() && self.at(v, members[end]) == key {
                    row.push(key);
                    end += 1;
                }
                refined.push(members[start..end].to_vec());
                start = end;
            }
        }
        (row, refined)
    }

    /// `cells[0]` holds the candidates for position `r`; `rows` holds the
    /// result rows fixed so far.
    fn descend(&mut self, r: usize, prefix: &mut Vec<usize>, rows: &mut Vec<u32>, cells: Vec<Vec<usize>>) {
        if r == self.n {
            if self.best.as_ref().is_none_or(|b| rows.as_slice() < b.as_slice()) {
                self.best = Some(rows.clone());
                self.best_perm = prefix.clone();
            }
            return;
        }
        let mut options: Vec<(Vec<u32>, usize, Vec<Vec<usize>>)> = cells[0]
            .iter()
            .map(|&v| {
                let (row, refined) = self.row_for(prefix, v, &cells);
                (row, v, refined)
            })
            .collect();
        let min_row = options.iter().map(|o| o.0.clone()).min().expect("nonempty cell");
        options.retain(|o| o.0 == min_row);
        let len = rows.len();
        rows.extend_from_slice(&min_row);
        let mut explored: Vec<usize> = Vec::new();
        for (_, v, refined) in options {
            // the best may have changed inside an earlier sibling
            if self.best.as_ref().is_some_and(|b| rows.as_slice() > &b[..rows.len()]) {
                break;
            }
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            explored.push(v);
            prefix.push(v);
            self.descend(r + 1, prefix, rows, refined);
            prefix.pop();
        }
        rows.truncate(len);
    }
}
