//! Recognisers for the families known to be determined by their spectra.
//! All of them work up to permutation similarity without a permutation
//! search: they read off support components or a bipartition instead.

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};

use crate::exactmat::families::{c_matrix, d_of_trace, j_matrix};
use crate::exactmat::structure::strongly_connected;
use crate::exactmat::{rat_int, ExactMatrix, QuadScalar, Rational};

/// Irreducible blocks as `(indices, block)`; for a doubly stochastic matrix
/// these are the diagonal blocks of its direct-sum decomposition.
pub fn components(m: &ExactMatrix) -> Vec<(Vec<usize>, ExactMatrix)> {
    strongly_connected(m)
        .into_iter()
        .map(|idx| {
            let b = m.principal_submatrix(&idx);
            (idx, b)
        })
        .collect()
}

pub fn named_matrix(m: &ExactMatrix) -> Option<String> {
    let n = m.n();
    if *m == ExactMatrix::identity(n) {
        Some(format!("identity I_{n}"))
    } else if *m == j_matrix(n) {
        Some(format!("uniform J_{n}"))
    } else if n >= 2 && *m == c_matrix(n).ok()? {
        Some(format!("complete C_{n}"))
    } else {
        None
    }
}

/// Trace `a` with `m == D_a`.
pub fn d_segment(m: &ExactMatrix) -> Option<Rational> {
    let a = m.trace().as_rational()?.clone();
    let d = d_of_trace(m.n(), &a).ok()?;
    (d == *m).then_some(a)
}

/// Sorted block sizes when `m` is a permuted `C_{n_1} + ... + C_{n_k}`.
pub fn c_block_sum(m: &ExactMatrix) -> Option<Vec<usize>> {
    let mut sizes = Vec::new();
    for (idx, b) in components(m) {
        if idx.len() < 2 || b != c_matrix(idx.len()).ok()? {
            return None;
        }
        sizes.push(idx.len());
    }
    sizes.sort_unstable();
    Some(sizes)
}

/// Sorted block sizes when `m` is a permuted `J_{n_1} + ... + J_{n_k}` with
/// at least two blocks.
pub fn j_block_sum(m: &ExactMatrix) -> Option<Vec<usize>> {
    let comps = components(m);
    if comps.len() < 2 {
        return None;
    }
    let mut sizes = Vec::new();
    for (idx, b) in comps {
        if b != j_matrix(idx.len()) {
            return None;
        }
        sizes.push(idx.len());
    }
    sizes.sort_unstable();
    Some(sizes)
}

/// Least partition of `n` into `k` parts (ascending parts, lexicographic
/// order) other than `exclude`, preferring parts of size at least two.
pub fn other_partition(exclude: &[usize]) -> Option<Vec<usize>> {
    fn first(rest: usize, slots: usize, min: usize, acc: &mut Vec<usize>, exclude: &[usize]) -> bool {
        if slots == 0 {
            return rest == 0 && acc.as_slice() != exclude;
        }
        // remaining parts are all >= p, so p * slots <= rest
        let mut p = min;
        while p * slots <= rest {
            acc.push(p);
            if first(rest - p, slots - 1, p, acc, exclude) {
                return true;
            }
            acc.pop();
            p += 1;
        }
        false
    }
    let n: usize = exclude.iter().sum();
    let k = exclude.len();
    for min in [2, 1] {
        let mut acc = Vec::with_capacity(k);
        if first(n, k, min, &mut acc, exclude) {
            return Some(acc);
        }
    }
    None
}

/// `(h, t)` when `m` is a permuted `(1 - t) [[0, I_h], [I_h, 0]] + t [[0, C_h], [C_h, 0]]`
/// with connected support (so `0 < t` or `h >= 3`).
pub fn block_segment(m: &ExactMatrix) -> Option<(usize, Rational)> {
    let n = m.n();
    if n < 4 || n % 2 == 1 || !m.is_symmetric() {
        return None;
    }
    let h = n / 2;
    let adj = m.support();
    // two-colour the support graph
    let mut colour = vec![u8::MAX; n];
    colour[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if colour[v] == u8::MAX {
                colour[v] = 1 - colour[u];
                queue.push_back(v);
            } else if colour[v] == colour[u] {
                return None;
            }
        }
    }
    if colour.contains(&u8::MAX) {
        return None;
    }
    let left: Vec<usize> = (0..n).filter(|&i| colour[i] == 0).collect();
    let right: Vec<usize> = (0..n).filter(|&i| colour[i] == 1).collect();
    if left.len() != h {
        return None;
    }
    let row = |i: usize| -> Vec<&QuadScalar> { right.iter().map(|&j| m.get(left[i], j)).collect() };
    let one = Rational::one();
    let mut firsts: Vec<Rational> = row(0).iter().filter_map(|q| q.as_rational().cloned()).collect();
    firsts.sort();
    firsts.dedup();
    // for h = 2 both t and 1 - t fit; report the smaller
    for v in firsts.into_iter().rev() {
        let t = &one - &v;
        if t.is_negative() || t > one {
            continue;
        }
        let other = &t / rat_int(h as i64 - 1);
        let big = QuadScalar::from_rational(v.clone());
        let small = QuadScalar::from_rational(other.clone());
        let mut col_hits = vec![0usize; h];
        let ok = (0..h).all(|i| {
            let r = row(i);
            let hits: Vec<usize> = (0..h).filter(|&j| *r[j] == big).collect();
            let rest_ok = (0..h).all(|j| *r[j] == big || *r[j] == small);
            if big == small {
                return rest_ok;
            }
            if hits.len() != 1 || !rest_ok {
                return false;
            }
            col_hits[hits[0]] += 1;
            true
        });
        if ok && (big == small || col_hits.iter().all(|&c| c == 1)) {
            return Some((h, t));
        }
    }
    None
}

/// `mu` with `b == mu I + (1 - mu) J_p`; one-by-one blocks fit every `mu`
/// and report `None` inside `Some`.
pub fn d_form(b: &ExactMatrix) -> Option<Option<Rational>> {
    let p = b.n();
    if p == 1 {
        return b.get(0, 0).is_one().then_some(None);
    }
    let off = b.get(0, 1).as_rational()?.clone();
    let mu = Rational::one() - rat_int(p as i64) * &off;
    (*b == d_form_block(p, &mu)?).then_some(Some(mu))
}

/// `mu I + (1 - mu) J_p`, if nonnegative.
pub fn d_form_block(p: usize, mu: &Rational) -> Option<ExactMatrix> {
    let one = Rational::one();
    let off = (&one - mu) / rat_int(p as i64);
    let diag = mu + &off;
    if off.is_negative() || diag.is_negative() || (p > 1 && mu > &one) {
        return None;
    }
    if p == 1 {
        return Some(ExactMatrix::identity(1));
    }
    let (d, o) = (QuadScalar::from_rational(diag), QuadScalar::from_rational(off));
    ExactMatrix::from_fn(p, |i, j| if i == j { d.clone() } else { o.clone() }).ok()
}

/// True when `q` is a symmetric permutation matrix.
pub fn is_vertex(q: &ExactMatrix) -> bool {
    q.is_permutation() && q.is_symmetric()
}

/// Whether `m` lies on `[I_n, C_n]`, `[I_n, Q]` or `[C_n, Q]` for a
/// symmetric permutation matrix `Q`; names the segment.
pub fn conjectured_segment(m: &ExactMatrix) -> Option<String> {
    let n = m.n();
    let one = Rational::one();
    if let Some(a) = d_segment(m) {
        return Some(format!("[I,C] a={a}"));
    }
    if is_vertex(m) {
        return Some("vertex".into());
    }
    let entries = m.rational_entries()?;
    let off: Vec<&Rational> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| &entries[i * n + j]).collect();
    let diag: Vec<&Rational> = (0..n).map(|i| &entries[i * n + i]).collect();
    let recover = |start: &ExactMatrix, t: &Rational| -> Option<ExactMatrix> {
        if !t.is_positive() || t > &one {
            return None;
        }
        let q = m.sub(&start.scale_rational(&(&one - t))).ok()?.scale_rational(&(&one / t));
        is_vertex(&q).then_some(q)
    };
    // [I, Q]: off-diagonal part is t Q
    if let Some(t) = off.iter().copied().max() {
        if recover(&ExactMatrix::identity(n), t).is_some() {
            return Some(format!("[I,Q] t={t}"));
        }
    }
    // [C, Q]: a fixed point of Q puts t on the diagonal; otherwise the
    // smallest off-diagonal entry is (1 - t)/(n - 1)
    if n >= 2 {
        let c = c_matrix(n).ok()?;
        let mut candidates: Vec<Rational> = diag.iter().map(|&d| d.clone()).collect();
        if let Some(&min) = off.iter().min() {
            candidates.push(&one - rat_int(n as i64 - 1) * min);
        }
        candidates.sort();
        candidates.dedup();
        for t in candidates {
            if t.is_zero() {
                continue;
            }
            if recover(&c, &t).is_some() {
                return Some(format!("[C,Q] t={t}"));
            }
        }
    }
    None
}
