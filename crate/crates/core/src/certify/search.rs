//! Refutation search: look for a matrix of the same class with the same
//! spectrum that is not a permutation image. A miss says nothing about
//! existence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::patterns::{components, d_form, d_form_block};
use super::verdict::{Scope, SearchStats, Witness};
use crate::error::{Error, Result};
use crate::exactmat::families::direct_sum;
use crate::exactmat::{ExactMatrix, Rational};
use crate::graphbridge::enumerate::ENUMERATION_LIMIT;
use crate::graphbridge::{are_isomorphic, enumerate_regular, scale_to_ds, Graph};
use crate::permsim::PERM_LIMIT;
use crate::spectra::jacobi::jacobi_eigen;
use crate::spectra::roots::best_rational;
use crate::spectra::{char_poly, eigenvalues_symmetric};

pub const MAX_DENOMINATOR: u64 = 10_000;
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;
/// Iterations spent from one random start before restarting.
pub const RESTART_EVERY: usize = 200;
const SPECTRAL_TOLERANCE: f64 = 1e-11;
const DYKSTRA_STEPS: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MateSearch {
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

pub fn mate_search(m: &ExactMatrix, scope: Scope, seed: u64, budget: usize) -> Result<MateSearch> {
    let mut stats = SearchStats::default();
    stats.strategies.push("d-family-recombination".into());
    if let Some(w) = recombination(m, scope)? {
        return Ok(MateSearch { witness: Some(w), stats });
    }
    if m.is_symmetric() {
        if let Some(g) = graph_of(m) {
            stats.strategies.push("regular-graph-mate".into());
            if let Some(w) = graph_mate(m, &g, scope)? {
                return Ok(MateSearch { witness: Some(w), stats });
            }
        }
        if m.is_rational() && m.n() <= PERM_LIMIT && budget > 0 {
            stats.strategies.push("isospectral-search".into());
            let target = eigenvalues_symmetric(m)?.values;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            isospectral(&target, &mut rng, budget, &mut stats.iterations, |cand| {
                match Witness::verify(m, cand, scope, "isospectral-search") {
                    Ok(Some(w)) => {
                        found = Some(w);
                        true
                    }
                    _ => false,
                }
            })?;
            return Ok(MateSearch { witness: found, stats });
        }
    }
    Ok(MateSearch { witness: None, stats })
}

/// Swap two `mu I + (1 - mu) J` blocks with the same `mu` for another pair of
/// sizes with the same total; the spectrum `{1, 1, mu, ..., mu}` is kept.
fn recombination(m: &ExactMatrix, scope: Scope) -> Result<Option<Witness>> {
    let comps = components(m);
    let forms: Vec<Option<Option<Rational>>> = comps.iter().map(|(_, b)| d_form(b)).collect();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (Some(fi), Some(fj)) = (&forms[i], &forms[j]) else { continue };
            let mu = match (fi, fj) {
                (Some(a), Some(b)) if a == b => a.clone(),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                _ => continue,
            };
            let (p, q) = (comps[i].0.len(), comps[j].0.len());
            let total = p + q;
            // parts of size at least two first
            let splits = (2..=total / 2).chain(std::iter::once(1));
            for p2 in splits {
                let q2 = total - p2;
                if (p2, q2) == (p.min(q), p.max(q)) {
                    continue;
                }
                let (Some(b1), Some(b2)) = (d_form_block(p2, &mu), d_form_block(q2, &mu)) else { continue };
                let mut blocks: Vec<ExactMatrix> = comps.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, c)| c.1.clone()).collect();
                blocks.push(b1);
                blocks.push(b2);
                let cand = direct_sum(&blocks)?;
                if let Some(w) = Witness::verify(m, &cand, scope, "d-family-recombination")? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// The graph `G` when `m = (1/k) A(G)` for a `k`-regular graph small enough
/// to enumerate.
fn graph_of(m: &ExactMatrix) -> Option<Graph> {
    if m.n() > ENUMERATION_LIMIT {
        return None;
    }
    let g = Graph::from_support(m)?;
    let k = g.is_k_regular()?;
    (k >= 1 && scale_to_ds(&g).ok()? == *m).then_some(g)
}

fn graph_mate(m: &ExactMatrix, g: &Graph, scope: Scope) -> Result<Option<Witness>> {
    let k = g.is_k_regular().expect("regular");
    let cp = char_poly(&g.adjacency_matrix());
    for h in enumerate_regular(g.n(), k)? {
        if char_poly(&h.adjacency_matrix()) != cp || are_isomorphic(g, &h)? {
            continue;
        }
        if let Some(w) = Witness::verify(m, &scale_to_ds(&h)?, scope, "regular-graph-mate")? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn random_sds(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut x = vec![vec![0.0; n]; n];
    let terms = n + 1;
    let weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut perm: Vec<usize> = (0..n).collect();
    for w in weights {
        perm.shuffle(rng);
        for i in 0..n {
            x[i][perm[i]] += 0.5 * w / total;
            x[perm[i]][i] += 0.5 * w / total;
        }
    }
    x
}

/// Nearest symmetric matrix with unit row sums: `Y + u e^T + e u^T`.
fn project_affine(y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = y.len();
    let nf = n as f64;
    let r: Vec<f64> = y.iter().map(|row| 1.0 - row.iter().sum::<f64>()).collect();
    let s = r.iter().sum::<f64>() / (2.0 * nf);
    let u: Vec<f64> = r.iter().map(|ri| (ri - s) / nf).collect();
    (0..n).map(|i| (0..n).map(|j| y[i][j] + u[i] + u[j]).collect()).collect()
}

/// Dykstra's alternating projections onto the affine set and the
/// nonnegative orthant; the result is nonnegative with near-unit sums.
fn project_sds(y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = y.len();
    let mut x = y.to_vec();
    let mut p = vec![vec![0.0; n]; n];
    let mut q = vec![vec![0.0; n]; n];
    for _ in 0..DYKSTRA_STEPS {
        let shifted: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| x[i][j] + p[i][j]).collect()).collect();
        let a = project_affine(&shifted);
        for i in 0..n {
            for j in 0..n {
                p[i][j] = shifted[i][j] - a[i][j];
            }
        }
        let mut change = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v = a[i][j] + q[i][j];
                let c = v.max(0.0);
                q[i][j] = v - c;
                change = change.max((c - x[i][j]).abs());
                x[i][j] = c;
            }
        }
        if change < 1e-15 {
            break;
        }
    }
    x
}

/// Replace the eigenvalues of `x` by `target` (both descending) in its own
/// eigenbasis; returns the new matrix and the spectral distance of `x`.
fn spectral_step(x: &[Vec<f64>], target: &[f64]) -> Result<(Vec<Vec<f64>>, f64)> {
    let e = jacobi_eigen(x)?;
    let n = x.len();
    let dist = e.values.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let y = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| e.vectors[i][k] * target[k] * e.vectors[j][k]).sum()).collect()).collect();
    Ok((y, dist))
}

/// Snap to rationals with bounded denominators: off-diagonal entries by
/// continued fractions, diagonal entries from the row sums.
pub fn reconstruct(x: &[Vec<f64>]) -> Option<ExactMatrix> {
    let n = x.len();
    let mut q = vec![Rational::from_integer(0.into()); n * n];
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let r = best_rational(x[i][j], MAX_DENOMINATOR);
            worst = worst.max((crate::exactmat::scalar::rational_to_f64(&r) - x[i][j]).abs());
            q[i * n + j] = r.clone();
            q[j * n + i] = r;
        }
    }
    for i in 0..n {
        let off: Rational = (0..n).filter(|&j| j != i).map(|j| q[i * n + j].clone()).sum();
        let d = Rational::from_integer(1.into()) - off;
        worst = worst.max((crate::exactmat::scalar::rational_to_f64(&d) - x[i][i]).abs());
        q[i * n + i] = d;
    }
    if worst > RECONSTRUCTION_TOLERANCE {
        return None;
    }
    ExactMatrix::from_rationals(n, q).ok()
}

/// Alternate spectral replacement and polytope projection from seeded random
/// starts; every converged iterate that reconstructs exactly is offered to
/// `accept`, and the search stops when it returns true.
pub fn isospectral(
    target: &[f64],
    rng: &mut ChaCha8Rng,
    budget: usize,
    iterations: &mut usize,
    mut accept: impl FnMut(&ExactMatrix) -> bool,
) -> Result<bool> {
    let n = target.len();
    let mut used = 0;
    while used < budget {
        let mut x = random_sds(n, rng);
        for _ in 0..RESTART_EVERY.min(budget - used) {
            used += 1;
            *iterations += 1;
            let (y, dist) = match spectral_step(&x, target) {
                Ok(v) => v,
                Err(Error::NoConvergence { .. }) => break,
                Err(e) => return Err(e),
            };
            if dist < SPECTRAL_TOLERANCE {
                if let Some(cand) = reconstruct(&x) {
                    if accept(&cand) {
                        return Ok(true);
                    }
                }
                // converged to something else: restart
                break;
            }
            x = project_sds(&y);
        }
    }
    Ok(false)
}
