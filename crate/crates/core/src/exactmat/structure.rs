//! Support-digraph structure: irreducible components and the cyclic
//! (imprimitive) block form.

use num_integer::Integer;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};

/// One irreducible diagonal block together with the original indices it
/// occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub indices: Vec<usize>,
    pub block: ExactMatrix,
}

/// Strongly connected components of the support digraph (edge `i -> j` iff
/// entry `(i, j)` is nonzero), each sorted, ordered by smallest member.
pub fn strongly_connected(m: &ExactMatrix) -> Vec<Vec<usize>> {
    let adj = m.support();
    let n = m.n();
    // iterative Tarjan
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut comps = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, next)) = call.last() {
            if next < adj[v].len() {
                let w = adj[v][next];
                call.last_mut().expect("nonempty").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Split a doubly stochastic matrix into its irreducible diagonal blocks.
///
/// For doubly stochastic input every entry outside the returned blocks is
/// zero, so `direct_sum(blocks)` equals `M.permuted(&component_order(..))`.
pub fn irreducible_components(m: &ExactMatrix) -> Result<Vec<Component>> {
    if !m.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    Ok(strongly_connected(m)
        .into_iter()
        .map(|idx| Component {
            block: m.principal_submatrix(&idx),
            indices: idx,
        })
        .collect())
}

/// Concatenated component index lists: the permutation bringing `M` to
/// block-diagonal form.
pub fn component_order(components: &[Component]) -> Vec<usize> {
    components.iter().flat_map(|c| c.indices.iter().copied()).collect()
}

pub fn is_irreducible(m: &ExactMatrix) -> bool {
    strongly_connected(m).len() == 1
}

/// Imprimitivity index `k` of an irreducible matrix with the vertex classes
/// of its cyclic block form (a single class when `k == 1`). Class `c` maps
/// into class `c + 1 mod k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Imprimitivity {
    pub index: usize,
    pub classes: Vec<Vec<usize>>,
}

/// `k` = gcd of the directed cycle lengths in the support digraph, computed
/// from BFS levels as the gcd of `level(u) + 1 - level(v)` over all edges.
pub fn imprimitivity_index(m: &ExactMatrix) -> Result<Imprimitivity> {
    if !is_irreducible(m) {
        return Err(Error::Reducible);
    }
    let adj = m.support();
    let n = m.n();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0usize;
    for u in 0..n {
        for &v in &adj[u] {
            let diff = (level[u] + 1).abs_diff(level[v]);
            g = g.gcd(&diff);
        }
    }
    // an irreducible 1x1 matrix with a nonzero entry has a self-loop
    let k = g.max(1);
    let mut classes = vec![Vec::new(); k];
    for (v, &l) in level.iter().enumerate() {
        classes[l % k].push(v);
    }
    Ok(Imprimitivity { index: k, classes })
}
