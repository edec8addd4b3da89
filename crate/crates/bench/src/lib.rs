//! Shared fixtures for the criterion benches.

use dsmat::exactmat::families::{j_matrix, permutation_matrix};
use dsmat::graphbridge::Graph;
use dsmat::{direct_sum, rat, ExactMatrix, TriPoint};

/// The trace-1/3 matrix on the segment from `C_3` to `Z`.
pub fn slice_example() -> ExactMatrix {
    ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]]).expect("valid")
}

pub fn off_segment_point() -> TriPoint {
    TriPoint::from_ratios((1, 2), (1, 2)).expect("in domain")
}

/// `J_2 + J_4` and `J_3 + J_3`: cospectral, not permutation similar.
pub fn block_pair() -> (ExactMatrix, ExactMatrix) {
    (
        direct_sum(&[j_matrix(2), j_matrix(4)]).expect("blocks"),
        direct_sum(&[j_matrix(3), j_matrix(3)]).expect("blocks"),
    )
}

/// A symmetric doubly stochastic `n x n` matrix with distinct entries, and a
/// relabelled copy.
pub fn relabelled_pair(n: usize) -> (ExactMatrix, ExactMatrix) {
    let mut m = ExactMatrix::zeros(n);
    for s in 1..n {
        let shift: Vec<usize> = (0..n).map(|i| (i + s) % n).collect();
        let p = permutation_matrix(&shift).expect("permutation");
        let sym = p.add(&p.transpose()).expect("same size");
        m = m.add(&sym.scale_rational(&rat(s as i64, (n * (n - 1)) as i64))).expect("same size");
    }
    let perm: Vec<usize> = (0..n).rev().collect();
    let b = m.permuted(&perm).expect("permutation");
    (m, b)
}

pub fn petersen() -> Graph {
    let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
    let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
    let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
    Graph::from_edges(10, &edges).expect("simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_doubly_stochastic() {
        assert!(slice_example().is_doubly_stochastic());
        let (a, b) = relabelled_pair(7);
        assert!(a.is_doubly_stochastic() && a.is_symmetric() && b.is_doubly_stochastic());
        assert_eq!(petersen().is_k_regular(), Some(3));
    }
}
