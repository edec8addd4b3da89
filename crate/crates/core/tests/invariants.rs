use dsmat::exactmat::families::{block_j, j_matrix, permutation_matrix};
use dsmat::graphbridge::Graph;
use dsmat::spectra::block_det;
use dsmat::triangle3::{f, Verdict3};
use dsmat::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Rational doubly stochastic matrix as a weighted sum of permutation
/// matrices; symmetrised on request.
fn ds(n: usize, symmetric: bool) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((perm(n), 1i64..10), 1..4).prop_map(move |terms| {
        let total: i64 = terms.iter().map(|(_, w)| w).sum();
        let mut m = ExactMatrix::zeros(n);
        for (p, w) in terms {
            let pm = permutation_matrix(&p).unwrap();
            let pm = if symmetric { pm.add(&pm.transpose()).unwrap().scale_rational(&rat(1, 2)) } else { pm };
            m = m.add(&pm.scale_rational(&rat(w, total))).unwrap();
        }
        m
    })
}

fn sized_ds(symmetric: bool) -> impl Strategy<Value = ExactMatrix> {
    (2usize..=6).prop_flat_map(move |n| ds(n, symmetric))
}

fn with_perm(symmetric: bool) -> impl Strategy<Value = (ExactMatrix, Vec<usize>)> {
    (2usize..=6).prop_flat_map(move |n| (ds(n, symmetric), perm(n)))
}

fn tri_point() -> impl Strategy<Value = TriPoint> {
    (1i64..=24, 0i64..=24).prop_flat_map(|(den, x)| {
        let x = x.min(den);
        (Just(den), Just(x), 0..=den - x)
    })
    .prop_map(|(den, x, y)| TriPoint::from_ratios((x, den), (y, den)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_is_a_class_invariant((m, p) in with_perm(false)) {
        let c = canonical_form(&m).unwrap();
        prop_assert_eq!(&canonical_form(&m.permuted(&p).unwrap()).unwrap(), &c);
        prop_assert!(are_perm_similar(&m, &c).unwrap().is_similar());
    }

    #[test]
    fn perm_similarity_witness_is_checkable((m, p) in with_perm(false)) {
        let b = m.permuted(&p).unwrap();
        let w = are_perm_similar(&m, &b).unwrap();
        let sigma = w.permutation.clone().expect("permuted copy must match");
        prop_assert_eq!(m.permuted(&sigma).unwrap(), b);
    }

    #[test]
    fn char_poly_ignores_relabeling((m, p) in with_perm(false)) {
        prop_assert_eq!(char_poly(&m.permuted(&p).unwrap()), char_poly(&m));
    }

    #[test]
    fn char_poly_multiplies_over_direct_sums(a in sized_ds(false), b in sized_ds(false)) {
        let sum = direct_sum(&[a.clone(), b.clone()]).unwrap();
        let (pa, pb) = (char_poly(&a).to_rational().unwrap(), char_poly(&b).to_rational().unwrap());
        prop_assert_eq!(char_poly(&sum).to_rational().unwrap(), pa.mul(&pb));
    }

    #[test]
    fn ds_matrices_have_eigenvalue_one(m in sized_ds(false)) {
        prop_assert!(char_poly(&m).to_rational().unwrap().eval(&Rational::one()).is_zero());
    }

    #[test]
    fn bipartite_blocks_are_cospectral_with_block_j(a in sized_ds(false)) {
        let m = block_bipartite(&a).unwrap();
        prop_assert!(m.is_doubly_stochastic());
        prop_assert_eq!(m.is_symmetric(), a == j_matrix(a.n()));
        prop_assert_eq!(char_poly(&m), char_poly(&block_j(a.n()).unwrap()));
    }

    #[test]
    fn inverses_of_quasi_stochastic_matrices_are_quasi_stochastic(m in sized_ds(false), s in 2i64..6) {
        // s I + M over s + 1: still quasi-stochastic, and nonsingular since
        // every eigenvalue of M has modulus at most 1 < s when s > 1
        let n = m.n();
        let shifted = m.scale_rational(&rat(1, s + 1)).add(&ExactMatrix::identity(n).scale_rational(&rat(s, s + 1))).unwrap();
        prop_assert!(shifted.is_doubly_quasi_stochastic());
        let inv = shifted.inverse().unwrap();
        prop_assert!(inv.is_doubly_quasi_stochastic());
        prop_assert_eq!(inv.mul(&shifted).unwrap(), ExactMatrix::identity(n));
    }

    #[test]
    fn block_det_agrees_with_full_det(a in sized_ds(false), b in sized_ds(false), s in -3i64..4) {
        prop_assume!(a.n() == b.n());
        let n = a.n();
        // C commutes with A
        let c = a.scale_rational(&rat_int(s)).add(&ExactMatrix::identity(n)).unwrap();
        let d = j_matrix(n);
        let got = block_det(&a, &b, &c, &d).unwrap();
        prop_assert_eq!(got, ExactMatrix::from_blocks(&a, &b, &c, &d).unwrap().det());
    }

    #[test]
    fn f_stays_in_unit_interval(p in tri_point()) {
        let v = f(&p).unwrap();
        prop_assert!(v >= Rational::zero() && v <= Rational::one());
    }

    #[test]
    fn classify_and_mate_are_consistent(m in ds(3, true)) {
        let c = classify(&m).unwrap();
        match c.verdict {
            Verdict3::OnSegment { segment, t } => {
                let (lo, hi) = segment.endpoints();
                prop_assert_eq!(segment_point(&lo, &hi, &t).unwrap(), m);
            }
            Verdict3::NotDS => {
                let mate = mate_for(&m).unwrap();
                prop_assert!(mate.is_doubly_stochastic() && mate.is_symmetric());
                prop_assert_eq!(char_poly(&mate), char_poly(&m));
                prop_assert!(!are_perm_similar(&m, &mate).unwrap().is_similar());
            }
        }
    }

    #[test]
    fn certify_is_deterministic_and_equivariant((m, p) in with_perm(true), seed in 0u64..4) {
        let v = certify(&m, Scope::Symmetric, seed, 200).unwrap();
        prop_assert_eq!(&certify(&m, Scope::Symmetric, seed, 200).unwrap(), &v);
        let w = certify(&m.permuted(&p).unwrap(), Scope::Symmetric, seed, 200).unwrap();
        // a witness found for one labelling refutes every labelling
        if v.status != Status::Unknown && w.status != Status::Unknown {
            prop_assert_eq!(v.status, w.status);
        }
        if let Some(wit) = &v.witness {
            prop_assert!(wit.matrix.is_doubly_stochastic() && wit.matrix.is_symmetric());
            prop_assert_eq!(char_poly(&wit.matrix), char_poly(&m));
            prop_assert!(!are_perm_similar(&m, &wit.matrix).unwrap().is_similar());
        }
    }

    #[test]
    fn matrix_json_round_trips(m in sized_ds(false)) {
        prop_assert_eq!(ExactMatrix::from_json_str(&m.to_json_string()).unwrap(), m);
    }

    #[test]
    fn graph6_round_trips(n in 1usize..=12, bits in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .enumerate()
            .filter(|(b, _)| bits >> (b % 64) & 1 == 1 && b % 3 != 0)
            .map(|(_, e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn enumeration_is_canonical_regular_and_pairwise_distinct(n in 3usize..=8, k in 1usize..=7) {
        prop_assume!(k < n && n * k % 2 == 0);
        let gs = enumerate_regular(n, k).unwrap();
        prop_assert!(!gs.is_empty());
        for (i, g) in gs.iter().enumerate() {
            prop_assert_eq!(g.is_k_regular(), Some(k));
            prop_assert_eq!(&dsmat::graphbridge::canonical_graph(g).unwrap(), g);
            for h in &gs[i + 1..] {
                prop_assert!(!dsmat::graphbridge::are_isomorphic(g, h).unwrap());
            }
        }
    }

    #[test]
    fn scaled_graphs_are_trace_free_ds(n in 3usize..=8, k in 1usize..=7, pick in any::<prop::sample::Index>()) {
        prop_assume!(k < n && n * k % 2 == 0);
        let gs = enumerate_regular(n, k).unwrap();
        let g = pick.get(&gs);
        let m = scale_to_ds(g).unwrap();
        prop_assert!(m.is_doubly_stochastic() && m.is_symmetric());
        prop_assert!(m.trace().is_zero());
        // trace of A^2 counts each edge twice
        let a = g.adjacency_matrix();
        prop_assert_eq!(a.mul(&a).unwrap().trace(), QuadScalar::from_int(2 * g.edge_count() as i64));
    }

    #[test]
    fn strongly_regular_graphs_satisfy_the_counting_identity(n in 4usize..=9, k in 1usize..=8, pick in any::<prop::sample::Index>()) {
        prop_assume!(k < n && n * k % 2 == 0);
        let gs = enumerate_regular(n, k).unwrap();
        let g = pick.get(&gs);
        if let Some(p) = srg_params(g) {
            prop_assert!(p.feasible());
            prop_assert_eq!(p.k * (p.k - p.lambda - 1), (p.v - p.k - 1) * p.mu);
            // A^2 = k I + lambda A + mu (J - I - A)
            let a = g.adjacency_matrix();
            let a2 = a.mul(&a).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { p.k } else if g.has_edge(i, j) { p.lambda } else { p.mu };
                    prop_assert_eq!(g.common_neighbours(i, j), want);
                    prop_assert_eq!(a2.get(i, j), &QuadScalar::from_int(want as i64));
                }
            }
        }
    }
}
