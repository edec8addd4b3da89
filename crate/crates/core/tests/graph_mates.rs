use dsmat::*;

/// The smallest cospectral regular pairs appear at ten vertices; each scaled
/// matrix must be refuted by a checkable witness.
#[test]
fn ten_vertex_mates_refute_their_scaled_matrices() {
    let mut pairs = 0;
    for k in [3, 4, 5, 6] {
        for p in cospectral_mates(10, k).unwrap() {
            pairs += 1;
            assert_ne!(p.g, p.h);
            assert_eq!(char_poly(&p.g.adjacency_matrix()), char_poly(&p.h.adjacency_matrix()));
            assert!(!are_perm_similar(&p.scaled_g, &p.scaled_h).unwrap().is_similar());
            for m in [&p.scaled_g, &p.scaled_h] {
                let v = certify(m, Scope::Symmetric, 0, 0).unwrap();
                assert_eq!(v.status, Status::RefutedDS, "{} / {}", p.g, p.h);
                let w = v.witness.unwrap();
                assert!(w.matrix.is_doubly_stochastic() && w.matrix.is_symmetric());
                assert_eq!(char_poly(&w.matrix), char_poly(m));
                assert!(!are_perm_similar(m, &w.matrix).unwrap().is_similar());
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn graph_reports_separate_graph_and_matrix_questions() {
    let pair = cospectral_mates(10, 4).unwrap().remove(0);
    let r = graph_ds_report(&pair.g, 0, 0).unwrap();
    assert!(!r.ds_among_graphs);
    assert!(r.graph_mates.contains(&pair.h));
    assert_eq!(r.matrix_verdict.status, Status::RefutedDS);
}
