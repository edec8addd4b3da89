use serde::{Deserialize, Serialize};

use super::enumerate::{are_isomorphic, enumerate_regular};
use super::graph::{scale_to_ds, Graph};
use crate::certify::{certify, Scope, Verdict};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::spectra::{char_poly, CharPoly};

/// Two non-isomorphic `k`-regular graphs with the same adjacency spectrum,
/// and their scaled matrices (each refutes the other).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatePair {
    pub g: Graph,
    pub h: Graph,
    pub char_poly: CharPoly,
    pub scaled_g: ExactMatrix,
    pub scaled_h: ExactMatrix,
}

/// All cospectral pairs among the `k`-regular graphs on `n` vertices, in
/// enumeration order.
pub fn cospectral_mates(n: usize, k: usize) -> Result<Vec<MatePair>> {
    let graphs = enumerate_regular(n, k)?;
    let polys: Vec<CharPoly> = graphs.iter().map(|g| char_poly(&g.adjacency_matrix())).collect();
    let mut out = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if polys[i] == polys[j] {
                out.push(MatePair {
                    g: graphs[i].clone(),
                    h: graphs[j].clone(),
                    char_poly: polys[i].clone(),
                    scaled_g: scale_to_ds(&graphs[i])?,
                    scaled_h: scale_to_ds(&graphs[j])?,
                });
            }
        }
    }
    Ok(out)
}

/// `n,k,g,h,char_poly` rows with graph6 columns.
pub fn mates_csv(n: usize, k: usize, pairs: &[MatePair]) -> String {
    let mut s = String::from("n,k,g,h,char_poly\n");
    for p in pairs {
        s.push_str(&format!("{n},{k},{},{},\"{}\"\n", p.g, p.h, p.char_poly));
    }
    s
}

/// Two separate facts about a regular graph, side by side: whether it is
/// determined by its spectrum among regular graphs of its size, and the
/// verdict on its scaled matrix among symmetric doubly stochastic ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDsReport {
    pub graph: Graph,
    pub n: usize,
    pub k: usize,
    pub class_size: usize,
    /// Graphs in the class cospectral with, but not isomorphic to, `graph`.
    pub graph_mates: Vec<Graph>,
    pub ds_among_graphs: bool,
    pub matrix_verdict: Verdict,
}

pub fn graph_ds_report(g: &Graph, seed: u64, budget: usize) -> Result<GraphDsReport> {
    let k = match g.is_k_regular() {
        Some(k) if k >= 1 => k,
        _ => return Err(Error::NotRegular),
    };
    let class = enumerate_regular(g.n(), k)?;
    let cp = char_poly(&g.adjacency_matrix());
    let mut mates = Vec::new();
    for h in &class {
        if char_poly(&h.adjacency_matrix()) == cp && !are_isomorphic(g, h)? {
            mates.push(h.clone());
        }
    }
    let verdict = certify(&scale_to_ds(g)?, Scope::Symmetric, seed, budget)?;
    Ok(GraphDsReport {
        graph: g.clone(),
        n: g.n(),
        k,
        class_size: class.len(),
        ds_among_graphs: mates.is_empty(),
        graph_mates: mates,
        matrix_verdict: verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Status;
    use crate::spectra::RatPoly;
    use crate::exactmat::rat_int;

    #[test]
    fn six_vertex_two_regular() {
        assert!(cospectral_mates(6, 2).unwrap().is_empty());
        let c6 = char_poly(&Graph::cycle(6).unwrap().adjacency_matrix()).to_rational().unwrap();
        let k3 = Graph::complete(3).unwrap();
        let two = char_poly(&Graph::disjoint_union(&[k3.clone(), k3]).unwrap().adjacency_matrix()).to_rational().unwrap();
        let root2 = RatPoly::linear(&rat_int(2));
        assert_eq!(c6.multiplicity(&root2), 1);
        assert_eq!(two.multiplicity(&root2), 2);
    }

    #[test]
    fn small_classes_have_no_mates() {
        for k in 1..4 {
            assert!(cospectral_mates(4, k).unwrap().is_empty());
        }
    }

    #[test]
    fn reports() {
        let r = graph_ds_report(&Graph::complete(4).unwrap(), 0, 0).unwrap();
        assert!(r.ds_among_graphs);
        assert_eq!(r.matrix_verdict.status, Status::CertifiedDS);
        let r = graph_ds_report(&Graph::complete_bipartite(3, 3).unwrap(), 0, 0).unwrap();
        assert!(r.ds_among_graphs);
        assert_eq!(r.class_size, 2);
        assert_eq!(r.matrix_verdict.certificate.unwrap().basis, "block-segment [I,C] h=3 t=2/3");
        assert_eq!(graph_ds_report(&Graph::path(4).unwrap(), 0, 0), Err(Error::NotRegular));
    }

    #[test]
    fn csv_layout() {
        let s = mates_csv(6, 2, &[]);
        assert_eq!(s, "n,k,g,h,char_poly\n");
    }
}
