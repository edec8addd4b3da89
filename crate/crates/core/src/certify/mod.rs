//! Verdicts on whether a doubly stochastic matrix is determined by its
//! spectrum. A certificate names a family known to be determined; a
//! refutation carries an exactly re-verified mate; anything else is
//! `Unknown`, which is an honest outcome rather than a failure.

pub mod characterize;
pub mod patterns;
pub mod scan;
pub mod search;
pub mod verdict;

pub use characterize::{positive_realization_check, spectrum_characterization, Characterization, CharacterizationReport, PositiveRealization};
pub use scan::{conjecture_scan, ScanReport};
pub use search::{mate_search, MateSearch};
pub use verdict::{Certificate, Scope, SearchStats, Status, Verdict, Witness};

use crate::error::{Error, Result};
use crate::exactmat::families::j_matrix;
use crate::exactmat::{direct_sum, ExactMatrix};
use crate::triangle3::{classify, mate_for, Verdict3};

pub const DEFAULT_BUDGET: usize = 1000;

/// Every known determined family containing `m`, in pipeline order.
pub fn certified_families(m: &ExactMatrix, scope: Scope) -> Vec<String> {
    let n = m.n();
    let mut out = Vec::new();
    if n <= 2 {
        out.push("order-two".into());
    }
    if n == 3 && scope == Scope::Symmetric && m.is_symmetric() && m.is_rational() {
        if let Ok(cls) = classify(m) {
            if let Verdict3::OnSegment { segment, t } = cls.verdict {
                out.push(format!("n3-segment {segment} t={t}"));
            }
        }
    }
    if m.is_permutation() {
        out.push("permutation-matrix".into());
    }
    if let Some(name) = patterns::named_matrix(m) {
        out.push(name);
    }
    if let Some(a) = patterns::d_segment(m) {
        out.push(format!("d-segment [I_{n},C_{n}] a={a}"));
    }
    if let Some(sizes) = patterns::c_block_sum(m) {
        let parts: Vec<String> = sizes.iter().map(|s| format!("C_{s}")).collect();
        out.push(format!("c-block-sum {}", parts.join("+")));
    }
    if let Some((h, t)) = patterns::block_segment(m) {
        out.push(format!("block-segment [I,C] h={h} t={t}"));
    }
    out
}

pub fn certify(m: &ExactMatrix, scope: Scope, seed: u64, budget: usize) -> Result<Verdict> {
    if !m.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    if scope == Scope::Symmetric && !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let verdict = |status, certificate, witness, stats| Verdict {
        status,
        scope,
        certificate,
        witness,
        seed,
        budget,
        stats,
    };
    let n = m.n();
    // n = 3: off the seven segments a mate always exists, in either scope
    if n == 3 && m.is_symmetric() && m.is_rational() && !classify(m)?.is_ds() {
        let mate = mate_for(m)?;
        let w = Witness::verify(m, &mate, scope, "n3-level-curve")?.ok_or_else(|| Error::Internal("level-curve mate failed verification".into()))?;
        return Ok(verdict(Status::RefutedDS, None, Some(w), SearchStats::default()));
    }
    let families = certified_families(m, scope);
    if let Some((basis, also)) = families.split_first() {
        let cert = Certificate {
            basis: basis.clone(),
            also: also.to_vec(),
        };
        return Ok(verdict(Status::CertifiedDS, Some(cert), None, SearchStats::default()));
    }
    if let Some(sizes) = patterns::j_block_sum(m) {
        if let Some(other) = patterns::other_partition(&sizes) {
            let blocks: Vec<ExactMatrix> = other.iter().map(|&s| j_matrix(s)).collect();
            if let Some(w) = Witness::verify(m, &direct_sum(&blocks)?, scope, "j-block-repartition")? {
                return Ok(verdict(Status::RefutedDS, None, Some(w), SearchStats::default()));
            }
        }
    }
    let search = mate_search(m, scope, seed, budget)?;
    Ok(match search.witness {
        Some(w) => verdict(Status::RefutedDS, None, Some(w), search.stats),
        None => verdict(Status::Unknown, None, None, search.stats),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::families::*;
    use crate::exactmat::rat;

    fn slice_example() -> ExactMatrix {
        ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]]).unwrap()
    }

    #[test]
    fn small_orders() {
        let m = ExactMatrix::from_ratios(&[&[(1, 3), (2, 3)], &[(2, 3), (1, 3)]]).unwrap();
        let v = certify(&m, Scope::Full, 0, 0).unwrap();
        assert_eq!(v.status, Status::CertifiedDS);
        assert_eq!(v.certificate.unwrap().basis, "order-two");
    }

    #[test]
    fn three_by_three() {
        let v = certify(&slice_example(), Scope::Symmetric, 0, 0).unwrap();
        assert_eq!(v.status, Status::CertifiedDS);
        assert_eq!(v.certificate.unwrap().basis, "n3-segment [C,Z] t=1/3");
        let off = crate::triangle3::tri_to_matrix(&crate::triangle3::TriPoint::from_ratios((1, 2), (1, 2)).unwrap()).unwrap();
        for scope in [Scope::Symmetric, Scope::Full] {
            let v = certify(&off, scope, 0, 0).unwrap();
            assert_eq!(v.status, Status::RefutedDS);
            assert_eq!(v.exit_code(), 3);
        }
        // segment certification covers the symmetric class only
        assert_eq!(certify(&slice_example(), Scope::Full, 0, 0).unwrap().status, Status::Unknown);
    }

    #[test]
    fn named_families() {
        let c = certify(&c_matrix(3).unwrap(), Scope::Symmetric, 0, 0).unwrap().certificate.unwrap();
        assert!(c.basis.starts_with("n3-segment"));
        assert!(c.also.contains(&"complete C_3".to_string()));
        let p = permutation_matrix(&[1, 2, 3, 0]).unwrap();
        assert_eq!(certify(&p, Scope::Full, 0, 0).unwrap().certificate.unwrap().basis, "permutation-matrix");
        let d = d_of_trace(5, &rat(2, 1)).unwrap();
        assert_eq!(certify(&d, Scope::Full, 0, 0).unwrap().certificate.unwrap().basis, "d-segment [I_5,C_5] a=2");
        let s = direct_sum(&[c_matrix(2).unwrap(), c_matrix(3).unwrap()]).unwrap();
        assert_eq!(certify(&s, Scope::Symmetric, 0, 0).unwrap().certificate.unwrap().basis, "c-block-sum C_2+C_3");
        let s = direct_sum(&[c_matrix(3).unwrap(), c_matrix(3).unwrap()]).unwrap();
        assert_eq!(certify(&s, Scope::Symmetric, 0, 0).unwrap().certificate.unwrap().basis, "c-block-sum C_3+C_3");
    }

    #[test]
    fn j_partition_mates() {
        let m = direct_sum(&[j_matrix(3), j_matrix(3)]).unwrap();
        let v = certify(&m, Scope::Symmetric, 0, 0).unwrap();
        assert_eq!(v.status, Status::RefutedDS);
        let w = v.witness.unwrap();
        assert_eq!(w.matrix, direct_sum(&[j_matrix(2), j_matrix(4)]).unwrap());
        assert_eq!(w.separation, crate::permsim::Separation::EntryMultiset);
    }

    #[test]
    fn scope_preconditions() {
        let p = permutation_matrix(&[1, 2, 0]).unwrap();
        assert_eq!(certify(&p, Scope::Symmetric, 0, 0), Err(Error::NotSymmetric));
        let bad = ExactMatrix::from_ratios(&[&[(1, 1), (1, 1)], &[(0, 1), (0, 1)]]).unwrap();
        assert_eq!(certify(&bad, Scope::Full, 0, 0), Err(Error::NotDoublyStochastic));
    }
}
