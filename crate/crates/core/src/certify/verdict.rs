use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::permsim::{are_perm_similar, Separation};
use crate::spectra::{char_poly, similarity_decision, CharPoly};

/// Ambient class for the determined-by-spectrum question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scope {
    /// Symmetric doubly stochastic matrices.
    #[serde(rename = "sym")]
    Symmetric,
    /// All doubly stochastic matrices.
    #[serde(rename = "full")]
    Full,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Symmetric => "sym",
            Scope::Full => "full",
        })
    }
}

impl std::str::FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Scope::Symmetric),
            "full" => Ok(Scope::Full),
            _ => Err(Error::Parse(format!("unknown scope `{s}` (expected sym or full)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    CertifiedDS,
    RefutedDS,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Why a matrix is determined by its spectrum: the first matching family
/// plus every other family it also belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub basis: String,
    pub also: Vec<String>,
}

/// A cospectral (hence, for symmetric pairs, similar) matrix of the same
/// class that is not permutationally similar to the input. Only
/// [`Witness::verify`] builds one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub matrix: ExactMatrix,
    pub strategy: String,
    pub char_poly: CharPoly,
    /// The invariant (or exhaustive search) that separates the pair.
    pub separation: Separation,
}

impl Witness {
    /// `Some` only when every check passes exactly: doubly stochastic,
    /// symmetric in the symmetric scope, similar to `m`, and not
    /// permutationally similar to it.
    pub fn verify(m: &ExactMatrix, candidate: &ExactMatrix, scope: Scope, strategy: &str) -> Result<Option<Witness>> {
        if candidate.n() != m.n() || !candidate.is_doubly_stochastic() {
            return Ok(None);
        }
        if scope == Scope::Symmetric && !candidate.is_symmetric() {
            return Ok(None);
        }
        let cp = char_poly(m);
        if char_poly(candidate) != cp {
            return Ok(None);
        }
        let similar = if m.is_symmetric() && candidate.is_symmetric() {
            true
        } else {
            match similarity_decision(m, candidate) {
                Ok(d) => d.similar,
                Err(Error::SimilarityUndecided(_)) => false,
                Err(e) => return Err(e),
            }
        };
        if !similar {
            return Ok(None);
        }
        let separation = match are_perm_similar(m, candidate) {
            Ok(w) => match w.invariant_report {
                Some(s) => s,
                None => return Ok(None),
            },
            Err(Error::OverBudget { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(Some(Witness {
            matrix: candidate.clone(),
            strategy: strategy.to_string(),
            char_poly: cp,
            separation,
        }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub iterations: usize,
    pub strategies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub scope: Scope,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub seed: u64,
    pub budget: usize,
    pub stats: SearchStats,
}

impl Verdict {
    /// 0 certified, 3 refuted, 4 unknown.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::CertifiedDS => 0,
            Status::RefutedDS => 3,
            Status::Unknown => 4,
        }
    }
}
