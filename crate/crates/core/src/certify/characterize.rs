//! Which spectra pin down a symmetric doubly stochastic matrix up to
//! permutation similarity.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::search::isospectral;
use super::verdict::{Scope, SearchStats, Status};
use super::certify;
use crate::error::{Error, Result};
use crate::exactmat::families::{c_matrix, d_of_trace, identity, j_matrix, permutation_matrix};
use crate::exactmat::scalar::{format_rational, rational_to_f64};
use crate::exactmat::{rat, rat_int, ExactMatrix, Rational, Vertex3};
use crate::permsim::PERM_LIMIT;
use crate::spectra::{char_poly, CharPoly, RatPoly};
use crate::triangle3::{classify, mate_for, Verdict3};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Characterization {
    /// Exactly one matrix has this spectrum.
    Unique { matrix: ExactMatrix, basis: String },
    /// Every realization is a permutation image of `matrix`.
    Permutational { matrix: ExactMatrix, basis: String },
    /// Two realizations that are not permutation images of each other.
    NotPermutational { matrix: ExactMatrix, mate: ExactMatrix, basis: String },
    Unrealizable { reason: String },
    /// Beyond the settled cases; lists whatever realizations were found.
    Unknown { realizations: Vec<ExactMatrix>, stats: SearchStats },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub n: usize,
    /// Descending, as `p/q` strings.
    pub spectrum: Vec<String>,
    pub outcome: Characterization,
}

/// Validates and sorts descending; the largest value must be exactly one.
fn normalise(lambda: &[Rational]) -> Result<Vec<Rational>> {
    if lambda.is_empty() {
        return Err(Error::OutOfRange("empty spectrum".into()));
    }
    let mut l = lambda.to_vec();
    l.sort_by(|a, b| b.cmp(a));
    if !l[0].is_one() {
        return Err(Error::OutOfRange("the largest eigenvalue must be 1".into()));
    }
    if l.iter().any(|x| x.abs() > Rational::one()) {
        return Err(Error::OutOfRange("eigenvalues must lie in [-1, 1]".into()));
    }
    Ok(l)
}

/// `1 + sum` of the remaining eigenvalues.
fn trace(l: &[Rational]) -> Rational {
    l.iter().sum()
}

/// Symmetric permutation matrix with `r` disjoint transpositions `(0 1), (2 3), ...`.
fn involution(n: usize, r: usize) -> Result<ExactMatrix> {
    let images: Vec<usize> = (0..n).map(|i| if i < 2 * r { i ^ 1 } else { i }).collect();
    permutation_matrix(&images)
}

/// The trace-`a` point over `d X + (1 - d) J_3`, or why none exists.
fn realize3(l: &[Rational]) -> std::result::Result<ExactMatrix, String> {
    let one = Rational::one();
    let a = trace(l);
    let half = rat(1, 2);
    // the non-unit eigenvalues of the trace-one image are +-d
    let sigma = |x: &Rational| -> Rational {
        if a > one {
            &one + rat_int(2) * (x - &one) / (rat_int(3) - &a)
        } else if a < one {
            -&half + (x + &half) / &a
        } else {
            x.clone()
        }
    };
    if a.is_zero() {
        return if l[1] == -&half && l[2] == -&half { Ok(c_matrix(3).expect("n = 3")) } else { Err("trace 0 forces the spectrum of C_3".into()) };
    }
    if a == rat_int(3) {
        return Ok(identity(3));
    }
    let (s2, s3) = (sigma(&l[1]), sigma(&l[2]));
    if s2 != -s3.clone() || s2 > one || s2.is_negative() {
        return Err(format!("no trace-{a} symmetric doubly stochastic 3x3 matrix has this spectrum"));
    }
    let j = j_matrix(3);
    let slice = j.add(&Vertex3::X.matrix().sub(&j).expect("3x3").scale_rational(&s2)).expect("3x3");
    // undo the projection onto the trace-one slice
    let lifted = if a > one {
        let t = rat_int(2) / (rat_int(3) - &a);
        identity(3).add(&slice.sub(&identity(3)).expect("3x3").scale_rational(&(&one / &t)))
    } else if a < one {
        let c = c_matrix(3).expect("n = 3");
        c.add(&slice.sub(&c).expect("3x3").scale_rational(&a))
    } else {
        Ok(slice)
    };
    lifted.map_err(|e| e.to_string())
}

pub fn spectrum_characterization(lambda: &[Rational], seed: u64, budget: usize) -> Result<CharacterizationReport> {
    let l = normalise(lambda)?;
    let n = l.len();
    let report = |outcome| CharacterizationReport {
        n,
        spectrum: l.iter().map(format_rational).collect(),
        outcome,
    };
    let one = Rational::one();
    if trace(&l).is_negative() {
        return Ok(report(Characterization::Unrealizable {
            reason: "negative trace".into(),
        }));
    }
    if n == 1 {
        return Ok(report(Characterization::Unique {
            matrix: identity(1),
            basis: "order-one".into(),
        }));
    }
    if n == 2 {
        // [[p, 1 - p], [1 - p, p]] has eigenvalues 1 and 2p - 1
        let p = (&one + &l[1]) / rat_int(2);
        let q = &one - &p;
        let m = ExactMatrix::from_rationals(2, vec![p.clone(), q.clone(), q, p])?;
        return Ok(report(Characterization::Unique { matrix: m, basis: "order-two".into() }));
    }
    if l[1..].iter().all(|x| x.abs().is_one()) {
        let r = l.iter().filter(|x| x.is_negative()).count();
        return Ok(report(Characterization::Permutational {
            matrix: involution(n, r)?,
            basis: format!("vertex with {r} transpositions"),
        }));
    }
    if l[1..].iter().all(|x| *x == l[1]) {
        let a = trace(&l);
        return Ok(report(Characterization::Unique {
            matrix: d_of_trace(n, &a)?,
            basis: format!("d-segment [I_{n},C_{n}] a={a}"),
        }));
    }
    if n == 3 {
        let m = match realize3(&l) {
            Ok(m) => m,
            Err(reason) => return Ok(report(Characterization::Unrealizable { reason })),
        };
        let cls = classify(&m)?;
        return Ok(report(match cls.verdict {
            Verdict3::OnSegment { segment, t } => Characterization::Permutational {
                matrix: m,
                basis: format!("n3-segment {segment} t={t}"),
            },
            Verdict3::NotDS => Characterization::NotPermutational {
                mate: mate_for(&m)?,
                matrix: m,
                basis: "n3-level-curve".into(),
            },
        }));
    }
    let (realizations, stats) = search_realizations(&l, seed, budget)?;
    Ok(report(Characterization::Unknown { realizations, stats }))
}

fn search_realizations(l: &[Rational], seed: u64, budget: usize) -> Result<(Vec<ExactMatrix>, SearchStats)> {
    let mut stats = SearchStats::default();
    let mut found = Vec::new();
    if l.len() > PERM_LIMIT || budget == 0 {
        return Ok((found, stats));
    }
    stats.strategies.push("isospectral-search".into());
    let want = CharPoly::from_rational(&RatPoly::from_roots(l.iter()))?;
    let target: Vec<f64> = l.iter().map(rational_to_f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    isospectral(&target, &mut rng, budget, &mut stats.iterations, |m| {
        if m.is_doubly_stochastic() && char_poly(m) == want {
            found.push(m.clone());
            true
        } else {
            false
        }
    })?;
    Ok((found, stats))
}

/// Does a spectrum with a nonnegative inequality value have an entrywise
/// positive symmetric doubly stochastic realization?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveRealization {
    pub spectrum: Vec<String>,
    /// `1/n + sum lambda_i / ((n - i + 2)(n - i + 1))`.
    pub inequality_value: String,
    pub inequality_holds: bool,
    pub characterization: Characterization,
    /// Status of the representative realization in the symmetric class.
    pub representative_status: Option<Status>,
    pub zero_entries: Option<usize>,
    /// `Some(false)` when every realization is a permutation image of one
    /// with a zero entry.
    pub positive_realization_exists: Option<bool>,
    pub conclusion: String,
}

pub fn positive_realization_check(lambda: &[Rational], seed: u64, budget: usize) -> Result<PositiveRealization> {
    let l = normalise(lambda)?;
    let value = crate::triangle3::hw_inequality(&l)?;
    let report = spectrum_characterization(&l, seed, budget)?;
    let positive = |m: &ExactMatrix| m.entries().iter().all(|e| !e.is_zero() && !e.is_negative());
    let zeros = |m: &ExactMatrix| m.entries().iter().filter(|e| e.is_zero()).count();
    let (status, zero_entries, exists) = match &report.outcome {
        Characterization::Unique { matrix, .. } | Characterization::Permutational { matrix, .. } => {
            let v = certify(matrix, Scope::Symmetric, seed, 0)?;
            (Some(v.status), Some(zeros(matrix)), Some(positive(matrix)))
        }
        Characterization::NotPermutational { matrix, mate, .. } => (None, Some(zeros(matrix)), (positive(matrix) || positive(mate)).then_some(true)),
        Characterization::Unrealizable { .. } => (None, None, Some(false)),
        Characterization::Unknown { realizations, .. } => (None, None, realizations.iter().any(positive).then_some(true)),
    };
    let conclusion = match exists {
        Some(false) => "no positive symmetric doubly stochastic realization exists",
        Some(true) => "a positive symmetric doubly stochastic realization exists",
        None => "undetermined",
    };
    Ok(PositiveRealization {
        spectrum: report.spectrum.clone(),
        inequality_value: format_rational(&value),
        inequality_holds: !value.is_negative(),
        characterization: report.outcome,
        representative_status: status,
        zero_entries,
        positive_realization_exists: exists,
        conclusion: conclusion.into(),
    })
}
