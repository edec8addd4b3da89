//! Exact similarity decisions over `Q`, minimal polynomials and the
//! commuting-block determinant identity.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::charpoly::char_poly;
use super::poly::RatPoly;
use super::roots::split_low_degree;
use crate::error::{Error, Result};
use crate::exactmat::scalar::Rational;
use crate::exactmat::{ExactMatrix, QuadScalar};

/// Dimension limit for the commutant fallback (`n^2` unknowns).
pub const COMMUTANT_LIMIT: usize = 12;

/// Rank of a dense rectangular rational matrix.
pub fn rank_rect(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rational::one() / &rows[rank][c];
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = rows[r][c].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    rows[r][j] -= &f * pv;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn rational_matrix(m: &ExactMatrix) -> Result<Vec<Rational>> {
    m.rational_entries()
        .ok_or_else(|| Error::OutOfRange("exact similarity needs rational entries".into()))
}

/// Monic minimal polynomial from the first linear dependence among
/// `I, M, M^2, ...` (flattened to vectors).
pub fn minimal_polynomial(m: &ExactMatrix) -> Result<RatPoly> {
    let n = m.n();
    rational_matrix(m)?;
    // reduced basis: (pivot column, row vector, combination over powers)
    let mut basis: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut power = ExactMatrix::identity(n);
    for k in 0..=n {
        let mut v = rational_matrix(&power)?;
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (pc, bv, bc) in &basis {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(bv) {
                *x -= &f * y;
            }
            for (i, y) in bc.iter().enumerate() {
                comb[i] -= &f * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(RatPoly::new(comb).monic()),
            Some(pc) => {
                let inv = Rational::one() / &v[pc];
                let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
                let comb: Vec<Rational> = comb.iter().map(|x| x * &inv).collect();
                basis.push((pc, v, comb));
            }
        }
        power = power.mul(m)?;
    }
    Err(Error::Internal("no dependence among n + 1 powers".into()))
}

/// `dim { X : A X = X B }` as `n^2 - rank(I (x) A - B^T (x) I)`.
pub fn intertwiner_dimension(a: &ExactMatrix, b: &ExactMatrix) -> Result<usize> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.n() });
    }
    if n > COMMUTANT_LIMIT {
        return Err(Error::OverBudget { n, limit: COMMUTANT_LIMIT });
    }
    let ae = rational_matrix(a)?;
    let be = rational_matrix(b)?;
    // unknown x_{kl} at column k*n + l; equation (i, j): sum_k a_ik x_kj - sum_l x_il b_lj
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[k * n + j] += &ae[i * n + k];
            }
            for l in 0..n {
                row[i * n + l] -= &be[l * n + j];
            }
            rows.push(row);
        }
    }
    Ok(n * n - rank_rect(rows))
}

/// How a similarity decision was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilarityMethod {
    CharPolyDiffers,
    SymmetricCospectral,
    SquareFreeCharPoly,
    FactorRanks,
    Commutant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityDecision {
    pub similar: bool,
    pub method: SimilarityMethod,
}

fn power_ranks(q: &RatPoly, m: &ExactMatrix, upto: usize) -> Vec<usize> {
    let base = q.eval_matrix(m);
    let mut acc = base.clone();
    let mut out = Vec::with_capacity(upto);
    for j in 1..=upto {
        let r = acc.rank();
        out.push(r);
        if r == 0 || j == upto {
            out.resize(upto, r);
            break;
        }
        acc = acc.mul(&base).expect("same dimension");
    }
    out
}

/// Decide similarity over `Q` of two rational matrices.
pub fn similarity_decision(a: &ExactMatrix, b: &ExactMatrix) -> Result<SimilarityDecision> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    rational_matrix(a)?;
    rational_matrix(b)?;
    let decided = |similar, method| Ok(SimilarityDecision { similar, method });
    let pa = char_poly(a);
    if pa != char_poly(b) {
        return decided(false, SimilarityMethod::CharPolyDiffers);
    }
    // real symmetric matrices are orthogonally diagonalizable
    if a.is_symmetric() && b.is_symmetric() {
        return decided(true, SimilarityMethod::SymmetricCospectral);
    }
    let p = pa.to_rational().expect("rational input");
    let g = p.gcd(&p.derivative());
    if g.degree() == 0 {
        return decided(true, SimilarityMethod::SquareFreeCharPoly);
    }
    // only factors repeated in p can carry different Jordan structure
    let split = split_low_degree(&g);
    let mut factors: Vec<RatPoly> = split.linear.iter().map(RatPoly::linear).collect();
    factors.extend(split.quadratic.iter().cloned());
    for q in &factors {
        let mult = p.multiplicity(q);
        if power_ranks(q, a, mult) != power_ranks(q, b, mult) {
            return decided(false, SimilarityMethod::FactorRanks);
        }
    }
    if split.rest.degree() == 0 {
        return decided(true, SimilarityMethod::FactorRanks);
    }
    if a.n() > COMMUTANT_LIMIT {
        return Err(Error::SimilarityUndecided(format!(
            "repeated factor {} of degree {} and n = {} above the commutant limit",
            split.rest,
            split.rest.degree(),
            a.n()
        )));
    }
    let ab = intertwiner_dimension(a, b)?;
    let aa = intertwiner_dimension(a, a)?;
    let bb = intertwiner_dimension(b, b)?;
    decided(ab == aa && aa == bb, SimilarityMethod::Commutant)
}

pub fn are_similar_exact(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    similarity_decision(a, b).map(|d| d.similar)
}

/// Determinant of `[[A, B], [C, D]]` for commuting `A`, `C`, computed both
/// directly and as `det(AD - CB)`; the two must agree.
pub fn block_det(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> Result<QuadScalar> {
    if a.mul(c)? != c.mul(a)? {
        return Err(Error::NotCommuting);
    }
    let full = ExactMatrix::from_blocks(a, b, c, d)?.det();
    let reduced = a.mul(d)?.sub(&c.mul(b)?)?.det();
    if full != reduced {
        return Err(Error::Internal(format!("block determinant paths disagree: {full} vs {reduced}")));
    }
    Ok(full)
}
