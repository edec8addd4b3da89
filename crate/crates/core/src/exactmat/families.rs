//! Constructors for the named matrix families and the basic combinators
//! (segments, direct sums, bipartite block forms).

use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use super::scalar::{rat, rat_int, QuadScalar, Rational};
use crate::error::{Error, Result};

/// The three non-identity vertices of the trace-one slice of the 3x3
/// symmetric doubly stochastic polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex3 {
    X,
    Y,
    Z,
}

impl Vertex3 {
    pub const ALL: [Vertex3; 3] = [Vertex3::X, Vertex3::Y, Vertex3::Z];

    /// Index of the diagonal 1 of this vertex.
    pub fn fixed_point(self) -> usize {
        match self {
            Vertex3::X => 0,
            Vertex3::Y => 1,
            Vertex3::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Vertex3::X => "X",
            Vertex3::Y => "Y",
            Vertex3::Z => "Z",
        }
    }

    pub fn matrix(self) -> ExactMatrix {
        let f = self.fixed_point();
        // the other two indices are swapped
        let perm: Vec<usize> = (0..3)
            .map(|i| if i == f { i } else { 3 - f - i })
            .collect();
        permutation_matrix(&perm).expect("valid permutation")
    }
}

/// Named families accepted by [`construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Identity,
    /// Constant matrix with entries `1/n`.
    J,
    /// Zero diagonal, off-diagonal entries `1/(n-1)`.
    C,
    Vertex3(Vertex3),
    /// Permutation matrix with a one at `(i, images[i])`.
    Permutation(Vec<usize>),
    /// The point of trace `a` on the segment from `I_n` to `C_n`.
    DOfTrace(Rational),
    /// `[[0, I_h], [I_h, 0]]` where `n` is the half size `h`.
    BlockI,
    BlockJ,
    BlockC,
}

fn scalar_fill(n: usize, diag: QuadScalar, off: QuadScalar) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| if i == j { diag.clone() } else { off.clone() })
        .expect("valid dimension")
}

pub fn identity(n: usize) -> ExactMatrix {
    ExactMatrix::identity(n)
}

pub fn j_matrix(n: usize) -> ExactMatrix {
    let v = QuadScalar::from_ratio(1, n as i64);
    scalar_fill(n, v.clone(), v)
}

pub fn c_matrix(n: usize) -> Result<ExactMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange("C_n needs n >= 2".into()));
    }
    Ok(scalar_fill(n, QuadScalar::zero(), QuadScalar::from_ratio(1, n as i64 - 1)))
}

pub fn permutation_matrix(images: &[usize]) -> Result<ExactMatrix> {
    let n = images.len();
    let mut seen = vec![false; n];
    for &p in images {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::OutOfRange(format!("{images:?} is not a permutation")));
        }
    }
    ExactMatrix::from_fn(n, |i, j| {
        if images[i] == j {
            QuadScalar::one()
        } else {
            QuadScalar::zero()
        }
    })
}

/// `D_a`: the trace-`a` point of `[I_n, C_n]`.
///
/// For `0 <= a <= 1` this is `a J_n + (1-a) C_n`; for `1 <= a <= n` it is
/// `((a-1)/(n-1)) I_n + (1 - (a-1)/(n-1)) J_n`.
pub fn d_of_trace(n: usize, a: &Rational) -> Result<ExactMatrix> {
    let nn = rat_int(n as i64);
    if a < &Rational::zero() || a > &nn {
        return Err(Error::OutOfRange(format!("trace {a} not in [0, {n}]")));
    }
    if n == 1 {
        return Ok(identity(1));
    }
    let one = Rational::one();
    let j = j_matrix(n);
    if a <= &one {
        let c = c_matrix(n)?;
        Ok(j.scale_rational(a).add(&c.scale_rational(&(&one - a)))?)
    } else {
        let s = (a - &one) / (&nn - &one);
        Ok(identity(n).scale_rational(&s).add(&j.scale_rational(&(&one - &s)))?)
    }
}

fn bipartite(upper: &ExactMatrix, lower: &ExactMatrix) -> Result<ExactMatrix> {
    let z = ExactMatrix::zeros(upper.n());
    ExactMatrix::from_blocks(&z, upper, lower, &z)
}

pub fn block_i(h: usize) -> Result<ExactMatrix> {
    bipartite(&identity(h), &identity(h))
}

pub fn block_j(h: usize) -> Result<ExactMatrix> {
    bipartite(&j_matrix(h), &j_matrix(h))
}

pub fn block_c(h: usize) -> Result<ExactMatrix> {
    let c = c_matrix(h)?;
    bipartite(&c, &c)
}

pub fn construct(family: &Family, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    match family {
        Family::Identity => Ok(identity(n)),
        Family::J => Ok(j_matrix(n)),
        Family::C => c_matrix(n),
        Family::Vertex3(v) => {
            if n != 3 {
                return Err(Error::OutOfRange("vertex3 matrices are 3x3".into()));
            }
            Ok(v.matrix())
        }
        Family::Permutation(p) => {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            permutation_matrix(p)
        }
        Family::DOfTrace(a) => d_of_trace(n, a),
        Family::BlockI => block_i(n),
        Family::BlockJ => block_j(n),
        Family::BlockC => block_c(n),
    }
}

/// `(1 - t) A + t B` for `t` in `[0, 1]`.
pub fn segment_point(a: &ExactMatrix, b: &ExactMatrix, t: &Rational) -> Result<ExactMatrix> {
    if t < &Rational::zero() || t > &Rational::one() {
        return Err(Error::OutOfRange(format!("segment parameter {t} not in [0, 1]")));
    }
    a.scale_rational(&(Rational::one() - t)).add(&b.scale_rational(t))
}

/// Affine combination `(1 - t) A + t B` without the range restriction.
pub fn affine_point(a: &ExactMatrix, b: &ExactMatrix, t: &Rational) -> Result<ExactMatrix> {
    a.scale_rational(&(Rational::one() - t)).add(&b.scale_rational(t))
}

pub fn direct_sum(blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
    if blocks.is_empty() {
        return Err(Error::OutOfRange("direct sum of no blocks".into()));
    }
    let n: usize = blocks.iter().map(ExactMatrix::n).sum();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.n();
    }
    let owner: Vec<usize> = (0..blocks.len()).flat_map(|k| std::iter::repeat_n(k, blocks[k].n())).collect();
    ExactMatrix::from_fn(n, |i, j| {
        let (bi, bj) = (owner[i], owner[j]);
        if bi == bj {
            blocks[bi].get(i - offsets[bi], j - offsets[bi]).clone()
        } else {
            QuadScalar::zero()
        }
    })
}

/// `[[0, J_n], [A, 0]]` for doubly stochastic `A`.
pub fn block_bipartite(a: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    bipartite(&j_matrix(a.n()), a)
}

/// Symmetric vertex form `(P + P^T) / 2` for the permutation with the given
/// images.
pub fn symmetric_vertex_form(images: &[usize]) -> Result<ExactMatrix> {
    let p = permutation_matrix(images)?;
    Ok(p.add(&p.transpose())?.scale_rational(&rat(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> QuadScalar {
        QuadScalar::from_ratio(p, d)
    }

    #[test]
    fn c3_and_d2() {
        let c3 = construct(&Family::C, 3).unwrap();
        assert_eq!(
            c3,
            ExactMatrix::from_ratios(&[&[(0, 1), (1, 2), (1, 2)], &[(1, 2), (0, 1), (1, 2)], &[(1, 2), (1, 2), (0, 1)]])
                .unwrap()
        );
        let d2 = construct(&Family::DOfTrace(rat_int(2)), 3).unwrap();
        // oracle: (1/2) I_3 + (1/2) J_3 evaluated entry by entry
        let oracle = ExactMatrix::from_fn(3, |i, j| {
            let half_i = if i == j { q(1, 2) } else { q(0, 1) };
            half_i + q(1, 2) * q(1, 3)
        })
        .unwrap();
        assert_eq!(d2, oracle);
        assert_eq!(d2.get(0, 0), &q(2, 3));
        assert_eq!(d2.get(0, 1), &q(1, 6));
    }

    #[test]
    fn d_at_one_is_j_from_both_branches() {
        for n in 2..=7 {
            let j = j_matrix(n);
            assert_eq!(d_of_trace(n, &Rational::one()).unwrap(), j);
            // the lower branch formula evaluated at a = 1 gives J_n too
            let lower = j.scale_rational(&Rational::one()).add(&c_matrix(n).unwrap().scale_rational(&Rational::zero())).unwrap();
            assert_eq!(lower, j);
        }
        assert!(d_of_trace(3, &rat(7, 2)).is_err());
        assert!(d_of_trace(3, &rat(-1, 2)).is_err());
    }

    #[test]
    fn segment_examples() {
        let c3 = c_matrix(3).unwrap();
        let z = Vertex3::Z.matrix();
        let a = segment_point(&c3, &z, &rat(1, 3)).unwrap();
        assert_eq!(
            a,
            ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]])
                .unwrap()
        );
        assert_eq!(segment_point(&c3, &z, &Rational::zero()).unwrap(), c3);
        assert_eq!(segment_point(&identity(3), &c3, &rat(2, 3)).unwrap(), j_matrix(3));
        assert!(segment_point(&c3, &z, &rat(4, 3)).is_err());
        assert!(segment_point(&c3, &identity(2), &rat(1, 3)).is_err());
    }

    #[test]
    fn direct_sums() {
        assert_eq!(direct_sum(&[c_matrix(2).unwrap()]).unwrap(), c_matrix(2).unwrap());
        let s = direct_sum(&[c_matrix(2).unwrap(), c_matrix(2).unwrap(), c_matrix(2).unwrap()]).unwrap();
        assert_eq!(s.n(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let edge = i / 2 == j / 2 && i != j;
                assert_eq!(s.get(i, j).is_one(), edge);
            }
        }
        let s = direct_sum(&[j_matrix(2), j_matrix(4)]).unwrap();
        assert!(s.is_doubly_stochastic());
        assert_eq!(s.get(1, 2), &q(0, 1));
    }

    #[test]
    fn bipartite_forms() {
        let m = block_bipartite(&identity(2)).unwrap();
        let expect = ExactMatrix::from_ratios(&[
            &[(0, 1), (0, 1), (1, 2), (1, 2)],
            &[(0, 1), (0, 1), (1, 2), (1, 2)],
            &[(1, 1), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1), (0, 1)],
        ])
        .unwrap();
        assert_eq!(m, expect);
        assert_eq!(block_bipartite(&j_matrix(3)).unwrap(), block_j(3).unwrap());
        let m = block_bipartite(&c_matrix(3).unwrap()).unwrap();
        assert_eq!(m.block(0, 3, 3), j_matrix(3));
        assert_eq!(m.block(3, 0, 3), c_matrix(3).unwrap());
        assert!(block_bipartite(&ExactMatrix::from_ratios(&[&[(3, 2), (-1, 2)], &[(-1, 2), (3, 2)]]).unwrap()).is_err());
    }

    #[test]
    fn block_c_identity() {
        // C = (h/(h-1)) J - (1/(h-1)) I for the bipartite block forms
        for h in 2..=5 {
            let lhs = block_c(h).unwrap();
            let hh = h as i64;
            let rhs = block_j(h)
                .unwrap()
                .scale_rational(&rat(hh, hh - 1))
                .sub(&block_i(h).unwrap().scale_rational(&rat(1, hh - 1)))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn family_errors() {
        assert!(construct(&Family::C, 1).is_err());
        assert!(construct(&Family::Vertex3(Vertex3::X), 4).is_err());
        assert!(construct(&Family::Permutation(vec![0, 0]), 2).is_err());
        assert!(construct(&Family::Identity, 0).is_err());
    }
}
