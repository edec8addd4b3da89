use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::{QuadScalar, Rational};
use crate::error::{Error, Result};

/// Largest dimension handled anywhere in the library.
pub const MAX_DIM: usize = 64;

/// Dense square matrix over `Q(sqrt(d))`, stored row-major.
///
/// All entries share the radicand `d`; `d == 1` means every entry is rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    n: usize,
    d: u64,
    entries: Vec<QuadScalar>,
}

impl ExactMatrix {
    pub fn from_entries(n: usize, entries: Vec<QuadScalar>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::OutOfRange(format!("dimension {n} not in 1..={MAX_DIM}")));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let mut d = 1;
        for e in &entries {
            if !e.is_rational() {
                if d == 1 {
                    d = e.radicand();
                } else if d != e.radicand() {
                    return Err(Error::RadicandMismatch(d, e.radicand()));
                }
            }
        }
        Ok(ExactMatrix { n, d, entries })
    }

    pub fn from_rows(rows: Vec<Vec<QuadScalar>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: r.len(),
                    n,
                });
            }
        }
        Self::from_entries(n, rows.into_iter().flatten().collect())
    }

    /// Rows given as `(numerator, denominator)` pairs.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| QuadScalar::from_ratio(p, q)).collect())
                .collect(),
        )
    }

    pub fn from_rationals(n: usize, entries: Vec<Rational>) -> Result<Self> {
        Self::from_entries(n, entries.into_iter().map(QuadScalar::from_rational).collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> QuadScalar) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            d: 1,
            entries: vec![QuadScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = QuadScalar::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[QuadScalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[QuadScalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[QuadScalar]> {
        self.entries.chunks(self.n)
    }

    pub fn col(&self, j: usize) -> Vec<QuadScalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<QuadScalar> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Rational entries, when the matrix has no radical part.
    pub fn rational_entries(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(|e| e.as_rational().cloned()).collect()
    }

    fn check_dims(&self, other: &Self) -> Result<u64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::RadicandMismatch(a, b)),
        }
    }

    fn with_entries(&self, d: u64, entries: Vec<QuadScalar>) -> Self {
        // recompute d: cancellation can make every entry rational again
        let d = if entries.iter().all(QuadScalar::is_rational) { 1 } else { d };
        let n = if entries.len() == self.n * self.n { self.n } else { entries.len().isqrt() };
        ExactMatrix {
            n,
            d,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.check_dims(other)?;
        let e = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(self.with_entries(d, e))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let d = self.check_dims(other)?;
        let e = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(self.with_entries(d, e))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.check_dims(other)?;
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = QuadScalar::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a * b;
                }
                e.push(acc);
            }
        }
        Ok(self.with_entries(d, e))
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self> {
        let sd = if s.is_rational() { 1 } else { s.radicand() };
        let d = match (self.d, sd) {
            (1, d) | (d, 1) => d,
            (a, b) if a == b => a,
            (a, b) => return Err(Error::RadicandMismatch(a, b)),
        };
        let e = self.entries.iter().map(|x| x * s).collect();
        Ok(self.with_entries(d, e))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let e = self.entries.iter().map(|x| x.scale(r)).collect();
        self.with_entries(self.d, e)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(self.get(j, i).clone());
            }
        }
        ExactMatrix {
            n,
            d: self.d,
            entries: e,
        }
    }

    pub fn trace(&self) -> QuadScalar {
        (0..self.n).fold(QuadScalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n);
        for _ in 0..k {
            result = result.mul(self).expect("same dimension and field");
        }
        result
    }

    /// `P^T M P` where `perm[i]` is the image of index `i`, i.e. the result
    /// has entry `(i, j)` equal to `M[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::OutOfRange(format!("{perm:?} is not a permutation")));
            }
        }
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                e.push(self.get(pi, pj).clone());
            }
        }
        Ok(ExactMatrix {
            n,
            d: self.d,
            entries: e,
        })
    }

    /// Principal submatrix on the given index list (in that order).
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut e = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                e.push(self.get(i, j).clone());
            }
        }
        self.with_entries(self.d, e)
    }

    /// Block of rows `r0..r0+k`, columns `c0..c0+k`.
    pub fn block(&self, r0: usize, c0: usize, k: usize) -> Self {
        let mut e = Vec::with_capacity(k * k);
        for i in r0..r0 + k {
            for j in c0..c0 + k {
                e.push(self.get(i, j).clone());
            }
        }
        self.with_entries(self.d, e)
    }

    /// Assemble `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let k = a.n;
        for m in [b, c, d] {
            a.check_dims(m)?;
        }
        ExactMatrix::from_fn(2 * k, |i, j| {
            let (blk, r, s) = match (i < k, j < k) {
                (true, true) => (a, i, j),
                (true, false) => (b, i, j - k),
                (false, true) => (c, i - k, j),
                (false, false) => (d, i - k, j - k),
            };
            blk.get(r, s).clone()
        })
    }

    /// Row-echelon reduction; returns the reduced copy, rank and determinant.
    fn eliminate(&self) -> (Vec<QuadScalar>, usize, QuadScalar) {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = QuadScalar::one();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                det = QuadScalar::zero();
                continue;
            };
            if p != rank {
                for j in 0..n {
                    a.swap(p * n + j, rank * n + j);
                }
                det = -det;
            }
            let pivot = a[rank * n + col].clone();
            det = det * &pivot;
            let inv = pivot.recip().expect("nonzero pivot");
            for r in rank + 1..n {
                let factor = &a[r * n + col] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &a[rank * n + j] * &factor;
                    a[r * n + j] = &a[r * n + j] - &v;
                }
            }
            rank += 1;
        }
        if rank < n {
            det = QuadScalar::zero();
        }
        (a, rank, det)
    }

    pub fn det(&self) -> QuadScalar {
        self.eliminate().2
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let w = 2 * n;
        let mut a: Vec<QuadScalar> = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend_from_slice(self.row(i));
            for j in 0..n {
                a.push(if i == j { QuadScalar::one() } else { QuadScalar::zero() });
            }
        }
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r * w + col].is_zero()).ok_or(Error::Singular)?;
            if p != col {
                for j in 0..w {
                    a.swap(p * w + j, col * w + j);
                }
            }
            let inv = a[col * w + col].recip()?;
            for j in 0..w {
                a[col * w + j] = &a[col * w + j] * &inv;
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for j in 0..w {
                    let v = &a[col * w + j] * &factor;
                    a[r * w + j] = &a[r * w + j] - &v;
                }
            }
        }
        let e = (0..n).flat_map(|i| a[i * w + n..i * w + w].to_vec()).collect();
        Ok(self.with_entries(self.d, e))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<QuadScalar> {
        self.rows().map(|r| r.iter().fold(QuadScalar::zero(), |a, x| a + x)).collect()
    }

    pub fn col_sums(&self) -> Vec<QuadScalar> {
        (0..self.n)
            .map(|j| (0..self.n).fold(QuadScalar::zero(), |a, i| a + self.get(i, j)))
            .collect()
    }

    /// Every row and column sums to one; signs unconstrained.
    pub fn is_doubly_quasi_stochastic(&self) -> bool {
        self.row_sums().iter().chain(self.col_sums().iter()).all(QuadScalar::is_one)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_nonnegative() && self.is_doubly_quasi_stochastic()
    }

    pub fn is_permutation(&self) -> bool {
        self.rows().all(|r| {
            r.iter().filter(|e| e.is_one()).count() == 1 && r.iter().all(|e| e.is_one() || e.is_zero())
        }) && self.is_doubly_quasi_stochastic()
    }

    /// Squared Frobenius norm (exact).
    pub fn frobenius_sq(&self) -> QuadScalar {
        self.entries.iter().fold(QuadScalar::zero(), |a, x| a + x * x)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.iter().map(QuadScalar::to_f64).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Positions of nonzero entries (support digraph edges).
    pub fn support(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| !self.get(i, j).is_zero()).collect())
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            d: self.d,
            entries: self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("matrix json")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(j)
    }
}

/// On-disk matrix format: `{"n": 3, "d": 1, "entries": [["1/3", ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(default = "default_radicand")]
    pub d: u64,
    pub entries: Vec<Vec<String>>,
}

fn default_radicand() -> u64 {
    1
}

impl TryFrom<MatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.entries.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: j.entries.len(),
            });
        }
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<QuadScalar>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = ExactMatrix::from_rows(rows)?;
        if m.d != 1 && m.d != j.d {
            return Err(Error::RadicandMismatch(j.d, m.d));
        }
        Ok(m)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        ExactMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_ratios(rows).unwrap()
    }

    #[test]
    fn predicates() {
        let a = m(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]]);
        assert!(a.is_doubly_stochastic());
        assert!(a.is_symmetric());
        let q = m(&[&[(3, 2), (-1, 2)], &[(-1, 2), (3, 2)]]);
        assert!(!q.is_doubly_stochastic());
        assert!(q.is_doubly_quasi_stochastic());
        let bad = m(&[&[(1, 1), (1, 1)], &[(0, 1), (0, 1)]]);
        assert!(!bad.is_doubly_quasi_stochastic());
    }

    #[test]
    fn inverse_examples() {
        let q = m(&[&[(3, 2), (-1, 2)], &[(-1, 2), (3, 2)]]);
        let inv = q.inverse().unwrap();
        assert_eq!(inv, m(&[&[(3, 4), (1, 4)], &[(1, 4), (3, 4)]]));
        assert_eq!(ExactMatrix::identity(4).inverse().unwrap(), ExactMatrix::identity(4));
        let j = ExactMatrix::from_fn(3, |_, _| QuadScalar::from_ratio(1, 3)).unwrap();
        assert_eq!(j.inverse(), Err(Error::Singular));
    }

    #[test]
    fn det_and_rank() {
        let a = m(&[&[(2, 1), (1, 1)], &[(1, 1), (3, 1)]]);
        assert_eq!(a.det(), QuadScalar::from_int(5));
        assert_eq!(a.rank(), 2);
        let j = ExactMatrix::from_fn(4, |_, _| QuadScalar::from_ratio(1, 4)).unwrap();
        assert_eq!(j.rank(), 1);
        assert!(j.det().is_zero());
    }

    #[test]
    fn json_round_trip_with_radicals() {
        let r: QuadScalar = "1/3+1/10*sqrt(7)".parse().unwrap();
        let mm = ExactMatrix::from_rows(vec![
            vec![r.clone(), QuadScalar::from_ratio(1, 2)],
            vec![QuadScalar::zero(), -r],
        ])
        .unwrap();
        assert_eq!(mm.radicand(), 7);
        let s = mm.to_json_string();
        assert_eq!(ExactMatrix::from_json_str(&s).unwrap(), mm);
        // mixed radicands rejected
        let bad = r#"{"n":2,"d":7,"entries":[["1*sqrt(7)","0"],["0","1*sqrt(3)"]]}"#;
        assert!(ExactMatrix::from_json_str(bad).is_err());
        // d defaults to 1
        let plain = r#"{"n":1,"entries":[["1"]]}"#;
        assert_eq!(ExactMatrix::from_json_str(plain).unwrap(), ExactMatrix::identity(1));
    }

    #[test]
    fn permuted_is_conjugation() {
        let a = m(&[&[(1, 1), (2, 1), (3, 1)], &[(4, 1), (5, 1), (6, 1)], &[(7, 1), (8, 1), (9, 1)]]);
        let p = a.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.get(0, 1), a.get(2, 0));
        assert!(a.permuted(&[0, 0, 1]).is_err());
    }
}
