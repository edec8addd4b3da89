//! Exact characteristic polynomials and closed-form family spectra.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::RatPoly;
use crate::error::{Error, Result};
use crate::exactmat::scalar::{format_rational, rat, rat_int, QuadScalar, Rational};
use crate::exactmat::{ExactMatrix, Family};

/// Monic characteristic polynomial `det(xI - M)`, constant term first.
///
/// Coefficients live in the field of the matrix entries, so they are rational
/// for rational input and may carry a radical otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<QuadScalar>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QuadScalar] {
        &self.coeffs
    }

    /// The polynomial over `Q` when every coefficient is rational.
    pub fn to_rational(&self) -> Option<RatPoly> {
        let c: Option<Vec<Rational>> = self.coeffs.iter().map(|c| c.as_rational().cloned()).collect();
        c.map(RatPoly::new)
    }

    pub fn eval(&self, x: &QuadScalar) -> QuadScalar {
        self.coeffs.iter().rev().fold(QuadScalar::zero(), |acc, c| &acc * x + c)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_rational(p: &RatPoly) -> Result<Self> {
        if p.is_zero() || !p.leading().is_one() {
            return Err(Error::OutOfRange("characteristic polynomials are monic".into()));
        }
        Ok(CharPoly { coeffs: p.to_quad() })
    }
}

impl Serialize for CharPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<QuadScalar>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.last().is_none_or(|c| !c.is_one()) {
            return Err(serde::de::Error::custom("characteristic polynomial must be monic"));
        }
        Ok(CharPoly { coeffs })
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.to_rational() {
            return write!(f, "{p}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Faddeev-LeVerrier: `M_0 = 0`, `c_n = 1`,
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn char_poly(m: &ExactMatrix) -> CharPoly {
    let n = m.n();
    let mut coeffs = vec![QuadScalar::zero(); n + 1];
    coeffs[n] = QuadScalar::one();
    let mut mk = ExactMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.mul(&mk).expect("same dimension");
        let c = &coeffs[n - k + 1];
        if !c.is_zero() {
            next = next
                .add(&ExactMatrix::identity(n).scale(c).expect("coefficient in the entry field"))
                .expect("same dimension");
        }
        mk = next;
        // tr(A M_k) without forming the product
        let mut tr = QuadScalar::zero();
        for i in 0..n {
            for j in 0..n {
                let a = m.get(i, j);
                if !a.is_zero() {
                    tr = tr + a * mk.get(j, i);
                }
            }
        }
        coeffs[n - k] = -tr.scale(&rat(1, k as i64));
    }
    CharPoly { coeffs }
}

pub fn cospectral(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(char_poly(a) == char_poly(b))
}

/// Exact eigenvalue multiset of a named family, sorted descending.
///
/// Block families take the half size `n`, matching [`crate::construct`].
pub fn closed_form_spectrum(family: &Family, n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let one = Rational::one();
    let zero = Rational::zero();
    let rep = |v: &Rational, k: usize| std::iter::repeat_n(v.clone(), k);
    let mut out: Vec<Rational> = match family {
        Family::Identity => rep(&one, n).collect(),
        Family::J => std::iter::once(one).chain(rep(&zero, n - 1)).collect(),
        Family::C => {
            if n < 2 {
                return Err(Error::OutOfRange("C_n needs n >= 2".into()));
            }
            std::iter::once(one).chain(rep(&rat(-1, n as i64 - 1), n - 1)).collect()
        }
        Family::DOfTrace(a) => {
            if a < &zero || a > &rat_int(n as i64) {
                return Err(Error::OutOfRange(format!("trace {} not in [0, {n}]", format_rational(a))));
            }
            if n == 1 {
                vec![one]
            } else {
                // both branches give (a - 1)/(n - 1) on the complement of e
                let mu = (a - &one) / rat_int(n as i64 - 1);
                std::iter::once(one).chain(rep(&mu, n - 1)).collect()
            }
        }
        Family::BlockI => rep(&one, n).chain(rep(&-one.clone(), n)).collect(),
        Family::BlockJ => std::iter::once(one.clone())
            .chain(rep(&zero, 2 * n - 2))
            .chain(std::iter::once(-one))
            .collect(),
        Family::BlockC => {
            if n < 2 {
                return Err(Error::OutOfRange("block C needs half size >= 2".into()));
            }
            let mu = rat(1, n as i64 - 1);
            vec![one.clone(), -one]
                .into_iter()
                .chain(rep(&mu, n - 1))
                .chain(rep(&-mu.clone(), n - 1))
                .collect()
        }
        other => return Err(Error::OutOfRange(format!("no closed-form spectrum for {other:?}"))),
    };
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::families::*;

    fn poly(c: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(c.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    /// Cofactor expansion, independent of Faddeev-LeVerrier, for n <= 4.
    fn det_laplace(rows: &[Vec<RatPoly>]) -> RatPoly {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = RatPoly::zero();
        for j in 0..n {
            let minor: Vec<Vec<RatPoly>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = rows[0][j].mul(&det_laplace(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn char_poly_oracle(m: &ExactMatrix) -> RatPoly {
        let n = m.n();
        let rows: Vec<Vec<RatPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = m.get(i, j).as_rational().unwrap().clone();
                        if i == j {
                            RatPoly::new(vec![-a, Rational::one()])
                        } else {
                            RatPoly::constant(-a)
                        }
                    })
                    .collect()
            })
            .collect();
        det_laplace(&rows)
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly(&j_matrix(3)).to_rational().unwrap(), poly(&[(0, 1), (0, 1), (-1, 1), (1, 1)]));
        assert_eq!(char_poly(&c_matrix(2).unwrap()).to_rational().unwrap(), poly(&[(-1, 1), (0, 1), (1, 1)]));
        let a = ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]])
            .unwrap();
        let p = char_poly(&a).to_rational().unwrap();
        assert_eq!(p, poly(&[(0, 1), (-2, 3), (-1, 3), (1, 1)]));
        assert_eq!(p, RatPoly::from_roots(&[rat(1, 1), rat(0, 1), rat(-2, 3)]));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let ms = [
            ExactMatrix::from_ratios(&[&[(1, 2), (1, 3), (1, 6)], &[(1, 6), (1, 2), (1, 3)], &[(1, 3), (1, 6), (1, 2)]]).unwrap(),
            ExactMatrix::from_ratios(&[
                &[(1, 1), (2, 1), (0, 1), (-1, 1)],
                &[(3, 1), (-2, 7), (5, 1), (1, 1)],
                &[(0, 1), (1, 1), (1, 9), (4, 1)],
                &[(2, 1), (2, 1), (-3, 1), (0, 1)],
            ])
            .unwrap(),
            block_bipartite(&identity(2)).unwrap(),
        ];
        for m in &ms {
            assert_eq!(char_poly(m).to_rational().unwrap(), char_poly_oracle(m));
        }
    }

    #[test]
    fn radical_entries() {
        // [[a, b], [b, a]] with b = sqrt(2): x^2 - 2a x + a^2 - 2
        let s = QuadScalar::sqrt_of(&rat(2, 1)).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![QuadScalar::from_int(1), s.clone()], vec![s, QuadScalar::from_int(1)]]).unwrap();
        let p = char_poly(&m);
        assert_eq!(p.to_rational().unwrap(), poly(&[(-1, 1), (-2, 1), (1, 1)]));
        let t = QuadScalar::sqrt_of(&rat(7, 100)).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![t.clone(), QuadScalar::zero()], vec![QuadScalar::zero(), QuadScalar::one()]]).unwrap();
        let p = char_poly(&m);
        assert!(p.to_rational().is_none());
        assert!(p.eval(&t).is_zero());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<CharPoly>(&json).unwrap(), p);
    }

    #[test]
    fn cospectral_examples() {
        let a = direct_sum(&[j_matrix(2), j_matrix(4)]).unwrap();
        let b = direct_sum(&[j_matrix(3), j_matrix(3)]).unwrap();
        assert!(cospectral(&a, &b).unwrap());
        assert!(cospectral(&block_bipartite(&identity(2)).unwrap(), &block_j(2).unwrap()).unwrap());
        assert!(!cospectral(&identity(3), &j_matrix(3)).unwrap());
        assert!(cospectral(&identity(3), &j_matrix(4)).is_err());
    }

    #[test]
    fn closed_forms_match_char_poly() {
        let check = |fam: Family, n: usize| {
            let m = construct(&fam, n).unwrap();
            let roots = closed_form_spectrum(&fam, n).unwrap();
            assert_eq!(char_poly(&m).to_rational().unwrap(), RatPoly::from_roots(&roots), "{fam:?} {n}");
        };
        for n in 2..=6 {
            check(Family::C, n);
            check(Family::J, n);
            check(Family::Identity, n);
            check(Family::BlockJ, n);
            check(Family::BlockI, n);
            check(Family::BlockC, n);
            for a in [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1), rat(n as i64, 1)] {
                check(Family::DOfTrace(a), n);
            }
        }
        assert_eq!(closed_form_spectrum(&Family::C, 3).unwrap(), vec![rat(1, 1), rat(-1, 2), rat(-1, 2)]);
        assert_eq!(
            closed_form_spectrum(&Family::BlockJ, 2).unwrap(),
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)]
        );
        assert_eq!(closed_form_spectrum(&Family::DOfTrace(rat(2, 1)), 3).unwrap(), vec![rat(1, 1), rat(1, 2), rat(1, 2)]);
        assert!(closed_form_spectrum(&Family::Vertex3(Vertex3::X), 3).is_err());
    }
}
