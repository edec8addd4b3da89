//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactmat::scalar::{format_rational, rational_to_f64, rat_int, QuadScalar, Rational};
use crate::exactmat::ExactMatrix;

/// Coefficients stored constant term first; no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Self::one(), |p, r| p.mul(&Self::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lc = divisor.leading();
        if rem.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    /// Product of the distinct monic irreducible factors.
    pub fn square_free_part(&self) -> Self {
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's square-free decomposition: `self = lc * prod_i f_i^i` with each
    /// `f_i` square-free, monic, and pairwise coprime. Entry `i - 1` holds
    /// `f_i`.
    pub fn square_free_decomposition(&self) -> Vec<RatPoly> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree() == 0) {
            out.pop();
        }
        out
    }

    /// Multiplicity of `factor` (non-constant) in `self`.
    pub fn multiplicity(&self, factor: &Self) -> usize {
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.div_rem(factor);
            if !r.is_zero() {
                break;
            }
            m += 1;
            p = q;
        }
        m
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.n();
        let mut acc = ExactMatrix::zeros(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).expect("same dimension");
            if !c.is_zero() {
                let ci = ExactMatrix::identity(n).scale_rational(c);
                acc = acc.add(&ci).expect("same dimension");
            }
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn to_quad(&self) -> Vec<QuadScalar> {
        self.coeffs.iter().cloned().map(QuadScalar::from_rational).collect()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if a.is_one() && i > 0 {
                write!(f, "{mono}")?;
            } else if i == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else {
                write!(f, "{}*{mono}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}
