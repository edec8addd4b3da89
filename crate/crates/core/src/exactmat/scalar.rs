//! Exact scalars: arbitrary precision rationals and elements of a single
//! real quadratic field `Q(sqrt(d))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Largest integer accepted by [`square_free_split`]. Trial division up to
/// `10^6` then fully factors out every square divisor.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

/// Build `num/den` as a rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Render a rational as `p/q`, including integers (`3/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails for out-of-range magnitudes.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a non-negative rational when it is a perfect square.
pub fn rational_sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    if &(&p * &p) == r.numer() && &(&q * &q) == r.denom() {
        Some(Rational::new(p, q))
    } else {
        None
    }
}

/// Write `n = s^2 * d` with `d` square-free. Returns `(s, d)`.
pub fn square_free_split(n: u64) -> Result<(u64, u64)> {
    if n > MAX_RADICAND {
        return Err(Error::RadicandTooLarge(n.to_string()));
    }
    if n == 0 {
        return Ok((0, 1));
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            square *= p;
        }
        if rest.is_multiple_of(p) {
            rest /= p;
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest;
    Ok((square, free))
}

fn big_to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::RadicandTooLarge(v.to_string()))
}

/// Sign of `r + c * sqrt(d)` for any non-negative integer `d`.
fn sign_surd(r: &Rational, c: &Rational, d: &BigInt) -> Ordering {
    let s = |x: &Rational| x.cmp(&Rational::zero());
    if c.is_zero() || d.is_zero() {
        return s(r);
    }
    let sr = s(r);
    let sc = s(c);
    if sr == Ordering::Equal {
        return sc;
    }
    if sr == sc {
        return sr;
    }
    // Opposite signs: compare r^2 against c^2 d.
    let lhs = r * r;
    let rhs = c * c * Rational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sr,
        Ordering::Less => sc,
        Ordering::Equal => Ordering::Equal,
    }
}

/// `a + b * sqrt(d)` with rational `a`, `b` and square-free `d`.
///
/// Canonical form: `b == 0` implies `d == 1`, and `b != 0` implies `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadScalar {
    pub fn from_rational(a: Rational) -> Self {
        QuadScalar {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(rat_int(v))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// Build `a + b sqrt(d)`, pulling square factors out of `d`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d == 0 {
            return Ok(Self::from_rational(a));
        }
        let (s, free) = square_free_split(d)?;
        let b = b * rat_int(s as i64);
        if free == 1 {
            return Ok(Self::from_rational(a + b));
        }
        Ok(Self::canonical(a, b, free))
    }

    fn canonical(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            QuadScalar {
                a,
                b,
                d: 1,
            }
        } else {
            QuadScalar { a, b, d }
        }
    }

    /// Square root of a non-negative rational `p/q`, written as
    /// `(s_p / s_q) * sqrt(d_p d_q) / d_q` after splitting both parts.
    pub fn sqrt_of(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(format_rational(r)));
        }
        if let Some(root) = rational_sqrt_exact(r) {
            return Ok(Self::from_rational(root));
        }
        let (sp, dp) = square_free_split(big_to_u64(r.numer())?)?;
        let (sq, dq) = square_free_split(big_to_u64(r.denom())?)?;
        let g = dp.gcd(&dq);
        let radicand = (dp / g) * (dq / g);
        // sqrt(dp/dq) = sqrt(dp dq)/dq = g sqrt(radicand)/dq
        let coeff = rat(sp as i64, sq as i64) * rat(g as i64, dq as i64);
        Ok(Self::canonical(Rational::zero(), coeff, radicand))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        sign_surd(&self.a, &self.b, &BigInt::from(self.d))
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.d as i64)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Radicand shared by two operands, or an error when both are irrational
    /// over different fields.
    pub fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(1),
            (false, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (false, false) if self.d == other.d => Ok(self.d),
            _ => Err(Error::RadicandMismatch(self.d, other.d)),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_rational() && rhs.is_rational() {
            return Ok(Self::from_rational(&self.a + &rhs.a));
        }
        let d = self.common_radicand(rhs)?;
        Ok(Self::canonical(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        if self.is_rational() && rhs.is_rational() {
            return Ok(Self::from_rational(&self.a - &rhs.a));
        }
        let d = self.common_radicand(rhs)?;
        Ok(Self::canonical(&self.a - &rhs.a, &self.b - &rhs.b, d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_rational() && rhs.is_rational() {
            return Ok(Self::from_rational(&self.a * &rhs.a));
        }
        let d = self.common_radicand(rhs)?;
        let dd = rat_int(d as i64);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if self.is_rational() && rhs.is_rational() {
            if rhs.a.is_zero() {
                return Err(Error::Singular);
            }
            return Ok(Self::from_rational(&self.a / &rhs.a));
        }
        self.common_radicand(rhs)?;
        let n = rhs.norm();
        if n.is_zero() {
            return Err(Error::Singular);
        }
        let num = self.try_mul(&rhs.conjugate())?;
        Ok(Self::canonical(num.a / &n, num.b / &n, num.d))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::canonical(&self.a * r, &self.b * r, self.d)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().try_div(self)
    }
}

impl Default for QuadScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for QuadScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

// Operator impls panic on radicand mismatch; matrices validate their radicand
// once on construction so the checked variants are only needed at the edges.
macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$checked(rhs).expect("incompatible quadratic scalars")
            }
        }
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$checked(&rhs).expect("incompatible quadratic scalars")
            }
        }
        impl $tr<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$checked(rhs).expect("incompatible quadratic scalars")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -self.clone()
    }
}

impl Ord for QuadScalar {
    /// Exact order on real values. Operands from different fields are
    /// compared exactly as well, via a second squaring step.
    fn cmp(&self, other: &Self) -> Ordering {
        let u = &self.a - &other.a;
        if let Ok(d) = self.common_radicand(other) {
            return sign_surd(&u, &(&self.b - &other.b), &BigInt::from(d));
        }
        // u + b1 sqrt(d1) - b2 sqrt(d2), with d1 != d2 both square-free > 1.
        let d1 = rat_int(self.d as i64);
        let d2 = rat_int(other.d as i64);
        // sign of s = b1 sqrt(d1) - b2 sqrt(d2)
        let lhs_sq = &self.b * &self.b * &d1;
        let rhs_sq = &other.b * &other.b * &d2;
        let sign_b1 = self.b.cmp(&Rational::zero());
        let sign_b2 = other.b.cmp(&Rational::zero());
        let s = if sign_b1 != sign_b2 {
            if sign_b1 == Ordering::Equal {
                sign_b2.reverse()
            } else {
                sign_b1
            }
        } else {
            match lhs_sq.cmp(&rhs_sq) {
                Ordering::Greater => sign_b1,
                Ordering::Less => sign_b1.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        };
        let su = u.cmp(&Rational::zero());
        if su == Ordering::Equal {
            return s;
        }
        if s == Ordering::Equal || s == su {
            return su;
        }
        // Opposite signs: compare u^2 with s^2 = b1^2 d1 + b2^2 d2 - 2 b1 b2 sqrt(d1 d2).
        let r = &u * &u - &lhs_sq - &rhs_sq;
        let c = rat_int(2) * &self.b * &other.b;
        match sign_surd(&r, &c, &(BigInt::from(self.d) * BigInt::from(other.d))) {
            Ordering::Greater => su,
            Ordering::Less => s,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadScalar {
    /// `p/q` for rationals, `p/q+r/s*sqrt(d)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.a))?;
        if !self.b.is_zero() {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{}*sqrt({})", sign, format_rational(&self.b.abs()), self.d)?;
        }
        Ok(())
    }
}

impl FromStr for QuadScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(pos) = s.find("*sqrt(") else {
            return Ok(Self::from_rational(parse_rational(s)?));
        };
        let bad = || Error::Parse(format!("invalid quadratic scalar `{s}`"));
        let radicand = s[pos + 6..].strip_suffix(')').ok_or_else(bad)?;
        let d: u64 = radicand.trim().parse().map_err(|_| bad())?;
        let head = &s[..pos];
        // split at the last sign that is not the leading one
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, {
                let tail = &head[i..];
                parse_rational(tail.strip_prefix('+').unwrap_or(tail))?
            }),
            None => (Rational::zero(), parse_rational(head)?),
        };
        Self::new(a, b, d)
    }
}

impl serde::Serialize for QuadScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QuadScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
