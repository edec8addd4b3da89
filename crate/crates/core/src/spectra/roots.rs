//! Numeric polynomial roots (Aberth-Ehrlich) and their exact rounding to
//! rational roots and rational quadratic factors.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RatPoly;
use crate::exactmat::scalar::{rational_to_f64, Rational};

/// All complex roots of a polynomial of degree >= 1, by simultaneous
/// Aberth-Ehrlich iteration started on a circle of Cauchy-bound radius.
pub fn complex_roots(p: &RatPoly) -> Vec<Complex64> {
    let deg = p.degree();
    if p.is_zero() || deg == 0 {
        return Vec::new();
    }
    let c: Vec<f64> = p.monic().to_f64();
    let radius = 1.0 + c[..deg].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(1.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for coef in c[..deg].iter().rev() {
            dv = dv * x + v;
            v = v * x + coef;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
pub fn convergents(x: f64, max_den: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
        if r.abs() > 1e15 {
            break;
        }
    }
    out
}

/// Best rational approximation of `x` with denominator at most `max_den`.
pub fn best_rational(x: f64, max_den: u64) -> Rational {
    convergents(x, max_den)
        .into_iter()
        .min_by(|a, b| {
            let ea = (rational_to_f64(a) - x).abs();
            let eb = (rational_to_f64(b) - x).abs();
            ea.total_cmp(&eb)
        })
        .unwrap_or_else(|| Rational::from_integer(BigInt::from(x.round() as i64)))
}

/// Integer multiple of `p` with coprime integer coefficients; returns the
/// absolute leading coefficient.
fn primitive_leading(p: &RatPoly) -> BigInt {
    let den = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    (ints.last().expect("nonzero polynomial") / g).abs()
}

/// Rational candidates near `x`: continued-fraction convergents plus the
/// rounding onto the grid `1/lead` (every rational root `p/q` has `q | lead`).
fn candidates_near(x: f64, lead: &BigInt) -> Vec<Rational> {
    let mut out = convergents(x, 1 << 40);
    if let Some(l) = lead.to_f64() {
        if l.is_finite() && (x * l).abs() < 9e15 {
            out.push(Rational::new(BigInt::from((x * l).round() as i64), lead.clone()));
        }
    }
    out.retain(|r| lead.is_multiple_of(r.denom()));
    out.sort();
    out.dedup();
    out
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if p.degree() == 0 {
        return roots;
    }
    let mut rest = p.square_free_part();
    if rest.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rest = rest.div_rem(&RatPoly::linear(&Rational::zero())).0;
    }
    let lead = primitive_leading(&rest);
    for z in complex_roots(&rest) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for cand in candidates_near(z.re, &lead) {
            if !roots.contains(&cand) && rest.eval(&cand).is_zero() {
                roots.push(cand);
                break;
            }
        }
    }
    roots.sort();
    roots
}

/// Split a square-free polynomial into linear rational factors, monic
/// rational quadratic factors (irreducible over `Q`) and a leftover factor
/// that was not split further.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub linear: Vec<Rational>,
    pub quadratic: Vec<RatPoly>,
    pub rest: RatPoly,
}

pub fn split_low_degree(p: &RatPoly) -> Splitting {
    let linear = rational_roots(p);
    let mut rest = p.square_free_part();
    for r in &linear {
        rest = rest.div_rem(&RatPoly::linear(r)).0;
    }
    let mut quadratic = Vec::new();
    loop {
        if rest.degree() < 2 {
            break;
        }
        if rest.degree() == 2 {
            // no rational roots left, so it is irreducible
            quadratic.push(rest.monic());
            rest = RatPoly::one();
            break;
        }
        let Some(q) = find_quadratic(&rest) else { break };
        rest = rest.div_rem(&q).0;
        quadratic.push(q);
    }
    Splitting {
        linear,
        quadratic,
        rest: rest.monic(),
    }
}

fn find_quadratic(p: &RatPoly) -> Option<RatPoly> {
    let z = complex_roots(p);
    let lead = primitive_leading(p);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let s = z[i] + z[j];
            let pr = z[i] * z[j];
            if s.im.abs() > 1e-6 || pr.im.abs() > 1e-6 {
                continue;
            }
            for b in candidates_near(-s.re, &lead) {
                for c in candidates_near(pr.re, &lead) {
                    let q = RatPoly::new(vec![c.clone(), b.clone(), Rational::one()]);
                    if q.divides(p) {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::scalar::rat;

    #[test]
    fn convergents_of_simple_values() {
        assert_eq!(best_rational(0.333_333_333_333, 100), rat(1, 3));
        assert_eq!(best_rational(-2.0 / 3.0, 10_000), rat(-2, 3));
        assert_eq!(best_rational(std::f64::consts::PI, 1000), rat(355, 113));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = RatPoly::from_roots(&[rat(1, 1), rat(1, 1), rat(-2, 3), rat(0, 1), rat(5, 7), rat(5, 7), rat(5, 7)]);
        assert_eq!(rational_roots(&p), vec![rat(-2, 3), rat(0, 1), rat(5, 7), rat(1, 1)]);
        // x^2 - 2 has no rational roots
        let q = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]);
        assert!(rational_roots(&q).is_empty());
    }

    #[test]
    fn quadratic_splitting() {
        // (x - 1)(x^2 - 2)(x^2 + x - 1/3)(x^3 - 2)
        let a = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]);
        let b = RatPoly::new(vec![rat(-1, 3), rat(1, 1), rat(1, 1)]);
        let c = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        let p = RatPoly::linear(&rat(1, 1)).mul(&a).mul(&b).mul(&c);
        let s = split_low_degree(&p);
        assert_eq!(s.linear, vec![rat(1, 1)]);
        let mut qs = s.quadratic.clone();
        qs.sort_by_key(|q| q.to_string());
        let mut want = vec![a, b];
        want.sort_by_key(|q| q.to_string());
        assert_eq!(qs, want);
        assert_eq!(s.rest, c);
    }
}
