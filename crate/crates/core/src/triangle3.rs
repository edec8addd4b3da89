//! The 3x3 theory. Every symmetric doubly stochastic 3x3 matrix is fixed by
//! its diagonal, and the trace-one slice is the triangle `XYZ` with
//! coordinates `(x, y)`:
//!
//! ```text
//! tri(x, y) = x X + y Y + (1 - x - y) Z
//!           = [[x, 1-x-y, y], [1-x-y, y, x], [y, x, 1-x-y]]
//! ```
//!
//! with eigenvalues `1, +sqrt(f), -sqrt(f)` where
//! `f(x, y) = 3x^2 + 3y^2 + 3xy + 1 - 3x - 3y`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::families::{c_matrix, identity, j_matrix};
use crate::exactmat::scalar::{format_rational, rat, rat_int, rational_to_f64};
use crate::exactmat::{segment_point, ExactMatrix, QuadScalar, Rational, Vertex3};
use crate::permsim::are_perm_similar;
use crate::spectra::{char_poly, eigenvalues_symmetric};

/// A point of the domain `D = {x, y >= 0, x + y <= 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriPoint {
    pub x: Rational,
    pub y: Rational,
}

impl TriPoint {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        let p = TriPoint { x, y };
        if p.in_domain() {
            Ok(p)
        } else {
            Err(Error::OutOfRange(format!("{p} is outside the triangle")))
        }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Result<Self> {
        Self::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    pub fn in_domain(&self) -> bool {
        !self.x.is_negative() && !self.y.is_negative() && &self.x + &self.y <= Rational::one()
    }

    pub fn vertex(v: Vertex3) -> Self {
        let (x, y) = match v {
            Vertex3::X => (1, 0),
            Vertex3::Y => (0, 1),
            Vertex3::Z => (0, 0),
        };
        TriPoint {
            x: rat_int(x),
            y: rat_int(y),
        }
    }

    pub fn centre() -> Self {
        TriPoint {
            x: rat(1, 3),
            y: rat(1, 3),
        }
    }
}

impl fmt::Display for TriPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for TriPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

fn f_unchecked(x: &Rational, y: &Rational) -> Rational {
    let three = rat_int(3);
    &three * x * x + &three * y * y + &three * x * y + Rational::one() - &three * x - &three * y
}

pub fn f(p: &TriPoint) -> Result<Rational> {
    if !p.in_domain() {
        return Err(Error::OutOfRange(format!("{p} is outside the triangle")));
    }
    Ok(f_unchecked(&p.x, &p.y))
}

pub fn tri_to_matrix(p: &TriPoint) -> Result<ExactMatrix> {
    if !p.in_domain() {
        return Err(Error::OutOfRange(format!("{p} is outside the triangle")));
    }
    let z = Rational::one() - &p.x - &p.y;
    let (x, y) = (&p.x, &p.y);
    let rows = [[x, &z, y], [&z, y, x], [y, x, &z]];
    ExactMatrix::from_rationals(3, rows.iter().flatten().map(|&v| v.clone()).collect())
}

/// Inverse of [`tri_to_matrix`] on trace-one symmetric doubly stochastic
/// 3x3 matrices.
pub fn tri_from_matrix(m: &ExactMatrix) -> Result<TriPoint> {
    check_sym_ds3(m)?;
    let x = m.get(0, 0).as_rational().cloned().ok_or_else(|| Error::OutOfRange("irrational entries".into()))?;
    let y = m.get(1, 1).as_rational().cloned().ok_or_else(|| Error::OutOfRange("irrational entries".into()))?;
    let p = TriPoint::new(x, y)?;
    if tri_to_matrix(&p)? != *m {
        return Err(Error::OutOfRange("matrix does not have trace one".into()));
    }
    Ok(p)
}

/// `[1, sqrt(f), -sqrt(f)]`, rational when `f` is a rational square.
pub fn tri_eigenvalues(p: &TriPoint) -> Result<[QuadScalar; 3]> {
    let r = QuadScalar::sqrt_of(&f(p)?)?;
    Ok([QuadScalar::one(), r.clone(), -r])
}

fn check_sym_ds3(m: &ExactMatrix) -> Result<()> {
    if m.n() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: m.n() });
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !m.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    Ok(())
}

/// Exact extremal data of `f` on `D`, re-derived from the critical-point
/// equations and cross-checked on a rational grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FExtrema {
    pub interior_critical: (TriPoint, String),
    pub corners: Vec<(TriPoint, String)>,
    pub boundary_critical: Vec<(TriPoint, String)>,
    pub min: String,
    pub max: String,
    pub grid: usize,
    pub grid_min: String,
    pub grid_max: String,
    /// `min <= grid_min` and `grid_max <= max`.
    pub grid_within_bounds: bool,
}

/// `grid` points per side, spacing `1 / (grid - 1)`.
pub fn f_extrema(grid: usize) -> Result<FExtrema> {
    if grid < 2 {
        return Err(Error::OutOfRange("grid needs at least 2 points per side".into()));
    }
    // grad f = (6x + 3y - 3, 3x + 6y - 3) = 0, by Cramer's rule
    let (a11, a12, b1) = (rat_int(6), rat_int(3), rat_int(3));
    let (a21, a22, b2) = (rat_int(3), rat_int(6), rat_int(3));
    let det = &a11 * &a22 - &a12 * &a21;
    let cx = (&b1 * &a22 - &a12 * &b2) / &det;
    let cy = (&a11 * &b2 - &b1 * &a21) / &det;
    let centre = TriPoint::new(cx, cy)?;
    let fc = f(&centre)?;

    let corners: Vec<TriPoint> = [Vertex3::Z, Vertex3::X, Vertex3::Y].into_iter().map(TriPoint::vertex).collect();
    let mut boundary = Vec::new();
    // each edge (1 - s) P + s Q; f restricted is a s^2 + b s + c
    for k in 0..3 {
        let (p, q) = (&corners[k], &corners[(k + 1) % 3]);
        let at = |s: &Rational| {
            let x = &p.x + (&q.x - &p.x) * s;
            let y = &p.y + (&q.y - &p.y) * s;
            (f_unchecked(&x, &y), TriPoint { x, y })
        };
        let (f0, _) = at(&Rational::zero());
        let (fh, _) = at(&rat(1, 2));
        let (f1, _) = at(&Rational::one());
        // interpolate through s = 0, 1/2, 1
        let a = rat_int(2) * (&f0 - rat_int(2) * &fh + &f1);
        let b = &f1 - &f0 - &a;
        if !a.is_zero() {
            let s = -b / (rat_int(2) * &a);
            if s > Rational::zero() && s < Rational::one() {
                let (v, pt) = at(&s);
                boundary.push((pt, v));
            }
        }
    }
    let mut values: Vec<Rational> = corners.iter().map(|c| f(c).expect("corner")).collect();
    values.push(fc.clone());
    values.extend(boundary.iter().map(|b| b.1.clone()));
    let min = values.iter().min().expect("nonempty").clone();
    let max = values.iter().max().expect("nonempty").clone();

    // exact grid scan in integers: g^2 f(i/g, j/g)
    let g = (grid - 1) as i128;
    let (mut lo, mut hi) = (i128::MAX, i128::MIN);
    for i in 0..=g {
        for j in 0..=g - i {
            let v = 3 * i * i + 3 * j * j + 3 * i * j + g * g - 3 * i * g - 3 * j * g;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let gg = Rational::from_integer((g * g).into());
    let grid_min = Rational::from_integer(lo.into()) / &gg;
    let grid_max = Rational::from_integer(hi.into()) / &gg;
    let show = |r: &Rational| format_rational(r);
    let grid_within_bounds = min <= grid_min && grid_max <= max;
    Ok(FExtrema {
        interior_critical: (centre, show(&fc)),
        corners: corners.iter().map(|c| (c.clone(), show(&f(c).expect("corner")))).collect(),
        boundary_critical: boundary.iter().map(|(p, v)| (p.clone(), show(v))).collect(),
        min: show(&min),
        max: show(&max),
        grid,
        grid_min: show(&grid_min),
        grid_max: show(&grid_max),
        grid_within_bounds,
    })
}

/// Grid points of `D` with spacing `1 / (grid - 1)`, row by row.
pub fn grid_points(grid: usize) -> Vec<TriPoint> {
    let g = grid.saturating_sub(1).max(1) as i64;
    let mut out = Vec::new();
    for i in 0..=g {
        for j in 0..=g - i {
            out.push(TriPoint {
                x: rat(i, g),
                y: rat(j, g),
            });
        }
    }
    out
}

/// Largest componentwise gap between the closed-form eigenvalues and the
/// Jacobi eigenvalues over the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenGridReport {
    pub points: usize,
    pub max_deviation: f64,
    pub worst: Option<TriPoint>,
}

pub fn eigen_grid_check(grid: usize) -> Result<EigenGridReport> {
    let mut report = EigenGridReport {
        points: 0,
        max_deviation: 0.0,
        worst: None,
    };
    for p in grid_points(grid) {
        let mut exact: Vec<f64> = tri_eigenvalues(&p)?.iter().map(QuadScalar::to_f64).collect();
        exact.sort_by(|a, b| b.total_cmp(a));
        let numeric = eigenvalues_symmetric(&tri_to_matrix(&p)?)?;
        let dev = exact.iter().zip(&numeric.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        report.points += 1;
        if dev > report.max_deviation || report.worst.is_none() {
            report.max_deviation = report.max_deviation.max(dev);
            report.worst = Some(p);
        }
    }
    Ok(report)
}

/// Centre of the line used to move a matrix to the trace-one slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Centre {
    I,
    C,
}

impl Centre {
    pub fn matrix(self) -> ExactMatrix {
        match self {
            Centre::I => identity(3),
            Centre::C => c_matrix(3).expect("n = 3"),
        }
    }
}

/// How to undo [`project_to_slice1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftData {
    /// Trace one already.
    Identity,
    /// `M' = (1 - t) centre + t M`.
    Line { centre: Centre, t: Rational },
    /// `I_3` or `C_3`, both sent to `J_3` along `[I, C]`.
    Fixed(Centre),
}

pub fn project_to_slice1(m: &ExactMatrix) -> Result<(TriPoint, LiftData)> {
    check_sym_ds3(m)?;
    let a = m.trace().as_rational().cloned().ok_or_else(|| Error::OutOfRange("irrational trace".into()))?;
    let one = Rational::one();
    let three = rat_int(3);
    let (image, lift) = if a == one {
        (m.clone(), LiftData::Identity)
    } else if a == three {
        (j_matrix(3), LiftData::Fixed(Centre::I))
    } else if a.is_zero() {
        (j_matrix(3), LiftData::Fixed(Centre::C))
    } else {
        let (centre, t) = if a > one { (Centre::I, rat_int(2) / (&three - &a)) } else { (Centre::C, &one / &a) };
        let c = centre.matrix();
        let image = c.scale_rational(&(&one - &t)).add(&m.scale_rational(&t))?;
        (image, LiftData::Line { centre, t })
    };
    Ok((tri_from_matrix(&image)?, lift))
}

/// Inverse of [`project_to_slice1`].
pub fn unlift(p: &TriPoint, lift: &LiftData) -> Result<ExactMatrix> {
    let m = tri_to_matrix(p)?;
    match lift {
        LiftData::Identity => Ok(m),
        LiftData::Fixed(c) => {
            if m != j_matrix(3) {
                return Err(Error::OutOfRange("fixed points lift only from J_3".into()));
            }
            Ok(c.matrix())
        }
        LiftData::Line { centre, t } => {
            let c = centre.matrix();
            c.add(&m.sub(&c)?.scale_rational(&(Rational::one() / t)))
        }
    }
}

/// The seven segments carrying every 3x3 matrix determined by its spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Segment3 {
    IC,
    IX,
    IY,
    IZ,
    CX,
    CY,
    CZ,
}

impl Segment3 {
    /// Checked in this order; shared endpoints go to the first match.
    pub const ALL: [Segment3; 7] = [Segment3::IC, Segment3::IX, Segment3::IY, Segment3::IZ, Segment3::CX, Segment3::CY, Segment3::CZ];

    pub fn endpoints(self) -> (ExactMatrix, ExactMatrix) {
        let i = identity(3);
        let c = c_matrix(3).expect("n = 3");
        match self {
            Segment3::IC => (i, c),
            Segment3::IX => (i, Vertex3::X.matrix()),
            Segment3::IY => (i, Vertex3::Y.matrix()),
            Segment3::IZ => (i, Vertex3::Z.matrix()),
            Segment3::CX => (c, Vertex3::X.matrix()),
            Segment3::CY => (c, Vertex3::Y.matrix()),
            Segment3::CZ => (c, Vertex3::Z.matrix()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Segment3::IC => "[I,C]",
            Segment3::IX => "[I,X]",
            Segment3::IY => "[I,Y]",
            Segment3::IZ => "[I,Z]",
            Segment3::CX => "[C,X]",
            Segment3::CY => "[C,Y]",
            Segment3::CZ => "[C,Z]",
        }
    }

    /// Parameter `t` with `segment_point(start, end, t) == m`, if any.
    pub fn locate(self, m: &ExactMatrix) -> Option<Rational> {
        let (p, q) = self.endpoints();
        // a symmetric doubly stochastic 3x3 matrix is fixed by its diagonal
        let mut t: Option<Rational> = None;
        for k in 0..3 {
            let pk = p.get(k, k).as_rational()?.clone();
            let qk = q.get(k, k).as_rational()?.clone();
            let mk = m.get(k, k).as_rational()?.clone();
            if pk == qk {
                if mk != pk {
                    return None;
                }
                continue;
            }
            let tk = (mk - &pk) / (qk - pk);
            match &t {
                Some(prev) if *prev != tk => return None,
                _ => t = Some(tk),
            }
        }
        let t = t?;
        if t.is_negative() || t > Rational::one() {
            return None;
        }
        (segment_point(&p, &q, &t).ok()? == *m).then_some(t)
    }
}

impl fmt::Display for Segment3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict3 {
    OnSegment { segment: Segment3, t: Rational },
    NotDS,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification3 {
    pub verdict: Verdict3,
    pub trace: Rational,
    pub slice_point: TriPoint,
    /// `d` with slice point `d V + (1 - d) J_3` for a vertex `V`, when the
    /// slice point lies on one of the three rays from `J_3`.
    pub d: Option<Rational>,
}

impl Classification3 {
    pub fn is_ds(&self) -> bool {
        matches!(self.verdict, Verdict3::OnSegment { .. })
    }
}

/// `d >= 0` with `p = d V + (1 - d) J` for a vertex `V`.
fn ray_parameter(p: &TriPoint) -> Option<Rational> {
    let third = rat(1, 3);
    let one = Rational::one();
    for v in Vertex3::ALL {
        let vp = TriPoint::vertex(v);
        // coordinate where V differs from J
        let d = match v {
            Vertex3::X => (&p.x - &third) / (&vp.x - &third),
            Vertex3::Y => (&p.y - &third) / (&vp.y - &third),
            Vertex3::Z => (&p.x - &third) / (&vp.x - &third),
        };
        if d.is_negative() {
            continue;
        }
        let on = &third + (&vp.x - &third) * &d == p.x && &third + (&vp.y - &third) * &d == p.y;
        if on && d <= one {
            return Some(d);
        }
    }
    None
}

pub fn classify(m: &ExactMatrix) -> Result<Classification3> {
    let (slice_point, _) = project_to_slice1(m)?;
    let trace = m.trace().as_rational().cloned().expect("rational after projection");
    let d = ray_parameter(&slice_point);
    let verdict = Segment3::ALL
        .iter()
        .find_map(|&s| s.locate(m).map(|t| Verdict3::OnSegment { segment: s, t }))
        .unwrap_or(Verdict3::NotDS);
    Ok(Classification3 {
        verdict,
        trace,
        slice_point,
        d,
    })
}

/// Slopes for chords: `0`, vertical, then `+q`, `-q` for the positive
/// rationals `q` in Stern-Brocot breadth-first order.
fn chord_slopes(budget: usize) -> Vec<Option<Rational>> {
    let mut out = vec![Some(Rational::zero()), None];
    // breadth-first over the Stern-Brocot tree via mediants of neighbours
    let mut level: Vec<(i64, i64)> = vec![(0, 1), (1, 0)];
    while out.len() < budget {
        let mut next = Vec::with_capacity(level.len() * 2);
        for w in level.windows(2) {
            next.push(w[0]);
            let m = (w[0].0 + w[1].0, w[0].1 + w[1].1);
            next.push(m);
            if out.len() < budget {
                out.push(Some(rat(m.0, m.1)));
            }
            if out.len() < budget {
                out.push(Some(rat(-m.0, m.1)));
            }
        }
        next.push(*level.last().expect("nonempty"));
        level = next;
    }
    out.truncate(budget);
    out
}

/// Chord slopes for the level-curve walk: Stern-Brocot slopes interleaved
/// with slopes `-1 +- eps` close to the tangent at the pivot, where `eps`
/// runs through `1/k` for `k` growing geometrically. Near a corner the level
/// curve is a short arc and only near-tangent chords meet it again inside
/// `D`.
fn slope_schedule(budget: usize) -> Vec<Option<Rational>> {
    let broad = chord_slopes(budget / 2);
    let mut near = Vec::new();
    let mut k = 2i64;
    while near.len() < budget - broad.len() {
        let eps = rat(1, k);
        near.push(Some(-Rational::one() + &eps));
        near.push(Some(-Rational::one() - eps));
        k = (k + 1).max(k * 21 / 20);
    }
    let mut out = Vec::with_capacity(budget);
    let mut b = broad.into_iter();
    let mut c = near.into_iter();
    loop {
        match (b.next(), c.next()) {
            (None, None) => break,
            (x, y) => out.extend(x.into_iter().chain(y)),
        }
    }
    out.truncate(budget);
    out
}

/// Second intersection of the chord with slope `m` through the pivot
/// `(p, p)` with the conic `f = f(p, p)`.
fn chord_point(p: &Rational, slope: &Option<Rational>) -> TriPoint {
    let one = Rational::one();
    let k = rat_int(3) * p - &one;
    match slope {
        None => TriPoint {
            x: p.clone(),
            y: p - &k,
        },
        Some(m) => {
            let s = -(&one + m) * &k / (&one + m + m * m);
            TriPoint {
                x: p + &s,
                y: p + m * &s,
            }
        }
    }
}

/// Pivots `((1 + d)/3, (1 + d)/3)` and `((1 - d)/3, (1 - d)/3)` on `x = y`,
/// those inside `D` first-listed.
fn pivots(d: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let three = rat_int(3);
    [(&one + d) / &three, (&one - d) / &three]
        .into_iter()
        .filter(|p| TriPoint { x: p.clone(), y: p.clone() }.in_domain())
        .collect()
}

pub const CHORD_BUDGET: usize = 1000;

/// Up to `count` distinct rational points of `D` on `f = d^2`.
pub fn level_curve_points(d: &Rational, count: usize) -> Result<Vec<TriPoint>> {
    if !d.is_positive() || d >= &Rational::one() {
        return Err(Error::OutOfRange(format!("level {d} not in (0, 1)")));
    }
    let target = d * d;
    let slopes = slope_schedule(CHORD_BUDGET);
    let mut out: Vec<TriPoint> = Vec::new();
    for p in pivots(d) {
        let pivot = TriPoint { x: p.clone(), y: p.clone() };
        for q in std::iter::once(pivot.clone()).chain(slopes.iter().map(|s| chord_point(&p, s))) {
            if out.len() >= count {
                return Ok(out);
            }
            if q.in_domain() && !out.contains(&q) {
                if f_unchecked(&q.x, &q.y) != target {
                    return Err(Error::Internal(format!("chord point {q} is off the level curve")));
                }
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// A symmetric doubly stochastic matrix cospectral with, but not
/// permutationally similar to, `m` (which must not be on the seven
/// segments).
pub fn mate_for(m: &ExactMatrix) -> Result<ExactMatrix> {
    let cls = classify(m)?;
    if cls.is_ds() {
        return Err(Error::OutOfRange("matrix lies on a determined segment and has no mate".into()));
    }
    let (p, lift) = project_to_slice1(m)?;
    let slice = tri_to_matrix(&p)?;
    let fv = f(&p)?;
    let alpha = QuadScalar::sqrt_of(&fv)?;
    // alpha X + (1 - alpha) J_3
    let j = j_matrix(3);
    let generic = j.add(&Vertex3::X.matrix().sub(&j)?.scale(&alpha)?)?;
    let candidate = if !are_perm_similar(&slice, &generic)?.is_similar() {
        generic
    } else {
        // rational d and the slice point sits on a ray from J_3: walk the
        // level conic for a rational point of a different orbit
        let d = alpha.as_rational().cloned().expect("rational when perm-similar");
        let slopes = slope_schedule(CHORD_BUDGET);
        let mut found = None;
        'outer: for piv in pivots(&d) {
            let pivot = TriPoint { x: piv.clone(), y: piv.clone() };
            for q in std::iter::once(pivot).chain(slopes.iter().map(|s| chord_point(&piv, s))) {
                if !q.in_domain() {
                    continue;
                }
                let k = tri_to_matrix(&q)?;
                if !are_perm_similar(&slice, &k)?.is_similar() {
                    found = Some(k);
                    break 'outer;
                }
            }
        }
        found.ok_or_else(|| Error::Internal(format!("no mate on the level curve f = {fv} within {CHORD_BUDGET} chords")))?
    };
    let cp = tri_from_matrix(&candidate).ok();
    let mate = match cp {
        Some(cp) => unlift(&cp, &lift)?,
        // irrational entries: undo the line map directly
        None => match &lift {
            LiftData::Identity => candidate,
            LiftData::Line { centre, t } => {
                let c = centre.matrix();
                c.add(&candidate.sub(&c)?.scale_rational(&(Rational::one() / t)))?
            }
            LiftData::Fixed(_) => return Err(Error::Internal("fixed points have no mates".into())),
        },
    };
    if char_poly(&mate) != char_poly(m) || are_perm_similar(m, &mate)?.is_similar() || !mate.is_doubly_stochastic() || !mate.is_symmetric() {
        return Err(Error::Internal("mate failed exact verification".into()));
    }
    Ok(mate)
}

/// All grid points of the trace-`a` slice (the image of the trace-one
/// triangle grid) whose matrix is cospectral with `target`, each with a
/// flag telling whether it is a permutation image of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceScan {
    pub points: usize,
    pub cospectral: Vec<(ExactMatrix, bool)>,
}

impl SliceScan {
    pub fn only_permutation_images(&self) -> bool {
        self.cospectral.iter().all(|(_, p)| *p)
    }
}

pub fn slice_scan(target: &ExactMatrix, grid: usize) -> Result<SliceScan> {
    let (_, lift) = project_to_slice1(target)?;
    let want = char_poly(target);
    let mut scan = SliceScan {
        points: 0,
        cospectral: Vec::new(),
    };
    for p in grid_points(grid) {
        scan.points += 1;
        let m = match &lift {
            LiftData::Fixed(c) => {
                if p != TriPoint::centre() {
                    continue;
                }
                c.matrix()
            }
            _ => unlift(&p, &lift)?,
        };
        if char_poly(&m) == want {
            let similar = are_perm_similar(target, &m)?.is_similar();
            scan.cospectral.push((m, similar));
        }
    }
    Ok(scan)
}

/// `1/n + sum_{i=2..n} lambda_i / ((n - i + 2)(n - i + 1))` for a spectrum
/// sorted descending with `lambda_1 = 1`.
pub fn hw_inequality(lambda: &[Rational]) -> Result<Rational> {
    let n = lambda.len();
    if n == 0 || !lambda[0].is_one() {
        return Err(Error::OutOfRange("spectrum must start with 1".into()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::OutOfRange("spectrum must be sorted descending".into()));
    }
    if lambda.iter().any(|l| l.abs() > Rational::one()) {
        return Err(Error::OutOfRange("eigenvalues must lie in [-1, 1]".into()));
    }
    let nn = n as i64;
    let mut total = rat(1, nn);
    for (k, l) in lambda.iter().enumerate().skip(1) {
        let i = k as i64 + 1;
        total += l / rat_int((nn - i + 2) * (nn - i + 1));
    }
    Ok(total)
}

/// `f` as a double, for plotting.
pub fn f_f64(p: &TriPoint) -> f64 {
    rational_to_f64(&f_unchecked(&p.x, &p.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: (i64, i64), y: (i64, i64)) -> TriPoint {
        TriPoint::from_ratios(x, y).unwrap()
    }

    fn slice_example() -> ExactMatrix {
        ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]]).unwrap()
    }

    #[test]
    fn f_values() {
        assert_eq!(f(&pt((1, 3), (1, 3))).unwrap(), rat(0, 1));
        assert_eq!(f(&pt((1, 2), (0, 1))).unwrap(), rat(1, 4));
        assert_eq!(f(&pt((0, 1), (0, 1))).unwrap(), rat(1, 1));
        assert!(f(&TriPoint { x: rat(1, 1), y: rat(1, 2) }).is_err());
    }

    #[test]
    fn matrices_and_eigenvalues() {
        assert_eq!(tri_to_matrix(&pt((1, 3), (1, 3))).unwrap(), j_matrix(3));
        assert_eq!(tri_to_matrix(&pt((1, 1), (0, 1))).unwrap(), Vertex3::X.matrix());
        let half = tri_to_matrix(&pt((1, 2), (1, 2))).unwrap();
        assert_eq!(
            half,
            ExactMatrix::from_ratios(&[&[(1, 2), (0, 1), (1, 2)], &[(0, 1), (1, 2), (1, 2)], &[(1, 2), (1, 2), (0, 1)]]).unwrap()
        );
        let e = tri_eigenvalues(&pt((1, 2), (1, 2))).unwrap();
        assert_eq!(e, [QuadScalar::one(), QuadScalar::from_ratio(1, 2), QuadScalar::from_ratio(-1, 2)]);
        let e = tri_eigenvalues(&pt((1, 2), (3, 10))).unwrap();
        assert_eq!(e[1], QuadScalar::new(rat(0, 1), rat(1, 10), 7).unwrap());
        // each tri matrix is xX + yY + (1-x-y)Z
        let p = pt((1, 5), (2, 7));
        let z = Rational::one() - &p.x - &p.y;
        let sum = Vertex3::X
            .matrix()
            .scale_rational(&p.x)
            .add(&Vertex3::Y.matrix().scale_rational(&p.y))
            .unwrap()
            .add(&Vertex3::Z.matrix().scale_rational(&z))
            .unwrap();
        assert_eq!(tri_to_matrix(&p).unwrap(), sum);
    }

    #[test]
    fn extrema() {
        let e = f_extrema(201).unwrap();
        assert_eq!(e.interior_critical, (pt((1, 3), (1, 3)), "0/1".to_string()));
        assert_eq!(e.min, "0/1");
        assert_eq!(e.max, "1/1");
        assert!(e.grid_within_bounds);
        assert_eq!(e.grid_max, "1/1");
        let mut b: Vec<_> = e.boundary_critical.iter().map(|(p, v)| (p.clone(), v.clone())).collect();
        b.sort();
        assert_eq!(
            b,
            vec![
                (pt((0, 1), (1, 2)), "1/4".to_string()),
                (pt((1, 2), (0, 1)), "1/4".to_string()),
                (pt((1, 2), (1, 2)), "1/4".to_string()),
            ]
        );
    }

    #[test]
    fn projection_examples() {
        let (p, lift) = project_to_slice1(&slice_example()).unwrap();
        assert_eq!(p, TriPoint::vertex(Vertex3::Z));
        assert_eq!(lift, LiftData::Line { centre: Centre::C, t: rat(3, 1) });
        assert_eq!(unlift(&p, &lift).unwrap(), slice_example());
        let d2 = crate::exactmat::d_of_trace(3, &rat(2, 1)).unwrap();
        let (p, lift) = project_to_slice1(&d2).unwrap();
        assert_eq!(p, TriPoint::centre());
        assert_eq!(lift, LiftData::Line { centre: Centre::I, t: rat(2, 1) });
        assert_eq!(unlift(&p, &lift).unwrap(), d2);
        let m = tri_to_matrix(&pt((1, 5), (1, 2))).unwrap();
        assert_eq!(project_to_slice1(&m).unwrap(), (pt((1, 5), (1, 2)), LiftData::Identity));
        assert_eq!(project_to_slice1(&identity(3)).unwrap().1, LiftData::Fixed(Centre::I));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&slice_example()).unwrap();
        assert_eq!(c.verdict, Verdict3::OnSegment { segment: Segment3::CZ, t: rat(1, 3) });
        assert_eq!(c.trace, rat(1, 3));
        let c = classify(&j_matrix(3)).unwrap();
        assert_eq!(c.verdict, Verdict3::OnSegment { segment: Segment3::IC, t: rat(2, 3) });
        assert_eq!(c.d, Some(rat(0, 1)));
        assert_eq!(classify(&tri_to_matrix(&pt((1, 2), (1, 2))).unwrap()).unwrap().verdict, Verdict3::NotDS);
        assert_eq!(classify(&identity(3)).unwrap().verdict, Verdict3::OnSegment { segment: Segment3::IC, t: rat(0, 1) });
        assert_eq!(classify(&c_matrix(3).unwrap()).unwrap().verdict, Verdict3::OnSegment { segment: Segment3::IC, t: rat(1, 1) });
    }

    #[test]
    fn mate_examples() {
        let half = rat(1, 2);
        let hx = segment_point(&j_matrix(3), &Vertex3::X.matrix(), &half).unwrap();
        let t = tri_to_matrix(&pt((1, 2), (1, 2))).unwrap();
        assert_eq!(mate_for(&t).unwrap(), hx);
        assert_eq!(mate_for(&hx).unwrap(), t);
        let m = tri_to_matrix(&pt((1, 2), (3, 10))).unwrap();
        let b = mate_for(&m).unwrap();
        assert_eq!(b.radicand(), 7);
        let alpha = QuadScalar::new(rat(0, 1), rat(1, 10), 7).unwrap();
        assert_eq!(b.get(0, 0), &(QuadScalar::from_ratio(1, 3) + alpha.scale(&rat(2, 3))));
        assert!(mate_for(&slice_example()).is_err());
    }

    #[test]
    fn level_curve_examples() {
        let pts = level_curve_points(&rat(1, 2), 40).unwrap();
        for want in [pt((1, 2), (1, 2)), pt((0, 1), (1, 2)), pt((1, 2), (0, 1)), pt((1, 6), (2, 3)), pt((2, 3), (1, 6))] {
            assert!(pts.contains(&want), "{want}");
        }
        for p in &pts {
            assert_eq!(f(p).unwrap(), rat(1, 4));
        }
        assert!(level_curve_points(&rat(0, 1), 5).is_err());
        assert!(level_curve_points(&rat(1, 1), 5).is_err());
    }

    #[test]
    fn hw_values() {
        assert_eq!(hw_inequality(&[rat(1, 1), rat(0, 1), rat(-2, 3)]).unwrap(), rat(0, 1));
        assert_eq!(hw_inequality(&[rat(1, 1), rat(-1, 1)]).unwrap(), rat(0, 1));
        assert!(hw_inequality(&vec![rat(1, 1); 4]).unwrap() > rat(0, 1));
        assert!(hw_inequality(&[rat(1, 1), rat(-1, 2), rat(0, 1)]).is_err());
    }

    #[test]
    fn stern_brocot_order() {
        let s = chord_slopes(8);
        let want: Vec<Option<Rational>> = vec![Some(rat(0, 1)), None, Some(rat(1, 1)), Some(rat(-1, 1)), Some(rat(1, 2)), Some(rat(-1, 2)), Some(rat(2, 1)), Some(rat(-2, 1))];
        assert_eq!(s, want);
    }
}
