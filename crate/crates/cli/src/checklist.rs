//! Machine checks of the reference facts the library is built around. Each
//! item is independent; a panic inside one counts as a failure of that item.

use std::panic::{catch_unwind, AssertUnwindSafe};

use dsmat::exactmat::families::{block_c, block_i, block_j, c_matrix, identity, j_matrix, Vertex3};
use dsmat::graphbridge::Graph;
use dsmat::spectra::{block_det, closed_form_spectrum, minimal_polynomial, rational_roots, similarity_decision};
use dsmat::triangle3::{eigen_grid_check, f, f_extrema, grid_points, hw_inequality, level_curve_points, slice_scan, Segment3, Verdict3};
use dsmat::*;
use num_traits::{One, Zero};

type Check = std::result::Result<String, String>;
type Item = Box<dyn Fn() -> Check>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(err: dsmat::Error) -> String {
    err.to_string()
}

fn example_matrix() -> ExactMatrix {
    ExactMatrix::from_ratios(&[&[(0, 1), (2, 3), (1, 3)], &[(2, 3), (0, 1), (1, 3)], &[(1, 3), (1, 3), (1, 3)]]).expect("valid")
}

fn example_spectrum() -> [Rational; 3] {
    [rat(1, 1), rat(0, 1), rat(-2, 3)]
}

fn inequality() -> Check {
    let v = hw_inequality(&example_spectrum()).map_err(e)?;
    ensure!(v.is_zero(), "value {v}");
    Ok("value 0 at (1, 0, -2/3)".into())
}

fn example_certified() -> Check {
    let a = example_matrix();
    let combo = c_matrix(3).map_err(e)?.scale_rational(&rat(2, 3)).add(&Vertex3::Z.matrix().scale_rational(&rat(1, 3))).map_err(e)?;
    ensure!(combo == a, "A is not (2/3) C_3 + (1/3) Z");
    ensure!(char_poly(&a).to_rational() == Some(RatPoly::from_roots(example_spectrum().iter())), "spectrum");
    let v = certify(&a, Scope::Symmetric, 0, 0).map_err(e)?;
    ensure!(v.status == Status::CertifiedDS, "status {}", v.status);
    let basis = v.certificate.map(|c| c.basis).unwrap_or_default();
    Ok(basis)
}

fn no_positive_realization() -> Check {
    let r = positive_realization_check(&example_spectrum(), 0, 0).map_err(e)?;
    ensure!(r.inequality_holds, "inequality fails");
    ensure!(r.positive_realization_exists == Some(false), "positivity not refuted");
    Ok(r.conclusion)
}

fn slice_images(grid: usize) -> Check {
    let s = slice_scan(&example_matrix(), grid).map_err(e)?;
    ensure!(s.only_permutation_images(), "non-image cospectral point");
    Ok(format!("{} points, {} cospectral hits, all permutation images", s.points, s.cospectral.len()))
}

fn triangle_identities() -> Check {
    let (x, y, z) = (Vertex3::X.matrix(), Vertex3::Y.matrix(), Vertex3::Z.matrix());
    let sum = x.add(&y).and_then(|s| s.add(&z)).map_err(e)?.scale_rational(&rat(1, 3));
    ensure!(sum == j_matrix(3), "J_3 != (X + Y + Z) / 3");
    let dist = |a: &ExactMatrix, b: &ExactMatrix| a.sub(b).map(|d| d.frobenius_sq());
    let (xy, yz, xz) = (dist(&x, &y).map_err(e)?, dist(&y, &z).map_err(e)?, dist(&x, &z).map_err(e)?);
    ensure!(xy == yz && yz == xz, "triangle XYZ is not equilateral");
    for p in grid_points(13) {
        let m = tri_to_matrix(&p).map_err(e)?;
        ensure!(m.is_doubly_stochastic() && m.is_symmetric() && m.trace().is_one(), "tri_to_matrix({p}) off the slice");
        let ev = tri_eigenvalues(&p).map_err(e)?;
        let cp = char_poly(&m);
        ensure!(ev.iter().all(|l| cp.eval(l).is_zero()), "eigenvalue formula at {p}");
    }
    Ok("J_3 centroid, equilateral XYZ, eigenvalue formula on 91 points".into())
}

fn eigen_grid() -> Check {
    let r = eigen_grid_check(101).map_err(e)?;
    ensure!(r.max_deviation <= 1e-10, "deviation {:e}", r.max_deviation);
    Ok(format!("{} points, max deviation {:.1e}", r.points, r.max_deviation))
}

fn extrema(grid: usize) -> Check {
    let p = |a, b| TriPoint::from_ratios(a, b).expect("in domain");
    ensure!(f(&p((1, 3), (1, 3))).map_err(e)?.is_zero(), "f(J_3) != 0");
    for c in [p((0, 1), (0, 1)), p((1, 1), (0, 1)), p((0, 1), (1, 1))] {
        ensure!(f(&c).map_err(e)?.is_one(), "f at corner {c}");
    }
    for m in [p((1, 2), (0, 1)), p((0, 1), (1, 2)), p((1, 2), (1, 2))] {
        ensure!(f(&m).map_err(e)? == rat(1, 4), "f at midpoint {m}");
    }
    let x = f_extrema(grid).map_err(e)?;
    ensure!(x.grid_within_bounds, "grid values leave [0, 1]");
    Ok(format!("min {} at {}, max {}", x.min, x.interior_critical.0, x.max))
}

fn level_curves() -> Check {
    for d in [rat(1, 4), rat(1, 2), rat(3, 4), rat(9, 10)] {
        let pts = level_curve_points(&d, 40).map_err(e)?;
        ensure!(pts.len() == 40, "level {d}: only {} points", pts.len());
        for q in &pts {
            ensure!(f(q).map_err(e)? == &d * &d, "point {q} off level {d}");
        }
    }
    let zeros = grid_points(61).iter().filter(|q| f(q).map(|v| v.is_zero()).unwrap_or(false)).count();
    ensure!(zeros == 1, "{zeros} zeros of f on the grid");
    Ok("40 exact points on each sampled level curve; f = 0 only at the centre".into())
}

fn segments() -> Check {
    let ts = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    for s in Segment3::ALL {
        let (a, b) = s.endpoints();
        for t in &ts {
            let m = segment_point(&a, &b, t).map_err(e)?;
            ensure!(classify(&m).map_err(e)?.is_ds(), "{s} at t = {t} not classified DS");
            let v = certify(&m, Scope::Symmetric, 0, 0).map_err(e)?;
            ensure!(v.status == Status::CertifiedDS, "{s} at t = {t}: {}", v.status);
        }
    }
    let spectrum_of = |m: &ExactMatrix| {
        let mut r = rational_roots(&char_poly(m).to_rational().expect("rational"));
        r.sort();
        r
    };
    let x = Vertex3::X.matrix();
    ensure!(spectrum_of(&identity(3)) == vec![rat(1, 1)], "spectrum of I_3");
    ensure!(spectrum_of(&x) == vec![rat(-1, 1), rat(1, 1)], "spectrum of X");
    ensure!(spectrum_of(&c_matrix(3).map_err(e)?) == vec![rat(-1, 2), rat(1, 1)], "spectrum of C_3");
    let m = tri_to_matrix(&TriPoint::from_ratios((1, 2), (1, 2)).map_err(e)?).map_err(e)?;
    let c = classify(&m).map_err(e)?;
    ensure!(c.verdict == Verdict3::NotDS, "(1/2, 1/2) classified DS");
    let mate = mate_for(&m).map_err(e)?;
    let want = x.scale_rational(&rat(1, 2)).add(&j_matrix(3).scale_rational(&rat(1, 2))).map_err(e)?;
    ensure!(mate == want, "mate of (1/2, 1/2)");
    ensure!(!are_perm_similar(&m, &mate).map_err(e)?.is_similar(), "mate is a permutation image");
    Ok("seven segments certified at 5 points each; off-segment point refuted by (1/2) X + (1/2) J_3".into())
}

fn named_identities() -> Check {
    for n in 2..=8usize {
        let nn = n as i64;
        let c = c_matrix(n).map_err(e)?;
        let rhs = j_matrix(n).scale_rational(&rat(nn, nn - 1)).sub(&identity(n).scale_rational(&rat(1, nn - 1))).map_err(e)?;
        ensure!(c == rhs, "C_{n} identity");
        let fams = [Family::C, Family::J, Family::Identity, Family::DOfTrace(rat(1, 2))];
        for fam in &fams {
            let m = construct(fam, n).map_err(e)?;
            let closed = closed_form_spectrum(fam, n).map_err(e)?;
            ensure!(char_poly(&m).to_rational() == Some(RatPoly::from_roots(closed.iter())), "closed-form spectrum {fam:?} n = {n}");
        }
    }
    ensure!(segment_point(&identity(3), &c_matrix(3).map_err(e)?, &rat(2, 3)).map_err(e)? == j_matrix(3), "J_3 on [I, C]");
    Ok("C_n = n/(n-1) J_n - 1/(n-1) I_n and closed-form spectra, n = 2..8".into())
}

fn block_pair() -> Check {
    let a = direct_sum(&[j_matrix(2), j_matrix(4)]).map_err(e)?;
    let b = direct_sum(&[j_matrix(3), j_matrix(3)]).map_err(e)?;
    ensure!(cospectral(&a, &b).map_err(e)?, "not cospectral");
    ensure!(similarity_decision(&a, &b).map_err(e)?.similar, "not similar");
    let w = are_perm_similar(&a, &b).map_err(e)?;
    ensure!(!w.is_similar(), "permutation similar");
    let v = certify(&a, Scope::Symmetric, 0, 0).map_err(e)?;
    ensure!(v.status == Status::RefutedDS, "J_2 + J_4 not refuted");
    Ok(format!("cospectral and similar, separated by {}", w.invariant_report.map(|s| s.to_string()).unwrap_or_default()))
}

fn quasi_inverse() -> Check {
    let m = ExactMatrix::from_ratios(&[&[(3, 2), (-1, 2)], &[(-1, 2), (3, 2)]]).map_err(e)?;
    let want = ExactMatrix::from_ratios(&[&[(3, 4), (1, 4)], &[(1, 4), (3, 4)]]).map_err(e)?;
    let inv = m.inverse().map_err(e)?;
    ensure!(inv == want && inv.is_doubly_quasi_stochastic(), "inverse {inv}");
    Ok("[[3/2,-1/2],[-1/2,3/2]] inverts to [[3/4,1/4],[1/4,3/4]]".into())
}

fn block_determinants() -> Check {
    let two = identity(3).scale_rational(&rat_int(2));
    let a = ExactMatrix::from_ratios(&[&[(1, 2), (1, 2), (0, 1)], &[(0, 1), (1, 2), (1, 2)], &[(1, 2), (0, 1), (1, 2)]]).map_err(e)?;
    let v = block_det(&two, &j_matrix(3), &a, &two).map_err(e)?;
    ensure!(v == QuadScalar::from_int(48), "det {v}");
    let n = 4;
    ensure!(block_det(&identity(n), &j_matrix(n), &identity(n), &j_matrix(n)).map_err(e)?.is_zero(), "I/J example");
    let c2 = c_matrix(2).map_err(e)?;
    ensure!(block_det(&c2, &identity(2), &identity(2), &c2).map_err(e)?.is_zero(), "C_2 example");
    Ok("det [[2I, J_3], [A, 2I]] = det(4I - J_3) = 48; degenerate examples 0".into())
}

fn bipartite_blocks(seed: u64) -> Check {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let bj = block_j(3).map_err(e)?;
    for _ in 0..20 {
        let mut a = ExactMatrix::zeros(3);
        let ws: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=9)).collect();
        let total: i64 = ws.iter().sum();
        for w in ws {
            let p = dsmat::exactmat::families::permutation_matrix(&perms[rng.gen_range(0..6)]).map_err(e)?;
            a = a.add(&p.scale_rational(&rat(w, total))).map_err(e)?;
        }
        ensure!(char_poly(&block_bipartite(&a).map_err(e)?) == char_poly(&bj), "sample not cospectral with the block J");
    }
    let m = block_bipartite(&identity(2)).map_err(e)?;
    let bj2 = block_j(2).map_err(e)?;
    ensure!(cospectral(&m, &bj2).map_err(e)?, "I_2 case not cospectral");
    ensure!(minimal_polynomial(&m).map_err(e)? != minimal_polynomial(&bj2).map_err(e)?, "minimal polynomials agree");
    ensure!(!similarity_decision(&m, &bj2).map_err(e)?.similar, "I_2 case similar");
    Ok("20 random samples cospectral; I_2 case cospectral but not similar".into())
}

fn graph_bridge() -> Check {
    ensure!(scale_to_ds(&Graph::complete(4).map_err(e)?).map_err(e)? == c_matrix(4).map_err(e)?, "K_4");
    ensure!(scale_to_ds(&Graph::complete_bipartite(2, 2).map_err(e)?).map_err(e)? == block_j(2).map_err(e)?, "K_22");
    let k3 = Graph::complete(3).map_err(e)?;
    let union = Graph::disjoint_union(&[k3.clone(), k3]).map_err(e)?;
    let cc = direct_sum(&[c_matrix(3).map_err(e)?, c_matrix(3).map_err(e)?]).map_err(e)?;
    ensure!(scale_to_ds(&union).map_err(e)? == cc, "K_3 + K_3");
    ensure!(certify(&cc, Scope::Symmetric, 0, 0).map_err(e)?.status == Status::CertifiedDS, "C_3 + C_3 not certified");
    let kk = segment_point(&block_i(3).map_err(e)?, &block_c(3).map_err(e)?, &rat(2, 3)).map_err(e)?;
    ensure!(kk == block_j(3).map_err(e)?, "block J on the block segment");
    for ((n, k), count) in [((6, 2), 2), ((8, 3), 6), ((10, 3), 21)] {
        let got = enumerate_regular(n, k).map_err(e)?.len();
        ensure!(got == count, "{k}-regular on {n}: {got}");
    }
    ensure!(cospectral_mates(6, 2).map_err(e)?.is_empty(), "mates at (6, 2)");
    let mut refuted = 0;
    for k in [4, 5] {
        for p in cospectral_mates(10, k).map_err(e)? {
            let v = certify(&p.scaled_g, Scope::Symmetric, 0, 0).map_err(e)?;
            ensure!(v.status == Status::RefutedDS, "{} not refuted", p.g);
            refuted += 1;
        }
    }
    ensure!(refuted > 0, "no mates at n = 10");
    Ok(format!("scalings exact; {refuted} cospectral regular pairs on 10 vertices refuted"))
}

/// Runs every item; the report has one PASS/FAIL line each.
pub fn run(grid: usize, seed: u64) -> (String, bool) {
    let items: Vec<(&str, Item)> = vec![
        ("inequality value", Box::new(inequality)),
        ("trace-1/3 example certified", Box::new(example_certified)),
        ("no positive realization", Box::new(no_positive_realization)),
        ("slice scan", Box::new(move || slice_images(grid))),
        ("triangle identities", Box::new(triangle_identities)),
        ("eigenvalue grid", Box::new(eigen_grid)),
        ("extrema of f", Box::new(move || extrema(grid))),
        ("level curves", Box::new(level_curves)),
        ("segments and mates", Box::new(segments)),
        ("named matrices", Box::new(named_identities)),
        ("J_2+J_4 vs J_3+J_3", Box::new(block_pair)),
        ("quasi-stochastic inverse", Box::new(quasi_inverse)),
        ("block determinants", Box::new(block_determinants)),
        ("bipartite blocks", Box::new(move || bipartite_blocks(seed))),
        ("regular graphs", Box::new(graph_bridge)),
    ];
    let mut out = String::new();
    let mut ok = true;
    for (name, check) in items {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => out += &format!("PASS {name}: {detail}\n"),
            Err(why) => {
                ok = false;
                out += &format!("FAIL {name}: {why}\n");
            }
        }
    }
    (out, ok)
}
