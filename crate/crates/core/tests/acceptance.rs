//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use troplim::anlim::{
    image_check, limit_check, sample_points, Ambient, EmbeddingDiagram, Presentation,
};
use troplim::basechange::{
    base_change_check, certify_projection, generic_projection, pushforward_initial_check,
    LatticeSurjection,
};
use troplim::closure::invariant_intersection_check;
use troplim::laurent::LaurentPoly;
use troplim::polyhedra::{Fan, GRatPolyComplex, LatticeVec, Polyhedron};
use troplim::text::parse_poly;
use troplim::torictrop::{
    cox_data, cox_preimage, moment_map, trop_morphism, ExtendedMonoidMap, ExtendedPoint,
    PolarizedFanData,
};
use troplim::tropvar::{
    contains, grid_check, grid_points, lift_point, sample_curve_point, trop_assumed_basis,
    trop_hypersurface,
};
use troplim::valfield::{int, rat, rational_to_f64, ExtRational, PuiseuxScalar, Rational, ValMode};

type Outcome = Result<String, String>;

fn poly(s: &str, n: usize) -> LaurentPoly {
    parse_poly(s, Some(n)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn box2() -> Vec<(Rational, Rational)> {
    vec![(int(-5), int(5)); 2]
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn tropical_line(vertex: &[i64]) -> GRatPolyComplex {
    let rays = [[-1, -1], [0, 1], [1, 0]];
    GRatPolyComplex::new(
        2,
        rays.iter()
            .map(|r| Polyhedron::new(2, vec![q(vertex)], vec![LatticeVec(r.to_vec())]))
            .collect(),
    )
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), den)
}

fn random_unit_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1i64..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(n, rng.gen_range(1i64..=3))
}

fn random_plane_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let k = rng.gen_range(2..=6);
    let mut exps = BTreeSet::new();
    while exps.len() < k {
        exps.insert(vec![rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)]);
    }
    LaurentPoly::from_terms(
        2,
        exps.into_iter().map(|u| {
            (
                LatticeVec(u),
                PuiseuxScalar::monomial(random_unit_coeff(rng), rat(rng.gen_range(-2..=2), 2)),
            )
        }),
    )
}

fn cell_point(rng: &mut ChaCha8Rng, cell: &Polyhedron) -> Vec<Rational> {
    let w: Vec<Rational> = cell
        .vertices()
        .iter()
        .map(|_| int(rng.gen_range(1..=4)))
        .collect();
    let total: Rational = w.iter().sum();
    let mut p = vec![int(0); cell.rank()];
    for (a, v) in w.iter().zip(cell.vertices()) {
        for (x, y) in p.iter_mut().zip(v) {
            *x += a * y / &total;
        }
    }
    for r in cell.rays() {
        let mu = random_rational(rng, 0, 8, 2);
        for (x, y) in p.iter_mut().zip(r.entries()) {
            *x += &mu * int(*y);
        }
    }
    p
}

/// A random point of the extended tropicalization of a smooth complete or
/// affine fan, in a random chart and a random stratum of it.
fn random_extended_point(rng: &mut ChaCha8Rng, fan: &Arc<Fan>) -> ExtendedPoint {
    let charts = fan.maximal_cones();
    let chart = charts[rng.gen_range(0..charts.len())].clone();
    let faces: Vec<&Vec<usize>> = fan
        .cones()
        .iter()
        .filter(|c| c.iter().all(|i| chart.contains(i)))
        .collect();
    let tau = faces[rng.gen_range(0..faces.len())].clone();
    let coords = (0..fan.rank() - tau.len())
        .map(|_| random_rational(rng, -8, 8, 2))
        .collect();
    ExtendedPoint::new(fan.clone(), &chart, &tau, coords).unwrap()
}

fn criterion_1() -> Outcome {
    let step = rat(1, 4);
    let mut pts = 0;
    for (f, vertex) in [("x + y + 1", [0, 0]), ("x + y + t", [1, 1])] {
        let f = poly(f, 2);
        let t = trop_hypersurface(&f).map_err(|e| e.to_string())?;
        let expected = tropical_line(&vertex);
        ensure(t.complex.support_eq(&expected), || {
            format!("trop({}) is not the tropical line at {vertex:?}", t.source)
        })?;
        let r = grid_check(&f, &t.complex, &step, &box2()).map_err(|e| e.to_string())?;
        ensure(r.discrepancies.is_empty(), || {
            format!(
                "{} grid discrepancies for {}",
                r.discrepancies.len(),
                t.source
            )
        })?;
        let r = grid_check(&f, &expected, &step, &box2()).map_err(|e| e.to_string())?;
        ensure(r.discrepancies.is_empty(), || {
            "hand-built line disagrees with the grid".into()
        })?;
        pts += r.points;
    }
    Ok(format!("2 lines, {pts} grid points, 0 discrepancies"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let step = rat(1, 4);
    let mut pts = 0;
    let count = 24;
    for _ in 0..count {
        let f = random_plane_poly(&mut rng);
        let t = trop_hypersurface(&f).map_err(|e| format!("{f}: {e}"))?;
        let r = grid_check(&f, &t.complex, &step, &box2()).map_err(|e| e.to_string())?;
        ensure(r.discrepancies.is_empty(), || {
            format!(
                "{f}: {} discrepancies, first {:?}",
                r.discrepancies.len(),
                r.discrepancies[0]
            )
        })?;
        pts += r.points;
    }
    Ok(format!(
        "{count} random polynomials, {pts} grid points, 0 discrepancies"
    ))
}

fn criterion_3() -> Outcome {
    let fixtures = [
        "x + y + 1",
        "x + y + t",
        "x*y - t",
        "x^2 + x*y + t*x*y + t*y^2 + x + t*x + 2*t*y + t",
        "x^2*y + x + t*x*y - t*x - t*y^-1 - t^2",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let prec = int(6);
    let grid = grid_points(&rat(1, 2), &box2()).map_err(|e| e.to_string())?;
    let (mut sampled, mut lifted) = (0, 0);
    for (k, s) in fixtures.iter().enumerate() {
        let f = poly(s, 2);
        let t = trop_hypersurface(&f).map_err(|e| e.to_string())?;
        for w in &grid {
            ensure(contains(&f, w) == t.contains_point(w), || {
                format!("{s}: membership disagrees at {w:?}")
            })?;
        }
        let n = if k < fixtures.len() - 1 {
            200
        } else {
            1000 - 200 * (fixtures.len() - 1)
        };
        for _ in 0..n {
            let p = sample_curve_point(&f, &mut rng, &prec).map_err(|e| format!("{s}: {e}"))?;
            let v: Vec<Rational> = p
                .trop()
                .iter()
                .map(|x| x.as_finite().cloned().ok_or("infinite coordinate"))
                .collect::<Result<_, _>>()?;
            ensure(t.contains_point(&v), || {
                format!("{s}: sampled point with valuation {v:?} is outside trop")
            })?;
            sampled += 1;
        }
        let cells = t.complex.maximal_cells();
        for _ in 0..20 {
            let cell = cells[rng.gen_range(0..cells.len())];
            let v = cell_point(&mut rng, cell);
            let p = lift_point(&f, &v, &prec).map_err(|e| format!("{s} at {v:?}: {e}"))?;
            let expect: Vec<ExtRational> = v.iter().cloned().map(ExtRational::Finite).collect();
            ensure(p.trop() == expect, || {
                format!("{s}: lift of {v:?} has valuation {:?}", p.trop())
            })?;
            lifted += 1;
        }
    }
    Ok(format!(
        "{} grid points per curve agree, {sampled} sampled points in support, {lifted} exact lifts",
        grid.len()
    ))
}

/// Smooth full-dimensional charts of A^1, A^2, P^1 and P^2.
fn charts() -> Vec<(Arc<Fan>, Vec<usize>)> {
    let a1 = Arc::new(Fan::affine_space(1));
    let a2 = Arc::new(Fan::affine_space(2));
    let p1 = Arc::new(Fan::projective_space(1));
    let p2 = Arc::new(Fan::projective_space(2));
    let mut out = vec![(a1, vec![0]), (a2, vec![0, 1])];
    for f in [p1, p2] {
        for c in f.maximal_cones().to_vec() {
            out.push((f.clone(), c));
        }
    }
    out
}

fn random_map(
    rng: &mut ChaCha8Rng,
    from: &(Arc<Fan>, Vec<usize>),
    to: &(Arc<Fan>, Vec<usize>),
) -> ExtendedMonoidMap {
    loop {
        let a: Vec<Vec<i64>> = (0..to.0.rank())
            .map(|_| (0..from.0.rank()).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(m) =
            ExtendedMonoidMap::from_lattice_map(from.0.clone(), &from.1, to.0.clone(), &to.1, &a)
        {
            return m;
        }
    }
}

/// A K-point of a smooth chart given by its Hilbert-basis coordinates, some
/// of them zero.
fn random_chart_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<PuiseuxScalar> {
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.2) {
                PuiseuxScalar::zero()
            } else {
                let mut s =
                    PuiseuxScalar::monomial(random_unit_coeff(rng), random_rational(rng, -4, 4, 2));
                if rng.gen_bool(0.5) {
                    s = &s + &PuiseuxScalar::monomial(random_unit_coeff(rng), int(3));
                }
                s
            }
        })
        .collect()
}

/// `χ^{u'}(φ(y)) = χ^{φ^*u'}(y)`, evaluated in K from the chart coordinates.
fn image_values(phi: &ExtendedMonoidMap, y: &[PuiseuxScalar]) -> Result<Vec<ExtRational>, String> {
    let sm = phi
        .source()
        .monoid(phi.source_chart())
        .map_err(|e| e.to_string())?;
    let tm = phi
        .target()
        .monoid(phi.target_chart())
        .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for u in tm.basis() {
        let mut pulled = vec![0i64; phi.source().rank()];
        let dual = phi
            .apply(u)
            .map_err(|e| e.to_string())?
            .ok_or("character pulls back to infinity")?;
        for (x, d) in pulled.iter_mut().zip(dual.entries()) {
            *x = *d;
        }
        let c = sm
            .decompose(&LatticeVec(pulled))
            .ok_or("pullback leaves the source monoid")?;
        let mut val = PuiseuxScalar::one();
        for (yk, &ck) in y.iter().zip(&c) {
            if ck > 0 {
                val = &val * &yk.pow(ck as i64).map_err(|e| e.to_string())?;
            }
        }
        out.push(val.valuation());
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let cs = charts();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 500;
    for _ in 0..n {
        let (i, j, k) = (
            rng.gen_range(0..cs.len()),
            rng.gen_range(0..cs.len()),
            rng.gen_range(0..cs.len()),
        );
        let psi = random_map(&mut rng, &cs[i], &cs[j]);
        let phi = random_map(&mut rng, &cs[j], &cs[k]);
        let comp = phi.compose(&psi).map_err(|e| e.to_string())?;
        let y = random_chart_point(&mut rng, cs[i].0.monoid(&cs[i].1).unwrap().basis().len());
        let p =
            ExtendedPoint::trop_point(cs[i].0.clone(), &cs[i].1, &y).map_err(|e| e.to_string())?;
        let direct = trop_morphism(&comp, &p).map_err(|e| e.to_string())?;
        let stepwise = trop_morphism(&phi, &trop_morphism(&psi, &p).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(direct.glue_equal(&stepwise), || {
            format!("composition differs at {}", p.describe())
        })?;
        let image = ExtendedPoint::from_values(
            comp.target().clone(),
            comp.target_chart(),
            image_values(&comp, &y)?,
        )
        .map_err(|e| e.to_string())?;
        ensure(direct.glue_equal(&image), || {
            format!(
                "trop(φ(y)) = {} but Trop(φ)(trop y) = {}",
                image.describe(),
                direct.describe()
            )
        })?;
    }
    Ok(format!("{n} composable pairs and K-points"))
}

fn line_presentation() -> Arc<Presentation> {
    Arc::new(
        Presentation::new(
            Ambient::Affine,
            vec![poly("x + y + 1", 2)],
            vec![poly("x", 1), poly("-1 - x", 1)],
        )
        .unwrap(),
    )
}

fn hyperbola_presentation() -> Arc<Presentation> {
    Arc::new(
        Presentation::new(
            Ambient::Affine,
            vec![poly("x*y - t", 2)],
            vec![poly("x", 1), poly("t*x^-1", 1)],
        )
        .unwrap(),
    )
}

fn run_limit(d: &EmbeddingDiagram, n: usize, seed: u64) -> Result<String, String> {
    let pts = sample_points(d.presentation(), n, seed);
    ensure(pts.len() == n, || {
        format!("only {} sample points", pts.len())
    })?;
    let r = limit_check(d, &pts, 2).map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("{:?}", r.failures.iter().take(3).collect::<Vec<_>>())
    })?;
    Ok(format!(
        "{} coherent, {}/{} pairs separated, {} reconstructed",
        r.coherent, r.separated, r.pairs, r.reconstructed
    ))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for (name, p) in [
        ("line", line_presentation()),
        ("hyperbola", hyperbola_presentation()),
    ] {
        let d = EmbeddingDiagram::main_proof(p, &poly("x^2 + y", 2), &poly("x*y", 2))
            .map_err(|e| e.to_string())?;
        notes.push(format!("{name}: {}", run_limit(&d, 100, 5)?));
    }
    Ok(notes.join("; "))
}

fn criterion_6() -> Outcome {
    let p = Arc::new(
        Presentation::new(
            Ambient::Projective,
            vec![poly("x1 + x2 + x3", 3)],
            vec![poly("1", 1), poly("x", 1), poly("-1 - x", 1)],
        )
        .unwrap(),
    );
    let d = EmbeddingDiagram::projective_charts(p).map_err(|e| e.to_string())?;
    ensure(d.nodes().len() == 3, || "expected three chart nodes".into())?;
    run_limit(&d, 100, 6)
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for fan in [
        Arc::new(Fan::affine_space(2)),
        Arc::new(Fan::projective_space(2)),
    ] {
        for s in ["x + y + 1", "x*y - t", "x + y"] {
            let f = poly(s, 2);
            for sigma in fan.cones().to_vec() {
                let ok = invariant_intersection_check(&f, fan.clone(), &sigma)
                    .map_err(|e| format!("{s} at {sigma:?}: {e}"))?;
                ensure(ok, || format!("{s}: orbit closure {sigma:?} fails"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (variety, orbit closure) pairs"))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Distance from `x` to the simplex spanned by at most three vertices in the
/// plane or line.
fn simplex_distance(x: &[f64], verts: &[Vec<f64>]) -> f64 {
    match verts.len() {
        1 => dist(x, &verts[0]),
        2 => {
            let d: Vec<f64> = verts[1].iter().zip(&verts[0]).map(|(a, b)| a - b).collect();
            let r: Vec<f64> = x.iter().zip(&verts[0]).map(|(a, b)| a - b).collect();
            let dd: f64 = d.iter().map(|v| v * v).sum();
            let s = (r.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>() / dd).clamp(0.0, 1.0);
            let proj: Vec<f64> = verts[0].iter().zip(&d).map(|(a, b)| a + s * b).collect();
            dist(x, &proj)
        }
        3 => {
            let (a, b, c) = (&verts[0], &verts[1], &verts[2]);
            let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
            let l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (x[1] - a[1])) / det;
            let l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
            if l1 >= 0.0 && l2 >= 0.0 && l1 + l2 <= 1.0 {
                0.0
            } else {
                [(a, b), (b, c), (a, c)]
                    .iter()
                    .map(|(p, q)| simplex_distance(x, &[p.to_vec(), q.to_vec()]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
        _ => f64::INFINITY,
    }
}

/// `Σ e^{-ν(χ^{u_σ}(y))} u_σ / Σ e^{-ν(χ^{u_σ}(y))}` computed in K.
fn direct_moment(pol: &PolarizedFanData, y: &[PuiseuxScalar]) -> Vec<f64> {
    let vals: Vec<f64> = pol
        .chars()
        .iter()
        .map(|u| {
            let mut m = PuiseuxScalar::one();
            for (yi, &e) in y.iter().zip(u.entries()) {
                m = &m * &yi.pow(e).unwrap();
            }
            rational_to_f64(m.valuation().as_finite().unwrap())
        })
        .collect();
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = vals.iter().map(|v| (lo - v).exp()).collect();
    let total: f64 = w.iter().sum();
    let n = y.len();
    (0..n)
        .map(|i| {
            pol.chars()
                .iter()
                .zip(&w)
                .map(|(u, wi)| wi * u[i] as f64)
                .sum::<f64>()
                / total
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in [1usize, 2] {
        let pol = PolarizedFanData::projective_space(n);
        let fan = pol.fan().clone();
        for _ in 0..200 {
            let p = random_extended_point(&mut rng, &fan);
            let mu = moment_map(&p, &pol).map_err(|e| e.to_string())?;
            let verts: Vec<Vec<f64>> = pol
                .face_vertices(p.stratum())
                .iter()
                .map(|u| u.entries().iter().map(|&x| x as f64).collect())
                .collect();
            let d = simplex_distance(&mu, &verts);
            let tol = if verts.len() == 1 { 1e-12 } else { 1e-9 };
            ensure(d <= tol, || {
                format!("{} maps {d:e} away from its face", p.describe())
            })?;
            worst = worst.max(d);
            count += 1;
        }
        // fibers of Trop: K-points with equal valuations but different coefficients
        let chart = fan.maximal_cones()[n].clone();
        for _ in 0..100 {
            let exps: Vec<Rational> = (0..n)
                .map(|_| random_rational(&mut rng, -8, 8, 2))
                .collect();
            let ys: Vec<Vec<PuiseuxScalar>> = (0..2)
                .map(|_| {
                    exps.iter()
                        .map(|e| {
                            &PuiseuxScalar::monomial(random_unit_coeff(&mut rng), e.clone())
                                + &PuiseuxScalar::monomial(random_unit_coeff(&mut rng), e + int(1))
                        })
                        .collect()
                })
                .collect();
            let p = ExtendedPoint::torus(fan.clone(), &chart, exps.clone())
                .map_err(|e| e.to_string())?;
            let mu = moment_map(&p, &pol).map_err(|e| e.to_string())?;
            for y in &ys {
                let d = dist(&mu, &direct_moment(&pol, y));
                ensure(d <= 1e-9, || {
                    format!("fiber over {exps:?} spreads by {d:e}")
                })?;
                worst = worst.max(d);
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} points on P^1 and P^2, worst deviation {worst:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut count = 0;
    for n in [1usize, 2] {
        let fan = Arc::new(Fan::projective_space(n));
        let data = cox_data(fan.clone()).map_err(|e| e.to_string())?;
        for _ in 0..200 {
            let p = random_extended_point(&mut rng, &fan);
            let lift = cox_preimage(&data, &p).map_err(|e| e.to_string())?;
            let back = trop_morphism(&data.morphism(p.chart()).map_err(|e| e.to_string())?, &lift)
                .map_err(|e| e.to_string())?;
            ensure(back.glue_equal(&p), || {
                format!("{} comes back as {}", p.describe(), back.describe())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} round trips"))
}

fn criterion_10() -> Outcome {
    let fixtures = [
        ("x + y + 1", 2),
        ("x + y + 2", 2),
        ("x*y - 1", 2),
        ("x^2 + y^2 + 1", 2),
        ("x^2*y + x*y^2 + 3", 2),
        ("x + y + x*y + 5", 2),
        ("x^3 - y^2", 2),
        ("x^-1 + y^-1 + 1", 2),
        ("x + y + z + 1", 3),
        ("x*y + y*z + z*x + 2", 3),
    ];
    for (s, n) in fixtures {
        let f = poly(s, n)
            .with_mode(ValMode::Trivial)
            .map_err(|e| e.to_string())?;
        ensure(base_change_check(&f).map_err(|e| e.to_string())?, || {
            format!("{s}: trivial and Puiseux tropicalizations differ")
        })?;
    }
    let trivial = Arc::new(
        line_presentation()
            .with_mode(ValMode::Trivial)
            .map_err(|e| e.to_string())?,
    );
    let r = image_check(&trivial, 50, 10, &int(4)).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.targets == 3, || {
        format!(
            "trivial image check: {:?}, {}/{} rays",
            r.failures, r.hit, r.targets
        )
    })?;

    let basis: Vec<LaurentPoly> = ["x + 2*y + 3*z", "y + 2*z - 1", "x - z + 2", "2*x + y + 3"]
        .iter()
        .map(|s| poly(s, 3))
        .collect();
    let c = trop_assumed_basis(&basis).map_err(|e| e.to_string())?;
    let phi = generic_projection(&c, 10).map_err(|e| e.to_string())?;
    ensure(
        certify_projection(&c, &phi).map_err(|e| e.to_string())?,
        || "projection not certified".into(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut triples = 0;
    while triples < 200 {
        let src = rng.gen_range(2..=3);
        let tgt = rng.gen_range(1..=src);
        let a: Vec<Vec<i64>> = (0..tgt)
            .map(|_| (0..src).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let Ok(phi) = LatticeSurjection::new(a, src) else {
            continue;
        };
        let k = rng.gen_range(1..=5);
        let f = LaurentPoly::from_terms(
            tgt,
            (0..k).map(|_| {
                let u = LatticeVec((0..tgt).map(|_| rng.gen_range(-2..=2)).collect());
                (
                    u,
                    PuiseuxScalar::monomial(
                        random_unit_coeff(&mut rng),
                        rat(rng.gen_range(-2..=2), 2),
                    ),
                )
            }),
        );
        if f.is_zero() {
            continue;
        }
        let v: Vec<Rational> = (0..src)
            .map(|_| random_rational(&mut rng, -4, 4, 2))
            .collect();
        ensure(
            pushforward_initial_check(&phi, &f, &v).map_err(|e| e.to_string())?,
            || format!("{f} along {phi} at {v:?}"),
        )?;
        triples += 1;
    }
    Ok(format!(
        "10 base changes, {}/{} rays hit, projection {phi}, {triples} initial-form triples",
        r.hit, r.targets
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tropical lines", criterion_1),
        ("random plane curves on the grid", criterion_2),
        ("membership, sampling and lifting", criterion_3),
        ("functoriality of Trop", criterion_4),
        ("inverse limit on affine curves", criterion_5),
        ("inverse limit over projective charts", criterion_6),
        ("orbit closure intersections", criterion_7),
        ("moment map", criterion_8),
        ("Cox quotient round trip", criterion_9),
        ("base change and projections", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
