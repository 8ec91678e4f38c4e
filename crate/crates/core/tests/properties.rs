use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use troplim::anlim::{sample_points, seminorm_value, Ambient, Presentation, SeminormPoint};
use troplim::io::{
    builtin_fan, complex_to_text, fan_to_text, parse_complex, parse_fan, parse_point, point_to_text,
};
use troplim::laurent::LaurentPoly;
use troplim::polyhedra::{Cone, DualMonoid, Fan, LatticeVec};
use troplim::text::{parse_poly, parse_scalar};
use troplim::torictrop::ExtendedPoint;
use troplim::tropvar::{trivial_trop, trop_hypersurface};
use troplim::valfield::{rat, PuiseuxScalar, Rational, ValMode};
use troplim::Error;

fn scalar() -> impl Strategy<Value = PuiseuxScalar> {
    prop::collection::vec(
        (
            (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
            1i64..=3,
            -6i64..=6,
        ),
        1..=3,
    )
    .prop_map(|ts| {
        PuiseuxScalar::from_terms(ts.into_iter().map(|(n, d, e)| (rat(n, d), rat(e, 2))))
    })
}

fn half() -> impl Strategy<Value = Rational> {
    (-8i64..=8).prop_map(|n| rat(n, 2))
}

fn poly2() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), scalar()), 1..=5)
        .prop_map(|ts| {
            LaurentPoly::from_terms(
                2,
                ts.into_iter()
                    .map(|((a, b), c)| (LatticeVec(vec![a, b]), c)),
            )
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn constant_poly2() -> impl Strategy<Value = BTreeMap<(i64, i64), i64>> {
    prop::collection::btree_map(
        (-3i64..=3, -3i64..=3),
        (-4i64..=4).prop_filter("nonzero", |n| *n != 0),
        2..=6,
    )
}

fn weight2() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(half(), 2)
}

fn p2() -> Arc<Fan> {
    Arc::new(Fan::projective_space(2))
}

fn extended_point(fan: Arc<Fan>) -> impl Strategy<Value = ExtendedPoint> {
    let n = fan.rank();
    let charts = fan.maximal_cones().to_vec();
    (
        0..charts.len(),
        any::<prop::sample::Index>(),
        prop::collection::vec(half(), n),
    )
        .prop_map(move |(c, face, coords)| {
            let chart = &charts[c];
            let faces: Vec<&Vec<usize>> = fan
                .cones()
                .iter()
                .filter(|t| t.iter().all(|i| chart.contains(i)))
                .collect();
            let tau = face.get(&faces);
            ExtendedPoint::new(fan.clone(), chart, tau, coords[..n - tau.len()].to_vec()).unwrap()
        })
}

fn line_points() -> &'static [SeminormPoint] {
    static PTS: OnceLock<Vec<SeminormPoint>> = OnceLock::new();
    PTS.get_or_init(|| {
        let p = Arc::new(
            Presentation::new(
                Ambient::Affine,
                vec![parse_poly("x + y + 1", Some(2)).unwrap()],
                vec![
                    parse_poly("x", Some(1)).unwrap(),
                    parse_poly("-1 - x", Some(1)).unwrap(),
                ],
            )
            .unwrap(),
        );
        sample_points(&p, 40, 11)
    })
}

fn small_poly2() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((0i64..=2, 0i64..=2), scalar()), 1..=3).prop_map(|ts| {
        LaurentPoly::from_terms(
            2,
            ts.into_iter()
                .map(|((a, b), c)| (LatticeVec(vec![a, b]), c)),
        )
    })
}

proptest! {
    #[test]
    fn valuation_is_multiplicative_and_ultrametric(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
        let s = (&a + &b).valuation();
        prop_assert!(s >= a.valuation().min(b.valuation()));
        if a.valuation() != b.valuation() {
            prop_assert_eq!(s, a.valuation().min(b.valuation()));
        }
    }

    #[test]
    fn psi_and_initial_forms_are_multiplicative(f in poly2(), g in poly2(), w in weight2()) {
        let fg = &f * &g;
        prop_assert_eq!(fg.psi(&w).unwrap(), f.psi(&w).unwrap() + g.psi(&w).unwrap());
        prop_assert_eq!(fg.initial_form(&w).unwrap(), &f.initial_form(&w).unwrap() * &g.initial_form(&w).unwrap());
    }

    #[test]
    fn scalars_and_polynomials_round_trip(a in scalar(), f in poly2()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
        prop_assert_eq!(parse_poly(&f.to_string(), Some(2)).unwrap(), f);
    }

    #[test]
    fn complexes_round_trip(f in poly2()) {
        let c = trop_hypersurface(&f).unwrap().complex;
        prop_assert_eq!(parse_complex(&complex_to_text(&c)).unwrap(), c);
    }

    #[test]
    fn points_round_trip(p in extended_point(p2())) {
        let resolve = |name: &str| builtin_fan(name).map(Arc::new).ok_or_else(|| Error::Domain(name.to_string()));
        let (name, q) = parse_point(&point_to_text("P2", &p), &resolve).unwrap();
        prop_assert_eq!(name, "P2");
        prop_assert_eq!(q.values(), p.values());
        prop_assert!(q.glue_equal(&p));
    }

    #[test]
    fn fans_round_trip(a in (-3i64..=3, -3i64..=3), b in (-3i64..=3, -3i64..=3)) {
        let rays = vec![LatticeVec(vec![a.0, a.1]).primitive(), LatticeVec(vec![b.0, b.1]).primitive()];
        prop_assume!(a.0 * b.1 - a.1 * b.0 != 0);
        let fan = Fan::new(2, rays, vec![vec![0, 1]]).unwrap();
        prop_assert_eq!(parse_fan(&fan_to_text(&fan)).unwrap(), fan);
    }

    #[test]
    fn dual_of_dual(rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=4)) {
        let rays: Vec<LatticeVec> = rays.into_iter().map(LatticeVec).filter(|r| !r.is_zero()).collect();
        let cone = Cone::new(3, rays);
        prop_assume!(cone.is_ok());
        let cone = cone.unwrap();
        prop_assert_eq!(cone.dual().dual(), cone);
    }

    #[test]
    fn hilbert_basis_generates(rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=2)) {
        let rays: Vec<LatticeVec> = rays.into_iter().map(LatticeVec).filter(|r| !r.is_zero()).collect();
        let cone = Cone::new(2, rays);
        prop_assume!(cone.is_ok());
        let cone = cone.unwrap();
        let monoid = DualMonoid::new(&cone).unwrap();
        let dual = cone.dual();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let u = LatticeVec(vec![x, y]);
                if dual.contains(&u) {
                    let c = monoid.decompose(&u);
                    prop_assert!(c.is_some(), "{} not generated", u);
                    prop_assert_eq!(monoid.combine(&c.unwrap()), u);
                }
            }
        }
    }

    #[test]
    fn glueing_is_deterministic(p in extended_point(p2())) {
        for chart in p.fan().maximal_cones() {
            if !p.stratum().iter().all(|i| chart.contains(i)) {
                continue;
            }
            let q = p.in_chart(chart).unwrap();
            prop_assert!(q.glue_equal(&p));
            let back = q.in_chart(p.chart()).unwrap();
            prop_assert_eq!(back.values(), p.values());
            prop_assert_eq!(back.coords(), p.coords());
        }
    }

    #[test]
    fn recession_fan_is_the_trivial_tropicalization(
        terms in constant_poly2(),
        shifts in prop::collection::vec(-4i64..=4, 6),
    ) {
        let f = LaurentPoly::from_terms(2, terms.iter().map(|(&(a, b), &c)| (LatticeVec(vec![a, b]), PuiseuxScalar::trivial(rat(c, 1)))));
        let ft = LaurentPoly::from_terms(
            2,
            terms.iter().zip(&shifts).map(|(((a, b), c), e)| (LatticeVec(vec![*a, *b]), PuiseuxScalar::monomial(rat(*c, 1), rat(*e, 2)))),
        );
        let trivial = trivial_trop(&f).unwrap().complex;
        let rec = trop_hypersurface(&ft).unwrap().complex.recession_fan();
        prop_assert!(rec.support_eq(&trivial));
        prop_assert_eq!(f.mode(), ValMode::Trivial);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn seminorms_are_multiplicative_and_ultrametric(i in 0usize..40, f in small_poly2(), g in small_poly2()) {
        let pts = line_points();
        let x = &pts[i % pts.len()];
        let vf = seminorm_value(x, &f).unwrap();
        let vg = seminorm_value(x, &g).unwrap();
        prop_assert_eq!(seminorm_value(x, &(&f * &g)).unwrap(), vf.clone() + vg.clone());
        let sum = seminorm_value(x, &(&f + &g)).unwrap();
        prop_assert!(sum >= vf.clone().min(vg.clone()), "{} at {}", sum, x);
    }
}
