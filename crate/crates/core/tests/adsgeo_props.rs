use hyperquake::adsgeo::{
    ambient_angle, common_boundary, plane_angle, plane_angle_from, quadric, CommonBoundary, SpacelikePlane,
};
use hyperquake::holonomy::translation_along;
use hyperquake::moebius::{CirclePoint, Isometry};
use proptest::prelude::*;

fn iso() -> impl Strategy<Value = Isometry> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_filter_map("det > 0.2", |(a, b, c, d)| {
            if a * d - b * c > 0.2 {
                Isometry::new(a, b, c, d).ok()
            } else {
                None
            }
        })
}

fn hyperbolic() -> impl Strategy<Value = Isometry> {
    (0.05..4.0f64, iso()).prop_map(|(l, c)| Isometry::dilation(l).conj(&c))
}

/// Two planes meeting along a spacelike line.
fn intersecting() -> impl Strategy<Value = (SpacelikePlane, SpacelikePlane)> {
    (iso(), hyperbolic()).prop_map(|(a, h)| (SpacelikePlane::new(a), SpacelikePlane::new(a * h)))
}

fn first_common_x(p: &SpacelikePlane, q: &SpacelikePlane) -> f64 {
    match common_boundary(p, q) {
        CommonBoundary::Points(pts) => pts[0].x,
        CommonBoundary::Identical => panic!("identical planes"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boundary_angle_matches_quadric(pq in intersecting()) {
        let (p, q) = pq;
        let a = plane_angle(&p, &q, 1).unwrap();
        let b = ambient_angle(&p, &q).unwrap();
        prop_assert!((a.abs() - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn angle_is_antisymmetric(pq in intersecting()) {
        let (p, q) = pq;
        let a = plane_angle(&p, &q, 1).unwrap();
        prop_assert!((a + plane_angle(&q, &p, 1).unwrap()).abs() < 1e-12 * a.abs().max(1.0));
        prop_assert!((a + plane_angle(&p, &q, -1).unwrap()).abs() < 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn angle_is_equivariant(pq in intersecting(), c in iso(), d in iso()) {
        let (p, q) = pq;
        let x = first_common_x(&p, &q);
        let a = plane_angle_from(&p, &q, x).unwrap();
        let (p2, q2) = (p.moved(&c, &d), q.moved(&c, &d));
        let b = plane_angle_from(&p2, &q2, c.apply_theta(x)).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "{} vs {}", a, b);
        let b = plane_angle(&p2, &q2, 1).unwrap();
        prop_assert!((a.abs() - b.abs()).abs() < 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn bending_angles_are_superadditive(
        mut th in prop::array::uniform4(0.0..1.0f64),
        w1 in 0.01..3.0f64,
        w2 in 0.01..3.0f64,
        c in iso(),
        d in iso(),
    ) {
        th.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assume!((0..4).all(|i| (th[(i + 1) % 4] - th[i]).rem_euclid(1.0) > 0.01));
        let v = |t: f64| CirclePoint::new(t).to_vec();
        // faces of a surface bent along two disjoint lines, seen from the side of the first
        let t1 = translation_along(v(th[0]), v(th[1]), w1);
        let t2 = translation_along(v(th[3]), v(th[2]), w2);
        let p = SpacelikePlane::new(Isometry::IDENTITY).moved(&c, &d);
        let r = SpacelikePlane::new(t1).moved(&c, &d);
        let q = SpacelikePlane::new(t1 * t2).moved(&c, &d);
        let pr = plane_angle(&p, &r, 1).unwrap().abs();
        let rq = plane_angle(&r, &q, 1).unwrap().abs();
        let pq = plane_angle(&p, &q, 1).unwrap().abs();
        prop_assert!((pr - w1 / 2.0).abs() < 1e-9 && (rq - w2 / 2.0).abs() < 1e-9);
        prop_assert!(pq >= pr + rq - 1e-9, "{} < {} + {}", pq, pr, rq);
    }

    #[test]
    fn dual_point_cuts_out_the_graph(a in iso()) {
        let p = SpacelikePlane::new(a);
        let n = quadric::dual_point(&p);
        prop_assert!((quadric::form(&n, &n) + 1.0).abs() < 1e-12);
        for k in 0..16 {
            let x = (k as f64 + 0.5) / 16.0;
            let m = quadric::boundary_matrix(&p.boundary_point(x));
            prop_assert!(quadric::form(&n, &m).abs() < 1e-9);
            // a point off the graph is not on the plane
            let off = quadric::boundary_matrix(&hyperquake::adsgeo::TorusPoint::new(x, a.apply_theta(x) + 0.25));
            prop_assert!(quadric::form(&n, &off).abs() > 1e-6);
        }
        let m = quadric::normal(&p).unwrap();
        prop_assert!((quadric::form(&m, &n).abs() - 1.0).abs() < 1e-9);
    }
}
