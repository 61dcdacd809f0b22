//! Spacelike planes of AdS3 through their boundary graphs.
//!
//! The boundary torus is `S1 x S1` with `PSL2 x PSL2` acting diagonally. The
//! plane `P_A` has the graph `{(x, A x)}` as its boundary; the pair `(C, D)`
//! sends `P_A` to `P_{D A C^-1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moebius::{circle_dist, CirclePoint, Class, Isometry};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

impl TorusPoint {
    pub fn new(x: f64, y: f64) -> Self {
        TorusPoint {
            x: CirclePoint::new(x).theta(),
            y: CirclePoint::new(y).theta(),
        }
    }

    pub fn from_points(x: CirclePoint, y: CirclePoint) -> Self {
        TorusPoint { x: x.theta(), y: y.theta() }
    }

    /// Max of the two circle distances.
    pub fn dist(&self, o: &TorusPoint) -> f64 {
        crate::moebius::circle_dist(self.x, o.x).max(crate::moebius::circle_dist(self.y, o.y))
    }

    /// Image under `(left, right)`.
    pub fn moved(&self, left: &Isometry, right: &Isometry) -> TorusPoint {
        TorusPoint::new(left.apply_theta(self.x), right.apply_theta(self.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacelikePlane {
    pub a: Isometry,
}

impl SpacelikePlane {
    pub fn new(a: Isometry) -> Self {
        SpacelikePlane { a }
    }

    /// `(C, D) . P_A = P_{D A C^-1}`.
    pub fn moved(&self, c: &Isometry, d: &Isometry) -> SpacelikePlane {
        SpacelikePlane::new(*d * self.a * c.inverse())
    }

    pub fn boundary_point(&self, x: f64) -> TorusPoint {
        TorusPoint::new(x, self.a.apply_theta(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommonBoundary {
    Identical,
    Points(Vec<TorusPoint>),
}

/// Boundary points shared by two planes: fixed points of `A^-1 B` on the graph of `A`.
pub fn common_boundary(p: &SpacelikePlane, q: &SpacelikePlane) -> CommonBoundary {
    let m = p.a.inverse() * q.a;
    if m.is_identity(1e-12) {
        return CommonBoundary::Identical;
    }
    let pts = match m.fixed_points() {
        Err(_) => vec![],
        Ok((s, t)) => {
            if m.classify() == Class::Parabolic {
                vec![s]
            } else {
                vec![s, t]
            }
        }
    };
    CommonBoundary::Points(
        pts.into_iter()
            .map(|x| TorusPoint::from_points(x, p.a.apply_boundary(x)))
            .collect(),
    )
}

/// Signed translation length of `m` along its axis oriented from `start`:
/// positive when `start` is the repulsive fixed point. The identity gives 0.
pub fn signed_translation(m: &Isometry, start: f64) -> Result<f64> {
    if m.is_identity(1e-12) {
        return Ok(0.0);
    }
    let l = m.translation_length()?;
    let (att, rep) = m.fixed_points()?;
    let s = CirclePoint::new(start);
    if s.dist(rep) < 1e-9 {
        Ok(l)
    } else if s.dist(att) < 1e-9 {
        Ok(-l)
    } else {
        Err(Error::NotOnAxis)
    }
}

/// Translation and rotation parts of `(A, B)` along the spacelike line starting at `start`.
pub fn translation_rotation(a: &Isometry, b: &Isometry, start: TorusPoint) -> Result<(f64, f64)> {
    let ta = signed_translation(a, start.x)?;
    let tb = signed_translation(b, start.y)?;
    Ok(split(ta, tb))
}

/// `((tA + tB)/2, (tB - tA)/2)`.
pub fn split(ta: f64, tb: f64) -> (f64, f64) {
    ((ta + tb) / 2.0, (tb - ta) / 2.0)
}

/// Signed angle with the common line oriented from `start` (a left coordinate).
pub fn plane_angle_from(p: &SpacelikePlane, q: &SpacelikePlane, start: f64) -> Result<f64> {
    let m = p.a.inverse() * q.a;
    if m.is_identity(1e-12) {
        return Ok(0.0);
    }
    if m.classify() != Class::Hyperbolic {
        return Err(Error::DisjointPlanes);
    }
    Ok(signed_translation(&m, start)? / 2.0)
}

/// Signed dihedral angle. The common line is oriented from the common point
/// with the smaller left coordinate, reversed when `orientation < 0`.
pub fn plane_angle(p: &SpacelikePlane, q: &SpacelikePlane, orientation: i32) -> Result<f64> {
    match common_boundary(p, q) {
        CommonBoundary::Identical => Ok(0.0),
        CommonBoundary::Points(pts) if pts.len() == 2 => {
            let (lo, hi) = if pts[0].x <= pts[1].x { (pts[0], pts[1]) } else { (pts[1], pts[0]) };
            let start = if orientation >= 0 { lo.x } else { hi.x };
            plane_angle_from(p, q, start)
        }
        _ => Err(Error::DisjointPlanes),
    }
}

/// The ambient model: 2x2 matrices `(a, b, c, d)` with `<g, h> = -tr(adj(g) h) / 2`.
pub mod quadric {
    use super::*;

    pub type Vec4 = [f64; 4];

    pub fn form(g: &Vec4, h: &Vec4) -> f64 {
        -0.5 * (g[0] * h[3] + g[3] * h[0] - g[1] * h[2] - g[2] * h[1])
    }

    /// Rank-one matrix `x (J y)^T` with image `x` and kernel `y`.
    pub fn boundary_matrix(p: &TorusPoint) -> Vec4 {
        let u = CirclePoint::new(p.x).to_vec();
        let v = CirclePoint::new(p.y).to_vec();
        let jv = [-v[1], v[0]];
        [u[0] * jv[0], u[0] * jv[1], u[1] * jv[0], u[1] * jv[1]]
    }

    /// Vector `w` with `e . w = det[e; a; b; c]` for every `e`.
    fn cross3(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
        let det3 = |r: [[f64; 3]; 3]| {
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        };
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let m = [a, b, c].map(|v| [v[cols[0]], v[cols[1]], v[cols[2]]]);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            *o = sign * det3(m);
        }
        out
    }

    /// Unit timelike normal of the plane through three boundary points.
    pub fn normal_through(pts: [TorusPoint; 3]) -> Result<Vec4> {
        let [a, b, c] = pts.map(|p| boundary_matrix(&p));
        let w = cross3(&a, &b, &c);
        // form(n, h) = w . h  <=>  n = Q^-1 w with Q the Gram matrix of the form
        let n = [-2.0 * w[3], 2.0 * w[2], 2.0 * w[1], -2.0 * w[0]];
        let q = form(&n, &n);
        if !(q < 0.0) {
            return Err(Error::DegenerateTriple);
        }
        let s = (-q).sqrt();
        Ok(n.map(|x| x / s))
    }

    /// Unit normal of `P_A` from three points of its boundary graph, chosen
    /// spread out in both coordinates so the cross product is well conditioned.
    pub fn normal(p: &SpacelikePlane) -> Result<Vec4> {
        let cand: Vec<TorusPoint> = (0..24).map(|k| p.boundary_point((k as f64 + 0.5) / 24.0)).collect();
        let gap = |a: &TorusPoint, b: &TorusPoint| circle_dist(a.x, b.x).min(circle_dist(a.y, b.y));
        let mut best = ([0, 8, 16], -1.0);
        for i in 0..24 {
            for j in i + 1..24 {
                for k in j + 1..24 {
                    let g = gap(&cand[i], &cand[j]).min(gap(&cand[j], &cand[k])).min(gap(&cand[i], &cand[k]));
                    if g > best.1 {
                        best = ([i, j, k], g);
                    }
                }
            }
        }
        normal_through(best.0.map(|i| cand[i]))
    }

    /// Dual point of `P_A`, the matrix `A^-1`.
    pub fn dual_point(p: &SpacelikePlane) -> Vec4 {
        p.a.inverse().entries()
    }
}

/// Unsigned angle between intersecting planes from the quadric model.
pub fn ambient_angle(p: &SpacelikePlane, q: &SpacelikePlane) -> Result<f64> {
    if let CommonBoundary::Points(pts) = common_boundary(p, q) {
        if pts.len() < 2 {
            return Err(Error::DisjointPlanes);
        }
    }
    let n1 = quadric::normal(p)?;
    let n2 = quadric::normal(q)?;
    Ok(quadric::form(&n1, &n2).abs().max(1.0).acosh())
}
