//! Support planes of the convex hull of an achronal meridian, read off its
//! boundary points only.
//!
//! Planes through a boundary point `v` become lines in the affine chart that
//! sends both coordinates of `v` to infinity: `P_A` is the graph of `A`, and
//! `A` fixing infinity is affine. The support planes through `v` are then the
//! edges of a planar hull of the other points, and the angle between two
//! planes through `v` is half the log of the ratio of their slopes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::adsgeo::{common_boundary, plane_angle, CommonBoundary, SpacelikePlane, TorusPoint};
use crate::error::{Error, Result};
use crate::holonomy::Representation;
use crate::meridian::{rectangles, ArcChoice, LimitSample, MonotoneLift};
use crate::moebius::{circle_dist, CirclePoint, Class, Isometry};
use crate::pants::{right_quake, EnhancedPants, PantsLamination};

/// Points within this circle distance of a plane's graph are contacts.
pub const CONTACT_TOL: f64 = 1e-12;
/// Default cap on the number of points for the full envelope.
pub const MAX_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HullSide {
    /// The plane's lift lies above the meridian's.
    Upper,
    Lower,
}

impl HullSide {
    fn sign(self) -> f64 {
        match self {
            HullSide::Upper => 1.0,
            HullSide::Lower => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportPlane {
    pub plane: SpacelikePlane,
    /// Sorted indices of the points on the plane's boundary.
    pub contacts: Vec<usize>,
    pub side: HullSide,
}

/// Rotation sending the projective vector of `theta` to `(1, 0)`.
fn to_infinity(theta: f64) -> Isometry {
    let [c, s] = CirclePoint::new(theta).to_vec();
    Isometry::from_entries([c, s, -s, c]).expect("rotation")
}

/// Affine chart centred at a torus point.
#[derive(Debug, Clone, Copy)]
pub struct Chart {
    pub cx: Isometry,
    pub cy: Isometry,
}

impl Chart {
    pub fn at(v: &TorusPoint) -> Chart {
        Chart { cx: to_infinity(v.x), cy: to_infinity(v.y) }
    }

    fn coord(m: &Isometry, theta: f64) -> Option<f64> {
        let [u, w] = m.apply_vec(CirclePoint::new(theta).to_vec());
        if w.abs() < 1e-13 * u.abs() {
            None
        } else {
            Some(u / w)
        }
    }

    /// Chart coordinates; `None` when a coordinate is at infinity.
    pub fn point(&self, p: &TorusPoint) -> Option<(f64, f64)> {
        Some((Self::coord(&self.cx, p.x)?, Self::coord(&self.cy, p.y)?))
    }

    /// Plane whose graph is the chart line `y = a x + b`.
    pub fn plane(&self, a: f64, b: f64) -> Result<SpacelikePlane> {
        let line = Isometry::new(a, b, 0.0, 1.0)?;
        Ok(SpacelikePlane::new(self.cy.inverse() * line * self.cx))
    }

    /// The affine map induced on the `x` axis by an isometry fixing the centre's `x`.
    pub fn affine_x(&self, g: &Isometry) -> (f64, f64) {
        let [p, q, _, s] = g.conj(&self.cx).entries();
        (p / s, q / s)
    }
}

/// Vertices of the planar hull on `side`, as indices into `pts` sorted by `x`.
fn planar_hull(pts: &[(f64, f64, usize)], side: HullSide) -> Vec<usize> {
    let sg = side.sign();
    let mut h: Vec<usize> = Vec::new();
    for (k, p) in pts.iter().enumerate() {
        while h.len() >= 2 {
            let (a, b) = (pts[h[h.len() - 2]], pts[h[h.len() - 1]]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if sg * cross >= 0.0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(k);
    }
    h
}

fn chart_points(pts: &[TorusPoint], chart: &Chart) -> Vec<(f64, f64, usize)> {
    let mut out: Vec<(f64, f64, usize)> = pts
        .iter()
        .enumerate()
        .filter_map(|(i, p)| chart.point(p).map(|(x, y)| (x, y, i)))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

/// Points within [`CONTACT_TOL`] of the boundary graph of `plane`.
pub fn contacts_of(plane: &SpacelikePlane, pts: &[TorusPoint]) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| circle_dist(plane.a.apply_theta(pts[i].x), pts[i].y) < CONTACT_TOL)
        .collect()
}

/// Faces of the envelope on `side`: support planes with at least three contacts,
/// found from the planar hull in the chart at every point.
pub fn support_planes(pts: &[TorusPoint], side: HullSide) -> Result<Vec<SupportPlane>> {
    if pts.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(pts.len()));
    }
    support_planes_unbounded(pts, side)
}

/// [`support_planes`] without the size guard.
pub fn support_planes_unbounded(pts: &[TorusPoint], side: HullSide) -> Result<Vec<SupportPlane>> {
    if crate::meridian::validate_achronal(pts).is_err() {
        return Err(Error::NotAchronal);
    }
    let mut faces: BTreeMap<Vec<usize>, SpacelikePlane> = BTreeMap::new();
    for v in pts {
        let chart = Chart::at(v);
        let cp = chart_points(pts, &chart);
        let hull = planar_hull(&cp, side);
        for e in hull.windows(2) {
            let (p, q) = (cp[e[0]], cp[e[1]]);
            let a = (q.1 - p.1) / (q.0 - p.0);
            if !(a > 0.0 && a.is_finite()) {
                continue;
            }
            let plane = chart.plane(a, p.1 - a * p.0)?;
            let contacts = contacts_of(&plane, pts);
            if contacts.len() >= 3 {
                faces.entry(contacts).or_insert(plane);
            }
        }
    }
    Ok(maximal(faces, side))
}

/// Drops faces whose contacts are a strict subset of another face's: clustered
/// points make small nearly coplanar triples pass the contact test.
pub fn maximal(faces: BTreeMap<Vec<usize>, SpacelikePlane>, side: HullSide) -> Vec<SupportPlane> {
    let mut by_point: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let list: Vec<(Vec<usize>, SpacelikePlane)> = faces.into_iter().collect();
    for (k, (c, _)) in list.iter().enumerate() {
        for &i in c {
            by_point.entry(i).or_default().push(k);
        }
    }
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|i| b.binary_search(i).is_ok());
    let keep: Vec<bool> = list
        .iter()
        .map(|(c, _)| !by_point[&c[0]].iter().any(|&k| subset(c, &list[k].0)))
        .collect();
    list.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((contacts, plane), _)| SupportPlane { plane, contacts, side })
        .collect()
}

/// Faces of the envelope of the vertices of a lift, returned with those vertices.
pub fn support_planes_of(c: &MonotoneLift, side: HullSide) -> Result<(Vec<TorusPoint>, Vec<SupportPlane>)> {
    let mut pts: Vec<TorusPoint> = Vec::new();
    for v in c.vertices() {
        if pts.last().map_or(true, |q: &TorusPoint| q.dist(&v) > 1e-12) {
            pts.push(v);
        }
    }
    if pts.len() > 1 && pts[0].dist(&pts[pts.len() - 1]) <= 1e-12 {
        pts.pop();
    }
    let faces = support_planes(&pts, side)?;
    Ok((pts, faces))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BendingEdge {
    pub faces: (usize, usize),
    pub axis: [TorusPoint; 2],
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BentSurface {
    pub points: Vec<TorusPoint>,
    pub faces: Vec<SupportPlane>,
    pub edges: Vec<BendingEdge>,
}

/// Consecutive contacts of a face in cyclic `x` order.
fn face_edges(f: &SupportPlane, pts: &[TorusPoint]) -> Vec<(usize, usize)> {
    let mut c = f.contacts.clone();
    c.sort_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x));
    let k = c.len();
    (0..k)
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Eigenvalue of `b` on the projective vector of `x`, if `x` is fixed within `tol`.
fn multiplier(b: &Isometry, x: f64, tol: f64) -> Option<f64> {
    let v = CirclePoint::new(x).to_vec();
    let w = b.apply_vec(v);
    let lambda = w[0] * v[0] + w[1] * v[1];
    let res = (w[0] - lambda * v[0]).hypot(w[1] - lambda * v[1]);
    (res <= tol * lambda.abs().max(1.0)).then_some(lambda)
}

/// Axis and weight of a bend too small for the trace test, read off the shared
/// edge: `A^-1 B` must fix both left endpoints and the weight is `|ln |lambda||`.
fn small_bend(p: &SpacelikePlane, q: &SpacelikePlane, ends: [TorusPoint; 2]) -> Option<([TorusPoint; 2], f64)> {
    let b = p.a.inverse() * q.a;
    let la = multiplier(&b, ends[0].x, 1e-9)?;
    let lb = multiplier(&b, ends[1].x, 1e-9)?;
    let w = la.abs().ln().abs();
    ((w - lb.abs().ln().abs()).abs() <= 1e-9 && w > 0.0).then_some((ends, w))
}

/// Adjacency of faces through shared edges, weighted by the bending angle.
pub fn bending_data(pts: &[TorusPoint], faces: Vec<SupportPlane>) -> Result<BentSurface> {
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in face_edges(f, pts) {
            by_edge.entry(e).or_default().push(fi);
        }
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (&(u, v), fs) in &by_edge {
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let (a, b) = (fs[i], fs[j]);
                if !seen.insert((a, b)) {
                    continue;
                }
                let (p, q) = (&faces[a].plane, &faces[b].plane);
                let (axis, weight) = match (common_boundary(p, q), plane_angle(p, q, 1)) {
                    (CommonBoundary::Points(v), Ok(w)) if v.len() == 2 => ([v[0], v[1]], w.abs()),
                    _ => small_bend(p, q, [pts[u], pts[v]]).ok_or(Error::NonAdjacentPair)?,
                };
                edges.push(BendingEdge { faces: (a, b), axis, weight });
            }
        }
    }
    Ok(BentSurface { points: pts.to_vec(), faces, edges })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub faces: (usize, usize),
    /// `A(F)^-1 A(F')`.
    pub b: Isometry,
    pub translation: f64,
    /// Whether `b` translates to the right as seen from the first face.
    pub right: bool,
}

fn in_closed_arc(a: f64, b: f64, x: f64, tol: f64) -> bool {
    let len = (b - a).rem_euclid(1.0);
    let off = (x - a).rem_euclid(1.0);
    off <= len + tol || off >= 1.0 - tol
}

/// Comparison isometries between adjacent faces. Each must be hyperbolic with
/// an axis weakly separating the left coordinates of the two contact sets.
pub fn recover_earthquake(s: &BentSurface) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for e in &s.edges {
        let (f, g) = (&s.faces[e.faces.0], &s.faces[e.faces.1]);
        let b = f.plane.a.inverse() * g.plane.a;
        let (att, rep, translation) = if b.classify() == Class::Hyperbolic {
            let (att, rep) = b.fixed_points()?;
            (att.theta(), rep.theta(), b.translation_length()?)
        } else {
            // a tiny bend: the edge gives the axis, the multiplier the direction
            let l = multiplier(&b, e.axis[0].x, 1e-9).ok_or(Error::NotHyperbolic)?;
            if l.abs() == 1.0 {
                return Err(Error::NotHyperbolic);
            }
            let (a0, a1) = (e.axis[0].x, e.axis[1].x);
            let (att, rep) = if l.abs() > 1.0 { (a0, a1) } else { (a1, a0) };
            (att, rep, 2.0 * l.abs().ln().abs())
        };
        // shared contacts sit on the axis; only the others are tested
        let xs = |sp: &SupportPlane, other: &SupportPlane| {
            sp.contacts
                .iter()
                .filter(|i| other.contacts.binary_search(i).is_err())
                .map(|&i| s.points[i].x)
                .collect::<Vec<_>>()
        };
        let tol = 1e-9;
        let all_in = |v: &[f64], a: f64, c: f64| v.iter().all(|&x| in_closed_arc(a, c, x, tol));
        let (fx, gx) = (xs(f, g), xs(g, f));
        let right = all_in(&fx, rep, att) && all_in(&gx, att, rep);
        let left = all_in(&fx, att, rep) && all_in(&gx, rep, att);
        if !right && !left {
            return Err(Error::SeparationViolation(e.faces.0, e.faces.1));
        }
        out.push(Comparison { faces: e.faces, b, translation, right });
    }
    Ok(out)
}

/// Support planes through one fixed point of the torus, in chart order.
#[derive(Debug, Clone)]
pub struct Fan {
    pub chart: Chart,
    /// Chart `x` of the contacts, increasing.
    pub xs: Vec<f64>,
    /// Slope of the plane between consecutive contacts.
    pub slopes: Vec<f64>,
    pub contacts: Vec<usize>,
}

impl Fan {
    /// Index of the plane over chart abscissa `x`.
    fn edge_at(&self, x: f64) -> Option<usize> {
        let k = self.xs.partition_point(|&w| w <= x);
        if k == 0 || k >= self.xs.len() {
            None
        } else {
            Some(k - 1)
        }
    }

    /// Bending angles of the lines from the corner to each interior contact.
    pub fn angles(&self) -> Vec<f64> {
        self.slopes.windows(2).map(|s| 0.5 * (s[0] / s[1]).ln().abs()).collect()
    }
}

/// The fan of support planes on `side` through `corner` (which need not be a sample point).
pub fn vertex_fan(pts: &[TorusPoint], corner: &TorusPoint, side: HullSide) -> Fan {
    let chart = Chart::at(corner);
    let cp = chart_points(pts, &chart);
    let hull = planar_hull(&cp, side);
    let mut xs = Vec::new();
    let mut slopes = Vec::new();
    let mut contacts = Vec::new();
    for (k, &h) in hull.iter().enumerate() {
        if k > 0 {
            let (p, q) = (cp[hull[k - 1]], cp[h]);
            slopes.push((q.1 - p.1) / (q.0 - p.0));
        }
        xs.push(cp[h].0);
        contacts.push(cp[h].2);
    }
    Fan { chart, xs, slopes, contacts }
}

/// Total bending of the fan across one period of `g` (an isometry pair fixing the corner),
/// counted on a transversal starting near chart abscissa `x_ref`.
pub fn fan_mass(fan: &Fan, gl: &Isometry, x_ref: f64) -> Option<f64> {
    let k = fan.edge_at(x_ref)?;
    let x0 = 0.5 * (fan.xs[k] + fan.xs[k + 1]);
    for g in [*gl, gl.inverse()] {
        let (p, q) = fan.chart.affine_x(&g);
        let x1 = p * x0 + q;
        if let Some(k1) = fan.edge_at(x1) {
            let (s0, s1) = (fan.slopes[k], fan.slopes[k1]);
            if s0 > 0.0 && s1 > 0.0 {
                return Some(0.5 * (s0 / s1).ln().abs());
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeripheralBending {
    pub class: usize,
    /// Bending per period at the fan through the limit point corner.
    pub limit_corner: f64,
    /// Bending per period at the fan through the off-diagonal corner.
    pub mixed_corner: f64,
}

impl PeripheralBending {
    pub fn mass(&self, choice: ArcChoice) -> f64 {
        match choice {
            ArcChoice::Lower => self.limit_corner,
            ArcChoice::Upper => self.mixed_corner,
        }
    }

    /// The arc whose corner carries bending closest to `target`; ties go to the lower arc.
    pub fn matching_arc(&self, target: f64) -> ArcChoice {
        if (self.limit_corner - target).abs() <= (self.mixed_corner - target).abs() {
            ArcChoice::Lower
        } else {
            ArcChoice::Upper
        }
    }
}

/// Per-boundary bending of the envelope on `side` at the corners of each rectangle.
///
/// On the upper side the off-diagonal fan sits at `p-+`; the limit point fan sits
/// at `p++` when the right boundary is longer and at `p--` otherwise.
pub fn peripheral_bending(
    hl: &Representation,
    hr: &Representation,
    sample: &LimitSample,
    side: HullSide,
) -> Result<Vec<PeripheralBending>> {
    let pts = sample.torus_points();
    let rects = rectangles(hl, hr, sample);
    let (bl, br) = (hl.boundary(), hr.boundary());
    let mut out = Vec::new();
    for r in &rects.rects {
        let c = r.class;
        let grows = br[c].translation_length()? >= bl[c].translation_length()?;
        let [pp, pm, mp, mm] = r.corners;
        let (limit, mixed) = match (side, grows) {
            (HullSide::Upper, true) => (pp, mp),
            (HullSide::Upper, false) => (mm, mp),
            (HullSide::Lower, true) => (mm, pm),
            (HullSide::Lower, false) => (pp, pm),
        };
        // transversals start at the attracting point of the next boundary word
        let refp = hl.boundary()[(c + 1) % 3].fixed_points()?.0.theta();
        let refq = hr.boundary()[(c + 1) % 3].fixed_points()?.0.theta();
        let q = TorusPoint::new(refp, refq);
        let mass_at = |corner: TorusPoint| -> Result<f64> {
            let fan = vertex_fan(&pts, &corner, side);
            let xr = fan.chart.point(&q).ok_or(Error::DegenerateInput)?.0;
            fan_mass(&fan, &bl[c], xr).ok_or(Error::DegenerateInput)
        };
        out.push(PeripheralBending { class: c, limit_corner: mass_at(limit)?, mixed_corner: mass_at(mixed)? });
    }
    Ok(out)
}

/// The arc crossed by the boundary meridian inside a rectangle, given the bending
/// mass `m` around the boundary and the boundary length `a` of the middle surface.
/// Lower when `m <= a`.
pub fn arc_side(m: f64, a: f64) -> ArcChoice {
    if m <= a {
        ArcChoice::Lower
    } else {
        ArcChoice::Upper
    }
}

/// Predicted arcs for the right earthquake along `lam` from `source`: the bending
/// mass is half the shear and the middle surface is the half quake.
pub fn classify_boundary_arcs(source: &EnhancedPants, lam: &PantsLamination) -> [ArcChoice; 3] {
    let mid = right_quake(source, lam, 0.5);
    [0, 1, 2].map(|i| arc_side(lam.m[i].abs() / 2.0, mid.a[i].abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_side_examples() {
        assert_eq!(arc_side(1.0, 2.5), ArcChoice::Lower);
        assert_eq!(arc_side(3.0, 0.5), ArcChoice::Upper);
        assert_eq!(arc_side(1.5, 1.5), ArcChoice::Lower);
    }

    #[test]
    fn coplanar_points_make_one_face() {
        let a = Isometry::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let p = SpacelikePlane::new(a);
        let pts: Vec<_> = [0.1, 0.3, 0.5, 0.7, 0.9].iter().map(|&x| p.boundary_point(x)).collect();
        for side in [HullSide::Upper, HullSide::Lower] {
            let f = support_planes(&pts, side).unwrap();
            assert_eq!(f.len(), 1);
            assert_eq!(f[0].contacts, vec![0, 1, 2, 3, 4]);
            assert!(f[0].plane.a.rel_distance(&a) < 1e-9);
        }
    }

    #[test]
    fn two_planes() {
        for w in [1.3, 2e-6] {
            two_planes_bent_by(w);
        }
    }

    fn two_planes_bent_by(w: f64) {
        let b = Isometry::dilation(w);
        let mut pts = vec![TorusPoint::new(0.0, 0.0), TorusPoint::new(0.5, 0.5)];
        for x in [0.3f64, 1.0, 2.5, 7.0] {
            let t = CirclePoint::from_real(x).theta();
            pts.push(TorusPoint::new(t, t));
            let t = CirclePoint::from_real(-x).theta();
            pts.push(TorusPoint::new(t, b.apply_theta(t)));
        }
        let faces = support_planes(&pts, HullSide::Upper).unwrap();
        assert_eq!(faces.len(), 2);
        let s = bending_data(&pts, faces).unwrap();
        assert_eq!(s.edges.len(), 1);
        assert!((s.edges[0].weight - w / 2.0).abs() < 1e-12);
        let c = recover_earthquake(&s).unwrap();
        assert!((c[0].translation - w).abs() < 1e-9 * w.max(1e-3));
        let shared: Vec<_> = s.faces[0].contacts.iter().filter(|i| s.faces[1].contacts.contains(i)).collect();
        assert_eq!(shared, vec![&0, &1]);
        // from the face containing x > 0 the other face moves to the right
        let from_pos = s.faces[c[0].faces.0].contacts.contains(&2);
        assert_eq!(c[0].right, from_pos);
    }
}
