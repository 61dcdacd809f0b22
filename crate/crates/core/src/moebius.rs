//! PSL(2,R) arithmetic and the angle chart on the boundary circle.
//!
//! A boundary point is a projective vector `(u, v)` standing for `x = u/v` in
//! the upper half-plane model. The chart is `theta = -atan2(v, u)/pi mod 1`, so
//! `theta(inf) = 0`, `theta(x) = 1/2 + atan(x)/pi` and theta increases with x.
//! Rotations in SO(2) act on theta by translation.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const TOL_PARAB: f64 = 1e-9;
pub const TOL_EQ: f64 = 1e-10;

/// Point of the boundary circle, `theta` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(1.0);
        // also maps -0.0 to 0.0
        if t >= 1.0 || t == 0.0 {
            t = 0.0;
        }
        CirclePoint { theta: t }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn infinity() -> Self {
        CirclePoint { theta: 0.0 }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_vec([x, 1.0])
    }

    pub fn from_vec(v: [f64; 2]) -> Self {
        Self::new(-v[1].atan2(v[0]) / PI)
    }

    /// Unit representative `(cos pi theta, -sin pi theta)`.
    pub fn to_vec(self) -> [f64; 2] {
        let a = PI * self.theta;
        [a.cos(), -a.sin()]
    }

    /// Half-plane coordinate; `None` at infinity.
    pub fn to_real(self) -> Option<f64> {
        let [u, v] = self.to_vec();
        if v.abs() < 1e-300 {
            None
        } else {
            Some(u / v)
        }
    }

    /// Distance along the circle, in `[0, 1/2]`.
    pub fn dist(self, other: CirclePoint) -> f64 {
        circle_dist(self.theta, other.theta)
    }
}

pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// `true` when `x` lies strictly inside the positive arc from `a` to `b`.
pub fn in_open_arc(a: f64, b: f64, x: f64) -> bool {
    let len = (b - a).rem_euclid(1.0);
    let off = (x - a).rem_euclid(1.0);
    off > 0.0 && off < len
}

/// `+1` if `(a, b, c)` is positively (counterclockwise in theta) ordered,
/// `-1` if negatively, `0` if two coincide.
pub fn cyclic_sign(a: f64, b: f64, c: f64) -> i32 {
    let ab = (b - a).rem_euclid(1.0);
    let ac = (c - a).rem_euclid(1.0);
    if ab == 0.0 || ac == 0.0 || ab == ac {
        0
    } else if ab < ac {
        1
    } else {
        -1
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// Element of PSL(2,R), stored with det 1 and first nonzero entry positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [f64; 4],
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { m: [1.0, 0.0, 0.0, 1.0] };

    /// Builds `[[a, b], [c, d]]` scaled to determinant one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidMatrix);
        }
        if (det - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Self::normalized([a, b, c, d]));
        }
        let s = det.sqrt();
        Ok(Self::normalized([a / s, b / s, c / s, d / s]))
    }

    pub fn from_entries(e: [f64; 4]) -> Result<Self> {
        Self::new(e[0], e[1], e[2], e[3])
    }

    /// Sign normalization only. Rescaling by a computed determinant would
    /// inject cancellation error of order `eps * |m|^2` on long products.
    fn normalized(mut m: [f64; 4]) -> Self {
        if let Some(&first) = m.iter().find(|x| **x != 0.0) {
            if first < 0.0 {
                for x in &mut m {
                    *x = -*x;
                }
            }
        }
        for x in &mut m {
            if *x == 0.0 {
                *x = 0.0;
            }
        }
        Isometry { m }
    }

    pub fn diag(lambda: f64) -> Self {
        Self::normalized([lambda, 0.0, 0.0, 1.0 / lambda])
    }

    /// Hyperbolic element with axis `0 -> inf` and translation length `len`.
    pub fn dilation(len: f64) -> Self {
        Self::diag((len / 2.0).exp())
    }

    pub fn translation(t: f64) -> Self {
        Self::normalized([1.0, t, 0.0, 1.0])
    }

    /// Elliptic element fixing `i`; shifts theta by `-angle/pi`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::normalized([c, -s, s, c])
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self::normalized([d, -b, -c, a])
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::IDENTITY, tol)
    }

    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        self.m.iter().zip(other.m.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Max entrywise distance between normalized representatives.
    pub fn distance(&self, other: &Isometry) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// [`distance`](Self::distance) scaled by the larger entry size, for long products.
    pub fn rel_distance(&self, other: &Isometry) -> f64 {
        let scale = self
            .m
            .iter()
            .chain(other.m.iter())
            .fold(1.0f64, |a, x| a.max(x.abs()));
        self.distance(other) / scale
    }

    pub fn classify(&self) -> Class {
        let t = self.trace().abs();
        if t > 2.0 + TOL_PARAB {
            Class::Hyperbolic
        } else if t < 2.0 - TOL_PARAB {
            Class::Elliptic
        } else {
            Class::Parabolic
        }
    }

    pub fn translation_length(&self) -> Result<f64> {
        if self.classify() != Class::Hyperbolic {
            return Err(Error::NotHyperbolic);
        }
        Ok(2.0 * (self.trace().abs() / 2.0).acosh())
    }

    /// Projective fixed vectors `(attractive, repulsive)`.
    pub fn fixed_vectors(&self) -> Result<([f64; 2], [f64; 2])> {
        let [mut a, mut b, mut c, mut d] = self.m;
        if a + d < 0.0 {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        match self.classify() {
            Class::Elliptic => Err(Error::NoRealFixedPoints),
            Class::Parabolic => {
                if self.is_identity(1e-14) {
                    return Err(Error::Identity);
                }
                let v = eigvec(a, b, c, d, 1.0);
                Ok((v, v))
            }
            Class::Hyperbolic => {
                let t = a + d;
                let disc = (t * t - 4.0).sqrt();
                // larger root computed stably, the smaller one as its inverse
                let big = (t + disc) / 2.0;
                let small = 1.0 / big;
                Ok((eigvec(a, b, c, d, big), eigvec(a, b, c, d, small)))
            }
        }
    }

    pub fn fixed_points(&self) -> Result<(CirclePoint, CirclePoint)> {
        let (p, q) = self.fixed_vectors()?;
        Ok((CirclePoint::from_vec(p), CirclePoint::from_vec(q)))
    }

    pub fn apply_vec(&self, v: [f64; 2]) -> [f64; 2] {
        let [a, b, c, d] = self.m;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    pub fn apply_boundary(&self, x: CirclePoint) -> CirclePoint {
        CirclePoint::from_vec(self.apply_vec(x.to_vec()))
    }

    pub fn apply_theta(&self, theta: f64) -> f64 {
        self.apply_boundary(CirclePoint::new(theta)).theta()
    }

    /// Action on the upper half-plane.
    pub fn apply_h(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d] = self.m;
        (z * a + b) / (z * c + d)
    }

    /// Conjugate `self` by `g`: `g self g^-1`.
    pub fn conj(&self, g: &Isometry) -> Isometry {
        *g * *self * g.inverse()
    }

    pub fn lift(&self, anchor: f64, shift: i64) -> CircleLift {
        CircleLift::new(*self, anchor, shift)
    }
}

/// Eigenvector of `[[a,b],[c,d]]` for eigenvalue `l`, from the better-conditioned row.
fn eigvec(a: f64, b: f64, c: f64, d: f64, l: f64) -> [f64; 2] {
    let r1 = [b, l - a];
    let r2 = [l - d, c];
    let n1 = r1[0].hypot(r1[1]);
    let n2 = r2[0].hypot(r2[1]);
    if n1 >= n2 {
        [r1[0] / n1, r1[1] / n1]
    } else {
        [r2[0] / n2, r2[1] / n2]
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, o: Isometry) -> Isometry {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = o.m;
        Isometry::normalized([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

impl Default for Isometry {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Matrix `[p | q]` scaled so that `(1,1)` maps to `r`.
fn frame(p: [f64; 2], r: [f64; 2], q: [f64; 2]) -> Option<[f64; 4]> {
    // r = alpha p + beta q
    let det = p[0] * q[1] - p[1] * q[0];
    if det.abs() < 1e-300 {
        return None;
    }
    let alpha = (r[0] * q[1] - r[1] * q[0]) / det;
    let beta = (p[0] * r[1] - p[1] * r[0]) / det;
    Some([alpha * p[0], beta * q[0], alpha * p[1], beta * q[1]])
}

/// The unique isometry sending `x_i` to `y_i`.
pub fn mobius_through(x: [CirclePoint; 3], y: [CirclePoint; 3]) -> Result<Isometry> {
    for t in [x, y] {
        if t[0].dist(t[1]) < 1e-12 || t[1].dist(t[2]) < 1e-12 || t[0].dist(t[2]) < 1e-12 {
            return Err(Error::DegenerateTriple);
        }
    }
    let fx = frame(x[0].to_vec(), x[1].to_vec(), x[2].to_vec()).ok_or(Error::DegenerateTriple)?;
    let fy = frame(y[0].to_vec(), y[1].to_vec(), y[2].to_vec()).ok_or(Error::DegenerateTriple)?;
    let [a, b, c, d] = fx;
    let dx = a * d - b * c;
    let inv = [d / dx, -b / dx, -c / dx, a / dx];
    let [e, f, g, h] = fy;
    let m = [
        e * inv[0] + f * inv[2],
        e * inv[1] + f * inv[3],
        g * inv[0] + h * inv[2],
        g * inv[1] + h * inv[3],
    ];
    let det = m[0] * m[3] - m[1] * m[2];
    if det <= 0.0 {
        return Err(Error::OrientationMismatch);
    }
    Isometry::from_entries(m)
}

/// Increasing lift of a circle isometry to the real line, `L(x+1) = L(x)+1`.
#[derive(Debug, Clone, Copy)]
pub struct CircleLift {
    iso: Isometry,
    anchor: f64,
    base: f64,
    image_anchor: f64,
}

impl CircleLift {
    pub fn new(iso: Isometry, anchor: f64, shift: i64) -> Self {
        let image_anchor = iso.apply_theta(anchor);
        let d0 = (image_anchor - anchor + 0.5).rem_euclid(1.0) - 0.5;
        CircleLift {
            iso,
            anchor,
            base: anchor + d0 + shift as f64,
            image_anchor,
        }
    }

    pub fn isometry(&self) -> Isometry {
        self.iso
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = (t - self.anchor).floor();
        let r = t - n;
        let inc = (self.iso.apply_theta(r) - self.image_anchor).rem_euclid(1.0);
        let inc = if inc >= 1.0 { 0.0 } else { inc };
        n + self.base + inc
    }

    /// The same lift shifted by an integer.
    pub fn shifted(&self, k: i64) -> Self {
        CircleLift {
            base: self.base + k as f64,
            ..*self
        }
    }
}

impl Serialize for Isometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn chart_basics() {
        assert_eq!(CirclePoint::infinity().theta(), 0.0);
        assert!((CirclePoint::from_real(0.0).theta() - 0.5).abs() < 1e-15);
        assert!((CirclePoint::from_real(1.0).theta() - 0.75).abs() < 1e-15);
        assert!(CirclePoint::from_real(-3.0).theta() < CirclePoint::from_real(2.0).theta());
        assert!((CirclePoint::from_real(2.5).to_real().unwrap() - 2.5).abs() < 1e-12);
        assert_eq!(CirclePoint::new(1.0).theta(), 0.0);
        assert_eq!(CirclePoint::new(-1e-300).theta(), 0.0);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(Isometry::diag(E).classify(), Class::Hyperbolic);
        assert_eq!(Isometry::translation(1.0).classify(), Class::Parabolic);
        let r = Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(r.classify(), Class::Elliptic);
        assert_eq!(Isometry::IDENTITY.classify(), Class::Parabolic);
    }

    #[test]
    fn translation_length_examples() {
        assert!((Isometry::diag(E).translation_length().unwrap() - 2.0).abs() < 1e-12);
        assert!((Isometry::diag(E * E).translation_length().unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(
            Isometry::translation(1.0).translation_length(),
            Err(Error::NotHyperbolic)
        );
    }

    #[test]
    fn fixed_point_examples() {
        let (att, rep) = Isometry::diag(E).fixed_points().unwrap();
        assert!(att.dist(CirclePoint::infinity()) < 1e-15);
        assert!(rep.dist(CirclePoint::from_real(0.0)) < 1e-15);
        let (p, q) = Isometry::translation(1.0).fixed_points().unwrap();
        assert!(p.dist(CirclePoint::infinity()) < 1e-15 && p == q);
        let r = Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(r.fixed_points(), Err(Error::NoRealFixedPoints));
        // negative trace representative
        let m = Isometry::new(-E, 0.0, 0.0, -1.0 / E).unwrap();
        assert!(m.fixed_points().unwrap().0.dist(CirclePoint::infinity()) < 1e-15);
    }

    #[test]
    fn sign_normalization() {
        let m = Isometry::new(-2.0, 1.0, -3.0, 1.0).unwrap();
        assert!(m.entries()[0] > 0.0);
        let n = Isometry::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(n.entries(), [0.0, 1.0, -1.0, 0.0]);
        assert_eq!(Isometry::new(1.0, 2.0, 2.0, 1.0), Err(Error::InvalidMatrix));
    }

    #[test]
    fn apply_examples() {
        let x = CirclePoint::new(0.3);
        assert_eq!(Isometry::IDENTITY.apply_boundary(x).theta(), 0.3);
        let d = Isometry::diag(E);
        let y = d.apply_boundary(CirclePoint::from_real(1.0));
        assert!(y.dist(CirclePoint::from_real(E * E)) < 1e-15);
        assert!(d.inverse().apply_boundary(d.apply_boundary(x)).dist(x) < 1e-12);
    }

    #[test]
    fn mobius_through_examples() {
        let t = [
            CirclePoint::from_real(0.0),
            CirclePoint::from_real(1.0),
            CirclePoint::infinity(),
        ];
        let id = mobius_through(t, t).unwrap();
        assert!(id.is_identity(1e-12));
        let s = [
            CirclePoint::from_real(1.0),
            CirclePoint::from_real(2.0),
            CirclePoint::infinity(),
        ];
        let m = mobius_through(t, s).unwrap();
        assert!(m.approx_eq(&Isometry::translation(1.0), 1e-12));
        assert_eq!(
            mobius_through([t[0], t[0], t[2]], s),
            Err(Error::DegenerateTriple)
        );
        assert_eq!(
            mobius_through(t, [s[1], s[0], s[2]]),
            Err(Error::OrientationMismatch)
        );
    }

    #[test]
    fn lift_identity_and_translation() {
        let l = Isometry::IDENTITY.lift(0.0, 0);
        for t in [-1.3, 0.0, 0.25, 0.999, 4.5] {
            assert!((l.eval(t) - t).abs() < 1e-12);
        }
        // z -> z + 1 fixes infinity, theta = 0, so the lift fixes the integers
        let l = Isometry::translation(1.0).lift(0.0, 0);
        for k in -3..4 {
            assert!((l.eval(k as f64) - k as f64).abs() < 1e-12);
        }
        assert!((l.shifted(2).eval(0.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_translates_theta() {
        let r = Isometry::rotation(0.7);
        let a = r.apply_theta(0.1) - 0.1;
        let b = r.apply_theta(0.6) - 0.6;
        assert!(circle_dist(a, b) < 1e-12);
    }
}
