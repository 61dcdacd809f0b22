//! Holonomies of the pair of pants, lifted laminations and the earthquake cocycle.
//!
//! `pi_1` of the pants is free on `X, Y`; the boundary words are `X`, `Y` and
//! `Z = (XY)^-1`. With [`pants_rep`] all three are positive: the convex core
//! lies to the left of each axis oriented from the repulsive to the attractive
//! fixed point.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{CirclePoint, Class, Isometry};
use crate::pants::{PantsLamination, TopoType};

pub const MAX_WORD_LEN: usize = 14;

/// Letters: 0 = X, 1 = X^-1, 2 = Y, 3 = Y^-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u8>);

const LETTERS: [char; 4] = ['X', 'x', 'Y', 'y'];

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses `XxYy` notation (lowercase = inverse); `e` or `""` is the identity.
    pub fn parse(s: &str) -> Option<Word> {
        if s == "e" {
            return Some(Word::empty());
        }
        let mut w = Word::empty();
        for c in s.chars() {
            let l = LETTERS.iter().position(|&x| x == c)? as u8;
            w.push(l);
        }
        Some(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one when inverse.
    pub fn push(&mut self, l: u8) {
        if self.0.last() == Some(&(l ^ 1)) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l ^ 1).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1] ^ 1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.0 {
            write!(f, "{}", LETTERS[l as usize])?;
        }
        Ok(())
    }
}

/// All reduced words of length `1..=n`, by length then letter order.
pub fn enumerate_words(n: usize) -> Result<Vec<Word>> {
    if n > MAX_WORD_LEN {
        return Err(Error::BudgetExceeded(n));
    }
    let mut out = Vec::new();
    let mut frontier = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for w in &frontier {
            for l in 0..4u8 {
                if w.0.last() == Some(&(l ^ 1)) {
                    continue;
                }
                let mut v = w.clone();
                v.0.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Representation {
    pub gens: [Isometry; 2],
}

impl Representation {
    /// Checks that the three boundary words are not elliptic.
    pub fn new(x: Isometry, y: Isometry) -> Result<Self> {
        let r = Representation { gens: [x, y] };
        for b in r.boundary() {
            if b.classify() == Class::Elliptic {
                return Err(Error::Config("elliptic boundary word".into()));
            }
        }
        Ok(r)
    }

    pub fn letter(&self, l: u8) -> Isometry {
        let g = self.gens[(l >> 1) as usize];
        if l & 1 == 1 {
            g.inverse()
        } else {
            g
        }
    }

    pub fn eval(&self, w: &Word) -> Isometry {
        w.0.iter()
            .fold(Isometry::IDENTITY, |acc, &l| acc * self.letter(l))
    }

    /// `[X, Y, (XY)^-1]`.
    pub fn boundary(&self) -> [Isometry; 3] {
        let [x, y] = self.gens;
        [x, y, (x * y).inverse()]
    }

    pub fn boundary_words() -> [Word; 3] {
        [Word(vec![0]), Word(vec![2]), Word(vec![3, 1])]
    }

    /// Words of length `0..=n` paired with their images, in [`enumerate_words`] order
    /// after the identity.
    pub fn words_with_images(&self, n: usize) -> Result<Vec<(Word, Isometry)>> {
        if n > MAX_WORD_LEN {
            return Err(Error::BudgetExceeded(n));
        }
        let mut out = vec![(Word::empty(), Isometry::IDENTITY)];
        let mut start = 0;
        for _ in 0..n {
            let end = out.len();
            for i in start..end {
                for l in 0..4u8 {
                    let (w, m) = &out[i];
                    if w.0.last() == Some(&(l ^ 1)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.0.push(l);
                    let mm = *m * self.letter(l);
                    out.push((v, mm));
                }
            }
            start = end;
        }
        Ok(out)
    }

    pub fn boundary_lengths(&self) -> [f64; 3] {
        self.boundary()
            .map(|b| b.translation_length().unwrap_or(0.0))
    }
}

/// Holonomy of the pants with boundary lengths `l` (0 gives a cusp).
pub fn pants_rep(l: [f64; 3]) -> Representation {
    let lam = (l[0] / 2.0).exp();
    let mu = (l[1] / 2.0).exp();
    let z = 2.0 * (l[2] / 2.0).cosh();
    let x = Isometry::new(lam, -1.0, 0.0, 1.0 / lam).expect("det 1");
    let y = Isometry::new(mu, 0.0, z + lam * mu + 1.0 / (lam * mu), 1.0 / mu).expect("det 1");
    Representation { gens: [x, y] }
}

/// A geodesic of the hyperbolic plane with a transverse weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedLeaf {
    pub ends: [[f64; 2]; 2],
    pub weight: f64,
    pub base: usize,
    pub word: Word,
    /// Image of `word`; the leaf is this element applied to its base leaf.
    pub g: Isometry,
    base_ends: [[f64; 2]; 2],
}

impl LiftedLeaf {
    pub fn base_ends(&self) -> [[f64; 2]; 2] {
        self.base_ends
    }

    pub fn endpoints(&self) -> (CirclePoint, CirclePoint) {
        (CirclePoint::from_vec(self.ends[0]), CirclePoint::from_vec(self.ends[1]))
    }
}

fn unit(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

/// Base leaves of a pants lamination, asymptotic to the boundary axes.
///
/// The end at boundary `i` is the attractive fixed point of its boundary word
/// for positive mass and the repulsive one for negative mass.
pub fn base_leaves(h: &Representation, lam: &PantsLamination) -> Result<Vec<LiftedLeaf>> {
    let b = h.boundary();
    let m = lam.m;
    let a = m.map(f64::abs);
    for i in 0..3 {
        if m[i] != 0.0 && b[i].classify() != Class::Hyperbolic {
            return Err(Error::CuspSpiralConflict(i));
        }
    }
    let end = |i: usize| -> Result<[f64; 2]> {
        let (att, rep) = b[i].fixed_vectors()?;
        Ok(if m[i] > 0.0 { att } else { rep })
    };
    let mut out = Vec::new();
    let add = |s: [f64; 2], t: [f64; 2], w: f64, out: &mut Vec<LiftedLeaf>| {
        if w > 0.0 {
            let base = out.len();
            out.push(LiftedLeaf {
                ends: [unit(s), unit(t)],
                weight: w,
                base,
                word: Word::empty(),
                g: Isometry::IDENTITY,
                base_ends: [unit(s), unit(t)],
            });
        }
    };
    match lam.topo_type() {
        TopoType::Empty => {}
        TopoType::L0 => {
            for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
                let w = (a[i] + a[j] - a[k]) / 2.0;
                if w > 0.0 {
                    add(end(i)?, end(j)?, w, &mut out);
                }
            }
        }
        t => {
            let i = t.dominant().expect("dominant boundary");
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let ei = end(i)?;
            if a[j] > 0.0 {
                add(ei, end(j)?, a[j], &mut out);
            }
            if a[k] > 0.0 {
                add(ei, end(k)?, a[k], &mut out);
            }
            // arc from boundary i around boundary j and back
            let u = (a[i] - a[j] - a[k]) / 2.0;
            add(ei, b[j].apply_vec(ei), u, &mut out);
        }
    }
    Ok(out)
}

/// Base leaves and their translates by every reduced word of length `<= n`.
pub fn lifted_leaves(h: &Representation, lam: &PantsLamination, n: usize) -> Result<Vec<LiftedLeaf>> {
    let base = base_leaves(h, lam)?;
    let words = h.words_with_images(n)?;
    let mut out = Vec::with_capacity(base.len() * words.len());
    for (w, g) in &words {
        for l in &base {
            out.push(LiftedLeaf {
                ends: [unit(g.apply_vec(l.ends[0])), unit(g.apply_vec(l.ends[1]))],
                weight: l.weight,
                base: l.base,
                word: w.clone(),
                g: *g,
                base_ends: l.base_ends,
            });
        }
    }
    Ok(dedup_leaves(out))
}

fn leaf_key(l: &LiftedLeaf) -> (f64, f64) {
    let (p, q) = l.endpoints();
    let (a, b) = (p.theta(), q.theta());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn dedup_leaves(leaves: Vec<LiftedLeaf>) -> Vec<LiftedLeaf> {
    let mut idx: Vec<(f64, f64, usize)> = leaves
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (a, b) = leaf_key(l);
            (a, b, i)
        })
        .collect();
    idx.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut keep = vec![true; leaves.len()];
    for i in 0..idx.len() {
        if !keep[idx[i].2] {
            continue;
        }
        let mut j = i + 1;
        while j < idx.len() && idx[j].0 - idx[i].0 <= 1e-10 {
            if (idx[j].1 - idx[i].1).abs() <= 1e-10 {
                keep[idx[j].2] = false;
            }
            j += 1;
        }
    }
    leaves
        .into_iter()
        .zip(keep)
        .filter_map(|(l, k)| k.then_some(l))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

fn mat_inv(m: [f64; 4]) -> [f64; 4] {
    let det = m[0] * m[3] - m[1] * m[2];
    [m[3] / det, -m[1] / det, -m[2] / det, m[0] / det]
}

fn mob(m: [f64; 4], z: Complex64) -> Complex64 {
    (z * m[0] + m[1]) / (z * m[2] + m[3])
}

/// Real part of `z` in coordinates sending `s -> 0`, `t -> inf`; positive
/// means `z` is on the right of the geodesic oriented from `s` to `t`.
pub fn side_of(s: [f64; 2], t: [f64; 2], z: Complex64) -> f64 {
    let mut g = [t[0], s[0], t[1], s[1]];
    if g[0] * g[3] - g[1] * g[2] < 0.0 {
        g[1] = -g[1];
        g[3] = -g[3];
    }
    mob(mat_inv(g), z).re
}

/// Hyperbolic translation along the geodesic `s -> t` by signed length `w`.
pub fn translation_along(s: [f64; 2], t: [f64; 2], w: f64) -> Isometry {
    let g = [t[0], s[0], t[1], s[1]];
    let gi = mat_inv(g);
    let (e, f) = ((w / 2.0).exp(), (-w / 2.0).exp());
    let gd = [g[0] * e, g[1] * f, g[2] * e, g[3] * f];
    let m = [
        gd[0] * gi[0] + gd[1] * gi[2],
        gd[0] * gi[1] + gd[1] * gi[3],
        gd[2] * gi[0] + gd[3] * gi[2],
        gd[2] * gi[1] + gd[3] * gi[3],
    ];
    Isometry::from_entries(m).expect("conjugate of a diagonal matrix")
}

/// Ideal endpoints `(behind p, beyond q)` of the geodesic through `p` and `q`.
fn geodesic_ends(p: Complex64, q: Complex64) -> ([f64; 2], [f64; 2]) {
    if (p.re - q.re).abs() < 1e-14 * (1.0 + p.re.abs()) {
        let foot = [p.re, 1.0];
        let inf = [1.0, 0.0];
        return if q.im > p.im { (foot, inf) } else { (inf, foot) };
    }
    let c = (q.norm_sqr() - p.norm_sqr()) / (2.0 * (q.re - p.re));
    let r = (p - c).norm();
    if q.re > p.re {
        ([c - r, 1.0], [c + r, 1.0])
    } else {
        ([c + r, 1.0], [c - r, 1.0])
    }
}

/// A point inside the convex core: on the common perpendicular of the
/// `X` and `Y` axes, off its midpoint.
pub fn core_point(h: &Representation) -> Complex64 {
    let [x, y] = h.gens;
    let fallback = Complex64::new(0.1, 0.5);
    let (Ok((xa, xr)), Ok((ya, yr))) = (x.fixed_vectors(), y.fixed_vectors()) else {
        return fallback;
    };
    // g sends 0 -> xr, inf -> xa
    let mut g = [xa[0], xr[0], xa[1], xr[1]];
    if g[0] * g[3] - g[1] * g[2] < 0.0 {
        g[1] = -g[1];
        g[3] = -g[3];
    }
    let gi = mat_inv(g);
    let pa = |v: [f64; 2]| {
        let w = [gi[0] * v[0] + gi[1] * v[1], gi[2] * v[0] + gi[3] * v[1]];
        w[0] / w[1]
    };
    let (a, b) = (pa(ya), pa(yr));
    if !(a * b > 0.0) || !a.is_finite() || !b.is_finite() {
        return fallback;
    }
    let r2 = a * b;
    let rr = r2.sqrt();
    let c = (a + b) / 2.0;
    // foot on the Y axis: |z| = rr and |z - c| = |a - b| / 2
    let fx = r2 / c;
    let fy = (r2 - fx * fx).max(0.0).sqrt();
    let phi2 = fy.atan2(fx);
    let phi = std::f64::consts::FRAC_PI_2 + 0.4 * (phi2 - std::f64::consts::FRAC_PI_2);
    let z = Complex64::from_polar(rr, phi);
    mob(g, z)
}

/// Leaves crossed by the segment `p -> q`, ordered from `p`.
pub fn crossed<'a>(leaves: &'a [LiftedLeaf], p: Complex64, q: Complex64) -> Result<Vec<(&'a LiftedLeaf, bool)>> {
    let (em, ep) = geodesic_ends(p, q);
    let t = mat_inv([ep[0], em[0], ep[1], em[1]]);
    let proj = |v: [f64; 2]| {
        let w = [t[0] * v[0] + t[1] * v[1], t[2] * v[0] + t[3] * v[1]];
        w[0] / w[1]
    };
    let mut hits = Vec::new();
    for l in leaves {
        let sp = side_of(l.ends[0], l.ends[1], p);
        let sq = side_of(l.ends[0], l.ends[1], q);
        if sp * sq < 0.0 {
            let key = 0.5 * (proj(l.ends[0]) * proj(l.ends[1])).abs().ln();
            hits.push((key, l, sp > 0.0));
        }
    }
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for w in hits.windows(2) {
        if (w[1].0 - w[0].0).abs() < 1e-12 {
            return Err(Error::AmbiguousCrossingOrder);
        }
    }
    Ok(hits.into_iter().map(|(_, l, r)| (l, r)).collect())
}

/// Product of the translations along the leaves separating `p` from `q`,
/// right-multiplied by `h(tail)`.
///
/// Each translation is `g T g^-1` with `T` along the base leaf. Consecutive
/// factors are telescoped through the short words `g_i^-1 g_(i+1)`, so no
/// intermediate product is much larger than the result.
fn comparison_times(
    h: &Representation,
    leaves: &[LiftedLeaf],
    p: Complex64,
    q: Complex64,
    side: Side,
    tail: &Word,
) -> Result<Isometry> {
    let mut acc = Isometry::IDENTITY;
    let mut prev = Word::empty();
    for (l, p_right) in crossed(leaves, p, q)? {
        let w = if p_right { l.weight } else { -l.weight };
        let t = translation_along(l.base_ends[0], l.base_ends[1], side.sign() * w);
        acc = acc * h.eval(&prev.inverse().concat(&l.word)) * t;
        prev = l.word.clone();
    }
    Ok(acc * h.eval(&prev.inverse().concat(tail)))
}

/// Product of the translations along the leaves separating `p` from `q`.
pub fn comparison(
    h: &Representation,
    leaves: &[LiftedLeaf],
    p: Complex64,
    q: Complex64,
    side: Side,
) -> Result<Isometry> {
    comparison_times(h, leaves, p, q, side, &Word::empty())
}

/// Earthquake cocycle with precomputed leaves and base point.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub rep: Representation,
    pub leaves: Vec<LiftedLeaf>,
    pub base_point: Complex64,
    pub side: Side,
    pub depth: usize,
}

impl Cocycle {
    pub fn new(h: &Representation, lam: &PantsLamination, n: usize, side: Side) -> Result<Self> {
        Ok(Cocycle {
            rep: *h,
            leaves: lifted_leaves(h, lam, n)?,
            base_point: core_point(h),
            side,
            depth: n,
        })
    }

    /// Number of leaves crossed between the base point and its image under `g`,
    /// and how many of them come from the deepest word level.
    pub fn crossings(&self, g: &Word) -> Result<(usize, usize)> {
        let q = self.rep.eval(g).apply_h(self.base_point);
        let c = crossed(&self.leaves, self.base_point, q)?;
        let deep = c.iter().filter(|(l, _)| l.word.len() == self.depth).count();
        Ok((c.len(), deep))
    }

    pub fn eval(&self, g: &Word) -> Result<Isometry> {
        let q = self.rep.eval(g).apply_h(self.base_point);
        comparison_times(&self.rep, &self.leaves, self.base_point, q, self.side, g)
    }

    /// The deformed representation `h'`.
    pub fn deformed(&self) -> Result<Representation> {
        let x = self.eval(&Word(vec![0]))?;
        let y = self.eval(&Word(vec![2]))?;
        Ok(Representation { gens: [x, y] })
    }
}

/// `h'(g) = Comp(F0, g F0) h(g)` for the earthquake along `lam`.
pub fn quake_cocycle(
    h: &Representation,
    lam: &PantsLamination,
    g: &Word,
    n: usize,
    side: Side,
) -> Result<Isometry> {
    Cocycle::new(h, lam, n, side)?.eval(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(enumerate_words(1).unwrap().len(), 4);
        assert_eq!(enumerate_words(2).unwrap().len(), 16);
        assert_eq!(enumerate_words(3).unwrap().len(), 52);
        assert_eq!(enumerate_words(0).unwrap().len(), 0);
        assert_eq!(enumerate_words(15), Err(Error::BudgetExceeded(15)));
        assert!(enumerate_words(4).unwrap().iter().all(Word::is_reduced));
    }

    #[test]
    fn word_parse_roundtrip() {
        let w = Word::parse("XyYx").unwrap();
        assert!(w.is_empty());
        let w = Word::parse("XYx").unwrap();
        assert_eq!(w.to_string(), "XYx");
        assert_eq!(w.inverse().to_string(), "Xyx");
        assert_eq!(Word::parse("e"), Some(Word::empty()));
        assert_eq!(Word::parse("Xq"), None);
    }

    #[test]
    fn traces_of_pants_rep() {
        let h = pants_rep([2.0, 2.0, 2.0]);
        for b in h.boundary() {
            assert!((b.trace().abs() - 2.0 * 1f64.cosh()).abs() < 1e-12);
        }
        let h = pants_rep([2.0, 2.0, 0.0]);
        assert!((h.boundary()[2].trace().abs() - 2.0).abs() < 1e-12);
        let h = pants_rep([0.0; 3]);
        assert!(h.boundary().iter().all(|b| (b.trace().abs() - 2.0).abs() < 1e-12));
    }

    #[test]
    fn boundary_words_are_positive() {
        // the axes bound a common region lying to their left
        let h = pants_rep([2.0, 2.0, 2.0]);
        let p = core_point(&h);
        for b in h.boundary() {
            let (att, rep) = b.fixed_vectors().unwrap();
            assert!(side_of(rep, att, p) < 0.0);
        }
    }

    #[test]
    fn base_leaf_count_and_switch() {
        let h = pants_rep([2.0, 2.0, 2.0]);
        let plus = base_leaves(&h, &PantsLamination::new([1.0; 3])).unwrap();
        let minus = base_leaves(&h, &PantsLamination::new([-1.0; 3])).unwrap();
        assert_eq!(plus.len(), 3);
        let b = h.boundary();
        let fx = b[0].fixed_points().unwrap();
        assert!(plus[0].endpoints().0.dist(fx.0) < 1e-12);
        assert!(minus[0].endpoints().0.dist(fx.1) < 1e-12);
    }

    #[test]
    fn cusp_conflict() {
        let h = pants_rep([2.0, 2.0, 0.0]);
        assert_eq!(
            base_leaves(&h, &PantsLamination::new([1.0, 1.0, 1.0])),
            Err(Error::CuspSpiralConflict(2))
        );
        assert_eq!(base_leaves(&h, &PantsLamination::new([1.0, 1.0, 0.0])).unwrap().len(), 1);
    }

    #[test]
    fn zero_lamination_is_identity() {
        let h = pants_rep([2.0, 2.0, 2.0]);
        let w = Word::parse("XYx").unwrap();
        let g = quake_cocycle(&h, &PantsLamination::zero(), &w, 3, Side::Right).unwrap();
        assert!(g.approx_eq(&h.eval(&w), 1e-12));
    }

    #[test]
    fn length_law_symmetric() {
        let h = pants_rep([2.0, 2.0, 2.0]);
        let c = Cocycle::new(&h, &PantsLamination::new([1.0; 3]), 6, Side::Right).unwrap();
        let target = 2.0 * 1.5f64.cosh();
        for w in Representation::boundary_words() {
            let t = c.eval(&w).unwrap().trace().abs();
            assert!((t - target).abs() < 1e-8, "{w}: {t}");
        }
    }
}
