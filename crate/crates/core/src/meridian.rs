//! Limit sets of a pair of holonomies, their rectangles, and the invariant
//! achronal meridians through them.
//!
//! A meridian is stored as a monotone lift `f` with `f(x + 1) = f(x) + 1`,
//! sampled at the limit points: each sample carries the jump interval
//! `[y_lo, y_hi]` of the filled graph, and `f = y_hi(i)` on `(x_i, x_(i+1))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adsgeo::TorusPoint;
use crate::error::{Error, Result};
use crate::holonomy::{Representation, Word, MAX_WORD_LEN};
use crate::moebius::{circle_dist, in_open_arc, Class, Isometry};

pub const DEDUP_TOL: f64 = 1e-10;
/// Coordinates closer than this count as equal in the triple test.
pub const ORDER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitPoint {
    pub p: TorusPoint,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSample {
    /// Sorted by `x`, then `y`.
    pub points: Vec<LimitPoint>,
    pub max_word_len: usize,
    /// Words elliptic in one of the two representations.
    pub skipped: usize,
}

/// Attractive fixed point; the fixed point itself for parabolics.
fn attractive(m: &Isometry) -> Option<f64> {
    match m.classify() {
        Class::Elliptic => None,
        _ => m.fixed_points().ok().map(|(a, _)| a.theta()),
    }
}

impl LimitSample {
    /// Builds a sample from tagged points: sorts and merges points within [`DEDUP_TOL`],
    /// keeping the first occurrence.
    pub fn from_points(mut pts: Vec<LimitPoint>, max_word_len: usize, skipped: usize) -> Self {
        pts.sort_by(|a, b| {
            a.p.x
                .total_cmp(&b.p.x)
                .then(a.p.y.total_cmp(&b.p.y))
                .then(a.word.len().cmp(&b.word.len()))
                .then(a.word.cmp(&b.word))
        });
        let mut out: Vec<LimitPoint> = Vec::with_capacity(pts.len());
        for q in pts {
            let dup = out
                .iter()
                .rev()
                .take_while(|k| q.p.x - k.p.x <= DEDUP_TOL)
                .any(|k| k.p.dist(&q.p) <= DEDUP_TOL);
            let dup = dup || out.first().is_some_and(|k| k.p.x + 1.0 - q.p.x <= DEDUP_TOL && k.p.dist(&q.p) <= DEDUP_TOL);
            if !dup {
                out.push(q);
            }
        }
        LimitSample { points: out, max_word_len, skipped }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn torus_points(&self) -> Vec<TorusPoint> {
        self.points.iter().map(|q| q.p).collect()
    }

    /// Largest gap between consecutive `x` coordinates, wrapping around.
    pub fn max_gap(&self) -> f64 {
        let n = self.points.len();
        if n < 2 {
            return 1.0;
        }
        (0..n)
            .map(|i| (self.points[(i + 1) % n].p.x - self.points[i].p.x).rem_euclid(1.0))
            .fold(0.0, f64::max)
    }

    /// Index of a sample point within `tol` of `p`.
    pub fn find(&self, p: &TorusPoint, tol: f64) -> Option<usize> {
        for shift in [0.0, 1.0, -1.0] {
            let x = p.x + shift;
            let start = self.points.partition_point(|q| q.p.x < x - tol);
            let hit = self.points[start..]
                .iter()
                .take_while(|q| q.p.x <= x + tol)
                .position(|q| q.p.dist(p) <= tol);
            if let Some(k) = hit {
                return Some(start + k);
            }
        }
        None
    }
}

/// `p++(g)` for every reduced word of length `1..=n` that is non-elliptic in both
/// representations. Parabolic words contribute their fixed point.
pub fn limit_set(hl: &Representation, hr: &Representation, n: usize) -> Result<LimitSample> {
    if n > MAX_WORD_LEN {
        return Err(Error::BudgetExceeded(n));
    }
    let mut pts = Vec::new();
    let mut skipped = 0;
    let mut frontier = vec![(Word::empty(), Isometry::IDENTITY, Isometry::IDENTITY)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for (w, ml, mr) in &frontier {
            for l in 0..4u8 {
                if w.0.last() == Some(&(l ^ 1)) {
                    continue;
                }
                let mut v = w.clone();
                v.0.push(l);
                let (al, ar) = (*ml * hl.letter(l), *mr * hr.letter(l));
                match (attractive(&al), attractive(&ar)) {
                    (Some(x), Some(y)) => pts.push(LimitPoint { p: TorusPoint::new(x, y), word: v.clone() }),
                    _ => skipped += 1,
                }
                next.push((v, al, ar));
            }
        }
        frontier = next;
    }
    Ok(LimitSample::from_points(pts, n, skipped))
}

/// Peripheral class (0, 1, 2 for `X`, `Y`, `(XY)^-1`) of a word conjugate to a
/// nonzero power of a boundary word.
pub fn peripheral_class(w: &Word) -> Option<usize> {
    let mut c: &[u8] = &w.0;
    while c.len() >= 2 && c[0] == c[c.len() - 1] ^ 1 {
        c = &c[1..c.len() - 1];
    }
    if c.is_empty() {
        return None;
    }
    if c.iter().all(|&l| l == c[0]) {
        return Some(if c[0] < 2 { 0 } else { 1 });
    }
    let alternating = c.len() % 2 == 0 && c.iter().enumerate().all(|(i, &l)| l == c[i % 2]);
    let pair = [c[0].min(c[1]), c[0].max(c[1])];
    if alternating && (pair == [1, 3] || pair == [0, 2]) {
        return Some(2);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcChoice {
    /// Through the corner `(x_end, y_start)`.
    Lower,
    /// Through the corner `(x_start, y_end)`.
    Upper,
}

impl std::str::FromStr for ArcChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(ArcChoice::Lower),
            "upper" => Ok(ArcChoice::Upper),
            _ => Err(Error::Config(format!("unknown arc choice {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rectangle {
    pub class: usize,
    pub word: Word,
    /// Gap of the left limit set, positively oriented from `il.0` to `il.1`.
    pub il: (f64, f64),
    pub ir: (f64, f64),
    /// `p++`, `p+-`, `p-+`, `p--`.
    pub corners: [TorusPoint; 4],
}

impl Rectangle {
    pub fn start(&self) -> TorusPoint {
        TorusPoint::new(self.il.0, self.ir.0)
    }

    pub fn end(&self) -> TorusPoint {
        TorusPoint::new(self.il.1, self.ir.1)
    }

    /// Corner visited by the arc `choice`.
    pub fn corner(&self, choice: ArcChoice) -> TorusPoint {
        match choice {
            ArcChoice::Lower => TorusPoint::new(self.il.1, self.ir.0),
            ArcChoice::Upper => TorusPoint::new(self.il.0, self.ir.1),
        }
    }

    /// The translate of the rectangle by `(gl, gr)`.
    pub fn moved(&self, gl: &Isometry, gr: &Isometry) -> Rectangle {
        Rectangle {
            class: self.class,
            word: self.word.clone(),
            il: (gl.apply_theta(self.il.0), gl.apply_theta(self.il.1)),
            ir: (gr.apply_theta(self.ir.0), gr.apply_theta(self.ir.1)),
            corners: self.corners.map(|c| c.moved(gl, gr)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rectangles {
    pub rects: Vec<Rectangle>,
    /// Peripheral classes that are parabolic in at least one representation.
    pub degenerate: Vec<usize>,
}

/// One rectangle per peripheral class hyperbolic on both sides.
pub fn rectangles(hl: &Representation, hr: &Representation, sample: &LimitSample) -> Rectangles {
    let words = Representation::boundary_words();
    let (bl, br) = (hl.boundary(), hr.boundary());
    let mut rects = Vec::new();
    let mut degenerate = Vec::new();
    for c in 0..3 {
        let (Ok((al, rl)), Ok((ar, rr))) = (bl[c].fixed_points(), br[c].fixed_points()) else {
            degenerate.push(c);
            continue;
        };
        if bl[c].classify() != Class::Hyperbolic || br[c].classify() != Class::Hyperbolic {
            degenerate.push(c);
            continue;
        }
        let (al, rl, ar, rr) = (al.theta(), rl.theta(), ar.theta(), rr.theta());
        let inside = sample.points.iter().filter(|q| in_open_arc(rl, al, q.p.x)).count();
        let outside = sample.points.iter().filter(|q| in_open_arc(al, rl, q.p.x)).count();
        let (il, ir) = if inside <= outside { ((rl, al), (rr, ar)) } else { ((al, rl), (ar, rr)) };
        rects.push(Rectangle {
            class: c,
            word: words[c].clone(),
            il,
            ir,
            corners: [
                TorusPoint::new(al, ar),
                TorusPoint::new(al, rr),
                TorusPoint::new(rl, ar),
                TorusPoint::new(rl, rr),
            ],
        });
    }
    Rectangles { rects, degenerate }
}

/// Monotone lift sampled at the points of a meridian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneLift {
    /// `(x, y_lo, y_hi)`, `x` increasing in `[0, 1)`.
    pub samples: Vec<(f64, f64, f64)>,
}

impl MonotoneLift {
    /// Lifts cyclically ordered points; `upper[i]` makes the step on the gap
    /// from point `i` to `i + 1` happen at its left end.
    pub fn from_points(pts: &[TorusPoint], upper: &[bool]) -> Result<MonotoneLift> {
        let n = pts.len();
        if n == 0 {
            return Err(Error::NotConnectible);
        }
        let mut ys = Vec::with_capacity(n);
        let mut prev = pts[0].y;
        ys.push(prev);
        for p in &pts[1..] {
            prev += (p.y - prev).rem_euclid(1.0);
            ys.push(prev);
        }
        if ys[n - 1] > ys[0] + 1.0 + ORDER_TOL {
            return Err(Error::NotConnectible);
        }
        let y = |i: isize| -> f64 {
            if i < 0 {
                ys[n - 1] - 1.0
            } else if i as usize >= n {
                ys[0] + 1.0
            } else {
                ys[i as usize]
            }
        };
        let samples = (0..n)
            .map(|i| {
                let k = i as isize;
                let lo = if upper[(i + n - 1) % n] { y(k) } else { y(k - 1) };
                let hi = if upper[i] { y(k + 1) } else { y(k) };
                (pts[i].x, lo, hi)
            })
            .collect();
        Ok(MonotoneLift { samples })
    }

    /// Right-continuous value of the lift at real `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let k = t.floor();
        let s = t - k;
        let i = self.samples.partition_point(|q| q.0 <= s);
        let v = if i == 0 {
            self.samples[self.samples.len() - 1].2 - 1.0
        } else {
            self.samples[i - 1].2
        };
        v + k
    }

    /// Whether the filled graph passes within `tol` of `p`.
    pub fn contains(&self, p: &TorusPoint, tol: f64) -> bool {
        let near = |y: f64, lo: f64, hi: f64| {
            let off = (y - lo).rem_euclid(1.0);
            off <= hi - lo + tol || off >= 1.0 - tol
        };
        let on_jump = self
            .samples
            .iter()
            .any(|&(x, lo, hi)| circle_dist(x, p.x) <= tol && near(p.y, lo, hi));
        on_jump || circle_dist(self.eval(p.x), p.y) <= tol
    }

    /// Largest pointwise gap `|self - other|` over the sample abscissae of both.
    pub fn distance(&self, other: &MonotoneLift) -> f64 {
        self.samples
            .iter()
            .chain(other.samples.iter())
            .flat_map(|q| [q.0, (q.0 - 1e-13).rem_euclid(1.0)])
            .map(|t| (self.eval(t) - other.eval(t)).abs())
            .fold(0.0, f64::max)
    }

    /// Points of the filled graph: the samples with their jump ends.
    pub fn vertices(&self) -> Vec<TorusPoint> {
        let mut out = Vec::with_capacity(self.samples.len() * 2);
        for &(x, lo, hi) in &self.samples {
            out.push(TorusPoint::new(x, lo));
            if hi > lo {
                out.push(TorusPoint::new(x, hi));
            }
        }
        out
    }
}

/// Rectangle class of the gap from sample point `i` to `j`, if the two points are
/// the opposite corners of a translate of a peripheral rectangle.
pub fn gap_class(
    hl: &Representation,
    hr: &Representation,
    sample: &LimitSample,
    i: usize,
    j: usize,
    tol: f64,
) -> Option<usize> {
    let (a, b) = (&sample.points[i], &sample.points[j]);
    let c = peripheral_class(&a.word)?;
    let inv = a.word.inverse();
    let (ml, mr) = (hl.eval(&inv), hr.eval(&inv));
    let other = TorusPoint::new(attractive(&ml)?, attractive(&mr)?);
    if other.dist(&b.p) <= tol {
        Some(c)
    } else {
        None
    }
}

/// The lift through the sample that takes, on every gap matched to a rectangle
/// of class `c`, the arc `choices[c]`, and the lower arc on all other gaps.
pub fn extremal_meridian(
    hl: &Representation,
    hr: &Representation,
    sample: &LimitSample,
    rects: &Rectangles,
    choices: &[ArcChoice; 3],
) -> Result<MonotoneLift> {
    let n = sample.len();
    let pts = sample.torus_points();
    if let Err(_t) = validate_achronal(&pts) {
        return Err(Error::NotConnectible);
    }
    let tol = 1e-9;
    let upper: Vec<bool> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let cls = gap_class(hl, hr, sample, i, j, tol).or_else(|| gap_class(hl, hr, sample, j, i, tol));
            match cls {
                Some(c) if rects.rects.iter().any(|r| r.class == c) => choices[c] == ArcChoice::Upper,
                _ => false,
            }
        })
        .collect();
    MonotoneLift::from_points(&pts, &upper)
}

/// All `2^k` extremal meridians, one per choice of arcs on the `k` rectangle classes.
pub fn all_extremal(
    hl: &Representation,
    hr: &Representation,
    sample: &LimitSample,
    rects: &Rectangles,
) -> Result<Vec<([ArcChoice; 3], MonotoneLift)>> {
    let classes: Vec<usize> = rects.rects.iter().map(|r| r.class).collect();
    let mut out = Vec::new();
    for mask in 0..(1usize << classes.len()) {
        let mut ch = [ArcChoice::Lower; 3];
        for (bit, &c) in classes.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                ch[c] = ArcChoice::Upper;
            }
        }
        out.push((ch, extremal_meridian(hl, hr, sample, rects, &ch)?));
    }
    Ok(out)
}

fn tol_sign(a: f64, b: f64, c: f64) -> i32 {
    let ab = (b - a).rem_euclid(1.0);
    let ac = (c - a).rem_euclid(1.0);
    let eq = |u: f64| u <= ORDER_TOL || u >= 1.0 - ORDER_TOL;
    if eq(ab) || eq(ac) || (ab - ac).abs() <= ORDER_TOL {
        0
    } else if ab < ac {
        1
    } else {
        -1
    }
}

/// Whether three points violate achronality: positively ordered in one
/// coordinate and negatively in the other.
pub fn violates(p: &TorusPoint, q: &TorusPoint, r: &TorusPoint) -> bool {
    tol_sign(p.x, q.x, r.x) * tol_sign(p.y, q.y, r.y) < 0
}

/// Number of triples tested when a sample is too large for the exhaustive check.
pub const RANDOM_TRIPLES: usize = 100_000;
const EXHAUSTIVE_BELOW: usize = 200;

/// Checks every triple below 200 points, otherwise [`RANDOM_TRIPLES`] seeded random triples.
/// The error carries the first violating triple.
pub fn validate_achronal(pts: &[TorusPoint]) -> std::result::Result<(), [usize; 3]> {
    if pts.len() < EXHAUSTIVE_BELOW {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if violates(&pts[i], &pts[j], &pts[k]) {
                        return Err([i, j, k]);
                    }
                }
            }
        }
        Ok(())
    } else {
        validate_achronal_sampled(pts, RANDOM_TRIPLES, 0x5eed)
    }
}

pub fn validate_achronal_sampled(
    pts: &[TorusPoint],
    triples: usize,
    seed: u64,
) -> std::result::Result<(), [usize; 3]> {
    let n = pts.len();
    if n < 3 {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..triples {
        let t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        if violates(&pts[t[0]], &pts[t[1]], &pts[t[2]]) {
            return Err(t);
        }
    }
    Ok(())
}
