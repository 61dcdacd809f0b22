//! Self-checks behind `hyperquake verify`, plus the brute-force envelope used
//! to cross-check [`support_planes`].
//!
//! Each suite is a desk-scale version of one group of acceptance checks and
//! produces a JSON-serializable [`SuiteReport`].

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adsgeo::{ambient_angle, plane_angle, SpacelikePlane, TorusPoint};
use crate::benthull::{peripheral_bending, support_planes, HullSide};
use crate::error::{Error, Result};
use crate::holonomy::{pants_rep, Cocycle, Representation, Side};
use crate::meridian::{
    all_extremal, limit_set, rectangles, validate_achronal_sampled, ArcChoice, MonotoneLift,
};
use crate::moebius::{circle_dist, mobius_through, CirclePoint, Isometry};
use crate::pants::{
    enumerate_quakes_unsigned, left_quake, right_quake, EnhancedPants, PantsLamination,
};

pub const SUITES: [&str; 7] = ["pants", "holonomy", "limitset", "meridians", "hull-oracle", "angles", "bending"];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run(suite: &str) -> Result<Vec<SuiteReport>> {
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s)).collect();
    }
    Ok(vec![run_one(suite)?])
}

fn run_one(suite: &str) -> Result<SuiteReport> {
    let checks = match suite {
        "pants" => pants_suite(),
        "holonomy" => holonomy_suite()?,
        "limitset" => limitset_suite()?,
        "meridians" => meridians_suite()?,
        "hull-oracle" => vec![hull_oracle_check(100, 12, 1)?],
        "angles" => angles_suite()?,
        "bending" => bending_suite()?,
        _ => return Err(Error::Config(format!("unknown suite `{suite}` (expected one of {}, all)", SUITES.join(", ")))),
    };
    Ok(SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks })
}

fn pants_suite() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tr = || [0; 3].map(|_| rng.gen_range(-5.0..5.0f64));
    let mut err: f64 = 0.0;
    for _ in 0..10_000 {
        let (a, m, tt) = (tr(), tr(), tr());
        let (t, tp) = (tt[0].abs(), tt[1].abs());
        let p = EnhancedPants::new(a);
        let lam = PantsLamination::new(m);
        let two = right_quake(&right_quake(&p, &lam, t), &lam, tp);
        let one = right_quake(&p, &lam, t + tp);
        let back = left_quake(&right_quake(&p, &lam, t), &lam, t);
        for i in 0..3 {
            err = err.max((two.a[i] - one.a[i]).abs()).max((back.a[i] - a[i]).abs());
        }
    }
    let mut counts_ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for cusps in 0..=3usize {
        for _ in 0..25 {
            let l: [f64; 3] = [0; 3].map(|_| rng.gen_range(0.2..5.0));
            let mut lp: [f64; 3] = [0; 3].map(|_| rng.gen_range(0.2..5.0));
            lp[..cusps].fill(0.0);
            let sols = enumerate_quakes_unsigned(l, lp);
            let forward = sols.iter().all(|s| {
                let q = right_quake(&EnhancedPants::new(l), s, 1.0).lengths();
                (0..3).all(|i| (q[i] - lp[i]).abs() < 1e-12)
            });
            counts_ok &= sols.len() == 1 << (3 - cusps) && forward;
        }
    }
    vec![
        check("flow laws", err < 1e-12, format!("max error {err:e}")),
        check("2^n solutions", counts_ok, "8/4/2/1 solutions by cusp count".into()),
    ]
}

fn holonomy_suite() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut err: f64 = 0.0;
    for _ in 0..1000 {
        let l: [f64; 3] = [0; 3].map(|_| rng.gen_range(0.0..5.0));
        let h = pants_rep(l);
        for (b, li) in h.boundary().iter().zip(l) {
            err = err.max((b.trace().abs() - 2.0 * (li / 2.0).cosh()).abs());
        }
    }
    let h = pants_rep([2.0; 3]);
    let mut law: f64 = 0.0;
    for _ in 0..5 {
        let m: [f64; 3] = [0; 3].map(|_| rng.gen_range(-3.0..3.0));
        let c = Cocycle::new(&h, &PantsLamination::new(m), 6, Side::Right)?;
        for (i, w) in Representation::boundary_words().iter().enumerate() {
            let want = 2.0 * ((2.0 + m[i]).abs() / 2.0).cosh();
            law = law.max((c.eval(w)?.trace().abs() - want).abs());
        }
    }
    Ok(vec![
        check("boundary traces", err < 1e-10, format!("max error {err:e}")),
        check("cocycle length law", law < 1e-8, format!("max error {law:e}")),
    ])
}

fn limitset_suite() -> Result<Vec<Check>> {
    let h = pants_rep([2.0; 3]);
    let s = limit_set(&h, &h, 6)?;
    let off = s.points.iter().map(|q| circle_dist(q.p.x, q.p.y)).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut bad = 0;
    for k in 0..3 {
        let (hl, hr) = (random_pants(&mut rng), random_pants(&mut rng));
        let s = limit_set(&hl, &hr, 6)?;
        if validate_achronal_sampled(&s.torus_points(), 100_000, k).is_err() {
            bad += 1;
        }
    }
    Ok(vec![
        check("diagonal", off < 1e-9, format!("off-diagonal {off:e}")),
        check("achronality", bad == 0, format!("{bad} violating samples")),
    ])
}

fn random_pants(rng: &mut ChaCha8Rng) -> Representation {
    pants_rep([0; 3].map(|_| rng.gen_range(0.5..4.0)))
}

/// Number of lifts pairwise farther apart than `tol`.
pub fn distinct_lifts(ms: &[MonotoneLift], tol: f64) -> usize {
    let mut reps: Vec<&MonotoneLift> = Vec::new();
    for m in ms {
        if reps.iter().all(|r| r.distance(m) > tol) {
            reps.push(m);
        }
    }
    reps.len()
}

fn meridians_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let cases = [
        ("no cusps", random_pants(&mut rng), random_pants(&mut rng), 8),
        ("one shared cusp", pants_rep([0.0, 1.5, 2.0]), pants_rep([0.0, 2.5, 1.0]), 4),
    ];
    for (name, hl, hr, want) in cases {
        let s = limit_set(&hl, &hr, 6)?;
        let all = all_extremal(&hl, &hr, &s, &rectangles(&hl, &hr, &s))?;
        let lifts: Vec<MonotoneLift> = all.into_iter().map(|m| m.1).collect();
        let n = distinct_lifts(&lifts, 1e-9);
        out.push(check(name, n == want, format!("{n} distinct meridians, expected {want}")));
    }
    Ok(out)
}

/// Contact sets of all faces on `side`, by enumerating every triple of points
/// and testing the plane through it for domination.
pub fn brute_force_faces(pts: &[TorusPoint], side: HullSide, tol: f64) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [i, j, k];
                let xs = t.map(|a| CirclePoint::new(pts[a].x));
                let ys = t.map(|a| CirclePoint::new(pts[a].y));
                let Ok(a) = mobius_through(xs, ys) else { continue };
                if let Some(c) = dominated_contacts(&a, pts, i, side, tol) {
                    faces.insert(c);
                }
            }
        }
    }
    let all: Vec<Vec<usize>> = faces.into_iter().collect();
    let sub = |a: &Vec<usize>, b: &Vec<usize>| a.len() < b.len() && a.iter().all(|x| b.contains(x));
    all.iter().filter(|c| !all.iter().any(|d| sub(c, d))).cloned().collect()
}

/// Contacts of the graph of `a` if its lift anchored at point `anchor` stays
/// on `side` of every point.
fn dominated_contacts(a: &Isometry, pts: &[TorusPoint], anchor: usize, side: HullSide, tol: f64) -> Option<Vec<usize>> {
    let y0 = pts[anchor].y;
    let mut contacts = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let ay = a.apply_theta(p.x);
        if circle_dist(ay, p.y) < tol {
            contacts.push(i);
            continue;
        }
        let da = (ay - y0).rem_euclid(1.0);
        let dp = (p.y - y0).rem_euclid(1.0);
        let ok = match side {
            HullSide::Upper => da >= dp,
            HullSide::Lower => da <= dp,
        };
        if !ok {
            return None;
        }
    }
    Some(contacts)
}

/// Random strictly achronal points: both coordinates increase together.
pub fn random_achronal(rng: &mut ChaCha8Rng, n: usize) -> Vec<TorusPoint> {
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut ys: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let shift: f64 = rng.gen();
    xs.iter().zip(&ys).map(|(&x, &y)| TorusPoint::new(x, y + shift)).collect()
}

fn hull_oracle_check(trials: usize, max_points: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..trials {
        let n = rng.gen_range(4..=max_points);
        let pts = random_achronal(&mut rng, n);
        for side in [HullSide::Upper, HullSide::Lower] {
            let fast: BTreeSet<Vec<usize>> = support_planes(&pts, side)?.into_iter().map(|f| f.contacts).collect();
            let slow: BTreeSet<Vec<usize>> = brute_force_faces(&pts, side, 1e-9).into_iter().collect();
            if fast != slow {
                mismatches += 1;
            }
        }
    }
    Ok(check("envelope vs triple enumeration", mismatches == 0, format!("{mismatches} mismatching inputs")))
}

fn angles_suite() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut err: f64 = 0.0;
    let mut done = 0;
    while done < 1000 {
        let e: [f64; 4] = [0; 4].map(|_| rng.gen_range(-2.0..2.0));
        let f: [f64; 4] = [0; 4].map(|_| rng.gen_range(-2.0..2.0));
        // keep both matrices well conditioned
        if e[0] * e[3] - e[1] * e[2] < 0.2 || f[0] * f[3] - f[1] * f[2] < 0.2 {
            continue;
        }
        let (Ok(a), Ok(g)) = (Isometry::from_entries(e), Isometry::from_entries(f)) else { continue };
        let h = Isometry::dilation(rng.gen_range(0.05..4.0)).conj(&g);
        let (p, q) = (SpacelikePlane::new(a), SpacelikePlane::new(a * h));
        let d = (plane_angle(&p, &q, 1)?.abs() - ambient_angle(&p, &q)?).abs();
        err = err.max(d);
        done += 1;
    }
    Ok(vec![check("plane angle vs quadric", err < 1e-9, format!("max error {err:e}"))])
}

fn bending_suite() -> Result<Vec<Check>> {
    let hl = pants_rep([2.0; 3]);
    let hr = Cocycle::new(&hl, &PantsLamination::new([1.0; 3]), 6, Side::Right)?.deformed()?;
    let s = limit_set(&hl, &hr, 8)?;
    let b = peripheral_bending(&hl, &hr, &s, HullSide::Upper)?;
    let worst = b.iter().map(|p| (p.mass(ArcChoice::Lower) - 0.5).abs()).fold(0.0, f64::max);
    Ok(vec![check("half-shear bending", b.len() == 3 && worst < 0.025, format!("max deviation from 0.5: {worst:e}"))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(run("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn brute_force_on_a_single_plane() {
        let p = SpacelikePlane::new(Isometry::new(2.0, 1.0, 1.0, 1.0).unwrap());
        let pts: Vec<_> = [0.1, 0.4, 0.6, 0.9].iter().map(|&x| p.boundary_point(x)).collect();
        assert_eq!(brute_force_faces(&pts, HullSide::Upper, 1e-9), vec![vec![0, 1, 2, 3]]);
    }
}
