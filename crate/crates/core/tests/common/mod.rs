//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperquake::adsgeo::TorusPoint;
use hyperquake::benthull::HullSide;
use hyperquake::meridian::MonotoneLift;
use hyperquake::moebius::{circle_dist, mobius_through, CirclePoint};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Maximal contact sets of the planes through every triple that stay on `side`
/// of all points, the lift anchored at the triple's first point.
pub fn triple_faces(pts: &[TorusPoint], side: HullSide, tol: f64) -> BTreeSet<Vec<usize>> {
    let n = pts.len();
    let mut found = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            'k: for k in j + 1..n {
                let xs = [i, j, k].map(|a| CirclePoint::new(pts[a].x));
                let ys = [i, j, k].map(|a| CirclePoint::new(pts[a].y));
                let Ok(a) = mobius_through(xs, ys) else { continue };
                let y0 = pts[i].y;
                let mut contacts = Vec::new();
                for (m, p) in pts.iter().enumerate() {
                    let ay = a.apply_theta(p.x);
                    if circle_dist(ay, p.y) < tol {
                        contacts.push(m);
                        continue;
                    }
                    let above = (ay - y0).rem_euclid(1.0) > (p.y - y0).rem_euclid(1.0);
                    if above != (side == HullSide::Upper) {
                        continue 'k;
                    }
                }
                found.insert(contacts);
            }
        }
    }
    let all: Vec<Vec<usize>> = found.into_iter().collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x))))
        .cloned()
        .collect()
}

/// `n` points whose coordinates increase together.
pub fn achronal_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<TorusPoint> {
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    let mut ys: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let c: f64 = rng.gen();
    xs.into_iter().zip(ys).map(|(x, y)| TorusPoint::new(x, y + c)).collect()
}

pub fn distinct(ms: &[MonotoneLift], tol: f64) -> usize {
    let mut reps: Vec<&MonotoneLift> = Vec::new();
    for m in ms {
        if reps.iter().all(|r| r.distance(m) > tol) {
            reps.push(m);
        }
    }
    reps.len()
}
