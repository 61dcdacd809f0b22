use hyperquake::adsgeo::TorusPoint;
use hyperquake::holonomy::{pants_rep, Representation};
use hyperquake::meridian::{
    all_extremal, extremal_meridian, gap_class, limit_set, rectangles, validate_achronal,
    validate_achronal_sampled, ArcChoice, MonotoneLift,
};
use hyperquake::moebius::in_open_arc;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pair(rng: &mut ChaCha8Rng) -> (Representation, Representation) {
    let mut l = || [0; 3].map(|_| rng.gen_range(0.5..4.0));
    (pants_rep(l()), pants_rep(l()))
}

#[test]
fn equal_holonomies_give_the_diagonal() {
    let h = pants_rep([2.0; 3]);
    let s = limit_set(&h, &h, 6).unwrap();
    let off = s.points.iter().map(|q| hyperquake::moebius::circle_dist(q.p.x, q.p.y)).fold(0.0, f64::max);
    assert!(off < 1e-9);
    let r = rectangles(&h, &h, &s);
    let low = extremal_meridian(&h, &h, &s, &r, &[ArcChoice::Lower; 3]).unwrap();
    for t in [0.05, 0.3, 0.61, 0.9] {
        assert!((low.eval(t) - t).abs() < s.max_gap() + 1e-12);
    }
}

#[test]
fn samples_grow_with_word_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (hl, hr) = random_pair(&mut rng);
    let s5 = limit_set(&hl, &hr, 5).unwrap();
    let s6 = limit_set(&hl, &hr, 6).unwrap();
    assert!(s6.len() > s5.len());
    for q in &s5.points {
        assert!(s6.find(&q.p, 1e-10).is_some());
    }
    assert!(s6.max_gap() <= s5.max_gap());
}

#[test]
fn limit_sets_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (hl, hr) = random_pair(&mut rng);
    let n = 5;
    let s = limit_set(&hl, &hr, n).unwrap();
    let big = limit_set(&hl, &hr, n + 1).unwrap();
    for g in 0..4u8 {
        let (gl, gr) = (hl.letter(g), hr.letter(g));
        for q in s.points.iter().filter(|q| q.word.len() < n) {
            let img = q.p.moved(&gl, &gr);
            assert!(big.find(&img, 1e-8).is_some(), "{} moved by {}", q.word, g);
        }
    }
}

#[test]
fn limit_sets_are_achronal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..3 {
        let (hl, hr) = random_pair(&mut rng);
        let s = limit_set(&hl, &hr, 6).unwrap();
        assert_eq!(validate_achronal_sampled(&s.torus_points(), 20_000, k), Ok(()));
    }
    let (hl, hr) = random_pair(&mut rng);
    let s = limit_set(&hl, &hr, 3).unwrap();
    assert!(s.len() < 200);
    assert_eq!(validate_achronal(&s.torus_points()), Ok(()));
}

#[test]
fn rectangle_interiors_are_empty() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (hl, hr) = random_pair(&mut rng);
    let s = limit_set(&hl, &hr, 8).unwrap();
    let r = rectangles(&hl, &hr, &s);
    assert_eq!(r.rects.len(), 3);
    for rect in &r.rects {
        for q in &s.points {
            let inside = in_open_arc(rect.il.0, rect.il.1, q.p.x) && in_open_arc(rect.ir.0, rect.ir.1, q.p.y);
            assert!(!inside);
        }
        // the diagonal corners are limit points
        assert!(s.find(&rect.corners[0], 1e-10).is_some());
        assert!(s.find(&rect.corners[3], 1e-10).is_some());
    }
}

#[test]
fn shared_cusp_drops_a_rectangle() {
    let hl = pants_rep([0.0, 1.5, 2.0]);
    let hr = pants_rep([0.0, 2.5, 1.0]);
    let s = limit_set(&hl, &hr, 6).unwrap();
    let r = rectangles(&hl, &hr, &s);
    assert_eq!(r.rects.len(), 2);
    assert_eq!(r.degenerate, vec![0]);
    let all = all_extremal(&hl, &hr, &s, &r).unwrap();
    assert_eq!(all.len(), 4);
    assert_eq!(distinct(&all.iter().map(|m| m.1.clone()).collect::<Vec<_>>()), 4);
}

fn distinct(ms: &[MonotoneLift]) -> usize {
    let mut reps: Vec<&MonotoneLift> = Vec::new();
    for m in ms {
        if reps.iter().all(|r| r.distance(m) > 1e-9) {
            reps.push(m);
        }
    }
    reps.len()
}

#[test]
fn eight_extremal_meridians() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (hl, hr) = random_pair(&mut rng);
    let s = limit_set(&hl, &hr, 6).unwrap();
    let r = rectangles(&hl, &hr, &s);
    let all = all_extremal(&hl, &hr, &s, &r).unwrap();
    assert_eq!(all.len(), 8);
    assert_eq!(distinct(&all.iter().map(|m| m.1.clone()).collect::<Vec<_>>()), 8);
    let pts = s.torus_points();
    let lower = MonotoneLift::from_points(&pts, &vec![false; pts.len()]).unwrap();
    let upper = MonotoneLift::from_points(&pts, &vec![true; pts.len()]).unwrap();
    for (_, m) in &all {
        for p in m.vertices() {
            assert!(m.contains(&p, 1e-12));
        }
        assert_eq!(validate_achronal_sampled(&m.vertices(), 20_000, 1), Ok(()));
        for k in 0..500 {
            let t = k as f64 / 500.0 + 1e-4;
            assert!(lower.eval(t) <= m.eval(t) + 1e-12 && m.eval(t) <= upper.eval(t) + 1e-12);
        }
        for rect in &r.rects {
            assert!(m.contains(&rect.corners[0], 1e-10) && m.contains(&rect.corners[3], 1e-10));
        }
    }
}

#[test]
fn extremal_meridians_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (hl, hr) = random_pair(&mut rng);
    let n = 6;
    let s = limit_set(&hl, &hr, n).unwrap();
    let r = rectangles(&hl, &hr, &s);
    let choices = [ArcChoice::Upper, ArcChoice::Lower, ArcChoice::Upper];
    let m = extremal_meridian(&hl, &hr, &s, &r, &choices).unwrap();
    let count = s.len();
    let mut checked = 0;
    for i in 0..count {
        let j = (i + 1) % count;
        let Some(c) = gap_class(&hl, &hr, &s, i, j, 1e-9) else { continue };
        if s.points[i].word.len() > n - 2 {
            continue;
        }
        let corner = if choices[c] == ArcChoice::Lower {
            TorusPoint::new(s.points[j].p.x, s.points[i].p.y)
        } else {
            TorusPoint::new(s.points[i].p.x, s.points[j].p.y)
        };
        assert!(m.contains(&corner, 1e-12));
        for g in 0..4u8 {
            assert!(m.contains(&corner.moved(&hl.letter(g), &hr.letter(g)), 1e-8));
        }
        checked += 1;
    }
    assert!(checked > 10);
}
