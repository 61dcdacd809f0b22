//! Enhanced Teichmuller coordinates of the pair of pants and the earthquake flow.
//!
//! A point is a triple `a` with `|a_i|` the length of boundary `i` (0 for a
//! cusp) and `sign(a_i)` its enhancement. A measured lamination is a triple of
//! signed boundary masses. The right earthquake adds the masses, the left one
//! subtracts them.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhancedPants {
    pub a: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopoType {
    Empty,
    /// Three arcs joining distinct boundaries.
    L0,
    /// One boundary dominates; the index is 1-based as in `L1`, `L2`, `L3`.
    L1,
    L2,
    L3,
}

impl TopoType {
    /// 0-based index of the dominating boundary for `L1..L3`.
    pub fn dominant(self) -> Option<usize> {
        match self {
            TopoType::L1 => Some(0),
            TopoType::L2 => Some(1),
            TopoType::L3 => Some(2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PantsLamination {
    pub m: [f64; 3],
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl EnhancedPants {
    pub fn new(a: [f64; 3]) -> Self {
        EnhancedPants { a: a.map(clean) }
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.a.map(f64::abs)
    }

    pub fn is_cusp(&self, i: usize) -> bool {
        self.a[i] == 0.0
    }

    pub fn cusps(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.is_cusp(i)).collect()
    }
}

impl PantsLamination {
    pub fn new(m: [f64; 3]) -> Self {
        PantsLamination { m: m.map(clean) }
    }

    pub fn zero() -> Self {
        PantsLamination { m: [0.0; 3] }
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self::new(self.m.map(|x| x * t))
    }

    pub fn topo_type(&self) -> TopoType {
        lamination_type(self.m)
    }

    pub fn is_empty(&self) -> bool {
        self.m.iter().all(|&x| x == 0.0)
    }
}

pub fn lamination_type(m: [f64; 3]) -> TopoType {
    if m.iter().all(|&x| x == 0.0) {
        return TopoType::Empty;
    }
    let a = m.map(f64::abs);
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if a[i] > a[j] + a[k] {
            return [TopoType::L1, TopoType::L2, TopoType::L3][i];
        }
    }
    TopoType::L0
}

pub fn right_quake(p: &EnhancedPants, lam: &PantsLamination, t: f64) -> EnhancedPants {
    EnhancedPants::new([0, 1, 2].map(|i| p.a[i] + t * lam.m[i]))
}

pub fn left_quake(p: &EnhancedPants, lam: &PantsLamination, t: f64) -> EnhancedPants {
    EnhancedPants::new([0, 1, 2].map(|i| p.a[i] - t * lam.m[i]))
}

pub fn solve_quake(p: &EnhancedPants, q: &EnhancedPants) -> PantsLamination {
    PantsLamination::new([0, 1, 2].map(|i| q.a[i] - p.a[i]))
}

pub fn reflect(lam: &PantsLamination, i: usize) -> PantsLamination {
    let mut m = lam.m;
    m[i] = -m[i];
    PantsLamination::new(m)
}

/// Masses `m` with `|l_i + m_i| = l'_i` at every boundary.
///
/// A boundary that is geodesic on both sides has the two solutions
/// `l' - l` and `-l' - l`. A cusp on the source side admits a single
/// lamination, taken with positive spiraling.
pub fn enumerate_quakes_unsigned(l: [f64; 3], lp: [f64; 3]) -> Vec<PantsLamination> {
    let options: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let (a, b) = (l[i], lp[i]);
            match (a > 0.0, b > 0.0) {
                (true, true) => vec![b - a, -b - a],
                (true, false) => vec![-a],
                (false, true) => vec![b],
                (false, false) => vec![0.0],
            }
        })
        .collect();
    let mut out: Vec<PantsLamination> = Vec::new();
    for &x in &options[0] {
        for &y in &options[1] {
            for &z in &options[2] {
                let cand = PantsLamination::new([x, y, z]);
                if !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types() {
        assert_eq!(lamination_type([1.0, 1.0, 1.0]), TopoType::L0);
        assert_eq!(lamination_type([5.0, 1.0, 1.0]), TopoType::L1);
        assert_eq!(lamination_type([1.0, -1.0, 5.0]), TopoType::L3);
        assert_eq!(lamination_type([0.0; 3]), TopoType::Empty);
        assert_eq!(lamination_type([2.0, 1.0, 1.0]), TopoType::L0);
        assert_eq!(lamination_type([0.0, 1.0, 0.0]), TopoType::L2);
    }

    #[test]
    fn quake_examples() {
        let q = right_quake(&EnhancedPants::new([2.0; 3]), &PantsLamination::new([1.0; 3]), 1.0);
        assert_eq!(q.a, [3.0; 3]);
        let q = right_quake(
            &EnhancedPants::new([2.0, 1.0, 1.0]),
            &PantsLamination::new([-2.0, 0.0, 0.0]),
            1.0,
        );
        assert_eq!(q.a, [0.0, 1.0, 1.0]);
        assert!(q.is_cusp(0) && q.a[0].is_sign_positive());
        let q = right_quake(
            &EnhancedPants::new([1.0, 4.0, 4.0]),
            &PantsLamination::new([-3.0, 0.0, 0.0]),
            1.0,
        );
        assert_eq!(q.a, [-2.0, 4.0, 4.0]);
        let p = EnhancedPants::new([2.0, -1.0, 0.5]);
        assert_eq!(right_quake(&p, &PantsLamination::zero(), 3.0), p);
        assert_eq!(left_quake(&EnhancedPants::new([3.0; 3]), &PantsLamination::new([1.0; 3]), 1.0).a, [2.0; 3]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_quake(&EnhancedPants::new([2.0, 1.0, 1.0]), &EnhancedPants::new([0.0, 1.0, 1.0]));
        assert_eq!(s.m, [-2.0, 0.0, 0.0]);
        let p = EnhancedPants::new([2.0; 3]);
        assert!(solve_quake(&p, &p).is_empty());
    }

    #[test]
    fn enumeration_examples() {
        let sols = enumerate_quakes_unsigned([2.0; 3], [3.0; 3]);
        assert_eq!(sols.len(), 8);
        for s in &sols {
            assert!(s.m.iter().all(|&x| x == 1.0 || x == -5.0));
        }
        let sols = enumerate_quakes_unsigned([2.0; 3], [0.0, 3.0, 3.0]);
        assert_eq!(sols.len(), 4);
        assert!(sols.iter().all(|s| s.m[0] == -2.0));
        assert_eq!(enumerate_quakes_unsigned([0.0; 3], [0.0; 3]).len(), 1);
        assert_eq!(enumerate_quakes_unsigned([0.0, 2.0, 2.0], [1.0, 1.0, 1.0]).len(), 4);
    }

    #[test]
    fn reflections() {
        let l = PantsLamination::new([1.0, 1.0, 1.0]);
        assert_eq!(reflect(&l, 0).m, [-1.0, 1.0, 1.0]);
        assert_eq!(reflect(&reflect(&l, 0), 0), l);
        assert_eq!(reflect(&reflect(&l, 0), 1), reflect(&reflect(&l, 1), 0));
    }
}
