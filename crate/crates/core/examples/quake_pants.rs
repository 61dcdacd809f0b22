//! Right earthquake on enhanced pants coordinates, then back with the left one.
use hyperquake::pants::{lamination_type, left_quake, right_quake, EnhancedPants, PantsLamination};

fn main() {
    let p = EnhancedPants::new([2.0, 1.0, 1.0]);
    for m in [[1.0, 1.0, 1.0], [-2.0, 0.0, 0.0], [5.0, 1.0, 1.0]] {
        let lam = PantsLamination::new(m);
        let q = right_quake(&p, &lam, 1.0);
        println!("{:?} --{:?} {:?}--> {:?}  cusps {:?}", p.a, lamination_type(m), m, q.a, q.cusps());
        assert_eq!(left_quake(&q, &lam, 1.0), p);
    }
}
