//! All earthquakes between two pants with given boundary lengths.
use hyperquake::pants::{enumerate_quakes_unsigned, right_quake, EnhancedPants};

fn main() {
    let l = [2.0, 1.5, 1.0];
    for lp in [[3.0, 2.0, 0.5], [0.0, 2.0, 0.5], [0.0, 0.0, 0.0]] {
        let sols = enumerate_quakes_unsigned(l, lp);
        println!("{l:?} -> {lp:?}: {} laminations", sols.len());
        for s in sols {
            let q = right_quake(&EnhancedPants::new(l), &s, 1.0);
            println!("  m = {:?}  lands on {:?}", s.m, q.a);
        }
    }
}
