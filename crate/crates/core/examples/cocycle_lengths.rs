//! The earthquake cocycle on an explicit pants holonomy changes boundary
//! lengths by the masses.
use hyperquake::holonomy::{pants_rep, Cocycle, Representation, Side};
use hyperquake::pants::PantsLamination;

fn main() -> hyperquake::Result<()> {
    let h = pants_rep([2.0; 3]);
    for m in [[1.0, 1.0, 1.0], [-1.5, 0.5, 2.0], [3.0, -0.5, 0.0]] {
        let c = Cocycle::new(&h, &PantsLamination::new(m), 6, Side::Right)?;
        print!("m = {m:?}:");
        for (i, w) in Representation::boundary_words().iter().enumerate() {
            let tr = c.eval(w)?.trace().abs();
            let want = 2.0 * ((2.0 + m[i]).abs() / 2.0).cosh();
            print!("  {w}: {tr:.10} ({want:.10})");
        }
        println!();
    }
    Ok(())
}
