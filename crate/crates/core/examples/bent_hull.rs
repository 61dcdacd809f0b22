//! Upper envelope of the limit set of an earthquake pair: bending weights,
//! comparison isometries and the per-boundary bending masses.
use hyperquake::benthull::{bending_data, peripheral_bending, recover_earthquake, support_planes, HullSide};
use hyperquake::holonomy::{pants_rep, Cocycle, Side};
use hyperquake::meridian::limit_set;
use hyperquake::pants::PantsLamination;

fn main() -> hyperquake::Result<()> {
    let hl = pants_rep([2.0; 3]);
    let hr = Cocycle::new(&hl, &PantsLamination::new([1.0; 3]), 6, Side::Right)?.deformed()?;
    let s = limit_set(&hl, &hr, 5)?;
    let pts = s.torus_points();
    let surf = bending_data(&pts, support_planes(&pts, HullSide::Upper)?)?;
    let cmp = recover_earthquake(&surf)?;
    let worst = cmp
        .iter()
        .zip(&surf.edges)
        .map(|(c, e)| (c.translation - 2.0 * e.weight).abs())
        .fold(0.0, f64::max);
    println!("{} points, {} faces, {} edges", pts.len(), surf.faces.len(), surf.edges.len());
    println!("right-handed: {}/{}, max |t(B) - 2 w| = {worst:e}", cmp.iter().filter(|c| c.right).count(), cmp.len());
    for n in [6, 8, 10] {
        let b = peripheral_bending(&hl, &hr, &limit_set(&hl, &hr, n)?, HullSide::Upper)?;
        let m: Vec<f64> = b.iter().map(|p| p.limit_corner).collect();
        println!("N = {n}: bending per boundary {m:.12?}");
    }
    Ok(())
}
