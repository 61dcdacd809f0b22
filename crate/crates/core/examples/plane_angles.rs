//! Dihedral angle of two spacelike planes from boundary data and from the quadric.
use hyperquake::adsgeo::{ambient_angle, common_boundary, plane_angle, SpacelikePlane};
use hyperquake::Isometry;

fn main() -> hyperquake::Result<()> {
    let p = SpacelikePlane::new(Isometry::new(2.0, 1.0, 1.0, 1.0)?);
    for w in [0.5, 1.0, 3.0] {
        let q = SpacelikePlane::new(p.a * Isometry::dilation(w));
        println!(
            "w = {w}: boundary angle {:.12}, quadric angle {:.12}, common points {:?}",
            plane_angle(&p, &q, 1)?,
            ambient_angle(&p, &q)?,
            common_boundary(&p, &q)
        );
    }
    Ok(())
}
