//! The eight extremal meridians of a pants pair and the corner each one takes.
use hyperquake::holonomy::pants_rep;
use hyperquake::meridian::{all_extremal, limit_set, rectangles, ArcChoice};

fn main() -> hyperquake::Result<()> {
    let (hl, hr) = (pants_rep([2.0, 1.0, 1.5]), pants_rep([1.0, 2.5, 2.0]));
    let s = limit_set(&hl, &hr, 6)?;
    let r = rectangles(&hl, &hr, &s);
    for (choices, m) in all_extremal(&hl, &hr, &s, &r)? {
        let tag: String = choices.iter().map(|c| if *c == ArcChoice::Lower { 'L' } else { 'U' }).collect();
        let through: Vec<&str> = r
            .rects
            .iter()
            .map(|rc| match (m.contains(&rc.corner(ArcChoice::Lower), 1e-12), m.contains(&rc.corner(ArcChoice::Upper), 1e-12)) {
                (true, false) => "p+-",
                (false, true) => "p-+",
                _ => "both?",
            })
            .collect();
        println!("{tag}: {} samples, passes {through:?}", m.samples.len());
    }
    Ok(())
}
