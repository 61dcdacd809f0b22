//! Limit set of a left/right holonomy pair written as `word,x,y` CSV.
use hyperquake::cli::limitset_csv;
use hyperquake::holonomy::pants_rep;
use hyperquake::meridian::limit_set;

fn main() -> hyperquake::Result<()> {
    let s = limit_set(&pants_rep([2.0, 2.0, 2.0]), &pants_rep([1.0, 3.0, 2.5]), 4)?;
    eprintln!("{} points, max gap {:.4}", s.len(), s.max_gap());
    print!("{}", limitset_csv(&s));
    Ok(())
}
