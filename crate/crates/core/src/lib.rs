//! Earthquakes on hyperbolic pairs of pants and their AdS3 counterpart.
//!
//! The crate is organised bottom-up:
//!
//! - [`moebius`]: PSL(2,R) and the boundary circle chart.
//! - [`pants`]: enhanced Teichmuller coordinates and the earthquake flow.
//! - [`holonomy`]: explicit holonomies, lifted laminations, the earthquake cocycle.
//! - [`adsgeo`]: spacelike planes of AdS3 given by their boundary graphs.
//! - [`meridian`]: limit curves on the boundary torus and extremal meridians.
//! - [`benthull`]: support planes of a meridian, bending and earthquake recovery.
//! - [`cli`]: configuration, pipelines and file output behind the binary.

pub mod adsgeo;
pub mod benthull;
pub mod cli;
pub mod error;
pub mod holonomy;
pub mod meridian;
pub mod moebius;
pub mod pants;
pub mod verify;

pub use error::{Error, Result};
pub use moebius::{CirclePoint, Class, Isometry};
