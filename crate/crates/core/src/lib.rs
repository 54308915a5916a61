//! Characteristics of nilpotent orbits in representations of reductive
//! groups, computed from the hyperplane arrangement of the weights in the
//! dominant chamber.

pub mod arrangement;
pub mod config;
pub mod io;
pub mod liecore;
pub mod lp;
pub mod minnorm;
pub mod orbits;
pub mod rational;
pub mod svg;
pub mod verify;
