//! Thickness of discrete knots and links in R³ and S³, and packing
//! densities of thick tubes.

pub mod curves;
pub mod error;
pub mod geom;
pub mod hopf_links;
pub mod lattice;
pub mod linalg;
pub mod mesh;
pub mod montecarlo;
pub mod optim;
pub mod report;
pub mod revolved;
pub mod s2_packing;

pub use error::{Error, Result};
