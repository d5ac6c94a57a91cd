#![doc = include_str!("../README.md")]

pub mod cones;
pub mod counting;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod potential;
pub mod quiver;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/triangle.md")]
    pub mod triangle {}
    #[doc = include_str!("../../../book/src/quiver.md")]
    pub mod quiver {}
    #[doc = include_str!("../../../book/src/potential.md")]
    pub mod potential {}
    #[doc = include_str!("../../../book/src/cones.md")]
    pub mod cones {}
    #[doc = include_str!("../../../book/src/rays.md")]
    pub mod rays {}
    #[doc = include_str!("../../../book/src/counting.md")]
    pub mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
