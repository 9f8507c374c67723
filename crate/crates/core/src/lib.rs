//! Bounds on the analog category of finite groups, with machine checks of
//! the combinatorics and homology they rest on.

pub mod arith;
pub mod bounds;
pub mod config;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod homology;
pub mod simplex;
pub mod sylow;
pub mod verify;

pub use config::Caps;
pub use error::{Error, ErrorKind, Result};
pub use group::{FiniteGroup, GroupSpec, SubgroupSet};
pub use bounds::{AcatReport, Sharpness};
pub use sylow::PIntersectionLattice;
