//! Adaptive design optimization on discrete grids, with tools for measuring
//! how the choice of prior shapes what ADO learns.

pub mod belief;
pub mod cli;
pub mod dist;
pub mod efd;
pub mod error;
pub mod models;
pub mod policy;
pub mod rng;
pub mod sim;
pub mod utility;

pub use belief::{FocusKind, JointBelief, Role};
pub use dist::{DiscreteDist, Support};
pub use error::{Error, Result};
pub use models::{ResponseFamily, ResponseModel};
pub use utility::UtilityKind;
