//! Carter diagrams of simply-laced root systems: partial Cartan matrices,
//! transition matrices between homogeneous pairs, Weyl group conjugacy and
//! completion by maximal roots of D4-subsets.

pub mod cartan;
pub mod cli;
pub mod diagram;
pub mod enhance;
pub mod error;
pub mod matrix;
pub mod rootsys;
pub mod transition;
pub mod weyl;

pub use cartan::{partial_cartan, spectrum, PartialCartanMatrix, Spectrum};
pub use diagram::{registry, CarterDiagram, HomogeneousClass};
pub use error::CarterError;
pub use matrix::IntMatrix;
pub use rootsys::{build_root_system, Root, RootSystem, RootSystemType};
pub use transition::{CaseId, TransitionCase, TransitionMatrix};
pub use weyl::{GammaSet, WeylElement};
