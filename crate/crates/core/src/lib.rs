//! Exact computations with finite p-groups and their modular
//! representations: Thompson subgroups, Y- and Q-series, quadratic
//! elements and offenders.

pub mod checks;
pub mod construct;
pub mod elemab;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod linalg;
pub mod quadratic;
pub mod rep;
pub mod report;
pub mod series;
pub mod spec;
pub mod subgroup;

pub use error::{Error, Result};
pub use field::Field;
pub use group::{FiniteGroup, GroupElement, Realization};
pub use subgroup::Subgroup;
