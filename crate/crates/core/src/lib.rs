//! Littlewood-Richardson coefficients through integer hives, the hive ring,
//! the octahedron-recurrence excavation bijection behind its associativity,
//! honeycombs, and matching closed forms for the excavated labels.

pub mod cli;
pub mod error;
pub mod excavation;
pub mod hive;
pub mod honeycomb;
pub mod laurent;
pub mod oracle;
pub mod ring;
pub mod speyer;
pub mod weight;

pub use error::{Error, Result};
pub use hive::{boundary_of, count_hives, enumerate_hives, validate_hive, BoundarySpec, Hive, TriPoint};
pub use weight::Weight;
