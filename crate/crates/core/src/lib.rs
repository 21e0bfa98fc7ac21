//! Finite hypersemigroups and Gamma-semigroups.
//!
//! Bit-vector subset products, left/right/bi-ideal theory written once over
//! [`ideals::SubsetAlgebra`], a law harness that instance-checks the bi-ideal
//! results on concrete tables, and exhaustive enumeration of small tables.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod gamma;
pub mod hyper;
pub mod ideals;
pub mod laws;
pub mod structure;
pub mod subset;

pub use error::{AssociativityViolation, Error, Result};
pub use gamma::GammaTable;
pub use hyper::{HyperTable, HypergroupVerdict};
pub use ideals::{IdealKind, SubsetAlgebra};
pub use laws::{verify_exhaustive, verify_structure, CheckId, HarnessConfig, LawReport, Outcome};
pub use structure::{Shape, Structure};
pub use subset::{enumerate_nonempty_subsets, Carrier, Subset};
