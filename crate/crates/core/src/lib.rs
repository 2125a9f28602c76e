//! Classification of extremal elliptic K3 surfaces whose singular fibers are
//! not all of type `I_n`: fiber configurations, Mordell-Weil torsion from the
//! height pairing, and realizability through discriminant-form gluing.

pub mod arith;
pub mod config;
pub mod group;
pub mod kodaira;
pub mod lattice;
pub mod mordell_weil;
pub mod realizability;
pub mod report;

pub use config::{Case, ConfigError, Configuration, QInvariants};
pub use group::AbelianGroup;
pub use kodaira::{ComponentGroup, FiberParseError, FiberType};
pub use lattice::{DCoordinateLattice, DiscriminantForm, DynkinLabel, GramLattice, LatticeError};
