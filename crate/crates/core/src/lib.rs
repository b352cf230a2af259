//! A computational laboratory for finite Σ-cyclic abelian p-groups: exact
//! group arithmetic, the indicator lattice, fully invariant subgroups,
//! endomorphism rings and their ideal lattices, the image Galois connection
//! between subgroups and ideals, symbolic ranked indicators, and a claims
//! harness that adjudicates the sharper laws by exhaustive brute force.

pub mod cardinal;
pub mod claims;
pub mod corpus;
pub mod endo;
pub mod error;
pub mod export;
pub mod galois;
pub mod group;
pub mod ideal;
pub mod indicator;
pub mod invariant;
pub mod ranked;
mod span;

pub use cardinal::{CardinalModel, CardinalValue};
pub use endo::{EndoRing, Endomorphism};
pub use error::{Error, Result};
pub use group::{Element, Group, GroupSpec, Height, Limits, Subgroup};
pub use ideal::{Ideal, IdealLabel};
pub use indicator::Indicator;
pub use ranked::RankedIndicator;
