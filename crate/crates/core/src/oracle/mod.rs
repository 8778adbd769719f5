//! Independent ground truth for the calculus.
//!
//! A tree is cut down to a finite truncation whose symmetry group is
//! composed from the automorphism groups of its leaves, and subset orbits
//! of the truncation are counted twice: by Burnside's lemma over cycle
//! types, and by collecting canonical forms of subsets. Both counts must
//! match each other and the profile.

pub mod agreement;
pub mod burnside;
pub mod canonical;
pub mod group;
pub mod structure;
pub mod truncate;

pub use agreement::{agreement_check, AgreementRow, TruncationReport};
pub use burnside::{
    burnside_orbit_counts, burnside_subset_orbits, fixed_subset_sum, FixedSubsetSum,
};
pub use canonical::{canonical_orbit_counts, canonical_subset_orbits, orbit_key, OrbitKey};
pub use group::{automorphisms, Perm, PermGroup};
pub use structure::{FiniteStructure, Relation};
pub use truncate::{truncate, Truncation};
