//! Cell trees, their expression language, exact profiles and the
//! structural growth classifier.

mod bounds;
mod classify;
mod parser;
mod profile;
mod tree;

pub use bounds::{check_bounds, BoundCheck, BoundKind, BoundsReport, MIN_BOUNDS_ORDER};
pub use classify::{
    classify, FittedConstant, Regime, RegimeReport, FLAG_BASE_NOT_CONVERGED,
    FLAG_BEYOND_KNOWN_EXAMPLES, FLAG_DEGREE_UNCERTAIN, MIN_CLASSIFY_ORDER,
};
pub use parser::{load_structure, parse};
pub use profile::{leaf_profile, profile, Profile};
pub use tree::{depth, CellTree, Leaf};
