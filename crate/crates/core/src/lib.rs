//! Exact orbit-growth profiles for hereditarily cellular structures.
//!
//! A structure is described by a [`CellTree`] built from finite leaves with
//! four constructors: invariant union, `k` interchangeable copies, infinitely
//! many interchangeable copies, and copies indexed by a dense linear order.
//! For such a tree the crate computes `f(n)`, the number of orbits of the
//! automorphism group on `n`-element subsets, as an exact big-integer
//! sequence, classifies its asymptotic regime, and cross-checks everything
//! against an independent oracle that counts subset orbits of finite
//! truncations by Burnside's lemma and by canonical forms.
//!
//! ```
//! use cellgrowth::{parse, profile};
//!
//! let tree = parse("mset_inf(set)").unwrap();
//! let p = profile(&tree, 8).unwrap();
//! let values: Vec<u64> = p.values.to_u64_vec().unwrap();
//! assert_eq!(values, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
//! ```

pub mod cell_calc;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod series;
pub mod witness;

pub use cell_calc::{
    check_bounds, classify, depth, leaf_profile, parse, profile, BoundsReport, CellTree, Profile,
    Regime, RegimeReport,
};
pub use error::{Error, Result};
pub use oracle::{agreement_check, FiniteStructure, PermGroup, TruncationReport};
pub use series::Series;
pub use witness::{check_factorial_floor, count_coded_graphs, WitnessCount};
