use num_bigint::BigUint;
use num_traits::Zero;

use super::tree::CellTree;
use crate::error::{Error, Result};
use crate::oracle::{automorphisms, burnside_orbit_counts, FiniteStructure};
use crate::series::{euler_transform, mset_k_transform, mul, seq_transform, Series};

/// Exact profile `f(0..=order)` of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub tree: CellTree,
    pub values: Series,
}

impl Profile {
    pub fn order(&self) -> usize {
        self.values.order()
    }

    pub fn value(&self, n: usize) -> &BigUint {
        self.values.coeff(n)
    }
}

/// Orbit counts of the automorphism group of `s` on `i`-subsets, for
/// `i = 0..=|s|`.
pub fn leaf_profile(s: &FiniteStructure) -> Result<Series> {
    let group = automorphisms(s)?;
    Series::new(burnside_orbit_counts(&group, s.universe)?)
}

pub fn profile(tree: &CellTree, order: usize) -> Result<Profile> {
    if order == 0 {
        return Err(Error::input("profile order must be at least 1"));
    }
    Ok(Profile {
        tree: tree.clone(),
        values: evaluate(tree, order)?,
    })
}

fn evaluate(tree: &CellTree, order: usize) -> Result<Series> {
    match tree {
        CellTree::Leaf(l) => {
            let mut coeffs = leaf_profile(&l.structure)?.into_coeffs();
            coeffs.resize(order + 1, BigUint::zero());
            Series::new(coeffs)
        }
        CellTree::Union(children) => {
            let mut acc = Series::one(order);
            for c in children {
                acc = mul(&acc, &evaluate(c, order)?, order)?;
            }
            Ok(acc)
        }
        CellTree::MSetK { k, child } => mset_k_transform(&evaluate(child, order)?, *k, order),
        CellTree::MSetInf(child) => euler_transform(&evaluate(child, order)?, order),
        CellTree::SeqDlo(child) => seq_transform(&evaluate(child, order)?, order),
    }
}
