//! Subset orbits counted by canonical forms.
//!
//! Every subset gets an [`OrbitKey`] that is equal for two subsets exactly
//! when some group element maps one onto the other. For a listed group the
//! key is the minimum image; for a product it is the tuple of the factors'
//! keys; for a wreath product it is the sorted multiset of the blocks' keys.
//!
//! Orbits of `n`-subsets are grown from orbit representatives of
//! `(n-1)`-subsets: any `n`-subset is the image of some representative plus
//! one point, so adding each outside point to each representative reaches
//! every orbit. A chain of blocks keys a subset by the ordered list of its
//! nonempty traces; a finite chain may lack the empty block needed to
//! reproduce an extension, so groups containing chains are counted by
//! listing every subset instead.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::group::PermGroup;
use crate::error::{Error, Result};
use crate::numeric::binomial;

/// Work budget, in elementary key operations, for one count.
pub const WORK_BUDGET: u64 = 100_000_000;

/// Complete orbit invariant of a subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKey {
    Points(Vec<usize>),
    Tuple(Vec<OrbitKey>),
    Bag(Vec<OrbitKey>),
}

/// Canonical key of `subset` (sorted, distinct points of `g`).
pub fn orbit_key(g: &PermGroup, subset: &[usize]) -> OrbitKey {
    match g {
        PermGroup::Elements { elements, .. } => {
            let mut best: Option<Vec<usize>> = None;
            let mut image = Vec::with_capacity(subset.len());
            for e in elements {
                image.clear();
                image.extend(subset.iter().map(|&p| e.apply(p)));
                image.sort_unstable();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image.clone());
                }
            }
            OrbitKey::Points(best.unwrap_or_default())
        }
        PermGroup::Product(factors) => {
            let mut keys = Vec::with_capacity(factors.len());
            let mut offset = 0;
            let mut rest = subset;
            for f in factors {
                let d = f.degree();
                let split = rest.partition_point(|&p| p < offset + d);
                let local: Vec<usize> = rest[..split].iter().map(|p| p - offset).collect();
                keys.push(orbit_key(f, &local));
                rest = &rest[split..];
                offset += d;
            }
            OrbitKey::Tuple(keys)
        }
        PermGroup::Wreath { base, copies } => {
            let d = base.degree();
            let mut keys = Vec::with_capacity(*copies);
            let mut rest = subset;
            for block in 0..*copies {
                let start = block * d;
                let split = rest.partition_point(|&p| p < start + d);
                let local: Vec<usize> = rest[..split].iter().map(|p| p - start).collect();
                keys.push(orbit_key(base, &local));
                rest = &rest[split..];
            }
            keys.sort_unstable();
            OrbitKey::Bag(keys)
        }
        PermGroup::Chain { base, copies } => {
            let d = base.degree();
            let mut keys = Vec::new();
            let mut rest = subset;
            for block in 0..*copies {
                let start = block * d;
                let split = rest.partition_point(|&p| p < start + d);
                if split > 0 {
                    let local: Vec<usize> = rest[..split].iter().map(|p| p - start).collect();
                    keys.push(orbit_key(base, &local));
                }
                rest = &rest[split..];
            }
            OrbitKey::Tuple(keys)
        }
    }
}

/// Rough cost of one [`orbit_key`] call.
fn key_cost(g: &PermGroup) -> u64 {
    match g {
        PermGroup::Elements { elements, .. } => elements.len() as u64,
        PermGroup::Product(factors) => factors.iter().map(key_cost).sum::<u64>().max(1),
        PermGroup::Wreath { base, copies } | PermGroup::Chain { base, copies } => {
            key_cost(base).saturating_mul(*copies as u64).max(1)
        }
    }
}

/// Orbit counts on subsets of every size `0..=max_size`, by growing orbit
/// representatives one point at a time.
pub fn canonical_orbit_counts(g: &PermGroup, max_size: usize) -> Result<Vec<BigUint>> {
    if g.has_chain() {
        return (0..=max_size)
            .map(|n| exhaustive_subset_orbits(g, n))
            .collect();
    }
    let degree = g.degree();
    let cost = key_cost(g).saturating_mul(degree as u64).max(1);
    let mut work = 0u64;

    let mut counts = vec![BigUint::from(1u32)];
    let mut layer: HashMap<OrbitKey, Vec<usize>> = HashMap::new();
    layer.insert(orbit_key(g, &[]), Vec::new());
    for size in 1..=max_size {
        work = work.saturating_add((layer.len() as u64).saturating_mul(cost));
        if work > WORK_BUDGET {
            return Err(Error::capacity(format!(
                "canonical orbit count exceeds the work budget at subset size {size}"
            )));
        }
        let mut next: HashMap<OrbitKey, Vec<usize>> = HashMap::new();
        for rep in layer.values() {
            for x in 0..degree {
                if rep.binary_search(&x).is_ok() {
                    continue;
                }
                let mut grown = rep.clone();
                let at = grown.partition_point(|&p| p < x);
                grown.insert(at, x);
                let key = orbit_key(g, &grown);
                next.entry(key).or_insert(grown);
            }
        }
        counts.push(BigUint::from(next.len()));
        layer = next;
    }
    Ok(counts)
}

/// Orbits of `g` on `n`-subsets, counted as distinct canonical forms.
pub fn canonical_subset_orbits(g: &PermGroup, n: usize) -> Result<BigUint> {
    if n > g.degree() {
        return Ok(BigUint::from(0u32));
    }
    Ok(canonical_orbit_counts(g, n)?.pop().expect("n + 1 entries"))
}

/// Orbits on `n`-subsets by listing every `n`-subset and collecting the
/// distinct keys. Limited to `C(degree, n) * key cost <= WORK_BUDGET`.
pub fn exhaustive_subset_orbits(g: &PermGroup, n: usize) -> Result<BigUint> {
    let degree = g.degree();
    if n > degree {
        return Ok(BigUint::from(0u32));
    }
    let subsets = binomial(degree, n);
    let work = subsets.to_u64().map(|s| s.saturating_mul(key_cost(g)));
    if work.is_none_or(|w| w > WORK_BUDGET) {
        return Err(Error::capacity(format!(
            "exhaustive count over {subsets} subsets exceeds the work budget"
        )));
    }
    let mut keys = std::collections::HashSet::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        keys.insert(orbit_key(g, &subset));
        // next combination in lexicographic order
        let Some(i) = (0..n).rev().find(|&i| subset[i] < degree - n + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..n {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(BigUint::from(keys.len()))
}
