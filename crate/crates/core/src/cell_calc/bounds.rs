//! Inequalities between profiles of related trees, checked coefficientwise.
//!
//! * Copies sandwich: `k` labeled copies of `X` (a union) sit between `k`
//!   interchangeable copies and `k!` times them, since the labeled group has
//!   index `k!` in the wreath product.
//! * Color bound: marking `k` copies by unary colors multiplies the count by
//!   at most `2^(kn)`.
//! * Product bound: a union of two infinite parts has at most
//!   `(n+1) f_A(n) f_B(n)` orbits. When a part is finite its profile
//!   vanishes beyond its size, so the bound uses the number of nonzero terms
//!   of the convolution and the largest coefficients of each side instead.
//! * Monotonicity: an infinite structure's profile never decreases from
//!   `n = 1` on.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::profile::profile;
use super::tree::CellTree;
use crate::error::{Error, Result};
use crate::numeric::factorial;
use crate::series::Series;

/// Smallest order [`check_bounds`] accepts.
pub const MIN_BOUNDS_ORDER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    CopiesSandwich,
    ColorBound,
    ProductBound,
    Monotone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub kind: BoundKind,
    /// Path of the node the inequality is about.
    pub path: String,
    pub subject: String,
    /// Number of `n` values tested.
    pub checked: usize,
    /// The `n` values where the inequality failed.
    pub failures: Vec<usize>,
}

impl BoundCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub tree: String,
    pub order: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BoundCheck::passed)
    }

    pub fn count(&self, kind: BoundKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

/// Runs every applicable inequality on every subtree for `n <= order`.
pub fn check_bounds(tree: &CellTree, order: usize) -> Result<BoundsReport> {
    if order < MIN_BOUNDS_ORDER {
        return Err(Error::input(format!(
            "bound checks need order >= {MIN_BOUNDS_ORDER}, got {order}"
        )));
    }
    let mut checks = Vec::new();
    visit(tree, "root", order, &mut checks)?;
    Ok(BoundsReport {
        tree: tree.to_string(),
        order,
        checks,
    })
}

fn visit(tree: &CellTree, path: &str, order: usize, out: &mut Vec<BoundCheck>) -> Result<()> {
    let f = profile(tree, order)?.values;
    let mut record = |kind, failures: Vec<usize>, checked| {
        out.push(BoundCheck {
            kind,
            path: path.to_string(),
            subject: tree.to_string(),
            checked,
            failures,
        })
    };

    if !tree.is_finite() {
        let failures = (1..order)
            .filter(|&n| f.coeff(n + 1) < f.coeff(n))
            .collect();
        record(BoundKind::Monotone, failures, order - 1);
    }

    match tree {
        CellTree::MSetK { k, child } if *k >= 2 => {
            let labeled = profile(&CellTree::Union(vec![(**child).clone(); *k]), order)?.values;
            let index = factorial(*k);
            let sandwich = (0..=order)
                .filter(|&n| {
                    let (m, u) = (f.coeff(n), labeled.coeff(n));
                    !(m <= u && u <= &(&index * m))
                })
                .collect();
            record(BoundKind::CopiesSandwich, sandwich, order + 1);
            let colors = (0..=order)
                .filter(|&n| labeled.coeff(n) > &(f.coeff(n) << (k * n)))
                .collect();
            record(BoundKind::ColorBound, colors, order + 1);
        }
        CellTree::Union(children) => {
            for split in 1..children.len() {
                let side = |parts: &[CellTree]| -> Result<(Series, Option<usize>)> {
                    let t = match parts {
                        [one] => one.clone(),
                        many => CellTree::Union(many.to_vec()),
                    };
                    Ok((profile(&t, order)?.values, t.finite_size()))
                };
                let (a, size_a) = side(&children[..split])?;
                let (b, size_b) = side(&children[split..])?;
                let failures = (0..=order)
                    .filter(|&n| f.coeff(n) > &product_bound(&a, size_a, &b, size_b, n))
                    .collect();
                record(BoundKind::ProductBound, failures, order + 1);
            }
        }
        _ => {}
    }

    for (i, c) in tree.children().into_iter().enumerate() {
        visit(c, &format!("{path}.{i}"), order, out)?;
    }
    Ok(())
}

fn product_bound(
    a: &Series,
    size_a: Option<usize>,
    b: &Series,
    size_b: Option<usize>,
    n: usize,
) -> BigUint {
    if size_a.is_none() && size_b.is_none() {
        return BigUint::from(n + 1) * a.coeff(n) * b.coeff(n);
    }
    let terms = size_a.unwrap_or(n).min(size_b.unwrap_or(n)).min(n) + 1;
    let max = |s: &Series| {
        s.coeffs()[..=n]
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigUint::one)
    };
    BigUint::from(terms) * max(a) * max(b)
}
