use num_bigint::BigUint;
use serde::Serialize;

use super::burnside::burnside_orbit_counts;
use super::canonical::canonical_orbit_counts;
use super::truncate::truncate;
use crate::cell_calc::{profile, CellTree};
use crate::error::{Error, Result};
use crate::numeric::decimal;

/// One size `n`: the calculus value and both oracle counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementRow {
    pub n: usize,
    #[serde(with = "decimal")]
    pub calculus: BigUint,
    #[serde(with = "decimal")]
    pub burnside: BigUint,
    #[serde(with = "decimal")]
    pub canonical: BigUint,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub tree: String,
    pub width: usize,
    pub rows: Vec<AgreementRow>,
}

impl TruncationReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn first_disagreement(&self) -> Option<&AgreementRow> {
        self.rows.iter().find(|r| !r.agree)
    }
}

/// Compares the profile of `tree` with subset-orbit counts of its width
/// `width` truncation, for every `n <= n_max`.
///
/// An `n`-subset meets at most `n` copies at each level, so counts only
/// stabilize once `width >= n`; for trees with infinite constructors a
/// larger `n_max` is refused.
pub fn agreement_check(tree: &CellTree, width: usize, n_max: usize) -> Result<TruncationReport> {
    if !tree.is_finite() && n_max > width {
        return Err(Error::input(format!(
            "n_max = {n_max} exceeds the truncation width {width}"
        )));
    }
    let calculus = profile(tree, n_max.max(1))?.values.into_coeffs();
    let t = truncate(tree, width)?;
    let burnside = burnside_orbit_counts(&t.group, n_max)?;
    let canonical = canonical_orbit_counts(&t.group, n_max)?;
    let rows = (0..=n_max)
        .map(|n| {
            let (c, b, k) = (
                calculus[n].clone(),
                burnside[n].clone(),
                canonical[n].clone(),
            );
            AgreementRow {
                n,
                agree: c == b && b == k,
                calculus: c,
                burnside: b,
                canonical: k,
            }
        })
        .collect();
    Ok(TruncationReport {
        tree: tree.to_string(),
        width,
        rows,
    })
}
