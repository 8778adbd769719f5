//! Growth-regime classification.
//!
//! Labels and parameters come from the tree's shape alone:
//!
//! * a finite structure is `finite`;
//! * infinitely many copies of a finite block with `s` nonempty orbit types
//!   grow like `n^(s-1)`; a union of polynomial parts adds `degree + 1`,
//!   and `mset(k, ·)` of degree `d` has degree `k(d+1) - 1`;
//! * `mset_inf` of a polynomial of degree `d` is stretched exponential
//!   `exp(c n^(1-1/k))` with `k = d + 2`;
//! * `mset_inf` of a stretched exponential with parameter `k` grows like
//!   `exp(c n / (log n)^(1/(k-1)))`, and every further `mset_inf` adds one
//!   iterated logarithm;
//! * `seq_dlo` of a finite block is exponential with base `1/ρ`, `F(ρ) = 2`.
//!
//! In a union the deeper part wins, then the larger `k`. The profile itself
//! only supplies diagnostics: an empirical polynomial degree, an empirical
//! exponential base and a fitted constant for the regime's normalizer.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::profile::profile;
use super::tree::{depth, CellTree};
use crate::error::{Error, Result};
use crate::numeric::{iterated_ln, ln_big, ratio_f64};
use crate::series::{growth_base, structural_base, GrowthBase};

/// Smallest order [`classify`] accepts.
pub const MIN_CLASSIFY_ORDER: usize = 256;

pub const FLAG_DEGREE_UNCERTAIN: &str = "degree_uncertain";
pub const FLAG_BEYOND_KNOWN_EXAMPLES: &str = "beyond_known_examples";
pub const FLAG_BASE_NOT_CONVERGED: &str = "base_not_converged";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Finite,
    Polynomial,
    StretchedExponential,
    LogIterated,
    Exponential,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Finite => "finite",
            Regime::Polynomial => "polynomial",
            Regime::StretchedExponential => "stretched_exponential",
            Regime::LogIterated => "log_iterated",
            Regime::Exponential => "exponential",
        }
    }
}

/// Normalizer values at `n = N/4, N/2, N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FittedConstant {
    /// Value at `N`.
    pub value: f64,
    /// `(max - min) / value` over the samples.
    pub spread: f64,
    pub samples: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Absent for trees containing `seq_dlo`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_base: Option<GrowthBase>,
    /// Degrees `round(log2(f(2m)/f(m)))` for `m = N/8, N/4, N/2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_degrees: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_constant: Option<FittedConstant>,
    pub dominant_path: String,
    pub order: usize,
    pub flags: Vec<String>,
}

impl RegimeReport {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// The regime's normalizer at `n`:
    ///
    /// * polynomial: `f(n) / n^degree`
    /// * stretched exponential: `ln f(n) / n^(1-1/k)`
    /// * log-iterated: `ln f(n) (ln^(r) n)^(1/k) / n`
    /// * exponential: `ln f(n) / n`
    ///
    /// `None` for finite structures and where the expression is undefined.
    pub fn normalizer(&self, n: usize, value: &BigUint) -> Option<f64> {
        normalizer(self.regime, self.degree, self.k, self.r, n, value)
    }
}

fn normalizer(
    regime: Regime,
    degree: Option<usize>,
    k: Option<usize>,
    r: Option<usize>,
    n: usize,
    value: &BigUint,
) -> Option<f64> {
    if n == 0 || value.is_zero() {
        return None;
    }
    let x = n as f64;
    match regime {
        Regime::Finite => None,
        Regime::Polynomial => {
            let d = degree? as i32;
            let log = ln_big(value) - f64::from(d) * x.ln();
            Some(log.exp())
        }
        Regime::StretchedExponential => {
            let k = k? as f64;
            Some(ln_big(value) / x.powf(1.0 - 1.0 / k))
        }
        Regime::LogIterated => {
            let inner = iterated_ln(x, u32::try_from(r?).ok()?)?;
            let k = k? as f64;
            (inner > 0.0).then(|| ln_big(value) * inner.powf(1.0 / k) / x)
        }
        Regime::Exponential => Some(ln_big(value) / x),
    }
}

/// Structural shape of a subtree.
#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Finite,
    Polynomial { degree: usize },
    Stretched { k: usize },
    LogIterated { r: usize, k: usize },
    Exponential { base: f64, structural: bool },
}

impl Shape {
    /// Dominance order used inside unions.
    fn dominance(&self, other: &Shape) -> Ordering {
        use Shape::*;
        let rank = |s: &Shape| match s {
            Finite => 0,
            Polynomial { .. } => 1,
            Stretched { .. } => 2,
            LogIterated { .. } => 3,
            Exponential { .. } => 4,
        };
        match (self, other) {
            (Polynomial { degree: a }, Polynomial { degree: b }) => a.cmp(b),
            (Stretched { k: a }, Stretched { k: b }) => a.cmp(b),
            (LogIterated { r: ra, k: ka }, LogIterated { r: rb, k: kb }) => (ra, ka).cmp(&(rb, kb)),
            (Exponential { base: a, .. }, Exponential { base: b, .. }) => a.total_cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

struct Analysis {
    shape: Shape,
    path: String,
    flags: Vec<String>,
}

struct Classifier {
    order: usize,
}

impl Classifier {
    fn analyze(&self, tree: &CellTree, path: &str) -> Result<Analysis> {
        let here = |shape: Shape, flags: Vec<String>| Analysis {
            shape,
            path: path.to_string(),
            flags,
        };
        if tree.is_finite() {
            return Ok(here(Shape::Finite, Vec::new()));
        }
        match tree {
            CellTree::Leaf(_) => Ok(here(Shape::Finite, Vec::new())),
            CellTree::Union(children) => {
                let parts = children
                    .iter()
                    .enumerate()
                    .map(|(i, c)| self.analyze(c, &format!("{path}.{i}")))
                    .collect::<Result<Vec<_>>>()?;
                let flags = merged_flags(&parts);
                let best = parts
                    .iter()
                    .max_by(|a, b| a.shape.dominance(&b.shape))
                    .expect("union has parts");
                let shape = match best.shape {
                    Shape::Polynomial { .. } => Shape::Polynomial {
                        degree: parts
                            .iter()
                            .filter_map(|p| match p.shape {
                                Shape::Polynomial { degree } => Some(degree + 1),
                                _ => None,
                            })
                            .sum::<usize>()
                            - 1,
                    },
                    ref other => other.clone(),
                };
                Ok(Analysis {
                    shape,
                    path: best.path.clone(),
                    flags,
                })
            }
            CellTree::MSetK { k, child } => {
                let inner = self.analyze(child, &format!("{path}.0"))?;
                let shape = match inner.shape {
                    Shape::Polynomial { degree } => Shape::Polynomial {
                        degree: k * (degree + 1) - 1,
                    },
                    other => other,
                };
                Ok(Analysis { shape, ..inner })
            }
            CellTree::MSetInf(child) => {
                let inner = self.analyze(child, &format!("{path}.0"))?;
                let mut flags = inner.flags;
                let shape = match inner.shape {
                    Shape::Finite => {
                        let f = profile(child, child.finite_size().unwrap_or(1).max(1))?.values;
                        let types: BigUint = f.coeffs().iter().skip(1).sum();
                        let types =
                            usize::try_from(types).map_err(|_| Error::input("block too large"))?;
                        Shape::Polynomial { degree: types - 1 }
                    }
                    Shape::Polynomial { degree } => Shape::Stretched { k: degree + 2 },
                    Shape::Stretched { k } => Shape::LogIterated { r: 1, k: k - 1 },
                    Shape::LogIterated { r, k } => Shape::LogIterated { r: r + 1, k },
                    Shape::Exponential { .. } => {
                        push_flag(&mut flags, FLAG_BEYOND_KNOWN_EXAMPLES);
                        self.empirical(tree, &mut flags)?
                    }
                };
                Ok(Analysis {
                    shape,
                    path: path.to_string(),
                    flags,
                })
            }
            CellTree::SeqDlo(child) => {
                let inner = self.analyze(child, &format!("{path}.0"))?;
                let mut flags = inner.flags;
                let shape = match inner.shape {
                    Shape::Finite => {
                        let block = profile(child, child.finite_size().unwrap_or(1).max(1))?.values;
                        let total: BigUint = block.coeffs().iter().sum();
                        if total == BigUint::from(2u32) {
                            // a single point: the order itself, one orbit per size
                            Shape::Polynomial { degree: 0 }
                        } else {
                            Shape::Exponential {
                                base: structural_base(&block)?,
                                structural: true,
                            }
                        }
                    }
                    _ => {
                        push_flag(&mut flags, FLAG_BEYOND_KNOWN_EXAMPLES);
                        self.empirical(tree, &mut flags)?
                    }
                };
                Ok(Analysis {
                    shape,
                    path: path.to_string(),
                    flags,
                })
            }
        }
    }

    fn empirical(&self, tree: &CellTree, flags: &mut Vec<String>) -> Result<Shape> {
        let g = growth_base(&profile(tree, self.order)?.values)?;
        if !g.converged {
            push_flag(flags, FLAG_BASE_NOT_CONVERGED);
        }
        Ok(Shape::Exponential {
            base: g.estimate,
            structural: false,
        })
    }
}

fn push_flag(flags: &mut Vec<String>, flag: &str) {
    if !flags.iter().any(|f| f == flag) {
        flags.push(flag.to_string());
    }
}

fn merged_flags(parts: &[Analysis]) -> Vec<String> {
    let mut out = Vec::new();
    for p in parts {
        for f in &p.flags {
            push_flag(&mut out, f);
        }
    }
    out
}

/// Classifies the growth regime of `tree` from its shape and attaches
/// diagnostics computed from the profile to order `order >= 256`.
pub fn classify(tree: &CellTree, order: usize) -> Result<RegimeReport> {
    if order < MIN_CLASSIFY_ORDER {
        return Err(Error::input(format!(
            "classification needs order >= {MIN_CLASSIFY_ORDER}, got {order}"
        )));
    }
    let analysis = Classifier { order }.analyze(tree, "root")?;
    let values = profile(tree, order)?.values;
    let mut flags = analysis.flags;

    let (regime, degree, k, r, base) = match analysis.shape {
        Shape::Finite => (Regime::Finite, None, None, None, None),
        Shape::Polynomial { degree } => (Regime::Polynomial, Some(degree), None, None, None),
        Shape::Stretched { k } => (Regime::StretchedExponential, None, Some(k), None, None),
        Shape::LogIterated { r, k } => (Regime::LogIterated, None, Some(k), Some(r), None),
        Shape::Exponential { base, .. } => (Regime::Exponential, None, None, None, Some(base)),
    };

    let empirical_degrees = (regime == Regime::Polynomial).then(|| {
        [order / 8, order / 4, order / 2]
            .iter()
            .map(|&m| {
                ratio_f64(values.coeff(2 * m), values.coeff(m))
                    .log2()
                    .round() as i64
            })
            .collect::<Vec<_>>()
    });
    if let (Some(found), Some(d)) = (&empirical_degrees, degree) {
        if found.iter().any(|&e| e != d as i64) {
            push_flag(&mut flags, FLAG_DEGREE_UNCERTAIN);
        }
    }

    let empirical_base = if regime == Regime::Exponential {
        let g = growth_base(&values)?;
        if !g.converged {
            push_flag(&mut flags, FLAG_BASE_NOT_CONVERGED);
        }
        Some(g)
    } else {
        None
    };

    let fitted_constant = {
        let samples: Vec<(usize, f64)> = [order / 4, order / 2, order]
            .iter()
            .filter_map(|&n| Some((n, normalizer(regime, degree, k, r, n, values.coeff(n))?)))
            .collect();
        (samples.len() == 3).then(|| {
            let value = samples[2].1;
            let (lo, hi) = samples
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| {
                    (lo.min(v), hi.max(v))
                });
            FittedConstant {
                value,
                spread: (hi - lo) / value.abs(),
                samples,
            }
        })
    };

    Ok(RegimeReport {
        regime,
        depth: depth(tree).ok(),
        degree,
        k,
        r,
        base,
        empirical_base,
        empirical_degrees,
        fitted_constant,
        dominant_path: analysis.path,
        order,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell_calc::parse;

    fn report(expr: &str) -> RegimeReport {
        classify(&parse(expr).unwrap(), 256).unwrap()
    }

    #[test]
    fn documented_examples() {
        let r = report("mset_inf(point)");
        assert_eq!((r.regime, r.degree), (Regime::Polynomial, Some(0)));
        assert!((r.fitted_constant.unwrap().value - 1.0).abs() < 1e-12);

        let r = report("mset_inf(mset_inf(point))");
        assert_eq!(
            (r.regime, r.k, r.depth),
            (Regime::StretchedExponential, Some(2), Some(2))
        );

        let r = report("mset_inf(mset_inf(mset_inf(point)))");
        assert_eq!(
            (r.regime, r.r, r.k),
            (Regime::LogIterated, Some(1), Some(1))
        );

        let r = report("seq_dlo(kset(2))");
        assert_eq!(r.regime, Regime::Exponential);
        assert!((r.base.unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(r.depth.is_none());
        assert_eq!(report("kset(4)").regime, Regime::Finite);
    }

    #[test]
    fn polynomial_degrees() {
        assert_eq!(report("union(set,set,set)").degree, Some(2));
        assert_eq!(report("mset_inf(edge)").degree, Some(1));
        assert_eq!(report("mset_inf(path3)").degree, Some(4));
        assert_eq!(report("union(set,kset(3))").degree, Some(0));
        assert_eq!(report("mset(3,set)").degree, Some(2));
        for expr in [
            "union(set,set,set)",
            "mset_inf(edge)",
            "mset_inf(kset(3))",
            "mset(2,set)",
        ] {
            let r = report(expr);
            assert!(!r.has_flag(FLAG_DEGREE_UNCERTAIN), "{expr}: {r:?}");
        }
    }

    #[test]
    fn union_dominance() {
        let r = report("union(mset_inf(mset_inf(edge)),mset_inf(set),set)");
        assert_eq!((r.regime, r.k), (Regime::StretchedExponential, Some(3)));
        assert_eq!(r.dominant_path, "root.0");
        let r = report("union(mset_inf(set),mset_inf(mset_inf(set)))");
        assert_eq!(
            (r.regime, r.r, r.k),
            (Regime::LogIterated, Some(1), Some(1))
        );
        assert_eq!(r.dominant_path, "root.1");
    }

    #[test]
    fn ordered_extension() {
        let r = report("seq_dlo(set)");
        assert_eq!(r.regime, Regime::Exponential);
        assert!(r.has_flag(FLAG_BEYOND_KNOWN_EXAMPLES));
        let r = report("seq_dlo(point)");
        assert_eq!((r.regime, r.degree), (Regime::Polynomial, Some(0)));
        let r = report("union(seq_dlo(kset(3)),mset_inf(set))");
        assert_eq!(r.regime, Regime::Exponential);
        assert!(!r.has_flag(FLAG_BEYOND_KNOWN_EXAMPLES));
    }

    #[test]
    fn order_guard_and_json_shape() {
        assert!(classify(&CellTree::set(), 255).is_err());
        let json = serde_json::to_value(report("mset_inf(mset_inf(point))")).unwrap();
        assert_eq!(json["regime"], "stretched_exponential");
        assert_eq!(json["k"], 2);
        assert!(json.get("r").is_none());
        let finite = serde_json::to_value(report("kset(4)")).unwrap();
        assert_eq!(finite["regime"], "finite");
    }
}
