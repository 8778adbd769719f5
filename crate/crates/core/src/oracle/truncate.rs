use super::group::{automorphisms, PermGroup};
use super::structure::{FiniteStructure, MAX_UNIVERSE};
use crate::cell_calc::CellTree;
use crate::error::{Error, Result};

/// Largest point count of a truncation's group description.
pub const MAX_TRUNCATION_DEGREE: usize = 1 << 20;

/// A finite piece of the structure a tree describes: every infinite family
/// of copies cut down to `width` copies.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub width: usize,
    /// Symmetry of the truncation, composed from the leaves' automorphism
    /// groups.
    pub group: PermGroup,
    /// The explicit structure, present only when it fits in
    /// [`MAX_UNIVERSE`] points.
    pub structure: Option<FiniteStructure>,
}

impl Truncation {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn structure(&self) -> Result<&FiniteStructure> {
        self.structure.as_ref().ok_or_else(|| {
            Error::capacity(format!(
                "truncation has {} points; explicit structures stop at {MAX_UNIVERSE}",
                self.degree()
            ))
        })
    }
}

/// Cuts `tree` down to `width` copies at every `mset_inf` and `seq_dlo`.
///
/// Unions become products, `mset(k, ·)` and `mset_inf` become wreath
/// products with `S_k` and `S_width`, and `seq_dlo` becomes a chain of
/// `width` blocks.
pub fn truncate(tree: &CellTree, width: usize) -> Result<Truncation> {
    if width == 0 {
        return Err(Error::input("truncation width must be at least 1"));
    }
    let degree = degree_of(tree, width).filter(|&d| d <= MAX_TRUNCATION_DEGREE);
    let Some(degree) = degree else {
        return Err(Error::capacity(format!(
            "truncation of `{tree}` at width {width} exceeds {MAX_TRUNCATION_DEGREE} points"
        )));
    };
    let group = group_of(tree, width)?;
    let structure = if degree <= MAX_UNIVERSE {
        let s = structure_of(tree, width, "");
        s.validate()?;
        Some(s)
    } else {
        None
    };
    Ok(Truncation {
        width,
        group,
        structure,
    })
}

fn degree_of(tree: &CellTree, width: usize) -> Option<usize> {
    match tree {
        CellTree::Leaf(l) => Some(l.structure.universe),
        CellTree::Union(cs) => cs
            .iter()
            .try_fold(0usize, |acc, c| acc.checked_add(degree_of(c, width)?)),
        CellTree::MSetK { k, child } => degree_of(child, width)?.checked_mul(*k),
        CellTree::MSetInf(child) | CellTree::SeqDlo(child) => {
            degree_of(child, width)?.checked_mul(width)
        }
    }
}

fn group_of(tree: &CellTree, width: usize) -> Result<PermGroup> {
    Ok(match tree {
        CellTree::Leaf(l) => automorphisms(&l.structure)?,
        CellTree::Union(cs) => PermGroup::Product(
            cs.iter()
                .map(|c| group_of(c, width))
                .collect::<Result<_>>()?,
        ),
        CellTree::MSetK { k, child } => PermGroup::Wreath {
            base: Box::new(group_of(child, width)?),
            copies: *k,
        },
        CellTree::MSetInf(child) => PermGroup::Wreath {
            base: Box::new(group_of(child, width)?),
            copies: width,
        },
        CellTree::SeqDlo(child) => PermGroup::Chain {
            base: Box::new(group_of(child, width)?),
            copies: width,
        },
    })
}

/// Explicit structure. Relation names added here carry the node's path so
/// that nested constructors never share them.
fn structure_of(tree: &CellTree, width: usize, path: &str) -> FiniteStructure {
    match tree {
        CellTree::Leaf(l) => l.structure.clone(),
        CellTree::Union(cs) => {
            let mut out = FiniteStructure {
                universe: 0,
                relations: Vec::new(),
                colors: Vec::new(),
            };
            let mut parts = Vec::new();
            for (i, c) in cs.iter().enumerate() {
                let start = out.universe;
                out.absorb(&structure_of(c, width, &format!("{path}.{i}")));
                parts.push((start..out.universe).map(|p| vec![p]).collect());
            }
            for (i, tuples) in parts.into_iter().enumerate() {
                out.add_relation(format!("part{path}.{i}"), 1, tuples);
            }
            out
        }
        CellTree::MSetK { k, child } => copies(child, *k, width, path, false),
        CellTree::MSetInf(child) => copies(child, width, width, path, false),
        CellTree::SeqDlo(child) => copies(child, width, width, path, true),
    }
}

/// `count` copies of the child, marked by an equivalence relation, or by a
/// strict order between blocks when `ordered`.
fn copies(
    child: &CellTree,
    count: usize,
    width: usize,
    path: &str,
    ordered: bool,
) -> FiniteStructure {
    let block = structure_of(child, width, &format!("{path}.0"));
    let d = block.universe;
    let mut out = FiniteStructure {
        universe: 0,
        relations: Vec::new(),
        colors: Vec::new(),
    };
    for _ in 0..count {
        out.absorb(&block);
    }
    let mut tuples = Vec::new();
    for x in 0..out.universe {
        for y in 0..out.universe {
            let (bx, by) = (x / d, y / d);
            if (ordered && bx < by) || (!ordered && bx == by) {
                tuples.push(vec![x, y]);
            }
        }
    }
    let name = if ordered {
        format!("lt{path}")
    } else {
        format!("eq{path}")
    };
    out.add_relation(name, 2, tuples);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell_calc::parse;
    use crate::oracle::burnside::burnside_orbit_counts;
    use num_traits::ToPrimitive;

    fn trunc(expr: &str, width: usize) -> Truncation {
        truncate(&parse(expr).unwrap(), width).unwrap()
    }

    #[test]
    fn pure_set_truncates_to_symmetric_group() {
        let t = trunc("mset_inf(point)", 5);
        assert_eq!(t.degree(), 5);
        assert_eq!(t.group.order().to_u64(), Some(120));
        let s = t.structure().unwrap();
        assert_eq!(s.universe, 5);
        assert_eq!(automorphisms(s).unwrap().order().to_u64(), Some(120));
    }

    #[test]
    fn disjoint_edges() {
        let t = trunc("mset_inf(edge)", 3);
        let s = t.structure().unwrap();
        assert_eq!(s.universe, 6);
        let e = s.relations.iter().find(|r| r.name == "E").unwrap();
        assert_eq!(e.tuples.len(), 6); // three edges, both directions
        assert_eq!(t.group.order().to_u64(), Some(48));
    }

    #[test]
    fn ordered_blocks() {
        let t = trunc("seq_dlo(kset(2))", 3);
        let s = t.structure().unwrap();
        assert_eq!(s.universe, 6);
        let lt = s.relations.iter().find(|r| r.name == "lt").unwrap();
        assert_eq!(lt.tuples.len(), 12);
        assert_eq!(automorphisms(s).unwrap().order().to_u64(), Some(8));
    }

    #[test]
    fn emitted_structures_have_the_structural_group() {
        for (expr, width) in [
            ("union(set,edge)", 3),
            ("mset(2,path3)", 1),
            ("mset_inf(union(point,edge))", 2),
            ("union(mset(2,edge),set)", 2),
            ("seq_dlo(union(point,point))", 3),
            ("mset_inf(mset_inf(point))", 3),
            ("union(point,point,point)", 1),
        ] {
            let t = trunc(expr, width);
            let s = t.structure().unwrap();
            let aut = automorphisms(s).unwrap();
            assert_eq!(aut.order(), t.group.order(), "{expr}");
            if !t.group.has_chain() {
                let m = t.degree();
                assert_eq!(
                    burnside_orbit_counts(&aut, m).unwrap(),
                    burnside_orbit_counts(&t.group, m).unwrap(),
                    "{expr}"
                );
            }
        }
    }

    #[test]
    fn large_truncations_keep_only_the_group() {
        let t = trunc("mset_inf(mset_inf(mset_inf(point)))", 8);
        assert_eq!(t.degree(), 512);
        assert!(t.structure.is_none());
        assert!(matches!(t.structure(), Err(Error::Capacity(_))));
        let deep =
            parse("mset_inf(mset_inf(mset_inf(mset_inf(mset_inf(mset_inf(mset_inf(point)))))))")
                .unwrap();
        assert!(matches!(truncate(&deep, 8), Err(Error::Capacity(_))));
        assert!(truncate(&deep, 0).is_err());
    }
}
