use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::FiniteStructure;

/// A finite structure at the bottom of a tree, with the name it is printed as.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub label: String,
    pub structure: FiniteStructure,
}

/// Description of a structure built from finite leaves.
///
/// * `Union`: disjoint union of invariant parts; parts never swap, even
///   when they are identical trees.
/// * `MSetK`: `k` interchangeable copies of the child.
/// * `MSetInf`: infinitely many interchangeable copies of the child, with
///   the full symmetric group acting on the copies.
/// * `SeqDlo`: copies of the child indexed by a dense linear order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellTree {
    Leaf(Leaf),
    Union(Vec<CellTree>),
    MSetK { k: usize, child: Box<CellTree> },
    MSetInf(Box<CellTree>),
    SeqDlo(Box<CellTree>),
}

impl CellTree {
    pub fn leaf(label: impl Into<String>, structure: FiniteStructure) -> Self {
        CellTree::Leaf(Leaf {
            label: label.into(),
            structure,
        })
    }

    pub fn point() -> Self {
        Self::leaf("point", FiniteStructure::point())
    }

    /// The pure countable set, `mset_inf(point)`.
    pub fn set() -> Self {
        Self::mset_inf(Self::point())
    }

    pub fn edge() -> Self {
        Self::leaf("edge", FiniteStructure::edge())
    }

    pub fn path3() -> Self {
        Self::leaf("path3", FiniteStructure::path3())
    }

    pub fn kset(k: usize) -> Self {
        Self::leaf(format!("kset({k})"), FiniteStructure::pure(k))
    }

    /// Union of at least two parts.
    pub fn union(children: Vec<CellTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::input("union needs at least two parts"));
        }
        Ok(CellTree::Union(children))
    }

    pub fn mset(k: usize, child: CellTree) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("mset needs k >= 1"));
        }
        Ok(CellTree::MSetK {
            k,
            child: Box::new(child),
        })
    }

    pub fn mset_inf(child: CellTree) -> Self {
        CellTree::MSetInf(Box::new(child))
    }

    pub fn seq_dlo(child: CellTree) -> Self {
        CellTree::SeqDlo(Box::new(child))
    }

    pub fn children(&self) -> Vec<&CellTree> {
        match self {
            CellTree::Leaf(_) => Vec::new(),
            CellTree::Union(cs) => cs.iter().collect(),
            CellTree::MSetK { child, .. } | CellTree::MSetInf(child) | CellTree::SeqDlo(child) => {
                vec![child]
            }
        }
    }

    /// Every subtree, root first.
    pub fn subtrees(&self) -> Vec<&CellTree> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.subtrees());
        }
        out
    }

    pub fn contains_seq_dlo(&self) -> bool {
        matches!(self, CellTree::SeqDlo(_)) || self.children().iter().any(|c| c.contains_seq_dlo())
    }

    /// Number of points when the tree denotes a finite structure.
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            CellTree::Leaf(l) => Some(l.structure.universe),
            CellTree::Union(cs) => cs.iter().map(CellTree::finite_size).sum(),
            CellTree::MSetK { k, child } => child.finite_size().map(|s| s * k),
            CellTree::MSetInf(_) | CellTree::SeqDlo(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_size().is_some()
    }
}

/// Nesting depth of infinite-copy constructors: leaves have depth 0, a union
/// or `mset` has the depth of its deepest child, `mset_inf` adds one.
///
/// Trees containing `seq_dlo` are rejected.
pub fn depth(tree: &CellTree) -> Result<usize> {
    match tree {
        CellTree::Leaf(_) => Ok(0),
        CellTree::Union(cs) => cs.iter().try_fold(0, |acc, c| Ok(acc.max(depth(c)?))),
        CellTree::MSetK { child, .. } => depth(child),
        CellTree::MSetInf(child) => Ok(depth(child)? + 1),
        CellTree::SeqDlo(_) => Err(Error::NotCellular(format!(
            "`{tree}` carries a dense linear order between blocks"
        ))),
    }
}

impl fmt::Display for CellTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellTree::Leaf(l) => f.write_str(&l.label),
            CellTree::Union(cs) => {
                f.write_str("union(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            CellTree::MSetK { k, child } => write!(f, "mset({k},{child})"),
            CellTree::MSetInf(child) => write!(f, "mset_inf({child})"),
            CellTree::SeqDlo(child) => write!(f, "seq_dlo({child})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&CellTree::kset(5)).unwrap(), 0);
        assert_eq!(depth(&CellTree::mset_inf(CellTree::edge())).unwrap(), 1);
        assert_eq!(depth(&CellTree::mset_inf(CellTree::set())).unwrap(), 2);
        let u =
            CellTree::union(vec![CellTree::set(), CellTree::mset_inf(CellTree::set())]).unwrap();
        assert_eq!(depth(&u).unwrap(), 2);
        let m = CellTree::mset(3, CellTree::mset_inf(CellTree::set())).unwrap();
        assert_eq!(depth(&m).unwrap(), 2);
        assert!(matches!(
            depth(&CellTree::seq_dlo(CellTree::kset(2))),
            Err(Error::NotCellular(_))
        ));
    }

    #[test]
    fn finite_sizes() {
        assert_eq!(
            CellTree::mset(3, CellTree::path3()).unwrap().finite_size(),
            Some(9)
        );
        assert_eq!(CellTree::set().finite_size(), None);
        let u = CellTree::union(vec![CellTree::edge(), CellTree::kset(4)]).unwrap();
        assert_eq!(u.finite_size(), Some(6));
    }

    #[test]
    fn display_is_expression_syntax() {
        let t = CellTree::union(vec![
            CellTree::mset(2, CellTree::edge()).unwrap(),
            CellTree::seq_dlo(CellTree::kset(3)),
            CellTree::set(),
        ])
        .unwrap();
        assert_eq!(
            t.to_string(),
            "union(mset(2,edge),seq_dlo(kset(3)),mset_inf(point))"
        );
    }

    #[test]
    fn constructor_guards() {
        assert!(CellTree::union(vec![CellTree::point()]).is_err());
        assert!(CellTree::mset(0, CellTree::point()).is_err());
    }
}
