use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest universe a [`FiniteStructure`] may have.
pub const MAX_UNIVERSE: usize = 14;

/// A named relation of fixed arity, given by its tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub tuples: Vec<Vec<usize>>,
}

/// An explicit finite relational structure on `0..universe`.
///
/// `colors` are pairwise disjoint unary predicates; points outside every
/// color are uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteStructure {
    pub universe: usize,
    #[serde(default)]
    pub relations: Vec<Relation>,
    #[serde(default)]
    pub colors: Vec<Vec<usize>>,
}

impl FiniteStructure {
    /// A structure with no relations.
    pub fn pure(universe: usize) -> Self {
        FiniteStructure {
            universe,
            relations: Vec::new(),
            colors: Vec::new(),
        }
    }

    pub fn point() -> Self {
        Self::pure(1)
    }

    /// Two vertices joined by an undirected edge.
    pub fn edge() -> Self {
        Self::graph(2, &[(0, 1)])
    }

    /// The path `0 - 1 - 2`.
    pub fn path3() -> Self {
        Self::graph(3, &[(0, 1), (1, 2)])
    }

    /// A simple undirected graph, stored as a symmetric relation `E`.
    pub fn graph(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let tuples = edges
            .iter()
            .flat_map(|&(a, b)| [vec![a, b], vec![b, a]])
            .collect();
        FiniteStructure {
            universe: vertices,
            relations: vec![Relation {
                name: "E".into(),
                arity: 2,
                tuples,
            }],
            colors: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: FiniteStructure = serde_json::from_str(text)
            .map_err(|e| Error::Structure(format!("bad structure JSON: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }

    /// Checks the universe bound, tuple arities and ranges, and color
    /// disjointness.
    pub fn validate(&self) -> Result<()> {
        if self.universe == 0 {
            return Err(Error::Structure("universe must be nonempty".into()));
        }
        if self.universe > MAX_UNIVERSE {
            return Err(Error::capacity(format!(
                "universe of {} points exceeds the limit of {MAX_UNIVERSE}",
                self.universe
            )));
        }
        for rel in &self.relations {
            if rel.arity == 0 {
                return Err(Error::Structure(format!(
                    "relation `{}` has arity 0",
                    rel.name
                )));
            }
            for t in &rel.tuples {
                if t.len() != rel.arity {
                    return Err(Error::Structure(format!(
                        "tuple {t:?} of `{}` does not have arity {}",
                        rel.name, rel.arity
                    )));
                }
                if let Some(&p) = t.iter().find(|&&p| p >= self.universe) {
                    return Err(Error::Structure(format!(
                        "tuple {t:?} of `{}` mentions point {p} outside the universe",
                        rel.name
                    )));
                }
            }
        }
        let mut seen = HashSet::new();
        for color in &self.colors {
            for &p in color {
                if p >= self.universe {
                    return Err(Error::Structure(format!(
                        "colored point {p} outside the universe"
                    )));
                }
                if !seen.insert(p) {
                    return Err(Error::Structure(format!("point {p} carries two colors")));
                }
            }
        }
        Ok(())
    }

    /// Color index of each point.
    pub(crate) fn color_of(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.universe];
        for (c, members) in self.colors.iter().enumerate() {
            for &p in members {
                out[p] = Some(c);
            }
        }
        out
    }

    /// Disjoint union with `other` placed after the current points. Relations
    /// with the same name are merged; colors are merged by index.
    pub(crate) fn absorb(&mut self, other: &FiniteStructure) {
        let offset = self.universe;
        for rel in &other.relations {
            let shifted = rel
                .tuples
                .iter()
                .map(|t| t.iter().map(|p| p + offset).collect());
            match self
                .relations
                .iter_mut()
                .find(|r| r.name == rel.name && r.arity == rel.arity)
            {
                Some(existing) => existing.tuples.extend(shifted),
                None => self.relations.push(Relation {
                    name: rel.name.clone(),
                    arity: rel.arity,
                    tuples: shifted.collect(),
                }),
            }
        }
        for (c, members) in other.colors.iter().enumerate() {
            if self.colors.len() <= c {
                self.colors.resize(c + 1, Vec::new());
            }
            self.colors[c].extend(members.iter().map(|p| p + offset));
        }
        self.universe += other.universe;
    }

    pub(crate) fn add_relation(&mut self, name: String, arity: usize, tuples: Vec<Vec<usize>>) {
        self.relations.push(Relation {
            name,
            arity,
            tuples,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"universe":3,"relations":[{"name":"E","arity":2,"tuples":[[0,1],[1,0]]}],"colors":[[2]]}"#;
        let s = FiniteStructure::from_json(text).unwrap();
        assert_eq!(s.universe, 3);
        assert_eq!(FiniteStructure::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn missing_optional_fields_default() {
        let s = FiniteStructure::from_json(r#"{"universe":4}"#).unwrap();
        assert_eq!(s, FiniteStructure::pure(4));
    }

    #[test]
    fn rejects_bad_structures() {
        let bad = [
            r#"{"universe":2,"relations":[{"name":"E","arity":2,"tuples":[[0,2]]}]}"#,
            r#"{"universe":2,"relations":[{"name":"E","arity":2,"tuples":[[0]]}]}"#,
            r#"{"universe":3,"colors":[[0,1],[1]]}"#,
            r#"{"universe":0}"#,
            r#"{"universe":2,"extra":1}"#,
        ];
        for text in bad {
            assert!(
                matches!(FiniteStructure::from_json(text), Err(Error::Structure(_))),
                "{text}"
            );
        }
        assert!(matches!(
            FiniteStructure::from_json(r#"{"universe":15}"#),
            Err(Error::Capacity(_))
        ));
    }
}
