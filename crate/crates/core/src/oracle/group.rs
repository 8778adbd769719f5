use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::structure::FiniteStructure;
use crate::error::{Error, Result};
use crate::numeric::factorial;

/// Largest universe for which [`automorphisms`] enumerates the group.
pub const MAX_AUTOMORPHISM_UNIVERSE: usize = 10;

/// Largest element count for which closure is verified (quadratic check).
const CLOSURE_CHECK_LIMIT: usize = 4096;

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::input(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p];
                len += 1;
            }
            out.push(len);
        }
        out
    }
}

/// A permutation group, either listed element by element or composed
/// structurally from smaller groups.
///
/// Points are laid out contiguously: a product places its factors' point
/// sets one after another, and a wreath product places its `copies` blocks
/// one after another, each a copy of the base group's points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermGroup {
    Elements {
        degree: usize,
        elements: Vec<Perm>,
    },
    /// Direct product acting on the disjoint union of the factors' points.
    Product(Vec<PermGroup>),
    /// `base ≀ S_copies` in its imprimitive action.
    Wreath {
        base: Box<PermGroup>,
        copies: usize,
    },
    /// `copies` blocks of `base` standing in a finite chain taken from a
    /// dense linear order. As a group this is the direct product of the
    /// blocks; subset orbits are counted up to the maps induced by
    /// automorphisms of the ambient order, which carry the nonempty blocks
    /// of one subset onto those of another in an order-preserving way.
    Chain {
        base: Box<PermGroup>,
        copies: usize,
    },
}

impl PermGroup {
    /// A group from its full element list. Closure under composition and
    /// inverses is verified when the list is small enough for the quadratic
    /// check.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        if elements.iter().any(|g| g.degree() != degree) {
            return Err(Error::input("group elements must all have the same degree"));
        }
        let group = PermGroup::Elements { degree, elements };
        group.verify_closure()?;
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::Elements {
            degree,
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        PermGroup::Wreath {
            base: Box::new(Self::trivial(1)),
            copies: degree,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            PermGroup::Elements { degree, .. } => *degree,
            PermGroup::Product(factors) => factors.iter().map(PermGroup::degree).sum(),
            PermGroup::Wreath { base, copies } | PermGroup::Chain { base, copies } => {
                base.degree() * copies
            }
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            PermGroup::Elements { elements, .. } => BigUint::from(elements.len()),
            PermGroup::Product(factors) => factors.iter().map(PermGroup::order).product(),
            PermGroup::Wreath { base, copies } => {
                num_traits::pow(base.order(), *copies) * factorial(*copies)
            }
            PermGroup::Chain { base, copies } => num_traits::pow(base.order(), *copies),
        }
    }

    /// Checks closure under composition and inverses. Listed groups above
    /// the check limit, and structural groups, are accepted as given.
    pub fn verify_closure(&self) -> Result<()> {
        let PermGroup::Elements { degree, elements } = self else {
            return Ok(());
        };
        if elements.is_empty() {
            return Err(Error::consistency("a group needs at least the identity"));
        }
        if elements.len() > CLOSURE_CHECK_LIMIT {
            return Ok(());
        }
        let set: HashSet<&Perm> = elements.iter().collect();
        if !set.contains(&Perm::identity(*degree)) {
            return Err(Error::consistency("element list lacks the identity"));
        }
        for g in elements {
            if !set.contains(&g.inverse()) {
                return Err(Error::consistency(format!("inverse of {g:?} missing")));
            }
            for h in elements {
                if !set.contains(&g.compose(h)) {
                    return Err(Error::consistency(format!("product {g:?}∘{h:?} missing")));
                }
            }
        }
        Ok(())
    }

    /// True when some part of the group is a [`PermGroup::Chain`].
    pub fn has_chain(&self) -> bool {
        match self {
            PermGroup::Elements { .. } => false,
            PermGroup::Product(factors) => factors.iter().any(PermGroup::has_chain),
            PermGroup::Wreath { base, .. } => base.has_chain(),
            PermGroup::Chain { .. } => true,
        }
    }

    /// Lists every element, refusing when the order exceeds `budget`.
    pub fn elements(&self, budget: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order.to_usize().is_none_or(|o| o > budget) {
            return Err(Error::capacity(format!(
                "group of order {order} exceeds the listing budget {budget}"
            )));
        }
        Ok(self.list())
    }

    fn list(&self) -> Vec<Perm> {
        match self {
            PermGroup::Elements { elements, .. } => elements.clone(),
            PermGroup::Product(factors) => {
                let mut acc = vec![Vec::new()];
                for factor in factors {
                    let offset = acc[0].len();
                    let items = factor.list();
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix: Vec<usize>| {
                            items.iter().map(move |g| {
                                let mut v = prefix.clone();
                                v.extend(g.images().iter().map(|&i| i + offset));
                                v
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(Perm).collect()
            }
            PermGroup::Chain { base, copies } => {
                PermGroup::Product(vec![(**base).clone(); *copies]).list()
            }
            PermGroup::Wreath { base, copies } => {
                let d = base.degree();
                let items = base.list();
                let mut out = Vec::new();
                for top in permutations(*copies) {
                    let mut tuples: Vec<Vec<&Perm>> = vec![Vec::new()];
                    for _ in 0..*copies {
                        tuples = tuples
                            .into_iter()
                            .flat_map(|t| {
                                items.iter().map(move |g| {
                                    let mut t = t.clone();
                                    t.push(g);
                                    t
                                })
                            })
                            .collect();
                    }
                    for choice in tuples {
                        let mut images = vec![0; d * copies];
                        for (block, g) in choice.iter().enumerate() {
                            for x in 0..d {
                                images[block * d + x] = top[block] * d + g.apply(x);
                            }
                        }
                        out.push(Perm(images));
                    }
                }
                out
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

/// The automorphism group of a finite structure: exactly the permutations
/// preserving every relation and every color.
///
/// Backtracking assigns images point by point, pruning on colors, on
/// per-relation position counts, and on every tuple whose points are all
/// assigned.
pub fn automorphisms(s: &FiniteStructure) -> Result<PermGroup> {
    s.validate()?;
    let n = s.universe;
    if n > MAX_AUTOMORPHISM_UNIVERSE {
        return Err(Error::capacity(format!(
            "automorphism enumeration is limited to {MAX_AUTOMORPHISM_UNIVERSE} points, got {n}"
        )));
    }
    let colors = s.color_of();
    let relations: Vec<HashSet<Vec<usize>>> = s
        .relations
        .iter()
        .map(|r| r.tuples.iter().cloned().collect())
        .collect();

    // signature[p] = for each relation and position, how many tuples have p there
    let mut signature = vec![Vec::new(); n];
    for rel in &relations {
        let arity = rel.iter().next().map_or(0, Vec::len);
        let mut counts = vec![vec![0usize; arity]; n];
        for t in rel {
            for (pos, &p) in t.iter().enumerate() {
                counts[p][pos] += 1;
            }
        }
        for (p, c) in counts.into_iter().enumerate() {
            signature[p].extend(c);
        }
    }
    // tuples to verify once their largest point has been assigned
    let mut closing: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); n];
    for (r, rel) in relations.iter().enumerate() {
        for t in rel {
            let last = *t.iter().max().expect("arity > 0");
            closing[last].push((r, t));
        }
    }

    struct Search<'a> {
        n: usize,
        colors: &'a [Option<usize>],
        signature: &'a [Vec<usize>],
        closing: &'a [Vec<(usize, &'a Vec<usize>)>],
        relations: &'a [HashSet<Vec<usize>>],
        image: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Perm>,
    }

    impl Search<'_> {
        fn run(&mut self, p: usize) {
            if p == self.n {
                self.found.push(Perm(self.image.clone()));
                return;
            }
            for q in 0..self.n {
                if self.used[q]
                    || self.colors[p] != self.colors[q]
                    || self.signature[p] != self.signature[q]
                {
                    continue;
                }
                self.image[p] = q;
                let consistent = self.closing[p].iter().all(|(r, t)| {
                    let mapped: Vec<usize> = t.iter().map(|&x| self.image[x]).collect();
                    self.relations[*r].contains(&mapped)
                });
                if consistent {
                    self.used[q] = true;
                    self.run(p + 1);
                    self.used[q] = false;
                }
            }
        }
    }

    let mut search = Search {
        n,
        colors: &colors,
        signature: &signature,
        closing: &closing,
        relations: &relations,
        image: vec![0; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.run(0);
    Ok(PermGroup::Elements {
        degree: n,
        elements: search.found,
    })
}
