//! Burnside counting of subset orbits.
//!
//! An element with cycle lengths `l_1, l_2, ...` fixes `[t^n] prod (1 + t^l_i)`
//! subsets of size `n`. [`FixedSubsetSum`] holds the sum of these
//! polynomials over all group elements, truncated at a maximum subset size,
//! together with the group order; the orbit count on `n`-subsets is the
//! `n`-th coefficient divided by the order.
//!
//! Listed groups are summed element by element. Products multiply the sums.
//! For `G ≀ S_N` the elements are grouped by the conjugacy class of their
//! image in `S_N`: a block cycle of length `j` whose base elements multiply
//! to `h` contributes the cycles of `h` stretched by `j`, and each product
//! `h` arises from `|G|^(j-1)` choices of base elements, so a class with
//! `m_j` cycles of length `j` contributes
//! `prod_j (|G|^(j-1) S_G(t^j))^(m_j)` times the class size `N!/z_λ`.
//!
//! A chain of `N` blocks is not a group action on its subsets. Its orbits
//! are counted from the base group's Burnside orbits: a subset meeting `j`
//! blocks is determined by the ordered list of its `j` nonempty traces, so
//! the orbit series is `sum_(j<=N) (F - 1)^j` for the base orbit series `F`.
//! It enters further products and wreaths as a virtual group of order 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{Perm, PermGroup};
use crate::error::{Error, Result};
use crate::numeric::factorial;

/// Sum over group elements of their fixed-subset polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubsetSum {
    /// Coefficients of `t^0..=t^max_size`.
    sum: Vec<BigUint>,
    order: BigUint,
}

impl FixedSubsetSum {
    pub fn max_size(&self) -> usize {
        self.sum.len() - 1
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Total number of (element, fixed `n`-subset) pairs.
    pub fn fixed_total(&self, n: usize) -> &BigUint {
        &self.sum[n]
    }

    /// Orbits on `n`-subsets. A remainder means the element data did not come
    /// from a group.
    pub fn orbits(&self, n: usize) -> Result<BigUint> {
        if n > self.max_size() {
            return Err(Error::input(format!(
                "fixed-subset sum truncated at size {}, asked for {n}",
                self.max_size()
            )));
        }
        let (q, r) = self.sum[n].div_rem(&self.order);
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "Burnside sum {} at n = {n} is not divisible by the group order {}: \
                 the element list is not closed",
                self.sum[n], self.order
            )));
        }
        Ok(q)
    }

    fn from_elements(elements: &[Perm], max_size: usize) -> Self {
        let mut sum = vec![BigUint::zero(); max_size + 1];
        for g in elements {
            let poly = cycle_polynomial(&g.cycle_lengths(), max_size);
            for (acc, c) in sum.iter_mut().zip(poly) {
                *acc += c;
            }
        }
        FixedSubsetSum {
            sum,
            order: BigUint::from(elements.len()),
        }
    }

    fn identity(max_size: usize) -> Self {
        let mut sum = vec![BigUint::zero(); max_size + 1];
        sum[0] = BigUint::one();
        FixedSubsetSum {
            sum,
            order: BigUint::one(),
        }
    }

    fn product(&self, other: &Self) -> Self {
        FixedSubsetSum {
            sum: poly_mul(&self.sum, &other.sum),
            order: &self.order * &other.order,
        }
    }

    fn chain(&self, copies: usize) -> Result<Self> {
        let m = self.max_size();
        let mut blocks = (0..=m)
            .map(|n| self.orbits(n))
            .collect::<Result<Vec<_>>>()?;
        blocks[0] = BigUint::zero();
        let mut sum = Self::identity(m).sum;
        let mut power = sum.clone();
        for _ in 0..copies.min(m) {
            power = poly_mul(&power, &blocks);
            for (acc, c) in sum.iter_mut().zip(&power) {
                *acc += c;
            }
        }
        Ok(FixedSubsetSum {
            sum,
            order: BigUint::one(),
        })
    }

    fn wreath(&self, copies: usize) -> Self {
        let m = self.max_size();
        // block cycle of length j: |G|^(j-1) * S(t^j)
        let cycle_term = |j: usize| -> Vec<BigUint> {
            let weight = num_traits::pow(self.order.clone(), j - 1);
            let mut out = vec![BigUint::zero(); m + 1];
            for (i, c) in self.sum.iter().enumerate() {
                if i * j > m {
                    break;
                }
                out[i * j] = c * &weight;
            }
            out
        };
        let terms: Vec<Vec<BigUint>> = (1..=copies.max(1)).map(cycle_term).collect();

        let n_fact = factorial(copies);
        let mut sum = vec![BigUint::zero(); m + 1];
        for class in partitions(copies) {
            // class = multiplicities m_j of cycle length j (index j - 1)
            let mut z = BigUint::one();
            let mut poly = Self::identity(m).sum;
            for (idx, &mult) in class.iter().enumerate() {
                let j = idx + 1;
                for _ in 0..mult {
                    poly = poly_mul(&poly, &terms[idx]);
                }
                z *= num_traits::pow(BigUint::from(j), mult) * factorial(mult);
            }
            let class_size = &n_fact / z;
            for (acc, c) in sum.iter_mut().zip(poly) {
                *acc += c * &class_size;
            }
        }
        FixedSubsetSum {
            sum,
            order: num_traits::pow(self.order.clone(), copies) * n_fact,
        }
    }
}

fn cycle_polynomial(cycles: &[usize], max_size: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::zero(); max_size + 1];
    poly[0] = BigUint::one();
    for &len in cycles {
        if len > max_size {
            continue;
        }
        for i in (len..=max_size).rev() {
            let lower = poly[i - len].clone();
            poly[i] += lower;
        }
    }
    poly
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let m = a.len().min(b.len()) - 1;
    let mut out = vec![BigUint::zero(); m + 1];
    for (i, ai) in a.iter().enumerate().take(m + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(m + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Partitions of `n` as multiplicity vectors (entry `j-1` counts parts `j`).
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            current[part - 1] += 1;
            go(rest - part, part, current, out);
            current[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0; n];
    go(n, n, &mut current, &mut out);
    out
}

/// Fixed-subset sums of a group, for subsets of size up to `max_size`.
pub fn fixed_subset_sum(g: &PermGroup, max_size: usize) -> Result<FixedSubsetSum> {
    Ok(match g {
        PermGroup::Elements { elements, .. } => FixedSubsetSum::from_elements(elements, max_size),
        PermGroup::Product(factors) => {
            let mut acc = FixedSubsetSum::identity(max_size);
            for f in factors {
                acc = acc.product(&fixed_subset_sum(f, max_size)?);
            }
            acc
        }
        PermGroup::Wreath { base, copies } => fixed_subset_sum(base, max_size)?.wreath(*copies),
        PermGroup::Chain { base, copies } => fixed_subset_sum(base, max_size)?.chain(*copies)?,
    })
}

/// Orbits of `g` on `n`-subsets by Burnside's lemma.
pub fn burnside_subset_orbits(g: &PermGroup, n: usize) -> Result<BigUint> {
    if n > g.degree() {
        return Ok(BigUint::zero());
    }
    fixed_subset_sum(g, n)?.orbits(n)
}

/// Orbit counts for every subset size `0..=max_size` at once.
pub fn burnside_orbit_counts(g: &PermGroup, max_size: usize) -> Result<Vec<BigUint>> {
    let sums = fixed_subset_sum(g, max_size)?;
    (0..=max_size).map(|n| sums.orbits(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::group::automorphisms;
    use crate::oracle::structure::FiniteStructure;
    use num_traits::ToPrimitive;

    fn orbits(g: &PermGroup, n: usize) -> u64 {
        burnside_subset_orbits(g, n).unwrap().to_u64().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(orbits(&PermGroup::trivial(4), 2), 6);
        let s4 = automorphisms(&FiniteStructure::pure(4)).unwrap();
        assert_eq!(orbits(&s4, 2), 1);
        let path = automorphisms(&FiniteStructure::path3()).unwrap();
        assert_eq!(orbits(&path, 1), 2);
        assert_eq!(orbits(&path, 5), 0);
    }

    #[test]
    fn structural_and_listed_sums_agree() {
        let edge = automorphisms(&FiniteStructure::edge()).unwrap();
        let groups = [
            PermGroup::Wreath {
                base: Box::new(edge.clone()),
                copies: 3,
            },
            PermGroup::Product(vec![
                PermGroup::symmetric(3),
                edge.clone(),
                PermGroup::trivial(2),
            ]),
            PermGroup::Wreath {
                base: Box::new(PermGroup::Product(vec![edge, PermGroup::symmetric(2)])),
                copies: 2,
            },
        ];
        for g in &groups {
            let listed =
                PermGroup::from_elements(g.degree(), g.elements(100_000).unwrap()).unwrap();
            let m = g.degree();
            assert_eq!(
                fixed_subset_sum(g, m).unwrap(),
                fixed_subset_sum(&listed, m).unwrap(),
                "{g:?}"
            );
        }
    }

    #[test]
    fn not_a_group_is_detected() {
        let cyc = Perm::from_images(vec![1, 2, 0]).unwrap();
        let fake = PermGroup::Elements {
            degree: 3,
            elements: vec![Perm::identity(3), cyc],
        };
        assert!(matches!(
            fixed_subset_sum(&fake, 1).unwrap().orbits(1),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn chain_counts_ordered_traces() {
        // two-point blocks: compositions into parts 1 and 2
        let chain = PermGroup::Chain {
            base: Box::new(PermGroup::symmetric(2)),
            copies: 6,
        };
        let got: Vec<u64> = burnside_orbit_counts(&chain, 6)
            .unwrap()
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        assert_eq!(got, [1, 1, 2, 3, 5, 8, 13]);
        // too few blocks to spread 3 points one per block
        let short = PermGroup::Chain {
            base: Box::new(PermGroup::trivial(1)),
            copies: 2,
        };
        assert_eq!(orbits(&short, 2), 1);
        assert_eq!(orbits(&short, 3), 0);
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(8).len(), 22);
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
    }
}
