//! Finitary relations stored as sorted tuple lists.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, Radix};
use crate::error::{Error, Result};
use crate::subuniverse::extend_closed;

/// A set of tuples of a fixed arity, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RelationRepr", into = "RelationRepr")]
pub struct Relation {
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

impl TryFrom<RelationRepr> for Relation {
    type Error = Error;

    fn try_from(r: RelationRepr) -> Result<Self> {
        Relation::new(r.arity, r.tuples)
    }
}

impl From<Relation> for RelationRepr {
    fn from(r: Relation) -> Self {
        RelationRepr { arity: r.arity, tuples: r.tuples }
    }
}

impl Relation {
    pub fn new(arity: usize, mut tuples: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return Err(Error::Dimension(format!(
                "tuple {t:?} in a relation of arity {arity}"
            )));
        }
        tuples.sort_unstable();
        tuples.dedup();
        Ok(Self { arity, tuples })
    }

    /// The full product of the given coordinate sets.
    pub fn product(sets: &[Vec<usize>]) -> Self {
        let mut tuples = vec![Vec::new()];
        for s in sets {
            let mut next = Vec::with_capacity(tuples.len() * s.len());
            for t in &tuples {
                for &a in s {
                    let mut u: Vec<usize> = t.clone();
                    u.push(a);
                    next.push(u);
                }
            }
            tuples = next;
        }
        let mut r = Self { arity: sets.len(), tuples };
        r.tuples.sort_unstable();
        r.tuples.dedup();
        r
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        self.tuples.binary_search_by(|u| u.as_slice().cmp(t)).is_ok()
    }

    /// Projection onto the listed coordinates, in the given order.
    pub fn project(&self, coords: &[usize]) -> Result<Relation> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.arity) {
            return Err(Error::ScopeOutOfRange { index: c, len: self.arity });
        }
        let tuples = self
            .tuples
            .iter()
            .map(|t| coords.iter().map(|&c| t[c]).collect())
            .collect();
        Relation::new(coords.len(), tuples)
    }

    /// Sorted set of values taken in coordinate `i`.
    pub fn coordinate_values(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.tuples.iter().map(|t| t[i]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        if self.arity != other.arity {
            return Err(Error::Dimension("intersecting relations of different arity".into()));
        }
        let tuples = self.tuples.iter().filter(|t| other.contains(t)).cloned().collect();
        Ok(Self { arity: self.arity, tuples })
    }

    pub fn filter(&self, mut keep: impl FnMut(&[usize]) -> bool) -> Relation {
        Self {
            arity: self.arity,
            tuples: self.tuples.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Whether every coordinate `i` takes exactly the values in `domains[i]`.
    pub fn is_subdirect(&self, domains: &[Vec<usize>]) -> bool {
        domains.len() == self.arity
            && (0..self.arity).all(|i| {
                let mut d = domains[i].clone();
                d.sort_unstable();
                d.dedup();
                self.coordinate_values(i) == d
            })
    }

    /// Whether the relation is closed under the coordinatewise operations of
    /// the product of `factors`.
    pub fn is_closed_in(&self, factors: &[&FiniteAlgebra]) -> Result<bool> {
        let prod = product_of(factors, self.arity)?;
        let radix = radix_of(factors);
        let codes: Vec<usize> = self.tuples.iter().map(|t| radix.encode(t)).collect();
        Ok(prod.is_closed(&codes))
    }

    /// The subuniverse of the product generated by this relation.
    pub fn closure_in(&self, factors: &[&FiniteAlgebra]) -> Result<Relation> {
        subpower_closure(factors, &self.tuples)
    }
}

fn radix_of(factors: &[&FiniteAlgebra]) -> Radix {
    Radix::new(factors.iter().map(|f| f.size()).collect())
}

fn product_of(factors: &[&FiniteAlgebra], arity: usize) -> Result<FiniteAlgebra> {
    if factors.len() != arity {
        return Err(Error::Dimension(format!(
            "{} factors for a relation of arity {arity}",
            factors.len()
        )));
    }
    if factors.is_empty() {
        return Err(Error::Dimension("nullary product".into()));
    }
    let owned: Vec<FiniteAlgebra> = factors.iter().map(|&f| f.clone()).collect();
    FiniteAlgebra::product(&owned)
}

/// Subuniverse of `Π factors` generated by `gens`.
pub fn subpower_closure(factors: &[&FiniteAlgebra], gens: &[Vec<usize>]) -> Result<Relation> {
    let k = factors.len();
    let radix = radix_of(factors);
    for g in gens {
        if g.len() != k {
            return Err(Error::Dimension(format!("generator {g:?} for {k} factors")));
        }
        for (i, &a) in g.iter().enumerate() {
            if a >= factors[i].size() {
                return Err(Error::ElementOutOfRange { element: a, size: factors[i].size() });
            }
        }
    }
    if gens.is_empty() {
        return Relation::new(k, Vec::new());
    }
    let prod = product_of(factors, k)?;
    let codes: Vec<usize> = gens.iter().map(|g| radix.encode(g)).collect();
    let closed = extend_closed(&prod, &[], &codes);
    Relation::new(k, closed.elements().iter().map(|&c| radix.decode(c)).collect())
}

/// The subalgebra of `Π factors` carried by a closed relation, with elements
/// numbered in tuple order.
pub fn relation_algebra(factors: &[&FiniteAlgebra], rel: &Relation) -> Result<FiniteAlgebra> {
    let prod = product_of(factors, rel.arity())?;
    let radix = radix_of(factors);
    let codes: Vec<usize> = rel.tuples().iter().map(|t| radix.encode(t)).collect();
    prod.restrict(&codes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduped() {
        let r = Relation::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(r.tuples(), &[vec![0, 1], vec![1, 0]]);
        assert!(r.contains(&[1, 0]));
        assert!(!r.contains(&[1, 1]));
        assert!(Relation::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn projection_and_product() {
        let r = Relation::new(3, vec![vec![0, 1, 2], vec![1, 1, 0]]).unwrap();
        assert_eq!(r.project(&[1]).unwrap().tuples(), &[vec![1]]);
        assert_eq!(r.project(&[2, 0]).unwrap().tuples(), &[vec![0, 1], vec![2, 0]]);
        assert!(r.project(&[3]).is_err());
        assert_eq!(Relation::product(&[vec![0, 1], vec![2]]).len(), 2);
    }

    #[test]
    fn subpower_generation() {
        let s2 = FiniteAlgebra::binar(&[vec![0, 0], vec![0, 1]]).unwrap();
        let r = subpower_closure(&[&s2, &s2], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(r.tuples(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(r.is_closed_in(&[&s2, &s2]).unwrap());
        assert!(r.is_subdirect(&[vec![0, 1], vec![0, 1]]));
    }
}
