//! Congruences, their generation, and congruence lattices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{all_tuples, FiniteAlgebra, Radix};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Default bound on the universe size for [`congruence_lattice`].
pub const DEFAULT_LATTICE_BOUND: usize = 16;

/// An equivalence relation on `0..n`, stored as the least member of each
/// element's block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Congruence {
    block: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Congruence {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Congruence::from_labels(&v)
    }
}

impl From<Congruence> for Vec<usize> {
    fn from(c: Congruence) -> Self {
        c.block
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn from_congruence(c: &Congruence) -> Self {
        Self { parent: c.block.clone() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots).expect("labels in range")
    }
}

impl Congruence {
    /// The equality relation `0_A`.
    pub fn zero(n: usize) -> Self {
        Self { block: (0..n).collect() }
    }

    /// The total relation `1_A`.
    pub fn one(n: usize) -> Self {
        Self { block: vec![0; n] }
    }

    /// Builds the partition in which elements with equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut least: HashMap<usize, usize> = HashMap::new();
        let block = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *least.entry(*l).or_insert(i))
            .collect();
        Ok(Self { block })
    }

    /// Builds a partition from explicit blocks covering `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, size: n });
                }
                if label[x] != usize::MAX {
                    return Err(Error::Malformed(format!("element {x} in two blocks")));
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Malformed(format!("element {x} in no block")));
        }
        Self::from_labels(&label)
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block
    }

    /// The least member of the block containing `a`.
    pub fn block_of(&self, a: usize) -> usize {
        self.block[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    /// Blocks, each sorted, listed in order of least members.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.size()];
        for (x, &b) in self.block.iter().enumerate() {
            if index[b] == usize::MAX {
                index[b] = out.len();
                out.push(Vec::new());
            }
            out[index[b]].push(x);
        }
        out
    }

    pub fn num_blocks(&self) -> usize {
        self.block.iter().enumerate().filter(|(x, &b)| *x == b).count()
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        let b = self.block[a];
        (0..self.size()).filter(|&x| self.block[x] == b).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.block.iter().enumerate().all(|(x, &b)| x == b)
    }

    pub fn is_one(&self) -> bool {
        self.block.iter().all(|&b| b == 0)
    }

    pub fn le(&self, other: &Self) -> bool {
        self.size() == other.size()
            && (0..self.size()).all(|x| other.related(x, self.block[x]))
    }

    pub fn meet(&self, other: &Self) -> Self {
        let labels: Vec<usize> = (0..self.size())
            .map(|x| self.block[x] * self.size() + other.block[x])
            .collect();
        Self::from_labels(&labels).expect("labels")
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut uf = UnionFind::from_congruence(self);
        for x in 0..self.size() {
            uf.union(x, other.block[x]);
        }
        uf.into_congruence()
    }

    /// Whether every operation respects the partition.
    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        if self.size() != alg.size() {
            return false;
        }
        // It suffices to check the basic translations on pairs (x, block_of(x)).
        let n = alg.size();
        for op in alg.operations() {
            let k = op.arity();
            for j in 0..k {
                for consts in all_tuples(n, k.saturating_sub(1)) {
                    let mut args: Vec<usize> = Vec::with_capacity(k);
                    args.extend_from_slice(&consts[..j]);
                    args.push(0);
                    args.extend_from_slice(&consts[j..]);
                    for x in 0..n {
                        args[j] = x;
                        let u = op.apply(&args);
                        args[j] = self.block[x];
                        let v = op.apply(&args);
                        if !self.related(u, v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for b in self.blocks() {
            let parts: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{}|", parts.join(","))?;
        }
        Ok(())
    }
}

/// Least congruence of `alg` containing all `pairs`.
pub fn generate(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    for &(a, b) in pairs {
        alg.check_elements(&[a, b])?;
    }
    Ok(generate_from(alg, Congruence::zero(alg.size()), pairs))
}

/// Least congruence above `base` (assumed a congruence) containing `pairs`.
fn generate_from(alg: &FiniteAlgebra, base: Congruence, pairs: &[(usize, usize)]) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::from_congruence(&base);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    // Only pairs that merged two classes need to be pushed through translations.
    while let Some((a, b)) = work.pop() {
        for op in alg.operations() {
            let k = op.arity();
            if k == 2 {
                for c in 0..n {
                    for (u, v) in [(op.apply2(a, c), op.apply2(b, c)), (op.apply2(c, a), op.apply2(c, b))] {
                        if uf.union(u, v) {
                            work.push((u, v));
                        }
                    }
                }
                continue;
            }
            for j in 0..k {
                for consts in all_tuples(n, k.saturating_sub(1)) {
                    let mut args: Vec<usize> = Vec::with_capacity(k);
                    args.extend_from_slice(&consts[..j]);
                    args.push(a);
                    args.extend_from_slice(&consts[j..]);
                    let u = op.apply(&args);
                    args[j] = b;
                    let v = op.apply(&args);
                    if uf.union(u, v) {
                        work.push((u, v));
                    }
                }
            }
        }
    }
    uf.into_congruence()
}

/// `Cg(a, b)`.
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Congruence> {
    generate(alg, &[(a, b)])
}

/// A finite lattice of congruences with order, meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    elements: Vec<Congruence>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl CongruenceLattice {
    /// Builds the lattice from a family of partitions, which must be closed
    /// under meet and join. Elements are sorted bottom-first by block count.
    pub fn from_congruences(mut elements: Vec<Congruence>) -> Result<Self> {
        elements.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::Malformed("empty lattice".into()));
        }
        let n = elements.len();
        let index: HashMap<&Congruence, usize> = elements.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let m = elements[i].meet(&elements[j]);
                let jn = elements[i].join(&elements[j]);
                meet[i][j] = *index
                    .get(&m)
                    .ok_or_else(|| Error::Malformed("family not closed under meet".into()))?;
                join[i][j] = *index
                    .get(&jn)
                    .ok_or_else(|| Error::Malformed("family not closed under join".into()))?;
                leq[i][j] = elements[i].le(&elements[j]);
            }
        }
        Ok(Self { elements, leq, meet, join })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elements
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.elements.iter().position(|e| e == c)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq[i][j] || self.leq[j][i]))
    }
}

/// All congruences of `alg`, for algebras of at most [`DEFAULT_LATTICE_BOUND`] elements.
pub fn congruence_lattice(alg: &FiniteAlgebra) -> Result<CongruenceLattice> {
    congruence_lattice_bounded(alg, DEFAULT_LATTICE_BOUND)
}

pub fn congruence_lattice_bounded(alg: &FiniteAlgebra, bound: usize) -> Result<CongruenceLattice> {
    let n = alg.size();
    if n > bound {
        return Err(Error::SizeBound { size: n, bound });
    }
    let mut principals: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = generate_from(alg, Congruence::zero(n), &[(a, b)]);
            if !principals.contains(&c) {
                principals.push(c);
            }
        }
    }
    let mut all: Vec<Congruence> = vec![Congruence::zero(n)];
    all.extend(principals.iter().cloned());
    all.sort();
    all.dedup();
    // Joining every known congruence with every principal one reaches all joins.
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if all.binary_search(&j).is_err() && !next.contains(&j) {
                    next.push(j);
                }
            }
        }
        for j in &next {
            let pos = all.binary_search(j).unwrap_err();
            all.insert(pos, j.clone());
        }
        frontier = next;
    }
    CongruenceLattice::from_congruences(all)
}

/// Whether `alg` has exactly two congruences.
pub fn is_simple(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(congruence_lattice(alg)?.len() == 2)
}

/// The kernel of the projection of `rel` onto the coordinates in `sigma`,
/// as a partition of the tuple indices of `rel`.
pub fn projection_kernel(rel: &Relation, sigma: &[usize]) -> Result<Congruence> {
    if let Some(&c) = sigma.iter().find(|&&c| c >= rel.arity()) {
        return Err(Error::ScopeOutOfRange { index: c, len: rel.arity() });
    }
    let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
    let labels: Vec<usize> = rel
        .tuples()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let key: Vec<usize> = sigma.iter().map(|&c| t[c]).collect();
            *first.entry(key).or_insert(i)
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// Lifts `theta`, a partition of `Π_{i∈σ} sizes[i]`, to the partition of
/// `Π sizes` relating tuples whose `σ`-restrictions are `theta`-related.
pub fn lift_congruence(theta: &Congruence, sizes: &[usize], sigma: &[usize]) -> Result<Congruence> {
    if let Some(&c) = sigma.iter().find(|&&c| c >= sizes.len()) {
        return Err(Error::ScopeOutOfRange { index: c, len: sizes.len() });
    }
    let sub = Radix::new(sigma.iter().map(|&c| sizes[c]).collect());
    if sub.total() != theta.size() {
        return Err(Error::Dimension(format!(
            "congruence on {} elements, projected product has {}",
            theta.size(),
            sub.total()
        )));
    }
    let full = Radix::new(sizes.to_vec());
    let labels: Vec<usize> = (0..full.total())
        .map(|code| {
            let t = full.decode(code);
            let proj: Vec<usize> = sigma.iter().map(|&c| t[c]).collect();
            theta.block_of(sub.encode(&proj))
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// Whether the binary relation `rel`, subdirect in `dom0 × dom1`, is linked.
pub fn is_linked(rel: &Relation, dom0: &[usize], dom1: &[usize]) -> Result<bool> {
    if rel.arity() != 2 {
        return Err(Error::Dimension(format!("linkedness of a relation of arity {}", rel.arity())));
    }
    if !rel.is_subdirect(&[dom0.to_vec(), dom1.to_vec()]) {
        return Err(Error::NotSubdirect("projections differ from the given factors".into()));
    }
    let k0 = projection_kernel(rel, &[0])?;
    let k1 = projection_kernel(rel, &[1])?;
    Ok(k0.join(&k1).is_one())
}

/// Checks `x∧y = x∧z ⇒ x∧y = x∧(y∨z)` over all triples.
pub fn is_meet_semidistributive(lat: &CongruenceLattice) -> bool {
    let n = lat.len();
    for x in 0..n {
        for y in 0..n {
            let xy = lat.meet(x, y);
            for z in 0..n {
                if lat.meet(x, z) == xy && lat.meet(x, lat.join(y, z)) != xy {
                    return false;
                }
            }
        }
    }
    true
}

/// Some congruence `θ` with `quotient_pred(A/θ)` and `class_pred` true on
/// every class, searched bottom-up through the congruence lattice.
pub fn malcev_product_witness(
    alg: &FiniteAlgebra,
    class_pred: impl Fn(&FiniteAlgebra) -> bool,
    quotient_pred: impl Fn(&FiniteAlgebra) -> bool,
) -> Result<Option<Congruence>> {
    let lat = congruence_lattice(alg)?;
    for theta in lat.elements() {
        let q = alg.quotient(theta)?;
        if !quotient_pred(&q.algebra) {
            continue;
        }
        let classes_ok = theta.blocks().iter().all(|b| match alg.restrict(b) {
            Ok(sub) => class_pred(&sub),
            Err(_) => false,
        });
        if classes_ok {
            return Ok(Some(theta.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FiniteAlgebra {
        FiniteAlgebra::binar(&[vec![0, 0], vec![0, 1]]).unwrap()
    }

    fn example_a() -> FiniteAlgebra {
        FiniteAlgebra::binar(&[vec![0, 0, 3, 2], vec![0, 1, 3, 2], vec![3, 3, 2, 1], vec![2, 2, 1, 3]]).unwrap()
    }

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_labels(&[7, 7, 3, 9]).unwrap();
        assert_eq!(c.block_ids(), &[0, 0, 2, 3]);
        assert_eq!(c.to_string(), "|0,1|2|3|");
        let d = Congruence::from_blocks(4, &[vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(d.block_ids(), &[0, 1, 0, 1]);
        assert!(Congruence::from_blocks(3, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn principal_examples() {
        assert!(principal_congruence(&s2(), 0, 1).unwrap().is_one());
        let theta = principal_congruence(&example_a(), 0, 1).unwrap();
        assert_eq!(theta.block_ids(), &[0, 0, 2, 3]);
        assert!(theta.is_compatible(&example_a()));
    }

    #[test]
    fn example_a_lattice_is_three_chain() {
        let lat = congruence_lattice(&example_a()).unwrap();
        assert_eq!(lat.len(), 3);
        assert!(lat.is_chain());
        assert!(is_meet_semidistributive(&lat));
        assert!(!is_simple(&example_a()).unwrap());
        assert!(is_simple(&s2()).unwrap());
    }

    #[test]
    fn meet_join() {
        let a = Congruence::from_labels(&[0, 0, 1, 1]).unwrap();
        let b = Congruence::from_labels(&[0, 1, 1, 2]).unwrap();
        assert!(a.meet(&b).is_zero());
        assert!(a.join(&b).is_one());
        assert!(a.meet(&b).le(&a));
    }

    #[test]
    fn lift_counts() {
        let theta = Congruence::from_labels(&[0, 0, 2, 3]).unwrap();
        let lifted = lift_congruence(&theta, &[4, 4], &[0]).unwrap();
        let mut sizes: Vec<usize> = lifted.blocks().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 8]);
        assert!(lift_congruence(&theta, &[4, 4], &[0, 1]).is_err());
    }

    #[test]
    fn serde_uses_block_ids() {
        let c = Congruence::from_labels(&[0, 0, 2, 3]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[0,0,2,3]");
        let back: Congruence = serde_json::from_str("[5,5,1,2]").unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn linked_diagonal() {
        let diag = Relation::new(2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert!(!is_linked(&diag, &[0, 1], &[0, 1]).unwrap());
        assert!(is_linked(&diag, &[0], &[0, 1]).is_err());
    }
}
