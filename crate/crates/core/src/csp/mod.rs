//! Constraint satisfaction instances whose variables range over subalgebras.

mod json;
pub mod random;
mod transform;

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relation::Relation;

pub use transform::QuotientInstance;

/// Largest search space [`brute_force_solve`] will enumerate.
pub const ORACLE_BOUND: u128 = 1 << 24;

/// The set of values a variable may take, inside some algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    algebra: Arc<FiniteAlgebra>,
    elements: Vec<usize>,
}

impl Domain {
    pub fn new(algebra: Arc<FiniteAlgebra>, elements: &[usize]) -> Result<Self> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        algebra.check_elements(&e)?;
        Ok(Self { algebra, elements: e })
    }

    /// The whole universe of `algebra`.
    pub fn full(algebra: Arc<FiniteAlgebra>) -> Self {
        let elements = (0..algebra.size()).collect();
        Self { algebra, elements }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Position of `a` among the elements.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    pub fn is_closed(&self) -> bool {
        !self.elements.is_empty() && self.algebra.is_closed(&self.elements)
    }

    /// The induced subalgebra, re-indexed by position.
    pub fn subalgebra(&self) -> Result<FiniteAlgebra> {
        self.algebra.restrict(&self.elements)
    }
}

/// A scope (injective list of variables) with a relation over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    scope: Vec<usize>,
    relation: Relation,
}

impl Constraint {
    pub fn new(scope: Vec<usize>, relation: Relation) -> Result<Self> {
        let mut seen = HashSet::new();
        if !scope.iter().all(|v| seen.insert(*v)) {
            return Err(Error::NonInjectiveScope(scope));
        }
        if relation.arity() != scope.len() {
            return Err(Error::Dimension(format!(
                "scope of length {} with a relation of arity {}",
                scope.len(),
                relation.arity()
            )));
        }
        Ok(Self { scope, relation })
    }

    /// Builds the relation from raw tuples.
    pub fn from_tuples(scope: Vec<usize>, tuples: Vec<Vec<usize>>) -> Result<Self> {
        let relation = Relation::new(scope.len(), tuples)?;
        Self::new(scope, relation)
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }
}

/// Whether the assignment restricted to the constraint's scope lies in its relation.
pub fn satisfies(f: &[usize], c: &Constraint) -> bool {
    let t: Vec<usize> = c.scope.iter().map(|&v| f[v]).collect();
    c.relation.contains(&t)
}

/// Variables, one domain per variable, and a list of constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    domains: Vec<Domain>,
    constraints: Vec<Constraint>,
}

/// A problem found by [`CspInstance::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ValidationIssue {
    /// The domain is not a subuniverse of its algebra.
    DomainNotClosed { variable: usize },
    /// Some tuples use values outside the scoped domain.
    OutsideDomain { constraint: usize, position: usize, values: Vec<usize> },
    /// Some domain values never occur at this position.
    NotSubdirect { constraint: usize, position: usize, missing: Vec<usize> },
    /// The relation is not a subuniverse of the product of its domain algebras.
    NotClosed { constraint: usize },
}

impl CspInstance {
    pub fn new(domains: Vec<Domain>, constraints: Vec<Constraint>) -> Result<Self> {
        let n = domains.len();
        for c in &constraints {
            if let Some(&v) = c.scope.iter().find(|&&v| v >= n) {
                return Err(Error::ScopeOutOfRange { index: v, len: n });
            }
            for t in c.relation.tuples() {
                for (pos, &a) in t.iter().enumerate() {
                    let size = domains[c.scope[pos]].algebra.size();
                    if a >= size {
                        return Err(Error::ElementOutOfRange { element: a, size });
                    }
                }
            }
        }
        Ok(Self { domains, constraints })
    }

    /// An instance whose domains all live in one algebra.
    pub fn over(algebra: Arc<FiniteAlgebra>, domains: &[Vec<usize>], constraints: Vec<Constraint>) -> Result<Self> {
        let doms = domains
            .iter()
            .map(|d| Domain::new(algebra.clone(), d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(doms, constraints)
    }

    pub fn variable_count(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn domain(&self, i: usize) -> &Domain {
        &self.domains[i]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// The algebra every domain lives in, when there is exactly one.
    pub fn shared_algebra(&self) -> Option<&Arc<FiniteAlgebra>> {
        let first = self.domains.first()?.algebra_arc();
        self.domains
            .iter()
            .all(|d| Arc::ptr_eq(&d.algebra, first) || *d.algebra == **first)
            .then_some(first)
    }

    /// Whether `f` is in every domain and satisfies every constraint.
    pub fn is_solution(&self, f: &[usize]) -> bool {
        f.len() == self.domains.len()
            && f.iter().zip(&self.domains).all(|(&a, d)| d.contains(a))
            && self.constraints.iter().all(|c| satisfies(f, c))
    }

    /// Number of total assignments, saturating.
    pub fn search_space(&self) -> u128 {
        self.domains
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
    }

    /// The bound `n·p·q^(r+1) + J·m·q^(m+1) + J·m·n` on the encoded instance size.
    pub fn size_bound(&self) -> u128 {
        let n = self.domains.len() as u128;
        let q = self.domains.iter().map(|d| d.algebra.size()).max().unwrap_or(0) as u128;
        let p = self.domains.iter().map(|d| d.algebra.operations().len()).max().unwrap_or(0) as u128;
        let r = self.domains.iter().map(|d| d.algebra.max_arity()).max().unwrap_or(0) as u32;
        let j = self.constraints.len() as u128;
        let m = self.constraints.iter().map(Constraint::arity).max().unwrap_or(0) as u32;
        n * p * q.pow(r + 1) + j * m as u128 * q.pow(m + 1) + j * m as u128 * n
    }

    /// Lists every domain or constraint that breaks the instance definition.
    pub fn validate(&self) -> Result<Vec<ValidationIssue>> {
        let mut issues = Vec::new();
        for (i, d) in self.domains.iter().enumerate() {
            if !d.is_closed() {
                issues.push(ValidationIssue::DomainNotClosed { variable: i });
            }
        }
        for (ci, c) in self.constraints.iter().enumerate() {
            let mut inside = true;
            for (pos, &v) in c.scope.iter().enumerate() {
                let values = c.relation.coordinate_values(pos);
                let dom = &self.domains[v];
                let outside: Vec<usize> = values.iter().copied().filter(|&a| !dom.contains(a)).collect();
                if !outside.is_empty() {
                    inside = false;
                    issues.push(ValidationIssue::OutsideDomain { constraint: ci, position: pos, values: outside });
                }
                let missing: Vec<usize> =
                    dom.elements.iter().copied().filter(|a| values.binary_search(a).is_err()).collect();
                if !missing.is_empty() {
                    issues.push(ValidationIssue::NotSubdirect { constraint: ci, position: pos, missing });
                }
            }
            if inside && c.arity() > 0 && !self.relation_closed(c)? {
                issues.push(ValidationIssue::NotClosed { constraint: ci });
            }
        }
        Ok(issues)
    }

    fn relation_closed(&self, c: &Constraint) -> Result<bool> {
        let factors: Vec<&FiniteAlgebra> = c.scope.iter().map(|&v| self.domains[v].algebra()).collect();
        c.relation.is_closed_in(&factors)
    }

    /// Shrinks every domain to the values allowed by all constraint projections,
    /// repeating until stable. The solution set is unchanged.
    pub fn normalize(&self) -> Result<CspInstance> {
        let mut domains: Vec<Vec<usize>> = self.domains.iter().map(|d| d.elements.clone()).collect();
        let mut relations: Vec<Relation> = self.constraints.iter().map(|c| c.relation.clone()).collect();
        loop {
            let mut changed = false;
            for (c, rel) in self.constraints.iter().zip(relations.iter_mut()) {
                let kept = rel.filter(|t| t.iter().zip(&c.scope).all(|(a, &v)| domains[v].binary_search(a).is_ok()));
                if kept.len() != rel.len() {
                    *rel = kept;
                }
                for (pos, &v) in c.scope.iter().enumerate() {
                    let values = rel.coordinate_values(pos);
                    if values.len() != domains[v].len() {
                        domains[v].retain(|a| values.binary_search(a).is_ok());
                        changed = true;
                    }
                }
            }
            if let Some(v) = domains.iter().position(Vec::is_empty) {
                return Err(Error::EmptyDomain(v));
            }
            if !changed {
                break;
            }
        }
        let doms = self
            .domains
            .iter()
            .zip(&domains)
            .map(|(d, e)| Domain { algebra: d.algebra.clone(), elements: e.clone() })
            .collect();
        let constraints = self
            .constraints
            .iter()
            .zip(relations)
            .map(|(c, relation)| Constraint { scope: c.scope.clone(), relation })
            .collect();
        Ok(CspInstance { domains: doms, constraints })
    }
}

fn check_oracle_bound(inst: &CspInstance) -> Result<()> {
    let size = inst.search_space();
    if size > ORACLE_BOUND {
        return Err(Error::SearchSpace { size, bound: ORACLE_BOUND });
    }
    Ok(())
}

/// Constraints grouped by the last variable of their scope, so each is
/// checked as soon as it is fully assigned.
fn constraints_by_last(inst: &CspInstance) -> (Vec<Vec<usize>>, bool) {
    let mut by_last = vec![Vec::new(); inst.variable_count()];
    let mut nullary_ok = true;
    for (ci, c) in inst.constraints.iter().enumerate() {
        match c.scope.iter().max() {
            Some(&v) => by_last[v].push(ci),
            None => nullary_ok &= !c.relation.is_empty(),
        }
    }
    (by_last, nullary_ok)
}

/// Enumerates assignments in lexicographic order, calling `visit` on each
/// solution until it returns `false`.
fn enumerate(inst: &CspInstance, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
    check_oracle_bound(inst)?;
    let (by_last, nullary_ok) = constraints_by_last(inst);
    if !nullary_ok {
        return Ok(());
    }
    let n = inst.variable_count();
    if n == 0 {
        visit(&[]);
        return Ok(());
    }
    let mut f = vec![0; n];
    let mut idx = vec![0usize; n];
    let mut k = 0;
    loop {
        if idx[k] == inst.domains[k].len() {
            if k == 0 {
                return Ok(());
            }
            idx[k] = 0;
            k -= 1;
            idx[k] += 1;
            continue;
        }
        f[k] = inst.domains[k].elements[idx[k]];
        if by_last[k].iter().all(|&ci| satisfies(&f, &inst.constraints[ci])) {
            if k + 1 == n {
                if !visit(&f) {
                    return Ok(());
                }
                idx[k] += 1;
            } else {
                k += 1;
            }
        } else {
            idx[k] += 1;
        }
    }
}

/// The lexicographically least solution, found by exhaustive enumeration.
pub fn brute_force_solve(inst: &CspInstance) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    enumerate(inst, |f| {
        found = Some(f.to_vec());
        false
    })?;
    Ok(found)
}

/// Every solution, in lexicographic order.
pub fn all_solutions(inst: &CspInstance) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    enumerate(inst, |f| {
        out.push(f.to_vec());
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn mp3_instance() -> CspInstance {
        let a = Arc::new(catalog::mass_products_3());
        let r = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        let s = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 2], vec![2, 1]]).unwrap();
        CspInstance::over(a, &[vec![0, 1, 2], vec![0, 1, 2]], vec![r, s]).unwrap()
    }

    #[test]
    fn satisfies_examples() {
        let inst = mp3_instance();
        let r = &inst.constraints()[0];
        assert!(satisfies(&[0, 0], r));
        assert!(!satisfies(&[1, 2], r));
        let empty = Constraint::from_tuples(vec![], vec![vec![]]).unwrap();
        assert!(satisfies(&[], &empty));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_solve(&mp3_instance()).unwrap(), Some(vec![0, 0]));
        let s2 = Arc::new(catalog::s2());
        let sq = Arc::new(catalog::sq3());
        let free = CspInstance::new(vec![Domain::full(s2), Domain::full(sq)], vec![]).unwrap();
        assert_eq!(all_solutions(&free).unwrap().len(), 6);
        assert_eq!(brute_force_solve(&free).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn oracle_bound() {
        let sq = Arc::new(catalog::sq3());
        let big = CspInstance::over(sq, &vec![vec![0, 1, 2]; 16], vec![]).unwrap();
        assert!(matches!(brute_force_solve(&big), Err(Error::SearchSpace { .. })));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Constraint::from_tuples(vec![1, 1], vec![vec![0, 0]]),
            Err(Error::NonInjectiveScope(_))
        ));
        let sq = Arc::new(catalog::sq3());
        let c = Constraint::from_tuples(vec![0, 3], vec![vec![0, 0]]).unwrap();
        assert!(CspInstance::over(sq.clone(), &[vec![0], vec![0]], vec![c]).is_err());
        let c = Constraint::from_tuples(vec![0], vec![vec![7]]).unwrap();
        assert!(CspInstance::over(sq, &[vec![0]], vec![c]).is_err());
    }

    #[test]
    fn validation_and_normalization() {
        assert!(mp3_instance().validate().unwrap().is_empty());
        let sq = Arc::new(catalog::sq3());
        // Coordinate 0 never takes the value 2, and {(0,0),(1,1)} is not closed.
        let c = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 1]]).unwrap();
        let inst = CspInstance::over(sq, &[vec![0, 1, 2], vec![0, 1, 2]], vec![c]).unwrap();
        let issues = inst.validate().unwrap();
        assert!(issues.contains(&ValidationIssue::NotSubdirect { constraint: 0, position: 0, missing: vec![2] }));
        assert!(issues.contains(&ValidationIssue::NotClosed { constraint: 0 }));
        let norm = inst.normalize().unwrap();
        assert_eq!(norm.domain(0).elements(), &[0, 1]);
        assert_eq!(all_solutions(&norm).unwrap(), all_solutions(&inst).unwrap());
    }

    #[test]
    fn normalization_detects_empty_domain() {
        let s2 = Arc::new(catalog::s2());
        let c = Constraint::from_tuples(vec![0], vec![vec![0]]).unwrap();
        let d = Constraint::from_tuples(vec![0], vec![vec![1]]).unwrap();
        let inst = CspInstance::over(s2, &[vec![0, 1]], vec![c, d]).unwrap();
        assert!(matches!(inst.normalize(), Err(Error::EmptyDomain(0))));
    }

    #[test]
    fn size_bound_arithmetic() {
        let a = Arc::new(catalog::example_a());
        let c = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0]]).unwrap();
        let inst = CspInstance::over(a, &vec![vec![0, 1, 2, 3]; 4], vec![c.clone(), c]).unwrap();
        assert_eq!(inst.size_bound(), 528);
        let t = Arc::new(catalog::trivial());
        let c = Constraint::from_tuples(vec![0], vec![vec![0]]).unwrap();
        assert_eq!(CspInstance::over(t, &[vec![0]], vec![c]).unwrap().size_bound(), 3);
    }
}
