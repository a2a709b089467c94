//! Partial, quotient and block instances.

use std::sync::Arc;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::relation::Relation;

use super::{Constraint, CspInstance, Domain};

/// A quotient instance together with the classes its values stand for.
#[derive(Clone, Debug)]
pub struct QuotientInstance {
    pub instance: CspInstance,
    /// `classes[i][b]` lists the elements of variable `i`'s domain in class `b`.
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl QuotientInstance {
    /// The class index of each value of `x`.
    pub fn project(&self, x: &[usize]) -> Vec<usize> {
        x.iter()
            .enumerate()
            .map(|(i, &a)| {
                self.classes[i]
                    .iter()
                    .position(|c| c.contains(&a))
                    .expect("value lies in its domain")
            })
            .collect()
    }
}

impl CspInstance {
    /// Restriction to the first `k` variables: each constraint keeps the scope
    /// positions below `k`, and constraints left with an empty scope are dropped.
    pub fn partial_instance(&self, k: usize) -> Result<CspInstance> {
        if k > self.variable_count() {
            return Err(Error::ScopeOutOfRange { index: k, len: self.variable_count() });
        }
        let mut constraints = Vec::new();
        for c in &self.constraints {
            let keep: Vec<usize> = (0..c.arity()).filter(|&p| c.scope[p] < k).collect();
            if keep.is_empty() {
                continue;
            }
            let scope = keep.iter().map(|&p| c.scope[p]).collect();
            constraints.push(Constraint::new(scope, c.relation.project(&keep)?)?);
        }
        CspInstance::new(self.domains[..k].to_vec(), constraints)
    }

    /// The instance restricted to the variables in `vars` (in increasing
    /// order), renumbered `0..vars.len()`.
    pub fn sub_instance(&self, vars: &[usize]) -> Result<CspInstance> {
        let mut index = vec![usize::MAX; self.variable_count()];
        for (new, &v) in vars.iter().enumerate() {
            if v >= self.variable_count() {
                return Err(Error::ScopeOutOfRange { index: v, len: self.variable_count() });
            }
            index[v] = new;
        }
        let mut constraints = Vec::new();
        for c in &self.constraints {
            let keep: Vec<usize> = (0..c.arity()).filter(|&p| index[c.scope[p]] != usize::MAX).collect();
            if keep.is_empty() {
                continue;
            }
            let scope = keep.iter().map(|&p| index[c.scope[p]]).collect();
            constraints.push(Constraint::new(scope, c.relation.project(&keep)?)?);
        }
        let domains = vars.iter().map(|&v| self.domains[v].clone()).collect();
        CspInstance::new(domains, constraints)
    }

    /// The quotient instance by one congruence per variable. Each congruence
    /// is on the variable's domain, indexed by position within the domain;
    /// domains must be subuniverses.
    pub fn quotient_instance(&self, thetas: &[Congruence]) -> Result<QuotientInstance> {
        if thetas.len() != self.variable_count() {
            return Err(Error::Dimension(format!(
                "{} congruences for {} variables",
                thetas.len(),
                self.variable_count()
            )));
        }
        let mut domains = Vec::with_capacity(thetas.len());
        let mut classes = Vec::with_capacity(thetas.len());
        let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(thetas.len());
        for (d, theta) in self.domains.iter().zip(thetas) {
            let q = d.subalgebra()?.quotient(theta)?;
            let mut cl = vec![Vec::new(); q.algebra.size()];
            let mut map = vec![usize::MAX; d.algebra().size()];
            for (pos, &a) in d.elements().iter().enumerate() {
                cl[q.class_of[pos]].push(a);
                map[a] = q.class_of[pos];
            }
            domains.push(Domain::full(Arc::new(q.algebra)));
            classes.push(cl);
            class_of.push(map);
        }
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let mut tuples = Vec::with_capacity(c.relation.len());
            for t in c.relation.tuples() {
                let mut u = Vec::with_capacity(t.len());
                for (&a, &v) in t.iter().zip(&c.scope) {
                    let b = class_of[v][a];
                    if b == usize::MAX {
                        return Err(Error::NotSubdirect(format!("value {a} outside the domain of x{v}")));
                    }
                    u.push(b);
                }
                tuples.push(u);
            }
            constraints.push(Constraint::new(c.scope.clone(), Relation::new(c.arity(), tuples)?)?);
        }
        Ok(QuotientInstance { instance: CspInstance::new(domains, constraints)?, classes })
    }

    /// The block instance: every domain is replaced by the chosen block and
    /// every relation is intersected with the product of blocks.
    pub fn block_instance(&self, blocks: &[Vec<usize>]) -> Result<CspInstance> {
        if blocks.len() != self.variable_count() {
            return Err(Error::Dimension(format!(
                "{} blocks for {} variables",
                blocks.len(),
                self.variable_count()
            )));
        }
        let mut domains = Vec::with_capacity(blocks.len());
        for (d, b) in self.domains.iter().zip(blocks) {
            if let Some(&a) = b.iter().find(|&&a| !d.contains(a)) {
                return Err(Error::Malformed(format!("block element {a} outside its domain")));
            }
            let nd = Domain::new(d.algebra.clone(), b)?;
            if !nd.is_closed() {
                return Err(Error::NotClosed);
            }
            domains.push(nd);
        }
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let relation = c
                    .relation
                    .filter(|t| t.iter().zip(&c.scope).all(|(&a, &v)| domains[v].contains(a)));
                Constraint { scope: c.scope.clone(), relation }
            })
            .collect();
        CspInstance::new(domains, constraints)
    }

    /// The block instance at the classes of `x` under `thetas` (congruences
    /// indexed by domain position, as in [`CspInstance::quotient_instance`]).
    pub fn block_instance_at(&self, x: &[usize], thetas: &[Congruence]) -> Result<CspInstance> {
        let blocks = self
            .domains
            .iter()
            .zip(thetas)
            .zip(x)
            .map(|((d, theta), &a)| {
                let pos = d.position(a).ok_or(Error::ElementOutOfRange { element: a, size: d.len() })?;
                Ok(theta.class_of(pos).iter().map(|&p| d.elements()[p]).collect())
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        self.block_instance(&blocks)
    }
}
