//! Generated subuniverses and their enumeration.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{tuples_over, FiniteAlgebra};
use crate::error::{Error, Result};

/// Default bound on the universe size for [`all_subuniverses`].
pub const DEFAULT_SUBUNIVERSE_BOUND: usize = 8;

/// A closed subset of some algebra's universe, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subuniverse {
    elements: Vec<usize>,
}

impl Subuniverse {
    /// Wraps a set already known to be closed in `alg`.
    pub fn new(alg: &FiniteAlgebra, elements: &[usize]) -> Result<Self> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.is_empty() {
            return Err(Error::EmptySeed);
        }
        alg.check_elements(&e)?;
        if !alg.is_closed(&e) {
            return Err(Error::NotClosed);
        }
        Ok(Self { elements: e })
    }

    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        Self { elements }
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

    pub fn is_subset(&self, other: &Subuniverse) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn intersects(&self, other: &Subuniverse) -> bool {
        self.elements.iter().any(|&a| other.contains(a))
    }
}

impl Ord for Subuniverse {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subuniverse {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Subuniverse {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

impl fmt::Display for Subuniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Smallest subuniverse containing `seed`.
pub fn closure(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Subuniverse> {
    if seed.is_empty() {
        return Err(Error::EmptySeed);
    }
    alg.check_elements(seed)?;
    Ok(extend_closed(alg, &[], seed))
}

/// Closure of `closed ∪ extra`, where `closed` is already a subuniverse.
pub(crate) fn extend_closed(alg: &FiniteAlgebra, closed: &[usize], extra: &[usize]) -> Subuniverse {
    let n = alg.size();
    let mut member = vec![false; n];
    let mut done: Vec<usize> = Vec::with_capacity(n);
    for &a in closed {
        if !member[a] {
            member[a] = true;
            done.push(a);
        }
    }
    let mut queue = VecDeque::new();
    for &a in extra {
        if !member[a] {
            member[a] = true;
            queue.push_back(a);
        }
    }
    for op in alg.operations() {
        if op.arity() == 0 && !member[op.table()[0]] {
            member[op.table()[0]] = true;
            queue.push_back(op.table()[0]);
        }
    }
    while let Some(e) = queue.pop_front() {
        done.push(e);
        for op in alg.operations() {
            let k = op.arity();
            if k == 0 {
                continue;
            }
            if k == 2 {
                for &m in &done {
                    for v in [op.apply2(e, m), op.apply2(m, e)] {
                        if !member[v] {
                            member[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
                continue;
            }
            for t in tuples_over(&done, k) {
                if !t.contains(&e) {
                    continue;
                }
                let v = op.apply(&t);
                if !member[v] {
                    member[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    Subuniverse::from_sorted((0..n).filter(|&a| member[a]).collect())
}

/// All nonempty subuniverses of `alg`, ordered by size and then lexicographically.
pub fn all_subuniverses(alg: &FiniteAlgebra) -> Result<Vec<Subuniverse>> {
    all_subuniverses_bounded(alg, DEFAULT_SUBUNIVERSE_BOUND)
}

pub fn all_subuniverses_bounded(alg: &FiniteAlgebra, bound: usize) -> Result<Vec<Subuniverse>> {
    if alg.size() > bound {
        return Err(Error::SizeBound { size: alg.size(), bound });
    }
    Ok(subuniverses_unchecked(alg))
}

/// Enumeration without a size guard; the caller is responsible for feasibility.
pub(crate) fn subuniverses_unchecked(alg: &FiniteAlgebra) -> Vec<Subuniverse> {
    let n = alg.size();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<Subuniverse> = Vec::new();
    for a in 0..n {
        let s = extend_closed(alg, &[], &[a]);
        if seen.insert(s.elements.clone()) {
            stack.push(s);
        }
    }
    let mut out = Vec::new();
    while let Some(s) = stack.pop() {
        let mut member = vec![false; n];
        for &a in &s.elements {
            member[a] = true;
        }
        for a in 0..n {
            if member[a] {
                continue;
            }
            let t = extend_closed(alg, &s.elements, &[a]);
            if !seen.contains(&t.elements) {
                seen.insert(t.elements.clone());
                stack.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}
