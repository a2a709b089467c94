use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::congruence::{congruence_lattice, Congruence};
use crate::error::{Error, Result};
use crate::term::Term;

use super::abelian::is_abelian;

/// Iterates `s` on its second variable, `t₁ = s`, `t_{k+1}(x,y) = s(x, t_k(x,y))`,
/// and returns the first `t_k` with `t(x, t(x,y)) = t(x,y)` everywhere.
pub fn iterate_second(alg: &FiniteAlgebra, s: &Term) -> Result<Term> {
    let n = alg.size();
    let s_table = s.table(alg, 2)?;
    let limit: usize = (1..=n).product::<usize>().max(1);
    let mut t = s.clone();
    let mut table = s_table.clone();
    for _ in 0..limit {
        let ilt = (0..n).all(|x| (0..n).all(|y| table[x * n + table[x * n + y]] == table[x * n + y]));
        if ilt {
            return Ok(t);
        }
        table = (0..n * n).map(|i| s_table[(i / n) * n + table[i]]).collect();
        t = s.substitute(&[Term::var(0), t])?;
    }
    Err(Error::IterationBound(format!("no idempotent iterate of {s} within {limit} steps")))
}

/// An edge-by-chain decomposition: classes of `theta` are singletons or
/// abelian, `t(x,y) = x` inside each class, `t(x,t(x,y)) = t(x,y)`, and
/// `A/θ` under `t` is a chain, least class first in `class_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcStructure {
    pub theta: Congruence,
    #[serde(serialize_with = "ser_term")]
    pub t: Term,
    pub class_order: Vec<Vec<usize>>,
}

fn ser_term<S: serde::Serializer>(t: &Term, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

impl EcStructure {
    /// Position of `a`'s class in the chain.
    pub fn level_of(&self, a: usize) -> usize {
        self.class_order.iter().position(|c| c.contains(&a)).expect("classes cover A")
    }
}

/// Binary term candidates from which `t` is derived.
fn seed_terms(alg: &FiniteAlgebra) -> Vec<Term> {
    let (x, y) = (Term::var(0), Term::var(1));
    let mut out = Vec::new();
    for op in alg.operations().iter().filter(|op| op.arity() == 2) {
        let f = |a: Term, b: Term| Term::apply(op.name(), vec![a, b]);
        out.push(f(y.clone(), f(x.clone(), y.clone())));
        out.push(f(x.clone(), y.clone()));
    }
    out
}

/// Checks every EC condition for a given congruence and term.
pub fn check_ec(alg: &FiniteAlgebra, theta: &Congruence, t: &Term) -> Result<Option<EcStructure>> {
    let n = alg.size();
    let tt = t.table(alg, 2)?;
    let at = |x: usize, y: usize| tt[x * n + y];
    for x in 0..n {
        for y in 0..n {
            if at(x, at(x, y)) != at(x, y) {
                return Ok(None);
            }
            if theta.related(x, y) && at(x, y) != x {
                return Ok(None);
            }
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&a| theta.block_of(a) == a).collect();
    let q = |a: usize, b: usize| theta.block_of(at(a, b));
    for &a in &reps {
        for &b in &reps {
            let ab = q(a, b);
            if ab != q(b, a) || (ab != a && ab != b) {
                return Ok(None);
            }
            for &c in &reps {
                if q(ab, c) != q(a, q(b, c)) {
                    return Ok(None);
                }
            }
        }
    }
    // In a chain the class below the most others is the greatest.
    let mut order = reps.clone();
    order.sort_by_key(|&a| reps.iter().filter(|&&b| q(a, b) == b).count());
    let class_order = order.iter().map(|&a| theta.class_of(a)).collect();
    Ok(Some(EcStructure { theta: theta.clone(), t: t.clone(), class_order }))
}

/// Searches congruences, bottom first, for an edge-by-chain structure.
pub fn detect_ec(alg: &FiniteAlgebra) -> Result<Option<EcStructure>> {
    if !alg.is_idempotent() {
        return Ok(None);
    }
    let lat = congruence_lattice(alg)?;
    let seeds = seed_terms(alg);
    for theta in lat.elements() {
        let mut classes_ok = true;
        for block in theta.blocks() {
            if block.len() > 1 && !is_abelian(&alg.restrict(&block)?)? {
                classes_ok = false;
                break;
            }
        }
        if !classes_ok {
            continue;
        }
        for s in &seeds {
            let Ok(t) = iterate_second(alg, s) else { continue };
            if let Some(ec) = check_ec(alg, theta, &t)? {
                return Ok(Some(ec));
            }
        }
    }
    Ok(None)
}
