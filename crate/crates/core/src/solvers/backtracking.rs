//! Depth-first search with generalized arc consistency.

use crate::csp::CspInstance;
use crate::error::Result;

use super::{finish, SolveOutcome, Strategy};

/// Prunes `doms` until every value of every scope variable has a supporting
/// tuple. Returns `false` when some domain empties.
fn propagate(inst: &CspInstance, doms: &mut [Vec<bool>]) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for c in inst.constraints() {
            let scope = c.scope();
            let mut support: Vec<Vec<bool>> = scope.iter().map(|&v| vec![false; doms[v].len()]).collect();
            let mut any = false;
            for t in c.relation().tuples() {
                if t.iter().zip(scope).all(|(&a, &v)| doms[v].get(a).copied().unwrap_or(false)) {
                    any = true;
                    for (p, &a) in t.iter().enumerate() {
                        support[p][a] = true;
                    }
                }
            }
            if !any {
                return false;
            }
            for (p, &v) in scope.iter().enumerate() {
                for a in 0..doms[v].len() {
                    if doms[v][a] && !support[p][a] {
                        doms[v][a] = false;
                        changed = true;
                    }
                }
            }
        }
    }
    doms.iter().all(|d| d.iter().any(|&b| b))
}

fn search(inst: &CspInstance, doms: Vec<Vec<bool>>) -> Option<Vec<usize>> {
    let mut doms = doms;
    if !propagate(inst, &mut doms) {
        return None;
    }
    let branch = (0..doms.len())
        .filter(|&v| doms[v].iter().filter(|&&b| b).count() > 1)
        .min_by_key(|&v| doms[v].iter().filter(|&&b| b).count());
    let Some(v) = branch else {
        return Some(doms.iter().map(|d| d.iter().position(|&b| b).expect("nonempty")).collect());
    };
    for a in (0..doms[v].len()).filter(|&a| doms[v][a]) {
        let mut next = doms.clone();
        next[v].iter_mut().enumerate().for_each(|(b, m)| *m = b == a);
        if let Some(f) = search(inst, next) {
            return Some(f);
        }
    }
    None
}

/// Searches for a solution extending the partial assignment `fixed`.
pub fn backtrack_with(inst: &CspInstance, fixed: &[Option<usize>]) -> Option<Vec<usize>> {
    let doms: Vec<Vec<bool>> = inst
        .domains()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut m = vec![false; d.algebra().size()];
            match fixed.get(i).copied().flatten() {
                Some(a) if d.contains(a) => m[a] = true,
                Some(_) => {}
                None => d.elements().iter().for_each(|&a| m[a] = true),
            }
            m
        })
        .collect();
    search(inst, doms)
}

pub fn backtracking_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    finish(inst, Strategy::Backtracking, backtrack_with(inst, &[]), Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::csp::{brute_force_solve, Constraint};
    use std::sync::Arc;

    #[test]
    fn agrees_with_oracle_on_mp3() {
        let a = Arc::new(catalog::mass_products_3());
        let r = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        let s = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 2], vec![2, 1]]).unwrap();
        let inst = CspInstance::over(a, &[vec![0, 1, 2], vec![0, 1, 2]], vec![r, s]).unwrap();
        let out = backtracking_solve(&inst).unwrap();
        assert_eq!(out.witness, Some(vec![0, 0]));
        assert_eq!(brute_force_solve(&inst).unwrap(), out.witness);
    }

    #[test]
    fn seeded_conflict() {
        let a = Arc::new(catalog::sq3());
        let r = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        let inst = CspInstance::over(a, &[vec![0, 1, 2], vec![0, 1, 2]], vec![r]).unwrap();
        assert_eq!(backtrack_with(&inst, &[Some(1), Some(2)]), None);
        assert_eq!(backtrack_with(&inst, &[None, Some(2)]), Some(vec![2, 2]));
    }
}
