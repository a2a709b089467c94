//! Block-by-block search along the chain of an edge-by-chain algebra.

use crate::csp::CspInstance;
use crate::error::{Error, Result};
use crate::structure::{detect_ec, EcStructure};

use super::{affine_solve, backtracking_solve, finish, unsupported, SolveOutcome, Strategy, TraceEvent};

/// For each variable, the nonempty intersections of its domain with the
/// classes of the chain, least first.
pub fn block_chains(inst: &CspInstance, ec: &EcStructure) -> Vec<Vec<Vec<usize>>> {
    inst.domains()
        .iter()
        .map(|d| {
            ec.class_order
                .iter()
                .map(|c| c.iter().copied().filter(|&a| d.contains(a)).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect()
        })
        .collect()
}

/// Whether `t(u,v) = u` whenever `u`'s class is at or below `v`'s.
fn almost_meet(ec: &EcStructure, alg: &crate::FiniteAlgebra) -> Result<bool> {
    let n = alg.size();
    let table = ec.t.table(alg, 2)?;
    Ok((0..n).all(|u| (0..n).all(|v| ec.level_of(u) > ec.level_of(v) || table[u * n + v] == u)))
}

fn block_solution(b: &CspInstance) -> Result<Option<Vec<usize>>> {
    let out = match affine_solve(b) {
        Ok(out) => out,
        Err(Error::Unsupported { .. } | Error::NonAffine(_)) => backtracking_solve(b)?,
        Err(e) => return Err(e),
    };
    Ok(out.witness)
}

/// Picks, variable by variable, the least block that keeps the partial
/// instance solvable.
pub fn least_block_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    let parent = inst
        .shared_algebra()
        .ok_or_else(|| unsupported("least-block", "domains live in different algebras"))?
        .clone();
    let ec = detect_ec(&parent)?.ok_or_else(|| unsupported("least-block", "parent is not edge-by-chain"))?;
    if !almost_meet(&ec, &parent)? {
        return Err(unsupported("least-block", "t is not a meet across classes"));
    }
    let chains = block_chains(inst, &ec);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut trace = Vec::new();
    let mut last = Some(Vec::new());
    for k in 0..inst.variable_count() {
        let partial = inst.partial_instance(k + 1)?;
        let mut found = None;
        for (j, block) in chains[k].iter().enumerate() {
            let mut blocks = chosen.clone();
            blocks.push(block.clone());
            if let Some(w) = block_solution(&partial.block_instance(&blocks)?)? {
                found = Some((j, w));
                break;
            }
        }
        let Some((j, w)) = found else {
            return finish(inst, Strategy::LeastBlock, None, trace);
        };
        trace.push(TraceEvent::BlockIndex { variable: k, j });
        chosen.push(chains[k][j].clone());
        last = Some(w);
    }
    let witness = match last {
        Some(w) if w.len() == inst.variable_count() => Some(w),
        _ => None,
    };
    let witness = if inst.variable_count() == 0 && inst.is_solution(&[]) { Some(Vec::new()) } else { witness };
    finish(inst, Strategy::LeastBlock, witness, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::csp::{all_solutions, brute_force_solve, Constraint};
    use crate::Decision;
    use std::sync::Arc;

    fn chain3() -> Arc<crate::FiniteAlgebra> {
        Arc::new(crate::FiniteAlgebra::binar(&[vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]).unwrap())
    }

    #[test]
    fn chain_semilattice_least_blocks() {
        let a = chain3();
        let r = Constraint::from_tuples(vec![0, 1], vec![vec![1, 2], vec![2, 1], vec![2, 2]]).unwrap();
        let inst = CspInstance::over(a, &[vec![1, 2], vec![1, 2], vec![0, 1, 2]], vec![r]).unwrap();
        let out = least_block_solve(&inst).unwrap();
        let w = out.witness.unwrap();
        // The least value per coordinate in turn, as the oracle finds it.
        assert_eq!(w, brute_force_solve(&inst).unwrap().unwrap());
        assert!(all_solutions(&inst).unwrap().contains(&w));
    }

    #[test]
    fn unsat_exhausts_every_block() {
        let a = chain3();
        let r = Constraint::from_tuples(vec![0], vec![vec![1]]).unwrap();
        let s = Constraint::from_tuples(vec![0], vec![vec![2]]).unwrap();
        let inst = CspInstance::over(a, &[vec![0, 1, 2]], vec![r, s]).unwrap();
        assert_eq!(least_block_solve(&inst).unwrap().decision, Decision::Unsat);
    }

    #[test]
    fn sq3_over_s2_family() {
        let a = Arc::new(catalog::sq3_over_s2(0));
        let inst = CspInstance::over(a, &[vec![0, 1, 2, 3], vec![0, 1]], vec![]).unwrap();
        assert!(least_block_solve(&inst).unwrap().is_sat());
    }
}
