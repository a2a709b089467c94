//! Instances whose domains are copies of `Sq3` and of the 2-element semilattice.

use crate::algebra::find_isomorphism;
use crate::catalog;
use crate::csp::CspInstance;
use crate::error::{Error, Result};

use super::{affine_solve, finish, unsupported, Decision, SolveOutcome, Strategy, TraceEvent};

/// Per variable, `None` for an `Sq3` copy and `Some(bottom)` for a
/// semilattice or one-element domain.
pub(crate) fn classify_domains(inst: &CspInstance) -> Result<Vec<Option<usize>>> {
    let (sq3, s2) = (catalog::sq3(), catalog::s2());
    inst.domains()
        .iter()
        .enumerate()
        .map(|(i, d)| match d.len() {
            1 => Ok(Some(d.elements()[0])),
            2 | 3 => {
                let sub = d.subalgebra()?;
                let template = if d.len() == 3 { &sq3 } else { &s2 };
                if find_isomorphism(&sub, template).is_none() {
                    return Err(unsupported("sq3s2", format!("domain of x{i} is neither Sq3 nor S2")));
                }
                if d.len() == 3 {
                    Ok(None)
                } else {
                    let (a, b) = (d.elements()[0], d.elements()[1]);
                    Ok(Some(d.algebra().mul()?.apply2(a, b)))
                }
            }
            _ => Err(unsupported("sq3s2", format!("domain of x{i} has {} elements", d.len()))),
        })
        .collect()
}

/// Solves the `Sq3` part by linear algebra and puts the semilattice bottom
/// everywhere else.
pub fn sq3s2_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    let kinds = classify_domains(inst)?;
    let alpha: Vec<usize> = (0..kinds.len()).filter(|&i| kinds[i].is_none()).collect();
    let trace = vec![TraceEvent::Alpha { variables: alpha.clone() }];
    let sub = affine_solve(&inst.sub_instance(&alpha)?)?;
    if sub.decision == Decision::Unsat {
        return finish(inst, Strategy::Sq3s2, None, trace);
    }
    let f = sub.witness.expect("sat outcome has a witness");
    let mut g: Vec<usize> = kinds.iter().map(|k| k.unwrap_or(0)).collect();
    for (pos, &i) in alpha.iter().enumerate() {
        g[i] = f[pos];
    }
    if !inst.is_solution(&g) {
        return Err(Error::WitnessRejected(format!("bottom extension {g:?} of the Sq3 part fails")));
    }
    finish(inst, Strategy::Sq3s2, Some(g), trace)
}
