//! Instances over the subalgebras of the 4-element algebra with quotient `Sq3`.

use crate::catalog;
use crate::congruence::Congruence;
use crate::csp::CspInstance;
use crate::error::Result;

use super::{finish, relabel_onto, sq3s2_solve, unmap, unsupported, Decision, SolveOutcome, Strategy, TraceEvent};

/// Factors out `|0,1|2|3|` on full domains, solves the quotient over
/// `Sq3` and `S2`, and lifts the solution back.
pub fn quotient_block_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    let target = catalog::example_a();
    let (local, map) = relabel_onto(inst, &target)?
        .ok_or_else(|| unsupported("quotient-block", "parent algebra is not the expected 4-element algebra"))?;
    let mut trace = Vec::new();
    if map.iter().enumerate().any(|(a, &b)| a != b) {
        trace.push(TraceEvent::Relabelled { map: map.clone() });
    }
    let big = Congruence::from_labels(&[0, 0, 2, 3])?;
    let thetas: Vec<Congruence> = local
        .domains()
        .iter()
        .map(|d| if d.len() == 4 { big.clone() } else { Congruence::zero(d.len()) })
        .collect();
    let q = local.quotient_instance(&thetas)?;
    let sub = sq3s2_solve(&q.instance)?;
    if sub.decision == Decision::Unsat {
        return finish(inst, Strategy::QuotientBlock, None, trace);
    }
    let f = sub.witness.expect("sat outcome has a witness");
    trace.push(TraceEvent::QuotientSolution { values: f.clone() });
    let g: Vec<usize> = (0..local.variable_count())
        .map(|i| {
            let d = local.domain(i).elements();
            let class = &q.classes[i][f[i]];
            if d == [0, 1] || class.len() > 1 {
                0
            } else {
                class[0]
            }
        })
        .collect();
    finish(inst, Strategy::QuotientBlock, unmap(Some(g), &map), trace)
}
