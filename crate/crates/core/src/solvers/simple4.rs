//! Instances over the subalgebras of one of the seven simple 4-element algebras.

use crate::catalog;
use crate::csp::CspInstance;
use crate::error::{Error, Result};

use super::{
    affine_solve, backtrack_with, finish, relabel_onto, unmap, unsupported, Decision, SolveOutcome, Strategy,
    TraceEvent,
};

/// Index `i` of the catalog algebra `A_i` isomorphic to the shared parent.
pub(crate) fn simple4_index(inst: &CspInstance) -> Option<usize> {
    let parent = inst.shared_algebra()?;
    (0..7).find(|&i| crate::find_isomorphism(parent, &catalog::simple4(i)).is_some())
}

/// Decides through the `Sq3` copy `{1,2,3}`; the witness comes from search
/// seeded with the solution there.
pub fn simple4_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    let i = simple4_index(inst).ok_or_else(|| unsupported("simple4", "parent is none of the seven algebras"))?;
    let (local, map) = relabel_onto(inst, &catalog::simple4(i))?.expect("isomorphic");
    let alpha: Vec<usize> = (0..local.variable_count()).filter(|&v| local.domain(v).elements() == [1, 2, 3]).collect();
    let mut trace = vec![TraceEvent::Alpha { variables: alpha.clone() }];
    let sub = affine_solve(&local.sub_instance(&alpha)?)?;
    if sub.decision == Decision::Unsat {
        return finish(inst, Strategy::Simple4, None, trace);
    }
    let f = sub.witness.expect("sat outcome has a witness");
    let mut seed = vec![None; local.variable_count()];
    for (pos, &v) in alpha.iter().enumerate() {
        seed[v] = Some(f[pos]);
    }
    let seeded = backtrack_with(&local, &seed);
    trace.push(TraceEvent::SeedExtended { extended: seeded.is_some() });
    let witness = match seeded {
        Some(w) => w,
        None => backtrack_with(&local, &[])
            .ok_or_else(|| Error::WitnessRejected("solvable Sq3 part but no solution of the instance".into()))?,
    };
    finish(inst, Strategy::Simple4, unmap(Some(witness), &map), trace)
}
