use crate::algebra::FiniteAlgebra;
use crate::congruence::congruence_lattice;
use crate::error::{Error, Result};
use crate::subuniverse::all_subuniverses;

/// A cube-term blocker `(D, S)` of a CIB, found from a subalgebra `S` with a
/// two-element semilattice quotient; `D` is the preimage of its bottom.
pub fn has_ctb_cib(alg: &FiniteAlgebra) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if !alg.is_cib() {
        return Err(Error::NotCib);
    }
    for sub in all_subuniverses(alg)? {
        if sub.len() < 2 {
            continue;
        }
        let b = alg.restrict(sub.elements())?;
        let lat = congruence_lattice(&b)?;
        for theta in lat.elements() {
            if theta.num_blocks() != 2 {
                continue;
            }
            // The only two-element CIB is the semilattice; find its bottom.
            let q = b.quotient(theta)?;
            let op = q.algebra.mul()?;
            let bottom = op.apply2(0, 1);
            let d: Vec<usize> = (0..b.size())
                .filter(|&i| q.class_of[i] == bottom)
                .map(|i| sub.elements()[i])
                .collect();
            return Ok(Some((d, sub.elements().to_vec())));
        }
    }
    Ok(None)
}

/// A CIB has an edge term exactly when it has no cube-term blocker.
pub fn has_edge_term_cib(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(has_ctb_cib(alg)?.is_none())
}
