//! Strategy selection from the structure of the parent algebra.

use crate::catalog;
use crate::csp::{CspInstance, ORACLE_BOUND};
use crate::error::{Error, Result};
use crate::structure::{affine_representation, detect_ec};

use super::sq3s2::classify_domains;
use super::simple4::simple4_index;
use super::{backtrack_with, finish, oracle_solve, solve, SolveOutcome, Strategy};

/// The strategy `auto` would run. Instances that fail validation, and
/// parents outside every recognized class, get [`Strategy::Fallback`].
pub fn choose_strategy(inst: &CspInstance) -> Result<Strategy> {
    if !inst.validate()?.is_empty() {
        return Ok(Strategy::Fallback);
    }
    let Some(parent) = inst.shared_algebra() else {
        return Ok(if classify_domains(inst).is_ok() { Strategy::Sq3s2 } else { Strategy::Fallback });
    };
    if parent.is_semilattice().unwrap_or(false) {
        return Ok(Strategy::Backtracking);
    }
    if affine_representation(parent).is_some() {
        return Ok(Strategy::Affine);
    }
    if parent.size() == 4 && crate::find_isomorphism(parent, &catalog::example_a()).is_some() {
        return Ok(Strategy::QuotientBlock);
    }
    if parent.size() == 4 && simple4_index(inst).is_some() {
        return Ok(Strategy::Simple4);
    }
    if classify_domains(inst).is_ok() {
        return Ok(Strategy::Sq3s2);
    }
    if detect_ec(parent)?.is_some() {
        return Ok(Strategy::LeastBlock);
    }
    Ok(Strategy::Fallback)
}

fn fallback(inst: &CspInstance) -> Result<SolveOutcome> {
    if inst.search_space() <= ORACLE_BOUND {
        let out = oracle_solve(inst)?;
        finish(inst, Strategy::Fallback, out.witness, Vec::new())
    } else {
        finish(inst, Strategy::Fallback, backtrack_with(inst, &[]), Vec::new())
    }
}

/// Runs the strategy picked by [`choose_strategy`]. A structural strategy
/// that turns out not to apply hands over to the fallback.
pub fn dispatch_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    match choose_strategy(inst)? {
        Strategy::Fallback => fallback(inst),
        s => match solve(inst, s) {
            Err(Error::Unsupported { .. } | Error::NonAffine(_)) => fallback(inst),
            other => other,
        },
    }
}
