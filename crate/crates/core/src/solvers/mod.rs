//! Solving strategies for CSP instances and a dispatcher that picks one.

mod affine;
mod backtracking;
mod dispatch;
mod least_block;
mod quotient_block;
mod simple4;
mod sq3s2;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{find_isomorphism, FiniteAlgebra};
use crate::csp::{brute_force_solve, Constraint, CspInstance, Domain};
use crate::relation::Relation;
use crate::error::{Error, Result};

pub use affine::affine_solve;
pub use backtracking::{backtracking_solve, backtrack_with};
pub use dispatch::{choose_strategy, dispatch_solve};
pub use least_block::{least_block_solve, block_chains};
pub use quotient_block::quotient_block_solve;
pub use simple4::simple4_solve;
pub use sq3s2::sq3s2_solve;

/// Strategy tags, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Oracle,
    Backtracking,
    Affine,
    Sq3s2,
    QuotientBlock,
    Simple4,
    LeastBlock,
    Auto,
    /// The oracle (or backtracking, past the oracle bound) used because no
    /// structural strategy applied.
    Fallback,
}

impl Strategy {
    pub const ALL: [Strategy; 9] = [
        Strategy::Oracle,
        Strategy::Backtracking,
        Strategy::Affine,
        Strategy::Sq3s2,
        Strategy::QuotientBlock,
        Strategy::Simple4,
        Strategy::LeastBlock,
        Strategy::Auto,
        Strategy::Fallback,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Oracle => "oracle",
            Strategy::Backtracking => "backtracking",
            Strategy::Affine => "affine",
            Strategy::Sq3s2 => "sq3s2",
            Strategy::QuotientBlock => "quotient-block",
            Strategy::Simple4 => "simple4",
            Strategy::LeastBlock => "least-block",
            Strategy::Auto => "auto",
            Strategy::Fallback => "fallback",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.tag() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown strategy `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Sat,
    Unsat,
}

/// Steps recorded by the structural solvers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    /// Variables handled by the abelian part of the instance.
    Alpha { variables: Vec<usize> },
    /// A solution of the quotient instance, as class indices.
    QuotientSolution { values: Vec<usize> },
    /// The least block index `j` found for variable `k`.
    BlockIndex { variable: usize, j: usize },
    /// Whether the solution of the abelian part extended directly.
    SeedExtended { extended: bool },
    /// The parent algebra was relabelled onto a catalog algebra.
    Relabelled { map: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub witness: Option<Vec<usize>>,
    pub strategy: Strategy,
    pub trace: Vec<TraceEvent>,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.decision == Decision::Sat
    }
}

/// Builds an outcome, re-verifying the witness against the instance.
pub(crate) fn finish(
    inst: &CspInstance,
    strategy: Strategy,
    witness: Option<Vec<usize>>,
    trace: Vec<TraceEvent>,
) -> Result<SolveOutcome> {
    if let Some(w) = &witness {
        if !inst.is_solution(w) {
            return Err(Error::WitnessRejected(format!("{strategy} produced {w:?}")));
        }
    }
    let decision = if witness.is_some() { Decision::Sat } else { Decision::Unsat };
    Ok(SolveOutcome { decision, witness, strategy, trace })
}

pub(crate) fn unsupported(strategy: &'static str, reason: impl Into<String>) -> Error {
    Error::Unsupported { strategy, reason: reason.into() }
}

/// When every domain lives in one algebra isomorphic to `target`, the
/// instance carried over to `target` along the isomorphism, and the map.
pub(crate) fn relabel_onto(inst: &CspInstance, target: &FiniteAlgebra) -> Result<Option<(CspInstance, Vec<usize>)>> {
    let Some(parent) = inst.shared_algebra() else { return Ok(None) };
    let Some(map) = find_isomorphism(parent, target) else { return Ok(None) };
    let target = Arc::new(target.clone());
    let domains = inst
        .domains()
        .iter()
        .map(|d| Domain::new(target.clone(), &d.elements().iter().map(|&a| map[a]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let constraints = inst
        .constraints()
        .iter()
        .map(|c| {
            let tuples = c.relation().tuples().iter().map(|t| t.iter().map(|&a| map[a]).collect()).collect();
            Constraint::new(c.scope().to_vec(), Relation::new(c.arity(), tuples)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((CspInstance::new(domains, constraints)?, map)))
}

/// Maps a witness back along `map`.
pub(crate) fn unmap(witness: Option<Vec<usize>>, map: &[usize]) -> Option<Vec<usize>> {
    witness.map(|w| w.iter().map(|&b| map.iter().position(|&m| m == b).expect("bijection")).collect())
}

/// The exhaustive oracle wrapped as a strategy.
pub fn oracle_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    finish(inst, Strategy::Oracle, brute_force_solve(inst)?, Vec::new())
}

/// Runs the named strategy.
pub fn solve(inst: &CspInstance, strategy: Strategy) -> Result<SolveOutcome> {
    match strategy {
        Strategy::Oracle => oracle_solve(inst),
        Strategy::Backtracking => backtracking_solve(inst),
        Strategy::Affine => affine_solve(inst),
        Strategy::Sq3s2 => sq3s2_solve(inst),
        Strategy::QuotientBlock => quotient_block_solve(inst),
        Strategy::Simple4 => simple4_solve(inst),
        Strategy::LeastBlock => least_block_solve(inst),
        Strategy::Auto | Strategy::Fallback => dispatch_solve(inst),
    }
}
