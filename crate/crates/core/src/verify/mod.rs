//! Reproducible checks of the classification, the structural tables, the
//! product theorems and the worked examples.

mod classify;
mod examples;
mod theorems;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{FiniteAlgebra, Radix};
use crate::error::Result;
use crate::relation::Relation;
use crate::subuniverse::all_subuniverses_bounded;

pub use classify::{abelian_report, classify_cibs_report, masses_report, simple4_table_forms};
pub use examples::{
    identities_report, reproduce_majority_example, reproduce_mass_product_example, reproduce_xor_example,
};
pub use theorems::{verify_fry_pan, verify_linking, verify_rectangularity, Family, TheoremOptions};

/// Largest product whose subuniverses are enumerated exhaustively.
pub const EXHAUSTIVE_PRODUCT_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub description: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    /// Enumeration limits and anything left out because of them.
    pub notes: Vec<String>,
    /// Whether some cases rest on sampled rather than exhaustive enumeration.
    pub sampled: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), cases: Vec::new(), notes: Vec::new(), sampled: false }
    }

    /// Records a case; it passes when both sides serialize to the same JSON.
    pub fn check(&mut self, description: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> bool {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let pass = expected == actual;
        self.cases.push(Case { description: description.into(), expected, actual, pass });
        pass
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}/{} passed{}", self.suite, self.passed(), self.cases.len(),
            if self.sampled { " (sampled)" } else { "" })?;
        for c in &self.cases {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}", c.description)?;
            if !c.pass {
                writeln!(f, "       expected {}", c.expected)?;
                writeln!(f, "       actual   {}", c.actual)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Suite names accepted by [`run_suite`], in run order.
pub const SUITES: [&str; 10] = [
    "classify",
    "masses",
    "abelian",
    "rectangularity",
    "linking",
    "fry-pan",
    "mass-product",
    "majority",
    "xor",
    "identities",
];

/// Runs one named suite with default settings.
pub fn run_suite(name: &str, opts: &TheoremOptions) -> Result<VerificationReport> {
    match name {
        "classify" => classify_cibs_report(4),
        "masses" => masses_report(opts.bounds),
        "abelian" => abelian_report(4),
        "rectangularity" => verify_rectangularity(&Family::rectangularity_families(), opts),
        "linking" => verify_linking(&Family::linking_families(), opts),
        "fry-pan" => verify_fry_pan(2, 2, opts),
        "mass-product" => reproduce_mass_product_example(),
        "majority" => reproduce_majority_example(),
        "xor" => reproduce_xor_example(),
        "identities" => identities_report(),
        other => Err(crate::Error::Malformed(format!("unknown suite `{other}`"))),
    }
}

/// Every subdirect subuniverse of `Π factors`, found by enumerating the
/// subuniverses of the product algebra. Errors above `bound` elements.
pub fn subdirect_products(factors: &[FiniteAlgebra], bound: usize) -> Result<Vec<Relation>> {
    let prod = FiniteAlgebra::product(factors)?;
    let radix = Radix::new(factors.iter().map(FiniteAlgebra::size).collect());
    let domains: Vec<Vec<usize>> = factors.iter().map(|f| (0..f.size()).collect()).collect();
    let mut out = Vec::new();
    for s in all_subuniverses_bounded(&prod, bound)? {
        let rel = Relation::new(factors.len(), s.elements().iter().map(|&c| radix.decode(c)).collect())?;
        if rel.is_subdirect(&domains) {
            out.push(rel);
        }
    }
    Ok(out)
}
