//! Acceptance run: one line per criterion, exit status 1 if any fails.
//!
//! Built with `harness = false`, so `cargo test --test acceptance` prints the
//! lines without `--nocapture`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use algcsp::catalog;
use algcsp::congruence::congruence_lattice;
use algcsp::csp::random::{random_instance, subuniverse_pool, RandomSpec};
use algcsp::csp::{all_solutions, brute_force_solve};
use algcsp::solvers::{least_block_solve, quotient_block_solve, simple4_solve, sq3s2_solve};
use algcsp::structure::AbsorptionBounds;
use algcsp::verify::{
    abelian_report, classify_cibs_report, identities_report, masses_report, reproduce_majority_example,
    reproduce_mass_product_example, reproduce_xor_example, verify_fry_pan, verify_linking,
    verify_rectangularity, Family, TheoremOptions, VerificationReport,
};
use algcsp::{Congruence, CspInstance, FiniteAlgebra, Result, SolveOutcome};

/// Instances per solver family in criterion 6.
const SOLVER_INSTANCES: usize = 500;
/// Abelian subuniverses are drawn this many times more often than the rest.
const POOL_BOOST: usize = 8;
/// Triples checked in criterion 8.
const TRANSFORM_TRIPLES: usize = 1000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn reports(rs: &[VerificationReport]) -> Verdict {
    let failed: usize = rs.iter().map(VerificationReport::failed).sum();
    let total: usize = rs.iter().map(|r| r.cases.len()).sum();
    let sampled = rs.iter().any(|r| r.sampled);
    let mut detail = format!("{}/{total} cases", total - failed);
    for r in rs.iter().filter(|r| !r.all_pass()) {
        for c in r.cases.iter().filter(|c| !c.pass) {
            detail.push_str(&format!("; {}: {} failed", r.suite, c.description));
        }
    }
    if sampled {
        detail.push_str("; sampled");
    }
    Verdict { pass: failed == 0 && !sampled, detail }
}

fn classification() -> Result<Verdict> {
    Ok(reports(&[classify_cibs_report(4)?]))
}

fn structural_tables() -> Result<Verdict> {
    let r = masses_report(AbsorptionBounds::default())?;
    Ok(reports(&[r]))
}

fn abelianness() -> Result<Verdict> {
    Ok(reports(&[abelian_report(4)?]))
}

fn counterexamples() -> Result<Verdict> {
    Ok(reports(&[reproduce_mass_product_example()?, reproduce_majority_example()?, reproduce_xor_example()?]))
}

fn theorem_verifiers() -> Result<Verdict> {
    let opts = TheoremOptions::default();
    Ok(reports(&[
        verify_rectangularity(&Family::rectangularity_families(), &opts)?,
        verify_linking(&Family::linking_families(), &opts)?,
        verify_fry_pan(2, 2, &opts)?,
    ]))
}

type Solver = fn(&CspInstance) -> Result<SolveOutcome>;

struct Tally {
    instances: usize,
    unsat: usize,
    disagreements: Vec<String>,
}

fn scan(tally: &mut Tally, label: &str, solver: Solver, alg: FiniteAlgebra, pool: Vec<Vec<usize>>, seed: u64) -> Result<()> {
    let alg = Arc::new(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..SOLVER_INSTANCES {
        let inst = random_instance(&mut rng, &alg, &pool, RandomSpec::dense())?;
        let oracle = brute_force_solve(&inst)?;
        tally.instances += 1;
        tally.unsat += usize::from(oracle.is_none());
        match solver(&inst) {
            Ok(out) => {
                let witness_ok = out.witness.as_ref().is_none_or(|w| inst.is_solution(w));
                if out.is_sat() != oracle.is_some() || !witness_ok {
                    tally.disagreements.push(format!("{label} #{k}"));
                }
            }
            Err(e) => tally.disagreements.push(format!("{label} #{k}: {e}")),
        }
    }
    Ok(())
}

fn solver_equivalence() -> Result<Verdict> {
    let mut t = Tally { instances: 0, unsat: 0, disagreements: Vec::new() };
    let example = catalog::example_a();
    let mut sq3s2_pool = vec![vec![1, 2, 3]; 3];
    sq3s2_pool.extend([vec![0, 1], vec![2]]);
    scan(&mut t, "sq3s2", sq3s2_solve, example.clone(), sq3s2_pool, 1)?;
    let pool = subuniverse_pool(&example, POOL_BOOST)?;
    scan(&mut t, "quotient-block", quotient_block_solve, example, pool, 2)?;
    for i in 0..7 {
        let a = catalog::simple4(i);
        let pool = subuniverse_pool(&a, POOL_BOOST)?;
        scan(&mut t, &format!("simple4 a{i}"), simple4_solve, a, pool, 10 + i as u64)?;
    }
    for (i, a) in catalog::semilattice_over_sq3().into_iter().enumerate() {
        let pool = subuniverse_pool(&a, POOL_BOOST)?;
        scan(&mut t, &format!("least-block #{i}"), least_block_solve, a, pool, 20 + i as u64)?;
    }
    let mut detail = format!(
        "{} instances, {} unsat, {} disagreements",
        t.instances,
        t.unsat,
        t.disagreements.len()
    );
    if let Some(first) = t.disagreements.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Ok(Verdict { pass: t.disagreements.is_empty() && t.instances == 16 * SOLVER_INSTANCES, detail })
}

fn identities() -> Result<Verdict> {
    Ok(reports(&[identities_report()?]))
}

/// Random congruence of each domain, indexed by position within the domain.
fn random_thetas(rng: &mut ChaCha8Rng, inst: &CspInstance) -> Result<Vec<Congruence>> {
    inst.domains()
        .iter()
        .map(|d| {
            let lat = congruence_lattice(&d.subalgebra()?)?;
            Ok(lat.elements().choose(rng).expect("nonempty lattice").clone())
        })
        .collect()
}

fn transform_coherence() -> Result<Verdict> {
    let mut algebras = vec![catalog::example_a(), catalog::sq3(), catalog::mass_products_3(), catalog::s2()];
    algebras.extend((0..7).map(catalog::simple4));
    algebras.extend(catalog::semilattice_over_sq3());
    let algebras: Vec<(Arc<FiniteAlgebra>, Vec<Vec<usize>>)> = algebras
        .into_iter()
        .map(|a| {
            let pool = subuniverse_pool(&a, 1)?;
            Ok((Arc::new(a), pool))
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = RandomSpec { max_variables: 6, ..RandomSpec::default() };
    let (mut triples, mut failures) = (0, Vec::new());
    while triples < TRANSFORM_TRIPLES {
        let (alg, pool) = algebras.choose(&mut rng).expect("nonempty");
        let inst = random_instance(&mut rng, alg, pool, spec)?;
        let sols = all_solutions(&inst)?;
        let Some(x) = sols.choose(&mut rng) else { continue };
        let thetas = random_thetas(&mut rng, &inst)?;
        triples += 1;
        let q = inst.quotient_instance(&thetas)?;
        let quotient_ok = q.instance.is_solution(&q.project(x));
        let block_ok = inst.block_instance_at(x, &thetas)?.is_solution(x);
        let k = rng.gen_range(0..=inst.variable_count());
        let partial_ok = inst.partial_instance(k)?.is_solution(&x[..k]);
        if !(quotient_ok && block_ok && partial_ok) {
            failures.push(format!("triple {triples}: quotient {quotient_ok}, block {block_ok}, partial {partial_ok}"));
        }
    }
    let mut detail = format!("{triples} triples, {} failures", failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    Ok(Verdict { pass: failures.is_empty(), detail })
}

type Check = fn() -> Result<Verdict>;

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Check); 8] = [
        ("classification", Duration::from_secs(60), classification),
        ("structural tables", Duration::from_secs(60), structural_tables),
        ("abelianness", Duration::from_secs(120), abelianness),
        ("counterexamples", Duration::from_secs(10), counterexamples),
        ("theorem verifiers", Duration::from_secs(300), theorem_verifiers),
        ("solver/oracle equivalence", Duration::from_secs(600), solver_equivalence),
        ("identities", Duration::from_secs(1), identities),
        ("transform coherence", Duration::from_secs(60), transform_coherence),
    ];
    let mut all = true;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match verdict {
            Ok(v) => (v.pass && elapsed <= limit, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        println!(
            "criterion {} {name}: {} ({:.2}s, limit {}s) {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
