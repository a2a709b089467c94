//! Seeded generation of random subdirect instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relation::{subpower_closure, Relation};
use crate::structure::is_abelian;
use crate::subuniverse::all_subuniverses;

use super::{Constraint, CspInstance};

/// Shape limits for [`random_instance`].
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub min_variables: usize,
    pub max_variables: usize,
    pub min_constraints: usize,
    pub max_constraints: usize,
    pub max_arity: usize,
    /// Random generators drawn before subdirectness is repaired.
    pub max_generators: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self { min_variables: 1, max_variables: 8, min_constraints: 0, max_constraints: 10, max_arity: 3, max_generators: 2 }
    }
}

impl RandomSpec {
    /// At least 3 variables and 5 constraints, one generator per relation:
    /// smaller relations, so unsatisfiable instances are less rare.
    pub fn dense() -> Self {
        Self { min_variables: 3, min_constraints: 5, max_generators: 1, ..Self::default() }
    }
}

/// Every subuniverse of `alg`, with the abelian ones of more than one
/// element repeated `boost` times. Unsatisfiable instances over the algebras
/// here come from their abelian parts.
pub fn subuniverse_pool(alg: &FiniteAlgebra, boost: usize) -> Result<Vec<Vec<usize>>> {
    let mut pool = Vec::new();
    for s in all_subuniverses(alg)? {
        let e = s.elements().to_vec();
        let k = if e.len() > 1 && is_abelian(&alg.restrict(&e)?)? { boost.max(1) } else { 1 };
        pool.extend(std::iter::repeat_n(e, k));
    }
    Ok(pool)
}

/// A random subuniverse of `Π domains` (all inside `alg`) that projects onto
/// every domain. Starts from a few random tuples and adds a tuple through
/// each missing value until the closure is subdirect.
pub fn random_subdirect<R: Rng + ?Sized>(
    rng: &mut R,
    alg: &FiniteAlgebra,
    domains: &[Vec<usize>],
    max_generators: usize,
) -> Result<Relation> {
    if domains.iter().any(Vec::is_empty) {
        return Err(Error::Malformed("empty domain".into()));
    }
    let factors = vec![alg; domains.len()];
    let pick = |rng: &mut R| -> Vec<usize> { domains.iter().map(|d| *d.choose(rng).expect("nonempty")).collect() };
    let count = rng.gen_range(1..=max_generators.max(1));
    let mut gens: Vec<Vec<usize>> = (0..count).map(|_| pick(rng)).collect();
    loop {
        let rel = subpower_closure(&factors, &gens)?;
        let mut gaps = Vec::new();
        for (pos, d) in domains.iter().enumerate() {
            let values = rel.coordinate_values(pos);
            gaps.extend(d.iter().filter(|a| values.binary_search(a).is_err()).map(|&a| (pos, a)));
        }
        let Some(&(pos, a)) = gaps.choose(rng) else {
            return Ok(rel);
        };
        let mut t = pick(rng);
        t[pos] = a;
        gens.push(t);
    }
}

/// A random instance over `alg` whose domains are drawn from `pool` (each a
/// subuniverse) and whose constraints are subdirect.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    alg: &Arc<FiniteAlgebra>,
    pool: &[Vec<usize>],
    spec: RandomSpec,
) -> Result<CspInstance> {
    if pool.is_empty() {
        return Err(Error::Malformed("empty domain pool".into()));
    }
    let n = rng.gen_range(spec.min_variables.clamp(1, spec.max_variables.max(1))..=spec.max_variables.max(1));
    let domains: Vec<Vec<usize>> = (0..n).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
    let j = rng.gen_range(spec.min_constraints.min(spec.max_constraints)..=spec.max_constraints);
    let vars: Vec<usize> = (0..n).collect();
    let mut constraints = Vec::with_capacity(j);
    for _ in 0..j {
        let m = rng.gen_range(1..=spec.max_arity.min(n).max(1));
        let scope: Vec<usize> = vars.choose_multiple(rng, m).copied().collect();
        let doms: Vec<Vec<usize>> = scope.iter().map(|&v| domains[v].clone()).collect();
        let rel = random_subdirect(rng, alg, &doms, spec.max_generators)?;
        constraints.push(Constraint::new(scope, rel)?);
    }
    CspInstance::over(alg.clone(), &domains, constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_validate() {
        let a = Arc::new(catalog::example_a());
        let pool = vec![vec![0, 1, 2, 3], vec![1, 2, 3], vec![0, 1], vec![2]];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let inst = random_instance(&mut rng, &a, &pool, RandomSpec::default()).unwrap();
            assert!(inst.validate().unwrap().is_empty());
        }
    }

    #[test]
    fn pool_boosts_abelian_blocks() {
        let pool = subuniverse_pool(&catalog::simple4(0), 3).unwrap();
        assert_eq!(pool.iter().filter(|d| **d == [1, 2, 3]).count(), 3);
        assert_eq!(pool.iter().filter(|d| **d == [0, 1, 2, 3]).count(), 1);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = Arc::new(catalog::sq3());
        let pool = vec![vec![0, 1, 2]];
        let gen = |seed| random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &a, &pool, RandomSpec::default()).unwrap();
        assert_eq!(gen(3), gen(3));
    }
}
