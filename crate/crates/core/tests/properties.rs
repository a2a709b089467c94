use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use algcsp::algebra::{all_tuples, permutations};
use algcsp::catalog;
use algcsp::congruence::{congruence_lattice, principal_congruence};
use algcsp::csp::random::{random_instance, subuniverse_pool, RandomSpec};
use algcsp::csp::{all_solutions, brute_force_solve};
use algcsp::solvers::{affine_solve, backtracking_solve};
use algcsp::subuniverse::{all_subuniverses, closure};
use algcsp::term::star_compose;
use algcsp::{find_isomorphism, FiniteAlgebra, Term};

/// A commutative idempotent binar on `1..=max` elements.
fn cib(max: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0..n, n * (n - 1) / 2).prop_map(move |off| {
            let mut rows = vec![vec![0; n]; n];
            let mut k = 0;
            for x in 0..n {
                rows[x][x] = x;
                for y in x + 1..n {
                    rows[x][y] = off[k];
                    rows[y][x] = off[k];
                    k += 1;
                }
            }
            FiniteAlgebra::binar(&rows).unwrap()
        })
    })
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (0..2usize).prop_map(Term::var);
    leaf.prop_recursive(depth, 16, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_least_closed_superset(a in cib(5), seed in prop::collection::vec(0..5usize, 1..3)) {
        let seed: Vec<usize> = seed.into_iter().filter(|&x| x < a.size()).collect();
        prop_assume!(!seed.is_empty());
        let c = closure(&a, &seed).unwrap();
        prop_assert!(a.is_closed(c.elements()));
        prop_assert!(seed.iter().all(|&x| c.contains(x)));
        for s in all_subuniverses(&a).unwrap() {
            if seed.iter().all(|&x| s.contains(x)) {
                prop_assert!(c.is_subset(&s));
            }
        }
    }

    #[test]
    fn relabelling_is_found_again(a in cib(5), pick in any::<prop::sample::Index>()) {
        let perms = permutations(a.size());
        let perm = &perms[pick.index(perms.len())];
        let b = a.relabel(perm).unwrap();
        let map = find_isomorphism(&a, &b).expect("relabelling is an isomorphism");
        prop_assert!(a.is_isomorphism(&b, &map));
        prop_assert_eq!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn star_composition_evaluates_blockwise(f in term(3), g in term(3), env in prop::collection::vec(0..3usize, 4)) {
        let a = catalog::t1();
        let fg = star_compose(&f, 2, &g, 2);
        let inner = [g.eval(&a, &env[..2]).unwrap(), g.eval(&a, &env[2..]).unwrap()];
        prop_assert_eq!(fg.eval(&a, &env).unwrap(), f.eval(&a, &inner).unwrap());
    }

    #[test]
    fn congruence_lattice_axioms(a in cib(4)) {
        let lat = congruence_lattice(&a).unwrap();
        let n = lat.len();
        prop_assert!(lat.elements()[lat.bottom()].is_zero());
        prop_assert!(lat.elements()[lat.top()].is_one());
        for i in 0..n {
            prop_assert!(lat.elements()[i].is_compatible(&a));
            prop_assert_eq!(lat.meet(i, i), i);
            for j in 0..n {
                prop_assert_eq!(lat.meet(i, j), lat.meet(j, i));
                prop_assert_eq!(lat.join(i, j), lat.join(j, i));
                prop_assert_eq!(lat.meet(i, lat.join(i, j)), i);
                prop_assert_eq!(lat.join(i, lat.meet(i, j)), i);
                prop_assert_eq!(lat.leq(i, j), lat.meet(i, j) == i);
            }
        }
    }

    #[test]
    fn principal_congruence_is_least(a in cib(4), x in 0..4usize, y in 0..4usize) {
        prop_assume!(x < a.size() && y < a.size());
        let cg = principal_congruence(&a, x, y).unwrap();
        prop_assert!(cg.related(x, y));
        prop_assert!(cg.is_compatible(&a));
        for c in congruence_lattice(&a).unwrap().elements() {
            if c.related(x, y) {
                prop_assert!(cg.le(c));
            }
        }
    }

    #[test]
    fn transforms_keep_solutions(seed in any::<u64>()) {
        let a = Arc::new(catalog::example_a());
        let pool = subuniverse_pool(&a, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = RandomSpec { max_variables: 5, ..RandomSpec::default() };
        let inst = random_instance(&mut rng, &a, &pool, spec).unwrap();
        let thetas: Vec<_> = inst
            .domains()
            .iter()
            .map(|d| {
                let lat = congruence_lattice(&d.subalgebra().unwrap()).unwrap();
                lat.elements()[(seed as usize) % lat.len()].clone()
            })
            .collect();
        let q = inst.quotient_instance(&thetas).unwrap();
        for x in all_solutions(&inst).unwrap() {
            prop_assert!(q.instance.is_solution(&q.project(&x)));
            prop_assert!(inst.block_instance_at(&x, &thetas).unwrap().is_solution(&x));
            for k in 0..=x.len() {
                prop_assert!(inst.partial_instance(k).unwrap().is_solution(&x[..k]));
            }
        }
    }

    #[test]
    fn affine_and_backtracking_match_oracle(seed in any::<u64>()) {
        let a = Arc::new(catalog::sq3());
        let pool = subuniverse_pool(&a, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, &a, &pool, RandomSpec::dense()).unwrap();
        let oracle = brute_force_solve(&inst).unwrap().is_some();
        prop_assert_eq!(affine_solve(&inst).unwrap().is_sat(), oracle);
        prop_assert_eq!(backtracking_solve(&inst).unwrap().is_sat(), oracle);
    }

    #[test]
    fn relation_projection_of_product(sets in prop::collection::vec(prop::collection::btree_set(0..3usize, 1..3), 1..4)) {
        let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let r = algcsp::Relation::product(&sets);
        prop_assert_eq!(r.len(), sets.iter().map(Vec::len).product::<usize>());
        for i in 0..sets.len() {
            prop_assert_eq!(r.coordinate_values(i), sets[i].clone());
        }
        prop_assert!(r.is_subdirect(&sets));
    }
}

#[test]
fn tuples_are_lexicographic() {
    let t: Vec<Vec<usize>> = all_tuples(2, 2).collect();
    assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
}
