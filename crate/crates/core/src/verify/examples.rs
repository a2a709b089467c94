//! The worked examples: mass products, the majority and sum counterexamples,
//! and the identities of the 4-element example algebra.

use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Radix};
use crate::catalog;
use crate::congruence::{congruence_lattice, projection_kernel, Congruence};
use crate::csp::{brute_force_solve, Constraint, CspInstance};
use crate::error::Result;
use crate::relation::Relation;
use crate::structure::{check_absorbing, iterate_second, minimal_absorbing, AbsorptionBounds};
use crate::subuniverse::all_subuniverses;
use crate::term::Term;

use super::VerificationReport;

fn rel(arity: usize, tuples: &[&[usize]]) -> Relation {
    Relation::new(arity, tuples.iter().map(|t| t.to_vec()).collect()).expect("literal relation")
}

fn masses(a: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    Ok(minimal_absorbing(a, AbsorptionBounds::default())?.masses.iter().map(|s| s.elements().to_vec()).collect())
}

fn meets(r: &Relation, prod: &Relation) -> bool {
    prod.tuples().iter().any(|t| r.contains(t))
}

/// Two binary constraints over the 3-element algebra with masses `{1}` and
/// `{2}` whose only common tuple lies outside every product of masses.
pub fn reproduce_mass_product_example() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("mass-product");
    let a = catalog::mass_products_3();
    let r = rel(2, &[&[0, 0], &[1, 1], &[2, 2]]);
    let s = rel(2, &[&[0, 0], &[1, 2], &[2, 1]]);
    rep.check("R and S are subuniverses of A^2", [true, true], [r.is_closed_in(&[&a, &a])?, s.is_closed_in(&[&a, &a])?]);
    let ma = masses(&a)?;
    rep.check("masses of A", vec![vec![1], vec![2]], ma.clone());
    let sq = a.power(2)?;
    let radix = Radix::new(vec![3, 3]);
    let msq: Vec<Vec<Vec<usize>>> =
        masses(&sq)?.iter().map(|m| m.iter().map(|&c| radix.decode(c)).collect()).collect();
    rep.check(
        "masses of A x A",
        vec![vec![vec![1, 1]], vec![vec![1, 2]], vec![vec![2, 1]], vec![vec![2, 2]]],
        msq,
    );
    rep.check("R ∩ S", vec![vec![0, 0]], r.intersect(&s)?.tuples().to_vec());
    let pattern = |x: &Relation| -> Vec<Vec<bool>> {
        ma.iter()
            .map(|bi| ma.iter().map(|bj| meets(x, &Relation::product(&[bi.clone(), bj.clone()]))).collect())
            .collect()
    };
    rep.check("R meets B_i x B_j exactly when i = j", vec![vec![true, false], vec![false, true]], pattern(&r));
    rep.check("S meets B_i x B_j exactly when i ≠ j", vec![vec![false, true], vec![true, false]], pattern(&s));
    let inst = CspInstance::over(
        Arc::new(a),
        &[vec![0, 1, 2], vec![0, 1, 2]],
        vec![Constraint::new(vec![0, 1], r)?, Constraint::new(vec![0, 1], s)?],
    )?;
    rep.check("the instance {R, S} has the solution (0,0)", Some(vec![0, 0]), brute_force_solve(&inst)?);
    Ok(rep)
}

/// Two ternary relations over the majority algebra that each contain every
/// mass product they meet, with no mass product meeting both.
pub fn reproduce_majority_example() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("majority");
    let m = catalog::majority();
    let r = rel(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
    let s = rel(3, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]);
    let f = [&m, &m, &m];
    rep.check("R is closed under the majority operation", true, r.is_closed_in(&f)?);
    rep.check("S is closed under the majority operation", true, s.is_closed_in(&f)?);
    let ms = masses(&m)?;
    rep.check("masses of the majority algebra", vec![vec![0], vec![1]], ms.clone());
    let mut products = vec![Vec::<Vec<usize>>::new()];
    for _ in 0..3 {
        products = products
            .into_iter()
            .flat_map(|p| ms.iter().map(move |b| [p.clone(), vec![b.clone()]].concat()))
            .collect();
    }
    let contains_met = |x: &Relation| {
        products.iter().all(|p| {
            let prod = Relation::product(p);
            !meets(x, &prod) || prod.tuples().iter().all(|t| x.contains(t))
        })
    };
    rep.check("R contains every mass product it meets", true, contains_met(&r));
    rep.check("S contains every mass product it meets", true, contains_met(&s));
    let both: Vec<Vec<Vec<usize>>> = products
        .iter()
        .filter(|p| {
            let prod = Relation::product(p);
            meets(&r, &prod) && meets(&s, &prod)
        })
        .cloned()
        .collect();
    rep.check("mass products meeting both R and S", Vec::<Vec<Vec<usize>>>::new(), both);
    Ok(rep)
}

/// Labels for triples: `x + 2y + 4z`.
fn label(t: &[usize]) -> usize {
    t[0] + 2 * t[1] + 4 * t[2]
}

/// Blocks of a partition of `r`'s tuples, written with triple labels.
fn labelled_blocks(r: &Relation, theta: &Congruence) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = theta
        .blocks()
        .iter()
        .map(|b| {
            let mut l: Vec<usize> = b.iter().map(|&i| label(&r.tuples()[i])).collect();
            l.sort_unstable();
            l
        })
        .collect();
    blocks.sort();
    blocks
}

/// The relation `x + y + z = 0` over `({0,1}, x + y + z)` and its complement.
pub fn reproduce_xor_example() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("xor");
    let a = catalog::xor();
    let all: Vec<Vec<usize>> = crate::algebra::all_tuples(2, 3).collect();
    let r = Relation::new(3, all.iter().filter(|t| t.iter().sum::<usize>() % 2 == 0).cloned().collect())?;
    let s = Relation::new(3, all.iter().filter(|t| t.iter().sum::<usize>() % 2 == 1).cloned().collect())?;
    let mut rl: Vec<usize> = r.tuples().iter().map(|t| label(t)).collect();
    rl.sort_unstable();
    let mut sl: Vec<usize> = s.tuples().iter().map(|t| label(t)).collect();
    sl.sort_unstable();
    rep.check("R", vec![0, 3, 5, 6], rl);
    rep.check("S", vec![1, 2, 4, 7], sl);
    let f = [&a, &a, &a];
    rep.check("R and S are subuniverses", [true, true], [r.is_closed_in(&f)?, s.is_closed_in(&f)?]);
    let etas: Vec<Congruence> = (0..3).map(|i| projection_kernel(&r, &[i])).collect::<Result<_>>()?;
    let expected = [vec![vec![0, 6], vec![3, 5]], vec![vec![0, 5], vec![3, 6]], vec![vec![0, 3], vec![5, 6]]];
    for (i, e) in expected.iter().enumerate() {
        rep.check(format!("η{}", i + 1), e, labelled_blocks(&r, &etas[i]));
    }
    let mut pairwise = true;
    for i in 0..3 {
        for j in i + 1..3 {
            pairwise &= etas[i].meet(&etas[j]).is_zero() && etas[i].join(&etas[j]).is_one();
        }
    }
    rep.check("η_i ∧ η_j = 0_R and η_i ∨ η_j = 1_R for i ≠ j", true, pairwise);
    let lat = congruence_lattice(&crate::relation::relation_algebra(&f, &r)?)?;
    let atoms: Vec<&Congruence> = lat.elements().iter().filter(|c| !c.is_zero() && !c.is_one()).collect();
    let m3 = lat.len() == 5
        && atoms.len() == 3
        && atoms.iter().all(|x| atoms.iter().all(|y| x == y || (x.meet(y).is_zero() && x.join(y).is_one())));
    rep.check("Con R is M3", true, m3);
    let mut atom_blocks: Vec<Vec<Vec<usize>>> = atoms.iter().map(|c| labelled_blocks(&r, c)).collect();
    atom_blocks.sort();
    let mut eta_blocks: Vec<Vec<Vec<usize>>> = etas.iter().map(|c| labelled_blocks(&r, c)).collect();
    eta_blocks.sort();
    rep.check("the middle of Con R is {η1, η2, η3}", eta_blocks, atom_blocks);
    let full = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    let projs: Vec<Vec<Vec<usize>>> = [[0, 1], [0, 2], [1, 2]]
        .iter()
        .map(|p| r.project(p).map(|x| x.tuples().to_vec()))
        .collect::<Result<_>>()?;
    rep.check("every 2-coordinate projection of R is A x A", vec![full; 3], projs);
    rep.check("R ∩ S", Vec::<Vec<usize>>::new(), r.intersect(&s)?.tuples().to_vec());
    let inst = CspInstance::over(
        Arc::new(a.clone()),
        &[vec![0, 1], vec![0, 1], vec![0, 1]],
        vec![Constraint::new(vec![0, 1, 2], r)?, Constraint::new(vec![0, 1, 2], s)?],
    )?;
    rep.check("the instance {R, S} has no solution", None::<Vec<usize>>, brute_force_solve(&inst)?);
    let b = AbsorptionBounds::default();
    let absorbing = [check_absorbing(&a, &[0], b)?.is_absorbing(), check_absorbing(&a, &[1], b)?.is_absorbing()];
    rep.check("neither {0} nor {1} absorbs A", [false, false], absorbing);
    rep.check("masses of A", vec![vec![0, 1]], masses(&a)?);
    Ok(rep)
}

/// The term `t(x,y) = x·(y·(x·y))` on the 4-element example algebra and its quotient.
pub fn identities_report() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("identities");
    let a = catalog::example_a();
    let n = a.size();
    let t: Term = "mul(x0,mul(x1,mul(x0,x1)))".parse()?;
    let tt = t.table(&a, 2)?;
    let expected_t = vec![vec![0, 0, 0, 0], vec![0, 1, 1, 1], vec![2, 2, 2, 2], vec![3, 3, 3, 3]];
    let rows: Vec<Vec<usize>> = tt.chunks(n).map(<[usize]>::to_vec).collect();
    rep.check("table of t", expected_t, rows);
    let s: Term = "mul(x1,mul(x0,x1))".parse()?;
    rep.check("iterating y·(x·y) on its second variable gives t", &tt, iterate_second(&a, &s)?.table(&a, 2)?);
    rep.check("t(1,2)", 1, tt[n + 2]);
    rep.check("t(0,y) for all y", vec![0; n], tt[..n].to_vec());
    let ilt = (0..n).all(|x| (0..n).all(|y| tt[x * n + tt[x * n + y]] == tt[x * n + y]));
    rep.check("t(x,t(x,y)) = t(x,y) on A", true, ilt);
    let theta = Congruence::from_labels(&[0, 0, 2, 3])?;
    let lat = congruence_lattice(&a)?;
    let proper: Vec<String> =
        lat.elements().iter().filter(|c| !c.is_zero() && !c.is_one()).map(ToString::to_string).collect();
    rep.check("proper nontrivial congruences", vec![theta.to_string()], proper);
    let subs: Vec<Vec<usize>> = all_subuniverses(&a)?.iter().map(|s| s.elements().to_vec()).filter(|s| s.len() > 1 && s.len() < n).collect();
    rep.check("proper nontrivial subuniverses", vec![vec![0, 1], vec![1, 2, 3]], subs);
    let q = a.quotient(&theta)?;
    let qrows: Vec<Vec<usize>> = q.algebra.mul()?.table().chunks(3).map(<[usize]>::to_vec).collect();
    rep.check("table of A/Θ", vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]], qrows);
    let mut pairs = 0;
    for x in 0..3 {
        for y in 0..3 {
            if t.eval(&q.algebra, &[x, y])? == x {
                pairs += 1;
            }
        }
    }
    rep.check("t(x,y) = x on all 9 pairs of A/Θ", 9, pairs);
    let m: Term = "mul(x1,mul(x0,x2))".parse()?;
    let malcev = (0..3).all(|x| {
        (0..3).all(|y| {
            m.eval(&q.algebra, &[x, y, y]).ok() == Some(x) && m.eval(&q.algebra, &[y, y, x]).ok() == Some(x)
        })
    });
    rep.check("y·(x·z) is a Mal'tsev term of A/Θ", true, malcev);
    let sx = (0..3).all(|x| (0..3).all(|y| s.eval(&q.algebra, &[x, y]).ok() == Some(x)));
    rep.check("y·(x·y) = x on A/Θ", true, sx);
    Ok(rep)
}
