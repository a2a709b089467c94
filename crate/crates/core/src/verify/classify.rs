//! Classification of the small commutative idempotent binars.

use crate::algebra::{enumerate_cibs, find_isomorphism, FiniteAlgebra};
use crate::catalog;
use crate::congruence::is_simple;
use crate::error::{Error, Result};
use crate::structure::{detect_ec, is_abelian, minimal_absorbing, AbsorptionBounds};
use crate::subuniverse::all_subuniverses;

use super::VerificationReport;

/// Tables of the simple 3-element CIBs as printed, rows in order.
const SQ3_TABLE: [[usize; 3]; 3] = [[0, 2, 1], [2, 1, 0], [1, 0, 2]];
const T1_TABLE: [[usize; 3]; 3] = [[0, 0, 1], [0, 1, 2], [1, 2, 2]];
const T2_TABLE: [[usize; 3]; 3] = [[0, 0, 2], [0, 1, 1], [2, 1, 2]];

/// Proper nontrivial subuniverses of `A_0 .. A_6` as listed.
const SIMPLE4_SUBALGEBRAS: [&[&[usize]]; 7] = [
    &[&[0, 1], &[0, 2], &[1, 2, 3]],
    &[&[0, 1], &[1, 2, 3]],
    &[&[0, 1], &[1, 2, 3]],
    &[&[0, 1], &[0, 2], &[0, 3], &[1, 2, 3]],
    &[&[0, 1], &[0, 3], &[1, 2, 3]],
    // Not {0,3}: with u3 = 2, 0·3 = 2.
    &[&[0, 1], &[0, 2], &[1, 2, 3]],
    &[&[0, 1], &[0, 2], &[0, 3], &[1, 2, 3]],
];

fn rows(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let t = a.mul().expect("binar").table();
    t.chunks(n).map(<[usize]>::to_vec).collect()
}

/// A catalog name for `a` up to isomorphism, or its flattened table.
fn name_of(a: &FiniteAlgebra) -> String {
    catalog::named()
        .into_iter()
        .find(|(_, b)| find_isomorphism(a, b).is_some())
        .map(|(n, _)| n)
        .unwrap_or_else(|| format!("{:?}", a.flat_tables()))
}

/// The 16 tables of each of the two 4-element forms, with their parameters.
pub fn simple4_table_forms() -> (Vec<((usize, usize), FiniteAlgebra)>, Vec<((usize, usize), FiniteAlgebra)>) {
    let params: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    let first = params.iter().map(|&(u2, u3)| ((u2, u3), catalog::simple4_first_form(u2, u3))).collect();
    let second = params.iter().map(|&(v2, v3)| ((v2, v3), catalog::simple4_second_form(v2, v3))).collect();
    (first, second)
}

fn proper_nontrivial(a: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    Ok(all_subuniverses(a)?
        .into_iter()
        .map(|s| s.elements().to_vec())
        .filter(|s| s.len() > 1 && s.len() < a.size())
        .collect())
}

/// Counts, simple members and their subalgebras for sizes up to `max_size`.
pub fn classify_cibs_report(max_size: usize) -> Result<VerificationReport> {
    if !(1..=4).contains(&max_size) {
        return Err(Error::SizeBound { size: max_size, bound: 4 });
    }
    let mut r = VerificationReport::new("classify");
    for n in 1..=max_size {
        r.note(format!("{} CIBs of size {n} up to isomorphism", enumerate_cibs(n)?.len()));
    }
    if max_size >= 2 {
        r.check("exactly one CIB of size 2", 1, enumerate_cibs(2)?.len());
    }
    if max_size >= 3 {
        let simple3: Vec<FiniteAlgebra> =
            enumerate_cibs(3)?.into_iter().filter(|a| is_simple(a).unwrap_or(false)).collect();
        let mut names: Vec<String> = simple3.iter().map(name_of).collect();
        names.sort();
        r.check("simple CIBs of size 3", ["sq3", "t1", "t2"], names);
        r.check("Sq3 table", SQ3_TABLE, rows(&catalog::sq3()));
        r.check("T1 table", T1_TABLE, rows(&catalog::t1()));
        r.check("T2 table", T2_TABLE, rows(&catalog::t2()));
        let with_sub = simple3.iter().filter(|a| proper_nontrivial(a).is_ok_and(|s| !s.is_empty())).count();
        r.check("simple size-3 CIBs with a proper nontrivial subalgebra", 2, with_sub);
        let no_sub: Vec<String> = simple3
            .iter()
            .filter(|a| proper_nontrivial(a).is_ok_and(|s| s.is_empty()))
            .map(name_of)
            .collect();
        r.check("simple size-3 CIB without proper nontrivial subalgebras", ["sq3"], no_sub);
    }
    if max_size >= 4 {
        let (first, second) = simple4_table_forms();
        let simple_first: Vec<_> = first.into_iter().filter(|(_, a)| is_simple(a).unwrap_or(false)).collect();
        let mut classes: Vec<FiniteAlgebra> = Vec::new();
        for (_, a) in &simple_first {
            if !classes.iter().any(|c| find_isomorphism(a, c).is_some()) {
                classes.push(a.clone());
            }
        }
        r.check("isomorphism classes of simple algebras of the first form", 7, classes.len());
        let second_covered = second
            .iter()
            .filter(|(_, a)| is_simple(a).unwrap_or(false))
            .all(|(_, a)| classes.iter().any(|c| find_isomorphism(a, c).is_some()));
        r.check("every simple algebra of the second form has a first-form copy", true, second_covered);
        let picked: Vec<usize> = (0..7)
            .map(|i| classes.iter().position(|c| find_isomorphism(&catalog::simple4(i), c).is_some()).unwrap_or(usize::MAX))
            .collect();
        let mut distinct = picked.clone();
        distinct.sort_unstable();
        distinct.dedup();
        r.check("A_0..A_6 meet each class once", 7, distinct.iter().filter(|&&c| c != usize::MAX).count());
        for (i, &(u2, u3)) in catalog::SIMPLE4_PARAMS.iter().enumerate() {
            let a = catalog::simple4(i);
            r.check(format!("A_{i} has u2 = {u2}, u3 = {u3}"), rows(&catalog::simple4_first_form(u2, u3)), rows(&a));
            let expected: Vec<Vec<usize>> = SIMPLE4_SUBALGEBRAS[i].iter().map(|s| s.to_vec()).collect();
            r.check(format!("A_{i} proper nontrivial subalgebras"), expected, proper_nontrivial(&a)?);
        }
        let family = catalog::semilattice_over_sq3();
        r.check("nonsimple size-4 CIBs over S2 with an Sq3 class", 7, family.len());
        let ec = family.iter().filter(|a| detect_ec(a).is_ok_and(|e| e.is_some())).count();
        r.check("all of them are edge-by-chain", 7, ec);
    }
    Ok(r)
}

/// Minimal absorbing subuniverses of the small algebras.
pub fn masses_report(bounds: AbsorptionBounds) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("masses");
    r.note(format!(
        "bounds: arity {}, depth {}, size {}",
        bounds.max_arity, bounds.max_depth, bounds.max_size
    ));
    let sets = |a: &FiniteAlgebra| -> Result<(Vec<Vec<usize>>, usize)> {
        let m = minimal_absorbing(a, bounds)?;
        Ok((m.masses.iter().map(|s| s.elements().to_vec()).collect(), m.exhausted.len()))
    };
    let mut exhausted = 0;
    let (s2, e) = sets(&catalog::s2())?;
    exhausted += e;
    r.check("S2 = {0,1}", vec![vec![0]], s2);
    let copy = catalog::simple4(0).restrict(&[1, 2, 3])?;
    let (m, e) = sets(&copy)?;
    exhausted += e;
    let relabelled: Vec<Vec<usize>> = m.iter().map(|s| s.iter().map(|&p| p + 1).collect()).collect();
    r.check("{1,2,3}", vec![vec![1, 2, 3]], relabelled);
    for i in 0..7 {
        let (m, e) = sets(&catalog::simple4(i))?;
        exhausted += e;
        let expected = if i <= 2 { vec![vec![0]] } else { vec![vec![0, 1, 2, 3]] };
        r.check(format!("A_{i}"), expected, m);
    }
    let mut unique = true;
    for i in 0..7 {
        let a = catalog::simple4(i);
        for s in all_subuniverses(&a)? {
            let (m, e) = sets(&a.restrict(s.elements())?)?;
            exhausted += e;
            unique &= m.len() == 1;
        }
    }
    r.check("every subalgebra of every A_i has one minimal absorbing subalgebra", true, unique);
    r.check("verdicts from an exhausted search", 0, exhausted);
    let mut rest = Vec::new();
    for (name, a) in catalog::named() {
        if !minimal_absorbing(&a, bounds)?.exhausted.is_empty() {
            rest.push(name);
        }
    }
    r.check("catalog algebras with an exhausted verdict", Vec::<String>::new(), rest);
    Ok(r)
}

/// Which CIBs of each size up to `max_size` are abelian.
pub fn abelian_report(max_size: usize) -> Result<VerificationReport> {
    if !(1..=4).contains(&max_size) {
        return Err(Error::SizeBound { size: max_size, bound: 4 });
    }
    let mut r = VerificationReport::new("abelian");
    for n in 1..=max_size {
        let mut names = Vec::new();
        for a in enumerate_cibs(n)? {
            if is_abelian(&a)? {
                names.push(name_of(&a));
            }
        }
        let expected: Vec<&str> = match n {
            1 => vec!["trivial"],
            3 => vec!["sq3"],
            _ => vec![],
        };
        r.check(format!("abelian CIBs of size {n}"), expected, names);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_small() {
        let r = classify_cibs_report(3).unwrap();
        assert!(r.all_pass(), "{r}");
        assert!(classify_cibs_report(5).is_err());
    }

    #[test]
    fn abelian_up_to_three() {
        assert!(abelian_report(3).unwrap().all_pass());
    }
}
