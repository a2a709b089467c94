//! Linear algebra over GF(p) for instances over an affine CIB.

use crate::csp::CspInstance;
use crate::error::{Error, Result};
use crate::linalg::{self, AffineSubspace};
use crate::structure::affine_representation;

use super::{finish, unsupported, SolveOutcome, Strategy};

/// Per-variable residue maps: `maps[i][pos]` is the residue of the
/// `pos`-th element of domain `i`. Singleton domains map to 0.
struct Encoding {
    prime: usize,
    maps: Vec<Vec<usize>>,
}

fn encode(inst: &CspInstance) -> Result<Encoding> {
    let mut prime = None;
    let mut maps = Vec::with_capacity(inst.variable_count());
    for (i, d) in inst.domains().iter().enumerate() {
        if d.len() == 1 {
            maps.push(vec![0]);
            continue;
        }
        let sub = d.subalgebra()?;
        let rep = affine_representation(&sub)
            .ok_or_else(|| unsupported("affine", format!("domain of x{i} has no affine representation")))?;
        match prime {
            None => prime = Some(rep.prime),
            Some(p) if p != rep.prime => {
                return Err(unsupported("affine", format!("moduli {p} and {} mixed", rep.prime)));
            }
            _ => {}
        }
        maps.push(rep.element_map);
    }
    // Every domain a singleton: any prime works.
    Ok(Encoding { prime: prime.unwrap_or(2), maps })
}

/// Decides the instance by Gaussian elimination. Errors when a domain is
/// not affine or a relation is not an affine subspace.
pub fn affine_solve(inst: &CspInstance) -> Result<SolveOutcome> {
    let enc = encode(inst)?;
    let p = enc.prime;
    let n = inst.variable_count();
    let mut a: Vec<Vec<usize>> = Vec::new();
    let mut b: Vec<usize> = Vec::new();
    for (i, d) in inst.domains().iter().enumerate() {
        if d.len() == 1 {
            let mut row = vec![0; n];
            row[i] = 1;
            a.push(row);
            b.push(0);
        }
    }
    let mut empty = false;
    for (ci, c) in inst.constraints().iter().enumerate() {
        let scope = c.scope();
        let points: Vec<Vec<usize>> = c
            .relation()
            .tuples()
            .iter()
            .filter_map(|t| {
                t.iter()
                    .zip(scope)
                    .map(|(&x, &v)| inst.domain(v).position(x).map(|pos| enc.maps[v][pos]))
                    .collect::<Option<Vec<usize>>>()
            })
            .collect();
        if points.is_empty() {
            empty = true;
            continue;
        }
        if scope.is_empty() {
            continue;
        }
        let hull = AffineSubspace::hull(p, &points)?;
        if hull.cardinality() != points.len() as u128 {
            return Err(Error::NonAffine(format!(
                "constraint {ci} has {} tuples but its hull has {}",
                points.len(),
                hull.cardinality()
            )));
        }
        let (rows, rhs) = hull.equations();
        for (row, r) in rows.into_iter().zip(rhs) {
            let mut full = vec![0; n];
            for (k, &v) in scope.iter().enumerate() {
                full[v] = row[k];
            }
            a.push(full);
            b.push(r);
        }
    }
    let residues = if empty { None } else { linalg::solve(p, &a, &b, n)? };
    let witness = residues.map(|x| {
        x.iter()
            .enumerate()
            .map(|(i, &r)| {
                let d = inst.domain(i);
                let pos = enc.maps[i].iter().position(|&m| m == r % p.max(1)).unwrap_or(0);
                d.elements()[pos]
            })
            .collect()
    });
    finish(inst, Strategy::Affine, witness, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::csp::Constraint;
    use crate::relation::{subpower_closure, Relation};
    use crate::Decision;
    use std::sync::Arc;

    fn sq3() -> Arc<crate::FiniteAlgebra> {
        Arc::new(catalog::sq3())
    }

    // Sq3 is x·y = 2x + 2y on the labels themselves, so residues are labels
    // up to the chosen bijection; relations below are built from labels.
    fn linear(coeffs: &[usize], rhs: usize) -> Relation {
        let tuples = crate::algebra::all_tuples(3, coeffs.len())
            .filter(|t| t.iter().zip(coeffs).map(|(x, c)| x * c).sum::<usize>() % 3 == rhs)
            .collect();
        Relation::new(coeffs.len(), tuples).unwrap()
    }

    #[test]
    fn inconsistent_shifts() {
        let eq = Constraint::new(vec![0, 1], linear(&[2, 1], 0)).unwrap();
        let shift = Constraint::new(vec![0, 1], linear(&[2, 1], 1)).unwrap();
        let inst = CspInstance::over(sq3(), &[vec![0, 1, 2], vec![0, 1, 2]], vec![eq, shift]).unwrap();
        assert_eq!(affine_solve(&inst).unwrap().decision, Decision::Unsat);
    }

    #[test]
    fn full_square_is_sat() {
        let full = Constraint::new(vec![0, 1], Relation::product(&[vec![0, 1, 2], vec![0, 1, 2]])).unwrap();
        let inst = CspInstance::over(sq3(), &[vec![0, 1, 2], vec![0, 1, 2]], vec![full]).unwrap();
        assert!(affine_solve(&inst).unwrap().is_sat());
    }

    #[test]
    fn sum_zero_pins_z() {
        let s = sq3();
        let sum = linear(&[1, 1, 1], 0);
        assert!(sum.is_closed_in(&[&s, &s, &s]).unwrap());
        let cs = vec![
            Constraint::new(vec![0, 1, 2], sum).unwrap(),
            Constraint::from_tuples(vec![0], vec![vec![0]]).unwrap(),
            Constraint::from_tuples(vec![1], vec![vec![1]]).unwrap(),
        ];
        let inst = CspInstance::over(s, &vec![vec![0, 1, 2]; 3], cs).unwrap();
        assert_eq!(affine_solve(&inst).unwrap().witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn rejects_non_affine() {
        let s = sq3();
        let bad = Constraint::from_tuples(vec![0, 1], vec![vec![0, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let inst = CspInstance::over(s.clone(), &[vec![0, 1, 2], vec![0, 1, 2]], vec![bad]).unwrap();
        assert!(matches!(affine_solve(&inst), Err(Error::NonAffine(_))));
        let inst = CspInstance::over(Arc::new(catalog::s2()), &[vec![0, 1]], vec![]).unwrap();
        assert!(matches!(affine_solve(&inst), Err(Error::Unsupported { .. })));
        let gen = subpower_closure(&[&s, &s], &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(gen.len(), 3);
    }
}
