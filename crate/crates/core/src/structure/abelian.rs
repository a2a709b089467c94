use serde::Serialize;

use crate::algebra::{for_each_permutation, FiniteAlgebra, Radix};
use crate::congruence::generate;
use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// Default bound on `|A|` for [`is_abelian`]; the test works in `A²`.
pub const DEFAULT_ABELIAN_BOUND: usize = 16;

/// Decides abelianness: the congruence of `A²` generated by all pairs of
/// diagonal elements must have the diagonal as one full block.
pub fn is_abelian(alg: &FiniteAlgebra) -> Result<bool> {
    is_abelian_bounded(alg, DEFAULT_ABELIAN_BOUND)
}

pub fn is_abelian_bounded(alg: &FiniteAlgebra, bound: usize) -> Result<bool> {
    let n = alg.size();
    if n > bound {
        return Err(Error::SizeBound { size: n, bound });
    }
    if n == 1 {
        return Ok(true);
    }
    let square = alg.power(2)?;
    let radix = Radix::new(vec![n, n]);
    let d0 = radix.encode(&[0, 0]);
    let pairs: Vec<(usize, usize)> = (1..n).map(|a| (d0, radix.encode(&[a, a]))).collect();
    let theta = generate(&square, &pairs)?;
    let block = theta.class_of(d0);
    Ok(block.len() == n && block.iter().all(|&c| c % (n + 1) == 0))
}

/// A CIB written affinely over `Z_p`: `φ(x·y) = r·φ(x) + r·φ(y) + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineRep {
    /// The modulus; `1` for the one-element algebra.
    pub prime: usize,
    pub coeff: usize,
    pub offset: usize,
    /// `element_map[a]` is the residue representing `a`.
    pub element_map: Vec<usize>,
}

impl AffineRep {
    /// The element represented by residue `v`.
    pub fn element_of(&self, v: usize) -> usize {
        self.element_map.iter().position(|&x| x == v % self.prime).expect("bijection")
    }
}

/// Searches bijections `A → Z_p` and coefficients `r, b` with
/// `x·y = r(x + y) + b`. Absent for non-binars and for non-prime sizes.
pub fn affine_representation(alg: &FiniteAlgebra) -> Option<AffineRep> {
    let op = alg.mul().ok()?;
    let p = alg.size();
    if p == 1 {
        return Some(AffineRep { prime: 1, coeff: 0, offset: 0, element_map: vec![0] });
    }
    if !is_prime(p) {
        return None;
    }
    let mut found = None;
    for_each_permutation(p, |map| {
        if found.is_some() {
            return;
        }
        for r in 1..p {
            for b in 0..p {
                let ok = (0..p).all(|x| {
                    (0..p).all(|y| map[op.apply2(x, y)] == (r * (map[x] + map[y]) + b) % p)
                });
                if ok {
                    found = Some(AffineRep { prime: p, coeff: r, offset: b, element_map: map.to_vec() });
                    return;
                }
            }
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sq3_abelian_s2_not() {
        assert!(is_abelian(&catalog::sq3()).unwrap());
        assert!(!is_abelian(&catalog::s2()).unwrap());
        assert!(is_abelian(&catalog::trivial()).unwrap());
        assert!(is_abelian(&catalog::xor()).unwrap());
    }

    #[test]
    fn sq3_representation() {
        let rep = affine_representation(&catalog::sq3()).unwrap();
        assert_eq!((rep.prime, rep.coeff, rep.offset), (3, 2, 0));
        assert!(affine_representation(&catalog::s2()).is_none());
        assert_eq!(affine_representation(&catalog::trivial()).unwrap().prime, 1);
    }
}
