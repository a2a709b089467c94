//! Named algebras shipped with the crate.

use crate::algebra::{enumerate_cibs, find_isomorphism, FiniteAlgebra};
use crate::congruence::congruence_lattice;

macro_rules! fixture {
    ($(#[$m:meta])* $fn:ident, $file:literal) => {
        $(#[$m])*
        pub fn $fn() -> FiniteAlgebra {
            FiniteAlgebra::from_json_str(include_str!(concat!("../fixtures/", $file)))
                .expect(concat!("fixture ", $file))
        }
    };
}

fixture!(
    /// The 3-element Steiner quasigroup, `x·y = 2x + 2y` mod 3.
    sq3,
    "sq3.json"
);
fixture!(
    /// The 2-element meet semilattice with bottom 0.
    s2,
    "s2.json"
);
fixture!(t1, "t1.json");
fixture!(t2, "t2.json");
fixture!(
    /// 4-element CIB with the congruence `|0,1|2|3|` and quotient `Sq3`.
    example_a,
    "example_a.json"
);
fixture!(
    /// 3-element binar whose minimal absorbing subuniverses are `{1}` and `{2}`.
    mass_products_3,
    "mass_products_3.json"
);
fixture!(
    /// `({0,1}, maj)` with the ternary majority operation.
    majority,
    "majority.json"
);
fixture!(
    /// `({0,1}, sum)` with `sum(x,y,z) = x + y + z` mod 2.
    xor,
    "xor.json"
);

const SIMPLE4: [&str; 7] = [
    include_str!("../fixtures/a0.json"),
    include_str!("../fixtures/a1.json"),
    include_str!("../fixtures/a2.json"),
    include_str!("../fixtures/a3.json"),
    include_str!("../fixtures/a4.json"),
    include_str!("../fixtures/a5.json"),
    include_str!("../fixtures/a6.json"),
];

/// The `(u2, u3)` parameters of the seven simple 4-element algebras.
pub const SIMPLE4_PARAMS: [(usize, usize); 7] = [(0, 1), (1, 1), (1, 2), (0, 3), (1, 3), (2, 2), (2, 3)];

/// The simple 4-element algebra `A_i`, `i < 7`.
pub fn simple4(i: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_json_str(SIMPLE4[i]).expect("fixture a<i>.json")
}

/// Table with `{0,1}` a semilattice (`0·1 = 0`) and `{1,2,3}` a copy of `Sq3`.
pub fn simple4_first_form(u2: usize, u3: usize) -> FiniteAlgebra {
    FiniteAlgebra::binar(&[
        vec![0, 0, u2, u3],
        vec![0, 1, 3, 2],
        vec![u2, 3, 2, 1],
        vec![u3, 2, 1, 3],
    ])
    .expect("entries below 4")
}

/// As [`simple4_first_form`] but with `0·1 = 1`.
pub fn simple4_second_form(v2: usize, v3: usize) -> FiniteAlgebra {
    FiniteAlgebra::binar(&[
        vec![0, 1, v2, v3],
        vec![1, 1, 3, 2],
        vec![v2, 3, 2, 1],
        vec![v3, 2, 1, 3],
    ])
    .expect("entries below 4")
}

/// 4-element CIBs with congruence `|0,1|2|3|`, quotient `Sq3` and `0·1 = 0`;
/// `a` is the value of `2·3`. `a = 1` gives [`example_a`].
pub fn sq3_over_s2(a: usize) -> FiniteAlgebra {
    FiniteAlgebra::binar(&[vec![0, 0, 3, 2], vec![0, 1, 3, 2], vec![3, 3, 2, a], vec![2, 2, a, 3]])
        .expect("entries below 4")
}

/// The 4-element CIBs with a congruence whose quotient is `S2` and which
/// has a class isomorphic to `Sq3`, leaving out those that also map onto
/// `Sq3`. There are seven, in enumeration order.
pub fn semilattice_over_sq3() -> Vec<FiniteAlgebra> {
    let (sq, s) = (sq3(), s2());
    let iso = |a: &FiniteAlgebra, b: &FiniteAlgebra| find_isomorphism(a, b).is_some();
    enumerate_cibs(4)
        .expect("size 4 is enumerable")
        .into_iter()
        .filter(|a| {
            let lat = congruence_lattice(a).expect("4 elements");
            let mut over_s2 = false;
            let mut onto_sq3 = false;
            for theta in lat.elements() {
                let q = a.quotient(theta).expect("congruence").algebra;
                if iso(&q, &sq) {
                    onto_sq3 = true;
                }
                if iso(&q, &s)
                    && theta.blocks().iter().any(|b| b.len() == 3 && iso(&a.restrict(b).expect("class"), &sq))
                {
                    over_s2 = true;
                }
            }
            over_s2 && !onto_sq3
        })
        .collect()
}

/// The one-element binar.
pub fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::binar(&[vec![0]]).expect("trivial table")
}

/// Every named algebra with its name.
pub fn named() -> Vec<(String, FiniteAlgebra)> {
    let mut out = vec![
        ("trivial".to_string(), trivial()),
        ("s2".into(), s2()),
        ("sq3".into(), sq3()),
        ("t1".into(), t1()),
        ("t2".into(), t2()),
        ("example_a".into(), example_a()),
        ("mass_products_3".into(), mass_products_3()),
        ("majority".into(), majority()),
        ("xor".into(), xor()),
    ];
    out.extend((0..7).map(|i| (format!("a{i}"), simple4(i))));
    out
}

/// Looks up a named algebra.
pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    named().into_iter().find(|(n, _)| n == name).map(|(_, a)| a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_cibs() {
        for a in [sq3(), s2(), t1(), t2(), example_a(), mass_products_3()] {
            assert!(a.is_cib());
        }
        for i in 0..7 {
            let (u2, u3) = SIMPLE4_PARAMS[i];
            assert_eq!(simple4(i), simple4_first_form(u2, u3));
        }
        assert_eq!(sq3_over_s2(1), example_a());
        assert!(majority().is_idempotent() && xor().is_idempotent());
    }

    #[test]
    fn seven_semilattices_over_sq3() {
        let family = semilattice_over_sq3();
        assert_eq!(family.len(), 7);
        for a in &family {
            assert!(crate::structure::detect_ec(a).unwrap().is_some());
        }
    }
}
