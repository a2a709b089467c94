use algcsp::algebra::permutations;
use algcsp::congruence::is_simple;
use algcsp::{enumerate_cibs, find_isomorphism};

/// Isomorphism classes of commutative idempotent binars on `n` elements by
/// Burnside's lemma. A permutation fixes a table exactly when, on each of
/// its orbits of 2-sets of length `L`, the shared entry is a fixed point of
/// the `L`-th power.
fn burnside(n: usize) -> usize {
    let perms = permutations(n);
    let total: usize = perms.iter().map(|p| fixed_tables(p)).sum();
    assert_eq!(total % perms.len(), 0);
    total / perms.len()
}

fn fixed_tables(p: &[usize]) -> usize {
    let n = p.len();
    let pow = |k: usize, v: usize| (0..k).fold(v, |acc, _| p[acc]);
    let mut seen = vec![vec![false; n]; n];
    let mut count = 1;
    for x in 0..n {
        for y in x + 1..n {
            if seen[x][y] {
                continue;
            }
            let (mut a, mut b, mut len) = (x, y, 0);
            loop {
                seen[a.min(b)][a.max(b)] = true;
                (a, b) = (p[a], p[b]);
                len += 1;
                if a.min(b) == x && a.max(b) == y {
                    break;
                }
            }
            count *= (0..n).filter(|&v| pow(len, v) == v).count();
        }
    }
    count
}

#[test]
fn counts_match_burnside() {
    for n in 1..=4 {
        assert_eq!(enumerate_cibs(n).unwrap().len(), burnside(n), "size {n}");
    }
    assert_eq!([1, 2, 3, 4].map(burnside), [1, 1, 7, 192]);
}

#[test]
fn enumeration_is_irredundant() {
    for n in 2..=4 {
        let all = enumerate_cibs(n).unwrap();
        for (i, a) in all.iter().enumerate() {
            assert!(a.is_cib());
            for b in &all[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }
}

#[test]
fn simple_counts() {
    let simple = |n| enumerate_cibs(n).unwrap().iter().filter(|a| is_simple(a).unwrap()).count();
    assert_eq!([simple(2), simple(3), simple(4)], [1, 3, 64]);
}
