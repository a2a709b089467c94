//! Linear algebra over the prime field GF(p).

use crate::error::{Error, Result};

/// Multiplicative inverse of a nonzero `a` modulo the prime `p`.
pub fn inv_mod(a: usize, p: usize) -> usize {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1usize);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(p: usize, rows: &mut Vec<Vec<usize>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_multiple_of(p)) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..rows[k].len() {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // Rows below the last pivot are zero.
    rows.truncate(r);
    pivots
}

/// One solution of `A x = b`, with free variables set to 0, or `None` when
/// the system is inconsistent.
pub fn solve(p: usize, a: &[Vec<usize>], b: &[usize], ncols: usize) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() || a.iter().any(|row| row.len() != ncols) {
        return Err(Error::Dimension("linear system shape".into()));
    }
    let mut rows: Vec<Vec<usize>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&x| x % p).chain(std::iter::once(bi % p)).collect())
        .collect();
    let pivots = row_reduce(p, &mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![0; ncols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[ncols];
    }
    Ok(Some(x))
}

/// Basis of `{x : A x = 0}`.
pub fn null_space(p: usize, a: &[Vec<usize>], ncols: usize) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = a.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let pivots = row_reduce(p, &mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// `origin + span(basis)` inside GF(p)^dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub prime: usize,
    pub origin: Vec<usize>,
    pub basis: Vec<Vec<usize>>,
}

impl AffineSubspace {
    /// Smallest affine subspace containing every point.
    pub fn hull(p: usize, points: &[Vec<usize>]) -> Result<Self> {
        let origin = points.first().ok_or_else(|| Error::NonAffine("empty point set".into()))?.clone();
        let dim = origin.len();
        let mut diffs: Vec<Vec<usize>> = points[1..]
            .iter()
            .map(|q| q.iter().zip(&origin).map(|(&a, &o)| (a + p - o) % p).collect())
            .collect();
        row_reduce(p, &mut diffs, dim);
        Ok(Self { prime: p, origin, basis: diffs })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of points, `p^dim`.
    pub fn cardinality(&self) -> u128 {
        (self.prime as u128).pow(self.basis.len() as u32)
    }

    /// Linear equations `(A, b)` whose solution set is exactly this subspace.
    pub fn equations(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let p = self.prime;
        let dim = self.origin.len();
        let normals = null_space(p, &self.basis, dim);
        let rhs = normals
            .iter()
            .map(|c| c.iter().zip(&self.origin).map(|(&x, &o)| x * o).sum::<usize>() % p)
            .collect();
        (normals, rhs)
    }
}
