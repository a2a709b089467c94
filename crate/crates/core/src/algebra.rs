//! Finite algebras given by total operation tables.

use std::collections::HashSet;
use std::fmt;

use serde_json::Value;

use crate::congruence::Congruence;
use crate::error::{Error, Result};

/// A single basic operation of a finite algebra.
///
/// The table is flat, indexed by the argument tuple read as a base-`size`
/// number with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    name: String,
    arity: usize,
    size: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn new(name: impl Into<String>, arity: usize, size: usize, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let expected = checked_pow(size, arity).ok_or_else(|| Error::InvalidTable {
            op: name.clone(),
            reason: "table too large".into(),
        })?;
        if table.len() != expected {
            return Err(Error::InvalidTable {
                op: name,
                reason: format!("expected {expected} entries, found {}", table.len()),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(Error::InvalidTable {
                op: name,
                reason: format!("entry {bad} outside 0..{size}"),
            });
        }
        Ok(Self { name, arity, size, table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn index_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    /// Evaluates the operation. Arguments are assumed to be in range.
    pub fn apply(&self, args: &[usize]) -> usize {
        self.table[self.index_of(args)]
    }

    pub fn apply2(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }
}

/// A finite algebra on the universe `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    ops: Vec<Operation>,
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl FiniteAlgebra {
    pub fn new(size: usize, ops: Vec<Operation>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Malformed("universe must be nonempty".into()));
        }
        let mut seen = HashSet::new();
        for op in &ops {
            if op.size != size {
                return Err(Error::InvalidTable {
                    op: op.name.clone(),
                    reason: format!("built for size {}, algebra has size {size}", op.size),
                });
            }
            if !seen.insert(op.name.clone()) {
                return Err(Error::InvalidTable {
                    op: op.name.clone(),
                    reason: "duplicate operation name".into(),
                });
            }
        }
        Ok(Self { size, ops })
    }

    /// Builds a binar with a single operation `mul` from its rows.
    pub fn binar(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable {
                    op: "mul".into(),
                    reason: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            table.extend_from_slice(row);
        }
        Self::new(n, vec![Operation::new("mul", 2, n, table)?])
    }

    /// Builds an algebra with one operation given as a function.
    pub fn from_fn(
        size: usize,
        name: &str,
        arity: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        let table = all_tuples(size, arity).map(|t| f(&t)).collect();
        Self::new(size, vec![Operation::new(name, arity, size, table)?])
    }

    /// The one-element algebra with the same signature.
    pub fn trivial_like(&self) -> Self {
        let ops = self
            .ops
            .iter()
            .map(|op| Operation {
                name: op.name.clone(),
                arity: op.arity,
                size: 1,
                table: vec![0],
            })
            .collect();
        Self { size: 1, ops }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn operation(&self, name: &str) -> Option<(usize, &Operation)> {
        self.ops.iter().enumerate().find(|(_, op)| op.name == name)
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.ops[op].apply(args)
    }

    /// The single binary operation of a binar.
    pub fn mul(&self) -> Result<&Operation> {
        if self.is_binar() {
            Ok(&self.ops[0])
        } else {
            Err(Error::NotBinar)
        }
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|op| op.arity).max().unwrap_or(0)
    }

    pub fn same_signature(&self, other: &Self) -> bool {
        self.ops.len() == other.ops.len()
            && self
                .ops
                .iter()
                .zip(&other.ops)
                .all(|(a, b)| a.name == b.name && a.arity == b.arity)
    }

    pub fn is_binar(&self) -> bool {
        self.ops.len() == 1 && self.ops[0].arity == 2
    }

    pub fn is_idempotent(&self) -> bool {
        self.ops.iter().all(|op| {
            (0..self.size).all(|a| op.apply(&vec![a; op.arity]) == a)
        })
    }

    pub fn is_cib(&self) -> bool {
        let Ok(op) = self.mul() else { return false };
        let n = self.size;
        (0..n).all(|x| op.apply2(x, x) == x && (0..n).all(|y| op.apply2(x, y) == op.apply2(y, x)))
    }

    /// Whether a binar is a semilattice (commutative, idempotent, associative).
    pub fn is_semilattice(&self) -> Result<bool> {
        let op = self.mul()?;
        if !self.is_cib() {
            return Ok(false);
        }
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = op.apply2(x, y);
                for z in 0..n {
                    if op.apply2(xy, z) != op.apply2(x, op.apply2(y, z)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: a, size: self.size })
        }
    }

    pub(crate) fn check_elements(&self, elems: &[usize]) -> Result<()> {
        elems.iter().try_for_each(|&a| self.check_element(a))
    }

    /// Whether `set` is closed under every operation.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &a in set {
            if a >= self.size {
                return false;
            }
            member[a] = true;
        }
        let elems: Vec<usize> = (0..self.size).filter(|&a| member[a]).collect();
        self.ops.iter().all(|op| {
            if op.arity == 0 {
                return member[op.table[0]];
            }
            tuples_over(&elems, op.arity).all(|t| member[op.apply(&t)])
        })
    }

    /// Product algebra with mixed-radix element encoding, coordinate 0 most significant.
    pub fn product(factors: &[FiniteAlgebra]) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Malformed("empty product".into()));
        };
        if factors.iter().any(|f| !f.same_signature(first)) {
            return Err(Error::SignatureMismatch);
        }
        let radix = Radix::new(factors.iter().map(|f| f.size).collect());
        let size = radix.total();
        let mut ops = Vec::with_capacity(first.ops.len());
        for (oi, op) in first.ops.iter().enumerate() {
            let k = op.arity;
            let decoded: Vec<Vec<usize>> = (0..size).map(|c| radix.decode(c)).collect();
            let mut table = Vec::with_capacity(checked_pow(size, k).unwrap_or(0));
            let mut args = vec![0; k];
            for t in all_tuples(size, k) {
                let mut code = 0;
                for (coord, f) in factors.iter().enumerate() {
                    for (slot, &e) in t.iter().enumerate() {
                        args[slot] = decoded[e][coord];
                    }
                    code = code * f.size + f.ops[oi].apply(&args);
                }
                table.push(code);
            }
            ops.push(Operation::new(op.name.clone(), k, size, table)?);
        }
        Self::new(size, ops)
    }

    pub fn power(&self, k: usize) -> Result<Self> {
        Self::product(&vec![self.clone(); k.max(1)])
    }

    /// Quotient by a congruence; blocks are numbered in order of their least members.
    pub fn quotient(&self, theta: &Congruence) -> Result<Quotient> {
        if theta.size() != self.size {
            return Err(Error::Dimension(format!(
                "congruence on {} elements, algebra has {}",
                theta.size(),
                self.size
            )));
        }
        if !theta.is_compatible(self) {
            return Err(Error::NotCongruence);
        }
        let reps: Vec<usize> = (0..self.size).filter(|&a| theta.block_of(a) == a).collect();
        let mut class_of = vec![0; self.size];
        for a in 0..self.size {
            class_of[a] = reps.binary_search(&theta.block_of(a)).expect("representative");
        }
        let m = reps.len();
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let table = all_tuples(m, op.arity)
                .map(|t| {
                    let args: Vec<usize> = t.iter().map(|&b| reps[b]).collect();
                    class_of[op.apply(&args)]
                })
                .collect();
            ops.push(Operation::new(op.name.clone(), op.arity, m, table)?);
        }
        Ok(Quotient {
            algebra: Self::new(m, ops)?,
            class_of,
            representatives: reps,
        })
    }

    /// Induced subalgebra on a closed set, re-indexed in increasing element order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self> {
        self.check_elements(elements)?;
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::EmptySeed);
        }
        if !self.is_closed(&elems) {
            return Err(Error::NotClosed);
        }
        let mut index = vec![usize::MAX; self.size];
        for (i, &a) in elems.iter().enumerate() {
            index[a] = i;
        }
        let m = elems.len();
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let table = all_tuples(m, op.arity)
                .map(|t| {
                    let args: Vec<usize> = t.iter().map(|&i| elems[i]).collect();
                    index[op.apply(&args)]
                })
                .collect();
            ops.push(Operation::new(op.name.clone(), op.arity, m, table)?);
        }
        Self::new(m, ops)
    }

    /// Relabels the universe: element `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if !is_permutation(perm, self.size) {
            return Err(Error::Malformed("relabelling is not a permutation".into()));
        }
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let mut table = vec![0; op.table.len()];
            for t in all_tuples(self.size, op.arity) {
                let image: Vec<usize> = t.iter().map(|&a| perm[a]).collect();
                table[op.index_of(&image)] = perm[op.apply(&t)];
            }
            ops.push(Operation::new(op.name.clone(), op.arity, self.size, table)?);
        }
        Self::new(self.size, ops)
    }

    /// Whether `map` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Self, map: &[usize]) -> bool {
        self.size == other.size
            && self.same_signature(other)
            && is_permutation(map, self.size)
            && self.ops.iter().zip(&other.ops).all(|(f, g)| {
                all_tuples(self.size, f.arity).all(|t| {
                    let image: Vec<usize> = t.iter().map(|&a| map[a]).collect();
                    g.apply(&image) == map[f.apply(&t)]
                })
            })
    }

    /// Flattened concatenation of all tables.
    pub fn flat_tables(&self) -> Vec<usize> {
        self.ops.iter().flat_map(|op| op.table.iter().copied()).collect()
    }

    /// Representative of the isomorphism class: the relabelling whose flattened
    /// tables are lexicographically least.
    pub fn canonical_form(&self) -> Self {
        let mut best: Option<Vec<usize>> = None;
        let mut best_perm = (0..self.size).collect::<Vec<_>>();
        for_each_permutation(self.size, |perm| {
            let flat = self.relabel(perm).expect("permutation").flat_tables();
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
                best_perm = perm.to_vec();
            }
        });
        self.relabel(&best_perm).expect("permutation")
    }
}

/// Output of [`FiniteAlgebra::quotient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    /// Index of the block of each element of the original algebra.
    pub class_of: Vec<usize>,
    /// Least member of each block, in block order.
    pub representatives: Vec<usize>,
}

/// Searches for an isomorphism `a -> b` by backtracking over partial maps.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size != b.size || !a.same_signature(b) {
        return None;
    }
    let n = a.size;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize], last: usize) -> bool {
        // Check every table entry whose arguments are all mapped and involve `last`.
        let assigned: Vec<usize> = (0..a.size).filter(|&x| map[x] != usize::MAX).collect();
        for (f, g) in a.ops.iter().zip(&b.ops) {
            if f.arity == 0 {
                continue;
            }
            for t in tuples_over(&assigned, f.arity) {
                if !t.contains(&last) {
                    continue;
                }
                let v = f.apply(&t);
                let image: Vec<usize> = t.iter().map(|&x| map[x]).collect();
                let w = g.apply(&image);
                if map[v] != usize::MAX && map[v] != w {
                    return false;
                }
            }
        }
        true
    }
    fn go(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        x: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.size {
            return a.is_isomorphism(b, map);
        }
        for y in 0..a.size {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && go(a, b, x + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
    if go(a, b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// All commutative idempotent binars on `n` elements, one per isomorphism
/// class, each in canonical form, sorted by table.
pub fn enumerate_cibs(n: usize) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 || n > 5 {
        return Err(Error::SizeBound { size: n, bound: 5 });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut table = vec![0; n * n];
    for x in 0..n {
        table[x * n + x] = x;
    }
    let mut values = vec![0; pairs.len()];
    loop {
        for (&(x, y), &v) in pairs.iter().zip(&values) {
            table[x * n + y] = v;
            table[y * n + x] = v;
        }
        if is_canonical_binary(&table, n, &perms) {
            out.push(FiniteAlgebra::new(n, vec![Operation::new("mul", 2, n, table.clone())?])?);
        }
        // odometer
        let mut i = values.len();
        loop {
            if i == 0 {
                out.sort_by_key(|a| a.flat_tables());
                return Ok(out);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

/// Whether no relabelling gives a lexicographically smaller table.
fn is_canonical_binary(table: &[usize], n: usize, perms: &[Vec<usize>]) -> bool {
    let mut inv = vec![0; n];
    for perm in perms {
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        // relabelled table entry at (i, j) is perm[table[inv i][inv j]]
        for idx in 0..n * n {
            let (i, j) = (idx / n, idx % n);
            let v = perm[table[inv[i] * n + inv[j]]];
            match v.cmp(&table[idx]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| out.push(p.to_vec()));
    out
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Mixed-radix codec for product elements, coordinate 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radix {
    sizes: Vec<usize>,
}

impl Radix {
    pub fn new(sizes: Vec<usize>) -> Self {
        Self { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.sizes.len());
        tuple.iter().zip(&self.sizes).fold(0, |acc, (&t, &s)| acc * s + t)
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &s) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = code % s;
            code /= s;
        }
        out
    }
}

/// Iterator over all tuples in `0..n` of length `k`, in lexicographic order.
pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let elems: Vec<usize> = (0..n).collect();
    TupleIter::new(elems, k)
}

/// Iterator over all tuples of length `k` with entries from `elems`.
pub fn tuples_over(elems: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> {
    TupleIter::new(elems.to_vec(), k)
}

struct TupleIter {
    elems: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl TupleIter {
    fn new(elems: Vec<usize>, k: usize) -> Self {
        let done = elems.is_empty() && k > 0;
        Self { elems, idx: vec![0; k], done }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.idx.iter().map(|&i| self.elems[i]).collect();
        let mut i = self.idx.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.idx[i] += 1;
            if self.idx[i] < self.elems.len() {
                break;
            }
            self.idx[i] = 0;
        }
        Some(item)
    }
}

// ---- JSON ----

impl FiniteAlgebra {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let size = v
            .get("size")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("missing integer field `size`".into()))? as usize;
        let ops = v
            .get("ops")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("missing array field `ops`".into()))?;
        let mut out = Vec::with_capacity(ops.len());
        for op in ops {
            let name = op
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Malformed("operation without `name`".into()))?;
            let arity = op
                .get("arity")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Malformed(format!("operation `{name}` without `arity`")))?
                as usize;
            let table = op
                .get("table")
                .ok_or_else(|| Error::Malformed(format!("operation `{name}` without `table`")))?;
            let mut flat = Vec::new();
            flatten_table(table, arity, size, name, &mut flat)?;
            out.push(Operation::new(name, arity, size, flat)?);
        }
        Self::new(size, out)
    }

    pub fn to_json_value(&self) -> Value {
        let ops: Vec<Value> = self
            .ops
            .iter()
            .map(|op| {
                serde_json::json!({
                    "name": op.name,
                    "arity": op.arity,
                    "table": nest_table(&op.table, op.arity, self.size),
                })
            })
            .collect();
        serde_json::json!({ "size": self.size, "ops": ops })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

fn flatten_table(v: &Value, depth: usize, size: usize, op: &str, out: &mut Vec<usize>) -> Result<()> {
    if depth == 0 {
        let x = v.as_u64().ok_or_else(|| Error::InvalidTable {
            op: op.into(),
            reason: format!("expected an integer entry, found {v}"),
        })?;
        out.push(x as usize);
        return Ok(());
    }
    let rows = v.as_array().ok_or_else(|| Error::InvalidTable {
        op: op.into(),
        reason: "table nesting shallower than arity".into(),
    })?;
    if rows.len() != size {
        return Err(Error::InvalidTable {
            op: op.into(),
            reason: format!("row of length {}, expected {size}", rows.len()),
        });
    }
    rows.iter().try_for_each(|r| flatten_table(r, depth - 1, size, op, out))
}

fn nest_table(flat: &[usize], depth: usize, size: usize) -> Value {
    if depth == 0 {
        return Value::from(flat[0]);
    }
    let chunk = flat.len() / size;
    Value::Array(flat.chunks(chunk).map(|c| nest_table(c, depth - 1, size)).collect())
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size {}", self.size)?;
        for op in &self.ops {
            write!(f, "{}/{}:", op.name, op.arity)?;
            if op.arity == 2 {
                for row in op.table.chunks(self.size) {
                    let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                    write!(f, "\n  {}", cells.join(" "))?;
                }
                writeln!(f)?;
            } else {
                writeln!(f, " {:?}", op.table)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FiniteAlgebra {
        FiniteAlgebra::binar(&[vec![0, 0], vec![0, 1]]).unwrap()
    }

    fn sq3() -> FiniteAlgebra {
        FiniteAlgebra::binar(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteAlgebra::binar(&[vec![0, 2], vec![0, 1]]).is_err());
        assert!(FiniteAlgebra::binar(&[vec![0, 0], vec![0]]).is_err());
        assert!(Operation::new("f", 2, 2, vec![0, 0, 0]).is_err());
    }

    #[test]
    fn product_meet() {
        let p = FiniteAlgebra::product(&[s2(), s2()]).unwrap();
        let r = Radix::new(vec![2, 2]);
        let v = p.mul().unwrap().apply2(r.encode(&[0, 1]), r.encode(&[1, 1]));
        assert_eq!(r.decode(v), vec![0, 1]);
        assert_eq!(sq3().power(2).unwrap().size(), 9);
    }

    #[test]
    fn semilattice_checks() {
        assert!(s2().is_semilattice().unwrap());
        assert!(!sq3().is_semilattice().unwrap());
        let two_ops = FiniteAlgebra::new(
            2,
            vec![
                Operation::new("a", 2, 2, vec![0, 0, 0, 1]).unwrap(),
                Operation::new("b", 2, 2, vec![0, 1, 1, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(two_ops.is_semilattice(), Err(Error::NotBinar)));
    }

    #[test]
    fn relabel_is_isomorphism() {
        let a = sq3();
        let perm = vec![2, 0, 1];
        let b = a.relabel(&perm).unwrap();
        assert!(a.is_isomorphism(&b, &perm));
        let found = find_isomorphism(&a, &b).unwrap();
        assert!(a.is_isomorphism(&b, &found));
    }

    #[test]
    fn cib_counts() {
        assert_eq!(enumerate_cibs(1).unwrap().len(), 1);
        assert_eq!(enumerate_cibs(2).unwrap().len(), 1);
        let three = enumerate_cibs(3).unwrap();
        for (i, a) in three.iter().enumerate() {
            assert_eq!(a, &a.canonical_form());
            for b in &three[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = sq3();
        let back = FiniteAlgebra::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(a, back);
        let maj = FiniteAlgebra::from_fn(2, "maj", 3, |t| usize::from(t.iter().sum::<usize>() >= 2)).unwrap();
        assert_eq!(FiniteAlgebra::from_json_str(&maj.to_json_string()).unwrap(), maj);
    }

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(vec![3, 2, 4]);
        for c in 0..r.total() {
            assert_eq!(r.encode(&r.decode(c)), c);
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps[0], vec![0, 1, 2]);
        assert_eq!(ps[5], vec![2, 1, 0]);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }
}
