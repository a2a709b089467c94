//! Terms over an operation signature.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{all_tuples, FiniteAlgebra};
use crate::error::{Error, Result};

/// A term tree: a variable `x<i>` or an operation symbol applied to subterms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn apply(op: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Apply(op.into(), args)
    }

    /// `mul(a, b)`, the usual product in a binar.
    pub fn mul(a: Term, b: Term) -> Self {
        Term::Apply("mul".into(), vec![a, b])
    }

    /// One more than the largest variable index (0 for ground terms).
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Apply(_, args) => args.iter().map(Term::arity).max().unwrap_or(0),
        }
    }

    /// Variables have depth 0; an application is one deeper than its deepest argument.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Apply(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn eval(&self, alg: &FiniteAlgebra, env: &[usize]) -> Result<usize> {
        match self {
            Term::Var(i) => {
                let v = *env.get(*i).ok_or(Error::UnboundVariable { index: *i, len: env.len() })?;
                if v >= alg.size() {
                    return Err(Error::ElementOutOfRange { element: v, size: alg.size() });
                }
                Ok(v)
            }
            Term::Apply(name, args) => {
                let (idx, op) = alg
                    .operation(name)
                    .ok_or_else(|| Error::UnknownOperation(name.clone()))?;
                if op.arity() != args.len() {
                    return Err(Error::ArityMismatch {
                        op: name.clone(),
                        expected: op.arity(),
                        found: args.len(),
                    });
                }
                let vals = args.iter().map(|a| a.eval(alg, env)).collect::<Result<Vec<_>>>()?;
                Ok(alg.apply(idx, &vals))
            }
        }
    }

    /// The table of the induced `arity`-ary term operation, in lexicographic argument order.
    pub fn table(&self, alg: &FiniteAlgebra, arity: usize) -> Result<Vec<usize>> {
        if self.arity() > arity {
            return Err(Error::UnboundVariable { index: self.arity() - 1, len: arity });
        }
        all_tuples(alg.size(), arity).map(|t| self.eval(alg, &t)).collect()
    }

    /// Replaces every variable `x<i>` by `subs[i]`.
    pub fn substitute(&self, subs: &[Term]) -> Result<Term> {
        match self {
            Term::Var(i) => subs
                .get(*i)
                .cloned()
                .ok_or(Error::UnboundVariable { index: *i, len: subs.len() }),
            Term::Apply(name, args) => Ok(Term::Apply(
                name.clone(),
                args.iter().map(|a| a.substitute(subs)).collect::<Result<_>>()?,
            )),
        }
    }

    fn shift(&self, by: usize) -> Term {
        match self {
            Term::Var(i) => Term::Var(i + by),
            Term::Apply(name, args) => Term::Apply(name.clone(), args.iter().map(|a| a.shift(by)).collect()),
        }
    }
}

/// `f ⋆ g` for `f` of arity `l` and `g` of arity `m`: the `l·m`-ary term
/// `f(g(x_0..x_{m-1}), g(x_m..x_{2m-1}), ...)`.
pub fn star_compose(f: &Term, l: usize, g: &Term, m: usize) -> Term {
    let blocks: Vec<Term> = (0..l).map(|i| g.shift(i * m)).collect();
    f.substitute(&blocks).expect("f uses at most l variables")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Apply(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Malformed(format!("trailing input in term `{s}`")));
        }
        Ok(t)
    }
}

fn parse(c: &[char], pos: &mut usize) -> Result<Term> {
    let start = *pos;
    while *pos < c.len() && (c[*pos].is_alphanumeric() || c[*pos] == '_') {
        *pos += 1;
    }
    let ident: String = c[start..*pos].iter().collect();
    if ident.is_empty() {
        return Err(Error::Malformed(format!("expected identifier at offset {start}")));
    }
    if c.get(*pos) != Some(&'(') {
        let idx = ident
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Malformed(format!("`{ident}` is not a variable x<i>")))?;
        return Ok(Term::Var(idx));
    }
    *pos += 1;
    let mut args = Vec::new();
    if c.get(*pos) == Some(&')') {
        *pos += 1;
        return Ok(Term::Apply(ident, args));
    }
    loop {
        args.push(parse(c, pos)?);
        match c.get(*pos) {
            Some(',') => *pos += 1,
            Some(')') => {
                *pos += 1;
                return Ok(Term::Apply(ident, args));
            }
            _ => return Err(Error::Malformed(format!("expected `,` or `)` at offset {pos}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq3() -> FiniteAlgebra {
        FiniteAlgebra::binar(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn evaluates_products() {
        let t = Term::mul(Term::var(0), Term::var(1));
        assert_eq!(t.eval(&sq3(), &[0, 1]).unwrap(), 2);
        assert_eq!(Term::var(0).eval(&sq3(), &[2, 0]).unwrap(), 2);
    }

    #[test]
    fn eval_errors() {
        let a = sq3();
        let bad = Term::apply("join", vec![Term::var(0), Term::var(0)]);
        assert!(matches!(bad.eval(&a, &[0]), Err(Error::UnknownOperation(_))));
        let wrong = Term::apply("mul", vec![Term::var(0)]);
        assert!(matches!(wrong.eval(&a, &[0]), Err(Error::ArityMismatch { .. })));
        assert!(Term::var(3).eval(&a, &[0]).is_err());
    }

    #[test]
    fn star_arity_and_value() {
        let p = Term::mul(Term::var(0), Term::var(1));
        let g = Term::mul(Term::var(0), Term::mul(Term::var(1), Term::var(2)));
        assert_eq!(star_compose(&p, 2, &g, 3).arity(), 6);
        let q = star_compose(&p, 2, &p, 2);
        assert_eq!(q.eval(&sq3(), &[0, 1, 1, 2]).unwrap(), 1);
        assert_eq!(star_compose(&Term::var(0), 1, &Term::var(0), 1), Term::var(0));
    }

    #[test]
    fn display_and_parse() {
        let t: Term = "mul(mul(x0,x1),mul(x2, x3))".parse().unwrap();
        assert_eq!(t.to_string(), "mul(mul(x0,x1),mul(x2,x3))");
        assert_eq!(t.depth(), 2);
        assert_eq!(t.arity(), 4);
        assert!("mul(x0".parse::<Term>().is_err());
        assert!("y1".parse::<Term>().is_err());
    }
}
