use std::collections::{HashMap, HashSet};

use serde::{Serialize, Serializer};

use crate::algebra::{all_tuples, tuples_over, FiniteAlgebra};
use crate::congruence::congruence_lattice;
use crate::error::{Error, Result};
use crate::subuniverse::{closure, subuniverses_unchecked, Subuniverse};
use crate::term::{star_compose, Term};

use super::abelian::is_abelian;

/// Search limits for positive absorption certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionBounds {
    pub max_arity: usize,
    pub max_depth: usize,
    /// Largest algebra whose subuniverses are enumerated.
    pub max_size: usize,
}

impl Default for AbsorptionBounds {
    fn default() -> Self {
        Self { max_arity: 4, max_depth: 6, max_size: 16 }
    }
}

/// Cap on distinct term-operation vectors kept per arity during the search.
const VECTOR_CAP: usize = 20_000;

/// Cap on argument combinations tried for one operation at one depth.
const COMBO_CAP: usize = 2_000_000;

fn ser_term<S: Serializer>(t: &Term, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

/// Why a subuniverse is (not) absorbing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AbsorptionCertificate {
    /// `term` of the given arity maps every tuple with at most one
    /// coordinate outside `B` into `B`.
    Absorbing {
        #[serde(serialize_with = "ser_term")]
        term: Term,
        arity: usize,
    },
    NotAbsorbing { reason: NonAbsorption },
}

impl AbsorptionCertificate {
    pub fn is_absorbing(&self) -> bool {
        matches!(self, AbsorptionCertificate::Absorbing { .. })
    }

    /// True for verdicts that are only a bounded search failure.
    pub fn is_exhausted(&self) -> bool {
        matches!(
            self,
            AbsorptionCertificate::NotAbsorbing { reason: NonAbsorption::ExhaustedBound { .. } }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum NonAbsorption {
    /// `sink` is a sink of `subuniverse`, which meets `B`, and `sink ∉ B`.
    SinkEscape { sink: usize, subuniverse: Vec<usize> },
    /// The whole algebra is abelian, so it has no proper absorbing subuniverse.
    AbelianParent,
    /// `subuniverse` is abelian and meets `B` in a proper nonempty subset.
    AbelianSubalgebra { subuniverse: Vec<usize> },
    /// `subuniverse` modulo the congruence with these `classes` is abelian,
    /// and `B` misses some class. Absorption passes to subalgebras and to
    /// quotients, and abelian idempotent algebras absorb nothing proper.
    AbelianQuotient { subuniverse: Vec<usize>, classes: Vec<Vec<usize>> },
    /// No absorbing term was found within the bounds; inconclusive.
    ExhaustedBound { arity: usize, depth: usize },
}

/// Whether the `k`-ary `term` absorbs `b` into itself, by direct scan.
pub fn verify_absorbing_term(alg: &FiniteAlgebra, b: &[usize], term: &Term, k: usize) -> Result<bool> {
    let member = membership(alg.size(), b);
    for t in test_tuples(alg.size(), &member, k) {
        if !member[term.eval(alg, &t)?] {
            return Ok(false);
        }
    }
    Ok(true)
}

fn membership(n: usize, b: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in b {
        m[x] = true;
    }
    m
}

/// All `k`-tuples with at most one coordinate outside `member`.
fn test_tuples(n: usize, member: &[bool], k: usize) -> Vec<Vec<usize>> {
    let inside: Vec<usize> = (0..n).filter(|&a| member[a]).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for t in tuples_over(&inside, k) {
        out.push(t.clone());
        for j in 0..k {
            for a in (0..n).filter(|&a| !member[a]) {
                let mut u = t.clone();
                u[j] = a;
                out.push(u);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Positions on which each basic operation depends: varying that argument
/// changes the value for some choice of the others.
fn dependent_positions(alg: &FiniteAlgebra) -> Vec<Vec<bool>> {
    let n = alg.size();
    alg.operations()
        .iter()
        .map(|op| {
            let k = op.arity();
            (0..k)
                .map(|j| {
                    all_tuples(n, k).any(|t| {
                        let base = op.apply(&t);
                        (0..n).any(|x| {
                            let mut u = t.clone();
                            u[j] = x;
                            op.apply(&u) != base
                        })
                    })
                })
                .collect()
        })
        .collect()
}

/// Sinks of `c`: elements `s ∈ c` such that for every basic operation `f`
/// and every position `j` on which `f` depends, `f(..., s, ...) = s` with `s`
/// at position `j` and all other arguments drawn from the subuniverse
/// generated by `c`. For a closed `c` this is exactly the term-level notion.
pub fn find_sinks(alg: &FiniteAlgebra, c: &[usize]) -> Result<Vec<usize>> {
    if c.is_empty() {
        return Ok(Vec::new());
    }
    alg.check_elements(c)?;
    let generated = closure(alg, c)?;
    let deps = dependent_positions(alg);
    Ok(sinks_with(alg, c, generated.elements(), &deps))
}

fn sinks_with(alg: &FiniteAlgebra, c: &[usize], consts: &[usize], deps: &[Vec<bool>]) -> Vec<usize> {
    let mut cand: Vec<usize> = c.to_vec();
    cand.sort_unstable();
    cand.dedup();
    cand.into_iter()
        .filter(|&s| {
            alg.operations().iter().zip(deps).all(|(op, dep)| {
                let k = op.arity();
                (0..k).filter(|&j| dep[j]).all(|j| {
                    tuples_over(consts, k - 1).all(|rest| {
                        let mut args = Vec::with_capacity(k);
                        args.extend_from_slice(&rest[..j]);
                        args.push(s);
                        args.extend_from_slice(&rest[j..]);
                        op.apply(&args) == s
                    })
                })
            })
        })
        .collect()
}

/// Shared facts about an algebra reused across many absorption checks.
struct Context<'a> {
    alg: &'a FiniteAlgebra,
    bounds: AbsorptionBounds,
    abelian: bool,
    subs: Vec<Subuniverse>,
    sinks: Vec<Vec<usize>>,
    sub_abelian: Vec<bool>,
}

impl<'a> Context<'a> {
    fn new(alg: &'a FiniteAlgebra, bounds: AbsorptionBounds) -> Result<Self> {
        if alg.size() > bounds.max_size {
            return Err(Error::SizeBound { size: alg.size(), bound: bounds.max_size });
        }
        // Abelian certificates rely on idempotence.
        let idempotent = alg.is_idempotent();
        let abelian = idempotent && is_abelian(alg)?;
        let subs = subuniverses_unchecked(alg);
        let deps = dependent_positions(alg);
        let sinks = subs.iter().map(|s| sinks_with(alg, s.elements(), s.elements(), &deps)).collect();
        let sub_abelian = subs
            .iter()
            .map(|s| {
                if !idempotent || s.len() == 1 {
                    return Ok(idempotent);
                }
                is_abelian(&alg.restrict(s.elements())?)
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Self { alg, bounds, abelian, subs, sinks, sub_abelian })
    }

    fn negative(&self, b: &Subuniverse) -> Option<NonAbsorption> {
        if self.abelian {
            return Some(NonAbsorption::AbelianParent);
        }
        for (c, sinks) in self.subs.iter().zip(&self.sinks) {
            if !c.intersects(b) {
                continue;
            }
            if let Some(&s) = sinks.iter().find(|&&s| !b.contains(s)) {
                return Some(NonAbsorption::SinkEscape { sink: s, subuniverse: c.elements().to_vec() });
            }
        }
        for (c, &ab) in self.subs.iter().zip(&self.sub_abelian) {
            if ab && c.intersects(b) && !c.is_subset(b) {
                return Some(NonAbsorption::AbelianSubalgebra { subuniverse: c.elements().to_vec() });
            }
        }
        None
    }

    /// A subuniverse `C` meeting `b` and a congruence of `C` with an abelian
    /// quotient that `b ∩ C` does not cover.
    fn abelian_quotient(&self, b: &Subuniverse) -> Result<Option<NonAbsorption>> {
        if !self.alg.is_idempotent() {
            return Ok(None);
        }
        for c in self.subs.iter().filter(|c| c.intersects(b) && c.len() > 1) {
            let sub = self.alg.restrict(c.elements())?;
            // Positions in `c` of the elements of `b`.
            let inside: Vec<usize> = (0..c.len()).filter(|&p| b.contains(c.elements()[p])).collect();
            for theta in congruence_lattice(&sub)?.elements() {
                if theta.is_one() {
                    continue;
                }
                let mut hit: Vec<usize> = inside.iter().map(|&p| theta.block_of(p)).collect();
                hit.sort_unstable();
                hit.dedup();
                if hit.len() == theta.num_blocks() || !is_abelian(&sub.quotient(theta)?.algebra)? {
                    continue;
                }
                let classes = theta
                    .blocks()
                    .iter()
                    .map(|bl| bl.iter().map(|&p| c.elements()[p]).collect())
                    .collect();
                return Ok(Some(NonAbsorption::AbelianQuotient { subuniverse: c.elements().to_vec(), classes }));
            }
        }
        Ok(None)
    }

    fn check(&self, b: &Subuniverse, hints: &[(Subuniverse, Term, usize)]) -> Result<AbsorptionCertificate> {
        if b.len() == self.alg.size() {
            return Ok(AbsorptionCertificate::Absorbing { term: Term::var(0), arity: 1 });
        }
        if let Some(reason) = self.negative(b) {
            return Ok(AbsorptionCertificate::NotAbsorbing { reason });
        }
        // Intersections of known absorbing sets absorb under the star product.
        for (i, (b1, t1, k1)) in hints.iter().enumerate() {
            for (b2, t2, k2) in &hints[i + 1..] {
                let inter: Vec<usize> = b1.elements().iter().copied().filter(|&x| b2.contains(x)).collect();
                if inter != b.elements() {
                    continue;
                }
                let t = star_compose(t1, *k1, t2, *k2);
                if verify_absorbing_term(self.alg, b.elements(), &t, k1 * k2)? {
                    return Ok(AbsorptionCertificate::Absorbing { term: t, arity: k1 * k2 });
                }
            }
        }
        if let Some((term, arity)) = search_absorbing_term(self.alg, b.elements(), self.bounds)? {
            return Ok(AbsorptionCertificate::Absorbing { term, arity });
        }
        if let Some(reason) = self.abelian_quotient(b)? {
            return Ok(AbsorptionCertificate::NotAbsorbing { reason });
        }
        Ok(AbsorptionCertificate::NotAbsorbing {
            reason: NonAbsorption::ExhaustedBound {
                arity: self.bounds.max_arity,
                depth: self.bounds.max_depth,
            },
        })
    }
}

/// Breadth-first search over term operations, represented by their values on
/// the test tuples only, for a term absorbing `b`.
fn search_absorbing_term(alg: &FiniteAlgebra, b: &[usize], bounds: AbsorptionBounds) -> Result<Option<(Term, usize)>> {
    let member = membership(alg.size(), b);
    for k in 1..=bounds.max_arity {
        let tests = test_tuples(alg.size(), &member, k);
        let mut vectors: Vec<Vec<usize>> = Vec::new();
        let mut terms: Vec<Term> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for i in 0..k {
            let v: Vec<usize> = tests.iter().map(|t| t[i]).collect();
            if seen.insert(v.clone()) {
                vectors.push(v);
                terms.push(Term::var(i));
            }
        }
        let mut level_start = 0;
        'depth: for _ in 0..bounds.max_depth {
            let level_end = vectors.len();
            for op in alg.operations() {
                let r = op.arity();
                if r == 0 {
                    continue;
                }
                if level_end.checked_pow(r as u32).is_none_or(|c| c > COMBO_CAP) {
                    break 'depth;
                }
                let idx: Vec<usize> = (0..level_end).collect();
                for choice in tuples_over(&idx, r) {
                    if choice.iter().all(|&c| c < level_start) {
                        continue;
                    }
                    let mut args = vec![0; r];
                    let v: Vec<usize> = (0..tests.len())
                        .map(|p| {
                            for (slot, &c) in choice.iter().enumerate() {
                                args[slot] = vectors[c][p];
                            }
                            op.apply(&args)
                        })
                        .collect();
                    if seen.contains(&v) {
                        continue;
                    }
                    let term = Term::apply(op.name(), choice.iter().map(|&c| terms[c].clone()).collect());
                    if v.iter().all(|&x| member[x]) {
                        return Ok(Some((term, k)));
                    }
                    seen.insert(v.clone());
                    vectors.push(v);
                    terms.push(term);
                    if vectors.len() >= VECTOR_CAP {
                        break 'depth;
                    }
                }
            }
            level_start = level_end;
            if vectors.len() == level_end {
                break;
            }
        }
    }
    Ok(None)
}

/// Decides whether `b` absorbs `alg`, returning a positive term, a sound
/// negative certificate, or an inconclusive bounded verdict.
pub fn check_absorbing(alg: &FiniteAlgebra, b: &[usize], bounds: AbsorptionBounds) -> Result<AbsorptionCertificate> {
    let sub = Subuniverse::new(alg, b)?;
    let ctx = Context::new(alg, bounds)?;
    ctx.check(&sub, &[])
}

/// Minimal absorbing subuniverses with the certificates behind them.
#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub masses: Vec<Subuniverse>,
    pub certificates: Vec<(Subuniverse, AbsorptionCertificate)>,
    /// Subuniverses whose verdict came only from an exhausted search.
    pub exhausted: Vec<Subuniverse>,
}

/// Computes the masses (minimal absorbing subuniverses) of `alg`.
pub fn minimal_absorbing(alg: &FiniteAlgebra, bounds: AbsorptionBounds) -> Result<MassReport> {
    let ctx = Context::new(alg, bounds)?;
    // Largest first, so intersections of already certified sets can be tried.
    let mut order: Vec<usize> = (0..ctx.subs.len()).collect();
    order.sort_by(|&a, &b| ctx.subs[b].cmp(&ctx.subs[a]));
    let mut hints: Vec<(Subuniverse, Term, usize)> = Vec::new();
    let mut verdicts: HashMap<usize, AbsorptionCertificate> = HashMap::new();
    for i in order {
        let s = &ctx.subs[i];
        let cert = ctx.check(s, &hints)?;
        if let AbsorptionCertificate::Absorbing { term, arity } = &cert {
            if s.len() < alg.size() {
                hints.push((s.clone(), term.clone(), *arity));
            }
        }
        verdicts.insert(i, cert);
    }
    let absorbing: Vec<&Subuniverse> = (0..ctx.subs.len())
        .filter(|i| verdicts[i].is_absorbing())
        .map(|i| &ctx.subs[i])
        .collect();
    let masses: Vec<Subuniverse> = absorbing
        .iter()
        .filter(|s| !absorbing.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
        .map(|s| (*s).clone())
        .collect();
    let certificates = (0..ctx.subs.len()).map(|i| (ctx.subs[i].clone(), verdicts[&i].clone())).collect();
    let exhausted = (0..ctx.subs.len())
        .filter(|i| verdicts[i].is_exhausted())
        .map(|i| ctx.subs[i].clone())
        .collect();
    Ok(MassReport { masses, certificates, exhausted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn sets(subs: &[Subuniverse]) -> Vec<Vec<usize>> {
        subs.iter().map(|s| s.elements().to_vec()).collect()
    }

    #[test]
    fn abelian_quotient_rules_out_zero() {
        let cert = check_absorbing(&catalog::example_a(), &[0], AbsorptionBounds::default()).unwrap();
        let AbsorptionCertificate::NotAbsorbing { reason: NonAbsorption::AbelianQuotient { subuniverse, classes } } = cert
        else {
            panic!("{cert:?}")
        };
        assert_eq!(subuniverse, vec![0, 1, 2, 3]);
        assert_eq!(classes, vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn catalog_has_no_inconclusive_verdicts() {
        for (name, a) in catalog::named() {
            let r = minimal_absorbing(&a, AbsorptionBounds::default()).unwrap();
            assert!(r.exhausted.is_empty(), "{name}: {:?}", r.exhausted);
        }
    }

    #[test]
    fn sinks_examples() {
        assert_eq!(find_sinks(&catalog::s2(), &[0, 1]).unwrap(), vec![0]);
        assert_eq!(find_sinks(&catalog::mass_products_3(), &[0, 1]).unwrap(), vec![1]);
        assert_eq!(find_sinks(&catalog::sq3(), &[2]).unwrap(), vec![2]);
        assert!(find_sinks(&catalog::sq3(), &[0, 1, 2]).unwrap().is_empty());
        let a0 = catalog::simple4(0).restrict(&[0, 1]).unwrap();
        assert_eq!(find_sinks(&a0, &[0, 1]).unwrap(), vec![0]);
    }

    #[test]
    fn abelian_parent() {
        let c = check_absorbing(&catalog::sq3(), &[0], AbsorptionBounds::default()).unwrap();
        assert_eq!(c, AbsorptionCertificate::NotAbsorbing { reason: NonAbsorption::AbelianParent });
    }

    #[test]
    fn known_terms_absorb() {
        let t: Term = "mul(mul(x0,x1),mul(x2,x3))".parse().unwrap();
        assert!(verify_absorbing_term(&catalog::mass_products_3(), &[1], &t, 4).unwrap());
        let u: Term = "mul(mul(x0,mul(x0,x1)),mul(x1,mul(x0,x1)))".parse().unwrap();
        assert!(verify_absorbing_term(&catalog::simple4(0), &[0], &u, 2).unwrap());
        let c = check_absorbing(&catalog::simple4(0), &[0], AbsorptionBounds::default()).unwrap();
        assert!(c.is_absorbing());
    }

    #[test]
    fn masses_of_small_algebras() {
        let b = AbsorptionBounds::default();
        assert_eq!(sets(&minimal_absorbing(&catalog::s2(), b).unwrap().masses), vec![vec![0]]);
        assert_eq!(sets(&minimal_absorbing(&catalog::sq3(), b).unwrap().masses), vec![vec![0, 1, 2]]);
        let mp = minimal_absorbing(&catalog::mass_products_3(), b).unwrap();
        assert_eq!(sets(&mp.masses), vec![vec![1], vec![2]]);
        assert!(mp.exhausted.is_empty());
    }
}
