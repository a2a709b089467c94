//! Exhaustive checks of rectangularity, linking and the sink extension over
//! small products.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteAlgebra;
use crate::catalog;
use crate::congruence::{is_simple, projection_kernel, Congruence};
use crate::error::Result;
use crate::relation::{subpower_closure, Relation};
use crate::structure::{find_sinks, is_abelian, minimal_absorbing, AbsorptionBounds};

use super::{subdirect_products, VerificationReport, EXHAUSTIVE_PRODUCT_BOUND};

/// Enumeration settings shared by the theorem suites.
#[derive(Clone, Copy, Debug)]
pub struct TheoremOptions {
    pub bounds: AbsorptionBounds,
    /// Products above this size are sampled or skipped.
    pub product_bound: usize,
    /// Sample random subdirect products of larger products instead of skipping them.
    pub allow_sampling: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        Self {
            bounds: AbsorptionBounds::default(),
            product_bound: EXHAUSTIVE_PRODUCT_BOUND,
            allow_sampling: false,
            samples: 200,
            seed: 0,
        }
    }
}

/// A named list of factor algebras.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub factors: Vec<FiniteAlgebra>,
}

impl Family {
    pub fn new(names: &[&str]) -> Self {
        let factors = names.iter().map(|n| catalog::by_name(n).expect("catalog name")).collect();
        Self { name: names.join(" x "), factors }
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(FiniteAlgebra::size).product()
    }

    /// Products of at most 16 elements meeting the hypotheses: every pair
    /// of simple 4-element algebras, each of them against `Sq3` and `S2`,
    /// the 3-element simples, and three-factor products with `S2`.
    pub fn rectangularity_families() -> Vec<Family> {
        let simple4: Vec<String> = (0..7).map(|i| format!("a{i}")).collect();
        let mut out = Vec::new();
        for i in 0..7 {
            for j in i..7 {
                out.push(Family::new(&[&simple4[i], &simple4[j]]));
            }
        }
        for a in &simple4 {
            out.push(Family::new(&["sq3", a]));
            out.push(Family::new(&["s2", a]));
            out.push(Family::new(&["s2", "s2", a]));
        }
        for pair in [["t1", "t2"], ["t1", "t1"], ["t2", "t2"], ["sq3", "t1"], ["sq3", "t2"], ["sq3", "s2"], ["s2", "s2"]] {
            out.push(Family::new(&pair));
        }
        out.push(Family::new(&["s2", "s2", "s2"]));
        out.push(Family::new(&["sq3", "s2", "s2"]));
        out
    }

    pub fn linking_families() -> Vec<Family> {
        Self::rectangularity_families()
    }
}

/// Subdirect products of the family, exhaustively when small enough.
/// `None` when the product is too large and sampling is off.
fn products(family: &Family, opts: &TheoremOptions, report: &mut VerificationReport) -> Result<Option<Vec<Relation>>> {
    let size = family.size();
    if size <= opts.product_bound {
        return Ok(Some(subdirect_products(&family.factors, opts.product_bound)?));
    }
    if !opts.allow_sampling {
        report.note(format!("{}: {size} elements, above the bound {}; skipped", family.name, opts.product_bound));
        return Ok(None);
    }
    report.sampled = true;
    report.note(format!("{}: {size} elements; {} sampled generating sets", family.name, opts.samples));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let refs: Vec<&FiniteAlgebra> = family.factors.iter().collect();
    let domains: Vec<Vec<usize>> = family.factors.iter().map(|f| (0..f.size()).collect()).collect();
    let mut out: Vec<Relation> = Vec::new();
    for _ in 0..opts.samples {
        let k = 1 + rand::Rng::gen_range(&mut rng, 0..3);
        let gens: Vec<Vec<usize>> =
            (0..k).map(|_| domains.iter().map(|d| *d.choose(&mut rng).expect("nonempty")).collect()).collect();
        let r = subpower_closure(&refs, &gens)?;
        if r.is_subdirect(&domains) && !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(Some(out))
}

/// Whether the family meets the common hypotheses: at most one abelian
/// factor and every nonabelian factor simple.
fn admissible_family(family: &Family) -> Result<bool> {
    let mut abelian = 0;
    for f in &family.factors {
        if is_abelian(f)? {
            abelian += 1;
        } else if !is_simple(f)? {
            return Ok(false);
        }
    }
    Ok(abelian <= 1)
}

fn kernels(r: &Relation) -> Result<Vec<Congruence>> {
    (0..r.arity()).map(|i| projection_kernel(r, &[i])).collect()
}

fn distinct(ks: &[Congruence]) -> bool {
    (0..ks.len()).all(|i| (i + 1..ks.len()).all(|j| ks[i] != ks[j]))
}

/// Every choice of one mass per factor.
fn mass_choices(family: &Family, bounds: AbsorptionBounds) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for f in &family.factors {
        let masses: Vec<Vec<usize>> =
            minimal_absorbing(f, bounds)?.masses.iter().map(|s| s.elements().to_vec()).collect();
        choices = choices
            .into_iter()
            .flat_map(|c| {
                masses.iter().map(move |m| {
                    let mut next = c.clone();
                    next.push(m.clone());
                    next
                })
            })
            .collect();
    }
    Ok(choices)
}

/// Whenever an admissible subdirect product meets a product of masses, it
/// contains all of it.
pub fn verify_rectangularity(families: &[Family], opts: &TheoremOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("rectangularity");
    report.note(format!("exhaustive up to {} elements", opts.product_bound));
    for family in families {
        if !admissible_family(family)? {
            report.note(format!("{}: hypotheses fail; excluded", family.name));
            continue;
        }
        let Some(rels) = products(family, opts, &mut report)? else { continue };
        let choices = mass_choices(family, opts.bounds)?;
        let (mut admissible, mut excluded, mut met, mut violations) = (0, 0, 0, 0);
        for r in &rels {
            if !distinct(&kernels(r)?) {
                excluded += 1;
                continue;
            }
            admissible += 1;
            for bs in &choices {
                let prod = Relation::product(bs);
                if prod.tuples().iter().any(|t| r.contains(t)) {
                    met += 1;
                    if !prod.tuples().iter().all(|t| r.contains(t)) {
                        violations += 1;
                    }
                }
            }
        }
        report.check(
            format!(
                "{}: {admissible} admissible, {met} meeting a mass product, {excluded} with equal kernels excluded",
                family.name
            ),
            0,
            violations,
        );
    }
    Ok(report)
}

/// Every admissible subdirect product is linked at some coordinate against
/// the rest.
pub fn verify_linking(families: &[Family], opts: &TheoremOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("linking");
    report.note(format!("exhaustive up to {} elements", opts.product_bound));
    for family in families {
        if !admissible_family(family)? {
            report.note(format!("{}: hypotheses fail; excluded", family.name));
            continue;
        }
        let Some(rels) = products(family, opts, &mut report)? else { continue };
        let (mut admissible, mut excluded, mut unlinked) = (0, 0, 0);
        for r in &rels {
            let ks = kernels(r)?;
            if !distinct(&ks) {
                excluded += 1;
                continue;
            }
            admissible += 1;
            let n = r.len();
            let linked = (0..ks.len()).any(|k| {
                let rest = (0..ks.len()).filter(|&j| j != k).fold(Congruence::one(n), |acc, j| acc.meet(&ks[j]));
                ks[k].join(&rest).is_one()
            });
            if !linked {
                unlinked += 1;
            }
        }
        report.check(
            format!("{}: {admissible} admissible, {excluded} with equal kernels excluded", family.name),
            0,
            unlinked,
        );
    }
    Ok(report)
}

/// For `Sq3^a x S2^b` with `a <= max_a`, `b <= max_b`: every subdirect `R`
/// contains its projection onto the `Sq3` coordinates times the sink tuple.
pub fn verify_fry_pan(max_a: usize, max_b: usize, opts: &TheoremOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("fry-pan");
    report.note(format!("exhaustive up to {} elements", opts.product_bound));
    let s2 = catalog::s2();
    let sinks = find_sinks(&s2, &[0, 1])?;
    report.check("sinks of S2", vec![0], sinks.clone());
    report.check("Sq3 is abelian", true, is_abelian(&catalog::sq3())?);
    let sink = sinks[0];
    for a in 0..=max_a {
        for b in 0..=max_b {
            if a + b == 0 {
                continue;
            }
            let mut names = vec!["sq3"; a];
            names.extend(vec!["s2"; b]);
            let family = Family::new(&names);
            let Some(rels) = products(&family, opts, &mut report)? else { continue };
            let alpha: Vec<usize> = (0..a).collect();
            let mut violations = 0;
            for r in &rels {
                let proj = r.project(&alpha)?;
                let ok = if a == 0 {
                    r.contains(&vec![sink; b])
                } else {
                    proj.tuples().iter().all(|t| {
                        let mut u = t.clone();
                        u.extend(std::iter::repeat_n(sink, b));
                        r.contains(&u)
                    })
                };
                if !ok {
                    violations += 1;
                }
            }
            report.check(format!("Sq3^{a} x S2^{b}: {} subdirect products", rels.len()), 0, violations);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let opts = TheoremOptions::default();
        let fams = vec![Family::new(&["t1", "t2"]), Family::new(&["sq3", "s2"]), Family::new(&["sq3", "sq3"])];
        let r = verify_rectangularity(&fams, &opts).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.cases.len(), 2);
        assert!(r.notes.iter().any(|n| n.contains("sq3 x sq3")));
        assert!(verify_linking(&fams, &opts).unwrap().all_pass());
    }

    #[test]
    fn fry_pan_small() {
        let r = verify_fry_pan(1, 1, &TheoremOptions::default()).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn sampling_marks_report() {
        let opts = TheoremOptions { product_bound: 4, allow_sampling: true, samples: 20, ..Default::default() };
        let r = verify_fry_pan(1, 1, &opts).unwrap();
        assert!(r.sampled && r.all_pass());
    }
}
