//! The ten acceptance criteria, each reduced to one pass/fail line.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::burnside::{compose_basis, BisetCategory};
use crate::error::{Error, Result};
use crate::essential::is_out_group_algebra;
use crate::goursat::BisetBasis;
use crate::groups::{parse_group, PermGroup, DEFAULT_BOUND};
use crate::report::{a4_facts, a4_filtration, a4_notes, a5_facts, a5_witness, radical_summary, Context, Fact};
use crate::rep::characters_independent;
use crate::sigma::Sigma;
use crate::analysis::{decomposition_matrix, qh_certificate};
use crate::verify::oracles::{compose_by_orbits, product_subgroup_class_count};

/// Groups over which the corpus-wide properties are checked.
pub const CORPUS: &[&str] = &["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "A4", "A5"];

/// Groups of order at most 12 used for the composition oracle.
pub const SMALL: &[&str] = &["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "A4"];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({:.1?}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

pub const TITLES: [&str; 10] = [
    "basis sizes and Goursat counts",
    "composition, associativity, opposite",
    "essential quotients of H onto kOut(H)",
    "standard functors evaluated at A4",
    "standard multiplicities of P(A4, sgn) at A4",
    "standard functors evaluated at A5",
    "self-extending projective at A5",
    "quasi-heredity for small abelian groups",
    "radical of evaluations",
    "character machinery",
];

/// Caches groups, `Σ(G)` and analyses across criteria.
pub struct Corpus {
    bound: usize,
    groups: Mutex<HashMap<String, Arc<PermGroup>>>,
    sigmas: Mutex<HashMap<String, Arc<Sigma>>>,
    contexts: Mutex<HashMap<String, Arc<Context>>>,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new(DEFAULT_BOUND)
    }
}

impl Corpus {
    pub fn new(bound: usize) -> Self {
        Corpus {
            bound,
            groups: Mutex::new(HashMap::new()),
            sigmas: Mutex::new(HashMap::new()),
            contexts: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self, name: &str) -> Result<Arc<PermGroup>> {
        let mut groups = self.groups.lock().expect("lock");
        if let Some(g) = groups.get(name) {
            return Ok(g.clone());
        }
        let g = Arc::new(parse_group(name, self.bound)?);
        groups.insert(name.to_string(), g.clone());
        Ok(g)
    }

    pub fn sigma(&self, name: &str) -> Result<Arc<Sigma>> {
        if let Some(s) = self.sigmas.lock().expect("lock").get(name) {
            return Ok(s.clone());
        }
        let s = Arc::new(Sigma::new(name, self.group(name)?)?);
        self.sigmas.lock().expect("lock").insert(name.to_string(), s.clone());
        Ok(s)
    }

    pub fn context(&self, name: &str) -> Result<Arc<Context>> {
        if let Some(c) = self.contexts.lock().expect("lock").get(name) {
            return Ok(c.clone());
        }
        let c = Arc::new(Context::new(self.sigma(name)?)?);
        self.contexts.lock().expect("lock").insert(name.to_string(), c.clone());
        Ok(c)
    }
}

fn facts_outcome(facts: &[Fact]) -> (bool, String) {
    match facts.iter().find(|f| !f.passed) {
        Some(f) => (false, format!("{}: {}", f.name, f.detail)),
        None => (true, format!("{} facts", facts.len())),
    }
}

fn bases_and_counts(corpus: &Corpus) -> Result<(bool, String)> {
    let c2 = corpus.group("C2")?;
    let dim = BisetBasis::new(c2.clone(), c2)?.dim();
    let classes = corpus.group("A5")?.lattice().classes.len();
    let mut pairs = 0;
    for a in SMALL {
        for b in SMALL {
            let (g, h) = (corpus.group(a)?, corpus.group(b)?);
            if g.order() * h.order() > 64 {
                continue;
            }
            let want = product_subgroup_class_count(&g, &h)?;
            let got = BisetBasis::new(g, h)?.dim();
            if want != got {
                return Ok((false, format!("{a} x {b}: basis {got}, product lattice {want}")));
            }
            pairs += 1;
        }
    }
    Ok((
        dim == 5 && classes == 9,
        format!("dim B(C2, C2) = {dim}, A5 has {classes} subgroup classes, {pairs} Goursat pairs agree"),
    ))
}

fn composition(corpus: &Corpus) -> Result<(bool, String)> {
    let mut checked = 0usize;
    for a in SMALL {
        for b in SMALL {
            for c in SMALL {
                let (ga, gb, gc) = (corpus.group(a)?, corpus.group(b)?, corpus.group(c)?);
                if ga.order() * gb.order() * gc.order() > 288 {
                    continue;
                }
                let left = BisetBasis::new(ga.clone(), gb.clone())?;
                let right = BisetBasis::new(gb, gc.clone())?;
                let out = BisetBasis::new(ga, gc)?;
                let bad = (0..left.dim() * right.dim()).into_par_iter().find_any(|ij| {
                    let (i, j) = (ij / right.dim(), ij % right.dim());
                    compose_basis(&left, i, &right, j, &out).ok() != compose_by_orbits(&left, i, &right, j, &out).ok()
                });
                if let Some(ij) = bad {
                    return Ok((false, format!("{a} <- {b} <- {c}: pair {ij} disagrees with the orbit oracle")));
                }
                checked += left.dim() * right.dim();
            }
        }
    }
    for g in ["C2", "C3", "C2xC2", "S3"] {
        let sigma = corpus.sigma(g)?;
        if !sigma.algebra()?.is_associative() {
            return Ok((false, format!("kB({g}, {g}) is not associative")));
        }
    }
    for (a, b) in [("S3", "C2"), ("C2xC2", "C4"), ("S3", "S3")] {
        let cat = BisetCategory::new(vec![(a.into(), corpus.group(a)?), (b.into(), corpus.group(b)?)]);
        let (x, y) = (cat.basis(0, 1)?.dim(), cat.basis(1, 0)?.dim());
        for i in 0..x {
            let u = cat.basis_element(0, 1, i);
            if cat.opposite(&cat.opposite(&u)?)? != u {
                return Ok((false, format!("opposite is not an involution on B({a}, {b})")));
            }
            for j in 0..y {
                let v = cat.basis_element(1, 0, j);
                let lhs = cat.opposite(&cat.compose(&u, &v)?)?;
                let rhs = cat.compose(&cat.opposite(&v)?, &cat.opposite(&u)?)?;
                if lhs != rhs {
                    return Ok((false, format!("opposite does not reverse {a}/{b} products")));
                }
            }
        }
    }
    Ok((true, format!("{checked} basis pairs against orbits, 4 associative tables, opposite checked")))
}

fn essential_quotients(corpus: &Corpus) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    for h in ["C1", "C2", "C3", "C2xC2", "C5", "S3", "A4"] {
        let sigma = corpus.sigma(h)?;
        let top = sigma.top();
        let hb = sigma.hombar(top, top)?;
        let out = &sigma.classes[top].out;
        if hb.dim() != out.order() || !is_out_group_algebra(&sigma.cat, &hb, out)? {
            return Ok((false, format!("Hom-bar({h}, {h}) has dim {} against |Out| = {}", hb.dim(), out.order())));
        }
        parts.push(format!("{h}:{}", hb.dim()));
    }
    Ok((true, parts.join(" ")))
}

fn groups_pass(names: &[&str], corpus: &Corpus) -> Result<(bool, String)> {
    let mut failed = Vec::new();
    for g in names {
        let cx = corpus.context(g)?;
        let qh = qh_certificate(&cx.sigma, &cx.analysis)?;
        if !qh.verdict {
            let checks: Vec<&str> = qh.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            failed.push(format!("{g} fails {}", checks.join(",")));
        }
    }
    if failed.is_empty() {
        Ok((true, format!("certified: {}", names.join(", "))))
    } else {
        Ok((false, failed.join("; ")))
    }
}

fn radicals(corpus: &Corpus) -> Result<(bool, String)> {
    let mut strict_at_a5 = false;
    for g in CORPUS {
        let sigma = corpus.sigma(g)?;
        let (included, equal, strict) = radical_summary(&sigma)?;
        if !included || !equal {
            return Ok((false, format!("{g}: included {included}, equal where nonzero {equal}")));
        }
        if *g == "A5" {
            strict_at_a5 = strict;
        }
    }
    Ok((strict_at_a5, format!("inclusion everywhere, strict inclusion at A5: {strict_at_a5}")))
}

fn characters(corpus: &Corpus) -> Result<(bool, String)> {
    for g in CORPUS {
        let cx = corpus.context(g)?;
        if !characters_independent(&cx.analysis.characters) {
            return Ok((false, format!("{g}: Gram matrix singular")));
        }
        // Nonnegative integer solutions are enforced by the multiplicity solver.
        decomposition_matrix(&cx.sigma, &cx.analysis)?;
        crate::analysis::cartan_matrix(&cx.analysis)?;
    }
    Ok((true, format!("{} groups", CORPUS.len())))
}

fn evaluate(number: usize, corpus: &Corpus) -> Result<(bool, String)> {
    match number {
        1 => bases_and_counts(corpus),
        2 => composition(corpus),
        3 => essential_quotients(corpus),
        4 => {
            let cx = corpus.context("A4")?;
            let (ok, detail) = facts_outcome(&a4_facts(&cx)?);
            let notes: Vec<String> = a4_notes(&cx)?
                .iter()
                .map(|n| format!("{}: {}", n.name, n.passed))
                .collect();
            Ok((ok, format!("{detail}; reported: {}", notes.join("; "))))
        }
        5 => {
            let f = a4_filtration(&*corpus.context("A4")?)?;
            Ok((f.passed, f.detail))
        }
        6 => Ok(facts_outcome(&a5_facts(&*corpus.context("A5")?)?)),
        7 => {
            let (facts, _) = a5_witness(&*corpus.context("A5")?)?;
            Ok(facts_outcome(&facts))
        }
        8 => groups_pass(&["C1", "C2", "C3", "C4", "C6", "C2xC2"], corpus),
        9 => radicals(corpus),
        10 => characters(corpus),
        _ => Err(Error::InvalidData(format!("no criterion {number}"))),
    }
}

pub fn run_criterion(number: usize, corpus: &Corpus) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = evaluate(number, corpus).unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        number,
        title: TITLES.get(number.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Runs every criterion in order, calling `report` after each one.
pub fn run_all(corpus: &Corpus, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    (1..=10)
        .map(|n| {
            let r = run_criterion(n, corpus);
            report(&r);
            r
        })
        .collect()
}
