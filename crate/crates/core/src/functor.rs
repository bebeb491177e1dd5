//! Evaluations at `G` of the standard functors `Δ_{H,V}` and the simple
//! functors `S_{H,V}`, as modules over `kB(G, G)`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::burnside::compose_basis;
use crate::error::{Error, Result};
use crate::linalg::{induced_on_quotient, zero_vec, QMatrix, Subspace};
use crate::rep::{hom_space, ModuleRep};
use crate::sigma::{Sigma, SimpleLabel};

/// `Δ_{H,V}(G) = Hom-bar(H, G) ⊗_{kOut(H)} V`.
#[derive(Clone, Debug)]
pub struct DeltaEval {
    pub label: SimpleLabel,
    pub module: ModuleRep,
    /// The tensor relations inside `Hom-bar(H, G) ⊗ V`, indexed `i * dim V + v`.
    pub relations: Subspace,
    /// For each basis vector of the module, the pair (Hom-bar basis index, V basis index)
    /// of the tensor `a ⊗ v` it represents.
    pub generators: Vec<(usize, usize)>,
}

/// `S_{H,V}(G) = Δ_{H,V}(G) / R`, with `R` the kernel of the evaluation pairing.
#[derive(Clone, Debug)]
pub struct SimpleEval {
    pub label: SimpleLabel,
    pub module: ModuleRep,
    pub kernel: Subspace,
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub delta: DeltaEval,
    pub simple: SimpleEval,
}

pub(crate) fn hombar_left_action(sigma: &Sigma, h: usize) -> Result<Vec<QMatrix>> {
    let g = sigma.top();
    let hb = sigma.hombar(h, g)?;
    let gg = sigma.cat.basis(g, g)?;
    let gh = sigma.cat.basis(g, h)?;
    (0..gg.dim())
        .into_par_iter()
        .map(|b| {
            let mut m = QMatrix::zeros(hb.dim(), hb.dim());
            for (i, &r) in hb.reps.iter().enumerate() {
                let terms = compose_basis(&gg, b, &gh, r, &gh)?;
                for (k, c) in hb.project_terms(&terms).into_iter().enumerate() {
                    m.set(k, i, c);
                }
            }
            Ok(m)
        })
        .collect()
}

pub fn delta_eval(sigma: &Sigma, l: SimpleLabel) -> Result<DeltaEval> {
    let g = sigma.top();
    let hb = sigma.hombar(l.h, g)?;
    let out = &sigma.classes[l.h].out;
    let v = sigma.simple(l);
    let (q, d) = (hb.dim(), v.dim);
    let n = q * d;
    let right = hb.out_action(&sigma.cat, out)?;
    let mut relations = Subspace::zero(n);
    for (phi, r) in right.iter().enumerate() {
        let rho = &v.matrices[phi];
        for i in 0..q {
            for w in 0..d {
                let mut x = zero_vec(n);
                for k in 0..q {
                    x[k * d + w] += r.get(k, i);
                }
                for u in 0..d {
                    x[i * d + u] -= rho.get(u, w);
                }
                relations.insert(x);
            }
        }
    }
    let left = sigma.hombar_left_action(l.h)?;
    let eye = QMatrix::identity(d);
    let action = left
        .par_iter()
        .map(|m| induced_on_quotient(&m.kron(&eye), &relations))
        .collect();
    let generators = relations
        .complement_indices()
        .into_iter()
        .map(|j| (j / d.max(1), j % d.max(1)))
        .collect();
    Ok(DeltaEval {
        label: l,
        module: ModuleRep {
            dim: n - relations.dim(),
            action,
        },
        relations,
        generators,
    })
}

/// The pairing matrix of `Δ_{H,V}(G)` against `B(H, G)`: row `(c, u)` and
/// column `j` hold the `u`-th coordinate of the value at `c` of the `j`-th
/// basis vector.
fn pairing(sigma: &Sigma, delta: &DeltaEval) -> Result<QMatrix> {
    let l = delta.label;
    let (h, g) = (l.h, sigma.top());
    let hb = sigma.hombar(h, g)?;
    let hh = sigma.hombar(h, h)?;
    let out = &sigma.classes[h].out;
    let v = sigma.simple(l);
    let d = v.dim;
    let to_out = hh
        .out_images(&sigma.cat, out)?
        .inverse()
        .ok_or_else(|| Error::Assertion(format!("Hom-bar({0}, {0}) is not kOut", sigma.classes[h].name)))?;
    let bhg = sigma.cat.basis(h, g)?;
    let bgh = sigma.cat.basis(g, h)?;
    let bhh = sigma.cat.basis(h, h)?;
    // For each c and each Hom-bar representative, the matrix of the value on V.
    let values: Vec<Vec<QMatrix>> = (0..bhg.dim())
        .into_par_iter()
        .map(|c| {
            hb.reps
                .iter()
                .map(|&r| {
                    let terms = compose_basis(&bhg, c, &bgh, r, &bhh)?;
                    let x = to_out.mul_vec(&hh.project_terms(&terms));
                    Ok(v.act(&x))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let cols = delta.generators.len();
    let mut p = QMatrix::zeros(bhg.dim() * d, cols);
    for (c, per_rep) in values.iter().enumerate() {
        for (j, &(i, w)) in delta.generators.iter().enumerate() {
            for u in 0..d {
                p.set(c * d + u, j, per_rep[i].get(u, w).clone());
            }
        }
    }
    Ok(p)
}

pub fn simple_eval(sigma: &Sigma, delta: &DeltaEval) -> Result<SimpleEval> {
    let p = pairing(sigma, delta)?;
    let dim = delta.module.dim;
    let kernel = if dim == 0 {
        Subspace::zero(0)
    } else {
        Subspace::from_vectors(dim, p.kernel())
    };
    Ok(SimpleEval {
        label: delta.label,
        module: delta.module.quotient(&kernel),
        kernel,
    })
}

pub(crate) fn evaluate(sigma: &Sigma, l: SimpleLabel) -> Result<Evaluation> {
    let delta = delta_eval(sigma, l)?;
    let simple = simple_eval(sigma, &delta)?;
    Ok(Evaluation { delta, simple })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingRow {
    pub label: SimpleLabel,
    pub h: String,
    pub v: String,
    pub dim_delta: usize,
    pub dim_simple: usize,
}

pub fn vanishing_table(sigma: &Sigma) -> Result<Vec<VanishingRow>> {
    let labels = sigma.labels();
    let evals = labels
        .par_iter()
        .map(|&l| sigma.evaluation(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(labels
        .iter()
        .zip(evals)
        .map(|(&l, e)| {
            let (h, v) = sigma.label_name(l);
            VanishingRow {
                label: l,
                h,
                v,
                dim_delta: e.delta.module.dim,
                dim_simple: e.simple.module.dim,
            }
        })
        .collect())
}

/// Whether no simple functor of `Σ(G)` vanishes at `G`, with the offenders.
pub fn nv_check(sigma: &Sigma) -> Result<(bool, Vec<SimpleLabel>)> {
    let offenders: Vec<SimpleLabel> = vanishing_table(sigma)?
        .into_iter()
        .filter(|r| r.dim_simple == 0)
        .map(|r| r.label)
        .collect();
    Ok((offenders.is_empty(), offenders))
}

/// Comparison in the order where `(H, V) < (K, W)` iff `K ⊏ H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

pub fn lambda_order(sigma: &Sigma, a: SimpleLabel, b: SimpleLabel) -> LambdaOrder {
    if a == b {
        LambdaOrder::Equal
    } else if sigma.strictly_below(b.h, a.h) {
        LambdaOrder::Less
    } else if sigma.strictly_below(a.h, b.h) {
        LambdaOrder::Greater
    } else {
        LambdaOrder::Incomparable
    }
}

impl LambdaOrder {
    pub fn as_ordering(self) -> Option<Ordering> {
        match self {
            LambdaOrder::Less => Some(Ordering::Less),
            LambdaOrder::Equal => Some(Ordering::Equal),
            LambdaOrder::Greater => Some(Ordering::Greater),
            LambdaOrder::Incomparable => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadicalComparison {
    pub label: SimpleLabel,
    /// `Rad(Δ(G)) = J · Δ(G)`.
    pub rad_of_eval: Subspace,
    /// `R = [Rad Δ](G)`.
    pub eval_of_rad: Subspace,
    pub included: bool,
    pub equal: bool,
}

pub fn radical_compare(sigma: &Sigma, l: SimpleLabel) -> Result<RadicalComparison> {
    let e = sigma.evaluation(l)?;
    let rad = sigma.radical()?;
    let rad_of_eval = e.delta.module.radical(&rad);
    let eval_of_rad = e.simple.kernel.clone();
    let included = rad_of_eval.is_subspace_of(&eval_of_rad);
    let equal = included && rad_of_eval.dim() == eval_of_rad.dim();
    Ok(RadicalComparison {
        label: l,
        rad_of_eval,
        eval_of_rad,
        included,
        equal,
    })
}

/// A simple `kB(G, G)`-module of the catalog with its endomorphism dimension.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: SimpleLabel,
    pub module: ModuleRep,
    pub end_dim: usize,
}

/// The nonzero `S_{H,V}(G)`, in label order.
pub fn simple_catalog(sigma: &Sigma) -> Result<Vec<CatalogEntry>> {
    let labels = sigma.labels();
    labels
        .par_iter()
        .map(|&l| {
            let e = sigma.evaluation(l)?;
            let m = &e.simple.module;
            if m.dim == 0 {
                return Ok(None);
            }
            let end_dim = hom_space(&m.action, &m.action, m.dim, m.dim).len();
            Ok(Some(CatalogEntry {
                label: l,
                module: m.clone(),
                end_dim,
            }))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// Whether `Δ(G)` has a simple top, which makes it local and so indecomposable.
pub fn has_simple_top(sigma: &Sigma, l: SimpleLabel) -> Result<bool> {
    let e = sigma.evaluation(l)?;
    let rad = sigma.radical()?;
    let m = &e.delta.module;
    if m.dim == 0 {
        return Ok(false);
    }
    let top = m.quotient(&m.radical(&rad));
    let catalog = simple_catalog(sigma)?;
    let chars: Vec<_> = catalog.iter().map(|c| c.module.trace_character()).collect();
    let mult = crate::rep::multiplicities(&top.trace_character(), &chars)?;
    Ok(mult.iter().sum::<u64>() == 1)
}
