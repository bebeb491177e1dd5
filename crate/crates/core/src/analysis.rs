//! Structure of `kB(G, G)`: projective indecomposables, decomposition and
//! Cartan matrices, `Ext^1` between simples, and the quasi-heredity
//! certificate.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::burnside::AlgebraTable;
use crate::error::{Error, Result};
use crate::functor::{nv_check, simple_catalog, CatalogEntry};
use crate::linalg::{q, restrict, unit_vec, zero_vec, QMatrix, Subspace, Q};
use crate::rep::{hom_space, multiplicities, ModuleRep, TraceCharacter};
use crate::sigma::{Sigma, SimpleLabel};

/// A projective indecomposable `A·e` with its radical layers.
#[derive(Clone, Debug)]
pub struct Pim {
    pub label: SimpleLabel,
    pub idempotent: Vec<Q>,
    pub space: Subspace,
    pub module: ModuleRep,
    /// Dimensions of `J^i P / J^{i+1} P`.
    pub loewy: Vec<usize>,
    /// Catalog multiplicities of each radical layer.
    pub layers: Vec<Vec<u64>>,
}

impl Pim {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Everything derived from the simple catalog of `kB(G, G)`.
#[derive(Debug)]
pub struct Analysis {
    pub catalog: Vec<CatalogEntry>,
    pub characters: Vec<TraceCharacter>,
    pub pims: Vec<Pim>,
    basic: BasicAlgebra,
}

impl Analysis {
    pub fn catalog_index(&self, l: SimpleLabel) -> Option<usize> {
        self.catalog.iter().position(|c| c.label == l)
    }

    pub fn pim(&self, l: SimpleLabel) -> Option<&Pim> {
        self.pims.iter().find(|p| p.label == l)
    }
}

/// Left ideal `U` of the algebra as a module.
fn ideal_module(table: &AlgebraTable, space: &Subspace) -> ModuleRep {
    let n = table.dim();
    let d = space.dim();
    let action = (0..n)
        .into_par_iter()
        .map(|i| {
            let e = unit_vec(n, i);
            let mut m = QMatrix::zeros(d, d);
            for (j, u) in space.basis().iter().enumerate() {
                let v = table.multiply(&e, u);
                for (k, c) in space.coords(&v).into_iter().enumerate() {
                    m.set(k, j, c);
                }
            }
            m
        })
        .collect();
    ModuleRep { dim: d, action }
}

/// A projection of `S` onto one line over `D = End_A(S)`, along a
/// `D`-stable complement; it lies in the image of the algebra.
fn primitive_target(s: &ModuleRep, ends: &[QMatrix]) -> QMatrix {
    let d = s.dim;
    let line = |v: &[Q]| -> Vec<Vec<Q>> { ends.iter().map(|x| x.mul_vec(v)).collect() };
    let first = Subspace::from_vectors(d, line(&unit_vec(d, 0)));
    let mut span = first.clone();
    let mut complement: Vec<Vec<Q>> = Vec::new();
    for k in 1..d {
        let e = unit_vec(d, k);
        if span.contains(&e) {
            continue;
        }
        for v in line(&e) {
            if span.insert(v.clone()) {
                complement.push(v);
            }
        }
    }
    let mut cols: Vec<Vec<Q>> = first.basis().to_vec();
    cols.extend(complement);
    let basis = QMatrix::from_columns(&cols, d);
    let mut diag = QMatrix::zeros(d, d);
    for i in 0..first.dim() {
        diag.set(i, i, Q::one());
    }
    basis.mul(&diag).mul(&basis.inverse().expect("basis"))
}

fn lift_idempotent(table: &AlgebraTable, mut e: Vec<Q>) -> Vec<Q> {
    loop {
        let e2 = table.multiply(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = table.multiply(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| q(3) * a - q(2) * b)
            .collect();
    }
}

/// Mutually orthogonal primitive idempotents, one for each simple.
fn orthogonal_idempotents(table: &AlgebraTable, catalog: &[CatalogEntry]) -> Result<Vec<Vec<Q>>> {
    let n = table.dim();
    let rows: usize = catalog.iter().map(|c| c.module.dim * c.module.dim).sum();
    let mut system = QMatrix::zeros(rows, n);
    for i in 0..n {
        let mut r = 0;
        for c in catalog {
            let m = &c.module.action[i];
            for a in 0..c.module.dim {
                for b in 0..c.module.dim {
                    system.set(r, i, m.get(a, b).clone());
                    r += 1;
                }
            }
        }
    }
    let targets: Vec<QMatrix> = catalog
        .iter()
        .map(|c| {
            let ends = hom_space(&c.module.action, &c.module.action, c.module.dim, c.module.dim);
            primitive_target(&c.module, &ends)
        })
        .collect();
    let mut used = zero_vec(n);
    let mut out = Vec::new();
    for (j, target) in targets.iter().enumerate() {
        let mut rhs = Vec::with_capacity(rows);
        for (l, c) in catalog.iter().enumerate() {
            for a in 0..c.module.dim {
                for b in 0..c.module.dim {
                    rhs.push(if l == j { target.get(a, b).clone() } else { Q::zero() });
                }
            }
        }
        let y = system.solve(&rhs).map_err(|_| {
            Error::CatalogIncomplete("simple actions do not separate the semisimple quotient".into())
        })?;
        let f: Vec<Q> = table.unit.iter().zip(&used).map(|(a, b)| a - b).collect();
        let y = table.multiply(&table.multiply(&f, &y), &f);
        let e = lift_idempotent(table, y);
        for (u, x) in used.iter_mut().zip(&e) {
            *u += x;
        }
        out.push(e);
    }
    Ok(out)
}

/// The corner algebra `eAe` for `e` the sum of the chosen idempotents, and
/// the simple `eAe`-modules `eS`.
#[derive(Debug)]
struct BasicAlgebra {
    space: Subspace,
    /// `products[k][l]` in coordinates of `space`.
    products: Vec<Vec<Vec<Q>>>,
    simples: Vec<Vec<QMatrix>>,
    simple_dims: Vec<usize>,
}

impl BasicAlgebra {
    fn new(table: &AlgebraTable, catalog: &[CatalogEntry], idempotents: &[Vec<Q>]) -> Self {
        let n = table.dim();
        let mut e = zero_vec(n);
        for f in idempotents {
            for (a, b) in e.iter_mut().zip(f) {
                *a += b;
            }
        }
        let vectors: Vec<Vec<Q>> = (0..n)
            .into_par_iter()
            .map(|i| table.multiply(&table.multiply(&e, &unit_vec(n, i)), &e))
            .collect();
        let space = Subspace::from_vectors(n, vectors);
        let basis = space.basis();
        let products = basis
            .par_iter()
            .map(|a| basis.iter().map(|b| space.coords(&table.multiply(a, b))).collect())
            .collect();
        let mut simples = Vec::new();
        let mut simple_dims = Vec::new();
        for c in catalog {
            let m = &c.module;
            let pe = m.act(&e);
            let image = Subspace::from_vectors(m.dim, (0..m.dim).map(|j| pe.column(j)));
            simples.push(basis.iter().map(|b| restrict(&m.act(b), &image)).collect());
            simple_dims.push(image.dim());
        }
        BasicAlgebra {
            space,
            products,
            simples,
            simple_dims,
        }
    }

    fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Dimension of `Z^1 / B^1` for the cocycles `c: eAe → Hom(eS, eT)`.
    fn ext1(&self, s: usize, t: usize) -> usize {
        let (ds, dt) = (self.simple_dims[s], self.simple_dims[t]);
        let hd = ds * dt;
        let m = self.dim();
        let unknowns = m * hd;
        if hd == 0 {
            return 0;
        }
        let (rs, rt) = (&self.simples[s], &self.simples[t]);
        // Unknown c(b_k)[r][c] sits at k * hd + r * ds + c.
        let mut rows = Subspace::zero(unknowns);
        for k in 0..m {
            for l in 0..m {
                let prod = &self.products[k][l];
                for r in 0..dt {
                    for c in 0..ds {
                        let mut eq = zero_vec(unknowns);
                        for (p, x) in prod.iter().enumerate() {
                            if !x.is_zero() {
                                eq[p * hd + r * ds + c] += x;
                            }
                        }
                        // - ρ_T(b_k) c(b_l)
                        for u in 0..dt {
                            let x = rt[k].get(r, u);
                            if !x.is_zero() {
                                eq[l * hd + u * ds + c] -= x;
                            }
                        }
                        // - c(b_k) ρ_S(b_l)
                        for u in 0..ds {
                            let x = rs[l].get(u, c);
                            if !x.is_zero() {
                                eq[k * hd + r * ds + u] -= x;
                            }
                        }
                        rows.insert(eq);
                    }
                }
            }
        }
        let z1 = unknowns - rows.dim();
        let homs = hom_space(rs, rt, ds, dt).len();
        z1 - (hd - homs)
    }
}

/// The algebra, its radical, the simple catalog and all PIMs.
pub fn analyze(sigma: &Sigma) -> Result<Analysis> {
    let table = sigma.algebra()?;
    let rad = sigma.radical()?;
    let catalog = simple_catalog(sigma)?;
    let characters: Vec<TraceCharacter> = catalog.iter().map(|c| c.module.trace_character()).collect();
    let semisimple: usize = catalog.iter().map(|c| c.module.dim * c.module.dim / c.end_dim).sum();
    if semisimple != table.dim() - rad.dim() {
        return Err(Error::CatalogIncomplete(format!(
            "simple blocks account for {semisimple} of {} dimensions",
            table.dim() - rad.dim()
        )));
    }
    let idempotents = orthogonal_idempotents(&table, &catalog)?;
    let pims = catalog
        .par_iter()
        .zip(idempotents.par_iter())
        .map(|(c, e)| {
            let n = table.dim();
            let space = Subspace::from_vectors(n, (0..n).map(|i| table.multiply(&unit_vec(n, i), e)));
            let module = ideal_module(&table, &space);
            let series = module.loewy_series(&rad);
            let mut layers = Vec::new();
            let mut loewy = Vec::new();
            for w in series.windows(2) {
                let upper = module.submodule(&w[0]).trace_character();
                let lower = module.submodule(&w[1]).trace_character();
                layers.push(multiplicities(&upper.sub(&lower), &characters)?);
                loewy.push(w[0].dim() - w[1].dim());
            }
            Ok(Pim {
                label: c.label,
                idempotent: e.clone(),
                space,
                module,
                loewy,
                layers,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let basic = BasicAlgebra::new(&table, &catalog, &idempotents);
    Ok(Analysis {
        catalog,
        characters,
        pims,
        basic,
    })
}

/// `dim Ext^1(S, T)` by cocycles on the Morita-equivalent corner algebra.
pub fn ext1(analysis: &Analysis, s: SimpleLabel, t: SimpleLabel) -> Result<usize> {
    let (i, j) = catalog_pair(analysis, s, t)?;
    Ok(analysis.basic.ext1(i, j))
}

/// `dim Hom(Rad P_S / Rad^2 P_S, T)`, from the radical layers of `P_S`.
pub fn ext1_by_loewy(analysis: &Analysis, s: SimpleLabel, t: SimpleLabel) -> Result<usize> {
    let (i, j) = catalog_pair(analysis, s, t)?;
    let p = &analysis.pims[i];
    let mult = p.layers.get(1).map_or(0, |layer| layer[j]);
    Ok(mult as usize * analysis.catalog[j].end_dim)
}

fn catalog_pair(analysis: &Analysis, s: SimpleLabel, t: SimpleLabel) -> Result<(usize, usize)> {
    let missing = || Error::InvalidData("label has no simple module at G".into());
    Ok((
        analysis.catalog_index(s).ok_or_else(missing)?,
        analysis.catalog_index(t).ok_or_else(missing)?,
    ))
}

pub fn ext1_matrix(analysis: &Analysis) -> Vec<Vec<usize>> {
    let n = analysis.catalog.len();
    (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| analysis.basic.ext1(i, j)).collect())
        .collect()
}

/// `[Δ_μ(G) : S_λ(G)]` over all labels; columns of vanishing simples are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub labels: Vec<SimpleLabel>,
    pub entries: Vec<Vec<u64>>,
}

pub fn decomposition_matrix(sigma: &Sigma, analysis: &Analysis) -> Result<DecompositionMatrix> {
    let labels = sigma.labels();
    let entries = labels
        .par_iter()
        .map(|&mu| {
            let e = sigma.evaluation(mu)?;
            let m = multiplicities(&e.delta.module.trace_character(), &analysis.characters)?;
            Ok(labels
                .iter()
                .map(|&l| analysis.catalog_index(l).map_or(0, |c| m[c]))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionMatrix { labels, entries })
}

/// `[P_λ : S_μ]` over the nonzero simples, in catalog order.
pub fn cartan_matrix(analysis: &Analysis) -> Result<Vec<Vec<u64>>> {
    analysis
        .pims
        .iter()
        .map(|p| multiplicities(&p.module.trace_character(), &analysis.characters))
        .collect()
}

pub fn integer_determinant(m: &[Vec<u64>]) -> Q {
    let n = m.len();
    let entries: Vec<i64> = m.iter().flatten().map(|&x| x as i64).collect();
    if n == 0 {
        return Q::one();
    }
    QMatrix::from_i64(n, n, &entries).determinant()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QhCertificate {
    pub verdict: bool,
    pub checks: Vec<Check>,
}

fn label_text(sigma: &Sigma, l: SimpleLabel) -> String {
    let (h, v) = sigma.label_name(l);
    format!("({h}, {v})")
}

pub fn qh_certificate(sigma: &Sigma, analysis: &Analysis) -> Result<QhCertificate> {
    let mut checks = Vec::new();
    let (nv, offenders) = nv_check(sigma)?;
    checks.push(Check {
        name: "nv".into(),
        passed: nv,
        witnesses: offenders.iter().map(|&l| format!("S{} vanishes", label_text(sigma, l))).collect(),
    });

    let dec = decomposition_matrix(sigma, analysis)?;
    let mut bad = Vec::new();
    for (i, &mu) in dec.labels.iter().enumerate() {
        for (j, &lam) in dec.labels.iter().enumerate() {
            let x = dec.entries[i][j];
            let ok = if i == j {
                x == 1 || analysis.catalog_index(lam).is_none()
            } else {
                x == 0 || sigma.strictly_below(mu.h, lam.h)
            };
            if !ok {
                bad.push(format!(
                    "[Δ{} : S{}] = {x}",
                    label_text(sigma, mu),
                    label_text(sigma, lam)
                ));
            }
        }
    }
    checks.push(Check {
        name: "unitriangular".into(),
        passed: bad.is_empty(),
        witnesses: bad,
    });

    let mut bad = Vec::new();
    let self_dual = sigma.labels().iter().all(|&l| sigma.simple(l).is_self_dual(&sigma.classes[l.h].out));
    if !self_dual {
        bad.push("some Out-simple is not self-dual".into());
    }
    for p in &analysis.pims {
        let lam = dec.labels.iter().position(|&l| l == p.label).expect("label");
        let d_lam = q(sigma.simple(p.label).end_dim as i64);
        let mut total = Q::zero();
        for (i, &mu) in dec.labels.iter().enumerate() {
            let x = dec.entries[i][lam];
            if x == 0 {
                continue;
            }
            let dim = sigma.evaluation(mu)?.delta.module.dim;
            let d_mu = q(sigma.simple(mu).end_dim as i64);
            total += q(x as i64) * &d_lam / d_mu * q(dim as i64);
        }
        if total != q(p.dim() as i64) {
            bad.push(format!("dim P{} = {} but the Δ-count gives {total}", label_text(sigma, p.label), p.dim()));
        }
    }
    checks.push(Check {
        name: "bgg".into(),
        passed: bad.is_empty(),
        witnesses: bad,
    });

    let cartan = cartan_matrix(analysis)?;
    let det = integer_determinant(&cartan);
    checks.push(Check {
        name: "cartan_det".into(),
        passed: det.is_one(),
        witnesses: if det.is_one() { Vec::new() } else { vec![format!("det C = {det}")] },
    });

    let loops: Vec<String> = (0..analysis.catalog.len())
        .into_par_iter()
        .map(|i| (i, analysis.basic.ext1(i, i)))
        .filter(|&(_, x)| x != 0)
        .map(|(i, x)| format!("Ext^1(S{0}, S{0}) = {x}", label_text(sigma, analysis.catalog[i].label)))
        .collect();
    checks.push(Check {
        name: "no_self_extensions".into(),
        passed: loops.is_empty(),
        witnesses: loops,
    });

    Ok(QhCertificate {
        verdict: checks.iter().all(|c| c.passed),
        checks,
    })
}
