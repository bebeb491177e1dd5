//! Machine-readable reports: per-group structure and the `A5` verification.

use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::analysis::{analyze, cartan_matrix, decomposition_matrix, ext1, ext1_matrix, integer_determinant, qh_certificate, Analysis, QhCertificate};
use crate::error::{Error, Result};
use crate::functor::{has_simple_top, radical_compare, vanishing_table};
use crate::linalg::{q, QMatrix, Q};
use crate::rep::multiplicities;
use crate::sigma::{Sigma, SimpleLabel};

/// A rational as `{num, den}` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Q);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 2)?;
        match (self.0.numer().to_i64(), self.0.denom().to_i64()) {
            (Some(n), Some(d)) => {
                st.serialize_field("num", &n)?;
                st.serialize_field("den", &d)?;
            }
            _ => {
                st.serialize_field("num", &self.0.numer().to_string())?;
                st.serialize_field("den", &self.0.denom().to_string())?;
            }
        }
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelJson {
    pub h: String,
    pub v: String,
}

pub fn label_json(sigma: &Sigma, l: SimpleLabel) -> LabelJson {
    let (h, v) = sigma.label_name(l);
    LabelJson { h, v }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingJson {
    pub label: LabelJson,
    pub dim_delta: usize,
    pub dim_simple: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: Vec<LabelJson>,
    pub cols: Vec<LabelJson>,
    pub entries: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanJson {
    pub labels: Vec<LabelJson>,
    pub entries: Vec<Vec<u64>>,
    pub determinant: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub vanishing_table: Vec<VanishingJson>,
    pub decomposition_matrix: MatrixJson,
    pub cartan_matrix: CartanJson,
    pub ext1_matrix: MatrixJson,
    pub qh: QhCertificate,
    pub witnesses: Vec<String>,
}

pub fn vanishing_json(sigma: &Sigma) -> Result<Vec<VanishingJson>> {
    Ok(vanishing_table(sigma)?
        .into_iter()
        .map(|r| VanishingJson {
            label: LabelJson { h: r.h, v: r.v },
            dim_delta: r.dim_delta,
            dim_simple: r.dim_simple,
        })
        .collect())
}

pub fn decomposition_json(sigma: &Sigma, analysis: &Analysis) -> Result<MatrixJson> {
    let d = decomposition_matrix(sigma, analysis)?;
    let labels: Vec<LabelJson> = d.labels.iter().map(|&l| label_json(sigma, l)).collect();
    Ok(MatrixJson {
        rows: labels.clone(),
        cols: labels,
        entries: d.entries,
    })
}

pub fn cartan_json(sigma: &Sigma, analysis: &Analysis) -> Result<CartanJson> {
    let entries = cartan_matrix(analysis)?;
    Ok(CartanJson {
        labels: analysis.catalog.iter().map(|c| label_json(sigma, c.label)).collect(),
        determinant: Rational(integer_determinant(&entries)),
        entries,
    })
}

pub fn ext1_json(sigma: &Sigma, analysis: &Analysis) -> MatrixJson {
    let labels: Vec<LabelJson> = analysis.catalog.iter().map(|c| label_json(sigma, c.label)).collect();
    MatrixJson {
        rows: labels.clone(),
        cols: labels,
        entries: ext1_matrix(analysis)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as u64).collect())
            .collect(),
    }
}

pub fn group_report(sigma: &Sigma) -> Result<GroupReport> {
    let analysis = analyze(sigma)?;
    let qh = qh_certificate(sigma, &analysis)?;
    let witnesses = qh
        .checks
        .iter()
        .filter(|c| !c.passed)
        .flat_map(|c| c.witnesses.iter().map(move |w| format!("{}: {w}", c.name)))
        .collect();
    Ok(GroupReport {
        group: sigma.group_name.clone(),
        vanishing_table: vanishing_json(sigma)?,
        decomposition_matrix: decomposition_json(sigma, &analysis)?,
        cartan_matrix: cartan_json(sigma, &analysis)?,
        ext1_matrix: ext1_json(sigma, &analysis),
        qh,
        witnesses,
    })
}

/// One verified statement.
#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct A5Report {
    pub facts: Vec<Fact>,
    /// Statements that are reported with their computed truth value but not
    /// asserted.
    pub notes: Vec<Fact>,
    pub conclusion: String,
    pub passed: bool,
}

impl A5Report {
    pub fn first_failure(&self) -> Option<&Fact> {
        self.facts.iter().find(|f| !f.passed)
    }
}

/// A group with its analysis, as used by the report.
pub struct Context {
    pub sigma: Arc<Sigma>,
    pub analysis: Analysis,
}

impl Context {
    pub fn new(sigma: Arc<Sigma>) -> Result<Self> {
        let analysis = analyze(&sigma)?;
        Ok(Context { sigma, analysis })
    }

    pub fn label(&self, h: &str, v: &str) -> Result<SimpleLabel> {
        self.sigma
            .label_by_names(h, v)
            .ok_or_else(|| Error::InvalidData(format!("no label ({h}, {v}) over {}", self.sigma.group_name)))
    }

    fn name(&self, l: SimpleLabel) -> String {
        let (h, v) = self.sigma.label_name(l);
        format!("({h}, {v})")
    }

    pub fn delta_dim(&self, l: SimpleLabel) -> Result<usize> {
        Ok(self.sigma.evaluation(l)?.delta.module.dim)
    }

    pub fn simple_dim(&self, l: SimpleLabel) -> Result<usize> {
        Ok(self.sigma.evaluation(l)?.simple.module.dim)
    }

    /// Composition factors of `Δ_l(G)` as catalog labels with multiplicity.
    pub fn delta_factors(&self, l: SimpleLabel) -> Result<Vec<(SimpleLabel, u64)>> {
        let chi = self.sigma.evaluation(l)?.delta.module.trace_character();
        let m = multiplicities(&chi, &self.analysis.characters)?;
        Ok(self
            .analysis
            .catalog
            .iter()
            .zip(m)
            .filter(|(_, x)| *x > 0)
            .map(|(c, x)| (c.label, x))
            .collect())
    }

    pub fn factors_text(&self, factors: &[(SimpleLabel, u64)]) -> String {
        if factors.is_empty() {
            return "no composition factors".into();
        }
        factors
            .iter()
            .map(|&(l, x)| if x == 1 { format!("S{}", self.name(l)) } else { format!("{x} S{}", self.name(l)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Whether `Δ_l(G)` is isomorphic to the simple module `S_m(G)`.
    pub fn delta_is(&self, l: SimpleLabel, m: SimpleLabel) -> Result<bool> {
        Ok(self.delta_factors(l)? == vec![(m, 1)])
    }

    /// `[P_λ : Δ_μ] = [Δ_μ : S_λ] · d_λ / d_μ` for every label `μ`.
    pub fn pim_delta_multiplicities(&self, lambda: SimpleLabel) -> Result<Vec<(SimpleLabel, Q)>> {
        let d = decomposition_matrix(&self.sigma, &self.analysis)?;
        let col = d
            .labels
            .iter()
            .position(|&l| l == lambda)
            .ok_or_else(|| Error::InvalidData("unknown label".into()))?;
        let d_lambda = q(self.sigma.simple(lambda).end_dim as i64);
        Ok(d.labels
            .iter()
            .enumerate()
            .map(|(i, &mu)| {
                let d_mu = q(self.sigma.simple(mu).end_dim as i64);
                (mu, q(d.entries[i][col] as i64) * &d_lambda / d_mu)
            })
            .collect())
    }
}

fn fact(name: &str, passed: bool, detail: String) -> Fact {
    Fact {
        name: name.into(),
        passed,
        detail,
    }
}

/// Evaluations of standard functors at `A4`.
pub fn a4_facts(cx: &Context) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    let c2 = cx.label("C2", "triv")?;
    let f = cx.delta_factors(c2)?;
    facts.push(fact(
        "A4: Δ(C2, triv) is simple",
        cx.delta_is(c2, c2)?,
        format!("Δ(C2, triv)(A4) = {}", cx.factors_text(&f)),
    ));
    for v in ["triv", "sgn"] {
        let c3 = cx.label("C3", v)?;
        let a4 = cx.label("A4", v)?;
        let f = cx.delta_factors(c3)?;
        let mut expected = vec![(c3, 1), (a4, 1)];
        expected.sort();
        let top = has_simple_top(&cx.sigma, c3)?;
        facts.push(fact(
            &format!("A4: Δ(C3, {v}) has factors S(A4, {v}) and S(C3, {v})"),
            cx.delta_dim(c3)? == 2 && f == expected,
            format!("dim {}, {}", cx.delta_dim(c3)?, cx.factors_text(&f)),
        ));
        facts.push(fact(
            &format!("A4: Δ(C3, {v}) is indecomposable"),
            top,
            format!("simple top: {top}"),
        ));
    }
    let v4_2 = cx.label("V4", "2dim")?;
    facts.push(fact(
        "A4: Δ(V4, 2dim) = 0",
        cx.delta_dim(v4_2)? == 0,
        format!("dim {}", cx.delta_dim(v4_2)?),
    ));
    Ok(facts)
}

/// Which simple `Δ(V4, v)(A4)` is, tested against both candidate labels.
pub fn a4_notes(cx: &Context) -> Result<Vec<Fact>> {
    let mut notes = Vec::new();
    for v in ["triv", "sgn"] {
        let v4 = cx.label("V4", v)?;
        let a4 = cx.label("A4", v)?;
        let f = cx.factors_text(&cx.delta_factors(v4)?);
        notes.push(fact(
            &format!("A4: Δ(V4, {v}) ≅ S(V4, {v})"),
            cx.delta_is(v4, v4)?,
            format!("Δ(V4, {v})(A4) = {f}"),
        ));
        notes.push(fact(
            &format!("A4: Δ(V4, {v}) ≅ S(A4, {v})"),
            cx.delta_is(v4, a4)?,
            format!("Δ(V4, {v})(A4) = {f}"),
        ));
    }
    Ok(notes)
}

/// The standard filtration multiplicities of `P(A4, sgn)` at `A4`.
pub fn a4_filtration(cx: &Context) -> Result<Fact> {
    let lambda = cx.label("A4", "sgn")?;
    let c3 = cx.label("C3", "sgn")?;
    let mults = cx.pim_delta_multiplicities(lambda)?;
    let support: Vec<String> = mults
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(l, x)| format!("Δ{}: {x}", cx.name(*l)))
        .collect();
    let ok = mults.iter().all(|(l, x)| {
        if *l == lambda || *l == c3 {
            x.is_one()
        } else {
            x.is_zero()
        }
    });
    Ok(fact("A4: [P(A4, sgn) : Δ] is Δ(A4, sgn) + Δ(C3, sgn)", ok, support.join(", ")))
}

/// The one-dimensional standard modules at `A5`.
pub fn a5_facts(cx: &Context) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    let a4 = cx.label("A4", "sgn")?;
    let c3 = cx.label("C3", "sgn")?;
    for l in [a4, c3] {
        let f = cx.delta_factors(l)?;
        facts.push(fact(
            &format!("A5: Δ{} is one-dimensional and ≅ S(A4, sgn)", cx.name(l)),
            cx.delta_dim(l)? == 1 && f == vec![(a4, 1)],
            format!("dim {}, {}", cx.delta_dim(l)?, cx.factors_text(&f)),
        ));
    }
    facts.push(fact(
        "A5: S(C3, sgn) = 0",
        cx.simple_dim(c3)? == 0,
        format!("dim {}", cx.simple_dim(c3)?),
    ));
    let sigma = &cx.sigma;
    let (g, h) = (sigma.top(), a4.h);
    let embed = sigma
        .subgroup_embedding(h)
        .ok_or_else(|| Error::Assertion("A4 is not a subgroup of A5".into()))?;
    let ind = sigma.cat.ind(g, h, &embed)?;
    let res = sigma.cat.res(h, g, &embed)?;
    let x = sigma.cat.compose(&ind, &res)?;
    let n = sigma.cat.basis(g, g)?.dim();
    let module = &sigma.evaluation(a4)?.delta.module;
    let act = module.act(&x.to_vector(n));
    facts.push(fact(
        "A5: Ind∘Res through A4 acts as 1 on Δ(A4, sgn)",
        act == QMatrix::identity(module.dim),
        format!("acts by {:?}", act.row(0).iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    ));
    Ok(facts)
}

/// The self-extending projective at `A5`, with whether a self-extension
/// was found and the certificate failed.
pub fn a5_witness(cx: &Context) -> Result<(Vec<Fact>, bool)> {
    let mut facts = Vec::new();
    let lambda = cx.label("A4", "sgn")?;
    let pim = cx
        .analysis
        .pim(lambda)
        .ok_or_else(|| Error::Assertion("S(A4, sgn)(A5) is zero".into()))?;
    let k = cx.analysis.catalog_index(lambda).expect("catalog");
    let only = |layer: &Vec<u64>| layer.iter().enumerate().all(|(i, &x)| x == u64::from(i == k));
    facts.push(fact(
        "A5: P(A4, sgn) is uniserial of length 2 with both factors S(A4, sgn)",
        pim.dim() == 2 && pim.loewy == vec![1, 1] && pim.layers.iter().all(only),
        format!("dim {}, Loewy layers {:?}", pim.dim(), pim.loewy),
    ));
    let e = ext1(&cx.analysis, lambda, lambda)?;
    facts.push(fact(
        "A5: Ext^1(S(A4, sgn), S(A4, sgn)) = 1",
        e == 1,
        format!("Ext^1 = {e}"),
    ));
    let qh = qh_certificate(&cx.sigma, &cx.analysis)?;
    let failed: Vec<&str> = qh.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    facts.push(fact(
        "A5: quasi-heredity certificate fails",
        !qh.verdict,
        format!("failed checks: {}", failed.join(", ")),
    ));
    Ok((facts, e > 0 && !qh.verdict))
}

/// Verifies the `A5` example from evaluations at `A4` and `A5`.
pub fn a5_report(cx4: &Context, cx5: &Context) -> Result<A5Report> {
    let mut facts = a4_facts(cx4)?;
    let notes = a4_notes(cx4)?;
    facts.push(a4_filtration(cx4)?);
    facts.extend(a5_facts(cx5)?);
    let (witness, self_ext) = a5_witness(cx5)?;
    facts.extend(witness);
    let passed = facts.iter().all(|f| f.passed);
    let conclusion = if self_ext {
        "not quasi-hereditary, self-extension found: infinite global dimension".to_string()
    } else {
        "no self-extension found".to_string()
    };
    Ok(A5Report {
        facts,
        notes,
        conclusion,
        passed,
    })
}

/// Radical comparison summary over all labels: `(all included, all equal
/// where S(G) ≠ 0, some strict inclusion)`.
pub fn radical_summary(sigma: &Sigma) -> Result<(bool, bool, bool)> {
    let (mut included, mut equal, mut strict) = (true, true, false);
    for l in sigma.labels() {
        let r = radical_compare(sigma, l)?;
        included &= r.included;
        if sigma.evaluation(l)?.simple.module.dim > 0 {
            equal &= r.equal;
        }
        strict |= r.included && !r.equal;
    }
    Ok((included, equal, strict))
}
