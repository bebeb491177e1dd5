//! The double Burnside modules `B(G, H)` over the rationals and the
//! composition of bisets.
//!
//! A (G, H)-biset carries a left `G`-action and a right `H`-action; the
//! transitive biset `(G × H)/L` acts by `g · (a, b)L · h = (g a, h^-1 b)L`.
//! `B(G, H)` plays the role of `Hom(H, G)`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goursat::{BisetBasis, ProductSubgroup};
use crate::groups::{mask_bits, ElemSet, ElementMap, PermGroup};
use crate::linalg::{q, zero_vec, QMatrix, Q};

/// The star products `L ∗ (t,1)M(t,1)^-1` over the double cosets
/// `p2(L) \ H / p1(M)`, one per double coset, with `t` the minimal element.
pub fn compose_subgroups(h: &PermGroup, l: &ProductSubgroup, m: &ProductSubgroup) -> Vec<ProductSubgroup> {
    let left = l.right_projection_mask();
    let right: Vec<usize> = m.left_projection().iter().collect();
    let left: Vec<usize> = mask_bits(left).collect();
    let mut covered = ElemSet::empty(h.order());
    let mut out = Vec::new();
    for t in 0..h.order() {
        if covered.contains(t) {
            continue;
        }
        for &a in &left {
            let at = h.mul(a, t);
            for &b in &right {
                covered.insert(h.mul(at, b));
            }
        }
        let ti = h.inv(t);
        // Rows of (t,1)M(t,1)^-1 are M[t^-1 x t].
        let rows = l
            .rows
            .iter()
            .map(|&r| {
                mask_bits(r).fold(0u128, |acc, x| acc | m.rows[h.mul(h.mul(ti, x), t)])
            })
            .collect();
        out.push(ProductSubgroup { rows });
    }
    out
}

/// `[G×H/L_i] ∘ [H×K/M_j]` expanded in the basis `out` of `B(G, K)`.
pub fn compose_basis(
    left: &BisetBasis,
    i: usize,
    right: &BisetBasis,
    j: usize,
    out: &BisetBasis,
) -> Result<Vec<(usize, i64)>> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for s in compose_subgroups(&left.source, &left.labels[i].rep, &right.labels[j].rep) {
        *acc.entry(out.identify(&s)?).or_insert(0) += 1;
    }
    Ok(acc.into_iter().collect())
}

/// A finite family of groups with cached bases of every `B(X, Y)` among them.
pub struct BisetCategory {
    objects: Vec<Arc<PermGroup>>,
    names: Vec<String>,
    bases: Vec<OnceLock<std::result::Result<Arc<BisetBasis>, String>>>,
}

impl std::fmt::Debug for BisetCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BisetCategory").field("objects", &self.names).finish()
    }
}

impl BisetCategory {
    pub fn new(objects: Vec<(String, Arc<PermGroup>)>) -> Self {
        let n = objects.len();
        let (names, objects) = objects.into_iter().unzip();
        BisetCategory {
            objects,
            names,
            bases: (0..n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &Arc<PermGroup> {
        &self.objects[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Basis of `B(target, source)`.
    pub fn basis(&self, target: usize, source: usize) -> Result<Arc<BisetBasis>> {
        let slot = &self.bases[target * self.objects.len() + source];
        slot.get_or_init(|| {
            BisetBasis::new(self.objects[target].clone(), self.objects[source].clone())
                .map(Arc::new)
                .map_err(|e| e.to_string())
        })
        .clone()
        .map_err(Error::InvalidData)
    }

    pub fn zero(&self, target: usize, source: usize) -> BisetElement {
        BisetElement {
            target,
            source,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(&self, target: usize, source: usize, i: usize) -> BisetElement {
        BisetElement::basis(target, source, i)
    }

    /// The class of `(G × H)/L` for an arbitrary subgroup `L`.
    pub fn transitive(&self, target: usize, source: usize, l: &ProductSubgroup) -> Result<BisetElement> {
        let b = self.basis(target, source)?;
        Ok(BisetElement::basis(target, source, b.identify(l)?))
    }

    pub fn identity(&self, g: usize) -> Result<BisetElement> {
        let n = self.objects[g].order();
        self.iso(g, g, &(0..n as u16).collect::<Vec<_>>())
    }

    /// `Iso(φ) ∈ B(target, source)` for an isomorphism `φ: source → target`.
    pub fn iso(&self, target: usize, source: usize, phi: &ElementMap) -> Result<BisetElement> {
        let (g, h) = (&self.objects[target], &self.objects[source]);
        if phi.len() != h.order() || g.order() != h.order() {
            return Err(Error::InvalidData("Iso needs a bijection between the groups".into()));
        }
        let l = ProductSubgroup::from_pairs(g, h, (0..h.order()).map(|x| (phi[x] as usize, x)))
            .map_err(|_| Error::InvalidData("map is not an isomorphism".into()))?;
        self.transitive(target, source, &l)
    }

    /// `Ind_H^G ∈ B(G, H)` along an injective homomorphism `embed: H → G`.
    pub fn ind(&self, target: usize, source: usize, embed: &[usize]) -> Result<BisetElement> {
        let (g, h) = (&self.objects[target], &self.objects[source]);
        if embed.len() != h.order() {
            return Err(Error::InvalidData("embedding has the wrong length".into()));
        }
        let mut seen = ElemSet::empty(g.order());
        for &x in embed {
            if x >= g.order() || !seen.insert(x) {
                return Err(Error::InvalidData("embedding is not injective".into()));
            }
        }
        let l = ProductSubgroup::from_pairs(g, h, (0..h.order()).map(|x| (embed[x], x)))
            .map_err(|_| Error::InvalidData("embedding is not a homomorphism".into()))?;
        self.transitive(target, source, &l)
    }

    /// `Res^G_H ∈ B(H, G)`.
    pub fn res(&self, target: usize, source: usize, embed: &[usize]) -> Result<BisetElement> {
        self.opposite(&self.ind(source, target, embed)?)
    }

    /// `Inf_{G/N}^G ∈ B(G, G/N)` along a surjection `proj: G → G/N`.
    pub fn inf(&self, target: usize, source: usize, proj: &[usize]) -> Result<BisetElement> {
        let (g, h) = (&self.objects[target], &self.objects[source]);
        if proj.len() != g.order() {
            return Err(Error::InvalidData("projection has the wrong length".into()));
        }
        let mut image = ElemSet::empty(h.order());
        for &y in proj {
            if y >= h.order() {
                return Err(Error::InvalidData("projection leaves the quotient".into()));
            }
            image.insert(y);
        }
        if image.len() != h.order() {
            return Err(Error::InvalidData("projection is not surjective".into()));
        }
        let l = ProductSubgroup::from_pairs(g, h, (0..g.order()).map(|x| (x, proj[x])))
            .map_err(|_| Error::InvalidData("projection is not a homomorphism".into()))?;
        self.transitive(target, source, &l)
    }

    /// `Def^G_{G/N} ∈ B(G/N, G)`.
    pub fn def(&self, target: usize, source: usize, proj: &[usize]) -> Result<BisetElement> {
        self.opposite(&self.inf(source, target, proj)?)
    }

    pub fn compose(&self, a: &BisetElement, b: &BisetElement) -> Result<BisetElement> {
        if a.source != b.target {
            return Err(Error::SourceTargetMismatch(format!(
                "{} ∘ {}: source {} differs from target {}",
                self.names[a.target], self.names[b.source], self.names[a.source], self.names[b.target]
            )));
        }
        let left = self.basis(a.target, a.source)?;
        let right = self.basis(b.target, b.source)?;
        let out = self.basis(a.target, b.source)?;
        let mut result = self.zero(a.target, b.source);
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                let xy = x * y;
                for (k, c) in compose_basis(&left, i, &right, j, &out)? {
                    result.add_term(k, &(&xy * q(c)));
                }
            }
        }
        Ok(result)
    }

    pub fn opposite(&self, a: &BisetElement) -> Result<BisetElement> {
        let b = self.basis(a.target, a.source)?;
        let op = self.basis(a.source, a.target)?;
        let mut result = self.zero(a.source, a.target);
        for (&i, c) in &a.coeffs {
            let l = b.labels[i].rep.opposite(b.source.order());
            result.add_term(op.identify(&l)?, c);
        }
        Ok(result)
    }

    /// Structure constants of `kB(G, G)` for the object `g`.
    pub fn algebra_table(&self, g: usize) -> Result<AlgebraTable> {
        let basis = self.basis(g, g)?;
        AlgebraTable::from_basis(self.names[g].clone(), &basis)
    }
}

/// A rational combination of transitive bisets in `B(target, source)`, where
/// both are object indices in a `BisetCategory`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisetElement {
    pub target: usize,
    pub source: usize,
    pub coeffs: BTreeMap<usize, Q>,
}

impl BisetElement {
    pub fn basis(target: usize, source: usize, i: usize) -> Self {
        BisetElement {
            target,
            source,
            coeffs: BTreeMap::from([(i, Q::one())]),
        }
    }

    pub fn from_vector(target: usize, source: usize, v: &[Q]) -> Self {
        BisetElement {
            target,
            source,
            coeffs: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_vector(&self, dim: usize) -> Vec<Q> {
        let mut v = zero_vec(dim);
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, i: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add(&self, other: &BisetElement) -> BisetElement {
        let mut r = self.clone();
        for (&i, c) in &other.coeffs {
            r.add_term(i, c);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> BisetElement {
        if c.is_zero() {
            return BisetElement {
                coeffs: BTreeMap::new(),
                ..self.clone()
            };
        }
        BisetElement {
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect(),
            ..self.clone()
        }
    }
}

/// Structure constants of `kB(G, G)`: `products[i * n + j]` expands
/// `e_i ∘ e_j` with nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    pub group: String,
    pub labels: Vec<String>,
    pub products: Vec<Vec<(usize, i64)>>,
    pub unit: Vec<Q>,
}

pub const TABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TableJson {
    schema_version: u32,
    group: String,
    basis: Vec<String>,
    products: Vec<(usize, usize, Vec<(String, i64, i64)>)>,
}

impl AlgebraTable {
    pub fn from_basis(group: String, basis: &BisetBasis) -> Result<Self> {
        let n = basis.dim();
        let products = (0..n * n)
            .into_par_iter()
            .map(|ij| compose_basis(basis, ij / n, basis, ij % n, basis))
            .collect::<Result<Vec<_>>>()?;
        let g = &basis.target;
        let diagonal = ProductSubgroup::from_pairs(g, g, (0..g.order()).map(|x| (x, x)))?;
        let mut unit = zero_vec(n);
        unit[basis.identify(&diagonal)?] = Q::one();
        Ok(AlgebraTable {
            group,
            labels: basis.labels.iter().map(|l| l.key.clone()).collect(),
            products,
            unit,
        })
    }

    /// An algebra given by a group multiplication table, as a test fixture
    /// and for the Out-group algebras.
    pub fn group_algebra(name: &str, table: &[Vec<usize>]) -> Self {
        let n = table.len();
        let products = (0..n * n).map(|ij| vec![(table[ij / n][ij % n], 1)]).collect();
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).unwrap_or(0);
        let mut unit = zero_vec(n);
        unit[identity] = Q::one();
        AlgebraTable {
            group: name.to_string(),
            labels: (0..n).map(|i| format!("g{i}")).collect(),
            products,
            unit,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i * self.dim() + j]
    }

    pub fn multiply(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for &(k, c) in self.product(i, j) {
                    out[k] += &xy * q(c);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by the basis element `i`.
    pub fn left_regular(&self, i: usize) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for &(k, c) in self.product(i, j) {
                m.add_to(k, j, &q(c));
            }
        }
        m
    }

    /// Matrix of right multiplication by the basis element `j`.
    pub fn right_regular(&self, j: usize) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for &(k, c) in self.product(i, j) {
                m.add_to(k, i, &q(c));
            }
        }
        m
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_multiplication(&self, a: &[Q]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                m.add_scaled(x, &self.left_regular(i));
            }
        }
        m
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n * n * n).into_par_iter().all(|ijk| {
            let (i, j, k) = (ijk / (n * n), ijk / n % n, ijk % n);
            let mut left: BTreeMap<usize, i64> = BTreeMap::new();
            for &(a, c) in self.product(i, j) {
                for &(b, d) in self.product(a, k) {
                    *left.entry(b).or_insert(0) += c * d;
                }
            }
            let mut right: BTreeMap<usize, i64> = BTreeMap::new();
            for &(a, c) in self.product(j, k) {
                for &(b, d) in self.product(i, a) {
                    *right.entry(b).or_insert(0) += c * d;
                }
            }
            left.retain(|_, v| *v != 0);
            right.retain(|_, v| *v != 0);
            left == right
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim();
        let products = (0..n * n)
            .filter(|&ij| !self.products[ij].is_empty())
            .map(|ij| {
                let terms = self.products[ij]
                    .iter()
                    .map(|&(k, c)| (self.labels[k].clone(), c, 1))
                    .collect();
                (ij / n, ij % n, terms)
            })
            .collect();
        serde_json::to_value(TableJson {
            schema_version: TABLE_SCHEMA_VERSION,
            group: self.group.clone(),
            basis: self.labels.clone(),
            products,
        })
        .expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let t: TableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidData(format!("algebra table: {e}")))?;
        if t.schema_version != TABLE_SCHEMA_VERSION {
            return Err(Error::InvalidData("algebra table: stale schema version".into()));
        }
        let n = t.basis.len();
        let index: std::collections::HashMap<&str, usize> =
            t.basis.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut products = vec![Vec::new(); n * n];
        for (i, j, terms) in &t.products {
            if *i >= n || *j >= n {
                return Err(Error::InvalidData("algebra table: index out of range".into()));
            }
            let mut row = Vec::new();
            for (label, num, den) in terms {
                let k = *index
                    .get(label.as_str())
                    .ok_or_else(|| Error::InvalidData(format!("algebra table: unknown label {label}")))?;
                if *den != 1 {
                    return Err(Error::InvalidData("algebra table: non-integral constant".into()));
                }
                row.push((k, *num));
            }
            products[i * n + j] = row;
        }
        let mut table = AlgebraTable {
            group: t.group,
            labels: t.basis,
            products,
            unit: zero_vec(n),
        };
        table.unit = table
            .find_unit()
            .ok_or_else(|| Error::InvalidData("algebra table: no identity element".into()))?;
        Ok(table)
    }

    /// The identity as a basis element, when one basis element is neutral.
    fn find_unit(&self) -> Option<Vec<Q>> {
        let n = self.dim();
        (0..n)
            .find(|&e| (0..n).all(|x| self.product(e, x) == [(x, 1)] && self.product(x, e) == [(x, 1)]))
            .map(|e| {
                let mut u = zero_vec(n);
                u[e] = Q::one();
                u
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn cat(names: &[&str]) -> BisetCategory {
        BisetCategory::new(
            names
                .iter()
                .map(|s| (s.to_string(), Arc::new(parse_group(s, 400).unwrap())))
                .collect(),
        )
    }

    #[test]
    fn res_ind_is_two() {
        let c = cat(&["C2", "1"]);
        let ind = c.ind(0, 1, &[0]).unwrap();
        let res = c.res(1, 0, &[0]).unwrap();
        let prod = c.compose(&res, &ind).unwrap();
        assert_eq!(prod, c.identity(1).unwrap().scale(&q(2)));
    }

    #[test]
    fn identity_is_neutral() {
        let c = cat(&["C2", "C3", "S3"]);
        for g in 0..3 {
            for h in 0..3 {
                let id = c.identity(g).unwrap();
                let b = c.basis(g, h).unwrap();
                for i in 0..b.dim() {
                    let x = c.basis_element(g, h, i);
                    assert_eq!(c.compose(&id, &x).unwrap(), x);
                    assert_eq!(c.compose(&x, &c.identity(h).unwrap()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn opposite_of_identity_and_ind() {
        let s3 = Arc::new(parse_group("S3", 400).unwrap());
        let c3 = s3.lattice().subgroups.iter().find(|s| s.order() == 3).unwrap();
        let (sub, embed) = s3.subgroup_as_group(&c3.elements);
        let c = BisetCategory::new(vec![("S3".into(), s3.clone()), ("C3".into(), Arc::new(sub))]);
        let id = c.identity(0).unwrap();
        assert_eq!(c.opposite(&id).unwrap(), id);
        let ind = c.ind(0, 1, &embed).unwrap();
        assert_eq!(c.basis(0, 1).unwrap().labels[*ind.coeffs.keys().next().unwrap()].order, 3);
        assert_eq!(c.opposite(&ind).unwrap(), c.res(1, 0, &embed).unwrap());
    }

    #[test]
    fn trivial_table() {
        let c = cat(&["1"]);
        let t = c.algebra_table(0).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.product(0, 0), &[(0, 1)]);
    }

    #[test]
    fn c2_table_is_associative() {
        let c = cat(&["C2"]);
        let t = c.algebra_table(0).unwrap();
        assert_eq!(t.dim(), 5);
        assert!(t.is_associative());
        assert!(t.products.iter().flatten().all(|&(_, c)| c > 0));
    }

    #[test]
    fn json_round_trip() {
        let c = cat(&["S3"]);
        let t = c.algebra_table(0).unwrap();
        let back = AlgebraTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn mismatch_is_rejected() {
        let c = cat(&["C2", "C3"]);
        let a = c.identity(0).unwrap();
        let b = c.identity(1).unwrap();
        assert!(matches!(c.compose(&a, &b), Err(Error::SourceTargetMismatch(_))));
    }

    #[test]
    fn iso_composition_follows_maps() {
        let c = cat(&["C3"]);
        let g = c.object(0);
        let inv: ElementMap = (0..3).map(|x| g.inv(x) as u16).collect();
        let a = c.iso(0, 0, &inv).unwrap();
        assert_ne!(a, c.identity(0).unwrap());
        assert_eq!(c.compose(&a, &a).unwrap(), c.identity(0).unwrap());
    }
}
