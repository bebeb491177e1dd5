//! Modules over finite-dimensional algebras, trace characters, and the
//! rational irreducible representations of outer automorphism groups.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::burnside::AlgebraTable;
use crate::error::{Error, Result};
use crate::groups::{OutGroup, Perm, PermGroup};
use crate::linalg::{q, restrict, induced_on_quotient, spin, unit_vec, zero_vec, QMatrix, Subspace, Q};

/// A module given by one action matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub dim: usize,
    pub action: Vec<QMatrix>,
}

/// Traces of the action of every algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCharacter(pub Vec<Q>);

impl TraceCharacter {
    pub fn sub(&self, other: &TraceCharacter) -> TraceCharacter {
        TraceCharacter(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl ModuleRep {
    pub fn zero(basis_len: usize) -> Self {
        ModuleRep {
            dim: 0,
            action: vec![QMatrix::zeros(0, 0); basis_len],
        }
    }

    /// The left regular module of an algebra.
    pub fn regular(table: &AlgebraTable) -> Self {
        ModuleRep {
            dim: table.dim(),
            action: (0..table.dim()).map(|i| table.left_regular(i)).collect(),
        }
    }

    pub fn trace_character(&self) -> TraceCharacter {
        TraceCharacter(self.action.iter().map(QMatrix::trace).collect())
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[Q]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (x, ai) in a.iter().zip(&self.action) {
            if !x.is_zero() {
                m.add_scaled(x, ai);
            }
        }
        m
    }

    /// Whether the matrices satisfy every structure-constant relation and the
    /// unit acts as the identity.
    pub fn satisfies(&self, table: &AlgebraTable) -> bool {
        let n = table.dim();
        if self.action.len() != n || self.act(&table.unit) != QMatrix::identity(self.dim) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = QMatrix::zeros(self.dim, self.dim);
                for &(k, c) in table.product(i, j) {
                    rhs.add_scaled(&q(c), &self.action[k]);
                }
                lhs == rhs
            })
        })
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.action
            .iter()
            .all(|a| sub.basis().iter().all(|v| sub.contains(&a.mul_vec(v))))
    }

    /// Smallest submodule containing `vectors`.
    pub fn spin(&self, vectors: impl IntoIterator<Item = Vec<Q>>) -> Subspace {
        spin(self.dim, vectors, &self.action)
    }

    pub fn submodule(&self, sub: &Subspace) -> ModuleRep {
        ModuleRep {
            dim: sub.dim(),
            action: self.action.iter().map(|a| restrict(a, sub)).collect(),
        }
    }

    pub fn quotient(&self, sub: &Subspace) -> ModuleRep {
        ModuleRep {
            dim: self.dim - sub.dim(),
            action: self.action.iter().map(|a| induced_on_quotient(a, sub)).collect(),
        }
    }

    /// `J · M` for a two-sided ideal `J` given as a subspace of the algebra.
    pub fn radical(&self, rad: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim);
        for r in rad.basis() {
            let m = self.act(r);
            for j in 0..self.dim {
                out.insert(m.column(j));
                if out.dim() == self.dim {
                    return out;
                }
            }
        }
        out
    }

    /// Dimensions of the radical layers `J^i M / J^{i+1} M`.
    pub fn loewy_series(&self, rad: &Subspace) -> Vec<Subspace> {
        let mut layers = vec![Subspace::full(self.dim)];
        loop {
            let cur = layers.last().unwrap();
            if cur.dim() == 0 {
                break;
            }
            let mut next = Subspace::zero(self.dim);
            for r in rad.basis() {
                let m = self.act(r);
                for v in cur.basis() {
                    next.insert(m.mul_vec(v));
                }
            }
            layers.push(next);
        }
        layers
    }
}

/// Space of `X` with `X · from[a] = to[a] · X` for every `a`, as matrices of
/// shape `to.dim × from.dim`.
pub fn hom_space(from: &[QMatrix], to: &[QMatrix], from_dim: usize, to_dim: usize) -> Vec<QMatrix> {
    let unknowns = from_dim * to_dim;
    if unknowns == 0 {
        return Vec::new();
    }
    let mut rows = Subspace::zero(unknowns);
    for (f, t) in from.iter().zip(to) {
        for r in 0..to_dim {
            for c in 0..from_dim {
                let mut eq = zero_vec(unknowns);
                for k in 0..from_dim {
                    let x = f.get(k, c);
                    if !x.is_zero() {
                        eq[r * from_dim + k] += x;
                    }
                }
                for k in 0..to_dim {
                    let x = t.get(r, k);
                    if !x.is_zero() {
                        eq[k * from_dim + c] -= x;
                    }
                }
                rows.insert(eq);
                if rows.dim() == unknowns {
                    return Vec::new();
                }
            }
        }
    }
    rows.annihilator()
        .into_iter()
        .map(|v| {
            let mut m = QMatrix::zeros(to_dim, from_dim);
            for (i, x) in v.into_iter().enumerate() {
                m.set(i / from_dim, i % from_dim, x);
            }
            m
        })
        .collect()
}

/// Gram matrix of the character vectors is nonsingular.
pub fn characters_independent(catalog: &[TraceCharacter]) -> bool {
    let n = catalog.len();
    let mut gram = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, crate::linalg::dot(&catalog[i].0, &catalog[j].0));
        }
    }
    gram.rank() == n
}

/// Solves `χ = Σ m_i χ_i` for nonnegative integers `m_i`.
pub fn multiplicities(chi: &TraceCharacter, catalog: &[TraceCharacter]) -> Result<Vec<u64>> {
    if catalog.is_empty() {
        return if chi.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::InconsistentSystem)
        };
    }
    if !characters_independent(catalog) {
        return Err(Error::Assertion("simple characters are linearly dependent".into()));
    }
    let cols: Vec<Vec<Q>> = catalog.iter().map(|c| c.0.clone()).collect();
    let m = QMatrix::from_columns(&cols, chi.0.len());
    let x = m.solve(&chi.0).map_err(|_| Error::InconsistentSystem)?;
    x.iter()
        .map(|v| {
            if v.is_integer() && !v.is_negative() {
                Ok(v.to_integer().to_u64().expect("small multiplicity"))
            } else {
                Err(Error::Assertion(format!("multiplicity {v} is not a nonnegative integer")))
            }
        })
        .collect()
}

/// Jacobson radical as the radical of the trace form `(a, b) ↦ tr(L_{ab})`.
pub fn radical_of_algebra(table: &AlgebraTable) -> Subspace {
    let n = table.dim();
    let traces: Vec<i64> = (0..n)
        .map(|k| {
            (0..n)
                .map(|m| {
                    table
                        .product(k, m)
                        .iter()
                        .filter(|&&(x, _)| x == m)
                        .map(|&(_, c)| c)
                        .sum::<i64>()
                })
                .sum()
        })
        .collect();
    let mut form = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v: i64 = table.product(i, j).iter().map(|&(k, c)| c * traces[k]).sum();
            form.set(i, j, q(v));
        }
    }
    Subspace::from_vectors(n, form.kernel())
}

/// A rational irreducible representation of an outer automorphism group.
#[derive(Clone, Debug)]
pub struct OutSimple {
    pub name: String,
    pub dim: usize,
    pub end_dim: usize,
    /// One matrix per element of the group, in the group's element order.
    pub matrices: Vec<QMatrix>,
    pub character: Vec<Q>,
}

impl OutSimple {
    /// Action of a group-algebra element `Σ x_φ φ`.
    pub fn act(&self, x: &[Q]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (c, g) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                m.add_scaled(c, g);
            }
        }
        m
    }

    /// `χ(g^-1) = χ(g)` for every `g`.
    pub fn is_self_dual(&self, out: &OutGroup) -> bool {
        (0..out.order()).all(|g| self.character[out.inverse[g]] == self.character[g])
    }

    /// Whether the invariant subspace spun from any basis vector is the whole space.
    pub fn spins_fully(&self) -> bool {
        (0..self.dim).all(|i| spin(self.dim, [unit_vec(self.dim, i)], &self.matrices).dim() == self.dim)
    }
}

struct GroupAlgebra<'a> {
    out: &'a OutGroup,
}

impl GroupAlgebra<'_> {
    fn n(&self) -> usize {
        self.out.order()
    }

    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut r = zero_vec(self.n());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    r[self.out.mul(i, j)] += x * y;
                }
            }
        }
        r
    }

    fn left_regular(&self, g: usize) -> QMatrix {
        let n = self.n();
        let mut m = QMatrix::zeros(n, n);
        for h in 0..n {
            m.set(self.out.mul(g, h), h, Q::one());
        }
        m
    }

    fn conj_classes(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n)
                .map(|h| self.out.mul(self.out.mul(h, g), self.out.inverse[h]))
                .collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                seen[x] = true;
            }
            out.push(cls);
        }
        out
    }

    /// Classes of elements generating conjugate cyclic subgroups.
    fn rational_classes(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let classes = self.conj_classes();
        let class_of: Vec<usize> = {
            let mut v = vec![0; n];
            for (i, c) in classes.iter().enumerate() {
                for &x in c {
                    v[x] = i;
                }
            }
            v
        };
        let mut seen = vec![false; classes.len()];
        let mut out = Vec::new();
        for (i, cls) in classes.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let g = cls[0];
            let ord = self.out.element_order(g);
            let mut members = Vec::new();
            let mut power = 0;
            for k in 1..=ord {
                power = if k == 1 { g } else { self.out.mul(power, g) };
                if k.gcd(&ord) == 1 && !seen[class_of[power]] {
                    seen[class_of[power]] = true;
                    members.extend(classes[class_of[power]].iter().copied());
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn sum_of(&self, set: &[usize]) -> Vec<Q> {
        let mut v = zero_vec(self.n());
        for &x in set {
            v[x] = Q::one();
        }
        v
    }

    /// Subgroups of the group, one per conjugacy class, as element lists.
    fn subgroup_reps(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let perms: Vec<Perm> = (0..n)
            .map(|g| Perm::from_images((0..n).map(|h| self.out.mul(g, h)).collect()).expect("Cayley row"))
            .collect();
        let grp = PermGroup::closure(&perms, n.max(1)).expect("regular representation");
        let to_out: Vec<usize> = grp
            .elements()
            .iter()
            .map(|p| perms.iter().position(|x| x == p).expect("element"))
            .collect();
        grp.lattice()
            .classes
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = grp.lattice().subgroups[c.rep].elements.iter().map(|x| to_out[x]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// Primitive idempotents of the span of rational class sums.
fn rational_central_idempotents(alg: &GroupAlgebra) -> Result<Vec<Vec<Q>>> {
    let rc = alg.rational_classes();
    let r = rc.len();
    let sums: Vec<Vec<Q>> = rc.iter().map(|c| alg.sum_of(c)).collect();
    let coords = |v: &[Q]| -> Vec<Q> { rc.iter().map(|c| v[c[0]].clone()).collect() };
    let mult: Vec<QMatrix> = sums
        .iter()
        .map(|s| {
            let cols: Vec<Vec<Q>> = sums.iter().map(|t| coords(&alg.mul(s, t))).collect();
            QMatrix::from_columns(&cols, r)
        })
        .collect();
    let mut spaces: Vec<Vec<Vec<Q>>> = vec![(0..r).map(|i| unit_vec(r, i)).collect()];
    for (j, m) in mult.iter().enumerate() {
        let bound = rc[j].len() as i64;
        let mut next = Vec::new();
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let basis = QMatrix::from_columns(&w, r);
            let mut found = 0;
            for lambda in -bound..=bound {
                let shifted = m.sub(&QMatrix::identity(r).scale(&q(lambda))).mul(&basis);
                let ker = shifted.kernel();
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(ker.iter().map(|y| basis.mul_vec(y)).collect());
            }
            if found != w.len() {
                return Err(Error::SplitFailure("rational class algebra is not split".into()));
            }
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|w| {
            if w.len() != 1 {
                return Err(Error::SplitFailure("joint eigenspace of dimension > 1".into()));
            }
            let mut f = zero_vec(alg.n());
            for (c, cls) in w[0].iter().zip(&sums) {
                crate::linalg::axpy(&mut f, c, cls);
            }
            let f2 = alg.mul(&f, &f);
            let k = f.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
            let c = &f2[k] / &f[k];
            Ok(f.iter().map(|x| x / &c).collect())
        })
        .collect()
}

fn column_space(m: &QMatrix, basis: &[Vec<Q>], ambient: usize) -> Subspace {
    let mut s = Subspace::zero(ambient);
    for j in 0..m.cols() {
        let mut v = zero_vec(ambient);
        for (i, b) in basis.iter().enumerate() {
            crate::linalg::axpy(&mut v, m.get(i, j), b);
        }
        s.insert(v);
    }
    s
}

/// The rational irreducible representations of `out`, found by splitting
/// the regular representation block by block.
pub fn qout_simples(out: &OutGroup) -> Result<Vec<OutSimple>> {
    let alg = GroupAlgebra { out };
    let n = alg.n();
    let regular: Vec<QMatrix> = (0..n).map(|g| alg.left_regular(g)).collect();
    let subgroups = alg.subgroup_reps();
    let class_sums: Vec<Vec<Q>> = alg.conj_classes().iter().map(|c| alg.sum_of(c)).collect();
    let mut simples = Vec::new();
    for e in rational_central_idempotents(&alg)? {
        let centre_dim = Subspace::from_vectors(n, class_sums.iter().map(|c| alg.mul(c, &e))).dim();
        let mut module: Option<Subspace> = None;
        for h in &subgroups {
            let mut eps = zero_vec(n);
            for &x in h {
                eps[x] = q(1) / q(h.len() as i64);
            }
            let x = alg.mul(&e, &eps);
            let m = Subspace::from_vectors(n, (0..n).map(|g| alg.mul(&unit_vec(n, g), &x)));
            if m.dim() > 0 && module.as_ref().is_none_or(|cur| m.dim() < cur.dim()) {
                module = Some(m);
            }
        }
        let mut module = module.ok_or_else(|| Error::SplitFailure("empty block".into()))?;
        loop {
            let action: Vec<QMatrix> = regular.iter().map(|g| restrict(g, &module)).collect();
            let d = module.dim();
            let ends = hom_space(&action, &action, d, d);
            if ends.len() == centre_dim {
                simples.push((action, ends.len()));
                break;
            }
            let mut candidates: Vec<QMatrix> = ends.clone();
            for i in 0..ends.len() {
                for j in i + 1..ends.len() {
                    candidates.push(ends[i].add(&ends[j]));
                    candidates.push(ends[i].sub(&ends[j]));
                }
            }
            let split = candidates.iter().find_map(|x| {
                let r = x.rank();
                (r > 0 && r < d).then(|| column_space(x, module.basis(), n))
            });
            match split {
                Some(sub) => module = sub,
                None if ends.len() % centre_dim == 0 => {
                    simples.push((action, ends.len()));
                    break;
                }
                None => return Err(Error::SplitFailure("no singular endomorphism found".into())),
            }
        }
    }
    let mut simples: Vec<OutSimple> = simples
        .into_iter()
        .map(|(matrices, end_dim)| {
            let character = matrices.iter().map(QMatrix::trace).collect();
            OutSimple {
                name: String::new(),
                dim: matrices[0].rows(),
                end_dim,
                matrices,
                character,
            }
        })
        .collect();
    let is_trivial = |s: &OutSimple| s.dim == 1 && s.character.iter().all(|c| c.is_one());
    simples.sort_by(|a, b| {
        is_trivial(b)
            .cmp(&is_trivial(a))
            .then(a.dim.cmp(&b.dim))
            .then_with(|| b.character.cmp(&a.character))
    });
    let mut used: Vec<String> = Vec::new();
    for s in &mut simples {
        let base = if is_trivial(s) {
            "triv".to_string()
        } else if s.dim == 1 && s.character.iter().filter(|c| c.is_one()).count() * 2 == n {
            "sgn".to_string()
        } else {
            format!("{}dim", s.dim)
        };
        let count = used.iter().filter(|u| **u == base).count();
        s.name = if count == 0 {
            base.clone()
        } else {
            format!("{base}#{}", count + 1)
        };
        used.push(base);
    }
    Ok(simples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphisms, parse_group};
    use std::sync::Arc;

    fn simples_of(text: &str) -> (OutGroup, Vec<OutSimple>) {
        let h = Arc::new(parse_group(text, 400).unwrap());
        let out = automorphisms(&h);
        let s = qout_simples(&out).unwrap();
        (out, s)
    }

    #[test]
    fn out_v4_is_s3() {
        let (out, s) = simples_of("V4");
        let dims: Vec<usize> = s.iter().map(|x| x.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        assert!(s.iter().all(|x| x.end_dim == 1));
        let names: Vec<&str> = s.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, vec!["triv", "sgn", "2dim"]);
        assert!(s.iter().all(|x| x.is_self_dual(&out) && x.spins_fully()));
    }

    #[test]
    fn out_c3_is_c2() {
        let (_, s) = simples_of("C3");
        let names: Vec<&str> = s.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, vec!["triv", "sgn"]);
    }

    #[test]
    fn out_c5_is_c4() {
        let (out, s) = simples_of("C5");
        let dims: Vec<(usize, usize)> = s.iter().map(|x| (x.dim, x.end_dim)).collect();
        assert_eq!(dims, vec![(1, 1), (1, 1), (2, 2)]);
        assert!(s.iter().all(|x| x.is_self_dual(&out) && x.spins_fully()));
    }

    #[test]
    fn representations_are_homomorphisms() {
        for text in ["V4", "C5", "A4", "Q8", "C2xC4"] {
            let (out, s) = simples_of(text);
            let total: usize = s.iter().map(|x| x.dim * x.dim / x.end_dim).sum();
            assert_eq!(total, out.order(), "{text}");
            for x in &s {
                for a in 0..out.order() {
                    for b in 0..out.order() {
                        assert_eq!(x.matrices[a].mul(&x.matrices[b]), x.matrices[out.mul(a, b)]);
                    }
                }
            }
        }
    }

    #[test]
    fn radical_of_semisimple_is_zero() {
        let t = AlgebraTable::group_algebra("C2", &[vec![0, 1], vec![1, 0]]);
        assert_eq!(radical_of_algebra(&t).dim(), 0);
    }

    #[test]
    fn regular_multiplicities() {
        let t = AlgebraTable::group_algebra("C2", &[vec![0, 1], vec![1, 0]]);
        let reg = ModuleRep::regular(&t);
        assert!(reg.satisfies(&t));
        let triv = ModuleRep {
            dim: 1,
            action: vec![QMatrix::identity(1), QMatrix::identity(1)],
        };
        let sgn = ModuleRep {
            dim: 1,
            action: vec![QMatrix::identity(1), QMatrix::identity(1).scale(&q(-1))],
        };
        let cat = [triv.trace_character(), sgn.trace_character()];
        assert_eq!(multiplicities(&reg.trace_character(), &cat).unwrap(), vec![1, 1]);
        assert_eq!(multiplicities(&sgn.trace_character(), &cat).unwrap(), vec![0, 1]);
        assert!(matches!(
            multiplicities(&reg.trace_character(), &cat[..1]),
            Err(Error::InconsistentSystem)
        ));
    }

    #[test]
    fn hom_space_of_regular_c2() {
        let t = AlgebraTable::group_algebra("C2", &[vec![0, 1], vec![1, 0]]);
        let reg = ModuleRep::regular(&t);
        assert_eq!(hom_space(&reg.action, &reg.action, 2, 2).len(), 2);
    }
}
