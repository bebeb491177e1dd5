//! Subgroups of `G × H` up to conjugacy, through Goursat's correspondence.
//!
//! A subgroup `L ≤ G × H` is stored by rows: `rows[g]` is the bit mask of the
//! `h` with `(g, h) ∈ L`. Both factors must have at most 128 elements; the
//! product group itself is never enumerated.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{isomorphisms, mask_bits, recognize, signature, ElemSet, PermGroup};

/// Largest factor order supported by the row representation.
pub const MAX_FACTOR_ORDER: usize = 128;

/// A subgroup of a direct product `G × H`, row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSubgroup {
    pub rows: Vec<u128>,
}

impl ProductSubgroup {
    /// Validates that `pairs` form a subgroup of `g × h`.
    pub fn from_pairs(
        g: &PermGroup,
        h: &PermGroup,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        check_factor(g)?;
        check_factor(h)?;
        let mut rows = vec![0u128; g.order()];
        for (a, b) in pairs {
            if a >= g.order() || b >= h.order() {
                return Err(Error::NotASubgroup(format!("pair ({a}, {b}) out of range")));
            }
            rows[a] |= 1 << b;
        }
        let l = ProductSubgroup { rows };
        if !l.is_closed(g, h) {
            return Err(Error::NotASubgroup("set is not closed under the product".into()));
        }
        Ok(l)
    }

    pub fn order(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, &r)| mask_bits(r).map(move |b| (a, b)))
    }

    /// First projection `p1(L)`.
    pub fn left_projection(&self) -> ElemSet {
        let n = self.rows.len();
        ElemSet::from_indices(n, (0..n).filter(|&a| self.rows[a] != 0))
    }

    /// `{g : (g, 1) ∈ L}`.
    pub fn left_kernel(&self) -> ElemSet {
        let n = self.rows.len();
        ElemSet::from_indices(n, (0..n).filter(|&a| self.rows[a] & 1 == 1))
    }

    pub fn right_projection_mask(&self) -> u128 {
        self.rows.iter().fold(0, |m, &r| m | r)
    }

    pub fn right_projection(&self, h_order: usize) -> ElemSet {
        ElemSet::from_mask(h_order, self.right_projection_mask())
    }

    pub fn right_kernel(&self, h_order: usize) -> ElemSet {
        ElemSet::from_mask(h_order, self.rows[0])
    }

    /// `(a, b) L (a, b)^-1`.
    pub fn conjugate(&self, g: &PermGroup, h: &PermGroup, a: usize, b: usize) -> Self {
        let mut rows = vec![0u128; self.rows.len()];
        for (x, &r) in self.rows.iter().enumerate() {
            if r == 0 {
                continue;
            }
            rows[g.conj(a, x)] = conj_mask(h, b, r);
        }
        ProductSubgroup { rows }
    }

    /// The swapped subgroup `{(h, g) : (g, h) ∈ L}` of `H × G`.
    pub fn opposite(&self, h_order: usize) -> Self {
        let mut rows = vec![0u128; h_order];
        for (a, b) in self.pairs() {
            rows[b] |= 1 << a;
        }
        ProductSubgroup { rows }
    }

    /// `L ∗ M = {(g, k) : ∃h, (g, h) ∈ L, (h, k) ∈ M}` for `M ≤ H × K`.
    pub fn star(&self, other: &ProductSubgroup) -> ProductSubgroup {
        let rows = self
            .rows
            .iter()
            .map(|&r| mask_bits(r).fold(0u128, |m, h| m | other.rows[h]))
            .collect();
        ProductSubgroup { rows }
    }

    fn is_closed(&self, g: &PermGroup, h: &PermGroup) -> bool {
        if !self.contains(0, 0) {
            return false;
        }
        let pairs: Vec<(usize, usize)> = self.pairs().collect();
        for &(a, b) in &pairs {
            if !self.contains(g.inv(a), h.inv(b)) {
                return false;
            }
        }
        // Closure under products with a generating subset suffices once the
        // generated subgroup is confirmed to stay inside the set.
        let mut gens: Vec<(usize, usize)> = Vec::new();
        let mut span = ProductSubgroup {
            rows: vec![0; self.rows.len()],
        };
        span.rows[0] = 1;
        for &(a, b) in &pairs {
            if span.contains(a, b) {
                continue;
            }
            gens.push((a, b));
            let mut list: Vec<(usize, usize)> = span.pairs().collect();
            let mut cursor = 0;
            while cursor < list.len() {
                let (x, y) = list[cursor];
                cursor += 1;
                for &(ga, gb) in &gens {
                    let (u, v) = (g.mul(x, ga), h.mul(y, gb));
                    if !self.contains(u, v) {
                        return false;
                    }
                    if !span.contains(u, v) {
                        span.rows[u] |= 1 << v;
                        list.push((u, v));
                    }
                }
            }
        }
        span == *self
    }
}

fn conj_mask(h: &PermGroup, b: usize, mask: u128) -> u128 {
    if b == 0 {
        return mask;
    }
    mask_bits(mask).fold(0u128, |m, x| m | 1 << h.conj(b, x))
}

fn check_factor(g: &PermGroup) -> Result<()> {
    if g.order() > MAX_FACTOR_ORDER {
        return Err(crate::groups::GroupError::BoundExceeded {
            group: format!("factor of order {}", g.order()),
            bound: MAX_FACTOR_ORDER,
        }
        .into());
    }
    Ok(())
}

/// A Goursat quintuple `(P1, K1, P2, K2, η)`.
///
/// `eta` lists, for each coset of `K1` in `P1` (by its smallest element), the
/// smallest element of the image coset of `K2` in `P2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoursatDatum {
    pub p1: ElemSet,
    pub k1: ElemSet,
    pub p2: ElemSet,
    pub k2: ElemSet,
    pub eta: Vec<(usize, usize)>,
}

/// Builds `L(d) = {(g, h) ∈ P1 × P2 : η(g K1) = h K2}`.
pub fn datum_to_subgroup(g: &PermGroup, h: &PermGroup, d: &GoursatDatum) -> Result<ProductSubgroup> {
    check_factor(g)?;
    check_factor(h)?;
    let coset = |grp: &PermGroup, x: usize, k: &ElemSet| -> u128 {
        k.iter().fold(0u128, |m, y| m | 1 << grp.mul(x, y))
    };
    let mut rows = vec![0u128; g.order()];
    for &(a, b) in &d.eta {
        let left = coset(g, a, &d.k1);
        let right = coset(h, b, &d.k2);
        for x in mask_bits(left) {
            rows[x] = right;
        }
    }
    let l = ProductSubgroup { rows };
    if l.left_projection() != d.p1
        || l.left_kernel() != d.k1
        || l.right_projection(h.order()) != d.p2
        || l.right_kernel(h.order()) != d.k2
        || !l.is_closed(g, h)
    {
        return Err(Error::NotASubgroup("datum does not define an isomorphism of sections".into()));
    }
    Ok(l)
}

pub fn subgroup_to_datum(g: &PermGroup, h: &PermGroup, l: &ProductSubgroup) -> Result<GoursatDatum> {
    if l.rows.len() != g.order() || !l.is_closed(g, h) {
        return Err(Error::NotASubgroup("rows do not form a subgroup".into()));
    }
    let p1 = l.left_projection();
    let k1 = l.left_kernel();
    let mut seen = ElemSet::empty(g.order());
    let mut eta = Vec::new();
    for a in p1.iter() {
        if seen.contains(a) {
            continue;
        }
        for k in k1.iter() {
            seen.insert(g.mul(a, k));
        }
        eta.push((a, l.rows[a].trailing_zeros() as usize));
    }
    Ok(GoursatDatum {
        p1,
        k1,
        p2: l.right_projection(h.order()),
        k2: l.right_kernel(h.order()),
        eta,
    })
}

/// Whether some `(a, b) ∈ G × H` conjugates `l` onto `m`.
pub fn are_conjugate(g: &PermGroup, h: &PermGroup, l: &ProductSubgroup, m: &ProductSubgroup) -> bool {
    if l.order() != m.order() {
        return false;
    }
    let (p1, k1) = (l.left_projection(), l.left_kernel());
    let (q1, r1) = (m.left_projection(), m.left_kernel());
    let (p2, k2) = (l.right_projection(h.order()), l.right_kernel(h.order()));
    let (q2, r2) = (m.right_projection(h.order()), m.right_kernel(h.order()));
    let lefts: Vec<usize> = (0..g.order())
        .filter(|&a| g.conjugate_set(a, &p1) == q1 && g.conjugate_set(a, &k1) == r1)
        .collect();
    let rights: Vec<usize> = (0..h.order())
        .filter(|&b| h.conjugate_set(b, &p2) == q2 && h.conjugate_set(b, &k2) == r2)
        .collect();
    lefts
        .iter()
        .any(|&a| rights.iter().any(|&b| l.conjugate(g, h, a, b) == *m))
}

/// One basis element of `B(G, H)`: a conjugacy class of subgroups of `G × H`.
#[derive(Clone, Debug)]
pub struct GoursatLabel {
    pub key: String,
    pub order: usize,
    /// Canonical representative: the minimal graph over the class-representative sections.
    pub rep: ProductSubgroup,
    pub left_section: usize,
    pub right_section: usize,
    pub eta_index: usize,
}

/// The canonical basis of `B(G, H)` and the machinery to name arbitrary
/// subgroups of `G × H` by it.
pub struct BisetBasis {
    pub target: Arc<PermGroup>,
    pub source: Arc<PermGroup>,
    pub labels: Vec<GoursatLabel>,
    lookup: HashMap<Vec<u128>, usize>,
    key_index: HashMap<String, usize>,
}

impl std::fmt::Debug for BisetBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BisetBasis")
            .field("target_order", &self.target.order())
            .field("source_order", &self.source.order())
            .field("dim", &self.labels.len())
            .finish()
    }
}

/// Stable display key of a section class, e.g. `A4/V4#12`.
pub fn section_key(g: &PermGroup, section: usize) -> String {
    let lat = g.lattice();
    let s = &lat.sections[section];
    let name = |idx: usize| {
        let (sub, _) = g.subgroup_as_group(&lat.subgroups[idx].elements);
        recognize(&sub).unwrap_or_else(|| format!("G{}", sub.order()))
    };
    format!("{}/{}#{}", name(s.top), name(s.bottom), section)
}

impl BisetBasis {
    /// Enumerates conjugacy classes of subgroups of `target × source`.
    pub fn new(target: Arc<PermGroup>, source: Arc<PermGroup>) -> Result<Self> {
        check_factor(&target)?;
        check_factor(&source)?;
        let (g, h) = (&*target, &*source);
        let lg = g.lattice();
        let lh = h.lattice();
        let sig_g: Vec<_> = lg.sections.iter().map(|s| signature(&s.quotient)).collect();
        let sig_h: Vec<_> = lh.sections.iter().map(|s| signature(&s.quotient)).collect();
        let keys_g: Vec<String> = (0..lg.sections.len()).map(|i| section_key(g, i)).collect();
        let keys_h: Vec<String> = (0..lh.sections.len()).map(|i| section_key(h, i)).collect();

        let mut labels = Vec::new();
        let mut graphs: Vec<(Vec<u128>, usize)> = Vec::new();
        for (i, s1) in lg.sections.iter().enumerate() {
            for (j, s2) in lh.sections.iter().enumerate() {
                if sig_g[i] != sig_h[j] {
                    continue;
                }
                let isos = isomorphisms(&s1.quotient, &s2.quotient, None);
                let fibre_masks: Vec<u128> = s2.fibres.iter().map(|f| f.to_mask()).collect();
                let all: Vec<ProductSubgroup> = isos
                    .iter()
                    .map(|eta| {
                        let mut rows = vec![0u128; g.order()];
                        for x in lg.subgroups[s1.top].elements.iter() {
                            let qx = s1.projection[x].expect("element of P1") as usize;
                            rows[x] = fibre_masks[eta[qx] as usize];
                        }
                        ProductSubgroup { rows }
                    })
                    .collect();
                let mut assigned: HashSet<ProductSubgroup> = HashSet::new();
                let mut orbits: Vec<Vec<ProductSubgroup>> = Vec::new();
                for l in all {
                    if assigned.contains(&l) {
                        continue;
                    }
                    let mut orbit = vec![l.clone()];
                    assigned.insert(l);
                    let mut cursor = 0;
                    while cursor < orbit.len() {
                        let cur = orbit[cursor].clone();
                        cursor += 1;
                        let moves = s1
                            .normalizer_gens
                            .iter()
                            .map(|&a| (a, 0))
                            .chain(s2.normalizer_gens.iter().map(|&b| (0, b)));
                        for (a, b) in moves {
                            let next = cur.conjugate(g, h, a, b);
                            if assigned.insert(next.clone()) {
                                orbit.push(next);
                            }
                        }
                    }
                    orbit.sort();
                    orbits.push(orbit);
                }
                orbits.sort_by(|a, b| a[0].cmp(&b[0]));
                for (k, orbit) in orbits.into_iter().enumerate() {
                    let idx = labels.len();
                    for l in &orbit {
                        graphs.push((l.rows.clone(), idx));
                    }
                    let rep = orbit.into_iter().next().unwrap();
                    labels.push(GoursatLabel {
                        key: format!("{}~{}:{}", keys_g[i], keys_h[j], k),
                        order: rep.order(),
                        rep,
                        left_section: i,
                        right_section: j,
                        eta_index: k,
                    });
                }
            }
        }
        // Canonical order: |L| descending, then key.
        let mut perm: Vec<usize> = (0..labels.len()).collect();
        perm.sort_by(|&a, &b| {
            labels[b]
                .order
                .cmp(&labels[a].order)
                .then_with(|| labels[a].key.cmp(&labels[b].key))
        });
        let mut new_index = vec![0; labels.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let mut slots: Vec<Option<GoursatLabel>> = labels.into_iter().map(Some).collect();
        let labels: Vec<GoursatLabel> = perm.iter().map(|&old| slots[old].take().unwrap()).collect();
        let lookup = graphs
            .into_iter()
            .map(|(rows, old)| (rows, new_index[old]))
            .collect();
        let key_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.key.clone(), i))
            .collect();
        Ok(BisetBasis {
            target,
            source,
            labels,
            lookup,
            key_index,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of_key(&self, key: &str) -> Option<usize> {
        self.key_index.get(key).copied()
    }

    /// Basis index of the conjugacy class of an arbitrary subgroup `l`.
    pub fn identify(&self, l: &ProductSubgroup) -> Result<usize> {
        let (g, h) = (&*self.target, &*self.source);
        let bad = || Error::NotASubgroup("no Goursat label matches".into());
        let (s1, c1) = g
            .lattice()
            .find_section(&l.left_projection(), &l.left_kernel())
            .ok_or_else(bad)?;
        let (s2, c2) = h
            .lattice()
            .find_section(&l.right_projection(h.order()), &l.right_kernel(h.order()))
            .ok_or_else(bad)?;
        let _ = (s1, s2);
        let moved = l.conjugate(g, h, c1, c2);
        self.lookup.get(&moved.rows).copied().ok_or_else(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn group(s: &str) -> Arc<PermGroup> {
        Arc::new(parse_group(s, 400).unwrap())
    }

    #[test]
    fn small_basis_sizes() {
        let c2 = group("C2");
        assert_eq!(BisetBasis::new(c2.clone(), c2).unwrap().dim(), 5);
        let c1 = group("1");
        assert_eq!(BisetBasis::new(c1.clone(), c1).unwrap().dim(), 1);
    }

    #[test]
    fn diagonal_of_c3() {
        let c3 = group("C3");
        let all = ElemSet::full(3);
        let triv = ElemSet::from_indices(3, [0]);
        let d = GoursatDatum {
            p1: all.clone(),
            k1: triv.clone(),
            p2: all,
            k2: triv,
            eta: (0..3).map(|x| (x, x)).collect(),
        };
        let l = datum_to_subgroup(&c3, &c3, &d).unwrap();
        assert_eq!(l.order(), 3);
        assert_eq!(subgroup_to_datum(&c3, &c3, &l).unwrap(), d);
    }

    #[test]
    fn full_product_datum() {
        let g = group("S3");
        let h = group("C2");
        let l = ProductSubgroup::from_pairs(&g, &h, (0..6).flat_map(|a| (0..2).map(move |b| (a, b)))).unwrap();
        let d = subgroup_to_datum(&g, &h, &l).unwrap();
        assert_eq!(d.p1.len(), 6);
        assert_eq!(d.k1.len(), 6);
        assert_eq!(d.p2.len(), 2);
        assert_eq!(d.k2.len(), 2);
        assert_eq!(d.eta.len(), 1);
    }

    #[test]
    fn a4_onto_c3_graph() {
        let a4 = group("A4");
        let c3 = group("C3");
        let lat = a4.lattice();
        let v4 = lat
            .subgroups
            .iter()
            .position(|s| s.order() == 4)
            .unwrap();
        let (sect, _) = lat
            .find_section(&ElemSet::full(12), &lat.subgroups[v4].elements)
            .unwrap();
        let s = &lat.sections[sect];
        let iso = isomorphisms(&s.quotient, &c3, Some(1)).pop().unwrap();
        let pairs: Vec<(usize, usize)> = (0..12)
            .map(|x| (x, iso[s.projection[x].unwrap() as usize] as usize))
            .collect();
        let l = ProductSubgroup::from_pairs(&a4, &c3, pairs).unwrap();
        assert_eq!(l.order(), 12);
        let d = subgroup_to_datum(&a4, &c3, &l).unwrap();
        assert_eq!(d.k1.len(), 4);
        assert_eq!(datum_to_subgroup(&a4, &c3, &d).unwrap(), l);
    }

    #[test]
    fn non_subgroups_rejected() {
        let c2 = group("C2");
        assert!(ProductSubgroup::from_pairs(&c2, &c2, [(0, 0), (1, 0), (0, 1)]).is_err());
        assert!(ProductSubgroup::from_pairs(&c2, &c2, [(1, 1)]).is_err());
    }

    #[test]
    fn diagonal_not_conjugate_to_factor() {
        let c2 = group("C2");
        let diag = ProductSubgroup::from_pairs(&c2, &c2, [(0, 0), (1, 1)]).unwrap();
        let left = ProductSubgroup::from_pairs(&c2, &c2, [(0, 0), (1, 0)]).unwrap();
        assert!(!are_conjugate(&c2, &c2, &diag, &left));
        assert!(are_conjugate(&c2, &c2, &diag, &diag));
    }

    #[test]
    fn conjugate_point_stabilizers() {
        let s3 = group("S3");
        let c1 = group("1");
        let lat = s3.lattice();
        let twos: Vec<&ElemSet> = lat
            .subgroups
            .iter()
            .filter(|s| s.order() == 2)
            .map(|s| &s.elements)
            .collect();
        let mk = |set: &ElemSet| ProductSubgroup::from_pairs(&s3, &c1, set.iter().map(|x| (x, 0))).unwrap();
        assert!(are_conjugate(&s3, &c1, &mk(twos[0]), &mk(twos[1])));
        let basis = BisetBasis::new(s3.clone(), c1.clone()).unwrap();
        assert_eq!(basis.identify(&mk(twos[0])).unwrap(), basis.identify(&mk(twos[2])).unwrap());
    }

    #[test]
    fn label_order_is_by_size_descending() {
        let s3 = group("S3");
        let b = BisetBasis::new(s3.clone(), s3).unwrap();
        for w in b.labels.windows(2) {
            assert!(w[0].order >= w[1].order);
        }
        for (i, l) in b.labels.iter().enumerate() {
            assert_eq!(b.identify(&l.rep).unwrap(), i);
            assert_eq!(b.index_of_key(&l.key), Some(i));
        }
    }
}
