use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::elemset::ElemSet;
use super::lattice::Lattice;
use super::perm::Perm;
use super::GroupError;

/// Largest order enumerated unless the caller asks for more.
pub const DEFAULT_BOUND: usize = 400;

/// A finite permutation group with every element enumerated.
///
/// Elements are sorted by image sequence, so index 0 is the identity. The full
/// multiplication table is stored; subgroup data is computed on first use.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    generator_indices: Vec<usize>,
    lattice: OnceLock<Lattice>,
}

impl PermGroup {
    /// Enumerates the group generated by `generators`.
    pub fn closure(generators: &[Perm], bound: usize) -> Result<PermGroup, GroupError> {
        // Element indices are stored as u16.
        let bound = bound.min(u16::MAX as usize);
        let degree = generators.iter().map(Perm::degree).max().unwrap_or(1).max(1);
        let generators: Vec<Perm> = generators.iter().map(|g| g.padded(degree)).collect();
        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        let mut list = vec![identity.clone()];
        seen.insert(identity, 0);
        let mut cursor = 0;
        while cursor < list.len() {
            let x = list[cursor].clone();
            cursor += 1;
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if list.len() >= bound {
                        return Err(GroupError::BoundExceeded {
                            group: generators
                                .iter()
                                .map(|g| g.to_string())
                                .collect::<Vec<_>>()
                                .join(";"),
                            bound,
                        });
                    }
                    seen.insert(y.clone(), list.len());
                    list.push(y);
                }
            }
        }
        list.sort();
        Ok(Self::from_sorted(degree, generators, list))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> PermGroup {
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut table = vec![0u16; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&a.compose(b)] as u16;
            }
        }
        let inverse = elements
            .iter()
            .map(|p| index[&p.inverse()] as u16)
            .collect();
        let mut orders = vec![1u32; n];
        for (i, order) in orders.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = table[x * n + i] as usize;
                *order += 1;
            }
            if i == 0 {
                *order = 1;
            }
        }
        let generator_indices = generators
            .iter()
            .map(|g| index[g])
            .filter(|&i| i != 0)
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            table,
            inverse,
            orders,
            generator_indices,
            lattice: OnceLock::new(),
        }
    }

    pub fn trivial() -> PermGroup {
        Self::from_sorted(1, Vec::new(), vec![Perm::identity(1)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Indices of the non-identity generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        if p.degree() == self.degree {
            self.index.get(p).copied()
        } else {
            self.index.get(&p.padded(self.degree)).copied()
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_indices;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens` inside this group.
    pub fn generate(&self, gens: &[usize]) -> ElemSet {
        self.extend_subgroup(&ElemSet::from_indices(self.order(), [0]), gens)
    }

    /// Smallest subgroup containing the subgroup `base` and the elements `extra`.
    pub fn extend_subgroup(&self, base: &ElemSet, extra: &[usize]) -> ElemSet {
        let mut set = base.clone();
        let mut list: Vec<usize> = set.iter().collect();
        let mut gens: Vec<usize> = extra.to_vec();
        // Generators of `base` are implicit in its element list; multiplying the
        // orbit by `extra` and by the old elements keeps it closed.
        gens.extend(base.iter().filter(|&x| x != 0));
        gens.sort_unstable();
        gens.dedup();
        let mut cursor = 0;
        while cursor < list.len() {
            let x = list[cursor];
            cursor += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
        }
        set
    }

    pub fn conjugate_set(&self, g: usize, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.order(), set.iter().map(|x| self.conj(g, x)))
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, sub: &ElemSet, within: &ElemSet, within_gens: &[usize]) -> bool {
        sub.is_subset(within)
            && within_gens
                .iter()
                .all(|&g| sub.iter().all(|x| sub.contains(self.conj(g, x))))
    }

    /// A small generating set of a subgroup, chosen greedily (largest element
    /// order first, ties by index).
    pub fn generating_set(&self, sub: &ElemSet) -> Vec<usize> {
        let mut candidates: Vec<usize> = sub.iter().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
        let mut current = ElemSet::from_indices(self.order(), [0]);
        let mut gens = Vec::new();
        for x in candidates {
            if current.len() == sub.len() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.extend_subgroup(&current, &[x]);
            }
        }
        gens
    }

    pub fn centre(&self) -> ElemSet {
        let gens = &self.generator_indices;
        ElemSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&z| gens.iter().all(|&g| self.mul(g, z) == self.mul(z, g))),
        )
    }

    pub fn derived_subgroup(&self) -> ElemSet {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generate(&comms)
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| Lattice::compute(self))
    }

    /// The subgroup `sub` as a permutation group of its own, with the index map
    /// from its elements back into this group.
    pub fn subgroup_as_group(&self, sub: &ElemSet) -> (PermGroup, Vec<usize>) {
        let gens: Vec<Perm> = self
            .generating_set(sub)
            .into_iter()
            .map(|g| self.elements[g].clone())
            .collect();
        let mut group = PermGroup::closure(&gens, sub.len().max(1)).expect("subgroup order");
        if gens.is_empty() {
            group = PermGroup::from_sorted(
                self.degree,
                Vec::new(),
                vec![Perm::identity(self.degree)],
            );
        }
        let embed = group
            .elements
            .iter()
            .map(|p| self.index_of(p).expect("subgroup element"))
            .collect();
        (group, embed)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup, bound: usize) -> Result<PermGroup, GroupError> {
        let shift = self.degree;
        let degree = self.degree + other.degree;
        let mut gens: Vec<Perm> = self.generators.iter().map(|g| g.padded(degree)).collect();
        for g in &other.generators {
            let mut images: Vec<usize> = (0..shift).collect();
            images.extend(g.images().map(|i| i + shift));
            gens.push(Perm::from_images(images)?);
        }
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        PermGroup::closure(&gens, bound)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field(
                "generators",
                &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(deg: usize, s: &str) -> Perm {
        let (c, _) = Perm::parse_cycles(s).unwrap();
        Perm::from_cycles(deg, &c).unwrap()
    }

    #[test]
    fn a4_from_standard_generators() {
        let g = PermGroup::closure(&[perm(4, "(1 2)(3 4)"), perm(4, "(1 2 3)")], 100_000).unwrap();
        assert_eq!(g.order(), 12);
        assert!(g.element(0).is_identity());
        assert!(!g.is_abelian());
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = PermGroup::closure(&[], 100_000).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn a5_by_enumeration() {
        let g = PermGroup::closure(&[perm(5, "(1 2 3 4 5)"), perm(5, "(1 2 3)")], 100_000).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.centre().len(), 1);
        assert_eq!(g.derived_subgroup().len(), 60);
    }

    #[test]
    fn bound_is_enforced() {
        let err = PermGroup::closure(&[perm(5, "(1 2 3 4 5)"), perm(5, "(1 2)")], 100);
        assert!(matches!(err, Err(GroupError::BoundExceeded { .. })));
    }

    #[test]
    fn elements_sorted_and_table_consistent() {
        let g = PermGroup::closure(&[perm(4, "(1 2 3 4)"), perm(4, "(1 3)")], 1000).unwrap();
        assert_eq!(g.order(), 8);
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
        for a in 0..8 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..8 {
                assert_eq!(g.element(g.mul(a, b)), &g.element(a).compose(g.element(b)));
            }
        }
    }
}
