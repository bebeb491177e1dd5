//! Enumerated permutation groups: subgroups, conjugacy, sections, quotients,
//! isomorphisms and outer automorphism groups.

mod catalog;
mod elemset;
mod group;
mod iso;
mod lattice;
mod perm;

pub use catalog::{alternating, cyclic, dihedral, klein, parse_group, quaternion, symmetric};
pub use elemset::{mask_bits, ElemSet};
pub use group::{PermGroup, DEFAULT_BOUND};
pub use iso::{
    automorphisms, conjugacy_classes, iso_test, isomorphisms, recognize, signature, ElementMap,
    IsoRegistry, OutGroup, Signature,
};
pub use lattice::{Lattice, SectionClass, Subgroup, SubgroupClass};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group {group} exceeds the enumeration bound {bound}")]
    BoundExceeded { group: String, bound: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("{0}")]
    Parse(String),
}

/// Relation between two isomorphism classes under "is a subquotient of".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubquotientOrder {
    /// Proper subquotient.
    Strict,
    Equal,
    /// Not a subquotient (incomparable, or the reverse relation holds).
    NotBelow,
}

/// Isomorphism classes of all subquotients `P/K` of `g`, as registry classes.
pub fn subquotient_classes(g: &PermGroup, registry: &mut IsoRegistry) -> Vec<usize> {
    let mut out: Vec<usize> = g
        .lattice()
        .sections
        .iter()
        .map(|s| registry.classify(&s.quotient))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Decides `h ⊏ k`, `h ≅ k`, or neither, by searching sections of `k`.
pub fn subquotient_order(h: &PermGroup, k: &PermGroup) -> SubquotientOrder {
    if h.order() > k.order() || k.order() % h.order() != 0 {
        return SubquotientOrder::NotBelow;
    }
    if h.order() == k.order() {
        return if iso_test(h, k).is_some() {
            SubquotientOrder::Equal
        } else {
            SubquotientOrder::NotBelow
        };
    }
    let sig = signature(h);
    let found = k.lattice().sections.iter().any(|s| {
        s.quotient.order() == h.order()
            && signature(&s.quotient) == sig
            && iso_test(&s.quotient, h).is_some()
    });
    if found {
        SubquotientOrder::Strict
    } else {
        SubquotientOrder::NotBelow
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn names(g: &PermGroup) -> Vec<String> {
        let mut reg = IsoRegistry::new();
        let mut v: Vec<String> = subquotient_classes(g, &mut reg)
            .into_iter()
            .map(|c| reg.name(c).to_string())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn subgroup_class_counts() {
        let v4 = parse_group("C2xC2", 400).unwrap();
        assert_eq!(v4.lattice().classes.len(), 5);
        let a5 = parse_group("A5", 400).unwrap();
        assert_eq!(a5.lattice().classes.len(), 9);
        assert_eq!(a5.lattice().subgroup_count(), 59);
        let c1 = parse_group("1", 400).unwrap();
        assert_eq!(c1.lattice().classes.len(), 1);
    }

    #[test]
    fn a5_subgroup_class_types() {
        let a5 = parse_group("A5", 400).unwrap();
        let mut reg = IsoRegistry::new();
        let mut got: Vec<String> = a5
            .lattice()
            .classes
            .iter()
            .map(|c| {
                let (sub, _) = a5.subgroup_as_group(&a5.lattice().subgroups[c.rep].elements);
                let cls = reg.classify(&Arc::new(sub));
                reg.name(cls).to_string()
            })
            .collect();
        got.sort();
        let mut want = vec!["1", "C2", "C3", "V4", "C5", "S3", "D10", "A4", "A5"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn subquotients_of_a4_and_a5() {
        let a4 = parse_group("A4", 400).unwrap();
        assert_eq!(names(&a4), vec!["1", "A4", "C2", "C3", "V4"]);
        let a5 = parse_group("A5", 400).unwrap();
        let mut want = vec!["1", "C2", "C3", "V4", "C5", "S3", "D10", "A4", "A5"];
        want.sort();
        assert_eq!(names(&a5), want);
    }

    #[test]
    fn subquotient_relation() {
        let a4 = parse_group("A4", 400).unwrap();
        let c3 = parse_group("C3", 400).unwrap();
        let c2 = parse_group("C2", 400).unwrap();
        assert_eq!(subquotient_order(&c3, &a4), SubquotientOrder::Strict);
        assert_eq!(subquotient_order(&a4, &a4), SubquotientOrder::Equal);
        assert_eq!(subquotient_order(&a4, &c3), SubquotientOrder::NotBelow);
        assert_eq!(subquotient_order(&c2, &c3), SubquotientOrder::NotBelow);
    }

    #[test]
    fn out_groups() {
        let cases = [("V4", 6), ("A4", 2), ("C3", 2), ("C2", 1), ("C5", 4), ("A5", 2), ("S3", 1)];
        for (text, order) in cases {
            let h = Arc::new(parse_group(text, 400).unwrap());
            let out = automorphisms(&h);
            assert_eq!(out.order(), order, "{text}");
            assert_eq!(out.order() * out.inner_order, out.aut_order);
            assert_eq!(out.inner_order * h.centre().len(), h.order());
        }
        let v4 = Arc::new(parse_group("V4", 400).unwrap());
        let out = automorphisms(&v4);
        // Out(V4) is non-abelian of order 6, hence S3.
        let non_abelian = (0..6).any(|i| (0..6).any(|j| out.mul(i, j) != out.mul(j, i)));
        assert!(non_abelian);
    }

    #[test]
    fn sections_have_faithful_quotients() {
        for text in ["A4", "S3", "D8", "C2xC2"] {
            let g = parse_group(text, 400).unwrap();
            let lat = g.lattice();
            for s in &lat.sections {
                let p = lat.subgroups[s.top].order();
                let k = lat.subgroups[s.bottom].order();
                assert_eq!(s.quotient.order() * k, p);
                let kernel: Vec<usize> = (0..g.order())
                    .filter(|&x| s.projection[x] == Some(0))
                    .collect();
                assert_eq!(kernel, lat.subgroups[s.bottom].elements.to_vec());
            }
        }
    }
}
