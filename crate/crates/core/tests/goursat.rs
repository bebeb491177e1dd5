use std::sync::Arc;

use bisetkit::goursat::{are_conjugate, datum_to_subgroup, subgroup_to_datum, BisetBasis, ProductSubgroup};
use bisetkit::groups::{parse_group, PermGroup};
use proptest::prelude::*;

fn group(text: &str) -> Arc<PermGroup> {
    Arc::new(parse_group(text, 400).unwrap())
}

#[test]
fn basis_sizes() {
    let dim = |a: &str, b: &str| BisetBasis::new(group(a), group(b)).unwrap().dim();
    assert_eq!(dim("C2", "C2"), 5);
    assert_eq!(dim("C1", "C1"), 1);
    // B(G, 1) is the Burnside ring of G.
    assert_eq!(dim("S3", "C1"), 4);
    assert_eq!(dim("A5", "C1"), 9);
    assert_eq!(dim("C1", "A4"), 5);
    assert_eq!(dim("S3", "S3"), 22);
    assert_eq!(dim("A4", "A4"), 41);
}

#[test]
fn labels_are_ordered_and_unique() {
    let b = BisetBasis::new(group("S3"), group("C2xC2")).unwrap();
    for w in b.labels.windows(2) {
        assert!(w[0].order > w[1].order || (w[0].order == w[1].order && w[0].key < w[1].key));
    }
    for (i, l) in b.labels.iter().enumerate() {
        assert_eq!(b.index_of_key(&l.key), Some(i));
        assert_eq!(b.identify(&l.rep).unwrap(), i);
    }
}

#[test]
fn datum_round_trip() {
    let (g, h) = (group("S3"), group("C2xC2"));
    let b = BisetBasis::new(g.clone(), h.clone()).unwrap();
    for l in &b.labels {
        let d = subgroup_to_datum(&g, &h, &l.rep).unwrap();
        assert_eq!(datum_to_subgroup(&g, &h, &d).unwrap(), l.rep);
        assert_eq!(d.p1.len() / d.k1.len(), d.p2.len() / d.k2.len());
    }
}

#[test]
fn rejects_non_subgroups() {
    let (g, h) = (group("C3"), group("C2"));
    assert!(ProductSubgroup::from_pairs(&g, &h, [(0, 0), (1, 0)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugates_share_a_label(i in 0usize..22, a in 0usize..6, c in 0usize..6) {
        let g = group("S3");
        let b = BisetBasis::new(g.clone(), g.clone()).unwrap();
        let l = &b.labels[i].rep;
        let m = l.conjugate(&g, &g, a, c);
        prop_assert_eq!(b.identify(&m).unwrap(), i);
        prop_assert!(are_conjugate(&g, &g, l, &m));
    }
}
