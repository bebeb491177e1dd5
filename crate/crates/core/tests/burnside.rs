use std::sync::Arc;

use bisetkit::burnside::{AlgebraTable, BisetCategory, BisetElement};
use bisetkit::groups::{parse_group, PermGroup};
use bisetkit::linalg::q;
use bisetkit::sigma::Sigma;
use proptest::prelude::*;

fn group(text: &str) -> Arc<PermGroup> {
    Arc::new(parse_group(text, 400).unwrap())
}

fn s3_with_subgroups() -> (BisetCategory, Vec<usize>, Vec<usize>) {
    let s3 = group("S3");
    let lat = s3.lattice();
    let c2 = lat.subgroups.iter().find(|s| s.order() == 2).unwrap();
    let c3 = lat.subgroups.iter().find(|s| s.order() == 3).unwrap();
    let (h2, e2) = s3.subgroup_as_group(&c2.elements);
    let (h3, e3) = s3.subgroup_as_group(&c3.elements);
    let cat = BisetCategory::new(vec![("S3".into(), s3), ("C2".into(), Arc::new(h2)), ("C3".into(), Arc::new(h3))]);
    (cat, e2, e3)
}

#[test]
fn identity_is_neutral() {
    let (cat, _, _) = s3_with_subgroups();
    for (t, s) in [(0, 0), (0, 1), (1, 0), (2, 1)] {
        let n = cat.basis(t, s).unwrap().dim();
        for i in 0..n {
            let x = cat.basis_element(t, s, i);
            assert_eq!(cat.compose(&cat.identity(t).unwrap(), &x).unwrap(), x);
            assert_eq!(cat.compose(&x, &cat.identity(s).unwrap()).unwrap(), x);
        }
    }
}

fn integer(c: &bisetkit::linalg::Q) -> i64 {
    i64::try_from(c.to_integer()).unwrap()
}

/// Number of elements of a biset given in the transitive basis.
fn cardinality(cat: &BisetCategory, x: &BisetElement) -> i64 {
    let b = cat.basis(x.target, x.source).unwrap();
    let n = (b.target.order() * b.source.order()) as i64;
    x.coeffs.iter().map(|(&k, c)| n / b.labels[k].order as i64 * integer(c)).sum()
}

#[test]
fn restriction_after_induction_is_mackey() {
    let (cat, e2, _) = s3_with_subgroups();
    let ind = cat.ind(0, 1, &e2).unwrap();
    let res = cat.res(1, 0, &e2).unwrap();
    // C2\S3/C2 has two double cosets: the identity and a free one.
    let x = cat.compose(&res, &ind).unwrap();
    assert_eq!(x.coeffs.len(), 2);
    let id = *cat.identity(1).unwrap().coeffs.keys().next().unwrap();
    assert_eq!(x.coeff(id), q(1));
    assert_eq!(cardinality(&cat, &x), 6);
    assert_eq!(cardinality(&cat, &cat.compose(&ind, &res).unwrap()), 18);
}

#[test]
fn elementary_bisets_compose_transitively() {
    let (cat, e2, _) = s3_with_subgroups();
    let a = cat.compose(&cat.ind(0, 1, &e2).unwrap(), &cat.identity(1).unwrap()).unwrap();
    assert_eq!(a, cat.ind(0, 1, &e2).unwrap());
    let op = cat.opposite(&cat.ind(0, 1, &e2).unwrap()).unwrap();
    assert_eq!(op, cat.res(1, 0, &e2).unwrap());
}

#[test]
fn table_json_round_trip() {
    let s = Sigma::new("S3", group("S3")).unwrap();
    let t = s.algebra().unwrap();
    let back = AlgebraTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back.products, t.products);
    assert_eq!(back.labels, t.labels);
    assert!(AlgebraTable::from_json(&serde_json::json!({"schema_version": 99})).is_err());
}

#[test]
fn unit_of_the_table() {
    for g in ["C2", "S3", "A4"] {
        let s = Sigma::new(g, group(g)).unwrap();
        let t = s.algebra().unwrap();
        for i in 0..t.dim() {
            let e = bisetkit::linalg::unit_vec(t.dim(), i);
            assert_eq!(t.multiply(&t.unit, &e), e);
            assert_eq!(t.multiply(&e, &t.unit), e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative_on_random_elements(a in proptest::collection::vec(-2i64..3, 41),
                                      b in proptest::collection::vec(-2i64..3, 41),
                                      c in proptest::collection::vec(-2i64..3, 41)) {
        static TABLE: std::sync::OnceLock<Arc<AlgebraTable>> = std::sync::OnceLock::new();
        let t = TABLE.get_or_init(|| Sigma::new("A4", group("A4")).unwrap().algebra().unwrap());
        let v = |x: &[i64]| x.iter().map(|&n| q(n)).collect::<Vec<_>>();
        let (a, b, c) = (v(&a), v(&b), v(&c));
        prop_assert_eq!(t.multiply(&t.multiply(&a, &b), &c), t.multiply(&a, &t.multiply(&b, &c)));
    }

    #[test]
    fn opposite_reverses_products(i in 0usize..6, j in 0usize..6) {
        let (cat, _, _) = s3_with_subgroups();
        let (n1, n2) = (cat.basis(0, 1).unwrap().dim(), cat.basis(1, 2).unwrap().dim());
        let x = BisetElement::basis(0, 1, i % n1);
        let y = BisetElement::basis(1, 2, j % n2);
        let lhs = cat.opposite(&cat.compose(&x, &y).unwrap()).unwrap();
        let rhs = cat.compose(&cat.opposite(&y).unwrap(), &cat.opposite(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(cat.opposite(&cat.opposite(&x).unwrap()).unwrap(), x);
    }
}
