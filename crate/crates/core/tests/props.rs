use bisetkit::cache::Cache;
use bisetkit::linalg::{q, q_frac, QMatrix, Subspace};
use bisetkit::report::Rational;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
    QMatrix::from_i64(rows, cols, &entries[..rows * cols])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_nullity(r in 1usize..6, c in 1usize..6, e in proptest::collection::vec(-3i64..4, 36)) {
        let m = matrix(r, c, &e);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), c);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(n in 1usize..6, e in proptest::collection::vec(-3i64..4, 36), x in proptest::collection::vec(-3i64..4, 6)) {
        let m = matrix(n, n, &e);
        let x: Vec<_> = x[..n].iter().map(|&v| q(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(inv.mul(&m), QMatrix::identity(n));
            prop_assert_eq!(m.determinant() * inv.determinant(), q(1));
        }
    }

    #[test]
    fn subspace_dimensions(a in proptest::collection::vec(-2i64..3, 20), b in proptest::collection::vec(-2i64..3, 20)) {
        let vecs = |e: &[i64]| (0..4).map(|i| e[i * 5..i * 5 + 5].iter().map(|&x| q(x)).collect::<Vec<_>>()).collect::<Vec<_>>();
        let (u, w) = (Subspace::from_vectors(5, vecs(&a)), Subspace::from_vectors(5, vecs(&b)));
        let s = u.sum(&w);
        let i = u.intersection(&w);
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s));
    }

    #[test]
    fn rationals_serialize_in_lowest_terms(n in -50i64..50, d in 1i64..50) {
        let v = serde_json::to_value(Rational(q_frac(n, d))).unwrap();
        let (num, den) = (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap());
        prop_assert!(den > 0);
        prop_assert_eq!(num * d, n * den);
        prop_assert_eq!(num_integer::Integer::gcd(&num, &den), 1);
    }

    #[test]
    fn cache_keys_separate_arguments(a in "[A-Z][0-9]{1,2}", b in "[A-Z][0-9]{1,2}") {
        let ka = Cache::key("table", &[a.clone()]);
        prop_assert_eq!(&ka, &Cache::key("table", &[a.clone()]));
        prop_assert_eq!(ka.len(), 64);
        if a != b {
            prop_assert_ne!(ka, Cache::key("table", &[b]));
        }
    }
}
