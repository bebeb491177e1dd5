use std::sync::Arc;

use bisetkit::functor::{has_simple_top, lambda_order, nv_check, radical_compare, vanishing_table, LambdaOrder};
use bisetkit::groups::parse_group;
use bisetkit::sigma::Sigma;

fn sigma(text: &str) -> Sigma {
    Sigma::new(text, Arc::new(parse_group(text, 400).unwrap())).unwrap()
}

fn dims(s: &Sigma) -> Vec<(String, String, usize, usize)> {
    vanishing_table(s)
        .unwrap()
        .into_iter()
        .map(|r| (r.h, r.v, r.dim_delta, r.dim_simple))
        .collect()
}

#[test]
fn vanishing_table_of_a4() {
    let want = [
        ("1", "triv", 5, 3),
        ("C2", "triv", 2, 2),
        ("C3", "triv", 2, 1),
        ("C3", "sgn", 2, 1),
        ("V4", "triv", 1, 1),
        ("V4", "sgn", 1, 1),
        ("V4", "2dim", 0, 0),
        ("A4", "triv", 1, 1),
        ("A4", "sgn", 1, 1),
    ];
    let got = dims(&sigma("A4"));
    let want: Vec<_> = want.iter().map(|&(h, v, d, s)| (h.to_string(), v.to_string(), d, s)).collect();
    assert_eq!(got, want);
}

#[test]
fn burnside_functor_bottom_never_vanishes() {
    for g in ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "A4", "A5"] {
        let s = sigma(g);
        let bottom = s.label_by_names("1", "triv").unwrap();
        assert!(s.evaluation(bottom).unwrap().simple.module.dim > 0, "{g}");
    }
}

#[test]
fn abelian_groups_are_nv() {
    for g in ["C1", "C2", "C3", "C4", "C5", "C6", "C2xC2", "C2xC4"] {
        let (ok, offenders) = nv_check(&sigma(g)).unwrap();
        assert!(ok, "{g}: {offenders:?}");
    }
    let (ok, offenders) = nv_check(&sigma("S3")).unwrap();
    assert!(!ok);
    assert_eq!(offenders, vec![sigma("S3").label_by_names("C3", "sgn").unwrap()]);
}

#[test]
fn standard_modules_have_simple_tops() {
    let s = sigma("A4");
    for l in s.labels() {
        let e = s.evaluation(l).unwrap();
        if e.simple.module.dim > 0 {
            assert!(has_simple_top(&s, l).unwrap(), "{:?}", s.label_name(l));
        }
    }
}

#[test]
fn radical_inclusions() {
    let s = sigma("S3");
    for l in s.labels() {
        let r = radical_compare(&s, l).unwrap();
        assert!(r.included);
        if s.evaluation(l).unwrap().simple.module.dim > 0 {
            assert!(r.equal);
        }
    }
    // The vanishing simple of S3 vanishes already on the standard module.
    let c3 = s.label_by_names("C3", "sgn").unwrap();
    assert_eq!(s.evaluation(c3).unwrap().delta.module.dim, 0);
}

#[test]
fn lambda_order_reverses_subquotients() {
    let s = sigma("S3");
    let one = s.label_by_names("1", "triv").unwrap();
    let c2 = s.label_by_names("C2", "triv").unwrap();
    let c3 = s.label_by_names("C3", "triv").unwrap();
    let top = s.label_by_names("S3", "triv").unwrap();
    assert_eq!(lambda_order(&s, top, one), LambdaOrder::Less);
    assert_eq!(lambda_order(&s, one, top), LambdaOrder::Greater);
    assert_eq!(lambda_order(&s, c2, c3), LambdaOrder::Incomparable);
    assert_eq!(lambda_order(&s, c2, c2), LambdaOrder::Equal);
}
