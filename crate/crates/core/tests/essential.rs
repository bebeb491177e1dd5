use std::sync::Arc;

use bisetkit::essential::is_out_group_algebra;
use bisetkit::groups::parse_group;
use bisetkit::sigma::Sigma;

fn sigma(text: &str) -> Sigma {
    Sigma::new(text, Arc::new(parse_group(text, 400).unwrap())).unwrap()
}

#[test]
fn endomorphisms_are_out_group_algebras() {
    for g in ["C2xC2", "C6", "S3", "A4", "D8", "Q8"] {
        let s = sigma(g);
        for h in 0..s.len() {
            let hb = s.hombar(h, h).unwrap();
            let out = &s.classes[h].out;
            assert_eq!(hb.dim(), out.order(), "{g}: {}", s.classes[h].name);
            assert!(is_out_group_algebra(&s.cat, &hb, out).unwrap(), "{g}: {}", s.classes[h].name);
        }
    }
}

#[test]
fn essential_quotients_of_s3() {
    let s = sigma("S3");
    let (c3, top) = (s.class_by_name("C3").unwrap(), s.top());
    // Conjugation in S3 inverts C3, so Ind∘Iso(inv) = Ind spans the quotient.
    assert_eq!(s.hombar(c3, top).unwrap().dim(), 1);
    // The trivial group has no proper subquotients.
    assert_eq!(s.hombar(0, top).unwrap().dim(), s.cat.basis(top, 0).unwrap().dim());
    // Every biset from S3 to C3 factors through a proper subquotient of S3.
    assert_eq!(s.hombar(top, c3).unwrap().dim(), 0);
}

#[test]
fn out_action_on_hombar_is_a_right_action() {
    let s = sigma("A5");
    let a4 = s.class_by_name("A4").unwrap();
    let hb = s.hombar(a4, s.top()).unwrap();
    let out = &s.classes[a4].out;
    let acts = hb.out_action(&s.cat, out).unwrap();
    for x in 0..out.order() {
        for y in 0..out.order() {
            assert_eq!(acts[out.mul(x, y)], acts[y].mul(&acts[x]));
        }
    }
    // Free of rank one: the two classes are swapped by the outer automorphism.
    assert_eq!(hb.dim(), 2);
    assert_ne!(acts[1], acts[0]);
}
