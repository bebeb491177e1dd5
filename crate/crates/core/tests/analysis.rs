use std::sync::Arc;

use bisetkit::analysis::{analyze, cartan_matrix, decomposition_matrix, ext1, ext1_by_loewy, integer_determinant, qh_certificate};
use bisetkit::groups::parse_group;
use bisetkit::linalg::q;
use bisetkit::rep::multiplicities;
use bisetkit::sigma::Sigma;

fn sigma(text: &str) -> Sigma {
    Sigma::new(text, Arc::new(parse_group(text, 400).unwrap())).unwrap()
}

#[test]
fn idempotents_cover_the_tops() {
    for g in ["C2xC2", "S3", "A4"] {
        let s = sigma(g);
        let a = analyze(&s).unwrap();
        let t = s.algebra().unwrap();
        let rad = s.radical().unwrap();
        for (i, p) in a.pims.iter().enumerate() {
            let e = &p.idempotent;
            assert_eq!(&t.multiply(e, e), e, "{g}");
            for (j, f) in a.pims.iter().enumerate() {
                if i != j {
                    assert!(t.multiply(e, &f.idempotent).iter().all(|x| *x == q(0)), "{g}");
                }
            }
            let top = p.module.quotient(&p.module.radical(&rad));
            let m = multiplicities(&top.trace_character(), &a.characters).unwrap();
            let want: Vec<u64> = (0..a.catalog.len()).map(|k| u64::from(k == i)).collect();
            assert_eq!(m, want, "{g}");
        }
    }
}

#[test]
fn regular_module_bookkeeping() {
    for g in ["C2", "C4", "C6", "C2xC2", "S3", "A4"] {
        let s = sigma(g);
        let a = analyze(&s).unwrap();
        let total: usize = a
            .catalog
            .iter()
            .zip(&a.pims)
            .map(|(c, p)| c.module.dim / c.end_dim * p.dim())
            .sum();
        assert_eq!(total, s.algebra().unwrap().dim(), "{g}");
    }
}

#[test]
fn ext1_agrees_with_radical_layers() {
    for g in ["C2xC2", "S3", "A4", "D8"] {
        let s = sigma(g);
        let a = analyze(&s).unwrap();
        for x in &a.catalog {
            for y in &a.catalog {
                assert_eq!(ext1(&a, x.label, y.label).unwrap(), ext1_by_loewy(&a, x.label, y.label).unwrap(), "{g}");
            }
        }
    }
}

#[test]
fn cartan_is_d_transpose_d_for_nv_groups() {
    for g in ["C2xC2", "C4", "C6"] {
        let s = sigma(g);
        let a = analyze(&s).unwrap();
        let d = decomposition_matrix(&s, &a).unwrap();
        let c = cartan_matrix(&a).unwrap();
        let n = d.labels.len();
        for i in 0..n {
            for j in 0..n {
                let dtd: u64 = (0..n).map(|k| d.entries[k][i] * d.entries[k][j]).sum();
                assert_eq!(c[i][j], dtd, "{g}");
            }
        }
        assert_eq!(integer_determinant(&c), q(1));
    }
}

#[test]
fn certificates() {
    for g in ["C1", "C2", "C3", "C5", "C2xC2"] {
        let s = sigma(g);
        assert!(qh_certificate(&s, &analyze(&s).unwrap()).unwrap().verdict, "{g}");
    }
    let s = sigma("S3");
    let qh = qh_certificate(&s, &analyze(&s).unwrap()).unwrap();
    assert!(!qh.verdict);
    assert!(!qh.checks[0].passed);
}

#[test]
fn a5_self_extension() {
    let s = sigma("A5");
    let a = analyze(&s).unwrap();
    let l = s.label_by_names("A4", "sgn").unwrap();
    let p = a.pim(l).unwrap();
    assert_eq!(p.dim(), 2);
    assert_eq!(p.loewy, vec![1, 1]);
    assert_eq!(ext1(&a, l, l).unwrap(), 1);
    assert_eq!(ext1_by_loewy(&a, l, l).unwrap(), 1);
}
