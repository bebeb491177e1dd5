use std::sync::Arc;

use bisetkit::groups::{automorphisms, iso_test, parse_group, recognize, GroupError, PermGroup};

fn group(text: &str) -> Arc<PermGroup> {
    Arc::new(parse_group(text, 400).unwrap())
}

#[test]
fn subgroup_counts() {
    for (g, classes, total) in [("S3", 4, 6), ("A4", 5, 10), ("S4", 11, 30), ("A5", 9, 59), ("Q8", 6, 6), ("D8", 8, 10)] {
        let grp = group(g);
        let lat = grp.lattice();
        assert_eq!(lat.classes.len(), classes, "{g}");
        let counted: usize = lat.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(counted, total, "{g}");
        assert_eq!(lat.subgroups.len(), total, "{g}");
    }
}

#[test]
fn outer_automorphism_orders() {
    for (h, out) in [("C1", 1), ("C2", 1), ("C3", 2), ("C2xC2", 6), ("C5", 4), ("C6", 2), ("S3", 1), ("A4", 2), ("D8", 2), ("Q8", 6), ("A5", 2)] {
        let g = group(h);
        let o = automorphisms(&g);
        assert_eq!(o.order(), out, "{h}");
        assert_eq!(o.order() * g.order() / g.centre().len(), o.aut_order, "{h}");
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let names = ["C6", "C2xC3", "S3", "D6", "C2xC2", "V4", "C4", "D8", "Q8", "C2xC4"];
    let groups: Vec<_> = names.iter().map(|n| group(n)).collect();
    for a in &groups {
        assert!(iso_test(a, a).is_some());
        for b in &groups {
            assert_eq!(iso_test(a, b).is_some(), iso_test(b, a).is_some());
            for c in &groups {
                if iso_test(a, b).is_some() && iso_test(b, c).is_some() {
                    assert!(iso_test(a, c).is_some());
                }
            }
        }
    }
    assert!(iso_test(&group("C6"), &group("C2xC3")).is_some());
    assert!(iso_test(&group("C6"), &group("S3")).is_none());
}

#[test]
fn names_of_small_groups() {
    for (text, name) in [("C2xC2", "V4"), ("D10", "D10"), ("S3", "S3"), ("A4", "A4"), ("C3", "C3")] {
        assert_eq!(recognize(&group(text)).as_deref(), Some(name), "{text}");
    }
}

#[test]
fn generators_and_bounds() {
    let g = group("gens:(1 2 3);(1 2)");
    assert_eq!(g.order(), 6);
    assert!(matches!(parse_group("S6", 400), Err(GroupError::BoundExceeded { .. })));
    assert!(parse_group("S6", 720).is_ok());
    assert!(matches!(parse_group("Z7", 400), Err(GroupError::Parse(_))));
}
