//! Named groups and the textual group grammar:
//! `1`, `C<n>`, `S<n>`, `A<n>`, `D<n>` (dihedral of order n), `V4`, `Q8`,
//! products joined by `x` (`C2xC2`), or `gens:(1 2)(3 4);(1 2 3)`.

use super::group::PermGroup;
use super::perm::Perm;
use super::GroupError;

fn cycles_perm(degree: usize, text: &str) -> Result<Perm, GroupError> {
    let (cycles, max) = Perm::parse_cycles(text)?;
    Perm::from_cycles(degree.max(max), &cycles)
}

pub fn cyclic(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
    if n <= 1 {
        return Ok(PermGroup::trivial());
    }
    let images = (0..n).map(|i| (i + 1) % n).collect();
    PermGroup::closure(&[Perm::from_images(images)?], bound)
}

pub fn symmetric(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
    if n <= 1 {
        return Ok(PermGroup::trivial());
    }
    let swap = Perm::from_cycles(n, &[vec![1, 2]])?;
    let long = Perm::from_cycles(n, &[(1..=n).collect()])?;
    PermGroup::closure(&[swap, long], bound)
}

pub fn alternating(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
    if n <= 2 {
        return Ok(PermGroup::trivial());
    }
    let gens = (3..=n)
        .map(|k| Perm::from_cycles(n, &[vec![1, 2, k]]))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::closure(&gens, bound)
}

/// Dihedral group of order `n`.
pub fn dihedral(n: usize, bound: usize) -> Result<PermGroup, GroupError> {
    if n == 0 || n % 2 == 1 {
        return Err(GroupError::Parse(format!("D{n}: dihedral order must be even")));
    }
    match n {
        2 => cyclic(2, bound),
        4 => klein(bound),
        _ => {
            let m = n / 2;
            let rot = Perm::from_images((0..m).map(|i| (i + 1) % m).collect())?;
            let refl = Perm::from_images((0..m).map(|i| (m - i) % m).collect())?;
            PermGroup::closure(&[rot, refl], bound)
        }
    }
}

pub fn klein(bound: usize) -> Result<PermGroup, GroupError> {
    PermGroup::closure(
        &[cycles_perm(4, "(1 2)(3 4)")?, cycles_perm(4, "(1 3)(2 4)")?],
        bound,
    )
}

pub fn quaternion(bound: usize) -> Result<PermGroup, GroupError> {
    PermGroup::closure(
        &[
            cycles_perm(8, "(1 2 3 4)(5 6 7 8)")?,
            cycles_perm(8, "(1 5 3 7)(2 8 4 6)")?,
        ],
        bound,
    )
}

fn parse_factor(text: &str, bound: usize) -> Result<PermGroup, GroupError> {
    let bad = || GroupError::Parse(format!("unknown group `{text}`"));
    if text == "1" {
        return Ok(PermGroup::trivial());
    }
    if text == "V4" {
        return klein(bound);
    }
    if text == "Q8" {
        return quaternion(bound);
    }
    let (head, tail) = text.split_at(1.min(text.len()));
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" => cyclic(n, bound),
        "S" => symmetric(n, bound),
        "A" => alternating(n, bound),
        "D" => dihedral(n, bound),
        _ => Err(bad()),
    }
}

/// Parses a group description; `bound` caps enumeration.
pub fn parse_group(text: &str, bound: usize) -> Result<PermGroup, GroupError> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("gens:") {
        let gens = rest
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Perm::parse_cycles(s))
            .collect::<Result<Vec<_>, _>>()?;
        let degree = gens.iter().map(|(_, m)| *m).max().unwrap_or(1).max(1);
        let perms = gens
            .iter()
            .map(|(c, _)| Perm::from_cycles(degree, c))
            .collect::<Result<Vec<_>, _>>()?;
        return PermGroup::closure(&perms, bound);
    }
    let mut factors = text.split('x');
    let first = factors
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| GroupError::Parse("empty group description".into()))?;
    let mut group = parse_factor(first, bound)?;
    for f in factors {
        let next = parse_factor(f, bound)?;
        group = group.direct_product(&next, bound)?;
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::iso::recognize;

    #[test]
    fn grammar_orders() {
        let cases = [
            ("1", 1),
            ("C6", 6),
            ("S3", 6),
            ("A4", 12),
            ("A5", 60),
            ("D10", 10),
            ("D8", 8),
            ("V4", 4),
            ("Q8", 8),
            ("C2xC2", 4),
            ("C2xS3", 12),
            ("gens:(1 2)(3 4);(1 2 3)", 12),
        ];
        for (text, order) in cases {
            assert_eq!(parse_group(text, 400).unwrap().order(), order, "{text}");
        }
    }

    #[test]
    fn recognized_names() {
        let cases = [
            ("1", "1"),
            ("C5", "C5"),
            ("C2xC2", "V4"),
            ("S3", "S3"),
            ("D10", "D10"),
            ("A4", "A4"),
            ("A5", "A5"),
            ("Q8", "Q8"),
            ("D8", "D8"),
            ("C2xC3", "C6"),
            ("S4", "S4"),
            ("D12", "D12"),
        ];
        for (text, name) in cases {
            let g = parse_group(text, 400).unwrap();
            assert_eq!(recognize(&g).as_deref(), Some(name), "{text}");
        }
    }

    #[test]
    fn bad_input() {
        assert!(parse_group("X3", 400).is_err());
        assert!(parse_group("D7", 400).is_err());
        assert!(parse_group("", 400).is_err());
        assert!(matches!(
            parse_group("S6", 400),
            Err(GroupError::BoundExceeded { .. })
        ));
    }
}
