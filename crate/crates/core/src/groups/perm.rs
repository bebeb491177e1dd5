use std::fmt;

use super::GroupError;

/// A permutation of `{0, .., n-1}` stored by its images.
///
/// Cycle notation in text (parsing and `Display`) is 1-based, so `(1 2)` swaps
/// points 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(GroupError::NotAPermutation(format!("{cycles:?}")));
                }
                touched[p - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parses `(1 2)(3 4 5)`; `()` or an empty string is the identity.
    /// Returns the cycles and the largest point mentioned.
    pub fn parse_cycles(text: &str) -> Result<(Vec<Vec<usize>>, usize), GroupError> {
        let bad = || GroupError::Parse(format!("bad cycle notation `{text}`"));
        let mut cycles = Vec::new();
        let mut max_point = 0;
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let inner = &rest[1..close];
            let points = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if points.iter().any(|&p| p == 0) {
                return Err(bad());
            }
            max_point = max_point.max(points.iter().copied().max().unwrap_or(0));
            if points.len() > 1 {
                cycles.push(points);
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok((cycles, max_point))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        if point < self.images.len() {
            self.images[point] as usize
        } else {
            point
        }
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u16..degree as u16);
        Perm { images }
    }

    /// `self * other`, the map `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let degree = self.degree().max(other.degree());
        Perm {
            images: (0..degree).map(|x| self.apply(other.apply(x)) as u16).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let (cycles, max) = Perm::parse_cycles("(1 2)(3 4 5)").unwrap();
        assert_eq!(max, 5);
        let p = Perm::from_cycles(5, &cycles).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(p.compose(&p.inverse()), Perm::identity(5));
    }

    #[test]
    fn rejects_repeated_points() {
        assert!(Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::parse_cycles("(1 2").is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![2, 3]]).unwrap();
        // a(b(1)) = a(1) = 2 in 1-based terms
        assert_eq!(a.compose(&b).apply(0), 1);
    }
}
