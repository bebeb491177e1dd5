use std::cmp::Ordering;

/// A set of element indices of one enumerated group.
///
/// Ordering compares the ascending index lists lexicographically, which is the
/// "minimal sorted element list" order used for canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
    universe: usize,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            words: vec![0; universe.div_ceil(64).max(1)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            universe: self.universe,
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
            universe: self.universe,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Packs the set into a `u128`; the universe must have at most 128 points.
    pub fn to_mask(&self) -> u128 {
        debug_assert!(self.universe <= 128);
        let lo = self.words[0] as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        lo | (hi << 64)
    }

    pub fn from_mask(universe: usize, mask: u128) -> Self {
        let mut s = Self::empty(universe);
        s.words[0] = mask as u64;
        if s.words.len() > 1 {
            s.words[1] = (mask >> 64) as u64;
        }
        s
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Iterates the set bits of a `u128` mask in ascending order.
pub fn mask_bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut bits = mask;
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        Some(b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic_on_sorted_lists() {
        let a = ElemSet::from_indices(10, [0, 1]);
        let b = ElemSet::from_indices(10, [0, 2]);
        let c = ElemSet::from_indices(10, [0, 1, 3]);
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
    }

    #[test]
    fn mask_round_trip() {
        let s = ElemSet::from_indices(100, [0, 5, 64, 99]);
        let m = s.to_mask();
        assert_eq!(ElemSet::from_mask(100, m), s);
        assert_eq!(mask_bits(m).collect::<Vec<_>>(), vec![0, 5, 64, 99]);
    }
}
