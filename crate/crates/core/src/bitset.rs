//! Fixed-capacity bitsets over vertex indices.
//!
//! Adjacency rows and candidate sets in the solvers are bitsets so that
//! pair queries are O(1) and neighborhood intersections are word-parallel.

/// A set of vertex indices below a fixed capacity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Box<[u64]>,
    capacity: usize,
}

impl Bitset {
    /// Empty set with room for indices `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        Bitset {
            words: vec![0u64; capacity.div_ceil(64)].into_boxed_slice(),
            capacity,
        }
    }

    /// Set containing all of `0..capacity`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Bitset::new(capacity);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_iter(capacity: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Bitset::new(capacity);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set index, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// In-place intersection.
    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// In-place union.
    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// In-place difference (`self := self \ other`).
    pub fn subtract(&mut self, other: &Bitset) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Removes every index `<= v`.
    pub fn clear_upto(&mut self, v: usize) {
        let word = v / 64;
        for w in self.words.iter_mut().take(word) {
            *w = 0;
        }
        if word < self.words.len() {
            let keep_from = v % 64 + 1;
            if keep_from == 64 {
                self.words[word] = 0;
            } else {
                self.words[word] &= !0u64 << keep_from;
            }
        }
    }

    /// Ascending iterator over set indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.capacity;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_remove() {
        let mut s = Bitset::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn full_respects_capacity() {
        let s = Bitset::full(70);
        assert_eq!(s.len(), 70);
        assert!(!s.contains(70));
    }

    #[test]
    fn clear_upto_boundaries() {
        let mut s = Bitset::full(130);
        s.clear_upto(63);
        assert_eq!(s.first(), Some(64));
        let mut s = Bitset::full(130);
        s.clear_upto(64);
        assert_eq!(s.first(), Some(65));
        let mut s = Bitset::full(10);
        s.clear_upto(9);
        assert!(s.is_empty());
    }

    #[test]
    fn set_algebra() {
        let a = Bitset::from_iter(16, [1, 3, 5, 7]);
        let b = Bitset::from_iter(16, [3, 4, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 5]);
        assert_eq!(a.intersection_len(&b), 2);
        let mut c = a.clone();
        c.subtract(&b);
        assert_eq!(c.to_vec(), vec![1, 7]);
        assert!(!a.is_disjoint(&b));
        assert!(c.is_disjoint(&b));
    }
}
