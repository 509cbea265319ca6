//! Plain bitset machinery for subsets of index families.
//!
//! Preference families grow fast (4,683 weak orders on six alternatives),
//! so subsets of a family and the rows of its specialization preorder are
//! stored as packed `u64` words rather than hash sets.

const WORD: usize = 64;

/// A subset of `{0, .., len-1}` stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// Members as a sorted vector, convenient for serialization.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A square boolean matrix with bitset rows; used for preorders where
/// `row(i)` collects every `j` with `leq(i, j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<BitSet>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        BitMatrix {
            n,
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    /// `true` iff the relation is transitive: whenever `get(i, j)`, row `j`
    /// is contained in row `i`.
    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|i| self.rows[i]
            .iter()
            .all(|j| self.rows[j].is_subset_of(&self.rows[i])))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_count() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.count(), 3);
        s.remove(64);
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn subset_and_union() {
        let a = BitSet::from_indices(10, [1, 3]);
        let mut b = BitSet::from_indices(10, [1, 3, 7]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        b.intersect_with(&a);
        assert_eq!(b.to_vec(), vec![1, 3]);
    }

    #[test]
    fn transitivity_detects_violation() {
        let mut m = BitMatrix::new(3);
        for i in 0..3 {
            m.set(i, i);
        }
        m.set(0, 1);
        m.set(1, 2);
        assert!(!m.is_transitive());
        m.set(0, 2);
        assert!(m.is_transitive());
    }
}
