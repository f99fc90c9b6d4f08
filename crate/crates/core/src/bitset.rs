//! Fixed-width bitsets used as vertex sets by the combinatorial searches.

/// A set over 0..nbits backed by 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits {
    nbits: usize,
    words: Vec<u64>,
}

pub fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

impl Bits {
    pub fn empty(nbits: usize) -> Self {
        Bits { nbits, words: vec![0; words_for(nbits)] }
    }

    pub fn full(nbits: usize) -> Self {
        let mut b = Bits { nbits, words: vec![!0u64; words_for(nbits)] };
        b.trim();
        b
    }

    pub fn from_words(nbits: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(nbits));
        let mut b = Bits { nbits, words };
        b.trim();
        b
    }

    /// Clears bits at positions >= nbits in the last word.
    fn trim(&mut self) {
        let tail = self.nbits % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nbits
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place intersection with a raw word slice (an adjacency row).
    pub fn intersect_words(&mut self, other: &[u64]) {
        debug_assert_eq!(other.len(), self.words.len());
        for (w, o) in self.words.iter_mut().zip(other) {
            *w &= o;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Removes every member <= v.
    pub fn clear_through(&mut self, v: usize) {
        debug_assert!(v < self.nbits);
        let word = v / 64;
        for w in &mut self.words[..word] {
            *w = 0;
        }
        let keep_from = v % 64 + 1;
        if keep_from == 64 {
            self.words[word] = 0;
        } else {
            self.words[word] &= !0u64 << keep_from;
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> BitsIter<'_> {
        BitsIter { words: &self.words, word_idx: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct BitsIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for BitsIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_intersect() {
        let mut b = Bits::empty(130);
        for i in [0usize, 63, 64, 100, 129] {
            b.insert(i);
        }
        assert_eq!(b.to_vec(), vec![0, 63, 64, 100, 129]);
        assert_eq!(b.count(), 5);
        let mut mask = Bits::empty(130);
        mask.insert(63);
        mask.insert(100);
        b.intersect_words(mask.words());
        assert_eq!(b.to_vec(), vec![63, 100]);
        assert_eq!(b.first(), Some(63));
    }

    #[test]
    fn full_trims_tail() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert!(b.contains(69));
    }

    #[test]
    fn clear_through_drops_prefix() {
        let mut b = Bits::full(130);
        b.clear_through(64);
        assert_eq!(b.first(), Some(65));
        assert_eq!(b.count(), 130 - 65);
        let mut c = Bits::full(10);
        c.clear_through(9);
        assert!(c.is_empty());
    }
}
