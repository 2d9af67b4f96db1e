//! Packed bit vectors with popcount-based Hamming arithmetic.

use std::fmt;

const BITS: usize = 64;

/// Fixed-length bit vector packed into 64-bit words. Lengths up to 256 are
/// supported (the library order limit); unused tail bits are kept zero so
/// equality, ordering and hashing work on the raw words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(n: usize) -> Self {
        BitVec {
            words: vec![0; n.div_ceil(BITS).max(1)],
        }
    }

    /// All-ones vector of length `n`.
    pub fn ones(n: usize) -> Self {
        let mut v = Self::zeros(n);
        for i in 0..n {
            v.set(i, true);
        }
        v
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        BitVec { words }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / BITS] >> (i % BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / BITS] |= 1 << (i % BITS);
        } else {
            self.words[i / BITS] &= !(1 << (i % BITS));
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        BitVec {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn xor_in_place(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn distance(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// 0-indexed support.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (b, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(b * BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn to_bit_string(&self, n: usize) -> String {
        (0..n).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({:x?})", self.words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_is_xor_weight() {
        let mut a = BitVec::zeros(10);
        let mut b = BitVec::zeros(10);
        a.set(0, true);
        a.set(9, true);
        b.set(9, true);
        b.set(4, true);
        assert_eq!(a.distance(&b), 2);
        assert_eq!(a.xor(&b).weight(), 2);
    }

    #[test]
    fn support_roundtrip() {
        let mut a = BitVec::zeros(70);
        for i in [0, 63, 64, 69] {
            a.set(i, true);
        }
        assert_eq!(a.support(), vec![0, 63, 64, 69]);
    }
}
