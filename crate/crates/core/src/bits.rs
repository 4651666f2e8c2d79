//! Fixed-length bit vectors indexed by edge id.

use std::fmt;

/// A set of edge ids stored as a packed bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    len: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.set(i, true);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.toggle(i);
        }
        s
    }

    /// Low `len` bits of `value` (bit `i` of the integer is edge `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut s = Self::new(len);
        if len > 0 {
            s.words[0] = if len == 64 {
                value
            } else {
                value & ((1 << len) - 1)
            };
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    pub fn xor_with(&mut self, other: &EdgeSet) {
        assert_eq!(self.len, other.len, "edge set length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        out.xor_with(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Renders as a string of `0`/`1`, edge 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        let mut out = Self::new(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => out.set(i, true),
                _ => return None,
            }
        }
        Some(out)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet({})", self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_string_round_trip() {
        let s = EdgeSet::from_indices(70, [0, 3, 64, 69]);
        let text = s.to_bit_string();
        assert_eq!(text.len(), 70);
        assert_eq!(EdgeSet::from_bit_string(&text).unwrap(), s);
        assert_eq!(s.count_ones(), 4);
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), vec![0, 3, 64, 69]);
    }

    #[test]
    fn xor_is_symmetric_difference() {
        let a = EdgeSet::from_indices(10, [1, 2, 3]);
        let b = EdgeSet::from_indices(10, [3, 4]);
        assert_eq!(a.xor(&b), EdgeSet::from_indices(10, [1, 2, 4]));
    }
}
