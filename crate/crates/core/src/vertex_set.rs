use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

pub(crate) fn words_for(capacity: usize) -> usize {
    capacity.div_ceil(WORD_BITS)
}

/// Mask with the low `capacity` bits set, spread over `words_for(capacity)` words.
pub(crate) fn fill_words(capacity: usize, out: &mut [u64]) {
    for (i, w) in out.iter_mut().enumerate() {
        let lo = i * WORD_BITS;
        *w = if capacity >= lo + WORD_BITS {
            u64::MAX
        } else if capacity > lo {
            (1u64 << (capacity - lo)) - 1
        } else {
            0
        };
    }
}

/// A subset of `0..capacity` stored as fixed-width bit-mask blocks.
///
/// Two sets compare by the numeric value of their masks (most significant
/// word first), then by capacity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        fill_words(capacity, &mut s.words);
        s
    }

    pub fn from_vertices<I>(capacity: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::new(capacity);
        for v in vertices {
            if v >= capacity {
                return Err(Error::VertexOutOfRange { vertex: v, n: capacity });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from a single-word mask. Bits at or above `capacity` are an error.
    pub fn from_mask(capacity: usize, mask: u64) -> Result<Self> {
        if capacity < WORD_BITS && mask >> capacity != 0 {
            let vertex = WORD_BITS - 1 - mask.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n: capacity });
        }
        let mut s = Self::new(capacity);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        Ok(s)
    }

    pub(crate) fn from_words(capacity: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(capacity));
        VertexSet { words, capacity }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The low 64 bits of the mask.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Panics if `v >= capacity`.
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.capacity, "vertex {v} out of range 0..{}", self.capacity);
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.capacity {
            self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.capacity, other.capacity, "vertex set capacity mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        VertexSet::from_words(self.capacity, words)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Complement within `0..capacity`.
    pub fn complement(&self) -> Self {
        let mut full = Self::full(self.capacity);
        for (f, w) in full.words.iter_mut().zip(&self.words) {
            *f &= !w;
        }
        full
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.capacity, other.capacity, "vertex set capacity mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.capacity == other.capacity
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let width = self.words.len().max(other.words.len());
        for i in (0..width).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.capacity.cmp(&other.capacity)
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Set bits of a word slice in ascending order.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = BitIter<'a>;

    fn into_iter(self) -> BitIter<'a> {
        self.iter()
    }
}
