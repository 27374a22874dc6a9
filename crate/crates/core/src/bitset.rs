//! Fixed-width bit sets over `u64` words.
//!
//! Adjacency rows are stored as raw word slices inside [`crate::Graph`]; the
//! free functions here operate on such slices so rows and owned sets share
//! the same code paths.

pub const WORD_BITS: usize = 64;

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
pub fn test(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline]
pub fn clear(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
}

#[inline]
pub fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Popcount of `a & b`.
#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Iterates the indices of set bits in increasing order.
pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// ORs the low `len` bits of `src` into `dst` starting at bit `offset`.
pub fn or_shifted(dst: &mut [u64], src: &[u64], offset: usize, len: usize) {
    let shift = offset % WORD_BITS;
    let base = offset / WORD_BITS;
    let n_src = words_for(len);
    for (i, &w) in src.iter().take(n_src).enumerate() {
        let w = if (i + 1) * WORD_BITS > len {
            w & low_mask(len - i * WORD_BITS)
        } else {
            w
        };
        if w == 0 {
            continue;
        }
        dst[base + i] |= w << shift;
        if shift != 0 && base + i + 1 < dst.len() {
            dst[base + i + 1] |= w >> (WORD_BITS - shift);
        }
    }
}

/// Mask with the low `bits` bits set (`bits` in `0..=64`).
#[inline]
pub fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Owned bit set with a fixed universe size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        s.trim();
        s
    }

    pub fn from_words(words: &[u64], len: usize) -> Self {
        let mut s = BitSet {
            words: words[..words_for(len)].to_vec(),
            len,
        };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= low_mask(rem);
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} outside universe {}", self.len);
        set(&mut self.words, i);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} outside universe {}", self.len);
        clear(&mut self.words, i);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && test(&self.words, i)
    }

    pub fn count(&self) -> usize {
        count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        ones(&self.words).next()
    }

    pub fn iter(&self) -> Ones<'_> {
        ones(&self.words)
    }

    /// `self &= other` where `other` is a word slice of at least the same width.
    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= b;
        }
    }

    /// `self &= !other`.
    pub fn difference_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= !b;
        }
    }

    /// Overwrites `self` with `a & b`.
    pub fn assign_and(&mut self, a: &[u64], b: &[u64]) {
        for ((d, x), y) in self.words.iter_mut().zip(a).zip(b) {
            *d = x & y;
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
