//! Plain bitvector with rank/select directories.
//!
//! Space: payload plus a cumulative rank count per 1024-bit block and a
//! position sample per 1024 occurrences of each bit value, about 1.19 bits
//! per stored bit. Rank is O(1) (bounded popcount window), select is a
//! sample-bounded binary search over the rank directory.
//!
//! The public API is 1-based and checked, matching the query conventions of
//! the rest of the crate: `rank(b, i)` counts bit `b` among positions `1..=i`,
//! `select(b, j)` returns the 1-based position of the j-th occurrence.

use crate::error::{Error, Result};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const BLOCKS_PER_SUPER: usize = 8;
const SUPER_BITS: usize = BLOCK_BITS * BLOCKS_PER_SUPER;
const SELECT_SAMPLE: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
    /// ones before each superblock of SUPER_BITS.
    super_ranks: Vec<u64>,
    /// ones before each 512-bit block, relative to its superblock.
    block_ranks: Vec<u32>,
    /// bit position of occurrence `k * SELECT_SAMPLE` (0-based) of a one.
    select1_samples: Vec<u64>,
    select0_samples: Vec<u64>,
    ones: usize,
}

impl BitVector {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words: Vec<u64> = Vec::new();
        let mut len = 0usize;
        for bit in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if bit {
                words[len / 64] |= 1u64 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from pre-packed little-endian words; bits beyond `len` must be zero.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.truncate(len.div_ceil(64));
        words.resize(len.div_ceil(64), 0);
        if len % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        let nblocks = len.div_ceil(BLOCK_BITS);
        let mut super_ranks = Vec::with_capacity(nblocks / BLOCKS_PER_SUPER + 2);
        let mut block_ranks = Vec::with_capacity(nblocks + 1);
        let mut select1_samples = Vec::new();
        let mut select0_samples = Vec::new();
        let mut ones = 0u64;
        let mut zeros = 0u64;
        for b in 0..nblocks {
            if b % BLOCKS_PER_SUPER == 0 {
                super_ranks.push(ones);
            }
            block_ranks.push((ones - super_ranks.last().unwrap()) as u32);
            let wlo = b * WORDS_PER_BLOCK;
            let whi = (wlo + WORDS_PER_BLOCK).min(words.len());
            for (w, word) in words[wlo..whi].iter().enumerate() {
                let base = (wlo + w) * 64;
                let valid = (len - base).min(64);
                let mut x = *word;
                while x != 0 {
                    let t = x.trailing_zeros() as usize;
                    if ones as usize % SELECT_SAMPLE == 0 {
                        select1_samples.push((base + t) as u64);
                    }
                    ones += 1;
                    x &= x - 1;
                }
                let mut inv = !*word & ones_mask(valid);
                while inv != 0 {
                    let t = inv.trailing_zeros() as usize;
                    if zeros as usize % SELECT_SAMPLE == 0 {
                        select0_samples.push((base + t) as u64);
                    }
                    zeros += 1;
                    inv &= inv - 1;
                }
            }
        }
        BitVector {
            len,
            words,
            super_ranks,
            block_ranks,
            select1_samples,
            select0_samples,
            ones: ones as usize,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count(&self, b: bool) -> usize {
        if b {
            self.ones
        } else {
            self.len - self.ones
        }
    }

    /// Unchecked 0-based bit read.
    #[inline]
    pub(crate) fn get(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    /// Ones before block `b`.
    #[inline]
    fn rank_at_block(&self, b: usize) -> usize {
        (self.super_ranks[b / BLOCKS_PER_SUPER] + self.block_ranks[b] as u64) as usize
    }

    /// Ones in `[0, p)`, 0-based, `p <= len`.
    #[inline]
    pub(crate) fn rank1_0(&self, p: usize) -> usize {
        debug_assert!(p <= self.len);
        if p == self.len {
            return self.ones;
        }
        let b = p / BLOCK_BITS;
        let mut r = self.rank_at_block(b);
        let wlo = b * WORDS_PER_BLOCK;
        let wfull = p / 64;
        for w in wlo..wfull {
            r += self.words[w].count_ones() as usize;
        }
        if p % 64 != 0 {
            r += (self.words[wfull] & ((1u64 << (p % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub(crate) fn rank0_0(&self, p: usize) -> usize {
        p - self.rank1_0(p)
    }

    /// 0-based position of the (k+1)-th one, or None.
    pub(crate) fn select1_0(&self, k: usize) -> Option<usize> {
        if k >= self.ones {
            return None;
        }
        let s = k / SELECT_SAMPLE;
        let lo_blk = self.select1_samples[s] as usize / BLOCK_BITS;
        let hi_blk = self
            .select1_samples
            .get(s + 1)
            .map_or(self.block_ranks.len() - 1, |&p| p as usize / BLOCK_BITS);
        // largest block whose preceding ones count is <= k
        let (mut lo, mut hi) = (lo_blk, hi_blk);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.rank_at_block(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let mut rem = k - self.rank_at_block(lo);
        let wlo = lo * WORDS_PER_BLOCK;
        let whi = (wlo + WORDS_PER_BLOCK).min(self.words.len());
        for w in wlo..whi {
            let c = self.words[w].count_ones() as usize;
            if rem < c {
                return Some(w * 64 + select_in_word(self.words[w], rem));
            }
            rem -= c;
        }
        unreachable!("select1 sample directory inconsistent");
    }

    /// 0-based position of the (k+1)-th zero, or None.
    pub(crate) fn select0_0(&self, k: usize) -> Option<usize> {
        let zeros = self.len - self.ones;
        if k >= zeros {
            return None;
        }
        let s = k / SELECT_SAMPLE;
        let lo_blk = self.select0_samples[s] as usize / BLOCK_BITS;
        let hi_blk = self
            .select0_samples
            .get(s + 1)
            .map_or(self.block_ranks.len() - 1, |&p| p as usize / BLOCK_BITS);
        let zeros_before = |b: usize| b * BLOCK_BITS - self.rank_at_block(b);
        let (mut lo, mut hi) = (lo_blk, hi_blk);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if zeros_before(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let mut rem = k - zeros_before(lo);
        let wlo = lo * WORDS_PER_BLOCK;
        let whi = (wlo + WORDS_PER_BLOCK).min(self.words.len());
        for w in wlo..whi {
            let valid = (self.len - w * 64).min(64);
            let inv = !self.words[w] & ones_mask(valid);
            let c = inv.count_ones() as usize;
            if rem < c {
                return Some(w * 64 + select_in_word(inv, rem));
            }
            rem -= c;
        }
        unreachable!("select0 sample directory inconsistent");
    }

    // ---- public 1-based checked API ----

    /// Count of bit `b` among positions `1..=i`; `rank(b, 0) = 0`.
    pub fn rank(&self, b: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 0,
                max: self.len,
            });
        }
        let r1 = self.rank1_0(i);
        Ok(if b { r1 } else { i - r1 })
    }

    /// 1-based position of the j-th occurrence of `b` (`j >= 1`).
    pub fn select(&self, b: bool, j: usize) -> Result<usize> {
        if j == 0 {
            return Err(Error::OutOfRange {
                arg: "j",
                value: 0,
                min: 1,
                max: self.count(b).max(1),
            });
        }
        let pos = if b {
            self.select1_0(j - 1)
        } else {
            self.select0_0(j - 1)
        };
        pos.map(|p| p + 1).ok_or(Error::NotFound {
            index: j,
            available: self.count(b),
        })
    }

    /// The bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 1,
                max: self.len,
            });
        }
        Ok(self.get(i - 1))
    }

    pub fn bits_used(&self) -> u64 {
        64 * (self.words.len()
            + self.super_ranks.len()
            + self.select1_samples.len()
            + self.select0_samples.len()) as u64
            + 32 * self.block_ranks.len() as u64
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_raw_parts(words: Vec<u64>, len: usize) -> Self {
        Self::from_words(words, len)
    }
}

#[inline]
fn ones_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// 0-based position of the (k+1)-th set bit of `w`; `k < popcount(w)`.
#[inline]
fn select_in_word(w: u64, mut k: usize) -> usize {
    let mut base = 0;
    let mut x = w;
    loop {
        let c = (x & 0xFF).count_ones() as usize;
        if k < c {
            let mut byte = x & 0xFF;
            loop {
                let t = byte.trailing_zeros() as usize;
                if k == 0 {
                    return base + t;
                }
                k -= 1;
                byte &= byte - 1;
            }
        }
        k -= c;
        x >>= 8;
        base += 8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(bits: &[bool]) -> (Vec<usize>, Vec<usize>) {
        // prefix ones, positions of ones (1-based)
        let mut pref = vec![0usize];
        let mut pos1 = Vec::new();
        for (i, &b) in bits.iter().enumerate() {
            pref.push(pref[i] + b as usize);
            if b {
                pos1.push(i + 1);
            }
        }
        (pref, pos1)
    }

    #[test]
    fn spec_examples() {
        let bv = BitVector::from_bits([true, false, true, true, false]);
        assert_eq!(bv.rank(true, 3).unwrap(), 2);
        assert_eq!(bv.rank(true, 5).unwrap(), 3);
        assert_eq!(bv.rank(false, 5).unwrap(), 2);
        assert_eq!(bv.rank(true, 0).unwrap(), 0);
        assert_eq!(bv.select(true, 2).unwrap(), 3);
        assert_eq!(bv.select(false, 2).unwrap(), 5);
        assert_eq!(bv.access(2).unwrap(), false);
        let single = BitVector::from_bits([true]);
        assert_eq!(single.select(true, 1).unwrap(), 1);
        assert_eq!(single.access(1).unwrap(), true);
    }

    #[test]
    fn empty() {
        let bv = BitVector::from_bits(std::iter::empty());
        assert_eq!(bv.len(), 0);
        assert_eq!(bv.rank(true, 0).unwrap(), 0);
        assert!(matches!(bv.select(true, 1), Err(Error::NotFound { .. })));
    }

    #[test]
    fn error_kinds() {
        let bv = BitVector::from_bits([true, false, true, true, false]);
        assert!(matches!(bv.access(6), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.access(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.rank(true, 6), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.select(true, 4), Err(Error::NotFound { .. })));
        assert!(matches!(bv.select(true, 0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn matches_naive_on_random_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..300 {
            let len = rng.gen_range(0..600);
            let dens: f64 = rng.gen();
            let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(dens)).collect();
            let bv = BitVector::from_bits(bits.iter().copied());
            let (pref, pos1) = naive(&bits);
            for i in 0..=len {
                assert_eq!(bv.rank(true, i).unwrap(), pref[i]);
                assert_eq!(bv.rank(false, i).unwrap(), i - pref[i]);
            }
            for (j, &p) in pos1.iter().enumerate() {
                assert_eq!(bv.select(true, j + 1).unwrap(), p);
            }
            for i in 1..=len {
                assert_eq!(bv.access(i).unwrap(), bits[i - 1]);
            }
        }
    }

    #[test]
    fn inverse_laws_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let bits: Vec<bool> = (0..1_000_000).map(|_| rng.gen_bool(0.37)).collect();
        let bv = BitVector::from_bits(bits.iter().copied());
        for _ in 0..2_000 {
            let j = rng.gen_range(1..=bv.count(true));
            let p = bv.select(true, j).unwrap();
            assert_eq!(bv.rank(true, p).unwrap(), j);
            assert!(bv.access(p).unwrap());
            let i = rng.gen_range(0..=bv.len());
            let r = bv.rank(true, i).unwrap();
            if r >= 1 {
                assert!(bv.select(true, r).unwrap() <= i);
            }
            assert_eq!(bv.rank(true, i).unwrap() + bv.rank(false, i).unwrap(), i);
        }
    }

    #[test]
    fn space_within_budget() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let len = 1usize << 16;
        let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.5)).collect();
        let bv = BitVector::from_bits(bits);
        assert!(
            bv.bits_used() <= (len as u64 * 5) / 4,
            "{} > 1.25 * {len}",
            bv.bits_used()
        );
    }
}
