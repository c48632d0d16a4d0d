//! Range argmin/argmax index that never touches the source array at query
//! time.
//!
//! Build streams the values once through a monotone stack and keeps only the
//! parenthesis encoding of the resulting nearest-extreme parent tree (the
//! Cartesian-tree shape), about 2 bits per entry, plus a small excess
//! directory. For min mode, `parent(t)` is the nearest `j < t` with
//! `A[j] <= A[t]`; the subtree of `t` is then the run `[t, ns(t))` where
//! `ns(t)` is the next strictly smaller position. The range minimum of
//! `[i, j]` with leftmost tie-break is exactly the smallest ancestor-or-self
//! of `j` that is `>= i`, which the query finds with one excess range-minimum
//! over the parentheses.
//!
//! Queries run in O(1) table lookups plus two bounded block scans.

use super::bitvector::BitVector;
use crate::error::{Error, Result};

/// Excess directory block size, in parenthesis bits.
const EX_BLOCK: usize = 256;

/// Per-byte excess summaries, bits processed low to high: net excess delta,
/// minimum prefix excess, and the rightmost in-byte offset attaining it.
const fn byte_tables() -> ([i8; 256], [i8; 256], [u8; 256]) {
    let mut delta = [0i8; 256];
    let mut min = [0i8; 256];
    let mut argmin = [0u8; 256];
    let mut b = 0usize;
    while b < 256 {
        let mut e = 0i8;
        let mut mn = i8::MAX;
        let mut am = 0u8;
        let mut i = 0;
        while i < 8 {
            e += if (b >> i) & 1 == 1 { 1 } else { -1 };
            if e <= mn {
                mn = e;
                am = i as u8;
            }
            i += 1;
        }
        delta[b] = e;
        min[b] = mn;
        argmin[b] = am;
        b += 1;
    }
    (delta, min, argmin)
}

const BYTE_TABLES: ([i8; 256], [i8; 256], [u8; 256]) = byte_tables();
const BYTE_DELTA: [i8; 256] = BYTE_TABLES.0;
const BYTE_MIN: [i8; 256] = BYTE_TABLES.1;
const BYTE_ARGMIN: [u8; 256] = BYTE_TABLES.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeMode {
    Min,
    Max,
}

#[derive(Debug, Clone)]
pub struct RangeArgIndex {
    len: usize,
    mode: ExtremeMode,
    /// `2*len + 2` bits: virtual root, then per element its pops and one open.
    parens: BitVector,
    /// Min excess within each block, and the in-block offset of its
    /// rightmost occurrence.
    blk_min: Vec<i32>,
    blk_pos: Vec<u8>,
    /// Sparse table over `blk_min`, rightmost argmin per power-of-two window.
    sparse: Vec<Vec<u32>>,
}

impl RangeArgIndex {
    /// Builds over `values[0]..values[len-1]` (1-based positions in queries).
    /// The source is only read here.
    pub fn build(values: &[u64], mode: ExtremeMode) -> Self {
        let n = values.len();
        let plen = 2 * n + 2;
        let mut words = vec![0u64; plen.div_ceil(64)];
        let mut bitpos = 0usize;
        words[0] |= 1; // root open
        bitpos += 1;
        let mut stack: Vec<u64> = Vec::new();
        for &v in values {
            while let Some(&top) = stack.last() {
                let keep = match mode {
                    ExtremeMode::Min => top <= v,
                    ExtremeMode::Max => top >= v,
                };
                if keep {
                    break;
                }
                stack.pop();
                bitpos += 1; // close = 0 bit
            }
            stack.push(v);
            words[bitpos / 64] |= 1u64 << (bitpos % 64);
            bitpos += 1;
        }
        let parens = BitVector::from_words(words, plen);

        let nblocks = plen.div_ceil(EX_BLOCK);
        let mut blk_min = vec![i32::MAX; nblocks];
        let mut blk_pos = vec![0u8; nblocks];
        let mut e: i32 = 0;
        for t in 1..=plen {
            e += if parens.get(t - 1) { 1 } else { -1 };
            let b = (t - 1) / EX_BLOCK;
            if e <= blk_min[b] {
                blk_min[b] = e;
                blk_pos[b] = ((t - 1) % EX_BLOCK) as u8;
            }
        }
        let mut sparse: Vec<Vec<u32>> = Vec::new();
        let mut w = 1usize;
        while 2 * w <= nblocks {
            let prev: Vec<u32> = if w == 1 {
                (0..nblocks as u32).collect()
            } else {
                sparse.last().unwrap().clone()
            };
            let mut cur = Vec::with_capacity(nblocks - 2 * w + 1);
            for b in 0..=(nblocks - 2 * w) {
                let m1 = prev[b];
                let m2 = prev[b + w];
                cur.push(if blk_min[m2 as usize] <= blk_min[m1 as usize] {
                    m2
                } else {
                    m1
                });
            }
            sparse.push(cur);
            w *= 2;
        }
        RangeArgIndex {
            len: n,
            mode,
            parens,
            blk_min,
            blk_pos,
            sparse,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mode(&self) -> ExtremeMode {
        self.mode
    }

    /// Leftmost position of the extremal value in `[i, j]`, 1-based.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > j || j > self.len {
            return Err(Error::OutOfRange {
                arg: "range",
                value: if i == 0 || (i > j && j <= self.len) { i } else { j },
                min: 1,
                max: self.len,
            });
        }
        if i == j {
            return Ok(i);
        }
        // open positions of nodes i and j (root is node 0)
        let x = self
            .parens
            .select1_0(i)
            .expect("node open paren present")
            + 1;
        let q = self
            .parens
            .select1_0(j)
            .expect("node open paren present")
            + 1;
        let (mu, rstar) = self.excess_min_rightmost(x, q);
        let ex = 2 * self.parens.rank1_0(x) as i64 - x as i64;
        let p_hat = if ex == mu { x } else { rstar + 1 };
        Ok(self.parens.rank1_0(p_hat) - 1)
    }

    /// `(min excess, rightmost position attaining it)` over 1-based
    /// parenthesis positions `[lo, hi]`, where the excess at `t` counts the
    /// first `t` bits.
    fn excess_min_rightmost(&self, lo: usize, hi: usize) -> (i64, usize) {
        let hb = (lo - 1) / EX_BLOCK;
        let tb = (hi - 1) / EX_BLOCK;
        if hb == tb {
            return self.scan(lo, hi);
        }
        let mut best = self.scan(lo, (hb + 1) * EX_BLOCK);
        if tb > hb + 1 {
            let (b1, b2) = (hb + 1, tb - 1);
            let k = usize::BITS as usize - 1 - (b2 - b1 + 1).leading_zeros() as usize;
            let m1 = self.table(k, b1);
            let m2 = self.table(k, b2 + 1 - (1 << k));
            let mb = if self.blk_min[m2] <= self.blk_min[m1] {
                m2
            } else {
                m1
            };
            let cand = (
                self.blk_min[mb] as i64,
                mb * EX_BLOCK + self.blk_pos[mb] as usize + 1,
            );
            if cand.0 <= best.0 {
                best = cand;
            }
        }
        let tail = self.scan(tb * EX_BLOCK + 1, hi);
        if tail.0 <= best.0 {
            best = tail;
        }
        best
    }

    #[inline]
    fn table(&self, k: usize, b: usize) -> usize {
        if k == 0 {
            b
        } else {
            self.sparse[k - 1][b] as usize
        }
    }

    fn scan(&self, lo: usize, hi: usize) -> (i64, usize) {
        let words = self.parens.words();
        let mut e = 2 * self.parens.rank1_0(lo - 1) as i64 - (lo as i64 - 1);
        let mut best = i64::MAX;
        let mut pos = lo;
        let mut t = lo;
        while t <= hi && (t - 1) % 8 != 0 {
            e += if words[(t - 1) / 64] >> ((t - 1) % 64) & 1 == 1 { 1 } else { -1 };
            if e <= best {
                best = e;
                pos = t;
            }
            t += 1;
        }
        while t + 7 <= hi {
            let idx = (t - 1) / 8;
            let byte = (words[idx / 8] >> (8 * (idx % 8))) as usize & 0xFF;
            let m = e + BYTE_MIN[byte] as i64;
            if m <= best {
                best = m;
                pos = t + BYTE_ARGMIN[byte] as usize;
            }
            e += BYTE_DELTA[byte] as i64;
            t += 8;
        }
        while t <= hi {
            e += if words[(t - 1) / 64] >> ((t - 1) % 64) & 1 == 1 { 1 } else { -1 };
            if e <= best {
                best = e;
                pos = t;
            }
            t += 1;
        }
        (best, pos)
    }

    pub fn bits_used(&self) -> u64 {
        self.parens.bits_used()
            + 32 * self.blk_min.len() as u64
            + 8 * self.blk_pos.len() as u64
            + 32 * self.sparse.iter().map(|l| l.len() as u64).sum::<u64>()
    }

    pub(crate) fn parens(&self) -> &BitVector {
        &self.parens
    }

    /// Reassembles from serialized parts; directories are rebuilt.
    pub(crate) fn from_parens(len: usize, mode: ExtremeMode, parens: BitVector) -> Self {
        let plen = parens.len();
        let nblocks = plen.div_ceil(EX_BLOCK);
        let mut blk_min = vec![i32::MAX; nblocks];
        let mut blk_pos = vec![0u8; nblocks];
        let mut e: i32 = 0;
        for t in 1..=plen {
            e += if parens.get(t - 1) { 1 } else { -1 };
            let b = (t - 1) / EX_BLOCK;
            if e <= blk_min[b] {
                blk_min[b] = e;
                blk_pos[b] = ((t - 1) % EX_BLOCK) as u8;
            }
        }
        let mut sparse: Vec<Vec<u32>> = Vec::new();
        let mut w = 1usize;
        while 2 * w <= nblocks {
            let prev: Vec<u32> = if w == 1 {
                (0..nblocks as u32).collect()
            } else {
                sparse.last().unwrap().clone()
            };
            let mut cur = Vec::with_capacity(nblocks - 2 * w + 1);
            for b in 0..=(nblocks - 2 * w) {
                let m1 = prev[b];
                let m2 = prev[b + w];
                cur.push(if blk_min[m2 as usize] <= blk_min[m1 as usize] {
                    m2
                } else {
                    m1
                });
            }
            sparse.push(cur);
            w *= 2;
        }
        RangeArgIndex {
            len,
            mode,
            parens,
            blk_min,
            blk_pos,
            sparse,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn naive(values: &[u64], mode: ExtremeMode, i: usize, j: usize) -> usize {
        let mut best = i;
        for t in i..=j {
            let better = match mode {
                ExtremeMode::Min => values[t - 1] < values[best - 1],
                ExtremeMode::Max => values[t - 1] > values[best - 1],
            };
            if better {
                best = t;
            }
        }
        best
    }

    #[test]
    fn spec_examples() {
        let idx = RangeArgIndex::build(&[3, 5, 7, 6, 7, 7], ExtremeMode::Max);
        assert_eq!(idx.query(2, 5).unwrap(), 3);
        let one = RangeArgIndex::build(&[42], ExtremeMode::Min);
        assert_eq!(one.query(1, 1).unwrap(), 1);
        // infinity encoded as 7
        let idx = RangeArgIndex::build(&[7, 7, 1, 7, 2, 4], ExtremeMode::Min);
        assert_eq!(idx.query(2, 5).unwrap(), 3);
        let ties = RangeArgIndex::build(&[5, 5, 5], ExtremeMode::Min);
        assert_eq!(ties.query(1, 3).unwrap(), 1);
    }

    #[test]
    fn range_errors() {
        let idx = RangeArgIndex::build(&[1, 2, 3], ExtremeMode::Min);
        assert!(matches!(idx.query(2, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(idx.query(0, 2), Err(Error::OutOfRange { .. })));
        assert!(matches!(idx.query(1, 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn exhaustive_small_arrays() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in 1..=64usize {
            for &vals in &[2u64, 3, 8, 1000] {
                let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..vals)).collect();
                for &mode in &[ExtremeMode::Min, ExtremeMode::Max] {
                    let idx = RangeArgIndex::build(&values, mode);
                    for i in 1..=n {
                        for j in i..=n {
                            assert_eq!(
                                idx.query(i, j).unwrap(),
                                naive(&values, mode, i, j),
                                "n={n} vals={vals} mode={mode:?} [{i},{j}] {values:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_large_with_heavy_ties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..60 {
            let n = rng.gen_range(1..=512usize);
            let vals = *[2u64, 4, 16, 1 << 20].iter().nth(rng.gen_range(0..4)).unwrap();
            let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..vals)).collect();
            for &mode in &[ExtremeMode::Min, ExtremeMode::Max] {
                let idx = RangeArgIndex::build(&values, mode);
                for _ in 0..200 {
                    let a = rng.gen_range(1..=n);
                    let b = rng.gen_range(1..=n);
                    let (i, j) = (a.min(b), a.max(b));
                    assert_eq!(idx.query(i, j).unwrap(), naive(&values, mode, i, j));
                }
            }
        }
    }

    #[test]
    fn long_array_crosses_many_blocks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let n = 100_000;
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..50u64)).collect();
        let idx = RangeArgIndex::build(&values, ExtremeMode::Max);
        for _ in 0..500 {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            let (i, j) = (a.min(b), a.max(b));
            assert_eq!(idx.query(i, j).unwrap(), naive(&values, ExtremeMode::Max, i, j));
        }
    }

    #[test]
    fn space_within_budget() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(39);
        let n = 1usize << 16;
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << 30)).collect();
        let idx = RangeArgIndex::build(&values, ExtremeMode::Min);
        assert!(
            idx.bits_used() <= 8 * n as u64,
            "{} > {}",
            idx.bits_used(),
            8 * n
        );
    }
}
