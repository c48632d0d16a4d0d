//! Wavelet matrix over an integer alphabet.
//!
//! One bitvector per bit of the alphabet width, most significant bit first,
//! with the classic stable zero/one partition between levels. Backs both the
//! bounded-alphabet sequence and the point grid; everything here is 0-based
//! and unchecked, the wrappers add bounds and error contracts.

use super::bitvector::BitVector;

#[derive(Debug, Clone)]
pub(crate) struct WaveletMatrix {
    len: usize,
    sigma: u64,
    levels: Vec<BitVector>,
    zeros: Vec<usize>,
}

impl WaveletMatrix {
    /// All `symbols` must be `< sigma` (checked by callers).
    pub fn build(symbols: &[u64], sigma: u64) -> Self {
        let len = symbols.len();
        let nlevels = bits_for(sigma);
        let mut levels = Vec::with_capacity(nlevels);
        let mut zeros = Vec::with_capacity(nlevels);
        let mut cur: Vec<u64> = symbols.to_vec();
        for l in 0..nlevels {
            let shift = nlevels - 1 - l;
            let bv = BitVector::from_bits(cur.iter().map(|&s| s >> shift & 1 == 1));
            let mut next = Vec::with_capacity(len);
            for &s in cur.iter().filter(|&&s| s >> shift & 1 == 0) {
                next.push(s);
            }
            let z = next.len();
            for &s in cur.iter().filter(|&&s| s >> shift & 1 == 1) {
                next.push(s);
            }
            levels.push(bv);
            zeros.push(z);
            cur = next;
        }
        WaveletMatrix {
            len,
            sigma,
            levels,
            zeros,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn access(&self, mut p: usize) -> u64 {
        debug_assert!(p < self.len);
        let mut val = 0u64;
        for (l, bv) in self.levels.iter().enumerate() {
            let shift = self.levels.len() - 1 - l;
            if bv.get(p) {
                val |= 1 << shift;
                p = self.zeros[l] + bv.rank1_0(p);
            } else {
                p = bv.rank0_0(p);
            }
        }
        val
    }

    /// Occurrences of `sym` in positions `[0, p)`.
    pub fn rank(&self, sym: u64, p: usize) -> usize {
        debug_assert!(p <= self.len && sym < self.sigma);
        if self.levels.is_empty() {
            return p; // sigma == 1, every symbol is 0
        }
        let (mut s, mut e) = (0usize, p);
        for (l, bv) in self.levels.iter().enumerate() {
            let shift = self.levels.len() - 1 - l;
            if sym >> shift & 1 == 1 {
                s = self.zeros[l] + bv.rank1_0(s);
                e = self.zeros[l] + bv.rank1_0(e);
            } else {
                s = bv.rank0_0(s);
                e = bv.rank0_0(e);
            }
        }
        e - s
    }

    /// 0-based position of the (k+1)-th occurrence of `sym`, or None.
    pub fn select(&self, sym: u64, k: usize) -> Option<usize> {
        debug_assert!(sym < self.sigma);
        if self.levels.is_empty() {
            return (k < self.len).then_some(k);
        }
        if k >= self.rank(sym, self.len) {
            return None;
        }
        let mut s = 0usize;
        for (l, bv) in self.levels.iter().enumerate() {
            let shift = self.levels.len() - 1 - l;
            if sym >> shift & 1 == 1 {
                s = self.zeros[l] + bv.rank1_0(s);
            } else {
                s = bv.rank0_0(s);
            }
        }
        let mut p = s + k;
        for (l, bv) in self.levels.iter().enumerate().rev() {
            let shift = self.levels.len() - 1 - l;
            p = if sym >> shift & 1 == 1 {
                bv.select1_0(p - self.zeros[l]).expect("wavelet ascent")
            } else {
                bv.select0_0(p).expect("wavelet ascent")
            };
        }
        Some(p)
    }

    /// One-descent lookup at position `p`: the symbol there, how many equal
    /// symbols precede it, and the symbol's contiguous bucket `[start, end)`
    /// at the bottom level. `position_of(start + k)` maps the k-th
    /// occurrence back to its original position with an ascent only.
    pub fn locate(&self, mut p: usize) -> (u64, usize, usize, usize) {
        debug_assert!(p < self.len);
        if self.levels.is_empty() {
            return (0, p, 0, self.len);
        }
        let mut sym = 0u64;
        let (mut s, mut e) = (0usize, self.len);
        for (l, bv) in self.levels.iter().enumerate() {
            let shift = self.levels.len() - 1 - l;
            if bv.get(p) {
                sym |= 1 << shift;
                p = self.zeros[l] + bv.rank1_0(p);
                s = self.zeros[l] + bv.rank1_0(s);
                e = self.zeros[l] + bv.rank1_0(e);
            } else {
                p = bv.rank0_0(p);
                s = bv.rank0_0(s);
                e = bv.rank0_0(e);
            }
        }
        (sym, p - s, s, e)
    }

    /// Bottom-level bucket `[start, end)` of `sym`.
    pub fn bucket(&self, sym: u64) -> (usize, usize) {
        debug_assert!(sym < self.sigma);
        let (mut s, mut e) = (0usize, self.len);
        for (l, bv) in self.levels.iter().enumerate() {
            let shift = self.levels.len() - 1 - l;
            if sym >> shift & 1 == 1 {
                s = self.zeros[l] + bv.rank1_0(s);
                e = self.zeros[l] + bv.rank1_0(e);
            } else {
                s = bv.rank0_0(s);
                e = bv.rank0_0(e);
            }
        }
        (s, e)
    }

    /// Original position of the element at bottom-level position `pos`.
    pub fn position_of(&self, pos: usize) -> usize {
        self.index_at_top(self.levels.len(), pos)
    }

    /// Values `< bound` among positions `[l, r)`.
    pub fn count_less(&self, mut l: usize, mut r: usize, bound: u64) -> usize {
        debug_assert!(l <= r && r <= self.len);
        if bound == 0 || l == r {
            return 0;
        }
        let nl = self.levels.len();
        if bound >= (1u64 << nl.min(63)) && nl < 64 {
            return r - l;
        }
        let mut cnt = 0usize;
        for (lv, bv) in self.levels.iter().enumerate() {
            let shift = nl - 1 - lv;
            let l0 = bv.rank0_0(l);
            let r0 = bv.rank0_0(r);
            if bound >> shift & 1 == 1 {
                cnt += r0 - l0;
                l = self.zeros[lv] + (l - l0);
                r = self.zeros[lv] + (r - r0);
            } else {
                l = l0;
                r = r0;
            }
        }
        cnt
    }

    /// All `(original index, value)` pairs with position in `[l, r)` and
    /// value in `[y_lo, y_hi]`, unordered.
    pub fn range_report(&self, l: usize, r: usize, y_lo: u64, y_hi: u64) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        if l >= r || y_lo > y_hi {
            return out;
        }
        if self.levels.is_empty() {
            if y_lo == 0 {
                out.extend((l..r).map(|p| (p, 0)));
            }
            return out;
        }
        let nl = self.levels.len();
        let mut stack = vec![(0usize, l, r, 0u64)];
        while let Some((lv, l, r, base)) = stack.pop() {
            if l >= r {
                continue;
            }
            let width = 1u64 << (nl - lv).min(63);
            let node_hi = base + (width - 1);
            if node_hi < y_lo || base > y_hi {
                continue;
            }
            if base >= y_lo && node_hi <= y_hi {
                for p in l..r {
                    out.push((self.index_at_top(lv, p), self.value_below(lv, p, base)));
                }
                continue;
            }
            debug_assert!(lv < nl);
            let bv = &self.levels[lv];
            let l0 = bv.rank0_0(l);
            let r0 = bv.rank0_0(r);
            stack.push((lv + 1, l0, r0, base));
            stack.push((
                lv + 1,
                self.zeros[lv] + (l - l0),
                self.zeros[lv] + (r - r0),
                base + width / 2,
            ));
        }
        out
    }

    fn value_below(&self, level: usize, mut p: usize, mut base: u64) -> u64 {
        let nl = self.levels.len();
        for lv in level..nl {
            let bv = &self.levels[lv];
            if bv.get(p) {
                base |= 1 << (nl - 1 - lv);
                p = self.zeros[lv] + bv.rank1_0(p);
            } else {
                p = bv.rank0_0(p);
            }
        }
        base
    }

    fn index_at_top(&self, level: usize, mut p: usize) -> usize {
        for lv in (0..level).rev() {
            let bv = &self.levels[lv];
            p = if p >= self.zeros[lv] {
                bv.select1_0(p - self.zeros[lv]).expect("wavelet ascent")
            } else {
                bv.select0_0(p).expect("wavelet ascent")
            };
        }
        p
    }

    pub fn bits_used(&self) -> u64 {
        self.levels.iter().map(|b| b.bits_used()).sum::<u64>() + 64 * self.zeros.len() as u64
    }

    pub fn level_bitvectors(&self) -> &[BitVector] {
        &self.levels
    }

    pub fn from_parts(len: usize, sigma: u64, levels: Vec<BitVector>) -> Self {
        let zeros = levels.iter().map(|bv| bv.count(false)).collect();
        WaveletMatrix {
            len,
            sigma,
            levels,
            zeros,
        }
    }
}

pub(crate) fn bits_for(sigma: u64) -> usize {
    if sigma <= 1 {
        0
    } else {
        (64 - (sigma - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_naive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let sigma = rng.gen_range(1..=20u64);
            let len = rng.gen_range(0..300usize);
            let syms: Vec<u64> = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
            let wm = WaveletMatrix::build(&syms, sigma);
            for p in 0..len {
                assert_eq!(wm.access(p), syms[p]);
            }
            for sym in 0..sigma {
                for p in 0..=len {
                    let naive = syms[..p].iter().filter(|&&s| s == sym).count();
                    assert_eq!(wm.rank(sym, p), naive, "rank({sym},{p})");
                }
                let occs: Vec<usize> = (0..len).filter(|&p| syms[p] == sym).collect();
                for (k, &p) in occs.iter().enumerate() {
                    assert_eq!(wm.select(sym, k), Some(p));
                }
                assert_eq!(wm.select(sym, occs.len()), None);
            }
        }
    }

    #[test]
    fn count_and_report_match_naive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let sigma = rng.gen_range(1..=33u64);
            let len = rng.gen_range(0..200usize);
            let syms: Vec<u64> = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
            let wm = WaveletMatrix::build(&syms, sigma);
            for _ in 0..30 {
                let a = rng.gen_range(0..=len);
                let b = rng.gen_range(0..=len);
                let (l, r) = (a.min(b), a.max(b));
                let bound = rng.gen_range(0..=sigma + 2);
                let naive = syms[l..r].iter().filter(|&&s| s < bound).count();
                assert_eq!(wm.count_less(l, r, bound), naive);
                let y_lo = rng.gen_range(0..sigma.max(1));
                let y_hi = rng.gen_range(0..sigma.max(1));
                let mut got = wm.range_report(l, r, y_lo, y_hi);
                got.sort();
                let mut want: Vec<(usize, u64)> = (l..r)
                    .filter(|&p| syms[p] >= y_lo && syms[p] <= y_hi)
                    .map(|p| (p, syms[p]))
                    .collect();
                want.sort();
                assert_eq!(got, want);
            }
        }
    }
}
