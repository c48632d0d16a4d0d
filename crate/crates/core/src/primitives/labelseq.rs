//! Sequence over a bounded alphabet with rank/select/access.
//!
//! A checked, 1-based wrapper over the wavelet matrix. Index conventions
//! match [`BitVector`](super::BitVector): `rank(sym, i)` counts within the
//! first `i` symbols, `select(sym, j)` is the position of the j-th occurrence.

use super::wavelet::WaveletMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LabelSequence {
    wm: WaveletMatrix,
}

impl LabelSequence {
    /// Builds from `symbols` over the alphabet `{0, .., sigma-1}`.
    pub fn build(symbols: &[u64], sigma: u64) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::validation(0, "alphabet size must be at least 1"));
        }
        if let Some(pos) = symbols.iter().position(|&s| s >= sigma) {
            return Err(Error::validation(
                0,
                format!(
                    "symbol {} at position {} exceeds alphabet size {}",
                    symbols[pos],
                    pos + 1,
                    sigma
                ),
            ));
        }
        Ok(LabelSequence {
            wm: WaveletMatrix::build(symbols, sigma),
        })
    }

    pub fn len(&self) -> usize {
        self.wm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wm.len() == 0
    }

    pub fn sigma(&self) -> u64 {
        self.wm.sigma()
    }

    /// Occurrences of `sym` among the first `i` symbols; `rank(sym, 0) = 0`.
    pub fn rank(&self, sym: u64, i: usize) -> Result<usize> {
        self.check_symbol(sym)?;
        if i > self.len() {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 0,
                max: self.len(),
            });
        }
        Ok(self.wm.rank(sym, i))
    }

    /// 1-based position of the j-th occurrence of `sym`.
    pub fn select(&self, sym: u64, j: usize) -> Result<usize> {
        self.check_symbol(sym)?;
        if j == 0 {
            return Err(Error::OutOfRange {
                arg: "j",
                value: 0,
                min: 1,
                max: self.len().max(1),
            });
        }
        self.wm.select(sym, j - 1).map(|p| p + 1).ok_or_else(|| {
            Error::NotFound {
                index: j,
                available: self.wm.rank(sym, self.len()),
            }
        })
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 1,
                max: self.len(),
            });
        }
        Ok(self.wm.access(i - 1))
    }

    pub fn bits_used(&self) -> u64 {
        self.wm.bits_used()
    }

    fn check_symbol(&self, sym: u64) -> Result<()> {
        if sym >= self.sigma() {
            return Err(Error::OutOfRange {
                arg: "symbol",
                value: sym as usize,
                min: 0,
                max: self.sigma() as usize - 1,
            });
        }
        Ok(())
    }

    pub(crate) fn matrix(&self) -> &WaveletMatrix {
        &self.wm
    }

    pub(crate) fn from_matrix(wm: WaveletMatrix) -> Self {
        LabelSequence { wm }
    }
}
