//! Orthogonal range counting and reporting over n points on an n×n grid.
//!
//! Points are kept in x-sorted order; a wavelet matrix over their
//! y-coordinates answers counting in O(log n) and reporting in O(log n) per
//! point. A unary column bitvector maps x-coordinate ranges to index ranges,
//! so duplicate x-coordinates are supported in general. The single-coordinate
//! lookups `y_of` / `x_of` require pairwise-distinct x (resp. y) coordinates
//! and report a contract violation otherwise.

use crate::error::{Error, Result};
use crate::primitives::wavelet::WaveletMatrix;
use crate::primitives::BitVector;

#[derive(Debug, Clone)]
pub struct PointGrid {
    n: usize,
    /// Unary column encoding: a 0 per x value followed by a 1 per point.
    cols: BitVector,
    /// y-coordinates (0-based) in x-sorted point order.
    ys: WaveletMatrix,
    distinct_x: bool,
    distinct_y: bool,
}

/// Inclusive rectangle `[x1, x2] × [y1, y2]`; empty if `x1 > x2` or `y1 > y2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl Rect {
    pub fn new(x1: usize, x2: usize, y1: usize, y2: usize) -> Self {
        Rect { x1, x2, y1, y2 }
    }

    pub fn is_empty(&self) -> bool {
        self.x1 > self.x2 || self.y1 > self.y2
    }
}

impl PointGrid {
    /// Builds from `points`; `n` is the point count and the grid side, and
    /// every coordinate must lie in `[1, n]`.
    pub fn build(points: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::validation(0, "a point grid needs at least one point"));
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if x == 0 || x > n || y == 0 || y > n {
                return Err(Error::validation(
                    i + 1,
                    format!("point ({x}, {y}) outside grid [1, {n}]"),
                ));
            }
        }
        let mut sorted: Vec<(usize, usize)> = points.to_vec();
        sorted.sort_unstable();
        let distinct_x = sorted.windows(2).all(|w| w[0].0 != w[1].0);
        let mut ys_seen: Vec<usize> = sorted.iter().map(|&(_, y)| y).collect();
        ys_seen.sort_unstable();
        let distinct_y = ys_seen.windows(2).all(|w| w[0] != w[1]);

        let mut bits = Vec::with_capacity(2 * n);
        let mut it = sorted.iter().peekable();
        for x in 1..=n {
            bits.push(false);
            while it.peek().map_or(false, |&&(px, _)| px == x) {
                bits.push(true);
                it.next();
            }
        }
        let cols = BitVector::from_bits(bits);
        let yvals: Vec<u64> = sorted.iter().map(|&(_, y)| (y - 1) as u64).collect();
        let ys = WaveletMatrix::build(&yvals, n as u64);
        Ok(PointGrid {
            n,
            cols,
            ys,
            distinct_x,
            distinct_y,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Point-index range (0-based, half-open) for x-coordinates `[x1, x2]`.
    fn index_range(&self, x1: usize, x2: usize) -> (usize, usize) {
        // points with x < x1: the x1-th zero sits after exactly that many ones
        let lo = self.cols.select0_0(x1 - 1).expect("column zero") - (x1 - 1);
        let hi = if x2 < self.n {
            self.cols.select0_0(x2).expect("column zero") - x2
        } else {
            self.n
        };
        (lo, hi)
    }

    fn check_rect(&self, r: &Rect) -> Result<()> {
        if r.x1 == 0 || r.y1 == 0 || r.x2 > self.n || r.y2 > self.n {
            return Err(Error::OutOfRange {
                arg: "rect",
                value: r.x2.max(r.y2).max(if r.x1 == 0 || r.y1 == 0 { 0 } else { 1 }),
                min: 1,
                max: self.n,
            });
        }
        Ok(())
    }

    /// Number of stored points inside `r`.
    pub fn count(&self, r: Rect) -> Result<usize> {
        // empty rectangles are fine as long as the finite sides are sane
        if r.is_empty() && (r.x1 > r.x2 || r.x2 <= self.n) && (r.y1 > r.y2 || r.y2 <= self.n) {
            return Ok(0);
        }
        self.check_rect(&r)?;
        if r.is_empty() {
            return Ok(0);
        }
        let (lo, hi) = self.index_range(r.x1, r.x2);
        Ok(self.ys.count_less(lo, hi, r.y2 as u64) - self.ys.count_less(lo, hi, (r.y1 - 1) as u64))
    }

    /// Points inside `r`, sorted by x then y.
    pub fn report(&self, r: Rect) -> Result<Vec<(usize, usize)>> {
        if r.is_empty() && (r.x1 > r.x2 || r.x2 <= self.n) && (r.y1 > r.y2 || r.y2 <= self.n) {
            return Ok(Vec::new());
        }
        self.check_rect(&r)?;
        if r.is_empty() {
            return Ok(Vec::new());
        }
        let (lo, hi) = self.index_range(r.x1, r.x2);
        let mut pts: Vec<(usize, usize)> = self
            .ys
            .range_report(lo, hi, (r.y1 - 1) as u64, (r.y2 - 1) as u64)
            .into_iter()
            .map(|(idx, y)| (self.x_of_index(idx), y as usize + 1))
            .collect();
        pts.sort_unstable();
        Ok(pts)
    }

    /// x-coordinate of the point stored at 0-based x-sorted index `idx`.
    fn x_of_index(&self, idx: usize) -> usize {
        let pos = self.cols.select1_0(idx).expect("point bit");
        pos - idx // zeros before the point's bit
    }

    /// The unique `y` with `(x, y)` stored, for grids with distinct x.
    pub fn y_of(&self, x: usize) -> Result<Option<usize>> {
        if !self.distinct_x {
            return Err(Error::Contract(
                "y_of requires pairwise-distinct x coordinates".into(),
            ));
        }
        if x == 0 || x > self.n {
            return Err(Error::OutOfRange {
                arg: "x",
                value: x,
                min: 1,
                max: self.n,
            });
        }
        let (lo, hi) = self.index_range(x, x);
        Ok((lo < hi).then(|| self.ys.access(lo) as usize + 1))
    }

    /// The unique `x` with `(x, y)` stored, for grids with distinct y.
    pub fn x_of(&self, y: usize) -> Result<Option<usize>> {
        if !self.distinct_y {
            return Err(Error::Contract(
                "x_of requires pairwise-distinct y coordinates".into(),
            ));
        }
        if y == 0 || y > self.n {
            return Err(Error::OutOfRange {
                arg: "y",
                value: y,
                min: 1,
                max: self.n,
            });
        }
        Ok(self
            .ys
            .select((y - 1) as u64, 0)
            .map(|idx| self.x_of_index(idx)))
    }

    pub fn bits_used(&self) -> u64 {
        self.cols.bits_used() + self.ys.bits_used()
    }

    pub(crate) fn parts(&self) -> (&BitVector, &WaveletMatrix, bool, bool) {
        (&self.cols, &self.ys, self.distinct_x, self.distinct_y)
    }

    pub(crate) fn from_parts(
        n: usize,
        cols: BitVector,
        ys: WaveletMatrix,
        distinct_x: bool,
        distinct_y: bool,
    ) -> Self {
        PointGrid {
            n,
            cols,
            ys,
            distinct_x,
            distinct_y,
        }
    }
}
