//! Alternative circle-graph oracle: an endpoint bitvector plus one point
//! grid over the overlap-graph intervals.
//!
//! Chord `v` maps to the interval `[s_v, e_v]` in 1..2n; `S` marks right
//! endpoints, and the grid stores the point `(v, rank_1(S, e_v))`. Degree is
//! two rectangle counts (intervals straddling the left or the right endpoint
//! of `I_v`), so it never enumerates neighbors; neighborhood reports the same
//! two rectangles, whose vertex sets are disjoint by construction.

use crate::diagrams::ChordDiagram;
use crate::error::{Error, Result};
use crate::grid::{PointGrid, Rect};
use crate::primitives::BitVector;
use crate::space::SpaceReport;

#[derive(Debug, Clone)]
pub struct CircleOracle {
    n: usize,
    endpoints: BitVector,
    grid: PointGrid,
}

impl CircleOracle {
    /// Builds from a canonical chord diagram (chords sorted by start point).
    pub fn build(d: &ChordDiagram) -> Result<Self> {
        let n = d.n();
        let mut right = vec![false; 2 * n];
        for &(_, e) in d.pairs() {
            right[e as usize - 1] = true;
        }
        let endpoints = BitVector::from_bits(right);
        let points: Vec<(usize, usize)> = d
            .pairs()
            .iter()
            .enumerate()
            .map(|(i, &(_, e))| (i + 1, endpoints.rank1_0(e as usize)))
            .collect();
        let grid = PointGrid::build(&points)?;
        Ok(CircleOracle {
            n,
            endpoints,
            grid,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Reconstructs `[s_v, e_v]` from the stored structures.
    pub fn interval_of(&self, v: usize) -> Result<(usize, usize)> {
        self.check_vertex(v)?;
        let s = self.endpoints.select0_0(v - 1).expect("left endpoint") + 1;
        let e_rank = self.grid.y_of(v)?.expect("one point per column");
        let e = self.endpoints.select1_0(e_rank - 1).expect("right endpoint") + 1;
        Ok((s, e))
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(false);
        }
        let (su, eu) = self.interval_of(u)?;
        let (sv, ev) = self.interval_of(v)?;
        Ok((su < sv && sv < eu && eu < ev) || (sv < su && su < ev && ev < eu))
    }

    /// The two query rectangles for vertex `v`: intervals starting before
    /// `s_v` and ending inside `I_v`, and intervals starting inside `I_v`
    /// and ending after `e_v`.
    fn rects(&self, v: usize) -> Result<(Rect, Rect)> {
        let (s, e) = self.interval_of(v)?;
        let r0s = s - self.endpoints.rank1_0(s); // rank_0(s_v, S)
        let r1s = self.endpoints.rank1_0(s);
        let r1e = self.endpoints.rank1_0(e);
        let r0e = e - r1e;
        let r1 = Rect::new(1, r0s.saturating_sub(1), r1s + 1, r1e);
        let r2 = Rect::new(v + 1, r0e, r1e + 1, self.n);
        Ok((r1, r2))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        let (r1, r2) = self.rects(v)?;
        Ok(self.grid.count(r1)? + self.grid.count(r2)?)
    }

    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        let (r1, r2) = self.rects(v)?;
        let mut out: Vec<usize> = self.grid.report(r1)?.into_iter().map(|(x, _)| x).collect();
        out.extend(self.grid.report(r2)?.into_iter().map(|(x, _)| x));
        // r1 vertices precede v, r2 vertices follow it; both come sorted
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        Ok(out)
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport::new(vec![
            ("S".to_string(), self.endpoints.bits_used()),
            ("P".to_string(), self.grid.bits_used()),
        ])
    }

    pub fn bits_used(&self) -> u64 {
        self.space_report().total
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::OutOfRange {
                arg: "vertex",
                value: v,
                min: 1,
                max: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn parts(&self) -> (&BitVector, &PointGrid) {
        (&self.endpoints, &self.grid)
    }

    pub(crate) fn from_parts(n: usize, endpoints: BitVector, grid: PointGrid) -> Self {
        CircleOracle {
            n,
            endpoints,
            grid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{generate, naive_matrix, to_polygon_diagram, ClassTag, Diagram};

    fn d4() -> ChordDiagram {
        ChordDiagram::new(vec![(1, 3), (2, 5), (4, 6)]).unwrap()
    }

    #[test]
    fn build_layout() {
        let o = CircleOracle::build(&d4()).unwrap();
        let s: Vec<bool> = (0..6).map(|i| o.endpoints.get(i)).collect();
        assert_eq!(s, [false, false, true, false, true, true]);
        assert_eq!(o.interval_of(2).unwrap(), (2, 5));
        let single = CircleOracle::build(&ChordDiagram::new(vec![(1, 2)]).unwrap()).unwrap();
        assert_eq!(single.interval_of(1).unwrap(), (1, 2));
        assert_eq!(single.degree(1).unwrap(), 0);
    }

    #[test]
    fn d4_queries() {
        let o = CircleOracle::build(&d4()).unwrap();
        assert!(o.adjacent(1, 2).unwrap());
        assert!(!o.adjacent(1, 3).unwrap());
        assert!(!o.adjacent(2, 2).unwrap());
        assert_eq!(o.degree(2).unwrap(), 2);
        assert_eq!(o.degree(1).unwrap(), 1);
        assert_eq!(o.neighborhood(2).unwrap(), vec![1, 3]);
        assert_eq!(o.neighborhood(3).unwrap(), vec![2]);
        assert!(o.degree(0).is_err());
    }

    #[test]
    fn non_crossing_pair() {
        let o = CircleOracle::build(&ChordDiagram::new(vec![(1, 2), (3, 4)]).unwrap()).unwrap();
        assert_eq!(o.neighborhood(1).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..40u64 {
            for n in [1usize, 2, 3, 10, 40] {
                let Diagram::Chord(cd) = generate(ClassTag::Circle, n, 2, seed).unwrap() else {
                    unreachable!()
                };
                let o = CircleOracle::build(&cd).unwrap();
                let p = to_polygon_diagram(&Diagram::Chord(cd)).unwrap();
                let truth = naive_matrix(&p);
                for u in 1..=n {
                    assert_eq!(o.degree(u).unwrap(), truth.degree(u), "n={n} seed={seed} u={u}");
                    assert_eq!(o.neighborhood(u).unwrap(), truth.neighborhood(u));
                    for v in 1..=n {
                        assert_eq!(o.adjacent(u, v).unwrap(), truth.get(u, v));
                    }
                }
            }
        }
    }
}
