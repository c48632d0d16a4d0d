//! The unified succinct navigational oracle for intersection graphs of
//! generalized polygons on a circle.
//!
//! The corner-string S is never stored. A bitvector `F` marks first
//! occurrences, the sequence `S'` keeps the remaining labels, and `A` flags
//! arc sides; access/rank/select over the virtual S are recovered from those
//! three. Five range-extremum indexes over the virtual successor/predecessor
//! arrays (`N`, `N_a`, `P_a`, `N_c`, `P_c`) drive the navigation queries:
//! adjacency is a merge scan of the two polygons' corners, and neighborhood
//! enumeration recursively splits ranges at the extremal entry while the
//! threshold condition holds, so the work stays proportional to the output.
//!
//! Wrap chords of non-query polygons are invisible to `N_c`/`P_c` (last
//! sides are zeroed there by definition), so the enumeration additionally
//! walks last/first occurrences inside each span and tests those candidates'
//! wrap sides geometrically.

use crate::diagrams::{sides_intersect, ClassTag, PolygonDiagram, Side, SideKind};
use crate::error::{Error, Result};
use crate::primitives::{BitVector, ExtremeMode, LabelSequence, RangeArgIndex};
use crate::space::SpaceReport;

/// Sentinel-free view of one side's span of corner-string positions;
/// a wrap span covers `[start, N]` followed by `[1, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircularSpan {
    pub start: usize,
    pub end: usize,
    pub wraps: bool,
}

/// The five virtual arrays backed by range-extremum indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VirtualArray {
    /// Other endpoint of the side starting here; infinity on last sides.
    Next,
    /// Same, restricted to arc sides (0 on chords, infinity on last arcs).
    NextArc,
    /// Start of the arc ending here (0 when that arc is the wrap side,
    /// infinity when the ending side is a chord).
    PrevArc,
    /// Other endpoint of a non-last chord starting here, else 0.
    NextChord,
    /// Start of the non-wrap chord ending here, else infinity.
    PrevChord,
}

/// Build-time options.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Store per-vertex degrees for O(1) degree queries.
    pub explicit_degrees: bool,
    /// For interval and circular-arc inputs the chord arrays are forced to
    /// 0 / infinity so the query algorithms never output via a chord.
    pub impl_class: ClassTag,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            explicit_degrees: false,
            impl_class: ClassTag::GenericPolygon,
        }
    }
}

/// Reusable per-call mark set for neighborhood deduplication. The two-pass
/// cleanup leaves it all-zero after every call, so one scratch can serve any
/// number of sequential queries without reinitialization.
#[derive(Debug, Default)]
pub struct MarkScratch {
    words: Vec<u64>,
}

impl MarkScratch {
    pub fn new() -> Self {
        MarkScratch::default()
    }

    fn ensure(&mut self, n: usize) {
        let need = n.div_ceil(64);
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
    }

    #[inline]
    fn test_and_set(&mut self, v: usize) -> bool {
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    fn clear(&mut self, v: usize) {
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        self.words[w] &= !(1u64 << b);
    }

    pub fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

#[derive(Debug, Clone)]
pub struct PolygonOracle {
    n: usize,
    total: usize,
    max_corners: usize,
    impl_class: ClassTag,
    first: BitVector,
    rest: LabelSequence,
    arcs: BitVector,
    idx_next: RangeArgIndex,
    idx_next_arc: RangeArgIndex,
    idx_next_chord: RangeArgIndex,
    idx_prev_arc: RangeArgIndex,
    idx_prev_chord: RangeArgIndex,
    degrees: Option<Vec<u32>>,
    /// Any arc side at all; when false the arc-array recursions are no-ops.
    has_arcs: bool,
    /// False when every polygon is a 2-corner all-chord: then each wrap
    /// side duplicates a chord the chord arrays already see, and the
    /// wrap-candidate walk can be skipped wholesale.
    wrap_sides_relevant: bool,
}

impl PolygonOracle {
    pub fn build(d: &PolygonDiagram, opts: BuildOptions) -> Result<Self> {
        let n = d.n();
        let total = d.total_corners();
        let forced = matches!(opts.impl_class, ClassTag::Interval | ClassTag::CircularArc);
        let inf = (total + 1) as u64;

        let mut occ: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, &(label, _)) in d.corners().iter().enumerate() {
            occ[label as usize - 1].push(i as u32 + 1);
        }
        let max_corners = occ.iter().map(|o| o.len()).max().unwrap_or(0);

        let mut first_bits = vec![false; total];
        let mut rest_syms = Vec::with_capacity(total - n);
        let mut arc_bits = vec![false; total];
        let mut arc_bits_any = false;
        let mut seen = vec![0u32; n];
        for (i, &(label, kind)) in d.corners().iter().enumerate() {
            let u = label as usize - 1;
            if seen[u] == 0 {
                first_bits[i] = true;
            } else {
                rest_syms.push(label as u64 - 1);
            }
            seen[u] += 1;
            arc_bits[i] = kind == SideKind::Arc;
            arc_bits_any |= arc_bits[i];
        }

        // transient materialization of the virtual arrays
        let mut arr_next = vec![0u64; total];
        let mut arr_next_arc = vec![0u64; total];
        let mut arr_prev_arc = vec![0u64; total];
        let mut arr_next_chord = vec![0u64; total];
        let mut arr_prev_chord = vec![0u64; total];
        for positions in &occ {
            let du = positions.len();
            for (rk0, &pos) in positions.iter().enumerate() {
                let i = pos as usize - 1;
                let is_arc = arc_bits[i];
                let next = if rk0 + 1 < du {
                    positions[rk0 + 1] as u64
                } else {
                    inf
                };
                arr_next[i] = next;
                arr_next_arc[i] = if is_arc { next } else { 0 };
                arr_next_chord[i] = if !is_arc && rk0 + 1 < du && !forced {
                    next
                } else {
                    0
                };
                let prev_start = if rk0 > 0 {
                    positions[rk0 - 1]
                } else {
                    positions[du - 1]
                };
                let ending_arc = arc_bits[prev_start as usize - 1];
                arr_prev_arc[i] = if ending_arc {
                    if rk0 > 0 {
                        prev_start as u64
                    } else {
                        0
                    }
                } else {
                    inf
                };
                arr_prev_chord[i] = if !ending_arc && rk0 > 0 && !forced {
                    prev_start as u64
                } else {
                    inf
                };
            }
        }

        let mut oracle = PolygonOracle {
            n,
            total,
            max_corners,
            impl_class: opts.impl_class,
            first: BitVector::from_bits(first_bits),
            rest: LabelSequence::build(&rest_syms, n as u64)?,
            arcs: BitVector::from_bits(arc_bits),
            idx_next: RangeArgIndex::build(&arr_next, ExtremeMode::Max),
            idx_next_arc: RangeArgIndex::build(&arr_next_arc, ExtremeMode::Max),
            idx_next_chord: RangeArgIndex::build(&arr_next_chord, ExtremeMode::Max),
            idx_prev_arc: RangeArgIndex::build(&arr_prev_arc, ExtremeMode::Min),
            idx_prev_chord: RangeArgIndex::build(&arr_prev_chord, ExtremeMode::Min),
            degrees: None,
            has_arcs: arc_bits_any,
            wrap_sides_relevant: arc_bits_any || total != 2 * n,
        };
        if opts.explicit_degrees {
            let mut scratch = MarkScratch::new();
            let mut degs = Vec::with_capacity(n);
            for u in 1..=n {
                degs.push(oracle.neighborhood_with(u, &mut scratch)?.len() as u32);
            }
            oracle.degrees = Some(degs);
        }
        Ok(oracle)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total corner count N.
    pub fn total_corners(&self) -> usize {
        self.total
    }

    /// Largest corner count among the polygons.
    pub fn max_corners(&self) -> usize {
        self.max_corners
    }

    pub fn impl_class(&self) -> ClassTag {
        self.impl_class
    }

    pub fn has_explicit_degrees(&self) -> bool {
        self.degrees.is_some()
    }

    // ---- virtual corner-string access ----

    #[inline]
    fn label_at(&self, i: usize) -> usize {
        if self.first.get(i - 1) {
            self.first.rank1_0(i)
        } else {
            self.rest.matrix().access(self.first.rank0_0(i) - 1) as usize + 1
        }
    }

    #[inline]
    fn occ_rank(&self, alpha: usize, i: usize) -> usize {
        let in_rest = self.rest.matrix().rank(alpha as u64 - 1, self.first.rank0_0(i));
        let first_pos = self.first.select1_0(alpha - 1).expect("label present") + 1;
        in_rest + usize::from(first_pos <= i)
    }

    #[inline]
    fn occ_select(&self, alpha: usize, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        if j == 1 {
            return self.first.select1_0(alpha - 1).map(|p| p + 1);
        }
        let rest_pos = self.rest.matrix().select(alpha as u64 - 1, j - 2)?;
        self.first.select0_0(rest_pos).map(|p| p + 1)
    }

    #[inline]
    fn degree_of_label(&self, alpha: usize) -> usize {
        self.occ_rank(alpha, self.total)
    }

    /// Label of the virtual corner string at position `i`.
    pub fn s_access(&self, i: usize) -> Result<usize> {
        self.check_pos(i)?;
        Ok(self.label_at(i))
    }

    /// Occurrences of label `alpha` among the first `i` corners.
    pub fn s_rank(&self, alpha: usize, i: usize) -> Result<usize> {
        self.check_vertex(alpha)?;
        if i > self.total {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 0,
                max: self.total,
            });
        }
        if i == 0 {
            return Ok(0);
        }
        Ok(self.occ_rank(alpha, i))
    }

    /// Position of the j-th occurrence of label `alpha`.
    pub fn s_select(&self, alpha: usize, j: usize) -> Result<usize> {
        self.check_vertex(alpha)?;
        if j == 0 {
            return Err(Error::OutOfRange {
                arg: "j",
                value: 0,
                min: 1,
                max: self.total,
            });
        }
        self.occ_select(alpha, j).ok_or_else(|| Error::NotFound {
            index: j,
            available: self.degree_of_label(alpha),
        })
    }

    /// Corner count d_u of polygon `u`.
    pub fn side_count(&self, u: usize) -> Result<usize> {
        self.check_vertex(u)?;
        Ok(self.degree_of_label(u))
    }

    /// Span of the i-th side of polygon `u`; the last side wraps.
    pub fn interval(&self, u: usize, i: usize) -> Result<CircularSpan> {
        self.check_vertex(u)?;
        let d = self.degree_of_label(u);
        if i == 0 || i > d {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 1,
                max: d,
            });
        }
        let start = self.occ_select(u, i).expect("occurrence in range");
        if i < d {
            let end = self.occ_select(u, i + 1).expect("occurrence in range");
            Ok(CircularSpan {
                start,
                end,
                wraps: false,
            })
        } else {
            let end = self.occ_select(u, 1).expect("occurrence in range");
            Ok(CircularSpan {
                start,
                end,
                wraps: true,
            })
        }
    }

    /// Entry `i` of a virtual array, recomputed from F, S' and A.
    /// 0 stays 0 and infinity is encoded as N+1.
    pub fn virt(&self, which: VirtualArray, i: usize) -> Result<u64> {
        self.check_pos(i)?;
        Ok(self.virt_value(which, i))
    }

    fn virt_value(&self, which: VirtualArray, i: usize) -> u64 {
        self.virt_with_label(which, i).0
    }

    /// Position `i`'s label, 1-based occurrence index, and the label's
    /// bottom-level bucket in the S' wavelet matrix. One descent; any
    /// occurrence of the same label is then an ascent away.
    #[inline]
    fn corner_info(&self, i: usize) -> (usize, usize, usize, usize) {
        if self.first.get(i - 1) {
            let label = self.first.rank1_0(i);
            let (s, e) = self.rest.matrix().bucket(label as u64 - 1);
            (label, 1, s, e)
        } else {
            let p0 = self.first.rank0_0(i) - 1;
            let (sym, k, s, e) = self.rest.matrix().locate(p0);
            (sym as usize + 1, k + 2, s, e)
        }
    }

    /// Corner-string position of occurrence `j` of `label`, given the
    /// label's S' bucket; ascent only for `j >= 2`.
    #[inline]
    fn occ_from_bucket(&self, label: usize, bucket: (usize, usize), j: usize) -> Option<usize> {
        if j == 1 {
            return self.first.select1_0(label - 1).map(|p| p + 1);
        }
        let idx = bucket.0 + (j - 2);
        if idx >= bucket.1 {
            return None;
        }
        let sp_pos = self.rest.matrix().position_of(idx);
        self.first.select0_0(sp_pos).map(|p| p + 1)
    }

    /// Virtual-array entry plus the label at `i`. Entries that are sentinels
    /// by the arc flag alone skip the descent and report label 0 (such
    /// entries are never emitted by the threshold recursions).
    fn virt_with_label(&self, which: VirtualArray, i: usize) -> (u64, usize) {
        let inf = (self.total + 1) as u64;
        let forced = matches!(self.impl_class, ClassTag::Interval | ClassTag::CircularArc);
        match which {
            VirtualArray::Next => {
                let (u, rk, s, e) = self.corner_info(i);
                let val = self
                    .occ_from_bucket(u, (s, e), rk + 1)
                    .map_or(inf, |p| p as u64);
                (val, u)
            }
            VirtualArray::NextArc => {
                if !self.arcs.get(i - 1) {
                    return (0, 0);
                }
                let (u, rk, s, e) = self.corner_info(i);
                let val = self
                    .occ_from_bucket(u, (s, e), rk + 1)
                    .map_or(inf, |p| p as u64);
                (val, u)
            }
            VirtualArray::NextChord => {
                if forced || self.arcs.get(i - 1) {
                    return (0, 0);
                }
                let (u, rk, s, e) = self.corner_info(i);
                let val = self
                    .occ_from_bucket(u, (s, e), rk + 1)
                    .map_or(0, |p| p as u64);
                (val, u)
            }
            VirtualArray::PrevArc => {
                let (u, rk, s, e) = self.corner_info(i);
                let prev_start = if rk > 1 {
                    self.occ_from_bucket(u, (s, e), rk - 1)
                        .expect("previous occurrence")
                } else {
                    // wrap side: it starts at the last occurrence
                    let sp_pos = self.rest.matrix().position_of(e - 1);
                    self.first.select0_0(sp_pos).expect("last occurrence") + 1
                };
                if self.arcs.get(prev_start - 1) {
                    (if rk > 1 { prev_start as u64 } else { 0 }, u)
                } else {
                    (inf, u)
                }
            }
            VirtualArray::PrevChord => {
                if forced {
                    return (inf, 0);
                }
                let (u, rk, s, e) = self.corner_info(i);
                if rk == 1 {
                    // the side ending at a first occurrence is the wrap side
                    return (inf, u);
                }
                let prev_start = self
                    .occ_from_bucket(u, (s, e), rk - 1)
                    .expect("previous occurrence");
                if !self.arcs.get(prev_start - 1) {
                    (prev_start as u64, u)
                } else {
                    (inf, u)
                }
            }
        }
    }

    fn index_for(&self, which: VirtualArray) -> &RangeArgIndex {
        match which {
            VirtualArray::Next => &self.idx_next,
            VirtualArray::NextArc => &self.idx_next_arc,
            VirtualArray::NextChord => &self.idx_next_chord,
            VirtualArray::PrevArc => &self.idx_prev_arc,
            VirtualArray::PrevChord => &self.idx_prev_chord,
        }
    }

    // ---- navigation queries ----

    /// 1-based corner positions of polygon `u`, clockwise.
    fn corner_positions(&self, u: usize) -> Vec<usize> {
        let d = self.degree_of_label(u);
        (1..=d)
            .map(|j| self.occ_select(u, j).expect("occurrence in range"))
            .collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(false);
        }
        let cu = self.corner_positions(u);
        let cv = self.corner_positions(v);
        Ok(self.scan_half(&cu, &cv) || self.scan_half(&cv, &cu))
    }

    /// Merge scan: walk `b`'s corners in clockwise order, keep the side of
    /// `a` covering each, and test the two sides incident to the corner
    /// against it. Arc cover means the corner lies on `a`'s boundary.
    fn scan_half(&self, a: &[usize], b: &[usize]) -> bool {
        let da = a.len();
        let db = b.len();
        let mut t = 0usize; // a-corners strictly before the current b-corner
        for (i, &m) in b.iter().enumerate() {
            while t < da && a[t] < m {
                t += 1;
            }
            let (start, end) = if t == 0 || t == da {
                (a[da - 1], a[0])
            } else {
                (a[t - 1], a[t])
            };
            if self.arcs.get(start - 1) {
                return true; // corner of b lies on an arc of a
            }
            let cover = Side {
                kind: SideKind::Chord,
                start,
                end,
            };
            let next = b[(i + 1) % db];
            let prev = b[(i + db - 1) % db];
            let side_from = Side {
                kind: self.kind_at(m),
                start: m,
                end: next,
            };
            let side_to = Side {
                kind: self.kind_at(prev),
                start: prev,
                end: m,
            };
            if sides_intersect(&cover, &side_from) || sides_intersect(&cover, &side_to) {
                return true;
            }
        }
        false
    }

    #[inline]
    fn kind_at(&self, pos: usize) -> SideKind {
        if self.arcs.get(pos - 1) {
            SideKind::Arc
        } else {
            SideKind::Chord
        }
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        self.check_vertex(u)?;
        if let Some(degs) = &self.degrees {
            return Ok(degs[u - 1] as usize);
        }
        Ok(self.neighborhood(u)?.len())
    }

    pub fn neighborhood(&self, u: usize) -> Result<Vec<usize>> {
        let mut scratch = MarkScratch::new();
        self.neighborhood_with(u, &mut scratch)
    }

    /// Neighborhood with caller-provided scratch. The first pass marks and
    /// collects, the second re-runs the same enumeration clearing marks, so
    /// the scratch is all-zero again on return.
    pub fn neighborhood_with(&self, u: usize, scratch: &mut MarkScratch) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        scratch.ensure(self.n);
        let mut out = Vec::new();
        self.enumerate(u, &mut |w| {
            if scratch.test_and_set(w) {
                out.push(w);
            }
        });
        self.enumerate(u, &mut |w| scratch.clear(w));
        debug_assert!(scratch.is_all_zero());
        out.sort_unstable();
        Ok(out)
    }

    /// Runs the per-side enumeration, invoking `emit` for every candidate
    /// neighbor (possibly repeatedly).
    fn enumerate(&self, u: usize, emit: &mut dyn FnMut(usize)) {
        let positions = self.corner_positions(u);
        let d = positions.len();
        let all_chord_pair = d == 2
            && !self.arcs.get(positions[0] - 1)
            && !self.arcs.get(positions[1] - 1);
        let forced = matches!(self.impl_class, ClassTag::Interval | ClassTag::CircularArc);
        let wrap_walk = !forced && self.wrap_sides_relevant;
        let nn = self.total;
        let mut ranges: Vec<(usize, usize)> = Vec::new();

        let handle = |w: usize, f: &mut dyn FnMut(usize)| {
            if w != u {
                f(w);
            }
        };

        for i in 0..d {
            let start = positions[i];
            let end = positions[(i + 1) % d];
            let wraps = i == d - 1;
            let kind = self.kind_at(start);
            if wraps && all_chord_pair {
                continue; // same chord as the first side
            }
            let side_geom = Side { kind, start, end };
            let (l, r) = (start, end);
            debug_assert!(wraps == (r < l));
            match (kind, wraps) {
                (SideKind::Chord, false) => {
                    // crossing chords from inside the span
                    self.emit_above(VirtualArray::NextChord, l + 1, r.wrapping_sub(1), r as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_below(VirtualArray::PrevChord, l + 1, r.wrapping_sub(1), l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    // arcs containing an endpoint
                    if self.has_arcs {
                        self.emit_above(VirtualArray::NextArc, 1, r.wrapping_sub(1), r as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                        self.emit_below(VirtualArray::PrevArc, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                    }
                    if wrap_walk {
                        self.wrap_candidates(l, r, &side_geom, u, &mut ranges, emit);
                    }
                }
                (SideKind::Chord, true) => {
                    // wrap chord of u: the other endpoint must land in (r, l)
                    self.emit_above(VirtualArray::NextChord, 1, r.wrapping_sub(1), r as u64, &mut ranges, &mut |_, val, w| {
                        if val < l as u64 {
                            handle(w, emit)
                        }
                    });
                    self.emit_below(VirtualArray::PrevChord, l + 1, nn, l as u64, &mut ranges, &mut |_, val, w| {
                        if val > r as u64 {
                            handle(w, emit)
                        }
                    });
                    // arcs containing endpoint r or endpoint l
                    if self.has_arcs {
                        self.emit_above(VirtualArray::NextArc, 1, r.wrapping_sub(1), r as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                        self.emit_below(VirtualArray::PrevArc, r + 1, nn, r as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                        self.emit_above(VirtualArray::NextArc, 1, l - 1, l as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                        self.emit_below(VirtualArray::PrevArc, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                            handle(w, emit)
                        });
                    }
                    if wrap_walk {
                        self.wrap_candidates(l, nn + 1, &side_geom, u, &mut ranges, emit);
                        self.wrap_candidates(0, r, &side_geom, u, &mut ranges, emit);
                    }
                }
                (SideKind::Arc, false) => {
                    // chords with an endpoint strictly inside; ends whose
                    // start also lies inside are already found by the start
                    self.emit_above(VirtualArray::NextChord, l + 1, r.wrapping_sub(1), l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_below(VirtualArray::PrevChord, l + 1, r.wrapping_sub(1), l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    // overlapping arcs: starts inside or reaching in from
                    // the left via the start walk, plus ends inside whose
                    // start precedes the span
                    self.emit_above(VirtualArray::NextArc, 1, r.wrapping_sub(1), l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_below(VirtualArray::PrevArc, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    if wrap_walk {
                        self.wrap_candidates(l, r, &side_geom, u, &mut ranges, emit);
                    }
                }
                (SideKind::Arc, true) => {
                    // split into [l, N] and [1, r]; unlike l and r, the split
                    // boundaries N and 1 may carry other polygons' corners,
                    // so the arc ranges include them
                    self.emit_above(VirtualArray::NextChord, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_below(VirtualArray::PrevChord, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_above(VirtualArray::NextArc, 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_below(VirtualArray::PrevArc, l + 1, nn, l as u64, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_above(VirtualArray::NextChord, 1, r.wrapping_sub(1), 0, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    self.emit_above(VirtualArray::NextArc, 1, r.wrapping_sub(1), 0, &mut ranges, &mut |_, _, w| {
                        handle(w, emit)
                    });
                    if wrap_walk {
                        self.wrap_candidates(l, nn + 1, &side_geom, u, &mut ranges, emit);
                        self.wrap_candidates(0, r, &side_geom, u, &mut ranges, emit);
                    }
                }
            }
        }
    }

    /// Emits positions `m` in `[lo, hi]` with `virt(m) > thr`, splitting at
    /// the range maximum. The callback receives `(m, value, label at m)`.
    fn emit_above(
        &self,
        which: VirtualArray,
        lo: usize,
        hi: usize,
        thr: u64,
        ranges: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(usize, u64, usize),
    ) {
        if lo == 0 || hi > self.total || lo > hi {
            return;
        }
        let idx = self.index_for(which);
        debug_assert!(ranges.is_empty());
        ranges.push((lo, hi));
        while let Some((a, b)) = ranges.pop() {
            let m = idx.query(a, b).expect("range valid");
            let (val, w) = self.virt_with_label(which, m);
            if val > thr {
                f(m, val, w);
                if m > a {
                    ranges.push((a, m - 1));
                }
                if m < b {
                    ranges.push((m + 1, b));
                }
            }
        }
    }

    /// Emits positions `m` in `[lo, hi]` with `virt(m) < thr`, splitting at
    /// the range minimum.
    fn emit_below(
        &self,
        which: VirtualArray,
        lo: usize,
        hi: usize,
        thr: u64,
        ranges: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(usize, u64, usize),
    ) {
        if lo == 0 || hi > self.total || lo > hi {
            return;
        }
        let idx = self.index_for(which);
        debug_assert!(ranges.is_empty());
        ranges.push((lo, hi));
        while let Some((a, b)) = ranges.pop() {
            let m = idx.query(a, b).expect("range valid");
            let (val, w) = self.virt_with_label(which, m);
            if val < thr {
                f(m, val, w);
                if m > a {
                    ranges.push((a, m - 1));
                }
                if m < b {
                    ranges.push((m + 1, b));
                }
            }
        }
    }

    /// Walks positions in `[lo, hi]` whose side starting there is the wrap
    /// side (no next occurrence), without materializing next positions.
    fn walk_last_occurrences(
        &self,
        lo: usize,
        hi: usize,
        ranges: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(usize, usize),
    ) {
        if lo == 0 || hi > self.total || lo > hi {
            return;
        }
        debug_assert!(ranges.is_empty());
        ranges.push((lo, hi));
        while let Some((a, b)) = ranges.pop() {
            let m = self.idx_next.query(a, b).expect("range valid");
            let (u, rk, s, e) = self.corner_info(m);
            // occurrence rk of d_u = 1 + bucket size
            if rk == 1 + (e - s) {
                f(m, u);
                if m > a {
                    ranges.push((a, m - 1));
                }
                if m < b {
                    ranges.push((m + 1, b));
                }
            }
        }
    }

    /// Wrap-side completeness: enumerate last occurrences (infinite `N`
    /// entries) and first occurrences (`F` ones) strictly inside
    /// `(lo_excl, hi_excl)` and test each candidate's wrap side against the
    /// query side geometrically.
    fn wrap_candidates(
        &self,
        lo_excl: usize,
        hi_excl: usize,
        side_geom: &Side,
        u: usize,
        ranges: &mut Vec<(usize, usize)>,
        emit: &mut dyn FnMut(usize),
    ) {
        if hi_excl <= lo_excl + 1 {
            return;
        }
        self.walk_last_occurrences(
            lo_excl + 1,
            hi_excl - 1,
            ranges,
            &mut |m, w| {
                if w == u {
                    return;
                }
                let kind = self.kind_at(m);
                let first_pos = self.occ_select(w, 1).expect("first occurrence");
                // the wrap side of a 2-corner all-chord polygon is the same
                // chord as its first side, already visible to the chord arrays
                if kind == SideKind::Chord
                    && !self.arcs.get(first_pos - 1)
                    && self.occ_rank(w, m) == 2
                {
                    return;
                }
                let wrap_side = Side {
                    kind,
                    start: m,
                    end: first_pos,
                };
                if sides_intersect(side_geom, &wrap_side) {
                    emit(w);
                }
            },
        );
        // first occurrences inside the open range, walked via F
        let mut j = self.first.rank1_0(lo_excl) + 1;
        while j <= self.n {
            let pos = match self.first.select1_0(j - 1) {
                Some(p) => p + 1,
                None => break,
            };
            if pos >= hi_excl {
                break;
            }
            let w = j;
            j += 1;
            if w == u {
                continue;
            }
            let (bucket_start, bucket_end) = self.rest.matrix().bucket(w as u64 - 1);
            let sp_pos = self.rest.matrix().position_of(bucket_end - 1);
            let last_pos = self.first.select0_0(sp_pos).expect("last occurrence") + 1;
            let kind = self.kind_at(last_pos);
            if kind == SideKind::Chord
                && !self.arcs.get(pos - 1)
                && bucket_end - bucket_start == 1
            {
                continue;
            }
            let wrap_side = Side {
                kind,
                start: last_pos,
                end: pos,
            };
            if sides_intersect(side_geom, &wrap_side) {
                emit(w);
            }
        }
    }

    pub fn bits_used(&self) -> u64 {
        self.space_report().total
    }

    pub fn space_report(&self) -> SpaceReport {
        let mut components = vec![
            ("F".to_string(), self.first.bits_used()),
            ("Sp".to_string(), self.rest.bits_used()),
            ("A".to_string(), self.arcs.bits_used()),
            ("idxN".to_string(), self.idx_next.bits_used()),
            ("idxNa".to_string(), self.idx_next_arc.bits_used()),
            ("idxNc".to_string(), self.idx_next_chord.bits_used()),
            ("idxPa".to_string(), self.idx_prev_arc.bits_used()),
            ("idxPc".to_string(), self.idx_prev_chord.bits_used()),
        ];
        if let Some(degs) = &self.degrees {
            components.push(("degrees".to_string(), 32 * degs.len() as u64));
        }
        SpaceReport::new(components)
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u == 0 || u > self.n {
            return Err(Error::OutOfRange {
                arg: "vertex",
                value: u,
                min: 1,
                max: self.n,
            });
        }
        Ok(())
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.total {
            return Err(Error::OutOfRange {
                arg: "i",
                value: i,
                min: 1,
                max: self.total,
            });
        }
        Ok(())
    }

    pub(crate) fn parts(
        &self,
    ) -> (
        &BitVector,
        &LabelSequence,
        &BitVector,
        [&RangeArgIndex; 5],
        Option<&Vec<u32>>,
    ) {
        (
            &self.first,
            &self.rest,
            &self.arcs,
            [
                &self.idx_next,
                &self.idx_next_arc,
                &self.idx_next_chord,
                &self.idx_prev_arc,
                &self.idx_prev_chord,
            ],
            self.degrees.as_ref(),
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        n: usize,
        total: usize,
        impl_class: ClassTag,
        first: BitVector,
        rest: LabelSequence,
        arcs: BitVector,
        indexes: [RangeArgIndex; 5],
        degrees: Option<Vec<u32>>,
    ) -> Self {
        let [idx_next, idx_next_arc, idx_next_chord, idx_prev_arc, idx_prev_chord] = indexes;
        let has_arcs = arcs.count(true) > 0;
        let wrap_sides_relevant = has_arcs || total != 2 * n;
        let mut oracle = PolygonOracle {
            n,
            total,
            max_corners: 0,
            impl_class,
            first,
            rest,
            arcs,
            idx_next,
            idx_next_arc,
            idx_next_chord,
            idx_prev_arc,
            idx_prev_chord,
            degrees,
            has_arcs,
            wrap_sides_relevant,
        };
        oracle.max_corners = (1..=n).map(|u| oracle.degree_of_label(u)).max().unwrap_or(0);
        oracle
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{
        generate, naive_matrix, naive_neighborhood, to_polygon_diagram, Diagram,
    };

    fn d1() -> PolygonDiagram {
        PolygonDiagram::new(
            3,
            [1, 2, 1, 3, 2, 3]
                .iter()
                .map(|&l| (l, SideKind::Chord))
                .collect(),
        )
        .unwrap()
    }

    fn d2() -> PolygonDiagram {
        PolygonDiagram::new(
            2,
            vec![
                (1, SideKind::Arc),
                (1, SideKind::Chord),
                (2, SideKind::Arc),
                (2, SideKind::Chord),
                (1, SideKind::Arc),
                (1, SideKind::Chord),
                (2, SideKind::Arc),
                (2, SideKind::Chord),
            ],
        )
        .unwrap()
    }

    fn build(d: &PolygonDiagram) -> PolygonOracle {
        PolygonOracle::build(d, BuildOptions::default()).unwrap()
    }

    #[test]
    fn first_occurrence_layout() {
        let o = build(&d1());
        let f: Vec<bool> = (1..=6).map(|i| o.first.get(i - 1)).collect();
        assert_eq!(f, [true, true, false, true, false, false]);
        let sp: Vec<u64> = (0..3).map(|i| o.rest.matrix().access(i)).collect();
        assert_eq!(sp, [0, 1, 2]); // labels 1, 2, 3

        let o2 = build(&d2());
        let f2: Vec<bool> = (1..=8).map(|i| o2.first.get(i - 1)).collect();
        assert_eq!(
            f2,
            [true, false, true, false, false, false, false, false]
        );
        let sp2: Vec<u64> = (0..6).map(|i| o2.rest.matrix().access(i)).collect();
        assert_eq!(sp2, [0, 1, 0, 0, 1, 1]); // labels 1 2 1 1 2 2

        let single = PolygonDiagram::new(1, vec![(1, SideKind::Chord), (1, SideKind::Chord)]).unwrap();
        let os = build(&single);
        assert!(os.first.get(0) && !os.first.get(1));
        assert_eq!(os.rest.matrix().access(0), 0);
    }

    #[test]
    fn virtual_string_round_trip() {
        for d in [d1(), d2()] {
            let o = build(&d);
            for i in 1..=d.total_corners() {
                assert_eq!(o.s_access(i).unwrap(), d.label_at(i));
            }
        }
    }

    #[test]
    fn s_rank_select_examples() {
        let o = build(&d1());
        assert_eq!(o.s_access(3).unwrap(), 1);
        assert_eq!(o.s_rank(2, 6).unwrap(), 2);
        assert_eq!(o.s_select(2, 2).unwrap(), 5);
        assert_eq!(o.s_rank(1, 0).unwrap(), 0);
        assert!(matches!(o.s_select(2, 3), Err(Error::NotFound { .. })));
        assert!(o.s_rank(4, 1).is_err());
    }

    #[test]
    fn intervals_and_side_counts() {
        let o1 = build(&d1());
        assert_eq!(o1.side_count(2).unwrap(), 2);
        assert_eq!(
            o1.interval(2, 1).unwrap(),
            CircularSpan { start: 2, end: 5, wraps: false }
        );
        let o2 = build(&d2());
        assert_eq!(
            o2.interval(1, 4).unwrap(),
            CircularSpan { start: 6, end: 1, wraps: true }
        );
        assert!(o2.interval(1, 5).is_err());
    }

    fn naive_virtual(d: &PolygonDiagram, which: VirtualArray) -> Vec<u64> {
        // independent reconstruction straight from the corner string
        let total = d.total_corners();
        let inf = (total + 1) as u64;
        let mut out = vec![0u64; total];
        for u in 1..=d.n() {
            let occ = d.occurrences(u);
            let du = occ.len();
            for (rk0, &pos) in occ.iter().enumerate() {
                let is_arc = d.kind_at(pos) == SideKind::Arc;
                let next = if rk0 + 1 < du { occ[rk0 + 1] as u64 } else { inf };
                let prev_start = if rk0 > 0 { occ[rk0 - 1] } else { occ[du - 1] };
                let ending_arc = d.kind_at(prev_start) == SideKind::Arc;
                out[pos - 1] = match which {
                    VirtualArray::Next => next,
                    VirtualArray::NextArc => if is_arc { next } else { 0 },
                    VirtualArray::NextChord => {
                        if !is_arc && rk0 + 1 < du { next } else { 0 }
                    }
                    VirtualArray::PrevArc => {
                        if ending_arc {
                            if rk0 > 0 { prev_start as u64 } else { 0 }
                        } else {
                            inf
                        }
                    }
                    VirtualArray::PrevChord => {
                        if !ending_arc && rk0 > 0 { prev_start as u64 } else { inf }
                    }
                };
            }
        }
        out
    }

    #[test]
    fn virtual_arrays_match_naive_construction() {
        let fix1 = d1();
        let o = build(&fix1);
        let nc = naive_virtual(&fix1, VirtualArray::NextChord);
        assert_eq!(nc, vec![3, 5, 0, 6, 0, 0]);
        let pc = naive_virtual(&fix1, VirtualArray::PrevChord);
        assert_eq!(pc, vec![7, 7, 1, 7, 2, 4]);
        for which in [
            VirtualArray::Next,
            VirtualArray::NextArc,
            VirtualArray::PrevArc,
            VirtualArray::NextChord,
            VirtualArray::PrevChord,
        ] {
            let want = naive_virtual(&fix1, which);
            for i in 1..=6 {
                assert_eq!(o.virt(which, i).unwrap(), want[i - 1], "{which:?} {i}");
            }
        }
        let fix2 = d2();
        let o2 = build(&fix2);
        assert_eq!(o2.virt(VirtualArray::NextArc, 1).unwrap(), 2);
        assert_eq!(o2.virt(VirtualArray::NextArc, 2).unwrap(), 0);
        for which in [
            VirtualArray::Next,
            VirtualArray::NextArc,
            VirtualArray::PrevArc,
            VirtualArray::NextChord,
            VirtualArray::PrevChord,
        ] {
            let want = naive_virtual(&fix2, which);
            for i in 1..=8 {
                assert_eq!(o2.virt(which, i).unwrap(), want[i - 1], "{which:?} {i}");
            }
        }
    }

    #[test]
    fn d1_navigation() {
        let o = build(&d1());
        assert!(o.adjacent(1, 2).unwrap());
        assert!(!o.adjacent(1, 3).unwrap());
        assert!(!o.adjacent(2, 2).unwrap());
        assert_eq!(o.neighborhood(2).unwrap(), vec![1, 3]);
        assert_eq!(o.neighborhood(1).unwrap(), vec![2]);
        assert_eq!(o.degree(2).unwrap(), 2);
        assert_eq!(o.degree(3).unwrap(), 1);
        assert!(o.adjacent(0, 1).is_err());
        assert!(o.degree(4).is_err());
    }

    #[test]
    fn d2_navigation() {
        let o = build(&d2());
        assert!(o.adjacent(1, 2).unwrap());
        assert_eq!(o.neighborhood(1).unwrap(), vec![2]);
    }

    #[test]
    fn isolated_polygon() {
        let d = PolygonDiagram::new(1, vec![(1, SideKind::Chord), (1, SideKind::Chord)]).unwrap();
        let o = build(&d);
        assert_eq!(o.degree(1).unwrap(), 0);
        assert_eq!(o.neighborhood(1).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn scratch_returns_to_zero() {
        let classes = [
            (ClassTag::Circle, ClassTag::GenericPolygon),
            (ClassTag::CircleTrapezoid, ClassTag::GenericPolygon),
            (ClassTag::CircularArc, ClassTag::CircularArc),
        ];
        let mut scratch = MarkScratch::new();
        for (class, impl_class) in classes {
            let d = generate(class, 20, 4, 99).unwrap();
            let p = to_polygon_diagram(&d).unwrap();
            let o = PolygonOracle::build(
                &p,
                BuildOptions { explicit_degrees: false, impl_class },
            )
            .unwrap();
            for u in 1..=20 {
                o.neighborhood_with(u, &mut scratch).unwrap();
                assert!(scratch.is_all_zero(), "{class} vertex {u}");
            }
        }
    }

    #[test]
    fn explicit_degrees_match() {
        let d = generate(ClassTag::Circle, 30, 2, 5).unwrap();
        let p = to_polygon_diagram(&d).unwrap();
        let plain = build(&p);
        let with = PolygonOracle::build(
            &p,
            BuildOptions { explicit_degrees: true, impl_class: ClassTag::GenericPolygon },
        )
        .unwrap();
        for u in 1..=30 {
            assert_eq!(plain.degree(u).unwrap(), with.degree(u).unwrap());
        }
        assert!(with.has_explicit_degrees());
        assert!(with.space_report().component("degrees").is_some());
    }

    #[test]
    fn matches_brute_force_across_classes() {
        for class in [
            ClassTag::Circle,
            ClassTag::Permutation,
            ClassTag::Interval,
            ClassTag::CircularArc,
            ClassTag::KPolygon,
            ClassTag::CircleTrapezoid,
            ClassTag::Trapezoid,
            ClassTag::GenericPolygon,
        ] {
            let impl_class = match class {
                ClassTag::Interval => ClassTag::Interval,
                ClassTag::CircularArc => ClassTag::CircularArc,
                _ => ClassTag::GenericPolygon,
            };
            for seed in 0..25u64 {
                for n in [1usize, 2, 3, 8, 25] {
                    let d = generate(class, n, 4, seed).unwrap();
                    let p = to_polygon_diagram(&d).unwrap();
                    let o = PolygonOracle::build(
                        &p,
                        BuildOptions { explicit_degrees: false, impl_class },
                    )
                    .unwrap();
                    let truth = naive_matrix(&p);
                    for u in 1..=n {
                        assert_eq!(
                            o.neighborhood(u).unwrap(),
                            naive_neighborhood(&p, u).unwrap(),
                            "{class} n={n} seed={seed} vertex {u}"
                        );
                        for v in 1..=n {
                            assert_eq!(
                                o.adjacent(u, v).unwrap(),
                                truth.get(u, v) && u != v,
                                "{class} n={n} seed={seed} ({u},{v})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn space_report_totals() {
        let d = generate(ClassTag::Circle, 100, 2, 1).unwrap();
        let Diagram::Chord(_) = &d else { panic!() };
        let p = to_polygon_diagram(&d).unwrap();
        let o = build(&p);
        let rep = o.space_report();
        let sum: u64 = rep.components.iter().map(|(_, b)| b).sum();
        assert_eq!(rep.total, sum);
        assert!(rep.component("Sp").unwrap() > 0);
    }
}
