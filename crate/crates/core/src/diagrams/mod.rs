//! Diagram types for every supported graph class, their validation and
//! canonical labelings, plus parsing, seeded generation, class adapters into
//! the generalized-polygon form, and the brute-force geometric oracle.

mod adapt;
mod circular;
mod generate;
mod naive;
mod parse;

pub use adapt::to_polygon_diagram;
pub use circular::{sides_intersect, Side, SideKind};
pub use generate::generate;
pub use naive::{
    naive_adjacent, naive_degree, naive_matrix, naive_matrix_serial, naive_neighborhood,
    native_matrix, AdjacencyMatrix,
};
pub use parse::{parse_diagram, render_diagram, Parsed};

use crate::error::{Error, Result};

/// Graph class selector; decides parsing format, adapter and generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Circle,
    Permutation,
    Interval,
    CircularArc,
    KPolygon,
    CircleTrapezoid,
    Trapezoid,
    GenericPolygon,
}

impl ClassTag {
    pub const ALL: [ClassTag; 8] = [
        ClassTag::Circle,
        ClassTag::Permutation,
        ClassTag::Interval,
        ClassTag::CircularArc,
        ClassTag::KPolygon,
        ClassTag::CircleTrapezoid,
        ClassTag::Trapezoid,
        ClassTag::GenericPolygon,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::Circle => "circle",
            ClassTag::Permutation => "permutation",
            ClassTag::Interval => "interval",
            ClassTag::CircularArc => "circular-arc",
            ClassTag::KPolygon => "k-polygon",
            ClassTag::CircleTrapezoid => "circle-trapezoid",
            ClassTag::Trapezoid => "trapezoid",
            ClassTag::GenericPolygon => "polygon",
        }
    }

    pub fn parse(s: &str) -> Option<ClassTag> {
        match s {
            "circle" => Some(ClassTag::Circle),
            "permutation" => Some(ClassTag::Permutation),
            "interval" => Some(ClassTag::Interval),
            "circular-arc" | "circulararc" => Some(ClassTag::CircularArc),
            "k-polygon" | "kpolygon" => Some(ClassTag::KPolygon),
            "circle-trapezoid" | "circletrapezoid" => Some(ClassTag::CircleTrapezoid),
            "trapezoid" => Some(ClassTag::Trapezoid),
            "polygon" | "generic-polygon" => Some(ClassTag::GenericPolygon),
        _ => None,
        }
    }

    pub(crate) fn tag_byte(&self) -> u8 {
        match self {
            ClassTag::Circle => 0,
            ClassTag::Permutation => 1,
            ClassTag::Interval => 2,
            ClassTag::CircularArc => 3,
            ClassTag::KPolygon => 4,
            ClassTag::CircleTrapezoid => 5,
            ClassTag::Trapezoid => 6,
            ClassTag::GenericPolygon => 7,
        }
    }

    pub(crate) fn from_tag_byte(b: u8) -> Option<ClassTag> {
        ClassTag::ALL.iter().copied().find(|c| c.tag_byte() == b)
    }
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A corner-string with per-side arc/chord flags: the universal input
/// representation. Corner `i`'s flag describes the side starting at corner
/// `i` (clockwise) and ending at the next occurrence of the same label,
/// wrapping for the last occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonDiagram {
    n: usize,
    corners: Vec<(u32, SideKind)>,
}

impl PolygonDiagram {
    pub fn new(n: usize, corners: Vec<(u32, SideKind)>) -> Result<Self> {
        let d = PolygonDiagram { n, corners };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation(1, "polygon count must be at least 1"));
        }
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, &(label, _)) in self.corners.iter().enumerate() {
            if label == 0 || label as usize > self.n {
                return Err(Error::validation(
                    i + 1,
                    format!("corner label {label} outside 1..={}", self.n),
                ));
            }
            occ[label as usize - 1].push(i + 1);
        }
        let mut last_first = 0usize;
        for (u, positions) in occ.iter().enumerate() {
            if positions.len() < 2 {
                return Err(Error::validation(
                    1,
                    format!("polygon {} has {} corners, needs at least 2", u + 1, positions.len()),
                ));
            }
            let first = positions[0];
            if first < last_first {
                return Err(Error::validation(
                    first,
                    format!(
                        "labeling not canonical: first occurrence of {} precedes that of {}",
                        u + 1,
                        u
                    ),
                ));
            }
            last_first = first;
            // no two consecutive sides of one polygon may both be arcs
            let d = positions.len();
            for i in 0..d {
                let here = self.corners[positions[i] - 1].1;
                let next = self.corners[positions[(i + 1) % d] - 1].1;
                if here == SideKind::Arc && next == SideKind::Arc {
                    return Err(Error::validation(
                        positions[(i + 1) % d],
                        format!("polygon {} has two consecutive arc sides", u + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Re-labels arbitrary (1-based) labels into first-occurrence order.
    /// Returns the diagram and the old-label -> new-label map.
    pub fn canonicalize(
        n: usize,
        corners: Vec<(u32, SideKind)>,
    ) -> Result<(Self, Vec<usize>)> {
        let mut map = vec![0usize; n];
        let mut next = 0usize;
        for &(label, _) in &corners {
            if label == 0 || label as usize > n {
                return Err(Error::validation(
                    1,
                    format!("corner label {label} outside 1..={n}"),
                ));
            }
            let slot = &mut map[label as usize - 1];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
        }
        let relabeled = corners
            .into_iter()
            .map(|(l, k)| (map[l as usize - 1] as u32, k))
            .collect();
        Ok((PolygonDiagram::new(n, relabeled)?, map))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total corner count N.
    pub fn total_corners(&self) -> usize {
        self.corners.len()
    }

    pub fn corners(&self) -> &[(u32, SideKind)] {
        &self.corners
    }

    pub fn label_at(&self, pos: usize) -> usize {
        self.corners[pos - 1].0 as usize
    }

    pub fn kind_at(&self, pos: usize) -> SideKind {
        self.corners[pos - 1].1
    }

    /// 1-based corner positions of polygon `u`, clockwise.
    pub fn occurrences(&self, u: usize) -> Vec<usize> {
        self.corners
            .iter()
            .enumerate()
            .filter(|(_, &(l, _))| l as usize == u)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Geometric sides of polygon `u`. For a 2-corner all-chord polygon the
    /// wrap side is the same chord as the first side and is omitted.
    pub fn sides_of(&self, u: usize) -> Vec<Side> {
        let occ = self.occurrences(u);
        let d = occ.len();
        let mut sides = Vec::with_capacity(d);
        for i in 0..d {
            let start = occ[i];
            let end = occ[(i + 1) % d];
            let kind = self.kind_at(start);
            if i == d - 1
                && d == 2
                && kind == SideKind::Chord
                && self.kind_at(occ[0]) == SideKind::Chord
            {
                continue;
            }
            sides.push(Side { kind, start, end });
        }
        sides
    }

    pub fn max_corners(&self) -> usize {
        (1..=self.n).map(|u| self.occurrences(u).len()).max().unwrap_or(0)
    }
}

/// n chords on a circle with 2n distinct endpoints labeled 1..2n clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    pairs: Vec<(u32, u32)>,
}

impl ChordDiagram {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        let n = pairs.len();
        if n == 0 {
            return Err(Error::validation(1, "chord diagram needs at least 1 chord"));
        }
        let mut seen = vec![false; 2 * n + 1];
        for (i, &(s, e)) in pairs.iter().enumerate() {
            if s >= e {
                return Err(Error::validation(
                    i + 1,
                    format!("chord ({s}, {e}): start must be smaller than end"),
                ));
            }
            if e as usize > 2 * n {
                return Err(Error::validation(
                    i + 1,
                    format!("endpoint {e} outside 1..={}", 2 * n),
                ));
            }
            for p in [s, e] {
                if seen[p as usize] {
                    return Err(Error::validation(i + 1, format!("duplicate endpoint {p}")));
                }
                seen[p as usize] = true;
            }
        }
        for (i, w) in pairs.windows(2).enumerate() {
            if w[0].0 > w[1].0 {
                return Err(Error::validation(
                    i + 2,
                    "labeling not canonical: chords must be sorted by start point",
                ));
            }
        }
        Ok(ChordDiagram { pairs })
    }

    /// Sorts chords by start point; returns the old-index -> new-label map.
    pub fn canonicalize(mut pairs: Vec<(u32, u32)>) -> Result<(Self, Vec<usize>)> {
        for (i, p) in pairs.iter_mut().enumerate() {
            if p.0 > p.1 {
                return Err(Error::validation(
                    i + 1,
                    format!("chord ({}, {}): start must be smaller than end", p.0, p.1),
                ));
            }
        }
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.sort_by_key(|&i| pairs[i].0);
        let mut map = vec![0usize; pairs.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new + 1;
        }
        pairs.sort_by_key(|p| p.0);
        Ok((ChordDiagram::new(pairs)?, map))
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn interval(&self, v: usize) -> (usize, usize) {
        let (s, e) = self.pairs[v - 1];
        (s as usize, e as usize)
    }
}

/// n intervals (or circle arcs) with 2n distinct endpoints in 1..2n.
/// For the interval class spans never wrap; for circular arcs the span runs
/// clockwise from `s` to `e` and wraps when `s > e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFamily {
    spans: Vec<(u32, u32)>,
    wrapping_allowed: bool,
}

impl ArcFamily {
    pub fn new(spans: Vec<(u32, u32)>, wrapping_allowed: bool) -> Result<Self> {
        let n = spans.len();
        if n == 0 {
            return Err(Error::validation(1, "arc family needs at least 1 span"));
        }
        let mut seen = vec![false; 2 * n + 1];
        for (i, &(s, e)) in spans.iter().enumerate() {
            if s == e {
                return Err(Error::validation(i + 1, "span endpoints must differ"));
            }
            if !wrapping_allowed && s > e {
                return Err(Error::validation(
                    i + 1,
                    format!("interval ({s}, {e}): start must be smaller than end"),
                ));
            }
            for p in [s, e] {
                if p == 0 || p as usize > 2 * n {
                    return Err(Error::validation(
                        i + 1,
                        format!("endpoint {p} outside 1..={}", 2 * n),
                    ));
                }
                if seen[p as usize] {
                    return Err(Error::validation(i + 1, format!("duplicate endpoint {p}")));
                }
                seen[p as usize] = true;
            }
        }
        for (i, w) in spans.windows(2).enumerate() {
            if w[0].0.min(w[0].1) > w[1].0.min(w[1].1) {
                return Err(Error::validation(
                    i + 2,
                    "labeling not canonical: spans must be sorted by first circle position",
                ));
            }
        }
        Ok(ArcFamily {
            spans,
            wrapping_allowed,
        })
    }

    pub fn canonicalize(
        spans: Vec<(u32, u32)>,
        wrapping_allowed: bool,
    ) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..spans.len()).collect();
        order.sort_by_key(|&i| spans[i].0.min(spans[i].1));
        let mut map = vec![0usize; spans.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new + 1;
        }
        let sorted = order.iter().map(|&i| spans[i]).collect();
        Ok((ArcFamily::new(sorted, wrapping_allowed)?, map))
    }

    pub fn n(&self) -> usize {
        self.spans.len()
    }

    pub fn spans(&self) -> &[(u32, u32)] {
        &self.spans
    }

    pub fn wrapping_allowed(&self) -> bool {
        self.wrapping_allowed
    }
}

/// A permutation diagram: segment i joins top position i to bottom
/// position pi(i) between two parallel lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDiagram {
    perm: Vec<u32>,
}

impl PermutationDiagram {
    pub fn new(perm: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::validation(1, "permutation needs at least 1 element"));
        }
        let mut seen = vec![false; n + 1];
        for (i, &p) in perm.iter().enumerate() {
            if p == 0 || p as usize > n {
                return Err(Error::validation(
                    i + 1,
                    format!("value {p} outside 1..={n}"),
                ));
            }
            if seen[p as usize] {
                return Err(Error::validation(i + 1, format!("duplicate value {p}")));
            }
            seen[p as usize] = true;
        }
        Ok(PermutationDiagram { perm })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }
}

/// n trapezoids between two parallel lines; all coordinates are the 1..4n
/// ranks in the merged projection order. `a < b` on the first line,
/// `c < d` on the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrapezoidDiagram {
    traps: Vec<[u32; 4]>,
}

impl TrapezoidDiagram {
    pub fn new(traps: Vec<[u32; 4]>) -> Result<Self> {
        let n = traps.len();
        if n == 0 {
            return Err(Error::validation(1, "trapezoid diagram needs at least 1 trapezoid"));
        }
        let mut seen = vec![false; 4 * n + 1];
        for (i, &[a, b, c, d]) in traps.iter().enumerate() {
            if a >= b {
                return Err(Error::validation(
                    i + 1,
                    format!("trapezoid ({a}, {b}, {c}, {d}): a must be smaller than b"),
                ));
            }
            if c >= d {
                return Err(Error::validation(
                    i + 1,
                    format!("trapezoid ({a}, {b}, {c}, {d}): c must be smaller than d"),
                ));
            }
            for p in [a, b, c, d] {
                if p == 0 || p as usize > 4 * n {
                    return Err(Error::validation(
                        i + 1,
                        format!("coordinate {p} outside 1..={}", 4 * n),
                    ));
                }
                if seen[p as usize] {
                    return Err(Error::validation(
                        i + 1,
                        format!("duplicate merged coordinate {p}"),
                    ));
                }
                seen[p as usize] = true;
            }
        }
        for (i, w) in traps.windows(2).enumerate() {
            if w[0][0] > w[1][0] {
                return Err(Error::validation(
                    i + 2,
                    "labeling not canonical: trapezoids must be sorted by a",
                ));
            }
        }
        Ok(TrapezoidDiagram { traps })
    }

    pub fn canonicalize(mut traps: Vec<[u32; 4]>) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..traps.len()).collect();
        order.sort_by_key(|&i| traps[i][0]);
        let mut map = vec![0usize; traps.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new + 1;
        }
        traps.sort_by_key(|t| t[0]);
        Ok((TrapezoidDiagram::new(traps)?, map))
    }

    pub fn n(&self) -> usize {
        self.traps.len()
    }

    pub fn traps(&self) -> &[[u32; 4]] {
        &self.traps
    }

    pub fn corners(&self, v: usize) -> [usize; 4] {
        let [a, b, c, d] = self.traps[v - 1];
        [a as usize, b as usize, c as usize, d as usize]
    }
}

/// Any parsed or generated diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Polygon(PolygonDiagram),
    Chord(ChordDiagram),
    Arcs(ArcFamily),
    Permutation(PermutationDiagram),
    Trapezoid(TrapezoidDiagram),
}

impl Diagram {
    pub fn n(&self) -> usize {
        match self {
            Diagram::Polygon(d) => d.n(),
            Diagram::Chord(d) => d.n(),
            Diagram::Arcs(d) => d.n(),
            Diagram::Permutation(d) => d.n(),
            Diagram::Trapezoid(d) => d.n(),
        }
    }
}

/// Checks the class-specific shape rule for polygon-format diagrams.
pub fn validate_class_shape(d: &PolygonDiagram, class: ClassTag) -> Result<()> {
    match class {
        ClassTag::KPolygon => {
            let k = d.occurrences(1).len();
            for u in 1..=d.n() {
                let occ = d.occurrences(u);
                if occ.len() != k {
                    return Err(Error::validation(
                        occ[0],
                        format!("k-polygon shape: polygon {u} has {} corners, expected {k}", occ.len()),
                    ));
                }
                for &p in &occ {
                    if d.kind_at(p) != SideKind::Chord {
                        return Err(Error::validation(
                            p,
                            format!("k-polygon shape: polygon {u} has an arc side"),
                        ));
                    }
                }
            }
            Ok(())
        }
        ClassTag::CircleTrapezoid => {
            for u in 1..=d.n() {
                let occ = d.occurrences(u);
                if occ.len() != 4 {
                    return Err(Error::validation(
                        occ[0],
                        format!(
                            "circle-trapezoid shape: polygon {u} has {} corners, expected 4",
                            occ.len()
                        ),
                    ));
                }
                for w in 0..4 {
                    let here = d.kind_at(occ[w]);
                    let next = d.kind_at(occ[(w + 1) % 4]);
                    if here == next {
                        return Err(Error::validation(
                            occ[w],
                            format!("circle-trapezoid shape: polygon {u} sides must alternate arc/chord"),
                        ));
                    }
                }
            }
            Ok(())
        }
        ClassTag::GenericPolygon => Ok(()),
        other => Err(Error::validation(
            1,
            format!("class {other} does not use the polygon format"),
        )),
    }
}
