//! Brute-force geometric oracle: the ground truth every succinct structure
//! is checked against. All-pairs adjacency is O(n^2 k^2) side tests; the
//! matrix sweep fans out over rayon under the `parallel` feature.

use super::{sides_intersect, ArcFamily, ChordDiagram, Diagram, PermutationDiagram, PolygonDiagram, TrapezoidDiagram};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Symmetric bit-packed adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn new(n: usize) -> Self {
        AdjacencyMatrix {
            n,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        let idx = (u - 1) * self.n + (v - 1);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let idx = (a - 1) * self.n + (b - 1);
            self.bits[idx / 64] |= 1 << (idx % 64);
        }
    }

    pub fn toggle(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let idx = (a - 1) * self.n + (b - 1);
            self.bits[idx / 64] ^= 1 << (idx % 64);
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        (1..=self.n).filter(|&v| self.get(u, v)).count()
    }

    pub fn neighborhood(&self, u: usize) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.get(u, v)).collect()
    }
}

fn check_vertex(n: usize, arg: &'static str, u: usize) -> Result<()> {
    if u == 0 || u > n {
        return Err(Error::OutOfRange {
            arg,
            value: u,
            min: 1,
            max: n,
        });
    }
    Ok(())
}

/// Do polygons `u` and `v` intersect? `naive_adjacent(u, u)` is false.
pub fn naive_adjacent(d: &PolygonDiagram, u: usize, v: usize) -> Result<bool> {
    check_vertex(d.n(), "u", u)?;
    check_vertex(d.n(), "v", v)?;
    if u == v {
        return Ok(false);
    }
    let su = d.sides_of(u);
    let sv = d.sides_of(v);
    Ok(su
        .iter()
        .any(|e| sv.iter().any(|f| sides_intersect(e, f))))
}

pub fn naive_degree(d: &PolygonDiagram, u: usize) -> Result<usize> {
    check_vertex(d.n(), "u", u)?;
    let su = d.sides_of(u);
    let mut deg = 0;
    for v in 1..=d.n() {
        if v == u {
            continue;
        }
        let sv = d.sides_of(v);
        if su.iter().any(|e| sv.iter().any(|f| sides_intersect(e, f))) {
            deg += 1;
        }
    }
    Ok(deg)
}

pub fn naive_neighborhood(d: &PolygonDiagram, u: usize) -> Result<Vec<usize>> {
    check_vertex(d.n(), "u", u)?;
    let su = d.sides_of(u);
    let mut out = Vec::new();
    for v in 1..=d.n() {
        if v == u {
            continue;
        }
        let sv = d.sides_of(v);
        if su.iter().any(|e| sv.iter().any(|f| sides_intersect(e, f))) {
            out.push(v);
        }
    }
    Ok(out)
}

fn matrix_rows<F: Fn(usize) -> Vec<usize> + Send + Sync>(n: usize, row: F) -> AdjacencyMatrix {
    let rows: Vec<Vec<usize>>;
    #[cfg(feature = "parallel")]
    {
        rows = (1..=n).into_par_iter().map(row).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        rows = (1..=n).map(row).collect();
    }
    let mut m = AdjacencyMatrix::new(n);
    for (u0, vs) in rows.into_iter().enumerate() {
        for v in vs {
            m.set(u0 + 1, v);
        }
    }
    m
}

/// Full adjacency matrix of the polygon diagram by pairwise side tests.
pub fn naive_matrix(d: &PolygonDiagram) -> AdjacencyMatrix {
    let n = d.n();
    let sides: Vec<_> = (1..=n).map(|u| d.sides_of(u)).collect();
    matrix_rows(n, |u| {
        let su = &sides[u - 1];
        (u + 1..=n)
            .filter(|&v| {
                sides[v - 1]
                    .iter()
                    .any(|f| su.iter().any(|e| sides_intersect(e, f)))
            })
            .collect()
    })
}

/// Sequential twin of [`naive_matrix`], kept for the bench comparison.
pub fn naive_matrix_serial(d: &PolygonDiagram) -> AdjacencyMatrix {
    let n = d.n();
    let sides: Vec<_> = (1..=n).map(|u| d.sides_of(u)).collect();
    let mut m = AdjacencyMatrix::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if sides[u - 1]
                .iter()
                .any(|e| sides[v - 1].iter().any(|f| sides_intersect(e, f)))
            {
                m.set(u, v);
            }
        }
    }
    m
}

/// Adjacency matrix of a diagram in its class-native geometry: interval
/// overlap-not-containment for chords, inversions for permutations, span
/// intersection for intervals and circular arcs, per-line disjointness for
/// trapezoids. Polygon diagrams fall back to the side-pair oracle.
pub fn native_matrix(d: &Diagram) -> AdjacencyMatrix {
    match d {
        Diagram::Polygon(p) => naive_matrix(p),
        Diagram::Chord(c) => pairwise(c.n(), |u, v| chords_overlap(c, u, v)),
        Diagram::Permutation(p) => pairwise(p.n(), |u, v| permutation_inverts(p, u, v)),
        Diagram::Arcs(a) if !a.wrapping_allowed() => {
            pairwise(a.n(), |u, v| intervals_meet(a, u, v))
        }
        Diagram::Arcs(a) => pairwise(a.n(), |u, v| circular_spans_meet(a, u, v)),
        Diagram::Trapezoid(t) => pairwise(t.n(), |u, v| trapezoids_meet(t, u, v)),
    }
}

fn pairwise<F: Fn(usize, usize) -> bool>(n: usize, adj: F) -> AdjacencyMatrix {
    let mut m = AdjacencyMatrix::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if adj(u, v) {
                m.set(u, v);
            }
        }
    }
    m
}

/// Proper overlap: intervals intersect and neither contains the other.
pub(crate) fn chords_overlap(c: &ChordDiagram, u: usize, v: usize) -> bool {
    let (su, eu) = c.interval(u);
    let (sv, ev) = c.interval(v);
    (su < sv && sv < eu && eu < ev) || (sv < su && su < ev && ev < eu)
}

pub(crate) fn permutation_inverts(p: &PermutationDiagram, u: usize, v: usize) -> bool {
    let pu = p.perm()[u - 1];
    let pv = p.perm()[v - 1];
    (u < v) == (pu > pv)
}

pub(crate) fn intervals_meet(a: &ArcFamily, u: usize, v: usize) -> bool {
    let (su, eu) = a.spans()[u - 1];
    let (sv, ev) = a.spans()[v - 1];
    su.max(sv) <= eu.min(ev)
}

pub(crate) fn circular_spans_meet(a: &ArcFamily, u: usize, v: usize) -> bool {
    let (su, eu) = a.spans()[u - 1];
    let (sv, ev) = a.spans()[v - 1];
    let contains = |s: u32, e: u32, p: u32| {
        if s <= e {
            s <= p && p <= e
        } else {
            p >= s || p <= e
        }
    };
    contains(su, eu, sv) || contains(sv, ev, su)
}

pub(crate) fn trapezoids_meet(t: &TrapezoidDiagram, u: usize, v: usize) -> bool {
    let [au, bu, cu, du] = t.traps()[u - 1];
    let [av, bv, cv, dv] = t.traps()[v - 1];
    let u_left = bu < av && du < cv;
    let v_left = bv < au && dv < cu;
    !u_left && !v_left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::SideKind;

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

    #[test]
    fn d1_edges() {
        let d = d1();
        let m = naive_matrix(&d);
        assert!(m.get(1, 2) && m.get(2, 3));
        assert!(!m.get(1, 3));
        assert_eq!(naive_degree(&d, 2).unwrap(), 2);
        assert_eq!(naive_neighborhood(&d, 2).unwrap(), vec![1, 3]);
        assert!(!naive_adjacent(&d, 1, 1).unwrap());
        assert_eq!(m, naive_matrix_serial(&d));
    }

    #[test]
    fn single_polygon() {
        let d = PolygonDiagram::new(1, vec![(1, SideKind::Chord), (1, SideKind::Chord)]).unwrap();
        assert_eq!(naive_degree(&d, 1).unwrap(), 0);
        assert_eq!(naive_neighborhood(&d, 1).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn vertex_bounds() {
        let d = d1();
        assert!(naive_adjacent(&d, 0, 1).is_err());
        assert!(naive_degree(&d, 4).is_err());
    }

    #[test]
    fn d2_chord_crossing() {
        // D2: circle-trapezoid pair with chords 2-5 and 4-7 crossing
        let d = PolygonDiagram::new(
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
        .unwrap();
        assert!(naive_adjacent(&d, 1, 2).unwrap());
    }
}
