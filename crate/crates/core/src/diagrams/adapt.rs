//! Class adapters: embed every supported diagram into the generalized
//! polygon-on-a-circle form with adjacency preserved.
//!
//! * chords and permutation segments become 2-corner all-chord polygons
//!   (segment i -> pi(i) maps to the chord {i, 2n+1-pi(i)}: top positions
//!   run 1..n clockwise, bottom positions are reversed);
//! * intervals and circular arcs become 2-corner polygons with the arc
//!   covering the span and one chord closing it;
//! * trapezoids split the circle in half: the first line maps onto the
//!   upper half clockwise, the second line reversed onto the lower half,
//!   top and bottom edges become arcs, legs become chords.

use super::{ArcFamily, ChordDiagram, Diagram, PermutationDiagram, PolygonDiagram, SideKind, TrapezoidDiagram};
use crate::error::Result;

pub fn to_polygon_diagram(d: &Diagram) -> Result<PolygonDiagram> {
    match d {
        Diagram::Polygon(p) => Ok(p.clone()),
        Diagram::Chord(c) => chords_to_polygon(c),
        Diagram::Permutation(p) => permutation_to_polygon(p),
        Diagram::Arcs(a) => arcs_to_polygon(a),
        Diagram::Trapezoid(t) => trapezoid_to_polygon(t),
    }
}

fn chords_to_polygon(c: &ChordDiagram) -> Result<PolygonDiagram> {
    let n = c.n();
    let mut corners = vec![(0u32, SideKind::Chord); 2 * n];
    for (i, &(s, e)) in c.pairs().iter().enumerate() {
        corners[s as usize - 1].0 = i as u32 + 1;
        corners[e as usize - 1].0 = i as u32 + 1;
    }
    PolygonDiagram::new(n, corners)
}

fn permutation_to_polygon(p: &PermutationDiagram) -> Result<PolygonDiagram> {
    let n = p.n();
    let pairs: Vec<(u32, u32)> = p
        .perm()
        .iter()
        .enumerate()
        .map(|(i, &pi)| (i as u32 + 1, (2 * n) as u32 + 1 - pi))
        .collect();
    chords_to_polygon(&ChordDiagram::new(pairs)?)
}

fn arcs_to_polygon(a: &ArcFamily) -> Result<PolygonDiagram> {
    let n = a.n();
    let mut corners = vec![(0u32, SideKind::Chord); 2 * n];
    for (i, &(s, e)) in a.spans().iter().enumerate() {
        let label = i as u32 + 1;
        // the side starting at `s` runs clockwise to `e`: it is the arc
        // exactly when s < e, otherwise the arc is the wrap side from `s`
        corners[s as usize - 1] = (label, SideKind::Arc);
        corners[e as usize - 1] = (label, SideKind::Chord);
    }
    PolygonDiagram::new(n, corners)
}

fn trapezoid_to_polygon(t: &TrapezoidDiagram) -> Result<PolygonDiagram> {
    let n = t.n();
    let m = 4 * n;
    // per-line ranks of the merged coordinates
    let mut on_first = vec![false; m + 1];
    for &[a, b, _, _] in t.traps() {
        on_first[a as usize] = true;
        on_first[b as usize] = true;
    }
    let mut rank_l1 = vec![0usize; m + 1];
    let mut rank_l2 = vec![0usize; m + 1];
    let (mut r1, mut r2) = (0usize, 0usize);
    for p in 1..=m {
        if on_first[p] {
            r1 += 1;
            rank_l1[p] = r1;
        } else {
            r2 += 1;
            rank_l2[p] = r2;
        }
    }
    let mut corners = vec![(0u32, SideKind::Chord); m];
    for (i, &[a, b, c, d]) in t.traps().iter().enumerate() {
        let label = i as u32 + 1;
        let pa = rank_l1[a as usize];
        let pb = rank_l1[b as usize];
        let pc = m + 1 - rank_l2[c as usize];
        let pd = m + 1 - rank_l2[d as usize];
        // clockwise order: a, b (upper half), then d, c (lower half reversed)
        corners[pa - 1] = (label, SideKind::Arc); // top edge a -> b
        corners[pb - 1] = (label, SideKind::Chord); // leg b -> d
        corners[pd - 1] = (label, SideKind::Arc); // bottom edge d -> c
        corners[pc - 1] = (label, SideKind::Chord); // leg c -> a (wrap)
    }
    PolygonDiagram::new(n, corners)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{naive_matrix, native_matrix, generate, ClassTag};

    #[test]
    fn chord_fixture_becomes_d1() {
        let c = ChordDiagram::new(vec![(1, 3), (2, 5), (4, 6)]).unwrap();
        let p = chords_to_polygon(&c).unwrap();
        let labels: Vec<u32> = p.corners().iter().map(|&(l, _)| l).collect();
        assert_eq!(labels, vec![1, 2, 1, 3, 2, 3]);
        assert!(p.corners().iter().all(|&(_, k)| k == SideKind::Chord));
    }

    #[test]
    fn identity_permutation_has_no_crossings() {
        let p = PermutationDiagram::new(vec![1, 2]).unwrap();
        let poly = permutation_to_polygon(&p).unwrap();
        let m = naive_matrix(&poly);
        assert!(!m.get(1, 2));
        let rev = PermutationDiagram::new(vec![2, 1]).unwrap();
        let poly = permutation_to_polygon(&rev).unwrap();
        assert!(naive_matrix(&poly).get(1, 2));
    }

    #[test]
    fn adapters_preserve_adjacency() {
        for class in [
            ClassTag::Circle,
            ClassTag::Permutation,
            ClassTag::Interval,
            ClassTag::CircularArc,
            ClassTag::Trapezoid,
        ] {
            for seed in 0..40u64 {
                for n in [1usize, 2, 5, 20, 50] {
                    let d = generate(class, n, 3, seed).unwrap();
                    let native = native_matrix(&d);
                    let poly = to_polygon_diagram(&d).unwrap();
                    let embedded = naive_matrix(&poly);
                    assert_eq!(native, embedded, "{class} n={n} seed={seed}");
                }
            }
        }
    }
}
