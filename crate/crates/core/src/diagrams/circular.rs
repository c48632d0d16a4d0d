//! Circular-span geometry shared by the brute-force oracle and the
//! succinct query algorithms.

/// Whether a polygon side is a circle arc or a chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideKind {
    Arc,
    Chord,
}

/// One side of a generalized polygon, as the clockwise span of corner-string
/// positions from `start` to `end`. The wrap side of a polygon has
/// `end < start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub kind: SideKind,
    pub start: usize,
    pub end: usize,
}

/// `p` strictly inside the clockwise open interval from `a` to `b`.
#[inline]
pub(crate) fn in_open_cw(p: usize, a: usize, b: usize) -> bool {
    if a < b {
        a < p && p < b
    } else {
        p > a || p < b
    }
}

/// Geometric intersection of two sides of different polygons inscribed in
/// the same circle. Chords intersect chords iff their endpoints interleave;
/// a chord meets an arc iff it has an endpoint on the arc's closed span;
/// arcs meet iff their closed spans share a point.
pub fn sides_intersect(e: &Side, f: &Side) -> bool {
    use SideKind::*;
    let shares_endpoint = e.start == f.start || e.start == f.end || e.end == f.start || e.end == f.end;
    match (e.kind, f.kind) {
        (Chord, Chord) => {
            shares_endpoint
                || (in_open_cw(f.start, e.start, e.end) ^ in_open_cw(f.end, e.start, e.end))
        }
        (Arc, Chord) => {
            shares_endpoint
                || in_open_cw(f.start, e.start, e.end)
                || in_open_cw(f.end, e.start, e.end)
        }
        (Chord, Arc) => {
            shares_endpoint
                || in_open_cw(e.start, f.start, f.end)
                || in_open_cw(e.end, f.start, f.end)
        }
        (Arc, Arc) => {
            shares_endpoint
                || in_open_cw(f.start, e.start, e.end)
                || in_open_cw(e.start, f.start, f.end)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chord(start: usize, end: usize) -> Side {
        Side {
            kind: SideKind::Chord,
            start,
            end,
        }
    }

    fn arc(start: usize, end: usize) -> Side {
        Side {
            kind: SideKind::Arc,
            start,
            end,
        }
    }

    #[test]
    fn spec_examples() {
        assert!(sides_intersect(&chord(8, 12), &chord(10, 14)));
        assert!(sides_intersect(&chord(5, 6), &arc(2, 8)));
        assert!(sides_intersect(&arc(9, 10), &arc(7, 11)));
        assert!(!sides_intersect(&chord(1, 3), &chord(4, 6)));
    }

    #[test]
    fn chord_chord_cases() {
        assert!(!sides_intersect(&chord(2, 5), &chord(3, 4))); // nested
        assert!(sides_intersect(&chord(2, 5), &chord(3, 7))); // interleaved
        // wrap chord given as span [5, 2]: same geometric chord as [2, 5]
        assert_eq!(
            sides_intersect(&chord(5, 2), &chord(3, 7)),
            sides_intersect(&chord(2, 5), &chord(3, 7))
        );
        assert_eq!(
            sides_intersect(&chord(5, 2), &chord(3, 4)),
            sides_intersect(&chord(2, 5), &chord(3, 4))
        );
    }

    #[test]
    fn arc_cases() {
        assert!(sides_intersect(&arc(2, 8), &arc(5, 11))); // overlap
        assert!(sides_intersect(&arc(2, 8), &arc(3, 6))); // containment
        assert!(!sides_intersect(&arc(2, 4), &arc(6, 9))); // disjoint
        assert!(sides_intersect(&arc(9, 3), &arc(1, 2))); // wrap arc covers 1..3
        assert!(!sides_intersect(&arc(9, 3), &arc(4, 8)));
        assert!(!sides_intersect(&chord(4, 8), &arc(9, 3)));
        assert!(sides_intersect(&chord(1, 6), &arc(9, 3))); // endpoint 1 on wrap arc
        // chord strictly under an arc does not touch it
        assert!(!sides_intersect(&chord(1, 10), &arc(4, 6)));
    }
}
