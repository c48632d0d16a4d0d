//! Seeded diagram generators, deterministic per (class, n, k, seed).
//!
//! Endpoint-matching classes (circle, interval, circular-arc) draw mostly
//! short spans with an occasional full-range one: random perfect matchings
//! give quadratically many edges, which makes whole-neighborhood sweeps
//! output-bound at large n, while bounded spans keep the expected degree
//! near the span cap and still exercise every crossing configuration.

use super::{
    ArcFamily, ChordDiagram, ClassTag, Diagram, PermutationDiagram, PolygonDiagram, SideKind,
    TrapezoidDiagram,
};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fenwick tree over 0/1 occupancy for k-th unused selection.
struct Occupancy {
    tree: Vec<u32>,
    len: usize,
}

impl Occupancy {
    fn full(len: usize) -> Self {
        let mut o = Occupancy {
            tree: vec![0; len + 1],
            len,
        };
        for i in 1..=len {
            o.add(i, 1);
        }
        o
    }

    fn add(&mut self, mut i: usize, delta: i64) {
        while i <= self.len {
            self.tree[i] = (self.tree[i] as i64 + delta) as u32;
            i += i & i.wrapping_neg();
        }
    }

    /// Unused count in 1..=i.
    fn prefix(&self, mut i: usize) -> usize {
        let mut s = 0usize;
        while i > 0 {
            s += self.tree[i] as usize;
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Position of the k-th unused element (1-based k).
    fn kth(&self, mut k: usize) -> usize {
        let mut pos = 0usize;
        let mut mask = self.len.next_power_of_two();
        while mask > 0 {
            let next = pos + mask;
            if next <= self.len && (self.tree[next] as usize) < k {
                pos = next;
                k -= self.tree[next] as usize;
            }
            mask >>= 1;
        }
        pos + 1
    }

    fn take(&mut self, pos: usize) {
        self.add(pos, -1);
    }
}

fn span_cap(n: usize) -> usize {
    let log = usize::BITS as usize - n.leading_zeros() as usize;
    (4 * log).max(16)
}

/// Bounded-span perfect matching of 1..2n; each pair is returned with the
/// smaller endpoint first, in increasing order of that endpoint. Small n
/// still sees full-circle spans because the cap exceeds 2n there.
fn local_matching(n: usize, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let m = 2 * n;
    let mut occ = Occupancy::full(m);
    let cap = span_cap(n);
    let mut pairs = Vec::with_capacity(n);
    let mut s = 1usize;
    for _ in 0..n {
        while occ.prefix(s) < occ.prefix(s.saturating_sub(1)) + 1 {
            s += 1; // advance to the smallest unused position
        }
        occ.take(s);
        let window_end = (s + cap).min(m);
        let in_window = occ.prefix(window_end) - occ.prefix(s);
        let e = if in_window == 0 {
            occ.kth(occ.prefix(s) + 1)
        } else {
            occ.kth(occ.prefix(s) + rng.gen_range(1..=in_window))
        };
        occ.take(e);
        pairs.push((s as u32, e as u32));
    }
    pairs
}

/// Random corner-string of `n` labels, `sizes[u]` occurrences each.
fn shuffled_corner_string(sizes: &[usize], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut labels = Vec::with_capacity(sizes.iter().sum());
    for (u, &d) in sizes.iter().enumerate() {
        labels.extend(std::iter::repeat_n(u as u32 + 1, d));
    }
    for i in (1..labels.len()).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    labels
}

fn relabel_canonical(n: usize, labels: Vec<u32>, kinds: Vec<SideKind>) -> Result<PolygonDiagram> {
    let corners: Vec<(u32, SideKind)> = labels.into_iter().zip(kinds).collect();
    let (d, _) = PolygonDiagram::canonicalize(n, corners)?;
    Ok(d)
}

/// Deterministic diagram generator. `k` is the corner count for the
/// k-polygon class and the maximum corner count for generic polygons;
/// other classes ignore it.
pub fn generate(class: ClassTag, n: usize, k: usize, seed: u64) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::validation(0, "generator needs n >= 1"));
    }
    // k only participates for classes that read it, so e.g. circle outputs
    // do not depend on an irrelevant --k value
    let k_mix = match class {
        ClassTag::KPolygon | ClassTag::GenericPolygon => k as u64,
        _ => 0,
    };
    let mix = seed ^ ((class.tag_byte() as u64) << 56) ^ ((n as u64) << 24) ^ (k_mix << 8);
    let mut rng = ChaCha8Rng::seed_from_u64(mix);
    match class {
        ClassTag::Circle => {
            let pairs = local_matching(n, &mut rng);
            Ok(Diagram::Chord(ChordDiagram::new(pairs)?))
        }
        ClassTag::Interval => {
            let pairs = local_matching(n, &mut rng);
            Ok(Diagram::Arcs(ArcFamily::new(pairs, false)?))
        }
        ClassTag::CircularArc => {
            let pairs = local_matching(n, &mut rng);
            let spans: Vec<(u32, u32)> = pairs
                .into_iter()
                .map(|(s, e)| if rng.gen_bool(0.5) { (e, s) } else { (s, e) })
                .collect();
            let (d, _) = ArcFamily::canonicalize(spans, true)?;
            Ok(Diagram::Arcs(d))
        }
        ClassTag::Permutation => {
            let mut perm: Vec<u32> = (1..=n as u32).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            Ok(Diagram::Permutation(PermutationDiagram::new(perm)?))
        }
        ClassTag::KPolygon => {
            if k < 2 {
                return Err(Error::validation(0, "k-polygon generator needs k >= 2"));
            }
            let labels = shuffled_corner_string(&vec![k; n], &mut rng);
            let kinds = vec![SideKind::Chord; labels.len()];
            Ok(Diagram::Polygon(relabel_canonical(n, labels, kinds)?))
        }
        ClassTag::CircleTrapezoid => {
            let labels = shuffled_corner_string(&vec![4; n], &mut rng);
            let phase: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let mut seen = vec![0usize; n];
            let kinds: Vec<SideKind> = labels
                .iter()
                .map(|&l| {
                    let u = l as usize - 1;
                    let idx = seen[u];
                    seen[u] += 1;
                    if (idx % 2 == 0) == phase[u] {
                        SideKind::Arc
                    } else {
                        SideKind::Chord
                    }
                })
                .collect();
            Ok(Diagram::Polygon(relabel_canonical(n, labels, kinds)?))
        }
        ClassTag::GenericPolygon => {
            let kmax = k.max(2);
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=kmax)).collect();
            let labels = shuffled_corner_string(&sizes, &mut rng);
            let mut flags: Vec<Vec<SideKind>> = Vec::with_capacity(n);
            for &d in &sizes {
                let mut f = vec![SideKind::Chord; d];
                for i in 0..d {
                    let prev = f[(i + d - 1) % d];
                    let first = f[0];
                    let blocked = prev == SideKind::Arc || (i == d - 1 && first == SideKind::Arc);
                    if !blocked && rng.gen_ratio(1, 3) {
                        f[i] = SideKind::Arc;
                    }
                }
                flags.push(f);
            }
            let mut seen = vec![0usize; n];
            let kinds: Vec<SideKind> = labels
                .iter()
                .map(|&l| {
                    let u = l as usize - 1;
                    let idx = seen[u];
                    seen[u] += 1;
                    flags[u][idx]
                })
                .collect();
            Ok(Diagram::Polygon(relabel_canonical(n, labels, kinds)?))
        }
        ClassTag::Trapezoid => {
            let m = 4 * n;
            let mut on_first_line: Vec<bool> = (0..m).map(|i| i < 2 * n).collect();
            for i in (1..m).rev() {
                on_first_line.swap(i, rng.gen_range(0..=i));
            }
            let mut l1: Vec<u32> = Vec::with_capacity(2 * n);
            let mut l2: Vec<u32> = Vec::with_capacity(2 * n);
            for (i, &top) in on_first_line.iter().enumerate() {
                if top {
                    l1.push(i as u32 + 1);
                } else {
                    l2.push(i as u32 + 1);
                }
            }
            for i in (1..l1.len()).rev() {
                l1.swap(i, rng.gen_range(0..=i));
            }
            for i in (1..l2.len()).rev() {
                l2.swap(i, rng.gen_range(0..=i));
            }
            let traps: Vec<[u32; 4]> = (0..n)
                .map(|i| {
                    let (a, b) = (l1[2 * i].min(l1[2 * i + 1]), l1[2 * i].max(l1[2 * i + 1]));
                    let (c, d) = (l2[2 * i].min(l2[2 * i + 1]), l2[2 * i].max(l2[2 * i + 1]));
                    [a, b, c, d]
                })
                .collect();
            let (d, _) = TrapezoidDiagram::canonicalize(traps)?;
            Ok(Diagram::Trapezoid(d))
        }
    }
}
