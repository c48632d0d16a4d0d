//! Succinct navigational oracles for intersection graphs of generalized
//! polygons on a circle.
//!
//! The crate provides three oracle families answering `degree`, `adjacent`
//! and `neighborhood` queries over graphs given by a geometric representation:
//!
//! * [`PolygonOracle`] — the unified representation covering circle,
//!   k-polygon-circle, circle-trapezoid, circular-arc, interval, permutation
//!   and trapezoid graphs via class adapters;
//! * [`CircleOracle`] — an alternative circle-graph structure whose degree
//!   query does not enumerate neighbors;
//! * [`TrapezoidOracle`] — the analogous alternative for trapezoid graphs.
//!
//! Underneath sit reusable succinct primitives (rank/select bitvector,
//! bounded-alphabet sequence, range argmin/argmax, orthogonal range
//! counting), diagram types with validation, seeded generators, and a
//! brute-force geometric oracle used as ground truth by the verification
//! pipeline.
//!
//! With the default `parallel` feature the batch verification paths fan out
//! over rayon; disabling it falls back to sequential loops.

pub mod circle;
pub mod container;
pub mod diagrams;
pub mod error;
pub mod grid;
pub mod polygon;
pub mod primitives;
pub mod trapezoid;
pub mod verify;
pub mod space;

pub use diagrams::{generate, naive_adjacent, naive_degree, naive_matrix, naive_matrix_serial, naive_neighborhood, native_matrix, parse_diagram, render_diagram, sides_intersect, to_polygon_diagram, AdjacencyMatrix, ArcFamily, ChordDiagram, ClassTag, Diagram, Parsed, PermutationDiagram, PolygonDiagram, Side, SideKind, TrapezoidDiagram};
pub use error::{Error, Result};
pub use grid::{PointGrid, Rect};
pub use polygon::{BuildOptions, CircularSpan, MarkScratch, PolygonOracle, VirtualArray};
pub use primitives::{BitVector, ExtremeMode, LabelSequence, RangeArgIndex};
pub use space::SpaceReport;
pub use circle::CircleOracle;
pub use container::{deserialize_oracle, serialize_oracle, AnyOracle};
pub use verify::{check_diagram, CheckOutcome, ImplChoice};
pub use trapezoid::TrapezoidOracle;
