//! Differential verification of oracles against the brute-force geometric
//! oracle: full adjacency matrix, all degrees, all neighborhoods.
//!
//! This is the engine behind the `check` command and the acceptance suite.
//! Per-vertex work fans out over rayon under the `parallel` feature.

use crate::circle::CircleOracle;
use crate::container::AnyOracle;
use crate::diagrams::{naive_matrix, to_polygon_diagram, AdjacencyMatrix, ClassTag, Diagram};
use crate::error::{Error, Result};
use crate::polygon::{BuildOptions, MarkScratch, PolygonOracle};
use crate::trapezoid::TrapezoidOracle;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which oracle implementations to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplChoice {
    Unified,
    Wavelet,
    All,
}

#[derive(Debug)]
pub struct CheckOutcome {
    pub n: usize,
    pub impls_checked: Vec<&'static str>,
    pub mismatches: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The forcing class handed to the unified build for a given diagram class.
pub fn unified_impl_class(class: ClassTag) -> ClassTag {
    match class {
        ClassTag::Interval => ClassTag::Interval,
        ClassTag::CircularArc => ClassTag::CircularArc,
        _ => ClassTag::GenericPolygon,
    }
}

/// Builds the unified oracle for any diagram class.
pub fn build_unified(diagram: &Diagram, class: ClassTag, explicit_degrees: bool) -> Result<PolygonOracle> {
    let poly = to_polygon_diagram(diagram)?;
    PolygonOracle::build(
        &poly,
        BuildOptions {
            explicit_degrees,
            impl_class: unified_impl_class(class),
        },
    )
}

/// Builds the class-specific wavelet oracle; only circle and trapezoid have one.
pub fn build_wavelet(diagram: &Diagram, class: ClassTag) -> Result<AnyOracle> {
    match (class, diagram) {
        (ClassTag::Circle, Diagram::Chord(cd)) => {
            Ok(AnyOracle::Circle(CircleOracle::build(cd)?))
        }
        (ClassTag::Trapezoid, Diagram::Trapezoid(td)) => {
            Ok(AnyOracle::Trapezoid(TrapezoidOracle::build(td)?))
        }
        _ => Err(Error::validation(
            0,
            format!("the wavelet implementation does not cover class {class}"),
        )),
    }
}

/// Full adjacency matrix from the oracle, one row per vertex.
pub fn oracle_matrix(oracle: &AnyOracle) -> Result<AdjacencyMatrix> {
    let n = oracle.n();
    let row = |u: usize| -> Result<Vec<usize>> {
        (u + 1..=n)
            .filter_map(|v| match oracle.adjacent(u, v) {
                Ok(true) => Some(Ok(v)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    };
    let rows: Vec<Result<Vec<usize>>>;
    #[cfg(feature = "parallel")]
    {
        rows = (1..=n).into_par_iter().map(row).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        rows = (1..=n).map(row).collect();
    }
    let mut m = AdjacencyMatrix::new(n);
    for (u0, r) in rows.into_iter().enumerate() {
        for v in r? {
            m.set(u0 + 1, v);
        }
    }
    Ok(m)
}

/// Sequential twin of [`oracle_matrix`] for the bench comparison.
pub fn oracle_matrix_serial(oracle: &AnyOracle) -> Result<AdjacencyMatrix> {
    let n = oracle.n();
    let mut m = AdjacencyMatrix::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if oracle.adjacent(u, v)? {
                m.set(u, v);
            }
        }
    }
    Ok(m)
}

/// Sum of neighborhood sizes over all vertices, fanned out in parallel.
pub fn neighborhood_sweep(oracle: &PolygonOracle) -> Result<u64> {
    #[cfg(feature = "parallel")]
    {
        (1..=oracle.n())
            .into_par_iter()
            .map_init(MarkScratch::new, |scratch, u| {
                oracle.neighborhood_with(u, scratch).map(|v| v.len() as u64)
            })
            .try_reduce(|| 0u64, |a, b| Ok(a + b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        neighborhood_sweep_serial(oracle)
    }
}

pub fn neighborhood_sweep_serial(oracle: &PolygonOracle) -> Result<u64> {
    let mut scratch = MarkScratch::new();
    let mut total = 0u64;
    for u in 1..=oracle.n() {
        total += oracle.neighborhood_with(u, &mut scratch)?.len() as u64;
    }
    Ok(total)
}

const MISMATCH_CAP: usize = 20;

fn compare_oracle(
    truth: &AdjacencyMatrix,
    oracle: &AnyOracle,
    mismatches: &mut Vec<String>,
) -> Result<()> {
    let n = truth.n();
    let name = oracle.impl_name();
    let per_vertex = |u: usize| -> Result<Vec<String>> {
        let mut local = Vec::new();
        let want_nb = truth.neighborhood(u);
        let got_nb = oracle.neighborhood(u)?;
        if got_nb != want_nb {
            local.push(format!(
                "{name}: neighborhood({u}) = {got_nb:?}, brute force says {want_nb:?}"
            ));
        }
        let got_deg = oracle.degree(u)?;
        if got_deg != want_nb.len() {
            local.push(format!(
                "{name}: degree({u}) = {got_deg}, brute force says {}",
                want_nb.len()
            ));
        }
        for v in 1..=n {
            let want = truth.get(u, v) && u != v;
            let got = oracle.adjacent(u, v)?;
            if got != want {
                local.push(format!(
                    "{name}: adjacent({u}, {v}) = {got}, brute force says {want}"
                ));
                if local.len() > MISMATCH_CAP {
                    return Ok(local);
                }
            }
        }
        Ok(local)
    };
    let results: Vec<Result<Vec<String>>>;
    #[cfg(feature = "parallel")]
    {
        results = (1..=n).into_par_iter().map(per_vertex).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        results = (1..=n).map(per_vertex).collect();
    }
    for r in results {
        for line in r? {
            if mismatches.len() < MISMATCH_CAP {
                mismatches.push(line);
            }
        }
    }
    Ok(())
}

/// Verifies the chosen oracle implementations against brute force.
/// `flip` inverts one adjacency bit of the ground truth before comparing,
/// which is the mutation hook used to test mismatch reporting.
pub fn check_diagram(
    class: ClassTag,
    diagram: &Diagram,
    choice: ImplChoice,
    flip: Option<(usize, usize)>,
) -> Result<CheckOutcome> {
    let poly = to_polygon_diagram(diagram)?;
    let mut truth = naive_matrix(&poly);
    if let Some((u, v)) = flip {
        if u == 0 || v == 0 || u > truth.n() || v > truth.n() || u == v {
            return Err(Error::OutOfRange {
                arg: "flip",
                value: u.max(v),
                min: 1,
                max: truth.n(),
            });
        }
        truth.toggle(u, v);
    }
    let mut outcome = CheckOutcome {
        n: diagram.n(),
        impls_checked: Vec::new(),
        mismatches: Vec::new(),
    };
    let wavelet_applies = matches!(class, ClassTag::Circle | ClassTag::Trapezoid);
    if matches!(choice, ImplChoice::Unified | ImplChoice::All) {
        let oracle = AnyOracle::Unified(build_unified(diagram, class, false)?);
        outcome.impls_checked.push("unified");
        compare_oracle(&truth, &oracle, &mut outcome.mismatches)?;
    }
    match choice {
        ImplChoice::Wavelet => {
            let oracle = build_wavelet(diagram, class)?;
            outcome.impls_checked.push(oracle.impl_name());
            compare_oracle(&truth, &oracle, &mut outcome.mismatches)?;
        }
        ImplChoice::All if wavelet_applies => {
            let oracle = build_wavelet(diagram, class)?;
            outcome.impls_checked.push(oracle.impl_name());
            compare_oracle(&truth, &oracle, &mut outcome.mismatches)?;
        }
        _ => {}
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::generate;

    #[test]
    fn clean_diagrams_pass() {
        for class in ClassTag::ALL {
            let d = generate(class, 15, 4, 42).unwrap();
            let outcome = check_diagram(class, &d, ImplChoice::All, None).unwrap();
            assert!(outcome.passed(), "{class}: {:?}", outcome.mismatches);
            let expected_impls = match class {
                ClassTag::Circle | ClassTag::Trapezoid => 2,
                _ => 1,
            };
            assert_eq!(outcome.impls_checked.len(), expected_impls, "{class}");
        }
    }

    #[test]
    fn injected_flip_is_reported() {
        let d = generate(ClassTag::Circle, 15, 2, 42).unwrap();
        let outcome = check_diagram(ClassTag::Circle, &d, ImplChoice::All, Some((1, 2))).unwrap();
        assert!(!outcome.passed());
    }

    #[test]
    fn wavelet_choice_rejected_for_other_classes() {
        let d = generate(ClassTag::Permutation, 5, 2, 1).unwrap();
        assert!(check_diagram(ClassTag::Permutation, &d, ImplChoice::Wavelet, None).is_err());
    }
}
