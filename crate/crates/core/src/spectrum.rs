//! Eigenvalues of the simple random walk on a level Schreier graph.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::schreier::LabeledSchreierGraph;

/// Largest vertex count handed to the dense solver.
pub const MAX_DENSE_VERTICES: usize = 4096;

/// Largest tolerated `|M - Mᵀ|` entry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// The walk operator `M = (1/2|S|) Σ_s (P_s + P_sᵀ)` as a dense matrix.
pub fn walk_operator(g: &LabeledSchreierGraph) -> Result<DMatrix<f64>> {
    let n = g.vertex_count();
    if n > MAX_DENSE_VERTICES {
        return Err(Error::TooLarge {
            what: "dense spectrum vertex count",
            limit: MAX_DENSE_VERTICES,
            requested: n,
        });
    }
    let s = g.labels().len();
    if s == 0 {
        return Err(Error::Malformed(
            "random walk needs at least one generator".into(),
        ));
    }
    let w = 1.0 / (2 * s) as f64;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for gen in 0..s {
        for (v, &t) in g.generator_targets(gen).iter().enumerate() {
            m[(v, t as usize)] += w;
            m[(t as usize, v)] += w;
        }
    }
    Ok(m)
}

/// Eigenvalues of the walk operator, sorted in descending order.
pub fn spectrum(g: &LabeledSchreierGraph) -> Result<Vec<f64>> {
    let m = walk_operator(g)?;
    let deviation = (&m - m.transpose()).amax();
    if deviation > SYMMETRY_TOLERANCE {
        return Err(Error::NotSymmetric(format!("{deviation:e}")));
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// How many of `values` lie within `tolerance` of `target`.
pub fn multiplicity(values: &[f64], target: f64, tolerance: f64) -> usize {
    values
        .iter()
        .filter(|v| (*v - target).abs() <= tolerance)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::schreier::{build_schreier, SchreierLimits};

    fn graph(text: &str, level: usize) -> LabeledSchreierGraph {
        let (aut, gens) = parse(text).unwrap().to_automaton();
        build_schreier(&aut, &gens, level, SchreierLimits::default()).unwrap()
    }

    #[test]
    fn identity_spectrum_is_all_ones() {
        let values = spectrum(&graph("alphabet 2\ne = id(e, e)\ngens e", 3)).unwrap();
        assert_eq!(values.len(), 8);
        assert!(values.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn odometer_is_a_cycle() {
        // the walk on an 8-cycle has eigenvalues cos(2πj/8)
        let values = spectrum(&graph(
            "alphabet 2\na = (0 1)(e, a)\ne = id(e, e)\ngens a",
            3,
        ))
        .unwrap();
        let mut expected: Vec<f64> = (0..8)
            .map(|j| (2.0 * std::f64::consts::PI * j as f64 / 8.0).cos())
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        for (v, e) in values.iter().zip(&expected) {
            assert!((v - e).abs() < 1e-10, "{v} vs {e}");
        }
    }

    #[test]
    fn size_guard() {
        let g = graph("alphabet 2\ne = id(e, e)\ngens e", 13);
        assert!(matches!(spectrum(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn multiplicity_counts() {
        assert_eq!(multiplicity(&[1.0, 1.0 - 1e-12, 0.5], 1.0, 1e-9), 2);
    }
}
