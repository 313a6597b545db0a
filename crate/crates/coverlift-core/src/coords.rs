//! Integer edge-weight vectors for multicurves in normal position.
//!
//! A weight vector is admissible iff in every triangle the three side
//! weights (a, b, c) satisfy a + b + c even and the triangle inequalities;
//! equivalently all corner counts (a + b - c)/2 etc. are non-negative
//! integers. On a fixed ideal triangulation admissible vectors are in
//! bijection with isotopy classes of normal multicurves.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CurveError, MatchingViolation, ViolationKind};
use crate::triangulation::IdealTriangulation;

/// Weights are arbitrary-precision: Dehn twisting grows them without bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalCoordinates {
    weights: Vec<BigUint>,
}

impl NormalCoordinates {
    pub fn new(weights: Vec<BigUint>) -> Self {
        NormalCoordinates { weights }
    }

    pub fn zero(num_edges: usize) -> Self {
        NormalCoordinates { weights: vec![BigUint::zero(); num_edges] }
    }

    pub fn from_u64(weights: &[u64]) -> Self {
        NormalCoordinates { weights: weights.iter().map(|&w| BigUint::from(w)).collect() }
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> &BigUint {
        &self.weights[edge]
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }

    pub fn total_weight(&self) -> BigUint {
        self.weights.iter().sum()
    }

    /// Component-wise sum; both vectors must have the same length.
    pub fn add(&self, other: &NormalCoordinates) -> NormalCoordinates {
        assert_eq!(self.weights.len(), other.weights.len());
        NormalCoordinates {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: u64) -> NormalCoordinates {
        NormalCoordinates { weights: self.weights.iter().map(|w| w * k).collect() }
    }

    /// Downcast to machine weights for the tracing/overlay engines.
    pub fn small(&self) -> Result<Vec<u64>, CurveError> {
        self.weights
            .iter()
            .enumerate()
            .map(|(e, w)| {
                w.to_u64().ok_or_else(|| CurveError::WeightsTooLarge {
                    edge: e,
                    weight: w.to_string(),
                })
            })
            .collect()
    }

    /// Canonical serialized form: weights in edge order, decimal, one token
    /// per edge. Two vectors represent the same multicurve class iff these
    /// byte strings are equal.
    pub fn canonical_bytes(&self) -> String {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        parts.join(",")
    }
}

/// Checks length and per-triangle matching conditions; returns every
/// violation rather than failing on the first.
pub fn validate(
    tri: &IdealTriangulation,
    coords: &NormalCoordinates,
) -> Result<Vec<MatchingViolation>, CurveError> {
    if coords.num_edges() != tri.num_edges() {
        return Err(CurveError::WrongLength {
            got: coords.num_edges(),
            expected: tri.num_edges(),
        });
    }
    let mut violations = Vec::new();
    for t in 0..tri.num_triangles() {
        let [ea, eb, ec] = tri.triangle_edges(t);
        let a = coords.weight(ea);
        let b = coords.weight(eb);
        let c = coords.weight(ec);
        if (a + b + c).bit(0) {
            violations.push(MatchingViolation { triangle: t, kind: ViolationKind::Parity });
        }
        if a + b < *c || b + c < *a || a + c < *b {
            violations.push(MatchingViolation {
                triangle: t,
                kind: ViolationKind::TriangleInequality,
            });
        }
    }
    Ok(violations)
}

pub fn is_valid(tri: &IdealTriangulation, coords: &NormalCoordinates) -> bool {
    matches!(validate(tri, coords), Ok(v) if v.is_empty())
}

/// Validity check on machine weights, used by enumeration loops.
pub fn small_weights_valid(tri: &IdealTriangulation, w: &[u64]) -> bool {
    for t in 0..tri.num_triangles() {
        let [ea, eb, ec] = tri.triangle_edges(t);
        let (a, b, c) = (w[ea], w[eb], w[ec]);
        if (a + b + c) % 2 != 0 || a + b < c || b + c < a || a + c < b {
            return false;
        }
    }
    true
}

/// Corner counts of a triangle: `corner_counts[c]` arcs cut corner `c`.
/// Requires valid weights.
pub fn corner_counts(w: &[u64; 3]) -> [u64; 3] {
    let n = |i: usize| (w[i] + w[(i + 2) % 3] - w[(i + 1) % 3]) / 2;
    [n(0), n(1), n(2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;

    #[test]
    fn zero_vector_is_valid() {
        let t = build_surface(0, 5).unwrap();
        let z = NormalCoordinates::zero(t.num_edges());
        assert!(validate(&t, &z).unwrap().is_empty());
        assert!(z.is_zero());
    }

    #[test]
    fn parity_violation_reported() {
        let t = build_surface(0, 5).unwrap();
        let [ea, _, _] = t.triangle_edges(0);
        let mut w = vec![0u64; t.num_edges()];
        w[ea] = 1;
        let coords = NormalCoordinates::from_u64(&w);
        let violations = validate(&t, &coords).unwrap();
        assert!(violations.iter().any(|v| v.kind == ViolationKind::Parity));
    }

    #[test]
    fn triangle_inequality_violation_reported() {
        let t = build_surface(0, 5).unwrap();
        // Weight pattern (3, 1, 1) in some triangle: parity fine, inequality
        // violated unless edges repeat inside the triangle.
        let [ea, eb, ec] = t.triangle_edges(0);
        if ea != eb && eb != ec && ea != ec {
            let mut w = vec![0u64; t.num_edges()];
            w[ea] = 3;
            w[eb] = 1;
            w[ec] = 1;
            let coords = NormalCoordinates::from_u64(&w);
            let violations = validate(&t, &coords).unwrap();
            assert!(violations
                .iter()
                .any(|v| v.triangle == 0 && v.kind == ViolationKind::TriangleInequality));
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let t = build_surface(0, 5).unwrap();
        let coords = NormalCoordinates::from_u64(&[0, 0]);
        assert!(matches!(validate(&t, &coords), Err(CurveError::WrongLength { .. })));
    }

    #[test]
    fn corner_count_arithmetic() {
        assert_eq!(corner_counts(&[2, 2, 2]), [1, 1, 1]);
        assert_eq!(corner_counts(&[4, 2, 2]), [2, 2, 0]);
        assert_eq!(corner_counts(&[0, 0, 0]), [0, 0, 0]);
        // w_i = n_i + n_{i+1} must hold.
        for w in [[2u64, 2, 2], [4, 2, 2], [3, 2, 1], [5, 4, 3]] {
            if (w[0] + w[1] + w[2]) % 2 != 0 {
                continue;
            }
            let n = corner_counts(&w);
            for i in 0..3 {
                assert_eq!(w[i], n[i] + n[(i + 1) % 3], "w = {:?}", w);
            }
        }
    }
}
