//! Connected essential curves: the vertices of the curve complex.

use std::sync::Arc;

use crate::coords::{self, NormalCoordinates};
use crate::error::CurveError;
use crate::trace::{self, TracedComponent};
use crate::triangulation::IdealTriangulation;

/// A certified vertex of C(S): a valid, connected, essential, non-peripheral
/// normal curve on a fixed triangulation.
#[derive(Debug, Clone)]
pub struct CurveClass {
    tri: Arc<IdealTriangulation>,
    coords: NormalCoordinates,
}

/// Result of classifying a connected normal curve. In an ideal triangulation
/// every normal curve is essential or a puncture link, so these two cases
/// are exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Essential,
    /// The link of the given puncture.
    Peripheral(usize),
}

impl CurveClass {
    /// Certifies coordinates as a curve-complex vertex: validates matching
    /// conditions, connectivity, and non-peripherality.
    pub fn new(tri: Arc<IdealTriangulation>, coords: NormalCoordinates) -> Result<Self, CurveError> {
        let violations = coords::validate(&tri, &coords)?;
        if !violations.is_empty() {
            return Err(CurveError::Invalid(violations));
        }
        if coords.is_zero() {
            return Err(CurveError::Empty);
        }
        let small = coords.small()?;
        let comps = trace::trace(&tri, &small)?;
        if comps.len() != 1 {
            return Err(CurveError::Disconnected(comps.len()));
        }
        match classify_small(&tri, &comps[0].weights) {
            CurveKind::Essential => Ok(CurveClass { tri, coords }),
            CurveKind::Peripheral(_) => Err(CurveError::NotEssential),
        }
    }

    /// Wraps component weights that are already known to be traced and
    /// connected, still rejecting peripheral ones.
    pub(crate) fn from_component(
        tri: Arc<IdealTriangulation>,
        weights: &[u64],
    ) -> Result<Self, CurveError> {
        match classify_small(&tri, weights) {
            CurveKind::Essential => Ok(CurveClass {
                tri,
                coords: NormalCoordinates::from_u64(weights),
            }),
            CurveKind::Peripheral(_) => Err(CurveError::NotEssential),
        }
    }

    pub fn triangulation(&self) -> &Arc<IdealTriangulation> {
        &self.tri
    }

    pub fn coords(&self) -> &NormalCoordinates {
        &self.coords
    }

    pub fn canonical_bytes(&self) -> String {
        self.coords.canonical_bytes()
    }

    pub fn same_surface(&self, other: &CurveClass) -> bool {
        Arc::ptr_eq(&self.tri, &other.tri) || self.tri == other.tri
    }

    pub fn require_same_surface(&self, other: &CurveClass) -> Result<(), CurveError> {
        if self.same_surface(other) {
            Ok(())
        } else {
            Err(CurveError::SurfaceMismatch)
        }
    }

    /// The traced form (single component) of this curve.
    pub fn traced(&self) -> Result<TracedComponent, CurveError> {
        let small = self.coords.small()?;
        let mut comps = trace::trace(&self.tri, &small)?;
        debug_assert_eq!(comps.len(), 1);
        Ok(comps.remove(0))
    }
}

impl PartialEq for CurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_surface(other) && self.coords == other.coords
    }
}

impl Eq for CurveClass {}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveClass {
    /// Canonical order: lexicographic on the weight vector.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

/// Splits a valid multicurve into its connected components.
pub fn components(
    tri: &IdealTriangulation,
    coords: &NormalCoordinates,
) -> Result<Vec<NormalCoordinates>, CurveError> {
    let violations = coords::validate(tri, coords)?;
    if !violations.is_empty() {
        return Err(CurveError::Invalid(violations));
    }
    let small = coords.small()?;
    let comps = trace::trace(tri, &small)?;
    Ok(comps.iter().map(|c| NormalCoordinates::from_u64(&c.weights)).collect())
}

/// Classifies a connected normal curve as essential or peripheral.
pub fn classify(
    tri: &IdealTriangulation,
    coords: &NormalCoordinates,
) -> Result<CurveKind, CurveError> {
    let violations = coords::validate(tri, coords)?;
    if !violations.is_empty() {
        return Err(CurveError::Invalid(violations));
    }
    if coords.is_zero() {
        return Err(CurveError::Empty);
    }
    let small = coords.small()?;
    let comps = trace::trace(tri, &small)?;
    if comps.len() != 1 {
        return Err(CurveError::Disconnected(comps.len()));
    }
    Ok(classify_small(tri, &small))
}

/// Peripheral iff equal to some puncture link.
pub(crate) fn classify_small(tri: &IdealTriangulation, weights: &[u64]) -> CurveKind {
    for (p, link) in tri.puncture_link_weights().iter().enumerate() {
        if link == weights {
            return CurveKind::Peripheral(p);
        }
    }
    CurveKind::Essential
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;

    #[test]
    fn links_classify_as_peripheral() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        for (p, link) in tri.puncture_link_weights().iter().enumerate() {
            let coords = NormalCoordinates::from_u64(link);
            assert_eq!(classify(&tri, &coords).unwrap(), CurveKind::Peripheral(p));
            assert!(matches!(
                CurveClass::new(tri.clone(), coords),
                Err(CurveError::NotEssential)
            ));
        }
    }

    #[test]
    fn zero_vector_has_no_class() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let z = NormalCoordinates::zero(tri.num_edges());
        assert_eq!(components(&tri, &z).unwrap(), vec![]);
        assert!(matches!(classify(&tri, &z), Err(CurveError::Empty)));
    }

    #[test]
    fn doubled_curve_splits_into_copies() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let link = NormalCoordinates::from_u64(&tri.puncture_link_weights()[2]);
        let doubled = link.scale(2);
        let comps = components(&tri, &doubled).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], link);
        assert_eq!(comps[1], link);
    }

    #[test]
    fn disconnected_input_rejected_by_classify() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let links = tri.puncture_link_weights();
        let sum = NormalCoordinates::from_u64(&links[0])
            .add(&NormalCoordinates::from_u64(&links[1]));
        // Links of distinct punctures are disjoint, so the sum has >= 2
        // components.
        let comps = components(&tri, &sum).unwrap();
        if comps.len() > 1 {
            assert!(matches!(classify(&tri, &sum), Err(CurveError::Disconnected(_))));
        }
    }
}
