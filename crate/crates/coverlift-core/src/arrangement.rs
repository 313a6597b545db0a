//! Minimal position, geometric intersection numbers, filling tests, and
//! disjoint witnesses for pairs of curve classes.

use serde::Serialize;

use crate::curve::{classify_small, CurveClass, CurveKind};
use crate::error::CurveError;
use crate::faces::{self, FaceCensus};
use crate::overlay::Overlay;
use crate::trace;

/// The minimal-position overlay of two curves together with its face
/// census: a 4-valent graph on the surface whose vertices realize the
/// geometric intersection number.
#[derive(Debug)]
pub struct Arrangement {
    pub overlay: Overlay,
    pub census: FaceCensus,
}

impl Arrangement {
    pub fn vertices(&self) -> usize {
        self.overlay.crossing_count()
    }

    pub fn bigon_free(&self) -> bool {
        !self.census.has_bigon()
    }

    /// Every complementary face is a disk with at most one puncture.
    pub fn fills(&self) -> bool {
        self.census.fills()
    }
}

/// Overlays two curves on the same triangulation and removes bigons.
pub fn minimal_position(a: &CurveClass, b: &CurveClass) -> Result<Arrangement, CurveError> {
    a.require_same_surface(b)?;
    let overlay = Overlay::build(
        a.triangulation().clone(),
        a.coords().small()?,
        b.coords().small()?,
    )?;
    let census = faces::census(&overlay);
    debug_assert!(!census.has_bigon(), "bigon survived removal");
    debug_assert!(
        census.euler_identity_holds(a.triangulation().surface().genus),
        "face census fails the Euler identity"
    );
    Ok(Arrangement { overlay, census })
}

/// Geometric intersection number via the overlay route (the face census is
/// skipped; bigon removal already yields the minimal crossing count).
pub fn intersection_number(a: &CurveClass, b: &CurveClass) -> Result<u64, CurveError> {
    a.require_same_surface(b)?;
    let overlay = Overlay::build(
        a.triangulation().clone(),
        a.coords().small()?,
        b.coords().small()?,
    )?;
    Ok(overlay.crossing_count() as u64)
}

/// True iff every complementary region of the pair is a disk with at most
/// one puncture; equivalently no essential curve is disjoint from both.
/// Equal classes never fill.
pub fn fills(a: &CurveClass, b: &CurveClass) -> Result<bool, CurveError> {
    if a == b {
        return Ok(false);
    }
    Ok(minimal_position(a, b)?.fills())
}

/// An essential non-peripheral curve disjoint from both inputs, when one
/// exists; `None` exactly when the pair fills.
///
/// Candidates are boundary circuits of the non-disk (or multiply punctured)
/// complementary faces, pushed into the face and normalized.
pub fn disjoint_witness(a: &CurveClass, b: &CurveClass) -> Result<Option<CurveClass>, CurveError> {
    let arr = minimal_position(a, b)?;
    witness_from(&arr, a, b)
}

pub fn witness_from(
    arr: &Arrangement,
    a: &CurveClass,
    b: &CurveClass,
) -> Result<Option<CurveClass>, CurveError> {
    let tri = a.triangulation();
    let mut candidates: Vec<CurveClass> = Vec::new();
    for face in &arr.census.faces {
        if face.is_disk() && face.punctures.len() <= 1 {
            continue;
        }
        for word in &face.circuit_words {
            let reduced = trace::reduce_word(tri, word);
            if reduced.is_empty() {
                continue;
            }
            let w = trace::word_weights(tri, &reduced);
            let comps = trace::trace(tri, &w)?;
            if comps.len() != 1 {
                continue;
            }
            if classify_small(tri, &w) != CurveKind::Essential {
                continue;
            }
            let c = CurveClass::from_component(tri.clone(), &w)?;
            // The witness must be disjoint from both curves.
            if intersection_number(&c, a)? == 0 && intersection_number(&c, b)? == 0 {
                candidates.push(c);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    if candidates.is_empty() {
        debug_assert!(arr.fills(), "non-filling pair must yield a witness circuit");
        Ok(None)
    } else {
        Ok(Some(candidates.remove(0)))
    }
}

/// Serializable dump of an arrangement, for debugging and golden tests.
#[derive(Debug, Serialize)]
pub struct ArrangementDump {
    pub vertices: usize,
    pub bigon_free: bool,
    pub fills: bool,
    pub faces: Vec<FaceDump>,
}

#[derive(Debug, Serialize)]
pub struct FaceDump {
    pub pieces: usize,
    pub gluings: usize,
    pub punctures: Vec<usize>,
    pub circuits: usize,
    pub euler: i64,
    pub genus: i64,
    pub boundary_darts: usize,
}

pub fn dump(arr: &Arrangement) -> ArrangementDump {
    let mut faces: Vec<FaceDump> = arr
        .census
        .faces
        .iter()
        .map(|f| FaceDump {
            pieces: f.pieces,
            gluings: f.gluings,
            punctures: f.punctures.clone(),
            circuits: f.circuits,
            euler: f.euler,
            genus: f.genus(),
            boundary_darts: f.boundary_darts,
        })
        .collect();
    faces.sort_by(|x, y| (x.punctures.clone(), x.euler).cmp(&(y.punctures.clone(), y.euler)));
    ArrangementDump {
        vertices: arr.vertices(),
        bigon_free: arr.bigon_free(),
        fills: arr.fills(),
        faces,
    }
}
