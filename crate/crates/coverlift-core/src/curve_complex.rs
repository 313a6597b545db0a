//! Vertices, adjacency, and certified distance in the curve complex.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arrangement;
use crate::coords::NormalCoordinates;
use crate::curve::{classify_small, CurveClass, CurveKind};
use crate::error::{CurveError, SurfaceError};
use crate::fatgraph;
use crate::trace;
use crate::triangulation::IdealTriangulation;

/// Enumerates every valid connected essential non-peripheral curve whose
/// largest edge weight is at most `bound`, in canonical (lexicographic)
/// order.
pub fn enumerate_universe(
    tri: &Arc<IdealTriangulation>,
    bound: u64,
) -> Result<Vec<CurveClass>, CurveError> {
    let vectors = enumerate_admissible(tri, bound);
    let mut out = Vec::new();
    for w in vectors {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let comps = trace::trace(tri, &w)?;
        if comps.len() != 1 {
            continue;
        }
        if classify_small(tri, &w) != CurveKind::Essential {
            continue;
        }
        out.push(CurveClass::new(tri.clone(), NormalCoordinates::from_u64(&w))?);
    }
    Ok(out)
}

/// All admissible weight vectors with entries bounded by `bound`, via a
/// depth-first search that checks each triangle as soon as its three edges
/// are assigned.
pub fn enumerate_admissible(tri: &IdealTriangulation, bound: u64) -> Vec<Vec<u64>> {
    let num_edges = tri.num_edges();
    // Triangles keyed by the last edge index appearing in them.
    let mut ready: Vec<Vec<[usize; 3]>> = vec![Vec::new(); num_edges];
    for t in 0..tri.num_triangles() {
        let edges = tri.triangle_edges(t);
        let last = *edges.iter().max().unwrap();
        ready[last].push(edges);
    }
    let mut out = Vec::new();
    let mut w = vec![0u64; num_edges];
    fn rec(
        e: usize,
        num_edges: usize,
        bound: u64,
        w: &mut Vec<u64>,
        ready: &[Vec<[usize; 3]>],
        out: &mut Vec<Vec<u64>>,
    ) {
        if e == num_edges {
            out.push(w.clone());
            return;
        }
        'next: for v in 0..=bound {
            w[e] = v;
            for tri_edges in &ready[e] {
                let a = w[tri_edges[0]];
                let b = w[tri_edges[1]];
                let c = w[tri_edges[2]];
                if (a + b + c) % 2 != 0 || a + b < c || b + c < a || a + c < b {
                    continue 'next;
                }
            }
            rec(e + 1, num_edges, bound, w, ready, out);
        }
        w[e] = 0;
    }
    rec(0, num_edges, bound, &mut w, &ready, &mut out);
    out
}

/// True iff the two classes are joined by an edge of C(S): distinct and
/// disjointly realizable. Requires complexity >= 2.
pub fn adjacent(a: &CurveClass, b: &CurveClass) -> Result<bool, CurveError> {
    a.require_same_surface(b)?;
    a.triangulation()
        .surface()
        .require_curve_complex()
        .map_err(surface_err)?;
    if a == b {
        return Ok(false);
    }
    Ok(arrangement::intersection_number(a, b)? == 0)
}

fn surface_err(e: SurfaceError) -> CurveError {
    CurveError::Budget(format!("curve complex unavailable: {}", e))
}

/// All curve-complex neighbors of `a` with edge weights at most `bound`,
/// complete within that bound.
pub fn neighbors(a: &CurveClass, bound: u64) -> Result<Vec<CurveClass>, CurveError> {
    let tri = a.triangulation();
    tri.surface().require_curve_complex().map_err(surface_err)?;
    let wa = a.coords().small()?;
    let universe = enumerate_universe(tri, bound)?;
    let mut out = Vec::new();
    for c in universe {
        if c == *a {
            continue;
        }
        if fatgraph::disjoint(tri, &wa, &c.coords().small()?)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Why a lower bound on the distance holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerReason {
    /// d = 0: the classes are equal.
    Equal,
    /// d >= 1: the classes are distinct.
    Distinct,
    /// d >= 2: the classes intersect.
    Intersecting,
    /// d >= 3: the pair fills the surface.
    Filling,
}

/// A sound two-sided bound on curve-complex distance. The witness path
/// certifies the upper bound; the lower reason is machine-checkable.
#[derive(Debug, Clone)]
pub struct DistanceCertificate {
    pub lower: u32,
    pub reason: LowerReason,
    /// Path endpoints (a, ..., b) realizing `upper`; None when no path was
    /// found within budget.
    pub upper: Option<u32>,
    pub witness: Option<Vec<CurveClass>>,
    /// Search radius that was exhausted without finding a path, if any.
    pub exhausted_radius: Option<u32>,
}

impl DistanceCertificate {
    pub fn exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn value(&self) -> Option<u32> {
        if self.exact() {
            Some(self.lower)
        } else {
            None
        }
    }
}

/// Search budget for `distance`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DistanceBudget {
    pub weight_bound: u64,
    pub radius_bound: u32,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget { weight_bound: 4, radius_bound: 3 }
    }
}

/// Certified distance between two vertices of C(S).
///
/// Distances 0, 1, 2 are decided exactly (equality, adjacency, filling test
/// plus disjoint witness). For filling pairs the lower bound is 3; an upper
/// bound comes from a bidirectional search over weight-bounded neighbor
/// sets, or from `hint`, a known connecting path. Certificates are always
/// sound; exactness can fail only upward of 3.
pub fn distance(
    a: &CurveClass,
    b: &CurveClass,
    budget: DistanceBudget,
    hint: Option<&[CurveClass]>,
) -> Result<DistanceCertificate, CurveError> {
    a.require_same_surface(b)?;
    let tri = a.triangulation();
    tri.surface().require_curve_complex().map_err(surface_err)?;

    if a == b {
        return Ok(DistanceCertificate {
            lower: 0,
            reason: LowerReason::Equal,
            upper: Some(0),
            witness: Some(vec![a.clone()]),
            exhausted_radius: None,
        });
    }
    if arrangement::intersection_number(a, b)? == 0 {
        return Ok(DistanceCertificate {
            lower: 1,
            reason: LowerReason::Distinct,
            upper: Some(1),
            witness: Some(vec![a.clone(), b.clone()]),
            exhausted_radius: None,
        });
    }
    // d >= 2; non-filling pairs have distance exactly 2 with a witness.
    match arrangement::disjoint_witness(a, b)? {
        Some(w) => {
            debug_assert_eq!(arrangement::intersection_number(a, &w)?, 0);
            debug_assert_eq!(arrangement::intersection_number(b, &w)?, 0);
            return Ok(DistanceCertificate {
                lower: 2,
                reason: LowerReason::Intersecting,
                upper: Some(2),
                witness: Some(vec![a.clone(), w, b.clone()]),
                exhausted_radius: None,
            });
        }
        None => {}
    }
    // Filling pair: d >= 3.
    let mut best: Option<Vec<CurveClass>> = hint.and_then(|p| {
        let ok = p.len() >= 2
            && p.first() == Some(a)
            && p.last() == Some(b)
            && verify_path(p).unwrap_or(false);
        if ok {
            Some(p.to_vec())
        } else {
            None
        }
    });
    let mut exhausted = None;
    if best.as_ref().map(|p| p.len() - 1).unwrap_or(usize::MAX) > 3 {
        match search_path(a, b, budget)? {
            SearchOutcome::Path(p) => {
                if best.as_ref().map(|q| p.len() < q.len()).unwrap_or(true) {
                    best = Some(p);
                }
            }
            SearchOutcome::Exhausted(r) => exhausted = Some(r),
        }
    }
    Ok(DistanceCertificate {
        lower: 3,
        reason: LowerReason::Filling,
        upper: best.as_ref().map(|p| (p.len() - 1) as u32),
        witness: best,
        exhausted_radius: exhausted,
    })
}

enum SearchOutcome {
    Path(Vec<CurveClass>),
    Exhausted(u32),
}

/// Bidirectional breadth-first search over weight-bounded neighbor sets.
/// Deterministic: frontiers expand in canonical order.
fn search_path(
    a: &CurveClass,
    b: &CurveClass,
    budget: DistanceBudget,
) -> Result<SearchOutcome, CurveError> {
    let tri = a.triangulation();
    let universe = enumerate_universe(tri, budget.weight_bound)?;
    let small: Vec<Vec<u64>> = universe
        .iter()
        .map(|c| c.coords().small())
        .collect::<Result<_, _>>()?;
    let index: BTreeMap<&CurveClass, usize> =
        universe.iter().enumerate().map(|(i, c)| (c, i)).collect();

    // The endpoints may exceed the weight bound; handle them as virtual
    // nodes with explicit frontier sets.
    let wa = a.coords().small()?;
    let wb = b.coords().small()?;
    let disjoint_from = |w: &[u64]| -> Result<Vec<usize>, CurveError> {
        let mut v = Vec::new();
        for (i, c) in small.iter().enumerate() {
            if fatgraph::disjoint(tri, w, c)? {
                v.push(i);
            }
        }
        Ok(v)
    };
    let start = disjoint_from(&wa)?;
    let goal = disjoint_from(&wb)?;
    if start.is_empty() || goal.is_empty() {
        return Ok(SearchOutcome::Exhausted(1));
    }

    // dist_a[i]: BFS level from a (level 1 = start set), likewise dist_b.
    let n = universe.len();
    let mut dist_a = vec![u32::MAX; n];
    let mut dist_b = vec![u32::MAX; n];
    let mut parent_a = vec![usize::MAX; n];
    let mut parent_b = vec![usize::MAX; n];
    let mut frontier_a: Vec<usize> = start.clone();
    let mut frontier_b: Vec<usize> = goal.clone();
    for &i in &frontier_a {
        dist_a[i] = 1;
    }
    for &i in &frontier_b {
        dist_b[i] = 1;
    }

    let reconstruct = |meet: usize, dist_a: &[u32], parent_a: &[usize], parent_b: &[usize]| {
        let mut left = Vec::new();
        let mut cur = meet;
        while cur != usize::MAX {
            left.push(universe[cur].clone());
            cur = parent_a[cur];
        }
        left.reverse();
        let mut path = vec![a.clone()];
        path.extend(left);
        let mut cur = parent_b[meet];
        while cur != usize::MAX {
            path.push(universe[cur].clone());
            cur = parent_b[cur];
        }
        let _ = dist_a;
        path.push(b.clone());
        path
    };

    // Immediate meet: level-1 sets intersecting gives d <= 2, but distance 2
    // is decided before searching; level-1 meets still matter for hints.
    for &i in &frontier_a {
        if dist_b[i] == 1 {
            return Ok(SearchOutcome::Path(reconstruct(i, &dist_a, &parent_a, &parent_b)));
        }
    }

    let mut level_a = 1u32;
    let mut level_b = 1u32;
    loop {
        if level_a + level_b >= budget.radius_bound.max(2) {
            return Ok(SearchOutcome::Exhausted(level_a + level_b));
        }
        // Expand the smaller frontier.
        let expand_a = frontier_a.len() <= frontier_b.len();
        let (frontier, dist, parent, other_dist, level) = if expand_a {
            (&mut frontier_a, &mut dist_a, &mut parent_a, &dist_b, &mut level_a)
        } else {
            (&mut frontier_b, &mut dist_b, &mut parent_b, &dist_a, &mut level_b)
        };
        let mut next = Vec::new();
        for &i in frontier.iter() {
            for j in 0..n {
                if dist[j] != u32::MAX {
                    continue;
                }
                if fatgraph::disjoint(tri, &small[i], &small[j])? {
                    dist[j] = *level + 1;
                    parent[j] = i;
                    next.push(j);
                }
            }
        }
        *level += 1;
        if next.is_empty() {
            return Ok(SearchOutcome::Exhausted(level_a + level_b));
        }
        let meets: Vec<usize> = next.iter().copied().filter(|&j| other_dist[j] != u32::MAX).collect();
        *frontier = next;
        if let Some(&meet) = meets.first() {
            return Ok(SearchOutcome::Path(reconstruct(meet, &dist_a, &parent_a, &parent_b)));
        }
    }
}

/// True iff consecutive entries are adjacent vertices of C(S) on a single
/// surface (a single vertex counts as a valid path).
pub fn verify_path(path: &[CurveClass]) -> Result<bool, CurveError> {
    if path.is_empty() {
        return Ok(false);
    }
    for w in path.windows(2) {
        w[0].require_same_surface(&w[1])?;
        if !adjacent(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;

    #[test]
    fn universe_small_bound_is_consistent() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let u1 = enumerate_universe(&tri, 1).unwrap();
        let u2 = enumerate_universe(&tri, 2).unwrap();
        assert!(u1.len() <= u2.len());
        for c in &u2 {
            let w = c.coords().small().unwrap();
            assert!(w.iter().all(|&x| x <= 2));
        }
        // Canonical order.
        for pair in u2.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn admissible_enumeration_matches_filter() {
        let tri = build_surface(1, 2).unwrap();
        let fast = enumerate_admissible(&tri, 2);
        let mut slow = Vec::new();
        let e = tri.num_edges();
        for code in 0..3u64.pow(e as u32) {
            let mut w = vec![0u64; e];
            let mut c = code;
            for x in w.iter_mut() {
                *x = c % 3;
                c /= 3;
            }
            if crate::coords::small_weights_valid(&tri, &w) {
                slow.push(w);
            }
        }
        slow.sort();
        let mut fast_sorted = fast.clone();
        fast_sorted.sort();
        assert_eq!(fast_sorted, slow);
    }
}
