//! Geometric intersection numbers via the dual fatgraph.
//!
//! The dual spine of an ideal triangulation is a trivalent ribbon graph:
//! vertices are triangles, bands are edges. A curve is a reduced cyclic path
//! in the spine. Strands running through a band are ordered at each end by
//! where they eventually diverge; in this tight position two strands cross
//! inside a band iff their end orders agree (a straight strand pair reverses
//! its order across the band because the gluing reverses side directions).
//! Summing agreeing (a, b) strand pairs over all bands yields the geometric
//! intersection number.
//!
//! This route shares nothing with the overlay/bigon machinery past the
//! tracing step, which makes it an independent cross-check, and it is fast
//! enough to serve as the disjointness filter in distance searches.

use std::cmp::Ordering;

use crate::error::CurveError;
use crate::trace::{self, TracedComponent};
use crate::triangulation::{IdealTriangulation, Side};

/// A ray: one of the two directions of a curve strand out of a band end.
#[derive(Debug, Clone, Copy)]
struct Ray<'a> {
    comp: &'a TracedComponent,
    /// Passage the ray currently traverses.
    passage: usize,
    forward: bool,
}

impl<'a> Ray<'a> {
    /// Entry side of the current passage in ray direction.
    fn entry(&self, tri: &IdealTriangulation) -> Side {
        let doors = &self.comp.doors;
        let m = doors.len();
        if self.forward {
            doors[self.passage].enter
        } else {
            tri.glued_side(doors[(self.passage + 1) % m].enter)
        }
    }

    /// Exit side of the current passage in ray direction.
    fn exit(&self, tri: &IdealTriangulation) -> Side {
        let doors = &self.comp.doors;
        let m = doors.len();
        if self.forward {
            tri.glued_side(doors[(self.passage + 1) % m].enter)
        } else {
            doors[self.passage].enter
        }
    }

    fn advance(&mut self) {
        let m = self.comp.doors.len();
        if self.forward {
            self.passage = (self.passage + 1) % m;
        } else {
            self.passage = (self.passage + m - 1) % m;
        }
    }
}

/// Exit group of a passage: 0 if the arc cuts the corner at the start of the
/// entry side (and leaves through the incoming side of that corner), 1 if it
/// cuts the corner at the end. Group 0 strands sit nearer the start of the
/// entry side.
fn exit_group(entry: Side, exit: Side) -> u8 {
    debug_assert_eq!(entry.tri, exit.tri);
    debug_assert_ne!(entry.idx, exit.idx, "no backtracks in a normal curve");
    if exit.idx == (entry.idx + 2) % 3 {
        0
    } else {
        1
    }
}

/// Compares two rays entering the same triangle through the same side by
/// their divergence order along the side direction. `Equal` means the rays
/// run parallel forever (same periodic trajectory). The second component is
/// true when the rays diverge immediately, in the first triangle.
fn compare_rays(tri: &IdealTriangulation, r1: Ray, r2: Ray) -> (Ordering, bool) {
    let mut a = r1;
    let mut b = r2;
    let cap = 2 * (a.comp.doors.len() + b.comp.doors.len()) + 4;
    for step in 0..cap {
        debug_assert_eq!(a.entry(tri), b.entry(tri));
        let ga = exit_group(a.entry(tri), a.exit(tri));
        let gb = exit_group(b.entry(tri), b.exit(tri));
        match ga.cmp(&gb) {
            Ordering::Equal => {}
            ord => return (ord, step == 0),
        }
        a.advance();
        b.advance();
    }
    (Ordering::Equal, false)
}

/// A strand of one curve through a band, named by a door of its component.
struct Strand<'a> {
    comp: &'a TracedComponent,
    door_idx: usize,
}

impl<'a> Strand<'a> {
    /// The ray of this strand entering the triangle on the given side of the
    /// band.
    fn ray_into(&self, tri: &IdealTriangulation, side: Side) -> Ray<'a> {
        let doors = &self.comp.doors;
        let d = doors[self.door_idx];
        if d.enter == side {
            Ray { comp: self.comp, passage: self.door_idx, forward: true }
        } else {
            debug_assert_eq!(tri.glued_side(d.enter), side);
            let m = doors.len();
            Ray { comp: self.comp, passage: (self.door_idx + m - 1) % m, forward: false }
        }
    }
}

/// Geometric intersection number of two valid multicurves, computed on the
/// dual fatgraph. With `early_exit` the count stops at the first crossing.
pub fn intersection_via_fatgraph(
    tri: &IdealTriangulation,
    wa: &[u64],
    wb: &[u64],
    early_exit: bool,
) -> Result<u64, CurveError> {
    let comps_a = trace::trace(tri, wa)?;
    let comps_b = trace::trace(tri, wb)?;
    Ok(count_crossings(tri, &comps_a, &comps_b, early_exit))
}

pub fn count_crossings(
    tri: &IdealTriangulation,
    comps_a: &[TracedComponent],
    comps_b: &[TracedComponent],
    early_exit: bool,
) -> u64 {
    let mut strands_a: Vec<Vec<Strand>> = (0..tri.num_edges()).map(|_| Vec::new()).collect();
    let mut strands_b: Vec<Vec<Strand>> = (0..tri.num_edges()).map(|_| Vec::new()).collect();
    for comp in comps_a {
        for (j, d) in comp.doors.iter().enumerate() {
            strands_a[d.edge].push(Strand { comp, door_idx: j });
        }
    }
    for comp in comps_b {
        for (j, d) in comp.doors.iter().enumerate() {
            strands_b[d.edge].push(Strand { comp, door_idx: j });
        }
    }

    // A crossing pair of strands shares a corridor of consecutive bands and
    // is seen at each of them; anchoring contributions at the corridor's two
    // ends (where the rays diverge immediately) counts every crossing with
    // total weight exactly 2.
    let mut total = 0u64;
    for e in 0..tri.num_edges() {
        if strands_a[e].is_empty() || strands_b[e].is_empty() {
            continue;
        }
        let (cs, os) = tri.sides_of(e);
        for sa in &strands_a[e] {
            for sb in &strands_b[e] {
                let (c1, imm1) = compare_rays(tri, sa.ray_into(tri, cs), sb.ray_into(tri, cs));
                if c1 == Ordering::Equal {
                    continue;
                }
                let (c2, imm2) = compare_rays(tri, sa.ray_into(tri, os), sb.ray_into(tri, os));
                if c1 == c2 {
                    total += imm1 as u64 + imm2 as u64;
                    if early_exit && total > 0 {
                        return 1;
                    }
                }
            }
        }
    }
    debug_assert_eq!(total % 2, 0, "corridor ends pair up");
    total / 2
}

/// Fast disjointness test.
pub fn disjoint(tri: &IdealTriangulation, wa: &[u64], wb: &[u64]) -> Result<bool, CurveError> {
    Ok(intersection_via_fatgraph(tri, wa, wb, true)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;

    #[test]
    fn links_meet_nothing() {
        for (g, n) in [(0u32, 5u32), (1, 2)] {
            let tri = build_surface(g, n).unwrap();
            let links = tri.puncture_link_weights();
            for la in &links {
                for lb in &links {
                    assert_eq!(intersection_via_fatgraph(&tri, la, lb, false).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn parallel_copies_are_disjoint() {
        let tri = build_surface(1, 2).unwrap();
        let links = tri.puncture_link_weights();
        for l in &links {
            assert_eq!(intersection_via_fatgraph(&tri, l, l, false).unwrap(), 0);
            let doubled: Vec<u64> = l.iter().map(|x| 2 * x).collect();
            assert_eq!(intersection_via_fatgraph(&tri, &doubled, l, false).unwrap(), 0);
        }
    }
}
