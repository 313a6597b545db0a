//! Minimal-position overlay of two normal multicurves.
//!
//! Both curves are drawn as straight chords inside each triangle, with
//! crossing points on every edge merged into one linear order. The initial
//! interleaving spreads each curve's points evenly along the edge; innermost
//! bigons (detected combinatorially as empty ladder corridors) are then
//! removed by swapping the two offending points on every rung edge, until
//! the overlay is bigon-free. A bigon-free overlay realizes the geometric
//! intersection number.
//!
//! Chord geometry is exact: triangle corners sit at rational coordinates and
//! all crossing predicates are integer cross products. Since chords of one
//! curve never cross each other, no triple points can occur.

use std::sync::Arc;

use num_rational::Ratio;

use crate::error::CurveError;
use crate::trace::{self, Door, TracedComponent};
use crate::triangulation::{IdealTriangulation, Side};

pub type Rat = Ratio<i128>;

/// Which of the two overlaid curves a point or chord belongs to.
pub type CurveTag = u8; // 0 or 1

/// One normal arc of one curve inside a triangle.
#[derive(Debug, Clone)]
pub struct Chord {
    pub curve: CurveTag,
    pub comp: usize,
    /// Passage index: the chord runs from door `passage` to door
    /// `passage + 1` of its component.
    pub passage: usize,
    pub tri: usize,
    pub from: ChordEnd,
    pub to: ChordEnd,
    /// Crossing ids in order of increasing parameter along the chord.
    pub crossings: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct ChordEnd {
    pub side: Side,
    pub edge: usize,
    /// Merged index along the canonical edge direction.
    pub merged: usize,
}

/// A transversal crossing between an a-chord and a b-chord.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub a_chord: usize,
    pub b_chord: usize,
    /// Parameter along each chord in traversal direction, in (0, 1).
    pub t_a: Rat,
    pub t_b: Rat,
    /// Sign of cross(dir_a, dir_b).
    pub sign: i8,
}

/// Minimal-position overlay of two multicurves on one triangulation.
#[derive(Debug, Clone)]
pub struct Overlay {
    pub tri: Arc<IdealTriangulation>,
    pub weights: [Vec<u64>; 2],
    pub comps: [Vec<TracedComponent>; 2],
    /// Per edge, the merged order of crossing points along the canonical
    /// direction: (curve, within-curve canonical position).
    pub order: Vec<Vec<(CurveTag, u64)>>,
    pub chords: [Vec<Chord>; 2],
    pub crossings: Vec<Crossing>,
    /// Per curve and component: crossing ids in traversal order.
    pub cycles: [Vec<Vec<usize>>; 2],
    /// Number of bigons removed to reach minimal position.
    pub bigons_removed: usize,
}

impl Overlay {
    /// Builds the bigon-free overlay of two valid multicurves given by
    /// machine weights.
    pub fn build(
        tri: Arc<IdealTriangulation>,
        wa: Vec<u64>,
        wb: Vec<u64>,
    ) -> Result<Overlay, CurveError> {
        let comps_a = trace::trace(&tri, &wa)?;
        let comps_b = trace::trace(&tri, &wb)?;
        let mut order = initial_order(&tri, &wa, &wb);
        let mut removed = 0usize;
        loop {
            let mut ov = Overlay::assemble(tri.clone(), &wa, &wb, &comps_a, &comps_b, order)?;
            ov.bigons_removed = removed;
            // Remove a maximal set of innermost bigons with pairwise
            // disjoint rung positions, then rebuild.
            let mut bigons = ov.find_bigons();
            if std::env::var("COVERLIFT_SINGLE_BIGON").is_ok() {
                bigons.truncate(1);
            }
            if bigons.is_empty() {
                return Ok(ov);
            }
            order = ov.order;
            for bigon in &bigons {
                remove_bigon(&mut order, bigon);
                removed += 1;
            }
            if removed > 4 * 1024 * 1024 {
                return Err(CurveError::Budget("bigon removal did not terminate".into()));
            }
        }
    }

    /// Number of crossings; on a bigon-free overlay this is the geometric
    /// intersection number of the two multicurves.
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Assembles chords and crossings for a fixed interleaving.
    fn assemble(
        tri: Arc<IdealTriangulation>,
        wa: &[u64],
        wb: &[u64],
        comps_a: &[TracedComponent],
        comps_b: &[TracedComponent],
        order: Vec<Vec<(CurveTag, u64)>>,
    ) -> Result<Overlay, CurveError> {
        // merged_pos[curve][edge][within] -> merged index
        let mut merged_pos: [Vec<Vec<usize>>; 2] = [
            (0..tri.num_edges()).map(|e| vec![usize::MAX; wa[e] as usize]).collect(),
            (0..tri.num_edges()).map(|e| vec![usize::MAX; wb[e] as usize]).collect(),
        ];
        for e in 0..tri.num_edges() {
            for (m, &(c, k)) in order[e].iter().enumerate() {
                merged_pos[c as usize][e][k as usize] = m;
            }
        }

        let make_chords = |curve: CurveTag, comps: &[TracedComponent]| -> Vec<Chord> {
            let mut chords = Vec::new();
            for (ci, comp) in comps.iter().enumerate() {
                let m = comp.doors.len();
                for j in 0..m {
                    let d_in: Door = comp.doors[j];
                    let d_out: Door = comp.doors[(j + 1) % m];
                    let exit_side = tri.glued_side(d_out.enter);
                    debug_assert_eq!(exit_side.tri, d_in.enter.tri);
                    chords.push(Chord {
                        curve,
                        comp: ci,
                        passage: j,
                        tri: d_in.enter.tri,
                        from: ChordEnd {
                            side: d_in.enter,
                            edge: d_in.edge,
                            merged: merged_pos[curve as usize][d_in.edge][d_in.pos as usize],
                        },
                        to: ChordEnd {
                            side: exit_side,
                            edge: d_out.edge,
                            merged: merged_pos[curve as usize][d_out.edge][d_out.pos as usize],
                        },
                        crossings: Vec::new(),
                    });
                }
            }
            chords
        };
        let mut chords_a = make_chords(0, comps_a);
        let mut chords_b = make_chords(1, comps_b);

        // Group chords by triangle and intersect pairwise.
        let mut by_tri: Vec<(Vec<usize>, Vec<usize>)> =
            vec![(Vec::new(), Vec::new()); tri.num_triangles()];
        for (i, c) in chords_a.iter().enumerate() {
            by_tri[c.tri].0.push(i);
        }
        for (i, c) in chords_b.iter().enumerate() {
            by_tri[c.tri].1.push(i);
        }

        let counts = edge_counts(&order);
        let pts_a: Vec<((Rat, Rat), (Rat, Rat))> =
            chords_a.iter().map(|c| chord_points(&tri, &counts, c)).collect();
        let pts_b: Vec<((Rat, Rat), (Rat, Rat))> =
            chords_b.iter().map(|c| chord_points(&tri, &counts, c)).collect();
        let mut crossings = Vec::new();
        for (ta, tb) in by_tri.iter() {
            for &ia in ta {
                for &ib in tb {
                    if let Some((t_a, t_b, sign)) = segment_crossing(pts_a[ia], pts_b[ib]) {
                        let id = crossings.len();
                        crossings.push(Crossing { a_chord: ia, b_chord: ib, t_a, t_b, sign });
                        chords_a[ia].crossings.push(id);
                        chords_b[ib].crossings.push(id);
                    }
                }
            }
        }
        for c in chords_a.iter_mut() {
            c.crossings.sort_by(|&x, &y| crossings[x].t_a.cmp(&crossings[y].t_a));
        }
        for c in chords_b.iter_mut() {
            c.crossings.sort_by(|&x, &y| crossings[x].t_b.cmp(&crossings[y].t_b));
        }

        // Chords are listed in passage order, so concatenating their sorted
        // crossing lists yields the traversal order of crossings.
        let cycles_of = |comps: &[TracedComponent], chords: &[Chord]| {
            let mut per_comp: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
            for ch in chords {
                per_comp[ch.comp].extend(ch.crossings.iter().copied());
            }
            per_comp
        };
        let cycles = [cycles_of(comps_a, &chords_a), cycles_of(comps_b, &chords_b)];

        Ok(Overlay {
            tri,
            weights: [wa.to_vec(), wb.to_vec()],
            comps: [comps_a.to_vec(), comps_b.to_vec()],
            order,
            chords: [chords_a, chords_b],
            crossings,
            cycles,
            bigons_removed: 0,
        })
    }

    /// Doors crossed when travelling forward from a point on passage `p` to
    /// a point on passage `q` of the same component.
    pub fn doors_between(&self, curve: usize, comp: usize, p: usize, q: usize) -> Vec<Door> {
        let doors = &self.comps[curve][comp].doors;
        let m = doors.len();
        let mut out = Vec::new();
        let mut j = (p + 1) % m;
        loop {
            out.push(doors[j]);
            if j == q {
                break;
            }
            j = (j + 1) % m;
            assert!(out.len() <= m, "door walk left the component");
        }
        out
    }

    pub fn crossing_passage(&self, id: usize, curve: usize) -> (usize, usize) {
        let cr = &self.crossings[id];
        let chord = if curve == 0 {
            &self.chords[0][cr.a_chord]
        } else {
            &self.chords[1][cr.b_chord]
        };
        (chord.comp, chord.passage)
    }

    pub fn merged_of(&self, curve: usize, d: &Door) -> usize {
        self.order[d.edge]
            .iter()
            .position(|&(c, k)| c as usize == curve && k == d.pos)
            .expect("door present in merged order")
    }

    /// Finds a set of innermost bigons with pairwise disjoint rung
    /// positions: two crossings consecutive along both curves whose
    /// connecting sub-arcs run through the same door corridor at adjacent
    /// merged positions.
    fn find_bigons(&self) -> Vec<Bigon> {
        let mut found: Vec<Bigon> = Vec::new();
        let mut used: Vec<Vec<bool>> = self.order.iter().map(|o| vec![false; o.len()]).collect();
        let mut used_crossing = vec![false; self.crossings.len()];
        for cycle in &self.cycles[0] {
            let n = cycle.len();
            if n < 2 {
                continue;
            }
            for i in 0..n {
                let x = cycle[i];
                let y = cycle[(i + 1) % n];
                if x == y {
                    continue;
                }
                // Doors of the forward a-arc from x to y. On a common chord
                // the arc either stays inside the triangle (ascending
                // parameters, no doors, no bigon) or wraps the whole
                // component.
                let (ca, pa_x) = self.crossing_passage(x, 0);
                let (_, pa_y) = self.crossing_passage(y, 0);
                if pa_x == pa_y && self.crossings[x].t_a < self.crossings[y].t_a {
                    continue;
                }
                let a_doors = self.doors_between(0, ca, pa_x, pa_y);

                let (cb, pb_x) = self.crossing_passage(x, 1);
                let (cb_y, pb_y) = self.crossing_passage(y, 1);
                if cb != cb_y {
                    continue;
                }
                let bcycle = &self.cycles[1][cb];
                let bn = bcycle.len();
                let bx = bcycle.iter().position(|&c| c == x).unwrap();
                let mut candidates: Vec<Vec<Door>> = Vec::new();
                if bcycle[(bx + 1) % bn] == y
                    && !(pb_x == pb_y && self.crossings[x].t_b < self.crossings[y].t_b)
                {
                    candidates.push(self.doors_between(1, cb, pb_x, pb_y));
                }
                if bcycle[(bx + bn - 1) % bn] == y
                    && !(pb_y == pb_x && self.crossings[y].t_b < self.crossings[x].t_b)
                {
                    // b runs y -> x; reverse to get x -> y with flipped sides.
                    let mut ds = self.doors_between(1, cb, pb_y, pb_x);
                    ds.reverse();
                    candidates.push(
                        ds.iter()
                            .map(|d| Door {
                                edge: d.edge,
                                pos: d.pos,
                                enter: self.tri.glued_side(d.enter),
                            })
                            .collect(),
                    );
                }
                for b_doors in candidates {
                    if a_doors.len() != b_doors.len() {
                        continue;
                    }
                    let mut rungs = Vec::new();
                    let mut ok = true;
                    for (da, db) in a_doors.iter().zip(&b_doors) {
                        if da.edge != db.edge || da.enter != db.enter {
                            ok = false;
                            break;
                        }
                        let ma = self.merged_of(0, da);
                        let mb = self.merged_of(1, db);
                        if ma.abs_diff(mb) != 1 {
                            ok = false;
                            break;
                        }
                        rungs.push((da.edge, ma.min(mb)));
                    }
                    if ok {
                        // Disjoint supports only: distinct crossings and
                        // untouched rung positions.
                        let conflict = used_crossing[x]
                            || used_crossing[y]
                            || rungs.iter().any(|&(e, m)| used[e][m] || used[e][m + 1]);
                        if !conflict {
                            used_crossing[x] = true;
                            used_crossing[y] = true;
                            for &(e, m) in &rungs {
                                used[e][m] = true;
                                used[e][m + 1] = true;
                            }
                            found.push(Bigon { rungs, corners: (x, y) });
                        }
                        break;
                    }
                }
            }
        }
        found
    }
}

/// An innermost bigon, described by its corridor rungs: on each rung edge
/// the two curves' points sit at merged positions (m, m + 1).
#[derive(Debug)]
struct Bigon {
    rungs: Vec<(usize, usize)>,
    corners: (usize, usize),
}

fn remove_bigon(order: &mut [Vec<(CurveTag, u64)>], bigon: &Bigon) {
    let _ = bigon.corners;
    for &(e, m) in &bigon.rungs {
        debug_assert_ne!(order[e][m].0, order[e][m + 1].0, "rung must mix the curves");
        order[e].swap(m, m + 1);
    }
}

/// Initial interleaving: each curve's points spread evenly along the edge,
/// curve a first on ties. Point k of a sits at (2k+1)/(2 w_a); positions are
/// compared by cross multiplication.
fn initial_order(tri: &IdealTriangulation, wa: &[u64], wb: &[u64]) -> Vec<Vec<(CurveTag, u64)>> {
    (0..tri.num_edges())
        .map(|e| {
            let (na, nb) = (wa[e], wb[e]);
            let mut pts: Vec<(CurveTag, u64)> = Vec::with_capacity((na + nb) as usize);
            pts.extend((0..na).map(|k| (0u8, k)));
            pts.extend((0..nb).map(|k| (1u8, k)));
            pts.sort_by_key(|&(c, k)| {
                let other = if c == 0 { nb } else { na };
                ((2 * k as u128 + 1) * other.max(1) as u128, c)
            });
            pts
        })
        .collect()
}

fn edge_counts(order: &[Vec<(CurveTag, u64)>]) -> Vec<usize> {
    order.iter().map(|o| o.len()).collect()
}

/// Exact rational coordinates of a chord's endpoints inside its triangle.
/// Corners sit at (0,0), (1,0), (0,1); a point at side-local merged index m
/// of M total sits at parameter (m+1)/(M+1) along the side.
pub(crate) fn chord_points(
    tri: &IdealTriangulation,
    counts: &[usize],
    chord: &Chord,
) -> ((Rat, Rat), (Rat, Rat)) {
    let pt = |end: &ChordEnd| -> (Rat, Rat) {
        let m_total = counts[end.edge];
        let local = if tri.canonical_side(end.edge) == end.side {
            end.merged
        } else {
            m_total - 1 - end.merged
        };
        let u = Rat::new(local as i128 + 1, m_total as i128 + 1);
        let corners = [
            (Rat::new(0, 1), Rat::new(0, 1)),
            (Rat::new(1, 1), Rat::new(0, 1)),
            (Rat::new(0, 1), Rat::new(1, 1)),
        ];
        let i = end.side.idx as usize;
        let (x0, y0) = corners[i];
        let (x1, y1) = corners[(i + 1) % 3];
        (x0 + u * (x1 - x0), y0 + u * (y1 - y0))
    };
    (pt(&chord.from), pt(&chord.to))
}

fn cross(o: (Rat, Rat), p: (Rat, Rat), q: (Rat, Rat)) -> Rat {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

/// Proper intersection of two open segments; endpoints in this model are
/// distinct and no three chords meet in a point. Returns the parameters
/// along each segment and the sign of cross(dir_a, dir_b).
fn segment_crossing(
    a: ((Rat, Rat), (Rat, Rat)),
    b: ((Rat, Rat), (Rat, Rat)),
) -> Option<(Rat, Rat, i8)> {
    let (p, q) = a;
    let (r, s) = b;
    let d1 = cross(p, q, r);
    let d2 = cross(p, q, s);
    let d3 = cross(r, s, p);
    let d4 = cross(r, s, q);
    let zero = Rat::new(0, 1);
    if (d1 > zero) != (d2 > zero) && d1 != zero && d2 != zero && (d3 > zero) != (d4 > zero) && d3 != zero && d4 != zero
    {
        let rs = (s.0 - r.0, s.1 - r.1);
        let pq = (q.0 - p.0, q.1 - p.1);
        let denom = pq.0 * rs.1 - pq.1 * rs.0;
        let rp = (r.0 - p.0, r.1 - p.1);
        let t = (rp.0 * rs.1 - rp.1 * rs.0) / denom;
        let u = (rp.0 * pq.1 - rp.1 * pq.0) / denom;
        let sign = if denom > zero { 1 } else { -1 };
        Some((t, u, sign))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;

    fn overlay(tri: &Arc<IdealTriangulation>, wa: &[u64], wb: &[u64]) -> Overlay {
        Overlay::build(tri.clone(), wa.to_vec(), wb.to_vec()).unwrap()
    }

    #[test]
    fn equal_links_are_disjoint() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        for link in tri.puncture_link_weights() {
            let ov = overlay(&tri, &link, &link);
            assert_eq!(ov.crossing_count(), 0, "parallel copies are disjoint");
        }
    }

    #[test]
    fn distinct_links_are_disjoint() {
        for (g, n) in [(0u32, 5u32), (1, 2)] {
            let tri = Arc::new(build_surface(g, n).unwrap());
            let links = tri.puncture_link_weights();
            for i in 0..links.len() {
                for j in 0..links.len() {
                    let ov = overlay(&tri, &links[i], &links[j]);
                    assert_eq!(ov.crossing_count(), 0, "links {} vs {} on S_{{{},{}}}", i, j, g, n);
                }
            }
        }
    }

    #[test]
    fn crossing_cycles_partition_crossings() {
        let tri = Arc::new(build_surface(1, 2).unwrap());
        let links = tri.puncture_link_weights();
        let ov = overlay(&tri, &links[0], &links[1]);
        let total: usize = ov.cycles[0].iter().map(|c| c.len()).sum();
        assert_eq!(total, ov.crossing_count());
        let total_b: usize = ov.cycles[1].iter().map(|c| c.len()).sum();
        assert_eq!(total_b, ov.crossing_count());
    }

    #[test]
    fn empty_curve_overlay() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let zero = vec![0u64; tri.num_edges()];
        let link = &tri.puncture_link_weights()[0];
        let ov = overlay(&tri, &zero, link);
        assert_eq!(ov.crossing_count(), 0);
        assert!(ov.chords[0].is_empty());
        assert_eq!(ov.chords[1].len(), link.iter().sum::<u64>() as usize);
    }
}
