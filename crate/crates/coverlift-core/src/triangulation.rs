//! Combinatorial ideal triangulations of punctured surfaces.
//!
//! Conventions used throughout the crate:
//!
//! * Every triangle has corners 0, 1, 2 in counterclockwise order. Side `i`
//!   of a triangle runs from corner `i` to corner `(i + 1) % 3`.
//! * Gluings pair sides so that the two sides traverse their common edge in
//!   opposite directions; this keeps the glued surface oriented.
//! * Corner `c` of a triangle is incident to sides `(c + 2) % 3` (incoming)
//!   and `c` (outgoing). All vertices of the triangulation are punctures.
//! * Each edge has a canonical side (the lexicographically smaller of its two
//!   sides); positions along an edge are measured in the direction of the
//!   canonical side.

use std::collections::BTreeMap;



use crate::error::{SurfaceError, TriangulationError};
use crate::surface::Surface;

/// One of the three sides of a triangle, identified by triangle index and
/// side index 0..=2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub tri: usize,
    pub idx: u8,
}

impl Side {
    pub fn new(tri: usize, idx: u8) -> Self {
        debug_assert!(idx < 3);
        Side { tri, idx }
    }

    /// Corner at which this side starts.
    pub fn start_corner(&self) -> Corner {
        Corner { tri: self.tri, idx: self.idx }
    }

    /// Corner at which this side ends.
    pub fn end_corner(&self) -> Corner {
        Corner { tri: self.tri, idx: (self.idx + 1) % 3 }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "t{}.{}", self.tri, self.idx)
    }
}

/// A triangle corner; corner orbits under the gluing are the punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub tri: usize,
    pub idx: u8,
}

/// An ideal triangulation of a punctured surface. Immutable after
/// construction; all operations that change the triangulation return a new
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTriangulation {
    surface: Surface,
    /// edge id carried by each side, indexed `[tri][side]`.
    edge_of_side: Vec<[usize; 3]>,
    /// The two sides of each edge; `.0` is the canonical side.
    edges: Vec<(Side, Side)>,
    /// Puncture (corner orbit) id per corner, indexed `[tri][corner]`.
    puncture_of_corner: Vec<[usize; 3]>,
    num_punctures: usize,
}

impl IdealTriangulation {
    /// Assembles a triangulation from a side-gluing map. `gluing` must pair
    /// every side of `0..num_triangles` with a distinct side.
    pub fn from_gluings(
        surface: Surface,
        num_triangles: usize,
        gluing: &BTreeMap<Side, Side>,
    ) -> Result<Self, TriangulationError> {
        // Every side present exactly once, involutive, no fixed points.
        for t in 0..num_triangles {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                let p = *gluing
                    .get(&s)
                    .ok_or_else(|| TriangulationError::BadGluingCount(s.to_string(), 0))?;
                if p == s {
                    return Err(TriangulationError::SelfGluedSide(s.to_string()));
                }
                if p.tri >= num_triangles {
                    return Err(TriangulationError::BadTriangleIndex(p.tri));
                }
                if gluing.get(&p) != Some(&s) {
                    return Err(TriangulationError::BadGluingCount(p.to_string(), 2));
                }
            }
        }

        // Number edges in first-appearance order over sides in lex order;
        // this is the canonical edge ordering used by the JSON format.
        let mut edge_of_side = vec![[usize::MAX; 3]; num_triangles];
        let mut edges = Vec::new();
        for t in 0..num_triangles {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                if edge_of_side[t][i as usize] != usize::MAX {
                    continue;
                }
                let p = gluing[&s];
                let id = edges.len();
                edge_of_side[s.tri][s.idx as usize] = id;
                edge_of_side[p.tri][p.idx as usize] = id;
                edges.push((s.min(p), s.max(p)));
            }
        }

        // Corner orbits: walk around each vertex.
        let mut puncture_of_corner = vec![[usize::MAX; 3]; num_triangles];
        let mut num_punctures = 0;
        for t in 0..num_triangles {
            for c in 0..3u8 {
                if puncture_of_corner[t][c as usize] != usize::MAX {
                    continue;
                }
                let id = num_punctures;
                num_punctures += 1;
                let mut cur = Corner { tri: t, idx: c };
                loop {
                    puncture_of_corner[cur.tri][cur.idx as usize] = id;
                    // Cross the outgoing side; land at the end corner of the
                    // glued side, which is the same vertex.
                    let out = Side::new(cur.tri, cur.idx);
                    let glued = gluing[&out];
                    cur = glued.end_corner();
                    if puncture_of_corner[cur.tri][cur.idx as usize] == id {
                        break;
                    }
                    debug_assert_eq!(puncture_of_corner[cur.tri][cur.idx as usize], usize::MAX);
                }
            }
        }

        let tri = IdealTriangulation {
            surface,
            edge_of_side,
            edges,
            puncture_of_corner,
            num_punctures,
        };
        tri.check_census()?;
        Ok(tri)
    }

    /// Structural checks tying the combinatorics to the declared surface.
    fn check_census(&self) -> Result<(), TriangulationError> {
        let t = self.num_triangles() as i64;
        let e = self.num_edges() as i64;
        let chi = self.surface.euler_characteristic();
        if 3 * t != 2 * e {
            return Err(TriangulationError::CensusMismatch(format!(
                "3*{} triangles != 2*{} edges",
                t, e
            )));
        }
        if t != -2 * chi || e != -3 * chi {
            return Err(TriangulationError::CensusMismatch(format!(
                "expected {} triangles / {} edges for chi = {}, got {} / {}",
                -2 * chi,
                -3 * chi,
                chi,
                t,
                e
            )));
        }
        if self.num_punctures != self.surface.punctures as usize {
            return Err(TriangulationError::CensusMismatch(format!(
                "{} corner orbits but {} punctures declared",
                self.num_punctures, self.surface.punctures
            )));
        }
        // Connectivity over triangles.
        let n = self.num_triangles();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for i in 0..3u8 {
                let p = self.glued_side(Side::new(t, i));
                if !seen[p.tri] {
                    seen[p.tri] = true;
                    stack.push(p.tri);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(TriangulationError::CensusMismatch(
                "triangulation is disconnected".into(),
            ));
        }
        Ok(())
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn num_triangles(&self) -> usize {
        self.edge_of_side.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_punctures(&self) -> usize {
        self.num_punctures
    }

    pub fn edge_of(&self, side: Side) -> usize {
        self.edge_of_side[side.tri][side.idx as usize]
    }

    /// The two sides of an edge; the first is canonical.
    pub fn sides_of(&self, edge: usize) -> (Side, Side) {
        self.edges[edge]
    }

    pub fn canonical_side(&self, edge: usize) -> Side {
        self.edges[edge].0
    }

    pub fn glued_side(&self, side: Side) -> Side {
        let (a, b) = self.edges[self.edge_of(side)];
        if side == a {
            b
        } else {
            a
        }
    }

    pub fn puncture_of(&self, corner: Corner) -> usize {
        self.puncture_of_corner[corner.tri][corner.idx as usize]
    }

    /// Edge ids of the three sides of a triangle.
    pub fn triangle_edges(&self, tri: usize) -> [usize; 3] {
        self.edge_of_side[tri]
    }

    pub fn sides(&self) -> impl Iterator<Item = Side> + '_ {
        (0..self.num_triangles())
            .flat_map(|t| (0..3u8).map(move |i| Side::new(t, i)))
    }

    /// An edge is flippable iff its two sides lie in distinct triangles.
    pub fn is_flippable(&self, edge: usize) -> bool {
        let (a, b) = self.edges[edge];
        a.tri != b.tri
    }

    /// The gluing map as a plain side-pairing, for rebuilding and export.
    pub fn gluing_map(&self) -> BTreeMap<Side, Side> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.edges {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    /// Flips `edge` and returns the new triangulation together with the
    /// coordinate transport rule. The edge id is preserved: in the result it
    /// names the opposite diagonal of the flip quadrilateral.
    pub fn flip(&self, edge: usize) -> Result<(IdealTriangulation, FlipTransport), TriangulationError> {
        if edge >= self.num_edges() {
            return Err(TriangulationError::BadEdgeIndex(edge));
        }
        if !self.is_flippable(edge) {
            return Err(TriangulationError::NotFlippable(edge));
        }
        let (d1, d2) = self.edges[edge];
        let (t1, i1) = (d1.tri, d1.idx);
        let (t2, i2) = (d2.tri, d2.idx);

        // Quadrilateral boundary, counterclockwise from the start corner of
        // the diagonal side in t1: u -> y -> v -> x -> u.
        let q_a = Side::new(t2, (i2 + 1) % 3); // u -> y
        let q_b = Side::new(t2, (i2 + 2) % 3); // y -> v
        let q_c = Side::new(t1, (i1 + 1) % 3); // v -> x
        let q_d = Side::new(t1, (i1 + 2) % 3); // x -> u

        // After the flip the diagonal joins x and y. The new triangles are
        // (y, x, u) in slot t1 and (x, y, v) in slot t2, diagonal kept at the
        // original side indices.
        let reloc = |s: Side| -> Side {
            if s == q_a {
                Side::new(t1, (i1 + 2) % 3) // u -> y
            } else if s == q_b {
                Side::new(t2, (i2 + 1) % 3) // y -> v
            } else if s == q_c {
                Side::new(t2, (i2 + 2) % 3) // v -> x
            } else if s == q_d {
                Side::new(t1, (i1 + 1) % 3) // x -> u
            } else {
                s
            }
        };

        let old = self.gluing_map();
        let mut new_gluing: BTreeMap<Side, Side> = BTreeMap::new();
        for t in 0..self.num_triangles() {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                if s == d1 || s == d2 {
                    continue;
                }
                new_gluing.insert(reloc(s), reloc(old[&s]));
            }
        }
        new_gluing.insert(d1, d2);
        new_gluing.insert(d2, d1);

        // Edge ids persist through relocation.
        let mut new_edge_of_side = self.edge_of_side.clone();
        for s in [q_a, q_b, q_c, q_d] {
            let r = reloc(s);
            new_edge_of_side[r.tri][r.idx as usize] = self.edge_of(s);
        }

        let flipped = IdealTriangulation::from_gluings_with_edge_ids(
            self.surface,
            new_gluing,
            new_edge_of_side,
        )?;
        let transport = FlipTransport {
            edge,
            quad: [
                self.edge_of(q_a),
                self.edge_of(q_b),
                self.edge_of(q_c),
                self.edge_of(q_d),
            ],
        };
        Ok((flipped, transport))
    }

    /// Like `from_gluings` but keeps a prescribed side -> edge id map instead
    /// of renumbering. Used by `flip` so edge ids are stable.
    fn from_gluings_with_edge_ids(
        surface: Surface,
        gluing: BTreeMap<Side, Side>,
        edge_of_side: Vec<[usize; 3]>,
    ) -> Result<Self, TriangulationError> {
        let base = IdealTriangulation::from_gluings(surface, edge_of_side.len(), &gluing)?;
        let num_edges = base.num_edges();
        let mut edges = vec![None; num_edges];
        for t in 0..edge_of_side.len() {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                let id = edge_of_side[t][i as usize];
                if id >= num_edges {
                    return Err(TriangulationError::BadEdgeIndex(id));
                }
                let entry = &mut edges[id];
                match entry {
                    None => *entry = Some((s, s)),
                    Some((a, _)) => {
                        let a = *a;
                        *entry = Some((a.min(s), a.max(s)));
                    }
                }
            }
        }
        let edges: Vec<(Side, Side)> = edges
            .into_iter()
            .map(|e| e.ok_or(TriangulationError::CensusMismatch("unused edge id".into())))
            .collect::<Result<_, _>>()?;
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a == b || gluing[&a] != b {
                return Err(TriangulationError::CensusMismatch(format!(
                    "edge id {} does not match the gluing",
                    id
                )));
            }
        }
        Ok(IdealTriangulation { edges, edge_of_side, ..base })
    }

    /// Per-puncture link coordinates: the weight of an edge is the number of
    /// its ends at that puncture.
    pub fn puncture_link_weights(&self) -> Vec<Vec<u64>> {
        let mut links = vec![vec![0u64; self.num_edges()]; self.num_punctures];
        for (e, &(a, _)) in self.edges.iter().enumerate() {
            let p1 = self.puncture_of(a.start_corner());
            let p2 = self.puncture_of(a.end_corner());
            links[p1][e] += 1;
            links[p2][e] += 1;
        }
        links
    }

    /// All orientation-preserving combinatorial isomorphisms self -> other,
    /// as (triangle image, corner rotation) tables.
    pub fn isomorphisms(&self, other: &IdealTriangulation) -> Vec<Relabeling> {
        let n = self.num_triangles();
        if n != other.num_triangles() {
            return Vec::new();
        }
        let mut found = Vec::new();
        for t0 in 0..n {
            'rot: for r0 in 0..3u8 {
                // image[t] = (t', r): corner c of t maps to corner (c + r) % 3
                // of t', hence side i -> side (i + r) % 3 of t'.
                let mut image: Vec<Option<(usize, u8)>> = vec![None; n];
                image[0] = Some((t0, r0));
                let mut queue = vec![0usize];
                let mut used = vec![false; n];
                used[t0] = true;
                while let Some(t) = queue.pop() {
                    let (t_img, r) = image[t].unwrap();
                    for i in 0..3u8 {
                        let s = Side::new(t, i);
                        let s_img = Side::new(t_img, (i + r) % 3);
                        let p = self.glued_side(s);
                        let p_img_expect = other.glued_side(s_img);
                        // The image of p is forced; that pins image[p.tri].
                        let want = (p_img_expect.tri, (p_img_expect.idx + 3 - p.idx) % 3);
                        match image[p.tri] {
                            None => {
                                if used[want.0] {
                                    continue 'rot;
                                }
                                image[p.tri] = Some(want);
                                used[want.0] = true;
                                queue.push(p.tri);
                            }
                            Some(cur) => {
                                if cur != want {
                                    continue 'rot;
                                }
                            }
                        }
                    }
                }
                let table: Vec<(usize, u8)> = image.into_iter().map(|x| x.unwrap()).collect();
                let rel = Relabeling { table };
                if rel.respects(self, other) {
                    found.push(rel);
                }
            }
        }
        found
    }
}

/// A triangle relabeling: triangle `t` maps to `table[t].0` with corner
/// rotation `table[t].1` (corner c -> corner (c + r) % 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub table: Vec<(usize, u8)>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Relabeling { table: (0..n).map(|t| (t, 0)).collect() }
    }

    pub fn map_side(&self, s: Side) -> Side {
        let (t, r) = self.table[s.tri];
        Side::new(t, (s.idx + r) % 3)
    }

    /// Checks commutation with the gluings of the two triangulations.
    pub fn respects(&self, from: &IdealTriangulation, to: &IdealTriangulation) -> bool {
        if self.table.len() != from.num_triangles() || to.num_triangles() != self.table.len() {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        for &(t, r) in &self.table {
            if r > 2 || t >= seen.len() || seen[t] {
                return false;
            }
            seen[t] = true;
        }
        for t in 0..self.table.len() {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                if self.map_side(from.glued_side(s)) != to.glued_side(self.map_side(s)) {
                    return false;
                }
            }
        }
        true
    }

    /// The induced edge permutation (edge id in `from` -> edge id in `to`).
    pub fn edge_map(&self, from: &IdealTriangulation, to: &IdealTriangulation) -> Vec<usize> {
        let mut m = vec![usize::MAX; from.num_edges()];
        for t in 0..from.num_triangles() {
            for i in 0..3u8 {
                let s = Side::new(t, i);
                m[from.edge_of(s)] = to.edge_of(self.map_side(s));
            }
        }
        m
    }
}

/// Coordinate transport across one flip: with quad side weights (a, b, c, d)
/// in cyclic order and old diagonal weight e, the new diagonal weight is
/// max(a + c, b + d) - e. All other weights are unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTransport {
    pub edge: usize,
    /// Edge ids of the quad boundary, cyclic: (u->y, y->v, v->x, x->u).
    pub quad: [usize; 4],
}

impl FlipTransport {
    pub fn apply_u64(&self, weights: &[u64]) -> Option<Vec<u64>> {
        let a = weights[self.quad[0]];
        let b = weights[self.quad[1]];
        let c = weights[self.quad[2]];
        let d = weights[self.quad[3]];
        let m = (a + c).max(b + d);
        let e = weights[self.edge];
        if m < e {
            return None;
        }
        let mut out = weights.to_vec();
        out[self.edge] = m - e;
        Some(out)
    }
}

/// Canonical layered triangulation of S_{g,n}.
///
/// Base cases: the two-triangle triangulation of the thrice-punctured sphere,
/// and the fan-triangulated 4g-gon with the standard a b a^-1 b^-1 ...
/// boundary identification for S_{g,1}. Additional punctures are introduced
/// by coning the highest-index triangle from a new vertex.
pub fn build_surface(genus: u32, punctures: u32) -> Result<IdealTriangulation, SurfaceError> {
    let surface = Surface::new(genus, punctures)?;
    let (mut gluing, mut num_tris, base_punctures) = if genus == 0 {
        if punctures < 3 {
            // new() already rejected chi >= 0, so this is unreachable.
            return Err(SurfaceError::NotHyperbolic {
                genus,
                punctures,
                chi: surface.euler_characteristic(),
            });
        }
        (sphere_base(), 2usize, 3u32)
    } else {
        (polygon_base(genus), (4 * genus - 2) as usize, 1u32)
    };

    for _ in base_punctures..punctures {
        cone_last_triangle(&mut gluing, &mut num_tris);
    }

    let tri = IdealTriangulation::from_gluings(surface, num_tris, &gluing)
        .expect("layered construction produces a valid triangulation");
    Ok(tri)
}

/// Two triangles glued along all three sides: the thrice-punctured sphere.
fn sphere_base() -> BTreeMap<Side, Side> {
    let mut g = BTreeMap::new();
    let mut glue = |a: Side, b: Side| {
        g.insert(a, b);
        g.insert(b, a);
    };
    glue(Side::new(0, 0), Side::new(1, 2));
    glue(Side::new(0, 1), Side::new(1, 1));
    glue(Side::new(0, 2), Side::new(1, 0));
    g
}

/// Fan triangulation of the 4g-gon with boundary word a1 b1 a1^-1 b1^-1 ...
fn polygon_base(genus: u32) -> BTreeMap<Side, Side> {
    let m = 4 * genus as usize;
    let mut g = BTreeMap::new();
    let mut glue = |a: Side, b: Side| {
        g.insert(a, b);
        g.insert(b, a);
    };
    // Triangles T_j = (0, j, j+1) for j = 1..=m-2, stored at index j - 1.
    // Diagonals (0, j), j = 2..=m-2: side 2 of T_{j-1} and side 0 of T_j.
    for j in 2..=(m - 2) {
        glue(Side::new(j - 2, 2), Side::new(j - 1, 0));
    }
    // Boundary positions 0..m-1 counterclockwise.
    let boundary = |p: usize| -> Side {
        if p == 0 {
            Side::new(0, 0)
        } else if p == m - 1 {
            Side::new(m - 3, 2)
        } else {
            Side::new(p - 1, 1)
        }
    };
    for k in 0..genus as usize {
        glue(boundary(4 * k), boundary(4 * k + 2));
        glue(boundary(4 * k + 1), boundary(4 * k + 3));
    }
    g
}

/// Replaces the highest-index triangle (A, B, C) by the cone (A,B,P),
/// (B,C,P), (C,A,P) over a fresh vertex P.
fn cone_last_triangle(gluing: &mut BTreeMap<Side, Side>, num_tris: &mut usize) {
    let j = *num_tris - 1;
    let t_ab = j;
    let t_bc = *num_tris;
    let t_ca = *num_tris + 1;
    *num_tris += 2;

    let old = [
        gluing[&Side::new(j, 0)],
        gluing[&Side::new(j, 1)],
        gluing[&Side::new(j, 2)],
    ];
    let mut glue = |a: Side, b: Side| {
        gluing.insert(a, b);
        gluing.insert(b, a);
    };
    // Outer sides inherit the old partners. Side 0 of each new triangle is
    // the outer side.
    glue(Side::new(t_ab, 0), old[0]);
    glue(Side::new(t_bc, 0), old[1]);
    glue(Side::new(t_ca, 0), old[2]);
    // Spokes around P.
    glue(Side::new(t_ab, 1), Side::new(t_bc, 2)); // B -> P / P -> B
    glue(Side::new(t_bc, 1), Side::new(t_ca, 2)); // C -> P / P -> C
    glue(Side::new(t_ca, 1), Side::new(t_ab, 2)); // A -> P / P -> A
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_s05() {
        let t = build_surface(0, 5).unwrap();
        assert_eq!(t.num_triangles(), 6);
        assert_eq!(t.num_edges(), 9);
        assert_eq!(t.num_punctures(), 5);
    }

    #[test]
    fn build_s12() {
        let t = build_surface(1, 2).unwrap();
        assert_eq!(t.num_triangles(), 4);
        assert_eq!(t.num_edges(), 6);
        assert_eq!(t.num_punctures(), 2);
    }

    #[test]
    fn build_rejects_non_hyperbolic() {
        assert!(build_surface(0, 2).is_err());
        assert!(build_surface(0, 0).is_err());
        assert!(build_surface(2, 0).is_err());
    }

    #[test]
    fn build_various_types() {
        for (g, n) in [(0, 3), (0, 4), (0, 7), (1, 1), (1, 3), (2, 1), (2, 2), (3, 2)] {
            let t = build_surface(g, n).unwrap();
            let chi = t.surface().euler_characteristic();
            assert_eq!(t.num_triangles() as i64, -2 * chi, "S_{{{},{}}}", g, n);
            assert_eq!(t.num_edges() as i64, -3 * chi);
            assert_eq!(t.num_punctures(), n as usize);
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = build_surface(1, 2).unwrap();
        let b = build_surface(1, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn puncture_links_cover_edge_ends() {
        for (g, n) in [(0, 5), (1, 2)] {
            let t = build_surface(g, n).unwrap();
            let links = t.puncture_link_weights();
            assert_eq!(links.len(), n as usize);
            for e in 0..t.num_edges() {
                let total: u64 = links.iter().map(|l| l[e]).sum();
                assert_eq!(total, 2, "edge {} has two ends", e);
            }
        }
    }

    #[test]
    fn identity_isomorphism_present() {
        let t = build_surface(0, 5).unwrap();
        let isos = t.isomorphisms(&t);
        assert!(isos.contains(&Relabeling::identity(t.num_triangles())));
        for iso in &isos {
            assert!(iso.respects(&t, &t));
        }
    }

    #[test]
    fn isomorphisms_differ_on_size() {
        let a = build_surface(0, 5).unwrap();
        let b = build_surface(1, 2).unwrap();
        assert!(a.isomorphisms(&b).is_empty());
    }

    #[test]
    fn flip_preserves_census() {
        let t = build_surface(0, 5).unwrap();
        for e in 0..t.num_edges() {
            if !t.is_flippable(e) {
                continue;
            }
            let (f, transport) = t.flip(e).unwrap();
            assert_eq!(f.num_triangles(), t.num_triangles());
            assert_eq!(f.num_edges(), t.num_edges());
            assert_eq!(f.num_punctures(), t.num_punctures());
            assert_eq!(transport.edge, e);
        }
    }

    #[test]
    fn double_flip_is_isomorphic_fixing_edges() {
        for (g, n) in [(0, 5), (1, 2)] {
            let t = build_surface(g, n).unwrap();
            for e in 0..t.num_edges() {
                if !t.is_flippable(e) {
                    continue;
                }
                let (f1, tr1) = t.flip(e).unwrap();
                if !f1.is_flippable(e) {
                    continue;
                }
                let (f2, tr2) = f1.flip(e).unwrap();
                let isos = f2.isomorphisms(&t);
                let edge_fixing = isos
                    .iter()
                    .find(|iso| iso.edge_map(&f2, &t).iter().enumerate().all(|(i, &j)| i == j));
                assert!(
                    edge_fixing.is_some(),
                    "double flip of edge {} on S_{{{},{}}} must fix all edges",
                    e,
                    g,
                    n
                );
                // Transport composed with itself is the identity on weights.
                let w: Vec<u64> = (0..t.num_edges() as u64).map(|k| 2 * k + 4).collect();
                // Build a valid-enough vector: use an actual curve below in
                // curve tests; here exercise the pure arithmetic.
                if let Some(w1) = tr1.apply_u64(&w) {
                    if let Some(w2) = tr2.apply_u64(&w1) {
                        assert_eq!(w2, w);
                    }
                }
            }
        }
    }
}
