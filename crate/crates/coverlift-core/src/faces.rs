//! Face census of a minimal-position overlay.
//!
//! Inside every triangle the chords and boundary form a planar map; its
//! interior faces are pieces. Pieces glue across edge intervals (and thereby
//! around punctures, through the edge-end intervals), so the complementary
//! faces of the two curves are union-find classes of pieces. For a face F
//! with P pieces, G interior edge-interval gluings and n punctures, the
//! filled Euler characteristic is chi(F) = P - G + n, and the number of
//! boundary circuits k comes from stitched walks along chord-segment darts.
//! F is a disk iff chi = 1 and k = 1.

use std::collections::BTreeMap;

use crate::overlay::Overlay;
use crate::triangulation::Side;

/// Census of one complementary face.
#[derive(Debug, Clone)]
pub struct Face {
    pub pieces: usize,
    pub gluings: usize,
    /// Punctures contained in this face.
    pub punctures: Vec<usize>,
    /// Number of boundary circuits.
    pub circuits: usize,
    /// Filled Euler characteristic: pieces - gluings + punctures.
    pub euler: i64,
    /// Boundary circuits as drawn words: the sides through which a parallel
    /// push-off of each circuit successively enters triangles.
    pub circuit_words: Vec<Vec<Side>>,
    /// Chord-segment darts on the face boundary.
    pub boundary_darts: usize,
    /// Crossings visited along the face boundary, with multiplicity.
    pub corners: usize,
}

impl Face {
    /// Genus of the filled compact face, from chi = 2 - 2g - k.
    pub fn genus(&self) -> i64 {
        (2 - self.circuits as i64 - self.euler) / 2
    }

    pub fn is_disk(&self) -> bool {
        self.euler == 1 && self.circuits == 1
    }

    /// A bigon face: a disk without punctures whose boundary has exactly two
    /// corners (one arc of each curve). Never present after bigon removal.
    pub fn is_bigon(&self) -> bool {
        self.is_disk() && self.punctures.is_empty() && self.corners == 2
    }
}

#[derive(Debug, Clone)]
pub struct FaceCensus {
    pub faces: Vec<Face>,
    pub crossings: usize,
}

impl FaceCensus {
    /// Every complementary region is a disk with at most one puncture.
    pub fn fills(&self) -> bool {
        self.faces.iter().all(|f| f.is_disk() && f.punctures.len() <= 1)
    }

    pub fn has_bigon(&self) -> bool {
        self.faces.iter().any(|f| f.is_bigon())
    }

    /// Euler identity: the filled face characteristics sum to chi of the
    /// closed-up surface plus the number of crossings.
    pub fn euler_identity_holds(&self, genus: u32) -> bool {
        let total: i64 = self.faces.iter().map(|f| f.euler).sum();
        total == 2 - 2 * genus as i64 + self.crossings as i64
    }
}

// Per-triangle planar map ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeKind {
    Corner(u8),
    SidePoint { side: u8, local: usize },
    Crossing(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcKind {
    /// Boundary arc on `side` covering side-local interval `j` (interval 0
    /// precedes the side's first point, interval m follows its last).
    Boundary { side: Side, j: usize },
    ChordSeg,
}

struct TriMap {
    rotation: Vec<Vec<usize>>,
    /// darts: (from_node, to_node, twin, kind).
    darts: Vec<(usize, usize, usize, ArcKind)>,
    /// Interior face id per dart; usize::MAX - 1 marks the outer region.
    face_of_dart: Vec<usize>,
    num_faces: usize,
    /// (side idx, local interval) -> (interior piece, its boundary dart).
    interval_piece: BTreeMap<(u8, usize), (usize, usize)>,
    corner_piece: [usize; 3],
    chord_darts: Vec<usize>,
}

const OUTER: usize = usize::MAX - 1;

impl TriMap {
    fn phi(&self, d: usize) -> usize {
        let head = self.darts[d].1;
        let twin = self.darts[d].2;
        let r = &self.rotation[head];
        let p = r.iter().position(|&x| x == twin).expect("twin present in rotation");
        r[(p + 1) % r.len()]
    }
}

fn build_tri_map(ov: &Overlay, t: usize) -> TriMap {
    let tri = &ov.tri;
    let counts: Vec<usize> = ov.order.iter().map(|o| o.len()).collect();

    let mut nodes: Vec<NodeKind> =
        vec![NodeKind::Corner(0), NodeKind::Corner(1), NodeKind::Corner(2)];
    let mut side_node: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for side_idx in 0..3u8 {
        let e = tri.edge_of(Side::new(t, side_idx));
        for local in 0..counts[e] {
            side_node[side_idx as usize].push(nodes.len());
            nodes.push(NodeKind::SidePoint { side: side_idx, local });
        }
    }
    let mut crossing_node: BTreeMap<usize, usize> = BTreeMap::new();

    // Chords of both curves in this triangle, as node sequences.
    struct LocalChord {
        curve: u8,
        node_seq: Vec<usize>,
    }
    let mut local_chords: Vec<LocalChord> = Vec::new();
    for curve in 0..2usize {
        for ch in ov.chords[curve].iter() {
            if ch.tri != t {
                continue;
            }
            let local_of = |end: &crate::overlay::ChordEnd| -> usize {
                let m = counts[end.edge];
                let local = if tri.canonical_side(end.edge) == end.side {
                    end.merged
                } else {
                    m - 1 - end.merged
                };
                side_node[end.side.idx as usize][local]
            };
            let mut seq = vec![local_of(&ch.from)];
            for &x in &ch.crossings {
                let node = *crossing_node.entry(x).or_insert_with(|| {
                    nodes.push(NodeKind::Crossing(x));
                    nodes.len() - 1
                });
                seq.push(node);
            }
            seq.push(local_of(&ch.to));
            local_chords.push(LocalChord { curve: curve as u8, node_seq: seq });
        }
    }

    // Darts; twins at consecutive ids.
    let mut darts: Vec<(usize, usize, usize, ArcKind)> = Vec::new();
    fn add_edge(
        darts: &mut Vec<(usize, usize, usize, ArcKind)>,
        from: usize,
        to: usize,
        kind: ArcKind,
    ) -> (usize, usize) {
        let d1 = darts.len();
        darts.push((from, to, d1 + 1, kind));
        darts.push((to, from, d1, kind));
        (d1, d1 + 1)
    }

    // Boundary cycle: corner 0, side-0 points, corner 1, side-1 points,
    // corner 2, side-2 points.
    let mut boundary_nodes: Vec<usize> = Vec::new();
    let mut boundary_kinds: Vec<ArcKind> = Vec::new();
    for side_idx in 0..3usize {
        boundary_nodes.push(side_idx);
        boundary_nodes.extend(side_node[side_idx].iter().copied());
        let side = Side::new(t, side_idx as u8);
        let m = counts[tri.edge_of(side)];
        for j in 0..=m {
            boundary_kinds.push(ArcKind::Boundary { side, j });
        }
    }
    let nb = boundary_nodes.len();
    debug_assert_eq!(boundary_kinds.len(), nb);
    let mut forward_arc: Vec<usize> = Vec::with_capacity(nb);
    for k in 0..nb {
        let from = boundary_nodes[k];
        let to = boundary_nodes[(k + 1) % nb];
        let (d, _) = add_edge(&mut darts, from, to, boundary_kinds[k]);
        forward_arc.push(d);
    }

    // Chord segments.
    let mut chord_end_out: BTreeMap<usize, usize> = BTreeMap::new();
    #[derive(Default, Clone, Copy)]
    struct CrossPorts {
        a_fwd: usize,
        a_back: usize,
        b_fwd: usize,
        b_back: usize,
    }
    let mut cross_ports: BTreeMap<usize, CrossPorts> = BTreeMap::new();
    let mut chord_darts: Vec<usize> = Vec::new();
    for lc in &local_chords {
        for w in lc.node_seq.windows(2) {
            let (d_fwd, d_back) = add_edge(&mut darts, w[0], w[1], ArcKind::ChordSeg);
            chord_darts.push(d_fwd);
            chord_darts.push(d_back);
            for (node, out_dart, is_fwd) in [(w[0], d_fwd, true), (w[1], d_back, false)] {
                match nodes[node] {
                    NodeKind::SidePoint { .. } => {
                        chord_end_out.insert(node, out_dart);
                    }
                    NodeKind::Crossing(x) => {
                        let ports = cross_ports.entry(x).or_insert(CrossPorts {
                            a_fwd: usize::MAX,
                            a_back: usize::MAX,
                            b_fwd: usize::MAX,
                            b_back: usize::MAX,
                        });
                        match (lc.curve, is_fwd) {
                            (0, true) => ports.a_fwd = out_dart,
                            (0, false) => ports.a_back = out_dart,
                            (1, true) => ports.b_fwd = out_dart,
                            (1, false) => ports.b_back = out_dart,
                            _ => unreachable!(),
                        }
                    }
                    NodeKind::Corner(_) => unreachable!("chords never end at corners"),
                }
            }
        }
    }

    // Rotations (counterclockwise out-darts).
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (k, &node) in boundary_nodes.iter().enumerate() {
        let toward_next = forward_arc[k];
        let toward_prev = darts[forward_arc[(k + nb - 1) % nb]].2;
        match nodes[node] {
            NodeKind::Corner(_) => {
                rotation[node] = vec![toward_next, toward_prev];
            }
            NodeKind::SidePoint { .. } => {
                let chord = *chord_end_out
                    .get(&node)
                    .expect("every side point is a chord endpoint");
                rotation[node] = vec![toward_next, chord, toward_prev];
            }
            NodeKind::Crossing(_) => unreachable!(),
        }
    }
    for (&x, &node) in crossing_node.iter() {
        let ports = cross_ports[&x];
        // With dir_a east, sign > 0 puts dir_b north; counterclockwise from
        // east: a_fwd, b_fwd, a_back, b_back. Negative sign swaps b ports.
        rotation[node] = if ov.crossings[x].sign > 0 {
            vec![ports.a_fwd, ports.b_fwd, ports.a_back, ports.b_back]
        } else {
            vec![ports.a_fwd, ports.b_back, ports.a_back, ports.b_fwd]
        };
        debug_assert!(rotation[node].iter().all(|&d| d != usize::MAX));
    }

    let mut map = TriMap {
        rotation,
        darts,
        face_of_dart: Vec::new(),
        num_faces: 0,
        interval_piece: BTreeMap::new(),
        corner_piece: [usize::MAX; 3],
        chord_darts,
    };

    // Face orbits; the outer region is the orbit of any counterclockwise
    // boundary dart (the region to its right is outside the triangle).
    map.face_of_dart = vec![usize::MAX; map.darts.len()];
    {
        let mut d = forward_arc[0];
        loop {
            map.face_of_dart[d] = OUTER;
            d = map.phi(d);
            if d == forward_arc[0] {
                break;
            }
        }
    }
    for d0 in 0..map.darts.len() {
        if map.face_of_dart[d0] != usize::MAX {
            continue;
        }
        let id = map.num_faces;
        map.num_faces += 1;
        let mut d = d0;
        loop {
            map.face_of_dart[d] = id;
            d = map.phi(d);
            if d == d0 {
                break;
            }
        }
    }
    debug_assert_eq!(
        map.num_faces,
        map.darts.len() / 2 - nodes.len() + 1,
        "interior face count must match Euler's formula"
    );

    // Interval -> interior piece, and corner pieces.
    for (k, &fwd) in forward_arc.iter().enumerate() {
        let back = map.darts[fwd].2;
        let interior = if map.face_of_dart[fwd] == OUTER { back } else { fwd };
        debug_assert_ne!(map.face_of_dart[interior], OUTER);
        if let ArcKind::Boundary { side, j } = boundary_kinds[k] {
            map.interval_piece.insert((side.idx, j), (map.face_of_dart[interior], interior));
        }
    }
    for c in 0..3usize {
        let k = boundary_nodes.iter().position(|&n| n == c).unwrap();
        let fwd = forward_arc[k];
        let interior = if map.face_of_dart[fwd] == OUTER { map.darts[fwd].2 } else { fwd };
        map.corner_piece[c] = map.face_of_dart[interior];
        let prev = forward_arc[(k + nb - 1) % nb];
        let prev_interior = if map.face_of_dart[prev] == OUTER { map.darts[prev].2 } else { prev };
        debug_assert_eq!(
            map.face_of_dart[prev_interior],
            map.corner_piece[c],
            "the two arcs at a corner bound one piece"
        );
    }
    map
}

// Global census --------------------------------------------------------------

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != c {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Computes the face census of an overlay.
pub fn census(ov: &Overlay) -> FaceCensus {
    let tri = &ov.tri;
    let nt = tri.num_triangles();
    let counts: Vec<usize> = ov.order.iter().map(|o| o.len()).collect();
    let maps: Vec<TriMap> = (0..nt).map(|t| build_tri_map(ov, t)).collect();

    let offset: Vec<usize> = maps
        .iter()
        .scan(0usize, |acc, m| {
            let o = *acc;
            *acc += m.num_faces;
            Some(o)
        })
        .collect();
    let total_pieces: usize = maps.iter().map(|m| m.num_faces).sum();
    let mut uf = UnionFind::new(total_pieces);

    // Local interval of an edge interval on a given side: side-local
    // interval j corresponds to canonical interval j on the canonical side
    // and m - j on the other.
    let local_interval = |side: Side, q: usize| -> usize {
        let e = tri.edge_of(side);
        if tri.canonical_side(e) == side {
            q
        } else {
            counts[e] - q
        }
    };

    let mut gluings: Vec<usize> = Vec::new(); // piece (post-union root applied later)
    for e in 0..tri.num_edges() {
        let (sa, sb) = tri.sides_of(e);
        for q in 0..=counts[e] {
            let (pa, _) = maps[sa.tri].interval_piece[&(sa.idx, local_interval(sa, q))];
            let (pb, _) = maps[sb.tri].interval_piece[&(sb.idx, local_interval(sb, q))];
            let ga = offset[sa.tri] + pa;
            let gb = offset[sb.tri] + pb;
            uf.union(ga, gb);
            gluings.push(ga);
        }
    }

    let mut root_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut faces: Vec<Face> = Vec::new();
    let mut face_of_piece = vec![usize::MAX; total_pieces];
    for p in 0..total_pieces {
        let r = uf.find(p);
        let id = *root_index.entry(r).or_insert_with(|| {
            faces.push(Face {
                pieces: 0,
                gluings: 0,
                punctures: Vec::new(),
                circuits: 0,
                euler: 0,
                circuit_words: Vec::new(),
                boundary_darts: 0,
                corners: 0,
            });
            faces.len() - 1
        });
        face_of_piece[p] = id;
        faces[id].pieces += 1;
    }
    for &g in &gluings {
        faces[face_of_piece[g]].gluings += 1;
    }

    // Punctures: the corner pieces of one puncture all lie in one face.
    let mut puncture_face: Vec<Option<usize>> = vec![None; tri.num_punctures()];
    for t in 0..nt {
        for c in 0..3u8 {
            let p = tri.puncture_of(crate::triangulation::Corner { tri: t, idx: c });
            let f = face_of_piece[offset[t] + maps[t].corner_piece[c as usize]];
            match puncture_face[p] {
                None => puncture_face[p] = Some(f),
                Some(prev) => assert_eq!(prev, f, "puncture {} split across faces", p),
            }
        }
    }
    for (p, f) in puncture_face.iter().enumerate() {
        faces[f.unwrap()].punctures.push(p);
    }

    // Boundary circuits: stitched walks along chord-segment darts. The walk
    // inside a triangle follows phi; on a boundary-arc dart the face
    // continues across the edge interval into the glued triangle.
    let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for (t, m) in maps.iter().enumerate() {
        for &d in &m.chord_darts {
            visited.insert((t, d), false);
        }
    }
    let keys: Vec<(usize, usize)> = visited.keys().copied().collect();
    for key in keys {
        if visited[&key] {
            continue;
        }
        let (t0, d0) = key;
        let face = face_of_piece[offset[t0] + maps[t0].face_of_dart[d0]];
        let mut word: Vec<Side> = Vec::new();
        let mut n_darts = 0usize;
        let mut n_corners = 0usize;
        let (mut t, mut d) = (t0, d0);
        loop {
            let was = visited.insert((t, d), true);
            debug_assert_eq!(was, Some(false), "circuit revisited a dart");
            n_darts += 1;
            let mut w = maps[t].phi(d);
            let mut direct = true;
            loop {
                match maps[t].darts[w].3 {
                    ArcKind::ChordSeg => break,
                    ArcKind::Boundary { side, j } => {
                        direct = false;
                        let e = tri.edge_of(side);
                        let q = if tri.canonical_side(e) == side { j } else { counts[e] - j };
                        let s2 = tri.glued_side(side);
                        let j2 = local_interval(s2, q);
                        let (_, d2) = maps[s2.tri].interval_piece[&(s2.idx, j2)];
                        word.push(s2);
                        t = s2.tri;
                        w = maps[t].phi(d2);
                    }
                }
            }
            // Direct chord-to-chord transitions happen exactly at crossings.
            if direct {
                n_corners += 1;
            }
            d = w;
            if (t, d) == (t0, d0) {
                break;
            }
        }
        let f = &mut faces[face];
        f.circuits += 1;
        f.circuit_words.push(word);
        f.boundary_darts += n_darts;
        f.corners += n_corners;
    }

    for f in faces.iter_mut() {
        f.euler = f.pieces as i64 - f.gluings as i64 + f.punctures.len() as i64;
    }
    FaceCensus { faces, crossings: ov.crossings.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_surface;
    use std::sync::Arc;

    fn census_of(tri: &Arc<crate::triangulation::IdealTriangulation>, wa: &[u64], wb: &[u64]) -> FaceCensus {
        let ov = Overlay::build(tri.clone(), wa.to_vec(), wb.to_vec()).unwrap();
        census(&ov)
    }

    #[test]
    fn empty_overlay_has_one_face() {
        for (g, n) in [(0u32, 5u32), (1, 2), (0, 3)] {
            let tri = Arc::new(build_surface(g, n).unwrap());
            let zero = vec![0u64; tri.num_edges()];
            let c = census_of(&tri, &zero, &zero);
            assert_eq!(c.faces.len(), 1);
            let f = &c.faces[0];
            assert_eq!(f.punctures.len(), n as usize);
            assert_eq!(f.circuits, 0);
            assert_eq!(f.euler, 2 - 2 * g as i64, "chi of the closed surface");
            assert!(c.euler_identity_holds(g));
        }
    }

    #[test]
    fn single_link_cuts_off_once_punctured_disk() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let zero = vec![0u64; tri.num_edges()];
        for (p, link) in tri.puncture_link_weights().iter().enumerate() {
            let c = census_of(&tri, link, &zero);
            // A puncture link splits S into a once-punctured disk and the
            // complement.
            assert_eq!(c.faces.len(), 2);
            assert!(c.euler_identity_holds(0));
            let disk = c.faces.iter().find(|f| f.punctures == vec![p]).unwrap();
            assert!(disk.is_disk(), "link side: {:?}", disk);
            let rest = c.faces.iter().find(|f| f.punctures != vec![p]).unwrap();
            assert_eq!(rest.punctures.len(), 4);
            assert_eq!(rest.circuits, 1);
            assert_eq!(rest.euler, 1, "a 4-punctured disk fills to a disk");
        }
    }

    #[test]
    fn two_links_make_three_faces() {
        let tri = Arc::new(build_surface(0, 5).unwrap());
        let links = tri.puncture_link_weights();
        let c = census_of(&tri, &links[0], &links[1]);
        assert_eq!(c.crossings, 0);
        assert_eq!(c.faces.len(), 3);
        assert!(c.euler_identity_holds(0));
        assert!(!c.fills());
    }
}
