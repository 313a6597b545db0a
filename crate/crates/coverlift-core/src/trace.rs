//! Tracing normal multicurves through a triangulation.
//!
//! A multicurve with machine weights is traced crossing point by crossing
//! point. Crossing points on an edge are numbered along the edge's canonical
//! direction; inside a triangle an arc entering side `i` at position `q`
//! (measured from the side's start corner) cuts corner `i` when
//! `q < corner_count(i)` and corner `i + 1` otherwise.

use crate::coords::corner_counts;
use crate::error::CurveError;
use crate::triangulation::{IdealTriangulation, Side};

/// Total crossing budget for a single trace.
pub const TRACE_CAP: u64 = 4_000_000;

/// One crossing of the curve over an edge, directed: the curve is about to
/// enter `enter.tri` through side `enter`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Door {
    pub edge: usize,
    /// Position along the canonical direction of the edge.
    pub pos: u64,
    pub enter: Side,
}

impl Door {
    /// Position measured from the start corner of `enter`.
    pub fn local(&self, tri: &IdealTriangulation, weights: &[u64]) -> u64 {
        if tri.canonical_side(self.edge) == self.enter {
            self.pos
        } else {
            weights[self.edge] - 1 - self.pos
        }
    }
}

/// A connected component of a traced multicurve.
#[derive(Debug, Clone)]
pub struct TracedComponent {
    pub weights: Vec<u64>,
    /// Cyclic door sequence in traversal order.
    pub doors: Vec<Door>,
}

impl TracedComponent {
    pub fn len(&self) -> usize {
        self.doors.len()
    }

    /// Entry and exit side of the passage between doors `j` and `j + 1`.
    pub fn passage(&self, tri: &IdealTriangulation, j: usize) -> (Side, Side) {
        let entry = self.doors[j].enter;
        let next = self.doors[(j + 1) % self.doors.len()];
        let exit = tri.glued_side(next.enter);
        debug_assert_eq!(exit.tri, entry.tri);
        (entry, exit)
    }
}

/// Decomposes a multicurve into connected components by tracing.
pub fn trace(tri: &IdealTriangulation, weights: &[u64]) -> Result<Vec<TracedComponent>, CurveError> {
    let total: u64 = weights.iter().sum();
    if total > TRACE_CAP {
        return Err(CurveError::Budget(format!(
            "total weight {} exceeds trace cap {}",
            total, TRACE_CAP
        )));
    }
    let corner: Vec<[u64; 3]> = (0..tri.num_triangles())
        .map(|t| {
            let [ea, eb, ec] = tri.triangle_edges(t);
            corner_counts(&[weights[ea], weights[eb], weights[ec]])
        })
        .collect();

    let mut offsets = vec![0usize; tri.num_edges() + 1];
    for e in 0..tri.num_edges() {
        offsets[e + 1] = offsets[e] + weights[e] as usize;
    }
    let mut visited = vec![false; total as usize];
    let mut components = Vec::new();

    for e in 0..tri.num_edges() {
        for k in 0..weights[e] {
            if visited[offsets[e] + k as usize] {
                continue;
            }
            // Enter through the canonical side first.
            let start = Door { edge: e, pos: k, enter: tri.canonical_side(e) };
            let mut doors = Vec::new();
            let mut comp_weights = vec![0u64; tri.num_edges()];
            let mut cur = start;
            loop {
                visited[offsets[cur.edge] + cur.pos as usize] = true;
                comp_weights[cur.edge] += 1;
                doors.push(cur);
                cur = step(tri, weights, &corner, cur);
                if cur == start {
                    break;
                }
                debug_assert!(
                    !visited[offsets[cur.edge] + cur.pos as usize],
                    "trace re-entered a visited crossing away from the start"
                );
            }
            components.push(TracedComponent { weights: comp_weights, doors });
        }
    }
    components.sort_by(|a, b| a.weights.cmp(&b.weights));
    Ok(components)
}

/// Follows the arc from `door` through its triangle and across the next edge.
fn step(tri: &IdealTriangulation, weights: &[u64], corner: &[[u64; 3]], door: Door) -> Door {
    let s = door.enter;
    let t = s.tri;
    let i = s.idx as usize;
    let q = door.local(tri, weights);
    let n_i = corner[t][i];
    let (exit, q_exit) = if q < n_i {
        // Cut corner i; leave through the incoming side at that corner.
        let out = Side::new(t, ((i + 2) % 3) as u8);
        let w_out = weights[tri.edge_of(out)];
        (out, w_out - 1 - q)
    } else {
        // Cut corner i + 1; depth from that corner is w_i - 1 - q.
        let out = Side::new(t, ((i + 1) % 3) as u8);
        (out, weights[tri.edge_of(s)] - 1 - q)
    };
    let edge = tri.edge_of(exit);
    let pos = if tri.canonical_side(edge) == exit {
        q_exit
    } else {
        weights[edge] - 1 - q_exit
    };
    let enter = tri.glued_side(exit);
    Door { edge, pos, enter }
}

/// A curve drawn transversally but not necessarily normally: the cyclic
/// sequence of sides through which it successively enters triangles.
pub type DrawnWord = Vec<Side>;

/// Reverses a drawn word (the curve traversed backwards).
pub fn reverse_word(tri: &IdealTriangulation, word: &[Side]) -> DrawnWord {
    word.iter().rev().map(|&s| tri.glued_side(s)).collect()
}

/// Removes backtracks (passages entering and leaving a triangle through the
/// same side) from a cyclic drawn word. Returns the reduced word; an empty
/// result means the curve was null-homotopic. A reduced word crosses every
/// edge minimally in its free homotopy class, so counting doors per edge
/// yields normal coordinates.
pub fn reduce_word(tri: &IdealTriangulation, word: &[Side]) -> DrawnWord {
    let mut w: Vec<Side> = word.to_vec();
    loop {
        // Linear pass with a stack; backtrack between stack top s_j and next
        // s_{j+1} means the passage in s_j.tri exits through s_j itself.
        let mut out: Vec<Side> = Vec::with_capacity(w.len());
        let mut changed = false;
        for &s in &w {
            if let Some(&top) = out.last() {
                // Passage entered via `top`, exits via glued(s).
                if tri.glued_side(s) == top {
                    out.pop();
                    changed = true;
                    continue;
                }
            }
            out.push(s);
        }
        // Cyclic wrap: cancel matching head/tail passages.
        while out.len() >= 2 {
            let first = out[0];
            let last = *out.last().unwrap();
            if tri.glued_side(first) == last {
                out.remove(0);
                out.pop();
                changed = true;
            } else {
                break;
            }
        }
        w = out;
        if !changed || w.is_empty() {
            break;
        }
    }
    // A length-1 word would be a passage entering and exiting through the
    // same edge crossing; it cannot occur for a curve.
    debug_assert_ne!(w.len(), 1);
    w
}

/// Edge-crossing counts of a drawn word.
pub fn word_weights(tri: &IdealTriangulation, word: &[Side]) -> Vec<u64> {
    let mut w = vec![0u64; tri.num_edges()];
    for s in word {
        w[tri.edge_of(*s)] += 1;
    }
    w
}

/// Checks that consecutive doors of a drawn word lie in a common triangle.
pub fn word_is_consistent(tri: &IdealTriangulation, word: &[Side]) -> bool {
    if word.is_empty() {
        return true;
    }
    (0..word.len()).all(|j| {
        let entry = word[j];
        let next = word[(j + 1) % word.len()];
        tri.glued_side(next).tri == entry.tri
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::NormalCoordinates;
    use crate::triangulation::build_surface;

    #[test]
    fn zero_curve_has_no_components() {
        let t = build_surface(0, 5).unwrap();
        let comps = trace(&t, &vec![0; t.num_edges()]).unwrap();
        assert!(comps.is_empty());
    }

    #[test]
    fn puncture_links_are_connected() {
        for (g, n) in [(0, 5), (1, 2), (0, 4)] {
            let t = build_surface(g, n).unwrap();
            for link in t.puncture_link_weights() {
                let comps = trace(&t, &link).unwrap();
                assert_eq!(comps.len(), 1, "link on S_{{{},{}}}", g, n);
                assert_eq!(comps[0].weights, link);
                assert_eq!(
                    comps[0].doors.len() as u64,
                    link.iter().sum::<u64>(),
                    "every crossing visited once"
                );
            }
        }
    }

    #[test]
    fn doubled_link_has_two_equal_components() {
        let t = build_surface(0, 5).unwrap();
        let link = &t.puncture_link_weights()[0];
        let doubled: Vec<u64> = link.iter().map(|w| 2 * w).collect();
        let comps = trace(&t, &doubled).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].weights, *link);
        assert_eq!(comps[1].weights, *link);
    }

    #[test]
    fn component_weights_sum_to_input() {
        let t = build_surface(1, 2).unwrap();
        let links = t.puncture_link_weights();
        let sum: Vec<u64> = (0..t.num_edges())
            .map(|e| links.iter().map(|l| l[e]).sum())
            .collect();
        let comps = trace(&t, &sum).unwrap();
        let mut acc = vec![0u64; t.num_edges()];
        for c in &comps {
            for e in 0..t.num_edges() {
                acc[e] += c.weights[e];
            }
        }
        assert_eq!(acc, sum);
        for c in &comps {
            let nc = NormalCoordinates::from_u64(&c.weights);
            assert!(crate::coords::is_valid(&t, &nc), "components stay valid");
        }
    }

    #[test]
    fn traced_words_are_consistent_and_reduced() {
        let t = build_surface(0, 5).unwrap();
        for link in t.puncture_link_weights() {
            let comps = trace(&t, &link).unwrap();
            let word: Vec<Side> = comps[0].doors.iter().map(|d| d.enter).collect();
            assert!(word_is_consistent(&t, &word));
            let reduced = reduce_word(&t, &word);
            assert_eq!(reduced.len(), word.len(), "normal curves have no backtracks");
            assert_eq!(word_weights(&t, &word), link);
        }
    }

    #[test]
    fn reduce_cancels_spur() {
        let t = build_surface(0, 5).unwrap();
        let link = &t.puncture_link_weights()[0];
        let comps = trace(&t, link).unwrap();
        let mut word: Vec<Side> = comps[0].doors.iter().map(|d| d.enter).collect();
        // Insert a spur: cross some edge and come straight back.
        let s = Side::new(word[0].tri, (word[0].idx + 1) % 3);
        let spur_in = t.glued_side(s);
        word.insert(1, spur_in);
        word.insert(2, s);
        // The inserted pair enters spur_in.tri via spur_in and returns via s.
        // Reduction must restore the original length.
        let reduced = reduce_word(&t, &word);
        assert_eq!(reduced.len(), comps[0].doors.len());
        assert_eq!(word_weights(&t, &reduced), *link);
    }
}
