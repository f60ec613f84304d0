//! Curvature and convexity verification: full cycles, systole, k-largeness,
//! local k-largeness, 3-convexity, convexity, and the systolic verdict.

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homology::{first_homology, HomologyReport};
use crate::simplex::{Simplex, VertexId};
use crate::subcomplex::{star, SubcomplexHandle};

/// Cycle that is full as a subcomplex: consecutive vertices adjacent,
/// everything else spanned by its vertices already inside the cycle.
/// Stored canonically: minimal vertex first, second vertex smaller than the
/// last one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FullCycle {
    vertices: Vec<VertexId>,
}

impl FullCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn ids(&self) -> Vec<u32> {
        self.vertices.iter().map(|v| v.0).collect()
    }

    fn relabel(&self, map: impl Fn(VertexId) -> VertexId) -> FullCycle {
        let relabeled: Vec<VertexId> = self.vertices.iter().map(|v| map(*v)).collect();
        canonical_cycle(relabeled)
    }
}

fn canonical_cycle(mut verts: Vec<VertexId>) -> FullCycle {
    let min_pos = verts
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap();
    verts.rotate_left(min_pos);
    if verts[1] > verts[verts.len() - 1] {
        verts[1..].reverse();
    }
    FullCycle { vertices: verts }
}

/// Minimum full-cycle length, or `Infinite` when no full cycle exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Systole {
    Finite(usize),
    Infinite,
}

impl Systole {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Systole::Finite(n) => n >= k,
            Systole::Infinite => true,
        }
    }
}

/// Depth-first enumeration of full cycles of length at most `max_len`.
///
/// Paths start at the cycle's minimal vertex, extend only through vertices
/// with no edge back into the path interior, and close when the last vertex
/// is adjacent to the start. Length-3 cycles are full exactly when the
/// triangle they bound is missing.
fn cycles_up_to(k: &Complex, max_len: usize, stop_at_first: bool) -> Vec<FullCycle> {
    let mut out = Vec::new();
    if max_len < 3 {
        return out;
    }
    let verts: Vec<VertexId> = k.vertex_ids().collect();
    let mut path: Vec<VertexId> = Vec::with_capacity(max_len);
    for &a in &verts {
        for &v1 in k.neighbors(a) {
            let v1 = VertexId(v1);
            if v1 <= a {
                continue;
            }
            path.clear();
            path.push(a);
            path.push(v1);
            dfs(k, a, &mut path, max_len, stop_at_first, &mut out);
            if stop_at_first && !out.is_empty() {
                return out;
            }
        }
    }
    out.sort();
    out
}

fn dfs(
    k: &Complex,
    start: VertexId,
    path: &mut Vec<VertexId>,
    max_len: usize,
    stop_at_first: bool,
    out: &mut Vec<FullCycle>,
) {
    let last = *path.last().unwrap();
    for &w in k.neighbors(last) {
        let w = VertexId(w);
        if w <= start || path.contains(&w) {
            continue;
        }
        // a chord to any interior vertex rules w out entirely
        if path[1..path.len() - 1]
            .iter()
            .any(|p| k.are_adjacent(w, *p))
        {
            continue;
        }
        if k.are_adjacent(w, start) {
            // close; count each cycle once per direction
            if path[1] < w {
                let len = path.len() + 1;
                let full = if len == 3 {
                    let t = Simplex::new([start.0, path[1].0, w.0]).unwrap();
                    !k.contains(&t)
                } else {
                    true
                };
                if full {
                    let mut verts = path.clone();
                    verts.push(w);
                    out.push(FullCycle { vertices: verts });
                    if stop_at_first {
                        return;
                    }
                }
            }
            // w stays adjacent to the start, so it cannot extend the path
            continue;
        }
        if path.len() + 2 <= max_len {
            path.push(w);
            dfs(k, start, path, max_len, stop_at_first, out);
            path.pop();
            if stop_at_first && !out.is_empty() {
                return;
            }
        }
    }
}

/// All full cycles of length strictly below `bound`, canonical order.
pub fn full_cycles_shorter_than(k: &Complex, bound: usize) -> Result<Vec<FullCycle>> {
    if bound < 4 {
        return Err(Error::InvalidArgument(format!(
            "cycle bound must be at least 4, got {bound}"
        )));
    }
    Ok(cycles_up_to(k, bound - 1, false))
}

/// Shortest full cycle of length strictly below `bound`, if any.
pub fn shortest_full_cycle_below(k: &Complex, bound: usize) -> Option<FullCycle> {
    for len in 3..bound {
        let found = cycles_up_to(k, len, false)
            .into_iter()
            .filter(|c| c.len() == len)
            .min();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Exact systole, by deepening the bounded search until the vertex count is
/// reached. Induced cycles cannot be longer than the vertex count, so a
/// fruitless full sweep proves there is no full cycle at all.
pub fn systole(k: &Complex) -> Systole {
    let n = k.vertex_count();
    match shortest_full_cycle_below(k, n + 1) {
        Some(c) => Systole::Finite(c.len()),
        None => Systole::Infinite,
    }
}

/// Verdict of a (local) k-largeness check, with a witness on failure.
#[derive(Debug, Clone, Serialize)]
pub struct LargenessReport {
    pub k: usize,
    pub verdict: bool,
    /// Short full cycle that breaks the bound, in parent vertex ids.
    pub witness_cycle: Option<FullCycle>,
    /// Simplex whose link (for `is_k_large`) or star (for
    /// `is_locally_k_large`) contains the witness; `None` when the witness
    /// lives in the complex itself.
    pub witness_location: Option<Simplex>,
}

impl LargenessReport {
    fn pass(k: usize) -> Self {
        LargenessReport {
            k,
            verdict: true,
            witness_cycle: None,
            witness_location: None,
        }
    }

    fn fail(k: usize, cycle: FullCycle, location: Option<Simplex>) -> Self {
        LargenessReport {
            k,
            verdict: false,
            witness_cycle: Some(cycle),
            witness_location: location,
        }
    }
}

/// systole(K) >= k and systole of every link >= k.
pub fn is_k_large(k: &Complex, bound: usize) -> Result<LargenessReport> {
    if bound < 4 {
        return Err(Error::InvalidArgument(format!(
            "largeness parameter must be at least 4, got {bound}"
        )));
    }
    if let Some(c) = shortest_full_cycle_below(k, bound) {
        return Ok(LargenessReport::fail(bound, c, None));
    }
    for s in k.faces() {
        let link = k.link(s)?;
        if let Some(c) = shortest_full_cycle_below(&link.complex, bound) {
            let parent_cycle = c.relabel(|v| link.parent_vertex(v));
            return Ok(LargenessReport::fail(bound, parent_cycle, Some(s.clone())));
        }
    }
    Ok(LargenessReport::pass(bound))
}

/// The star of every simplex is k-large.
pub fn is_locally_k_large(k: &Complex, bound: usize) -> Result<LargenessReport> {
    if bound < 4 {
        return Err(Error::InvalidArgument(format!(
            "largeness parameter must be at least 4, got {bound}"
        )));
    }
    for s in k.faces() {
        let st = star(k, s)?;
        let (standalone, to_parent) = st.as_standalone();
        let inner = is_k_large(&standalone, bound)?;
        if !inner.verdict {
            let cycle = inner
                .witness_cycle
                .expect("failing largeness report carries a cycle")
                .relabel(|v| VertexId(to_parent[v.0 as usize]));
            return Ok(LargenessReport::fail(bound, cycle, Some(s.clone())));
        }
    }
    Ok(LargenessReport::pass(bound))
}

/// Alternative route to local largeness: the link of every simplex is
/// k-large. Kept as a cross-check against the star route.
pub fn links_k_large(k: &Complex, bound: usize) -> Result<LargenessReport> {
    for s in k.faces() {
        let link = k.link(s)?;
        let inner = is_k_large(&link.complex, bound)?;
        if !inner.verdict {
            let cycle = inner
                .witness_cycle
                .expect("failing largeness report carries a cycle")
                .relabel(|v| link.parent_vertex(v));
            return Ok(LargenessReport::fail(bound, cycle, Some(s.clone())));
        }
    }
    Ok(LargenessReport::pass(bound))
}

/// Full systolic verdict. Simple connectivity is undecidable in general, so
/// the computable necessary condition H1 = 0 over the integers stands in for
/// it; the report spells that out rather than claiming certification.
#[derive(Debug, Clone, Serialize)]
pub struct SystolicReport {
    pub connected: bool,
    pub locally_6_large: LargenessReport,
    /// H1 = 0 proxy for simple connectivity (necessary, not sufficient).
    pub h1_trivial: bool,
    pub h1: HomologyReport,
    /// Star- and link-based local largeness disagreed; worth investigating.
    pub route_disagreement: bool,
    pub verdict: bool,
}

pub fn is_systolic(k: &Complex) -> Result<SystolicReport> {
    is_k_systolic(k, 6)
}

/// Connected, H1-trivial and locally k-large.
pub fn is_k_systolic(k: &Complex, bound: usize) -> Result<SystolicReport> {
    let connected = k.is_connected();
    let locally = is_locally_k_large(k, bound)?;
    let link_route = links_k_large(k, bound)?;
    let h1 = first_homology(k)?;
    let verdict = connected && locally.verdict && h1.trivial;
    Ok(SystolicReport {
        connected,
        route_disagreement: locally.verdict != link_route.verdict,
        locally_6_large: locally,
        h1_trivial: h1.trivial,
        h1,
        verdict,
    })
}

/// Why a 3-convexity check failed.
#[derive(Debug, Clone, Serialize)]
pub enum ThreeConvexityWitness {
    /// The subcomplex is not even full; the named face is spanned but missing.
    NotFull(Simplex),
    /// A length-2 path, full in the pair, whose middle vertex escapes the
    /// subcomplex.
    Path([VertexId; 3]),
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeConvexityReport {
    pub verdict: bool,
    pub witness: Option<ThreeConvexityWitness>,
}

/// Full, and every full length-2 path in the pair with endpoints inside
/// stays inside.
///
/// A path v0-v1-v2 with distinct endpoints in Q and v1 outside is full in
/// the pair exactly when the triangle v0v1v2 is missing: spanned edges
/// between endpoints already lie in Q by fullness, and a spanned triangle
/// would escape the union.
pub fn is_3_convex(k: &Complex, q: &SubcomplexHandle) -> ThreeConvexityReport {
    if let Some(missing) = q.fullness_witness() {
        return ThreeConvexityReport {
            verdict: false,
            witness: Some(ThreeConvexityWitness::NotFull(missing)),
        };
    }
    for &v0 in q.vertices() {
        for &mid in k.neighbors(v0) {
            let mid = VertexId(mid);
            if q.contains_vertex(mid) {
                continue;
            }
            for &v2 in k.neighbors(mid) {
                let v2 = VertexId(v2);
                if v2 <= v0 || !q.contains_vertex(v2) {
                    continue;
                }
                let triangle = Simplex::new([v0.0, mid.0, v2.0]).unwrap();
                if !k.contains(&triangle) {
                    return ThreeConvexityReport {
                        verdict: false,
                        witness: Some(ThreeConvexityWitness::Path([v0, mid, v2])),
                    };
                }
            }
        }
    }
    ThreeConvexityReport {
        verdict: true,
        witness: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum ConvexityWitness {
    Disconnected,
    /// The link of `at` inside Q fails 3-convexity in the link of `at` in K;
    /// the inner witness is in parent vertex ids.
    LinkNotThreeConvex {
        at: Simplex,
        inner: ThreeConvexityWitness,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub verdict: bool,
    pub witness: Option<ConvexityWitness>,
}

/// Connected and locally 3-convex: for every non-empty simplex of Q, the
/// link of it inside Q is 3-convex in its link inside K. The ambient complex
/// is assumed systolic by the caller.
pub fn is_convex(k: &Complex, q: &SubcomplexHandle) -> Result<ConvexityReport> {
    if q.is_empty() {
        return Err(Error::InvalidArgument(
            "convexity of the empty subcomplex is not defined".into(),
        ));
    }
    if !q.is_connected() {
        return Ok(ConvexityReport {
            verdict: false,
            witness: Some(ConvexityWitness::Disconnected),
        });
    }
    for s in q.faces() {
        let link = k.link(s)?;
        let mut new_id = vec![u32::MAX; k.label_count()];
        for (i, old) in link.to_parent_ids().iter().enumerate() {
            new_id[*old as usize] = i as u32;
        }
        // link of s inside Q, written in the ambient link's ids
        let q_link_faces: Vec<Simplex> = q
            .faces()
            .filter(|t| t.is_disjoint_from(s) && q.contains_face(&t.union(s)))
            .map(|t| {
                let mut ids: Vec<u32> = t.ids().map(|i| new_id[i as usize]).collect();
                ids.sort_unstable();
                Simplex::from_sorted(ids.into_iter().map(VertexId).collect())
            })
            .collect();
        let handle = SubcomplexHandle::from_faces(&link.complex, q_link_faces)?;
        let report = is_3_convex(&link.complex, &handle);
        if !report.verdict {
            let inner = match report.witness.unwrap() {
                ThreeConvexityWitness::NotFull(f) => {
                    ThreeConvexityWitness::NotFull(link.parent_simplex(&f))
                }
                ThreeConvexityWitness::Path([a, b, c]) => ThreeConvexityWitness::Path([
                    link.parent_vertex(a),
                    link.parent_vertex(b),
                    link.parent_vertex(c),
                ]),
            };
            return Ok(ConvexityReport {
                verdict: false,
                witness: Some(ConvexityWitness::LinkNotThreeConvex {
                    at: s.clone(),
                    inner,
                }),
            });
        }
    }
    Ok(ConvexityReport {
        verdict: true,
        witness: None,
    })
}
