//! Combinatorial balls and spheres around a convex subcomplex, elementary
//! projections, projection rays and directed geodesics.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};
use crate::subcomplex::{SubcomplexHandle, TriState};

/// Node budget for the exhaustive geodesic search.
const GEODESIC_SEARCH_BUDGET: usize = 10_000_000;

/// Tower of combinatorial balls around a base subcomplex.
///
/// Level 0 is the base; each next level is the union of all closed simplices
/// meeting the previous one. Construction cross-checks, at every radius, that
/// this recursion agrees with the full subcomplex spanned by the vertices at
/// bounded distance, and fails loudly when it does not — on a systolic
/// complex with a convex base the two constructions provably coincide, so a
/// mismatch means the precondition was violated.
pub struct BallTower<'a> {
    levels: Vec<SubcomplexHandle<'a>>,
    dist: Vec<Option<u32>>,
    /// Convexity certificate carried over from the caller's base handle.
    pub base_convexity: TriState,
}

impl<'a> BallTower<'a> {
    pub fn build(
        k: &'a Complex,
        base: SubcomplexHandle<'a>,
        n_max: usize,
    ) -> Result<BallTower<'a>> {
        if base.is_empty() {
            return Err(Error::InvalidArgument("empty tower base".into()));
        }
        if !std::ptr::eq(base.parent(), k) {
            return Err(Error::InvalidArgument(
                "tower base belongs to a different complex".into(),
            ));
        }
        if let Some(missing) = base.fullness_witness() {
            return Err(Error::ConvexityViolation {
                radius: 0,
                detail: format!("base is not full: it misses the spanned face {missing}"),
            });
        }
        let base_convexity = base.flags.is_convex;
        let dist = k.distances_from_set(&base.vertex_list());
        let mut levels = vec![base];
        for n in 1..=n_max {
            let recursive = levels[n - 1].neighborhood();
            let spanned_verts: Vec<VertexId> = dist
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some_and(|d| d as usize <= n))
                .map(|(i, _)| VertexId(i as u32))
                .filter(|v| k.has_vertex(*v))
                .collect();
            let mut spanned = SubcomplexHandle::full_span(k, spanned_verts)?;
            if recursive != spanned {
                let detail = diff_detail(&recursive, &spanned);
                return Err(Error::ConvexityViolation { radius: n, detail });
            }
            spanned.flags.is_full = TriState::True;
            levels.push(spanned);
        }
        Ok(BallTower {
            levels,
            dist,
            base_convexity,
        })
    }

    pub fn base(&self) -> &SubcomplexHandle<'a> {
        &self.levels[0]
    }

    /// Deepest radius built.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &SubcomplexHandle<'a> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[SubcomplexHandle<'a>] {
        &self.levels
    }

    /// Distance from a vertex to the base.
    pub fn distance(&self, v: VertexId) -> Option<u32> {
        self.dist[v.0 as usize]
    }

    /// Full subcomplex on the vertices at distance exactly `n`, cross-checked
    /// against the faces of level `n` that miss level `n-1`.
    pub fn sphere(&self, n: usize) -> Result<SubcomplexHandle<'a>> {
        if n < 1 || n > self.depth() {
            return Err(Error::InvalidArgument(format!(
                "sphere radius {n} outside 1..={}",
                self.depth()
            )));
        }
        let k = self.levels[0].parent();
        let verts: Vec<VertexId> = self
            .dist
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(n as u32))
            .map(|(i, _)| VertexId(i as u32))
            .filter(|v| k.has_vertex(*v))
            .collect();
        let spanned = SubcomplexHandle::full_span(k, verts)?;
        let from_ball: BTreeSet<Simplex> = self
            .level(n)
            .faces()
            .filter(|s| {
                s.vertices()
                    .iter()
                    .all(|v| !self.level(n - 1).contains_vertex(*v))
            })
            .cloned()
            .collect();
        if &from_ball != spanned.face_set() {
            return Err(Error::InternalConsistency(format!(
                "sphere {n}: spanned subcomplex and ball difference disagree"
            )));
        }
        Ok(spanned)
    }
}

fn diff_detail(recursive: &SubcomplexHandle, spanned: &SubcomplexHandle) -> String {
    for v in spanned.vertices() {
        if !recursive.contains_vertex(*v) {
            return format!("vertex {v} is spanned but unreachable by the neighborhood step");
        }
    }
    for f in spanned.faces() {
        if !recursive.contains_face(f) {
            return format!("face {f} is spanned but missing from the neighborhood");
        }
    }
    for f in recursive.faces() {
        if !spanned.contains_face(f) {
            return format!("face {f} reached by the neighborhood but not spanned");
        }
    }
    "unknown discrepancy".into()
}

/// Projects a simplex of the 1-ball around `q` onto `q`: the part inside `q`
/// when they meet, otherwise the single simplex `St(s) ∩ q` whose existence
/// is what convexity of `q` buys. A non-simplex intersection is reported as
/// an error, not patched over.
pub fn elementary_projection(k: &Complex, q: &SubcomplexHandle, s: &Simplex) -> Result<Simplex> {
    if !k.contains(s) {
        return Err(Error::UnknownSimplex(s.clone()));
    }
    if let Some(missing) = q.fullness_witness() {
        return Err(Error::ConvexityViolation {
            radius: 0,
            detail: format!("projection base is not full: it misses {missing}"),
        });
    }
    let inside: Vec<u32> = s
        .vertices()
        .iter()
        .filter(|v| q.contains_vertex(**v))
        .map(|v| v.0)
        .collect();
    if !inside.is_empty() {
        return Ok(Simplex::from_sorted(
            inside.into_iter().map(VertexId).collect(),
        ));
    }
    project_disjoint(k, q.vertices(), s)
}

/// Star-intersection projection for `s` disjoint from the target vertex set.
pub(crate) fn project_disjoint(
    k: &Complex,
    target_verts: &BTreeSet<VertexId>,
    s: &Simplex,
) -> Result<Simplex> {
    let candidates: Vec<VertexId> = target_verts
        .iter()
        .copied()
        .filter(|w| s.join_vertex(*w).is_ok_and(|joined| k.contains(&joined)))
        .collect();
    if candidates.is_empty() {
        return Err(Error::OutOfBall(s.clone()));
    }
    let tau = Simplex::from_sorted(candidates.clone());
    if !k.contains(&s.union(&tau)) {
        return Err(Error::ProjectionNotSimplex {
            simplex: s.clone(),
            candidates,
        });
    }
    Ok(tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceKind {
    ProjectionRay,
    DirectedGeodesic,
}

/// Ordered sequence of pairwise-disjoint simplices: consecutive entries are
/// disjoint and span a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSequence {
    pub kind: SequenceKind,
    entries: Vec<Simplex>,
}

impl SimplexSequence {
    pub fn new(kind: SequenceKind, entries: Vec<Simplex>) -> Self {
        SimplexSequence { kind, entries }
    }

    pub fn entries(&self) -> &[Simplex] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> &Simplex {
        &self.entries[0]
    }

    pub fn last(&self) -> &Simplex {
        self.entries.last().unwrap()
    }

    /// Vertex-id lists, the wire form used by reports.
    pub fn id_lists(&self) -> Vec<Vec<u32>> {
        self.entries.iter().map(|s| s.ids().collect()).collect()
    }
}

/// Iterated elementary projection of a sphere simplex down the ball tower.
/// The distance law is asserted across all pairs of entries.
pub fn projection_ray<'a>(
    k: &'a Complex,
    base: SubcomplexHandle<'a>,
    s: &Simplex,
) -> Result<SimplexSequence> {
    let dist = k.distances_from_set(&base.vertex_list());
    let mut ds = s.vertices().iter().map(|v| dist[v.0 as usize]);
    let first = ds
        .next()
        .unwrap()
        .ok_or_else(|| Error::OutOfBall(s.clone()))?;
    for d in ds {
        if d != Some(first) {
            return Err(Error::NotSpherical(s.clone()));
        }
    }
    if first == 0 {
        return Err(Error::NotSpherical(s.clone()));
    }
    let n = first as usize;
    let tower = BallTower::build(k, base, n)?;
    let mut entries = vec![s.clone()];
    for step in 1..=n {
        let prev = entries.last().unwrap();
        let next = project_disjoint(k, tower.level(n - step).vertices(), prev)?;
        entries.push(next);
    }
    let ray = SimplexSequence::new(SequenceKind::ProjectionRay, entries);
    assert_distance_law(k, &ray)?;
    Ok(ray)
}

/// d(v, w) = |k - m| for vertices of the k-th and m-th entries.
fn assert_distance_law(k: &Complex, seq: &SimplexSequence) -> Result<()> {
    let entries = seq.entries();
    for (i, a) in entries.iter().enumerate() {
        for u in a.vertices() {
            let dist = k.distances_from(*u);
            for (j, b) in entries.iter().enumerate().skip(i + 1) {
                let expected = (j - i) as u32;
                for v in b.vertices() {
                    if dist[v.0 as usize] != Some(expected) {
                        return Err(Error::InternalConsistency(format!(
                            "distance law broken between entries {i} and {j}: d({u},{v}) = {:?}",
                            dist[v.0 as usize]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The unique directed geodesic from `u` to `w`: the projection ray of `{u}`
/// onto the base `{w}`, re-verified against the geodesic axioms.
pub fn directed_geodesic(k: &Complex, u: VertexId, w: VertexId) -> Result<SimplexSequence> {
    for v in [u, w] {
        if !k.has_vertex(v) {
            return Err(Error::UnknownSimplex(Simplex::vertex(v)));
        }
    }
    if u == w {
        return Ok(SimplexSequence::new(
            SequenceKind::DirectedGeodesic,
            vec![Simplex::vertex(u)],
        ));
    }
    if k.combinatorial_distance(u, w)?.is_none() {
        return Err(Error::Unreachable { from: u, to: w });
    }
    let base = SubcomplexHandle::single_vertex(k, w)?;
    let ray = projection_ray(k, base, &Simplex::vertex(u))?;
    let seq = SimplexSequence::new(SequenceKind::DirectedGeodesic, ray.entries);
    let check = is_directed_geodesic(k, &seq)?;
    if !check.verdict {
        return Err(Error::InternalConsistency(format!(
            "constructed ray from {u} to {w} fails the geodesic axioms at index {:?}",
            check.witness
        )));
    }
    Ok(seq)
}

/// Which geodesic axiom failed, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeodesicAxiom {
    /// Consecutive entries must be disjoint and span a face.
    DisjointSpan,
    /// For consecutive triples, St(first) ∩ B1(third) must equal the middle.
    StarBallIntersection,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeodesicCheck {
    pub verdict: bool,
    /// Index of the first entry of the offending pair or triple.
    pub witness: Option<(usize, GeodesicAxiom)>,
}

/// Checks both directed-geodesic axioms, reporting the first failure.
pub fn is_directed_geodesic(k: &Complex, seq: &SimplexSequence) -> Result<GeodesicCheck> {
    if seq.is_empty() {
        return Err(Error::InvalidArgument("empty simplex sequence".into()));
    }
    for e in seq.entries() {
        if !k.contains(e) {
            return Err(Error::UnknownSimplex(e.clone()));
        }
    }
    for (i, pair) in seq.entries().windows(2).enumerate() {
        if !pair[0].is_disjoint_from(&pair[1]) || !k.contains(&pair[0].union(&pair[1])) {
            return Ok(GeodesicCheck {
                verdict: false,
                witness: Some((i, GeodesicAxiom::DisjointSpan)),
            });
        }
    }
    for (i, triple) in seq.entries().windows(3).enumerate() {
        if !star_ball_middle_holds(k, &triple[0], &triple[1], &triple[2]) {
            return Ok(GeodesicCheck {
                verdict: false,
                witness: Some((i, GeodesicAxiom::StarBallIntersection)),
            });
        }
    }
    Ok(GeodesicCheck {
        verdict: true,
        witness: None,
    })
}

/// St(a) ∩ B1(c) = b, with B1 the full subcomplex on the vertices of closed
/// simplices meeting c. Both sides are closed under faces and the
/// intersection contains b (given the spanning axiom on adjacent pairs), so
/// equality reduces to its vertex set being exactly b's.
fn star_ball_middle_holds(k: &Complex, a: &Simplex, b: &Simplex, c: &Simplex) -> bool {
    let mut ball_verts: BTreeSet<u32> = c.ids().collect();
    for v in c.vertices() {
        ball_verts.extend(k.neighbors(*v).iter().copied());
    }
    // vertices of St(a): a's own plus every vertex extending a
    let mut star_verts: Vec<u32> = a.ids().collect();
    star_verts.extend(
        k.common_neighbors(a)
            .into_iter()
            .filter(|w| a.join_vertex(VertexId(*w)).is_ok_and(|j| k.contains(&j))),
    );
    let mut witness_set: Vec<u32> = star_verts
        .into_iter()
        .filter(|v| ball_verts.contains(v))
        .collect();
    witness_set.sort_unstable();
    witness_set.dedup();
    witness_set == b.ids().collect::<Vec<u32>>()
}

/// Exhaustive search for simplex sequences from `{u}` to `{w}` satisfying
/// both geodesic axioms, up to `cap + 1` entries. The oracle for uniqueness.
pub fn enumerate_directed_geodesics(
    k: &Complex,
    u: VertexId,
    w: VertexId,
    cap: usize,
) -> Result<Vec<SimplexSequence>> {
    for v in [u, w] {
        if !k.has_vertex(v) {
            return Err(Error::UnknownSimplex(Simplex::vertex(v)));
        }
    }
    let d = k
        .combinatorial_distance(u, w)?
        .ok_or(Error::Unreachable { from: u, to: w })? as usize;
    if d > cap {
        return Err(Error::InvalidArgument(format!(
            "cap {cap} is below the distance {d} between {u} and {w}"
        )));
    }
    let max_entries = cap + 1;
    let dist_to_w = k.distances_from(w);
    let target = Simplex::vertex(w);
    let mut results = Vec::new();
    let mut budget = GEODESIC_SEARCH_BUDGET;
    let mut stack = vec![Simplex::vertex(u)];
    search_geodesics(
        k,
        &target,
        &dist_to_w,
        max_entries,
        &mut stack,
        &mut results,
        &mut budget,
    )?;
    results.sort_by(|a, b| (a.len(), a.entries()).cmp(&(b.len(), b.entries())));
    Ok(results)
}

fn search_geodesics(
    k: &Complex,
    target: &Simplex,
    dist_to_w: &[Option<u32>],
    max_entries: usize,
    stack: &mut Vec<Simplex>,
    results: &mut Vec<SimplexSequence>,
    budget: &mut usize,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::Capacity {
            what: "directed-geodesic search".into(),
            bound: GEODESIC_SEARCH_BUDGET,
            actual: GEODESIC_SEARCH_BUDGET + 1,
        });
    }
    *budget -= 1;
    if stack.last().unwrap() == target {
        results.push(SimplexSequence::new(
            SequenceKind::DirectedGeodesic,
            stack.clone(),
        ));
        // a longer sequence may still revisit the target; keep exploring
    }
    if stack.len() == max_entries {
        return Ok(());
    }
    let last = stack.last().unwrap().clone();
    let remaining = (max_entries - stack.len() - 1) as u32;
    let candidates: Vec<Simplex> = k
        .faces()
        .filter(|m| m.is_disjoint_from(&last) && k.contains(&m.union(&last)))
        .filter(|m| {
            // each step lowers the distance to the target by at most one
            m.vertices()
                .iter()
                .filter_map(|v| dist_to_w[v.0 as usize])
                .min()
                .is_some_and(|d| d <= remaining)
        })
        .cloned()
        .collect();
    for m in candidates {
        if stack.len() >= 2 && !star_ball_middle_holds(k, &stack[stack.len() - 2], &last, &m) {
            continue;
        }
        stack.push(m);
        search_geodesics(k, target, dist_to_w, max_entries, stack, results, budget)?;
        stack.pop();
    }
    Ok(())
}
