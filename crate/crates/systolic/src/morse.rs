//! Gradient matchings induced by projections onto balls around a base
//! vertex, their validation as Morse matchings, collapse-sequence
//! extraction, and a brute-force collapsibility oracle.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::projection::BallTower;
use crate::simplex::{Simplex, VertexId};
use crate::subcomplex::SubcomplexHandle;

/// Face-count bound for the brute-force collapsibility search.
pub const BRUTE_FORCE_FACE_BOUND: usize = 60;

/// Which branch of the pointer construction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointerCase {
    /// Every vertex at distance 1: the pointer is the base vertex itself.
    FirstSphere,
    /// Every vertex at distance n >= 2: the pointer is the smallest vertex
    /// of the projection onto the next ball down.
    Sphere,
    /// Vertices on two levels: the pointer is the smallest vertex of the
    /// top-level part's projection that the simplex does not already use.
    Mixed,
}

/// A simplex together with the inward-pointing vertex chosen for it. The
/// join of the two is a face, one dimension up.
#[derive(Debug, Clone, Serialize)]
pub struct PointerAssignment {
    pub simplex: Simplex,
    pub pointer: VertexId,
    pub case: PointerCase,
}

/// Computes the matching pointer for `s` over a tower based at a single
/// vertex.
///
/// Writing `s` as the join of its top-level part `rho` (vertices at the
/// maximal distance n) and its lower part `tau` (vertices at distance n-1),
/// the pointer is the smallest vertex of `proj(rho) \ tau`, where
/// `proj(rho) = St(rho) ∩ B_{n-1}` is the single-simplex projection.
/// Joining it onto `s` stays inside `rho * proj(rho)`, which is a face, so
/// the pair (s, s * pointer) is always legitimate. When `tau` already
/// exhausts the projection there is nothing left to point at — such a
/// simplex is precisely the image of another simplex's pointer and is never
/// matched as a source.
pub fn pointer_function(k: &Complex, tower: &BallTower, s: &Simplex) -> Result<PointerAssignment> {
    let base = tower.base();
    if base.vertices().len() != 1 {
        return Err(Error::InvalidArgument(
            "pointer functions need a tower based at a single vertex".into(),
        ));
    }
    let v = *base.vertices().iter().next().unwrap();
    if !k.contains(s) {
        return Err(Error::UnknownSimplex(s.clone()));
    }
    if s.contains(v) {
        return Err(Error::UndefinedPointer(s.clone()));
    }
    let mut max_dist = 0u32;
    for u in s.vertices() {
        match tower.distance(*u) {
            Some(d) => max_dist = max_dist.max(d),
            None => return Err(Error::Unreachable { from: *u, to: v }),
        }
    }
    let n = max_dist as usize;
    debug_assert!(n >= 1);
    if n == 1 {
        let joined = s.join_vertex(v)?;
        if !k.contains(&joined) {
            return Err(Error::PointerJoinNotFace {
                simplex: s.clone(),
                pointer: v,
            });
        }
        return Ok(PointerAssignment {
            simplex: s.clone(),
            pointer: v,
            case: PointerCase::FirstSphere,
        });
    }
    if n > tower.depth() {
        return Err(Error::InvalidArgument(format!(
            "tower of depth {} is too shallow for a simplex at distance {n}",
            tower.depth()
        )));
    }
    let rho_verts: Vec<VertexId> = s
        .vertices()
        .iter()
        .copied()
        .filter(|u| tower.distance(*u) == Some(max_dist))
        .collect();
    let tau_verts: Vec<VertexId> = s
        .vertices()
        .iter()
        .copied()
        .filter(|u| tower.distance(*u) != Some(max_dist))
        .collect();
    let rho = Simplex::from_sorted(rho_verts);
    let projection = crate::projection::project_disjoint(k, tower.level(n - 1).vertices(), &rho)?;
    let (pointer, case) = if tau_verts.is_empty() {
        (projection.min_vertex(), PointerCase::Sphere)
    } else {
        let leftover = projection
            .vertices()
            .iter()
            .copied()
            .find(|w| !s.contains(*w));
        match leftover {
            Some(w) => (w, PointerCase::Mixed),
            None => return Err(Error::PointerUnavailable(s.clone())),
        }
    };
    let joined = s.join_vertex(pointer)?;
    if !k.contains(&joined) {
        return Err(Error::PointerJoinNotFace {
            simplex: s.clone(),
            pointer,
        });
    }
    Ok(PointerAssignment {
        simplex: s.clone(),
        pointer,
        case,
    })
}

/// Discrete vector field: pairs (face, codimension-one coface) with no face
/// used twice, plus the critical cells left unpaired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pairs: Vec<(Simplex, Simplex)>,
    critical: Vec<Simplex>,
}

impl VectorField {
    /// Wraps raw pairs without validating; run [`validate_vector_field`] to
    /// certify. Pairs are kept sorted by their source.
    pub fn from_pairs(mut pairs: Vec<(Simplex, Simplex)>, mut critical: Vec<Simplex>) -> Self {
        pairs.sort();
        critical.sort();
        VectorField { pairs, critical }
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn critical(&self) -> &[Simplex] {
        &self.critical
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl Serialize for VectorField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("VectorField", 2)?;
        let pairs: Vec<[Vec<u32>; 2]> = self
            .pairs
            .iter()
            .map(|(s, t)| [s.ids().collect(), t.ids().collect()])
            .collect();
        let critical: Vec<Vec<u32>> = self.critical.iter().map(|c| c.ids().collect()).collect();
        st.serialize_field("pairs", &pairs)?;
        st.serialize_field("critical", &critical)?;
        st.end()
    }
}

/// The gradient matching toward `v`: walk the faces in canonical order and
/// pair every still-unmatched simplex not containing `v` with the join of
/// itself and its pointer. On systolic input this leaves exactly `{v}`
/// critical; anything else is reported as a hard error, which doubles as a
/// non-systolicity detector.
pub fn gradient_matching(k: &Complex, v: VertexId) -> Result<VectorField> {
    if !k.has_vertex(v) {
        return Err(Error::UnknownSimplex(Simplex::vertex(v)));
    }
    let depth = k
        .distances_from(v)
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0) as usize;
    let base = SubcomplexHandle::single_vertex(k, v)?;
    let tower = BallTower::build(k, base, depth)?;
    let base_simplex = Simplex::vertex(v);

    let mut matched: HashMap<Simplex, usize> = HashMap::new();
    let mut pairs: Vec<(Simplex, Simplex)> = Vec::new();
    let mut leftovers: Vec<Simplex> = Vec::new();
    for s in k.faces() {
        if matched.contains_key(s) {
            continue;
        }
        if *s == base_simplex {
            continue;
        }
        if s.contains(v) {
            // only ever reachable as an image; reaching it unmatched means
            // the single-critical-cell property failed
            leftovers.push(s.clone());
            continue;
        }
        let assignment = pointer_function(k, &tower, s)?;
        let target = s.join_vertex(assignment.pointer)?;
        if !k.contains(&target) {
            return Err(Error::PointerJoinNotFace {
                simplex: s.clone(),
                pointer: assignment.pointer,
            });
        }
        // arrows must point inward
        let target_max = target
            .vertices()
            .iter()
            .filter_map(|u| tower.distance(*u))
            .max();
        let source_max = s.vertices().iter().filter_map(|u| tower.distance(*u)).max();
        if tower.distance(assignment.pointer) >= source_max {
            return Err(Error::InternalConsistency(format!(
                "pointer {} of {s} does not point inward",
                assignment.pointer
            )));
        }
        debug_assert_eq!(target_max, source_max);
        if let Some(&first) = matched.get(&target) {
            return Err(Error::MatchingConflict {
                target,
                first_src: pairs[first].0.clone(),
                second_src: s.clone(),
            });
        }
        let index = pairs.len();
        matched.insert(s.clone(), index);
        matched.insert(target.clone(), index);
        pairs.push((s.clone(), target));
    }
    if !leftovers.is_empty() {
        return Err(Error::SingleCriticalCell(leftovers));
    }
    let field = VectorField::from_pairs(pairs, vec![base_simplex]);
    let outcome = validate_vector_field(k, &field);
    if !outcome.ok {
        return Err(Error::InternalConsistency(format!(
            "constructed matching failed validation: {:?}",
            outcome.issue
        )));
    }
    Ok(field)
}

/// Witness for a vector-field validation failure.
#[derive(Debug, Clone, Serialize)]
pub enum ValidationIssue {
    NotAFace(Simplex),
    NotCodimensionOne { source: Simplex, target: Simplex },
    FaceInTwoPairs { face: Simplex, pairs: [usize; 2] },
    CriticalOverlap(Simplex),
    MissingFace(Simplex),
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationOutcome {
    pub ok: bool,
    pub issue: Option<ValidationIssue>,
}

/// Checks the codimension-one relation, that no face sits in two pairs, and
/// that pairs plus critical cells partition the face set.
pub fn validate_vector_field(k: &Complex, field: &VectorField) -> ValidationOutcome {
    let fail = |issue| ValidationOutcome {
        ok: false,
        issue: Some(issue),
    };
    let mut seen: HashMap<&Simplex, usize> = HashMap::new();
    for (i, (s, t)) in field.pairs().iter().enumerate() {
        for f in [s, t] {
            if !k.contains(f) {
                return fail(ValidationIssue::NotAFace(f.clone()));
            }
        }
        if t.dim() != s.dim() + 1 || !s.is_face_of(t) {
            return fail(ValidationIssue::NotCodimensionOne {
                source: s.clone(),
                target: t.clone(),
            });
        }
        for f in [s, t] {
            if let Some(&j) = seen.get(f) {
                return fail(ValidationIssue::FaceInTwoPairs {
                    face: f.clone(),
                    pairs: [j, i],
                });
            }
            seen.insert(f, i);
        }
    }
    for c in field.critical() {
        if !k.contains(c) {
            return fail(ValidationIssue::NotAFace(c.clone()));
        }
        if seen.contains_key(c) {
            return fail(ValidationIssue::CriticalOverlap(c.clone()));
        }
    }
    let covered = seen.len() + field.critical().len();
    if covered != k.face_count() {
        let critical: HashSet<&Simplex> = field.critical().iter().collect();
        let missing = k
            .faces()
            .find(|f| !seen.contains_key(*f) && !critical.contains(*f))
            .cloned()
            .unwrap_or_else(|| field.critical()[0].clone());
        return fail(ValidationIssue::MissingFace(missing));
    }
    ValidationOutcome {
        ok: true,
        issue: None,
    }
}

/// Certificate for the no-closed-gradient-path property: either a linear
/// order compatible with all gradient paths, or an explicit closed path.
#[derive(Debug, Clone)]
pub struct AcyclicityCertificate {
    pub verdict: bool,
    pub closed_path: Option<Vec<(Simplex, Simplex)>>,
    pub topological_order: Option<Vec<(Simplex, Simplex)>>,
}

/// Builds the directed graph on pairs — an edge from one pair to another
/// when the second's source is a different codimension-one face of the
/// first's target — and looks for cycles.
pub fn acyclicity(k: &Complex, field: &VectorField) -> Result<AcyclicityCertificate> {
    let outcome = validate_vector_field(k, field);
    if !outcome.ok {
        return Err(Error::InvalidArgument(format!(
            "vector field is not valid: {:?}",
            outcome.issue
        )));
    }
    let source_index: HashMap<&Simplex, usize> = field
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (s, i))
        .collect();
    let n = field.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (s, t)) in field.pairs().iter().enumerate() {
        for f in t.facets() {
            if &f == s {
                continue;
            }
            if let Some(&j) = source_index.get(&f) {
                succ[i].push(j);
            }
        }
        succ[i].sort_unstable();
    }
    // Kahn's algorithm with a deterministic frontier
    let mut indegree = vec![0usize; n];
    for edges in &succ {
        for &j in edges {
            indegree[j] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|i| indegree[*i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() == n {
        return Ok(AcyclicityCertificate {
            verdict: true,
            closed_path: None,
            topological_order: Some(
                order
                    .into_iter()
                    .map(|i| field.pairs()[i].clone())
                    .collect(),
            ),
        });
    }
    // extract an explicit cycle from the leftover subgraph
    let mut color = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        if let Some(cycle) = cycle_dfs(start, &succ, &mut color, &mut stack) {
            return Ok(AcyclicityCertificate {
                verdict: false,
                closed_path: Some(
                    cycle
                        .into_iter()
                        .map(|i| field.pairs()[i].clone())
                        .collect(),
                ),
                topological_order: None,
            });
        }
    }
    Err(Error::InternalConsistency(
        "topological sort failed but no cycle was found".into(),
    ))
}

fn cycle_dfs(
    node: usize,
    succ: &[Vec<usize>],
    color: &mut [u8],
    stack: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    color[node] = 1;
    stack.push(node);
    for &next in &succ[node] {
        match color[next] {
            0 => {
                if let Some(cycle) = cycle_dfs(next, succ, color, stack) {
                    return Some(cycle);
                }
            }
            1 => {
                let pos = stack.iter().position(|&x| x == next).unwrap();
                return Some(stack[pos..].to_vec());
            }
            _ => {}
        }
    }
    stack.pop();
    color[node] = 2;
    None
}

/// Orders the pairs of an acyclic matching with a single critical vertex so
/// that replaying them as elementary collapses reduces the complex to that
/// vertex. The replay is simulated step by step — each scheduled source must
/// actually be free at its turn — and the terminal state is checked.
pub fn collapse_sequence(
    k: &Complex,
    field: &VectorField,
    certificate: &AcyclicityCertificate,
) -> Result<Vec<(Simplex, Simplex)>> {
    if !certificate.verdict {
        return Err(Error::InvalidArgument(
            "collapse sequences need an acyclic matching".into(),
        ));
    }
    if field.critical().len() != 1 || field.critical()[0].dim() != 0 {
        return Err(Error::InvalidArgument(
            "collapse sequences need a single critical vertex".into(),
        ));
    }
    let critical = field.critical()[0].clone();

    // live cofacet counts drive the freeness test
    let mut cofacet_lists: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    let mut live_count: HashMap<Simplex, usize> = HashMap::new();
    for s in k.faces() {
        let cofacets = k.cofacets(s);
        live_count.insert(s.clone(), cofacets.len());
        cofacet_lists.insert(s.clone(), cofacets);
    }
    let mut alive: HashSet<Simplex> = k.faces().cloned().collect();
    let mut remaining: Vec<Option<(Simplex, Simplex)>> = {
        // biggest targets first, canonical within a dimension
        let mut ordered: Vec<(Simplex, Simplex)> = field.pairs().to_vec();
        ordered.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.cmp(&b.0)));
        ordered.into_iter().map(Some).collect()
    };
    let mut schedule = Vec::with_capacity(remaining.len());
    for _ in 0..remaining.len() {
        let mut chosen = None;
        for (slot, entry) in remaining.iter().enumerate() {
            let Some((s, t)) = entry else { continue };
            if live_count[s] == 1 {
                let survivor = cofacet_lists[s].iter().find(|c| alive.contains(*c));
                if survivor == Some(t) {
                    chosen = Some(slot);
                    break;
                }
            }
        }
        let Some(slot) = chosen else {
            let (s, t) = remaining.iter().flatten().next().unwrap().clone();
            return Err(Error::Scheduling(s, t));
        };
        let (s, t) = remaining[slot].take().unwrap();
        for gone in [&s, &t] {
            alive.remove(gone);
            for f in gone.facets() {
                if let Some(c) = live_count.get_mut(&f) {
                    *c -= 1;
                }
            }
        }
        schedule.push((s, t));
    }
    if !(alive.len() == 1 && alive.contains(&critical)) {
        return Err(Error::InternalConsistency(format!(
            "collapse replay left {} faces instead of the critical vertex",
            alive.len()
        )));
    }
    Ok(schedule)
}

/// Memoized search over all elementary-collapse sequences; true when some
/// sequence reaches a single vertex. Exponential in the worst case, hence
/// the face-count bound.
pub fn brute_force_collapsible(k: &Complex) -> Result<bool> {
    brute_force_collapsible_bounded(k, BRUTE_FORCE_FACE_BOUND)
}

pub fn brute_force_collapsible_bounded(k: &Complex, bound: usize) -> Result<bool> {
    if k.face_count() > bound {
        return Err(Error::Capacity {
            what: "brute-force collapsibility search".into(),
            bound,
            actual: k.face_count(),
        });
    }
    let mut cofacet_lists: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    for s in k.faces() {
        cofacet_lists.insert(s.clone(), k.cofacets(s));
    }
    let state: BTreeSet<Simplex> = k.faces().cloned().collect();
    let mut dead_ends: HashSet<Vec<Simplex>> = HashSet::new();
    Ok(collapse_search(&cofacet_lists, state, &mut dead_ends))
}

fn collapse_search(
    cofacet_lists: &HashMap<Simplex, Vec<Simplex>>,
    state: BTreeSet<Simplex>,
    dead_ends: &mut HashSet<Vec<Simplex>>,
) -> bool {
    if state.len() == 1 {
        return state.iter().next().unwrap().dim() == 0;
    }
    let key: Vec<Simplex> = state.iter().cloned().collect();
    if dead_ends.contains(&key) {
        return false;
    }
    for s in &state {
        let mut live = cofacet_lists[s].iter().filter(|c| state.contains(*c));
        let (Some(t), None) = (live.next(), live.next()) else {
            continue;
        };
        let mut next = state.clone();
        next.remove(s);
        next.remove(t);
        if collapse_search(cofacet_lists, next, dead_ends) {
            return true;
        }
    }
    dead_ends.insert(key);
    false
}
