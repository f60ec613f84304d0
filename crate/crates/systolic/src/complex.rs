//! Finite abstract simplicial complexes and the elementary operations on
//! them: construction by downward closure, links, combinatorial distance,
//! flagness, free faces and elementary collapses.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// Largest facet accepted by [`Complex::from_facets`]; the downward closure
/// of a facet materializes all of its subsets.
pub const MAX_FACET_VERTICES: usize = 16;

/// Finite simplicial complex stored as its full face set with
/// dimension-indexed access.
///
/// The face set is closed under taking faces, and the adjacency lists agree
/// exactly with the 1-dimensional faces. A complex is immutable after
/// construction; collapses return new complexes. Freshly constructed
/// complexes have contiguous vertex ids `0..label_count`, while complexes
/// obtained by collapsing keep the parent's labels (so some ids may no
/// longer be present as 0-faces).
#[derive(Clone)]
pub struct Complex {
    label_count: usize,
    by_dim: Vec<BTreeSet<Simplex>>,
    adjacency: Vec<Vec<u32>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.label_count == other.label_count && self.by_dim == other.by_dim
    }
}

impl Eq for Complex {}

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Complex")
            .field("labels", &self.label_count)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

/// A link re-indexed as a standalone complex, plus the map back to the
/// parent's vertex ids.
pub struct Link {
    pub complex: Complex,
    to_parent: Vec<u32>,
}

impl Link {
    /// Parent id of a link vertex.
    pub fn parent_vertex(&self, v: VertexId) -> VertexId {
        VertexId(self.to_parent[v.0 as usize])
    }

    /// Translates a simplex of the link complex back to parent ids.
    pub fn parent_simplex(&self, s: &Simplex) -> Simplex {
        let mut ids: Vec<u32> = s.ids().map(|i| self.to_parent[i as usize]).collect();
        ids.sort_unstable();
        Simplex::from_sorted(ids.into_iter().map(VertexId).collect())
    }

    pub fn to_parent_ids(&self) -> &[u32] {
        &self.to_parent
    }
}

/// Outcome of the pseudomanifold check.
#[derive(Debug, Clone, Serialize)]
pub struct PseudomanifoldReport {
    pub verdict: bool,
    pub failure: Option<PseudomanifoldFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub enum PseudomanifoldFailure {
    /// Facets of two different dimensions exist.
    NotPure { facet_a: Simplex, facet_b: Simplex },
    /// A codimension-one face with more than two top-dimensional cofacets.
    Overcrowded { face: Simplex, cofacets: usize },
}

impl Complex {
    /// Downward closure of a facet list. Vertex ids must be dense (every id
    /// from 0 to the maximum must occur); each facet must be non-empty and
    /// duplicate-free.
    pub fn from_facets<I, F>(facets: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let mut faces: BTreeSet<Simplex> = BTreeSet::new();
        let mut max_id: Option<u32> = None;
        let mut any = false;
        for facet in facets {
            any = true;
            let facet = facet.as_ref();
            if facet.len() > MAX_FACET_VERTICES {
                return Err(Error::Capacity {
                    what: "facet size".into(),
                    bound: MAX_FACET_VERTICES,
                    actual: facet.len(),
                });
            }
            let s = Simplex::new(facet.iter().copied())?;
            max_id = Some(max_id.map_or(s.vertices().last().unwrap().0, |m| {
                m.max(s.vertices().last().unwrap().0)
            }));
            for sub in s.nonempty_subsets() {
                faces.insert(sub);
            }
        }
        if !any {
            return Err(Error::MalformedInput("no facets given".into()));
        }
        let max_id = max_id.unwrap();
        for id in 0..=max_id {
            if !faces.contains(&Simplex::vertex(VertexId(id))) {
                return Err(Error::MalformedInput(format!(
                    "vertex ids must form a contiguous range starting at 0; id {id} is missing"
                )));
            }
        }
        Ok(Complex::from_face_set(faces, max_id as usize + 1))
    }

    /// Builds from a face set already closed under taking faces. Used for
    /// collapses and re-indexed subcomplexes; skips the contiguity check.
    pub(crate) fn from_face_set(faces: BTreeSet<Simplex>, label_count: usize) -> Complex {
        let max_dim = faces.iter().map(|s| s.dim()).max();
        let mut by_dim: Vec<BTreeSet<Simplex>> = match max_dim {
            Some(d) => vec![BTreeSet::new(); d + 1],
            None => Vec::new(),
        };
        for s in faces {
            by_dim[s.dim()].insert(s);
        }
        let mut adjacency = vec![Vec::new(); label_count];
        if by_dim.len() > 1 {
            for e in &by_dim[1] {
                let v = e.vertices();
                adjacency[v[0].0 as usize].push(v[1].0);
                adjacency[v[1].0 as usize].push(v[0].0);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Complex {
            label_count,
            by_dim,
            adjacency,
        }
    }

    /// Size of the id space (ids run `0..label_count`; after collapses some
    /// may be absent as faces).
    pub fn label_count(&self) -> usize {
        self.label_count
    }

    /// Number of vertices actually present.
    pub fn vertex_count(&self) -> usize {
        self.by_dim.first().map_or(0, |s| s.len())
    }

    /// Ids of the vertices present, ascending.
    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.by_dim
            .first()
            .into_iter()
            .flatten()
            .map(|s| s.vertices()[0])
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        if self.by_dim.is_empty() {
            None
        } else {
            Some(self.by_dim.len() - 1)
        }
    }

    pub fn face_count(&self) -> usize {
        self.by_dim.iter().map(|s| s.len()).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| {
                let count = s.len() as i64;
                if d % 2 == 0 {
                    count
                } else {
                    -count
                }
            })
            .sum()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|set| set.contains(s))
    }

    /// All faces in canonical (dimension, lexicographic) order.
    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.by_dim.get(d).into_iter().flatten()
    }

    /// Faces without proper cofaces, canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        self.faces()
            .filter(|s| self.cofacets(s).is_empty())
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let facets = self.facets();
        facets.windows(2).all(|w| w[0].dim() == w[1].dim())
    }

    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        &self.adjacency[v.0 as usize]
    }

    pub fn are_adjacent(&self, u: VertexId, w: VertexId) -> bool {
        self.adjacency[u.0 as usize].binary_search(&w.0).is_ok()
    }

    /// Vertices adjacent to every vertex of `s`, ascending. For a vertex this
    /// is its neighbor list.
    pub fn common_neighbors(&self, s: &Simplex) -> Vec<u32> {
        let mut verts = s.vertices().iter();
        let first = verts.next().expect("simplex is non-empty");
        let mut acc: Vec<u32> = self.adjacency[first.0 as usize].clone();
        for v in verts {
            let list = &self.adjacency[v.0 as usize];
            acc.retain(|x| list.binary_search(x).is_ok());
        }
        acc
    }

    /// Codimension-one cofaces of `s`, canonical order.
    pub fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        self.common_neighbors(s)
            .into_iter()
            .filter_map(|w| {
                let t = s.join_vertex(VertexId(w)).expect("w is not in s");
                self.contains(&t).then_some(t)
            })
            .collect()
    }

    /// The unique proper coface when `s` is free, `None` otherwise.
    ///
    /// In a closed complex, having exactly one codimension-one coface already
    /// forces that coface to have none of its own, so this single count
    /// characterizes freeness.
    pub fn free_coface(&self, s: &Simplex) -> Option<Simplex> {
        let mut cofacets = self.cofacets(s);
        if cofacets.len() == 1 {
            Some(cofacets.remove(0))
        } else {
            None
        }
    }

    /// All pairs (free face, its unique coface), canonical order.
    pub fn free_faces(&self) -> Vec<(Simplex, Simplex)> {
        self.faces()
            .filter_map(|s| self.free_coface(s).map(|t| (s.clone(), t)))
            .collect()
    }

    /// Removes a free face together with its unique proper coface.
    pub fn elementary_collapse(&self, s: &Simplex) -> Result<Complex> {
        if !self.contains(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        let t = self.free_coface(s).ok_or_else(|| Error::InvalidCollapse {
            simplex: s.clone(),
            reason: format!("{} codimension-one cofaces", self.cofacets(s).len()),
        })?;
        let mut faces: BTreeSet<Simplex> = self.faces().cloned().collect();
        faces.remove(s);
        faces.remove(&t);
        Ok(Complex::from_face_set(faces, self.label_count))
    }

    /// The link of `s`, re-indexed as a standalone complex.
    pub fn link(&self, s: &Simplex) -> Result<Link> {
        if !self.contains(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        let link_verts: Vec<u32> = self
            .common_neighbors(s)
            .into_iter()
            .filter(|w| {
                let t = s.join_vertex(VertexId(*w)).expect("not in s");
                self.contains(&t)
            })
            .collect();
        let mut new_id = vec![u32::MAX; self.label_count];
        for (i, w) in link_verts.iter().enumerate() {
            new_id[*w as usize] = i as u32;
        }
        let mut faces = BTreeSet::new();
        for t in self.faces() {
            if t.vertices()
                .iter()
                .all(|v| new_id[v.0 as usize] != u32::MAX)
                && t.is_disjoint_from(s)
                && self.contains(&t.union(s))
            {
                let mut ids: Vec<u32> = t.ids().map(|i| new_id[i as usize]).collect();
                ids.sort_unstable();
                faces.insert(Simplex::from_sorted(
                    ids.into_iter().map(VertexId).collect(),
                ));
            }
        }
        Ok(Link {
            complex: Complex::from_face_set(faces, link_verts.len()),
            to_parent: link_verts,
        })
    }

    /// Breadth-first distances from a set of source vertices.
    pub fn distances_from_set(&self, sources: &[VertexId]) -> Vec<Option<u32>> {
        let mut dist: Vec<Option<u32>> = vec![None; self.label_count];
        let mut queue = VecDeque::new();
        for v in sources {
            if dist[v.0 as usize].is_none() {
                dist[v.0 as usize] = Some(0);
                queue.push_back(v.0);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize].unwrap();
            for &w in &self.adjacency[u as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances_from(&self, v: VertexId) -> Vec<Option<u32>> {
        self.distances_from_set(&[v])
    }

    /// Shortest edge-path length between two vertices; `None` when they lie
    /// in different components.
    pub fn combinatorial_distance(&self, u: VertexId, w: VertexId) -> Result<Option<u32>> {
        for v in [u, w] {
            if !self.has_vertex(v) {
                return Err(Error::UnknownSimplex(Simplex::vertex(v)));
            }
        }
        Ok(self.distances_from(u)[w.0 as usize])
    }

    /// True when every 1-skeleton clique spans a face. Checked incrementally:
    /// a closed complex is flag iff every face extends over each of its
    /// common neighbors.
    pub fn is_flag(&self) -> bool {
        for s in self.faces() {
            for w in self.common_neighbors(s) {
                if s.contains(VertexId(w)) {
                    continue;
                }
                let t = s.join_vertex(VertexId(w)).expect("not in s");
                if !self.contains(&t) {
                    return false;
                }
            }
        }
        true
    }

    /// Vertex connectivity of the 1-skeleton (vacuously true when there is
    /// at most one vertex).
    pub fn is_connected(&self) -> bool {
        let mut verts = self.vertex_ids();
        let Some(first) = verts.next() else {
            return true;
        };
        let dist = self.distances_from(first);
        self.vertex_ids().all(|v| dist[v.0 as usize].is_some())
    }

    /// Pure + every codimension-one face belongs to one or two facets.
    pub fn is_pseudomanifold(&self) -> PseudomanifoldReport {
        let facets = self.facets();
        if let Some(w) = facets.windows(2).find(|w| w[0].dim() != w[1].dim()) {
            return PseudomanifoldReport {
                verdict: false,
                failure: Some(PseudomanifoldFailure::NotPure {
                    facet_a: w[0].clone(),
                    facet_b: w[1].clone(),
                }),
            };
        }
        let Some(dim) = self.dim() else {
            return PseudomanifoldReport {
                verdict: true,
                failure: None,
            };
        };
        if dim == 0 {
            return PseudomanifoldReport {
                verdict: true,
                failure: None,
            };
        }
        for s in self.faces_of_dim(dim - 1) {
            let count = self.cofacets(s).len();
            if count > 2 {
                return PseudomanifoldReport {
                    verdict: false,
                    failure: Some(PseudomanifoldFailure::Overcrowded {
                        face: s.clone(),
                        cofacets: count,
                    }),
                };
            }
        }
        PseudomanifoldReport {
            verdict: true,
            failure: None,
        }
    }
}
