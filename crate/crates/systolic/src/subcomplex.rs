//! Subcomplex handles: a vertex/face subset of a parent complex, tagged with
//! fullness/convexity certificates. Used for stars, combinatorial balls and
//! spheres, and convexity bases.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// Certificate state: verified true, verified false, or never checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriState {
    True,
    False,
    Unchecked,
}

impl TriState {
    pub fn is_true(self) -> bool {
        self == TriState::True
    }
}

/// Convexity-related certificates carried by a handle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvexityFlags {
    pub is_full: TriState,
    pub is_3_convex: TriState,
    pub is_convex: TriState,
}

impl Default for ConvexityFlags {
    fn default() -> Self {
        ConvexityFlags {
            is_full: TriState::Unchecked,
            is_3_convex: TriState::Unchecked,
            is_convex: TriState::Unchecked,
        }
    }
}

/// A subset of a parent complex's faces, closed under taking faces.
#[derive(Clone)]
pub struct SubcomplexHandle<'a> {
    parent: &'a Complex,
    vertices: BTreeSet<VertexId>,
    faces: BTreeSet<Simplex>,
    pub flags: ConvexityFlags,
}

impl PartialEq for SubcomplexHandle<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for SubcomplexHandle<'_> {}

impl std::fmt::Debug for SubcomplexHandle<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubcomplexHandle")
            .field("vertices", &self.vertices.len())
            .field("faces", &self.faces.len())
            .finish()
    }
}

impl<'a> SubcomplexHandle<'a> {
    /// Induced (full) subcomplex on a vertex set. The empty set gives the
    /// empty subcomplex.
    pub fn full_span(
        parent: &'a Complex,
        vertices: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        for v in &vertices {
            if !parent.has_vertex(*v) {
                return Err(Error::UnknownSimplex(Simplex::vertex(*v)));
            }
        }
        let faces = parent
            .faces()
            .filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
            .cloned()
            .collect();
        Ok(SubcomplexHandle {
            parent,
            vertices,
            faces,
            flags: ConvexityFlags {
                is_full: TriState::True,
                ..ConvexityFlags::default()
            },
        })
    }

    pub fn single_vertex(parent: &'a Complex, v: VertexId) -> Result<Self> {
        Self::full_span(parent, [v])
    }

    /// The subcomplex consisting of one simplex and its faces. Such a handle
    /// is always full: any parent face on its vertices is one of its subsets.
    pub fn of_simplex(parent: &'a Complex, s: &Simplex) -> Result<Self> {
        if !parent.contains(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        let faces: BTreeSet<Simplex> = s.nonempty_subsets().into_iter().collect();
        Ok(SubcomplexHandle {
            parent,
            vertices: s.vertices().iter().copied().collect(),
            faces,
            flags: ConvexityFlags {
                is_full: TriState::True,
                ..ConvexityFlags::default()
            },
        })
    }

    /// Arbitrary face subset, closed downward automatically. Every face must
    /// belong to the parent.
    pub fn from_faces(
        parent: &'a Complex,
        faces: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut closed: BTreeSet<Simplex> = BTreeSet::new();
        for f in faces {
            if !parent.contains(&f) {
                return Err(Error::UnknownSimplex(f));
            }
            for sub in f.nonempty_subsets() {
                closed.insert(sub);
            }
        }
        let vertices = closed
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        Ok(SubcomplexHandle {
            parent,
            vertices,
            faces: closed,
            flags: ConvexityFlags::default(),
        })
    }

    /// Face subset exactly as given (caller guarantees downward closure);
    /// used where closure is known by construction.
    pub(crate) fn from_closed_faces(parent: &'a Complex, faces: BTreeSet<Simplex>) -> Self {
        let vertices = faces
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        SubcomplexHandle {
            parent,
            vertices,
            faces,
            flags: ConvexityFlags::default(),
        }
    }

    pub fn parent(&self) -> &'a Complex {
        self.parent
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn vertex_list(&self) -> Vec<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    pub fn face_set(&self) -> &BTreeSet<Simplex> {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.faces.contains(s)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Checks that every parent face spanned by this handle's vertices is in
    /// the face set, and records the outcome in the flags.
    pub fn verify_fullness(&mut self) -> bool {
        let full = self.fullness_witness().is_none();
        self.flags.is_full = if full {
            TriState::True
        } else {
            TriState::False
        };
        full
    }

    /// A parent face spanned by the handle's vertices but missing from it,
    /// when fullness fails.
    pub fn fullness_witness(&self) -> Option<Simplex> {
        self.parent
            .faces()
            .find(|s| {
                s.vertices().iter().all(|v| self.vertices.contains(v)) && !self.faces.contains(s)
            })
            .cloned()
    }

    /// Connectivity of the handle's own 1-skeleton.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for &w in self.parent.neighbors(u) {
                let w = VertexId(w);
                if self.vertices.contains(&w)
                    && self.faces.contains(&Simplex::new([u.0, w.0]).unwrap())
                    && seen.insert(w)
                {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Re-indexes the handle as a standalone complex; returns the complex and
    /// the map from new ids back to parent ids.
    pub fn as_standalone(&self) -> (Complex, Vec<u32>) {
        let to_parent: Vec<u32> = self.vertices.iter().map(|v| v.0).collect();
        let mut new_id = vec![u32::MAX; self.parent.label_count()];
        for (i, old) in to_parent.iter().enumerate() {
            new_id[*old as usize] = i as u32;
        }
        let faces = self
            .faces
            .iter()
            .map(|s| {
                let mut ids: Vec<u32> = s.ids().map(|i| new_id[i as usize]).collect();
                ids.sort_unstable();
                Simplex::from_sorted(ids.into_iter().map(VertexId).collect())
            })
            .collect();
        (Complex::from_face_set(faces, to_parent.len()), to_parent)
    }

    /// The union of all closed parent simplices that meet this subcomplex.
    pub fn neighborhood(&self) -> SubcomplexHandle<'a> {
        let faces: BTreeSet<Simplex> = self
            .parent
            .faces()
            .filter(|t| {
                t.vertices().iter().any(|v| self.vertices.contains(v))
                    || self.vertices.iter().any(|q| {
                        t.join_vertex(*q)
                            .is_ok_and(|joined| self.parent.contains(&joined))
                    })
            })
            .cloned()
            .collect();
        SubcomplexHandle::from_closed_faces(self.parent, faces)
    }
}

/// The closed star of `s`: every face that spans a face together with `s`
/// (equivalently, all faces of the faces containing `s`).
pub fn star<'a>(parent: &'a Complex, s: &Simplex) -> Result<SubcomplexHandle<'a>> {
    if !parent.contains(s) {
        return Err(Error::UnknownSimplex(s.clone()));
    }
    let faces: BTreeSet<Simplex> = parent
        .faces()
        .filter(|r| parent.contains(&r.union(s)))
        .cloned()
        .collect();
    Ok(SubcomplexHandle::from_closed_faces(parent, faces))
}
