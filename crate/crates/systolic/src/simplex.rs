//! Vertices and simplices with a canonical ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex of a complex. Ids are dense: within one complex they form a
/// contiguous range starting at 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(id: u32) -> Self {
        VertexId(id)
    }
}

/// Non-empty simplex stored as a strictly increasing vertex list.
///
/// The canonical order on simplices is (dimension, lexicographic vertex
/// list); every enumeration in the crate iterates in that order so that
/// matchings, rays and collapse sequences are reproducible.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from an arbitrary id list: sorts and rejects
    /// duplicates and emptiness.
    pub fn new(ids: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut vertices: Vec<VertexId> = ids.into_iter().map(VertexId).collect();
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::MalformedInput("empty simplex".into()));
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::MalformedInput(format!(
                    "duplicate vertex {} in simplex",
                    w[0]
                )));
            }
        }
        Ok(Simplex { vertices })
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex { vertices: vec![v] }
    }

    /// Internal constructor for ids already strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().map(|v| v.0)
    }

    pub fn min_vertex(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.len() > other.len() {
            return false;
        }
        self.vertices.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        // merge walk over two sorted lists
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Common vertices, `None` when disjoint.
    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let common: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| other.contains(*v))
            .collect();
        if common.is_empty() {
            None
        } else {
            Some(Simplex::from_sorted(common))
        }
    }

    /// Merge of the two vertex lists (overlap allowed).
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() || j < other.vertices.len() {
            if i == self.vertices.len() {
                merged.push(other.vertices[j]);
                j += 1;
            } else if j == other.vertices.len() {
                merged.push(self.vertices[i]);
                i += 1;
            } else {
                match self.vertices[i].cmp(&other.vertices[j]) {
                    std::cmp::Ordering::Less => {
                        merged.push(self.vertices[i]);
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        merged.push(other.vertices[j]);
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        merged.push(self.vertices[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Simplex { vertices: merged }
    }

    /// Join with a fresh vertex; the dimension rises by exactly one.
    /// A vertex already present signals a bug in whoever chose it.
    pub fn join_vertex(&self, w: VertexId) -> Result<Simplex> {
        match self.vertices.binary_search(&w) {
            Ok(_) => Err(Error::DegenerateJoin {
                simplex: self.clone(),
                vertex: w,
            }),
            Err(pos) => {
                let mut vertices = self.vertices.clone();
                vertices.insert(pos, w);
                Ok(Simplex { vertices })
            }
        }
    }

    /// Removes one vertex; `None` if absent or if the result would be empty.
    pub fn without_vertex(&self, v: VertexId) -> Option<Simplex> {
        if self.len() == 1 {
            return None;
        }
        match self.vertices.binary_search(&v) {
            Ok(pos) => {
                let mut vertices = self.vertices.clone();
                vertices.remove(pos);
                Some(Simplex { vertices })
            }
            Err(_) => None,
        }
    }

    /// Codimension-one faces, canonical order. Empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vertices: Vec<VertexId> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect();
                Simplex { vertices }
            })
            .collect()
    }

    /// All non-empty subsets, the simplex itself included.
    pub fn nonempty_subsets(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        debug_assert!(n <= 24, "subset enumeration only for small simplices");
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1u32 << n) {
            let vertices: Vec<VertexId> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex { vertices });
        }
        out
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = Error;

    fn try_from(ids: Vec<u32>) -> Result<Self> {
        Simplex::new(ids)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(s: Simplex) -> Self {
        s.ids().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_inserts_in_order() {
        let s = Simplex::new([1, 3]).unwrap();
        let joined = s.join_vertex(VertexId(2)).unwrap();
        assert_eq!(joined.ids().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(joined.dim(), s.dim() + 1);

        let single = Simplex::new([0]).unwrap();
        let edge = single.join_vertex(VertexId(5)).unwrap();
        assert_eq!(edge.ids().collect::<Vec<_>>(), vec![0, 5]);
    }

    #[test]
    fn degenerate_join_is_an_error() {
        let s = Simplex::new([1, 3]).unwrap();
        assert!(matches!(
            s.join_vertex(VertexId(3)),
            Err(Error::DegenerateJoin { .. })
        ));
    }

    #[test]
    fn canonical_order_is_dimension_then_lex() {
        let a = Simplex::new([9]).unwrap();
        let b = Simplex::new([0, 1]).unwrap();
        let c = Simplex::new([0, 2]).unwrap();
        assert!(a < b);
        assert!(b < c);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert!(Simplex::new([2, 2]).is_err());
        assert!(Simplex::new([]).is_err());
    }

    #[test]
    fn facets_drop_one_vertex_each() {
        let s = Simplex::new([0, 1, 2]).unwrap();
        let f: Vec<Vec<u32>> = s.facets().iter().map(|t| t.ids().collect()).collect();
        assert_eq!(f, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        assert!(Simplex::new([7]).unwrap().facets().is_empty());
    }

    #[test]
    fn serde_roundtrip_sorts_and_validates() {
        let s: Simplex = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(s.ids().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,2,3]");
        assert!(serde_json::from_str::<Simplex>("[1,1]").is_err());
    }
}
