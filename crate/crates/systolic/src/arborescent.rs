//! Ball filtrations of locally finite complexes given by a radius-bounded
//! generator: every truncation should be systolic and collapse, and the
//! truncations must grow monotonically.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::morse::{
    acyclicity, brute_force_collapsible, collapse_sequence, gradient_matching,
    BRUTE_FORCE_FACE_BOUND,
};
use crate::simplex::{Simplex, VertexId};
use crate::verify::is_systolic;

/// Produces finite truncations of a locally finite complex, radius by
/// radius, under a stable vertex labeling: the faces of `produce(n)` must be
/// contained in those of `produce(m)` for n <= m, and the base vertex keeps
/// its label.
pub trait ComplexGenerator {
    fn produce(&self, radius: usize) -> Result<(Complex, VertexId)>;
}

/// Truncations of the flag triangular-lattice plane: `produce(r)` is the
/// full subcomplex on the lattice points within graph distance `r` of the
/// origin. Every interior vertex has degree six, which makes each
/// truncation the canonical finite systolic disk.
pub struct HexPlaneGenerator;

pub fn hex_plane_generator() -> HexPlaneGenerator {
    HexPlaneGenerator
}

/// Axial unit directions, cyclically ordered so that consecutive ones are
/// adjacent in the lattice.
const HEX_DIRECTIONS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn hex_distance(q: i32, r: i32) -> i32 {
    (q.abs() + r.abs() + (q + r).abs()) / 2
}

impl ComplexGenerator for HexPlaneGenerator {
    fn produce(&self, radius: usize) -> Result<(Complex, VertexId)> {
        if radius == 0 {
            return Ok((Complex::from_facets([[0u32]])?, VertexId(0)));
        }
        let r = radius as i32;
        // stable labels: sort lattice points by (ring, axial coordinates)
        let mut points: Vec<(i32, i32)> = Vec::new();
        for q in -r..=r {
            for s in -r..=r {
                if hex_distance(q, s) <= r {
                    points.push((q, s));
                }
            }
        }
        points.sort_by_key(|&(q, s)| (hex_distance(q, s), q, s));
        let index: std::collections::HashMap<(i32, i32), u32> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        let mut triangles: BTreeSet<[u32; 3]> = BTreeSet::new();
        for &(q, s) in &points {
            let a = index[&(q, s)];
            for i in 0..6 {
                let (dq1, ds1) = HEX_DIRECTIONS[i];
                let (dq2, ds2) = HEX_DIRECTIONS[(i + 1) % 6];
                let (Some(&b), Some(&c)) = (
                    index.get(&(q + dq1, s + ds1)),
                    index.get(&(q + dq2, s + ds2)),
                ) else {
                    continue;
                };
                let mut tri = [a, b, c];
                tri.sort_unstable();
                triangles.insert(tri);
            }
        }
        let complex = Complex::from_facets(triangles.iter().map(|t| t.to_vec()))?;
        Ok((complex, VertexId(0)))
    }
}

/// Generator backed by user-supplied facet files, indexed by radius.
/// Monotonicity is checked lazily: producing radius `r` also parses radius
/// `r - 1` and verifies the face inclusion.
pub struct FacetStreamGenerator {
    files: Vec<PathBuf>,
    base: VertexId,
}

impl FacetStreamGenerator {
    pub fn new(files: Vec<PathBuf>, base: VertexId) -> Self {
        FacetStreamGenerator { files, base }
    }

    fn load(&self, radius: usize) -> Result<Complex> {
        let path = self.files.get(radius).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no facet file for radius {radius} (have {})",
                self.files.len()
            ))
        })?;
        crate::io::read_complex(path)
    }
}

impl ComplexGenerator for FacetStreamGenerator {
    fn produce(&self, radius: usize) -> Result<(Complex, VertexId)> {
        let complex = self.load(radius)?;
        if !complex.has_vertex(self.base) {
            return Err(Error::GeneratorContract(format!(
                "base vertex {} is missing at radius {radius}",
                self.base
            )));
        }
        if radius > 0 {
            let previous = self.load(radius - 1)?;
            let lost = previous.faces().find(|f| !complex.contains(f)).cloned();
            if let Some(face) = lost {
                return Err(Error::GeneratorContract(format!(
                    "face {face} of radius {} is missing at radius {radius}",
                    radius - 1
                )));
            }
        }
        Ok((complex, self.base))
    }
}

/// Verdicts for one truncation radius.
#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub radius: usize,
    pub f_vector: Vec<usize>,
    pub monotone: bool,
    pub systolic: bool,
    pub h1_trivial: bool,
    pub connected: bool,
    /// Matching + acyclicity + replayed collapse sequence all succeeded.
    pub collapsible_pipeline: bool,
    /// Why the pipeline failed, when it did.
    pub pipeline_note: Option<String>,
    /// Brute-force oracle verdict, for levels within its face bound.
    pub collapsible_oracle: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub base: u32,
    pub levels: Vec<LevelReport>,
    /// True iff every level is monotone and pipeline-collapsible.
    pub overall: bool,
}

/// Runs the whole verification stack on truncations 1..=n_max: monotone
/// inclusion into the next level, the systolic check, and the collapse
/// pipeline based at the generator's base vertex. Generator-contract
/// violations abort; per-level verification failures are reported.
pub fn ball_filtration_check(gen: &dyn ComplexGenerator, n_max: usize) -> Result<FiltrationReport> {
    let mut levels = Vec::new();
    let mut base_label = 0;
    for n in 1..=n_max {
        let (current, base) = gen.produce(n)?;
        let (previous, prev_base) = gen.produce(n - 1)?;
        if base != prev_base {
            return Err(Error::GeneratorContract(format!(
                "base vertex moved between radii {} and {n}",
                n - 1
            )));
        }
        base_label = base.0;
        if let Some(face) = previous.faces().find(|f| !current.contains(f)) {
            return Err(Error::GeneratorContract(format!(
                "face {face} of radius {} is missing at radius {n}",
                n - 1
            )));
        }
        let systolic_report = is_systolic(&current)?;
        let (collapsible, note) = match run_collapse_pipeline(&current, base) {
            Ok(()) => (true, None),
            Err(e) => (false, Some(e.to_string())),
        };
        let oracle = if current.face_count() <= BRUTE_FORCE_FACE_BOUND {
            Some(brute_force_collapsible(&current)?)
        } else {
            None
        };
        levels.push(LevelReport {
            radius: n,
            f_vector: current.f_vector(),
            monotone: true,
            systolic: systolic_report.verdict,
            h1_trivial: systolic_report.h1_trivial,
            connected: systolic_report.connected,
            collapsible_pipeline: collapsible,
            pipeline_note: note,
            collapsible_oracle: oracle,
        });
    }
    let overall = levels.iter().all(|l| l.monotone && l.collapsible_pipeline);
    Ok(FiltrationReport {
        base: base_label,
        levels,
        overall,
    })
}

fn run_collapse_pipeline(k: &Complex, base: VertexId) -> Result<()> {
    let field = gradient_matching(k, base)?;
    let cert = acyclicity(k, &field)?;
    if !cert.verdict {
        return Err(Error::InternalConsistency(
            "gradient matching has a closed gradient path".into(),
        ));
    }
    let schedule = collapse_sequence(k, &field, &cert)?;
    let mut current = k.clone();
    for (src, _) in &schedule {
        current = current.elementary_collapse(src)?;
    }
    if current.face_count() != 1 || !current.contains(&Simplex::vertex(base)) {
        return Err(Error::InternalConsistency(
            "collapse replay did not end at the base vertex".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io;

    #[test]
    fn hexdisk_zero_and_one() {
        let gen = hex_plane_generator();
        let (point, base) = gen.produce(0).unwrap();
        assert_eq!(point.f_vector(), vec![1]);
        assert_eq!(base, VertexId(0));
        let (cone, _) = gen.produce(1).unwrap();
        assert_eq!(cone.f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn hexdisk_counts_grow_as_lattice_disks() {
        let gen = hex_plane_generator();
        for r in 1..=3usize {
            let (k, _) = gen.produce(r).unwrap();
            let v = 1 + 3 * r * (r + 1);
            let t = 6 * r * r;
            assert_eq!(k.f_vector(), vec![v, v + t - 1, t], "radius {r}");
        }
    }

    #[test]
    fn hexdisk_truncations_are_monotone_and_full() {
        let gen = hex_plane_generator();
        for r in 1..=3usize {
            let (small, base) = gen.produce(r - 1).unwrap();
            let (big, _) = gen.produce(r).unwrap();
            for f in small.faces() {
                assert!(big.contains(f), "face {f} lost between {} and {r}", r - 1);
            }
            // the smaller disk is the full subcomplex on its distance range
            let dist = big.distances_from(base);
            let spanned = crate::subcomplex::SubcomplexHandle::full_span(
                &big,
                big.vertex_ids()
                    .filter(|v| (dist[v.0 as usize].unwrap() as usize) < r),
            )
            .unwrap();
            let small_faces: BTreeSet<Simplex> = small.faces().cloned().collect();
            assert_eq!(spanned.face_set(), &small_faces);
        }
    }

    #[test]
    fn hex_filtration_is_clean_up_to_three() {
        let report = ball_filtration_check(&hex_plane_generator(), 3).unwrap();
        assert!(report.overall);
        assert_eq!(report.levels.len(), 3);
        for level in &report.levels {
            assert!(level.systolic);
            assert!(level.collapsible_pipeline);
            assert!(level.monotone);
        }
        assert_eq!(report.levels[0].collapsible_oracle, Some(true));
    }

    #[test]
    fn empty_filtration() {
        let report = ball_filtration_check(&hex_plane_generator(), 0).unwrap();
        assert!(report.levels.is_empty());
        assert!(report.overall);
    }

    struct CycleAtOne;

    impl ComplexGenerator for CycleAtOne {
        fn produce(&self, radius: usize) -> Result<(Complex, VertexId)> {
            // a six-cycle with no interior: connected but not systolic
            let c6 = Complex::from_facets([[0u32, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]])?;
            if radius == 0 {
                Ok((Complex::from_facets([[0u32]])?, VertexId(0)))
            } else {
                Ok((c6, VertexId(0)))
            }
        }
    }

    #[test]
    fn unfilled_cycle_level_is_reported_not_swallowed() {
        let report = ball_filtration_check(&CycleAtOne, 1).unwrap();
        assert!(!report.overall);
        assert!(!report.levels[0].systolic);
        assert!(!report.levels[0].h1_trivial);
        assert!(!report.levels[0].collapsible_pipeline);
        assert!(report.levels[0].pipeline_note.is_some());
    }

    #[test]
    fn facet_stream_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let gen = hex_plane_generator();
        let mut files = Vec::new();
        for r in 0..=2usize {
            let (k, _) = gen.produce(r).unwrap();
            let path = dir.path().join(format!("disk{r}.facets"));
            std::fs::write(&path, io::facets_to_text(&k)).unwrap();
            files.push(path);
        }
        let stream = FacetStreamGenerator::new(files, VertexId(0));
        let report = ball_filtration_check(&stream, 2).unwrap();
        assert!(report.overall);
    }

    #[test]
    fn constant_stream_is_trivially_monotone() {
        let dir = tempfile::tempdir().unwrap();
        let k = Complex::from_facets([[0u32, 1, 2]]).unwrap();
        let path = dir.path().join("triangle.facets");
        std::fs::write(&path, io::facets_to_text(&k)).unwrap();
        let stream = FacetStreamGenerator::new(vec![path.clone(), path], VertexId(0));
        let report = ball_filtration_check(&stream, 1).unwrap();
        assert!(report.overall);
    }

    #[test]
    fn shrinking_stream_violates_the_contract() {
        let dir = tempfile::tempdir().unwrap();
        let gen = hex_plane_generator();
        let mut files = Vec::new();
        for r in [2usize, 1] {
            let (k, _) = gen.produce(r).unwrap();
            let path = dir.path().join(format!("disk{r}.facets"));
            std::fs::write(&path, io::facets_to_text(&k)).unwrap();
            files.push(path);
        }
        let stream = FacetStreamGenerator::new(files, VertexId(0));
        assert!(matches!(
            ball_filtration_check(&stream, 1),
            Err(Error::GeneratorContract(_))
        ));
    }
}
