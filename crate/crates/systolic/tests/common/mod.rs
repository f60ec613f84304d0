//! Shared fixtures for the integration suites: standard complexes and the
//! deterministic random corpus.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use systolic::{
    hex_plane_generator, is_systolic, Complex, ComplexGenerator, SubcomplexHandle, VertexId,
};

pub const CORPUS_SEED: u64 = 0x5157_011C;

pub fn octahedron() -> Complex {
    Complex::from_facets([
        [0u32, 1, 2],
        [0, 1, 3],
        [0, 2, 4],
        [0, 3, 4],
        [1, 2, 5],
        [1, 3, 5],
        [2, 4, 5],
        [3, 4, 5],
    ])
    .unwrap()
}

pub fn hollow_triangle() -> Complex {
    Complex::from_facets([[0u32, 1], [1, 2], [0, 2]]).unwrap()
}

pub fn hexdisk(r: usize) -> Complex {
    hex_plane_generator().produce(r).unwrap().0
}

pub fn simplex_complex(n: u32) -> Complex {
    Complex::from_facets([(0..=n).collect::<Vec<u32>>()]).unwrap()
}

/// Simple growable graph used by the random generators.
struct Growth {
    adjacency: Vec<Vec<u32>>,
    facets: Vec<Vec<u32>>,
}

impl Growth {
    fn start_triangle() -> Self {
        Growth {
            adjacency: vec![vec![1, 2], vec![0, 2], vec![0, 1]],
            facets: vec![vec![0, 1, 2]],
        }
    }

    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn add_vertex(&mut self) -> u32 {
        self.adjacency.push(Vec::new());
        (self.adjacency.len() - 1) as u32
    }

    fn connect(&mut self, a: u32, b: u32) {
        self.adjacency[a as usize].push(b);
        self.adjacency[b as usize].push(a);
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].contains(&b)
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            for &b in nbrs {
                if (a as u32) < b {
                    out.push((a as u32, b));
                }
            }
        }
        out
    }
}

/// Flag 2-complex grown by gluing fresh vertices onto existing edges,
/// vertices, or edge pairs. Single-edge and pendant gluings preserve the
/// systolic conditions; the occasional double gluing can create an induced
/// square and is there to exercise the filter.
fn random_growth_complex(rng: &mut ChaCha8Rng) -> Complex {
    let mut g = Growth::start_triangle();
    let target = rng.gen_range(4..=25usize);
    while g.vertex_count() < target {
        let roll: f64 = rng.gen();
        if roll < 0.55 {
            let edges = g.edges();
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            let x = g.add_vertex();
            g.connect(x, a);
            g.connect(x, b);
            g.facets.push(vec![x, a, b]);
        } else if roll < 0.80 {
            let a = rng.gen_range(0..g.vertex_count()) as u32;
            let x = g.add_vertex();
            g.connect(x, a);
            g.facets.push(vec![x, a]);
        } else {
            let b = rng.gen_range(0..g.vertex_count()) as u32;
            let nbrs = g.adjacency[b as usize].clone();
            if nbrs.len() < 2 {
                continue;
            }
            let a = nbrs[rng.gen_range(0..nbrs.len())];
            let c = nbrs[rng.gen_range(0..nbrs.len())];
            if a == c || g.adjacent(a, c) {
                continue;
            }
            let x = g.add_vertex();
            g.connect(x, a);
            g.connect(x, b);
            g.connect(x, c);
            g.facets.push(vec![x, a, b]);
            g.facets.push(vec![x, b, c]);
        }
    }
    Complex::from_facets(g.facets).unwrap()
}

fn random_tree(rng: &mut ChaCha8Rng) -> Complex {
    let n = rng.gen_range(2..=25usize);
    let mut facets = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i) as u32;
        facets.push(vec![parent, i as u32]);
    }
    Complex::from_facets(facets).unwrap()
}

fn random_induced_subdisk(rng: &mut ChaCha8Rng, disk: &Complex) -> Complex {
    let target = rng.gen_range(5..=25usize);
    let start = VertexId(rng.gen_range(0..disk.vertex_count()) as u32);
    let mut chosen = vec![start];
    while chosen.len() < target {
        let mut frontier: Vec<VertexId> = chosen
            .iter()
            .flat_map(|v| disk.neighbors(*v).iter().copied().map(VertexId))
            .filter(|v| !chosen.contains(v))
            .collect();
        frontier.sort();
        frontier.dedup();
        if frontier.is_empty() {
            break;
        }
        chosen.push(frontier[rng.gen_range(0..frontier.len())]);
    }
    let handle = SubcomplexHandle::full_span(disk, chosen).unwrap();
    handle.as_standalone().0
}

/// At least twenty random flag complexes on at most 25 vertices, filtered to
/// pass the systolic check. Deterministic: a fixed seed drives everything.
pub fn random_systolic_corpus() -> Vec<(String, Complex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let disk = hexdisk(3);
    let mut accepted = Vec::new();
    let mut attempts = 0;
    while accepted.len() < 20 && attempts < 400 {
        let candidate = match attempts % 3 {
            0 => random_growth_complex(&mut rng),
            1 => random_tree(&mut rng),
            _ => random_induced_subdisk(&mut rng, &disk),
        };
        attempts += 1;
        if candidate.vertex_count() > 25 || !candidate.is_flag() {
            continue;
        }
        if is_systolic(&candidate).unwrap().verdict {
            accepted.push((format!("random-{:02}", accepted.len()), candidate));
        }
    }
    assert!(
        accepted.len() >= 20,
        "only {} random systolic complexes in {attempts} attempts",
        accepted.len()
    );
    accepted
}

/// The full acceptance corpus: simplices of dimension 1..=5, hex disks of
/// radius 1..=3, and the random systolic complexes.
pub fn acceptance_corpus() -> Vec<(String, Complex)> {
    let mut corpus = Vec::new();
    for n in 1..=5u32 {
        corpus.push((format!("simplex-{n}"), simplex_complex(n)));
    }
    for r in 1..=3usize {
        corpus.push((format!("hexdisk-{r}"), hexdisk(r)));
    }
    corpus.extend(random_systolic_corpus());
    corpus
}
