//! Property tests for the structural invariants: downward closure, the
//! star/link join identity, Euler invariance under collapse, the metric
//! axioms for combinatorial distance, flagness against a clique oracle, and
//! convexity implying 3-convexity on systolic complexes.

mod common;

use proptest::prelude::*;

use systolic::{is_3_convex, is_convex, is_k_large, Complex, Simplex, SubcomplexHandle, VertexId};

/// Random facet lists over a small vertex range; singletons for every id
/// keep the labeling dense.
fn facet_list_strategy(max_verts: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    let verts = 2..=max_verts;
    verts.prop_flat_map(|n| {
        let facet = proptest::collection::btree_set(0..n, 1..=3usize)
            .prop_map(|s| s.into_iter().collect::<Vec<u32>>());
        proptest::collection::vec(facet, 1..12).prop_map(move |mut facets| {
            for id in 0..n {
                facets.push(vec![id]);
            }
            facets
        })
    })
}

fn arb_complex() -> impl Strategy<Value = Complex> {
    facet_list_strategy(8).prop_map(|facets| Complex::from_facets(facets).unwrap())
}

/// All cliques of the 1-skeleton, by brute-force extension.
fn all_cliques(k: &Complex) -> Vec<Vec<u32>> {
    let verts: Vec<u32> = k.vertex_ids().map(|v| v.0).collect();
    let mut cliques: Vec<Vec<u32>> = verts.iter().map(|v| vec![*v]).collect();
    let mut out = cliques.clone();
    while !cliques.is_empty() {
        let mut next = Vec::new();
        for clique in &cliques {
            let last = *clique.last().unwrap();
            for &w in &verts {
                if w > last
                    && clique
                        .iter()
                        .all(|&u| k.are_adjacent(VertexId(u), VertexId(w)))
                {
                    let mut bigger = clique.clone();
                    bigger.push(w);
                    next.push(bigger);
                }
            }
        }
        out.extend(next.iter().cloned());
        cliques = next;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn downward_closure_holds(k in arb_complex()) {
        for s in k.faces() {
            for sub in s.nonempty_subsets() {
                prop_assert!(k.contains(&sub), "{sub} missing under {s}");
            }
        }
    }

    #[test]
    fn adjacency_agrees_with_edges(k in arb_complex()) {
        for u in k.vertex_ids() {
            for w in k.vertex_ids() {
                if u >= w {
                    continue;
                }
                let edge = Simplex::new([u.0, w.0]).unwrap();
                prop_assert_eq!(k.are_adjacent(u, w), k.contains(&edge));
            }
        }
    }

    #[test]
    fn star_is_join_of_simplex_and_link(k in arb_complex()) {
        for s in k.faces() {
            let st = systolic::star(&k, s).unwrap();
            let link = k.link(s).unwrap();
            // every star face decomposes as (piece of s) ∪ (link face)
            for f in st.faces() {
                let inside = f.intersection(s);
                let outside: Vec<u32> = f.ids().filter(|i| !s.contains(VertexId(*i))).collect();
                if !outside.is_empty() {
                    let out_simplex = Simplex::new(outside).unwrap();
                    prop_assert!(k.contains(&out_simplex.union(s)));
                } else {
                    prop_assert!(inside.is_some());
                }
            }
            // and conversely each such union is in the star
            for b in link.complex.faces() {
                let parent = link.parent_simplex(b);
                prop_assert!(st.contains_face(&parent));
                prop_assert!(st.contains_face(&parent.union(s)));
            }
        }
    }

    #[test]
    fn collapse_preserves_euler_characteristic(k in arb_complex()) {
        if let Some((s, _)) = k.free_faces().into_iter().next() {
            let smaller = k.elementary_collapse(&s).unwrap();
            prop_assert_eq!(smaller.euler_characteristic(), k.euler_characteristic());
            prop_assert_eq!(smaller.face_count() + 2, k.face_count());
        }
    }

    #[test]
    fn distance_is_a_metric_per_component(k in arb_complex()) {
        let verts: Vec<VertexId> = k.vertex_ids().collect();
        for &u in &verts {
            let du = k.distances_from(u);
            prop_assert_eq!(du[u.0 as usize], Some(0));
            for &w in &verts {
                let dw = k.distances_from(w);
                prop_assert_eq!(du[w.0 as usize], dw[u.0 as usize]);
                for &x in &verts {
                    if let (Some(a), Some(b)) = (du[w.0 as usize], dw[x.0 as usize]) {
                        let direct = du[x.0 as usize];
                        prop_assert!(direct.is_some_and(|d| d <= a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn flagness_matches_clique_oracle(k in arb_complex()) {
        let every_clique_spans = all_cliques(&k)
            .into_iter()
            .all(|c| k.contains(&Simplex::new(c).unwrap()));
        prop_assert_eq!(k.is_flag(), every_clique_spans);
    }

    #[test]
    fn four_largeness_matches_flagness_of_complex_and_links(k in arb_complex()) {
        let links_flag = k
            .faces()
            .all(|s| k.link(s).unwrap().complex.is_flag());
        prop_assert_eq!(
            is_k_large(&k, 4).unwrap().verdict,
            k.is_flag() && links_flag
        );
    }

    /// Convex subcomplexes of systolic complexes are 3-convex. Q is grown as
    /// a random connected induced subcomplex of a hex disk.
    #[test]
    fn convex_implies_3_convex_on_hexdisk(picks in proptest::collection::vec(0..1000u32, 1..8)) {
        let k = common::hexdisk(2);
        let mut chosen: Vec<VertexId> = vec![VertexId(picks[0] % 19)];
        for p in &picks[1..] {
            let mut frontier: Vec<VertexId> = chosen
                .iter()
                .flat_map(|v| k.neighbors(*v).iter().copied().map(VertexId))
                .filter(|v| !chosen.contains(v))
                .collect();
            frontier.sort();
            frontier.dedup();
            if frontier.is_empty() {
                break;
            }
            chosen.push(frontier[(*p as usize) % frontier.len()]);
        }
        let q = SubcomplexHandle::full_span(&k, chosen).unwrap();
        if is_convex(&k, &q).unwrap().verdict {
            prop_assert!(is_3_convex(&k, &q).verdict);
        }
    }
}
