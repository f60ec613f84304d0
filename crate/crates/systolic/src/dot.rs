//! Graphviz exports: the Hasse diagram of a complex (optionally with a
//! matching drawn as bold reversed arrows) and simplex sequences as chains.

use std::fmt::Write;

use crate::complex::Complex;
use crate::morse::VectorField;
use crate::projection::SimplexSequence;
use crate::simplex::Simplex;

fn node_id(s: &Simplex) -> String {
    let ids: Vec<String> = s.ids().map(|i| i.to_string()).collect();
    ids.join("-")
}

/// Hasse diagram with codimension-one edges in gray; matched pairs are drawn
/// reversed and bold. Node order follows the canonical face order.
pub fn hasse_dot(k: &Complex, matching: Option<&VectorField>) -> String {
    let mut matched: std::collections::HashMap<&Simplex, &Simplex> = Default::default();
    if let Some(field) = matching {
        for (s, t) in field.pairs() {
            matched.insert(s, t);
        }
    }
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for s in k.faces() {
        writeln!(out, "  \"{}\" [label=\"{s}\"];", node_id(s)).unwrap();
    }
    for t in k.faces() {
        for f in t.facets() {
            if !k.contains(&f) {
                continue;
            }
            if matched.get(&f) == Some(&t) {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [style=bold, color=black];",
                    node_id(t),
                    node_id(&f)
                )
                .unwrap();
            } else {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [color=gray];",
                    node_id(&f),
                    node_id(t)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// A ray or geodesic as a chain of simplex nodes.
pub fn sequence_dot(seq: &SimplexSequence) -> String {
    let mut out = String::from("digraph ray {\n  rankdir=LR;\n  node [shape=oval];\n");
    for s in seq.entries() {
        writeln!(out, "  \"{}\" [label=\"{s}\"];", node_id(s)).unwrap();
    }
    for pair in seq.entries().windows(2) {
        writeln!(
            out,
            "  \"{}\" -> \"{}\";",
            node_id(&pair[0]),
            node_id(&pair[1])
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::gradient_matching;
    use crate::projection::directed_geodesic;
    use crate::simplex::VertexId;

    #[test]
    fn hasse_with_matching_reverses_matched_edges() {
        let k = Complex::from_facets([[0u32, 1]]).unwrap();
        let field = gradient_matching(&k, VertexId(0)).unwrap();
        let dot = hasse_dot(&k, Some(&field));
        assert!(dot.contains("\"0-1\" -> \"1\" [style=bold"));
        assert!(dot.contains("\"0\" -> \"0-1\" [color=gray]"));
    }

    #[test]
    fn sequence_chain_is_linear() {
        let k = Complex::from_facets([[0u32, 1, 2]]).unwrap();
        let g = directed_geodesic(&k, VertexId(2), VertexId(0)).unwrap();
        let dot = sequence_dot(&g);
        assert!(dot.contains("\"2\" -> \"0\""));
    }

    #[test]
    fn exports_are_deterministic() {
        let k = Complex::from_facets([[0u32, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(hasse_dot(&k, None), hasse_dot(&k, None));
    }
}
