//! Facet-list formats: plain text (one facet per line, ids separated by
//! whitespace, `#` comments) and the JSON alternative
//! `{"facets": [[0,1,2], ...]}`. Both round-trip losslessly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct FacetFile {
    facets: Vec<Vec<u32>>,
}

pub fn parse_facet_text(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut facets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let facet: Vec<u32> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| {
                    Error::MalformedInput(format!(
                        "line {}: `{tok}` is not a vertex id",
                        lineno + 1
                    ))
                })
            })
            .collect::<Result<_>>()?;
        facets.push(facet);
    }
    Ok(facets)
}

pub fn parse_facet_json(text: &str) -> Result<Vec<Vec<u32>>> {
    let parsed: FacetFile = serde_json::from_str(text)
        .map_err(|e| Error::MalformedInput(format!("facet json: {e}")))?;
    Ok(parsed.facets)
}

/// Reads either format, sniffing JSON by its leading `{`.
pub fn read_complex(path: impl AsRef<Path>) -> Result<Complex> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_complex(&text)
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let facets = if text.trim_start().starts_with('{') {
        parse_facet_json(text)?
    } else {
        parse_facet_text(text)?
    };
    Complex::from_facets(facets)
}

/// Maximal faces, one per line, canonical order.
pub fn facets_to_text(k: &Complex) -> String {
    let mut out = String::new();
    for facet in k.facets() {
        let ids: Vec<String> = facet.ids().map(|i| i.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn facets_to_json(k: &Complex) -> String {
    let file = FacetFile {
        facets: k.facets().iter().map(|f| f.ids().collect()).collect(),
    };
    serde_json::to_string(&file).expect("facet lists serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "# a triangle and a tail\n0 1 2\n\n2 3\n";
        let k = parse_complex(text).unwrap();
        assert_eq!(k.f_vector(), vec![4, 4, 1]);
        let k2 = parse_complex(&facets_to_text(&k)).unwrap();
        assert_eq!(k, k2);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"facets": [[0,1,2],[2,3]]}"#;
        let k = parse_complex(text).unwrap();
        let k2 = parse_complex(&facets_to_json(&k)).unwrap();
        assert_eq!(k, k2);
        let k3 = parse_complex(&facets_to_text(&k)).unwrap();
        assert_eq!(k, k3);
    }

    #[test]
    fn bad_tokens_are_reported_with_line_numbers() {
        let err = parse_complex("0 1\nx y\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
