//! JSON documents: complexes with vertex values, and expected barcodes.

use std::collections::HashMap;
use std::fmt::Write as _;

use parahom::barcodes::{BarKind, BarcodeSet, DecoratedInterval};
use parahom::complex::{SimplicialComplex, VertexFunction};
use parahom::value::{format_value, parse_value};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u64,
    /// Exact decimal (`"-1.25"`) or fraction (`"1/3"`).
    pub value: String,
}

/// A complex given by vertex ids with values and simplices as id lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: Vec<VertexEntry>,
    pub simplices: Vec<Vec<u64>>,
}

/// A parsed document: vertex `i` of the complex has id `ids[i]`.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub complex: SimplicialComplex,
    pub function: VertexFunction,
    pub ids: Vec<u64>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed complex document: {e}")))
    }

    /// Validates the document into a complex and function. Vertices are
    /// indexed in declaration order.
    pub fn load(&self) -> Result<Loaded, CliError> {
        let mut index = HashMap::with_capacity(self.vertices.len());
        let mut values = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(CliError::Input(format!(
                    "vertex id {} is declared twice",
                    v.id
                )));
            }
            values.push(parse_value(&v.value)?);
        }
        let mut simplices = Vec::with_capacity(self.simplices.len());
        for s in &self.simplices {
            let mut t = s
                .iter()
                .map(|id| {
                    index.get(id).copied().ok_or_else(|| {
                        CliError::Input(format!("simplex {s:?} uses undeclared vertex id {id}"))
                    })
                })
                .collect::<Result<Vec<usize>, _>>()?;
            t.sort_unstable();
            simplices.push(t);
        }
        let complex = SimplicialComplex::new(values.len(), simplices)?;
        if let Some(v) = (0..values.len()).find(|&v| !complex.contains(&[v])) {
            return Err(CliError::Input(format!(
                "vertex id {} is declared but not listed as a simplex",
                self.vertices[v].id
            )));
        }
        Ok(Loaded {
            complex,
            function: VertexFunction::new(values),
            ids: self.vertices.iter().map(|v| v.id).collect(),
        })
    }

    /// Document for a complex with vertex ids `0..n`, simplices by dimension
    /// and then lexicographically.
    pub fn from_complex(k: &SimplicialComplex, f: &VertexFunction) -> Self {
        Self {
            vertices: (0..k.vertex_count())
                .map(|v| VertexEntry {
                    id: v as u64,
                    value: format_value(f.value(v)),
                })
                .collect(),
            simplices: k
                .iter()
                .map(|s| s.iter().map(|&v| v as u64).collect())
                .collect(),
        }
    }

    /// Byte-stable text: one vertex and one simplex per line, canonical values.
    pub fn to_canonical_json(&self) -> Result<String, CliError> {
        let mut out = String::from("{\n  \"vertices\": [");
        for (i, v) in self.vertices.iter().enumerate() {
            let value = format_value(&parse_value(&v.value)?);
            let sep = if i + 1 < self.vertices.len() { "," } else { "" };
            write!(
                out,
                "\n    {{\"id\": {}, \"value\": \"{value}\"}}{sep}",
                v.id
            )
            .expect("writing to a String");
        }
        out.push_str(if self.vertices.is_empty() {
            "],\n"
        } else {
            "\n  ],\n"
        });
        out.push_str("  \"simplices\": [");
        for (i, s) in self.simplices.iter().enumerate() {
            let ids: Vec<String> = s.iter().map(u64::to_string).collect();
            let sep = if i + 1 < self.simplices.len() {
                ","
            } else {
                ""
            };
            write!(out, "\n    [{}]{sep}", ids.join(", ")).expect("writing to a String");
        }
        out.push_str(if self.simplices.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        Ok(out)
    }
}

/// One line of an expected-barcode sidecar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarEntry {
    pub degree: usize,
    /// `closed`, `open`, `closed_open` or `open_closed` (or `c`, `o`, `co`, `oc`).
    pub kind: String,
    pub left: String,
    pub right: String,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

pub fn bars_to_entries(bars: &BarcodeSet) -> Vec<BarEntry> {
    bars.iter()
        .map(|(b, n)| BarEntry {
            degree: b.r,
            kind: kind_name(b.kind).to_owned(),
            left: format_value(&b.left),
            right: format_value(&b.right),
            multiplicity: n,
        })
        .collect()
}

pub fn kind_name(kind: BarKind) -> &'static str {
    match kind {
        BarKind::Closed => "closed",
        BarKind::Open => "open",
        BarKind::ClosedOpen => "closed_open",
        BarKind::OpenClosed => "open_closed",
    }
}

pub fn parse_bars(text: &str) -> Result<BarcodeSet, CliError> {
    let entries: Vec<BarEntry> = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed barcode document: {e}")))?;
    let mut bars = BarcodeSet::new();
    for e in entries {
        let kind = BarKind::from_name(&e.kind)
            .ok_or_else(|| CliError::Input(format!("unknown bar kind {:?}", e.kind)))?;
        let bar = DecoratedInterval::new(
            e.degree,
            kind,
            parse_value(&e.left)?,
            parse_value(&e.right)?,
        )?;
        bars.add(bar, e.multiplicity);
    }
    Ok(bars)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = r#"{"vertices":[{"id":7,"value":"0.50"},{"id":3,"value":"1"}],"simplices":[[7],[3],[3,7]]}"#;

    #[test]
    fn loads_in_declaration_order() {
        let doc = ComplexDocument::parse(EDGE).unwrap();
        let loaded = doc.load().unwrap();
        assert_eq!(loaded.ids, vec![7, 3]);
        assert!(loaded.complex.contains(&[0, 1]));
        assert_eq!(format_value(loaded.function.value(0)), "0.5");
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"vertices":[{"id":0,"value":"x"}],"simplices":[[0]]}"#,
            r#"{"vertices":[{"id":0,"value":"1"}],"simplices":[[0],[0,1]]}"#,
            r#"{"vertices":[{"id":0,"value":"1"},{"id":0,"value":"2"}],"simplices":[[0]]}"#,
            r#"{"vertices":[{"id":0,"value":"1"},{"id":1,"value":"2"}],"simplices":[[0]]}"#,
            r#"{"vertices":[{"id":0,"value":"1"},{"id":1,"value":"2"}],"simplices":[[0],[0,1]]}"#,
            r#"{"vertices":[{"id":0,"value":1}],"simplices":[[0]]}"#,
            r#"{"vertices":[],"simplices":[],"extra":1}"#,
        ];
        for text in cases {
            let result = ComplexDocument::parse(text).and_then(|d| d.load());
            assert!(result.is_err(), "{text} should be rejected");
        }
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let doc = ComplexDocument::parse(EDGE).unwrap();
        let text = doc.to_canonical_json().unwrap();
        assert_eq!(
            ComplexDocument::parse(&text)
                .unwrap()
                .to_canonical_json()
                .unwrap(),
            text
        );
        assert!(text.contains("\"value\": \"0.5\""));
        let empty = ComplexDocument {
            vertices: vec![],
            simplices: vec![],
        };
        assert_eq!(
            empty.to_canonical_json().unwrap(),
            "{\n  \"vertices\": [],\n  \"simplices\": []\n}\n"
        );
    }

    #[test]
    fn bars_round_trip() {
        let text = r#"[{"degree":0,"kind":"closed","left":"0","right":"2"},{"degree":0,"kind":"oc","left":"1/3","right":"2","multiplicity":2}]"#;
        let bars = parse_bars(text).unwrap();
        assert_eq!(bars.len(), 3);
        let again = serde_json::to_string(&bars_to_entries(&bars)).unwrap();
        assert_eq!(parse_bars(&again).unwrap(), bars);
        assert!(parse_bars(r#"[{"degree":0,"kind":"open","left":"2","right":"2"}]"#).is_err());
    }
}
