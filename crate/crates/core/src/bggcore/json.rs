use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::diagram::DiagramSpec;
use crate::error::FormatError;
use crate::forms::{ValueSpace, ValueTag};
use crate::ratpoly::{format_rational, parse_rational, LinearOp};

/// Largest ambient dimension accepted for explicit diagrams.
pub const MAX_DIAGRAM_DIM: usize = 4;
/// Largest number of rows accepted for explicit diagrams.
pub const MAX_DIAGRAM_ROWS: usize = 6;

/// Either `{"name": "elasticity"}` or an explicit diagram
/// `{"n": 3, "rows": ["V", "V"], "s": [{"i": 0, "j": 1, "entries": [[r, c, "p/q"], …]}]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DiagramJson {
    Named {
        name: String,
    },
    Explicit {
        #[serde(default)]
        name: Option<String>,
        n: usize,
        rows: Vec<String>,
        s: Vec<SBlockJson>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SBlockJson {
    pub i: usize,
    pub j: usize,
    /// `(row, column, value)` in coefficient slots.
    pub entries: Vec<(usize, usize, String)>,
}

fn field(field: &'static str, reason: impl Into<String>) -> FormatError {
    FormatError::Field {
        field,
        reason: reason.into(),
    }
}

impl DiagramJson {
    pub fn from_spec(spec: &DiagramSpec) -> Self {
        let s = spec
            .s_entries()
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(i, j), m)| SBlockJson {
                i,
                j,
                entries: m
                    .entries()
                    .map(|(r, c, v)| (r, c, format_rational(v)))
                    .collect(),
            })
            .collect();
        DiagramJson::Explicit {
            name: Some(spec.name().to_string()),
            n: spec.n(),
            rows: spec.rows().iter().map(|w| w.tag.to_string()).collect(),
            s,
        }
    }

    pub fn to_spec(&self) -> Result<DiagramSpec, FormatError> {
        match self {
            DiagramJson::Named { name } => Ok(DiagramSpec::by_name(name)?),
            DiagramJson::Explicit { name, n, rows, s } => {
                if *n == 0 || *n > MAX_DIAGRAM_DIM {
                    return Err(field("n", format!("must be in 1..={MAX_DIAGRAM_DIM}")));
                }
                if rows.is_empty() || rows.len() > MAX_DIAGRAM_ROWS {
                    return Err(field("rows", format!("need 1..={MAX_DIAGRAM_ROWS} rows")));
                }
                let rows = rows
                    .iter()
                    .map(|t| {
                        t.parse::<ValueTag>()
                            .map(|tag| ValueSpace::new(tag, *n))
                            .map_err(|_| field("rows", format!("unknown value space `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let mut blocks = BTreeMap::new();
                for b in s {
                    if b.j == 0 || b.j >= rows.len() || b.i >= *n {
                        return Err(field(
                            "s",
                            format!("block ({}, {}) outside the grid", b.i, b.j),
                        ));
                    }
                    let nrows = crate::forms::form_indices(*n, b.i + 1).len() * rows[b.j - 1].dim();
                    let ncols = crate::forms::form_indices(*n, b.i).len() * rows[b.j].dim();
                    let mut triplets = Vec::with_capacity(b.entries.len());
                    for (r, c, v) in &b.entries {
                        if *r >= nrows || *c >= ncols {
                            return Err(field(
                                "entries",
                                format!("({r}, {c}) outside {nrows}×{ncols}"),
                            ));
                        }
                        triplets.push((*r, *c, parse_rational(v)?));
                    }
                    let m = LinearOp::from_triplets(nrows, ncols, triplets)?;
                    if blocks.insert((b.i, b.j), m).is_some() {
                        return Err(field("s", format!("block ({}, {}) given twice", b.i, b.j)));
                    }
                }
                let name = name.as_deref().unwrap_or("custom");
                Ok(DiagramSpec::new(name, *n, rows, blocks)?)
            }
        }
    }
}

pub fn diagram_from_json(s: &str) -> Result<DiagramSpec, FormatError> {
    let raw: DiagramJson = serde_json::from_str(s)?;
    raw.to_spec()
}

pub fn diagram_to_json(spec: &DiagramSpec) -> String {
    serde_json::to_string(&DiagramJson::from_spec(spec)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bggcore::BuiltinDiagram;

    #[test]
    fn named_and_round_trip() {
        let e = diagram_from_json(r#"{"name":"elasticity"}"#).unwrap();
        let back = diagram_from_json(&diagram_to_json(&e)).unwrap();
        assert_eq!(
            back.s_entries(),
            DiagramSpec::builtin(BuiltinDiagram::Elasticity).s_entries()
        );
        assert_eq!(back.name(), "elasticity");
    }

    #[test]
    fn explicit_oned() {
        let d = diagram_from_json(
            r#"{"n":1,"rows":["R","R"],"s":[{"i":0,"j":1,"entries":[[0,0,"1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(d.name(), "custom");
        assert_eq!(d.active_row(0), Some(0));
    }

    #[test]
    fn rejects_invalid() {
        for bad in [
            r#"{"name":"nope"}"#,
            r#"{"n":1,"rows":["R","R"],"s":[{"i":0,"j":1,"entries":[[0,3,"1"]]}]}"#,
            r#"{"n":1,"rows":["R","R"],"s":[{"i":0,"j":0,"entries":[]}]}"#,
            r#"{"n":9,"rows":["R"],"s":[]}"#,
            r#"{"n":2,"rows":["Q"],"s":[]}"#,
            // S^(0,1) = dx1 ⊗ 1 does not anticommute with d
            r#"{"n":2,"rows":["R","R"],"s":[{"i":0,"j":1,"entries":[[0,0,"1"]]}]}"#,
        ] {
            assert!(diagram_from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn explicit_with_name_is_not_a_lookup() {
        let d = diagram_from_json(
            r#"{"name":"mine","n":1,"rows":["R","R"],"s":[{"i":0,"j":1,"entries":[[0,0,"1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(d.name(), "mine");
    }
}
