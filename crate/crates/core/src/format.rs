//! Structure files: UTF-8 JSON.
//!
//! ```json
//! {
//!   "kind": "hypergroupoid",
//!   "n": 2,
//!   "table": [
//!     [[0], [0, 1]],
//!     [[1], [0]]
//!   ]
//! }
//! ```
//!
//! Hyper tables store `table[a][b]` as a sorted, nonempty element array.
//! Gamma tables carry `"kind": "gamma-groupoid"`, a `"k"` field, and store
//! `table[a][g][b] = a g b`. The writer always emits this exact layout, so
//! files are canonical and diffable.

use std::fmt;

use serde::Deserialize;

use crate::gamma::GammaTable;
use crate::hyper::HyperTable;
use crate::structure::Structure;
use crate::subset::{format_elements, Carrier};

pub const HYPER_KIND: &str = "hypergroupoid";
pub const GAMMA_KIND: &str = "gamma-groupoid";

/// A structure file that failed to parse or validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub message: String,
    /// 1-based position of a JSON syntax or type error.
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl FormatError {
    fn at_path(message: String) -> Self {
        FormatError {
            message,
            line: None,
            column: None,
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    kind: String,
    n: usize,
    #[serde(default)]
    k: Option<usize>,
    table: Vec<Vec<Vec<usize>>>,
}

/// Parses and validates a structure file.
pub fn parse(text: &str) -> Result<Structure, FormatError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FormatError {
        message: strip_position(&e.to_string()).to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    let carrier = Carrier::new(raw.n).map_err(|e| FormatError::at_path(format!("n: {e}")))?;
    let n = raw.n;
    if raw.table.len() != n {
        return Err(FormatError::at_path(format!(
            "table: expected {n} rows, found {}",
            raw.table.len()
        )));
    }
    match raw.kind.as_str() {
        HYPER_KIND => {
            if raw.k.is_some() {
                return Err(FormatError::at_path("k: only gamma-groupoid files carry k".into()));
            }
            let mut masks = Vec::with_capacity(n * n);
            for (a, row) in raw.table.iter().enumerate() {
                if row.len() != n {
                    return Err(FormatError::at_path(format!(
                        "table[{a}]: expected {n} cells, found {}",
                        row.len()
                    )));
                }
                for (b, cell) in row.iter().enumerate() {
                    if cell.is_empty() {
                        return Err(FormatError::at_path(format!("table[{a}][{b}]: cell is empty")));
                    }
                    let mut mask = 0u64;
                    for &x in cell {
                        if x >= n {
                            return Err(FormatError::at_path(format!(
                                "table[{a}][{b}]: element {x} is out of range for n = {n}"
                            )));
                        }
                        if mask >> x & 1 == 1 {
                            return Err(FormatError::at_path(format!(
                                "table[{a}][{b}]: element {x} is repeated"
                            )));
                        }
                        mask |= 1 << x;
                    }
                    masks.push(mask);
                }
            }
            HyperTable::from_masks(carrier, masks)
                .map(Structure::Hyper)
                .map_err(|e| FormatError::at_path(e.to_string()))
        }
        GAMMA_KIND => {
            let k = raw
                .k
                .ok_or_else(|| FormatError::at_path("k: gamma-groupoid files need k".into()))?;
            if k == 0 {
                return Err(FormatError::at_path("k: must be at least 1".into()));
            }
            let mut cells = Vec::with_capacity(n * k * n);
            for (a, row) in raw.table.iter().enumerate() {
                if row.len() != k {
                    return Err(FormatError::at_path(format!(
                        "table[{a}]: expected {k} gamma rows, found {}",
                        row.len()
                    )));
                }
                for (g, line) in row.iter().enumerate() {
                    if line.len() != n {
                        return Err(FormatError::at_path(format!(
                            "table[{a}][{g}]: expected {n} entries, found {}",
                            line.len()
                        )));
                    }
                    for (b, &x) in line.iter().enumerate() {
                        if x >= n {
                            return Err(FormatError::at_path(format!(
                                "table[{a}][{g}][{b}]: element {x} is out of range for n = {n}"
                            )));
                        }
                        cells.push(x);
                    }
                }
            }
            GammaTable::new(carrier, k, cells)
                .map(Structure::Gamma)
                .map_err(|e| FormatError::at_path(e.to_string()))
        }
        other => Err(FormatError::at_path(format!(
            "kind: expected \"{HYPER_KIND}\" or \"{GAMMA_KIND}\", found \"{other}\""
        ))),
    }
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(message: &str) -> &str {
    match message.rfind(" at line ") {
        Some(i) => &message[..i],
        None => message,
    }
}

fn rows_json(rows: &[Vec<Vec<usize>>]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|c| format_elements(c.iter().copied())).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// Canonical file text, newline-terminated.
pub fn to_json(structure: &Structure) -> String {
    match structure {
        Structure::Hyper(t) => format!(
            "{{\n  \"kind\": \"{HYPER_KIND}\",\n  \"n\": {},\n  \"table\": {}\n}}\n",
            t.size(),
            rows_json(&t.to_rows())
        ),
        Structure::Gamma(t) => format!(
            "{{\n  \"kind\": \"{GAMMA_KIND}\",\n  \"n\": {},\n  \"k\": {},\n  \"table\": {}\n}}\n",
            t.size(),
            t.gamma_size(),
            rows_json(&t.to_rows())
        ),
    }
}

/// The structure as a JSON value, for embedding in reports.
pub fn to_value(structure: &Structure) -> serde_json::Value {
    serde_json::from_str(&to_json(structure)).expect("writer emits valid JSON")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::fixtures::full2;

    #[test]
    fn writes_canonical_layout() {
        let text = to_json(&Structure::Hyper(full2()));
        assert_eq!(
            text,
            "{\n  \"kind\": \"hypergroupoid\",\n  \"n\": 2,\n  \"table\": [\n    [[0,1], [0,1]],\n    [[0,1], [0,1]]\n  ]\n}\n"
        );
        assert_eq!(parse(&text).unwrap(), Structure::Hyper(full2()));
    }

    #[test]
    fn parses_gamma_files() {
        let text = r#"{"kind": "gamma-groupoid", "n": 2, "k": 1, "table": [[[0, 0]], [[1, 1]]]}"#;
        let s = parse(text).unwrap();
        assert_eq!(s, Structure::Gamma(crate::gamma::fixtures::left_zero2()));
    }

    #[test]
    fn accepts_unsorted_cells() {
        let text = r#"{"kind": "hypergroupoid", "n": 2, "table": [[[1, 0], [0]], [[0], [0]]]}"#;
        let Structure::Hyper(t) = parse(text).unwrap() else { panic!() };
        assert_eq!(t.masks()[0], 0b11);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"kind\": \"hypergroupoid\",\n  \"n\": 2,\n  \"table\": [[[0]").unwrap_err();
        assert_eq!(err.line, Some(4));
        assert!(err.column.is_some());
    }

    #[test]
    fn semantic_errors_name_the_cell() {
        let cases = [
            (r#"{"kind": "hypergroupoid", "n": 2, "table": [[[0], []], [[0], [0]]]}"#, "table[0][1]"),
            (r#"{"kind": "hypergroupoid", "n": 2, "table": [[[0], [2]], [[0], [0]]]}"#, "out of range"),
            (r#"{"kind": "hypergroupoid", "n": 2, "table": [[[0], [0, 0]], [[0], [0]]]}"#, "repeated"),
            (r#"{"kind": "hypergroupoid", "n": 2, "table": [[[0], [0]]]}"#, "expected 2 rows"),
            (r#"{"kind": "gamma-groupoid", "n": 2, "table": [[[0, 0]], [[1, 1]]]}"#, "need k"),
            (r#"{"kind": "gamma-groupoid", "n": 2, "k": 2, "table": [[[0, 0]], [[1, 1]]]}"#, "gamma rows"),
            (r#"{"kind": "monoid", "n": 1, "table": [[[0]]]}"#, "kind"),
            (r#"{"kind": "hypergroupoid", "n": 0, "table": []}"#, "n:"),
        ];
        for (text, needle) in cases {
            let err = parse(text).unwrap_err();
            assert!(err.message.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse(r#"{"kind": "hypergroupoid", "n": 1, "table": [[[0]]], "extra": 1}"#).is_err());
    }
}
