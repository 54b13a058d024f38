//! Plain-text cone complex format:
//!
//! ```text
//! vertices: a b c
//! simplex: a b
//! simplex: b c
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::ConeComplexSpec;
use crate::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_complex(text: &str) -> Result<ConeComplexSpec> {
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut dim: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(err(line_no, format!("expected `key: values`, got {line:?}")));
        };
        let items: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(err(line_no, "duplicate `vertices` line"));
                }
                if items.is_empty() {
                    return Err(err(line_no, "no vertices listed"));
                }
                for (k, v) in items.iter().enumerate() {
                    if index.insert(v.to_string(), k).is_some() {
                        return Err(err(line_no, format!("duplicate vertex {v:?}")));
                    }
                }
                vertices = Some((line_no, items.iter().map(|s| s.to_string()).collect()));
            }
            "simplex" => {
                if vertices.is_none() {
                    return Err(err(line_no, "`simplex` before `vertices`"));
                }
                if items.is_empty() {
                    return Err(err(line_no, "empty simplex"));
                }
                let d = *dim.get_or_insert(items.len());
                if items.len() != d {
                    return Err(err(
                        line_no,
                        format!("simplex has {} vertices, expected {d}", items.len()),
                    ));
                }
                let mut ids = Vec::with_capacity(d);
                for v in &items {
                    let Some(&id) = index.get(*v) else {
                        return Err(err(line_no, format!("unknown vertex {v:?}")));
                    };
                    if ids.contains(&id) {
                        return Err(err(line_no, format!("repeated vertex {v:?}")));
                    }
                    ids.push(id);
                }
                let mut key = ids.clone();
                key.sort_unstable();
                if let Some(prev) = seen.insert(key, line_no) {
                    return Err(err(line_no, format!("duplicate of simplex on line {prev}")));
                }
                simplices.push(ids);
            }
            other => return Err(err(line_no, format!("unknown key {other:?}"))),
        }
    }

    let Some((vline, labels)) = vertices else {
        return Err(err(text.lines().count().max(1), "missing `vertices` line"));
    };
    let Some(dim) = dim else {
        return Err(err(text.lines().count().max(1), "no `simplex` lines"));
    };
    let mut used = vec![false; labels.len()];
    for s in &simplices {
        for &v in s {
            used[v] = true;
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(err(vline, format!("vertex {:?} is in no simplex", labels[k])));
    }
    ConeComplexSpec::new(labels, simplices, dim).map_err(|e| err(vline, e.to_string()))
}

pub fn write_complex(cc: &ConeComplexSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", cc.vertices().join(" "));
    for s in cc.simplices() {
        let names: Vec<&str> = s.iter().map(|&v| cc.vertices()[v].as_str()).collect();
        let _ = writeln!(out, "simplex: {}", names.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# two quadrants\nvertices: a b c\n\nsimplex: a b\nsimplex: a c\n";
        let cc = parse_complex(text).unwrap();
        assert_eq!(cc.dim(), 2);
        assert_eq!(cc.simplices().len(), 2);
        assert_eq!(parse_complex(&write_complex(&cc)).unwrap(), cc);
    }

    fn line_of(text: &str) -> usize {
        match parse_complex(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_with_line_numbers() {
        assert_eq!(line_of("vertices: a b\nsimplex: a x\n"), 2);
        assert_eq!(line_of("vertices: a b c\nsimplex: a b\nsimplex: c\n"), 3);
        assert_eq!(line_of("vertices: a b\nsimplex: a b\nsimplex: b a\n"), 3);
        assert_eq!(line_of("simplex: a\n"), 1);
        assert_eq!(line_of("vertices: a b\nedge: a b\n"), 2);
        assert_eq!(line_of("vertices: a a\n"), 1);
        assert_eq!(line_of("\nvertices: a b c\nsimplex: a b\n"), 2);
        assert_eq!(line_of("vertices: a b\nsimplex: a a\n"), 2);
        assert_eq!(line_of("vertices: a b\nno colon here\n"), 2);
    }
}
