//! Line-based text format for ordered complexes.
//!
//! ```text
//! # a filled triangle
//! vertex a
//! vertex b
//! vertex c
//! simplex a b c
//! ```
//!
//! Vertex order is the order of the `vertex` lines. Faces of every listed
//! simplex are added automatically.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::OrderedComplex;
use crate::{Error, Result};

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse_complex(text: &str) -> Result<OrderedComplex> {
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        match keyword {
            "vertex" => {
                let [name] = args.as_slice() else {
                    return Err(err(line, "expected exactly one vertex name".into()));
                };
                if index.contains_key(*name) {
                    return Err(err(line, format!("vertex {name} declared twice")));
                }
                index.insert(name.to_string(), vertices.len());
                vertices.push(name.to_string());
            }
            "simplex" => {
                if args.is_empty() {
                    return Err(err(line, "simplex needs at least one vertex".into()));
                }
                let mut s = Vec::with_capacity(args.len());
                for a in &args {
                    let Some(&i) = index.get(*a) else {
                        return Err(err(line, format!("undeclared vertex {a}")));
                    };
                    if s.contains(&i) {
                        return Err(err(line, format!("vertex {a} repeated in simplex")));
                    }
                    s.push(i);
                }
                facets.push(s);
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }
    OrderedComplex::from_facets(vertices, facets)
}

/// Writes the vertex list followed by the facets; parsing the output gives
/// back an identical complex.
pub fn write_complex(k: &OrderedComplex) -> String {
    let mut out = String::new();
    for v in k.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for f in k.facets() {
        if f.len() == 1 {
            continue;
        }
        let names: Vec<&str> = f.iter().map(|&v| k.vertices()[v].as_str()).collect();
        let _ = writeln!(out, "simplex {}", names.join(" "));
    }
    out
}
