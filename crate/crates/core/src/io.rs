//! The `.poset` and `.ssp` text formats.
//!
//! ```text
//! # a .poset file
//! elements: a b c
//! relations: a<b a<c
//! ```
//!
//! ```text
//! field: F 2
//! poset: three.poset
//! dim: 2
//! space x: 1,0
//! space z: 1,1; 0,1
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, FieldKind, PrimeField, Rationals, Subspace};
use crate::poset::Poset;
use crate::sspace::SSpace;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

// (line number, content) with comments and blank lines removed
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Parses a `.poset` file. Relations may be chained (`a<b<c`).
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut elements: Option<Vec<String>> = None;
    let mut relations: Vec<(String, String)> = Vec::new();
    let mut saw_relations = false;
    for (no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("elements:") {
            if elements.is_some() {
                return Err(parse_err(no, "duplicate `elements:` line"));
            }
            elements = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("relations:") {
            if elements.is_none() {
                return Err(parse_err(no, "`relations:` before `elements:`"));
            }
            if saw_relations {
                return Err(parse_err(no, "duplicate `relations:` line"));
            }
            saw_relations = true;
            for tok in rest.split_whitespace() {
                let parts: Vec<&str> = tok.split('<').collect();
                if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                    return Err(parse_err(no, format!("malformed relation {tok:?}")));
                }
                for w in parts.windows(2) {
                    relations.push((w[0].to_string(), w[1].to_string()));
                }
            }
        } else {
            return Err(parse_err(no, format!("expected `elements:` or `relations:`, found {line:?}")));
        }
    }
    let elements = elements.ok_or_else(|| parse_err(1, "missing `elements:` line"))?;
    Poset::new(&elements, &relations)
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    parse_poset(&fs::read_to_string(path).map_err(|e| io_err(path, e))?)
}

/// Writes `elements:` in stored order and the cover relations.
pub fn write_poset(p: &Poset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    let mut out = format!("elements: {}\n", p.labels().join(" "));
    if covers.is_empty() {
        out.push_str("relations:\n");
    } else {
        out.push_str(&format!("relations: {}\n", covers.join(" ")));
    }
    out
}

/// The header and raw spans of a `.ssp` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SspFile {
    pub field: FieldKind,
    pub poset: PathBuf,
    pub dim: usize,
    /// `(line, label, vectors)` with vectors still as scalar strings.
    pub spans: Vec<(usize, String, Vec<Vec<String>>)>,
}

pub fn parse_ssp(text: &str) -> Result<SspFile> {
    let mut field = None;
    let mut poset = None;
    let mut dim = None;
    let mut spans = Vec::new();
    for (no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("field:") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            field = Some(match toks.as_slice() {
                ["Q"] => FieldKind::Rationals,
                ["F", p] => {
                    let p: u32 = p.parse().map_err(|_| parse_err(no, format!("bad modulus {p:?}")))?;
                    PrimeField::new(p)?;
                    FieldKind::Prime(p)
                }
                _ => return Err(parse_err(no, format!("expected `Q` or `F <p>`, found {:?}", rest.trim()))),
            });
        } else if let Some(rest) = line.strip_prefix("poset:") {
            let r = rest.trim();
            if r.is_empty() {
                return Err(parse_err(no, "empty poset path"));
            }
            poset = Some(PathBuf::from(r));
        } else if let Some(rest) = line.strip_prefix("dim:") {
            dim = Some(rest.trim().parse::<usize>().map_err(|_| parse_err(no, format!("bad dimension {:?}", rest.trim())))?);
        } else if let Some(rest) = line.strip_prefix("space") {
            let (label, body) = rest
                .split_once(':')
                .ok_or_else(|| parse_err(no, "expected `space <label>: v1; v2`"))?;
            let label = label.trim();
            if label.is_empty() || !rest.starts_with(char::is_whitespace) {
                return Err(parse_err(no, "expected `space <label>: v1; v2`"));
            }
            let vectors = body
                .split(';')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| v.split(',').map(|x| x.trim().to_string()).collect())
                .collect();
            spans.push((no, label.to_string(), vectors));
        } else {
            return Err(parse_err(no, format!("unrecognized line {line:?}")));
        }
    }
    Ok(SspFile {
        field: field.ok_or_else(|| parse_err(1, "missing `field:`"))?,
        poset: poset.ok_or_else(|| parse_err(1, "missing `poset:`"))?,
        dim: dim.ok_or_else(|| parse_err(1, "missing `dim:`"))?,
        spans,
    })
}

impl SspFile {
    /// Builds the space over `poset`; monotonicity is validated.
    pub fn build<F: Field>(&self, field: F, poset: Arc<Poset>) -> Result<SSpace<F>> {
        let mut spaces = vec![Subspace::zero(&field, self.dim); poset.len()];
        let mut seen = vec![false; poset.len()];
        for (no, label, vectors) in &self.spans {
            let s = poset.index_of(label)?;
            if std::mem::replace(&mut seen[s], true) {
                return Err(parse_err(*no, format!("subspace for {label} given twice")));
            }
            let mut vs = Vec::with_capacity(vectors.len());
            for v in vectors {
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: v.len(),
                    });
                }
                let elems = v
                    .iter()
                    .map(|x| field.parse_elem(x))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| parse_err(*no, e.to_string()))?;
                vs.push(elems);
            }
            spaces[s] = Subspace::from_vectors(&field, self.dim, vs)?;
        }
        SSpace::new(poset, field, self.dim, spaces)
    }
}

/// A space read from disk, over whichever field its header names.
#[derive(Debug, Clone)]
pub enum AnySpace {
    Rational(SSpace<Rationals>),
    Prime(SSpace<PrimeField>),
}

impl AnySpace {
    pub fn poset(&self) -> &Arc<Poset> {
        match self {
            AnySpace::Rational(v) => v.poset(),
            AnySpace::Prime(v) => v.poset(),
        }
    }
    pub fn dim(&self) -> usize {
        match self {
            AnySpace::Rational(v) => v.dim(),
            AnySpace::Prime(v) => v.dim(),
        }
    }
}

/// Reads a `.ssp` file and the `.poset` it names (relative to the file).
pub fn read_ssp(path: &Path) -> Result<(AnySpace, PathBuf)> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file = parse_ssp(&text)?;
    let poset_path = path.parent().unwrap_or(Path::new(".")).join(&file.poset);
    let poset = Arc::new(read_poset(&poset_path)?);
    let space = match file.field {
        FieldKind::Rationals => AnySpace::Rational(file.build(Rationals, poset)?),
        FieldKind::Prime(p) => AnySpace::Prime(file.build(PrimeField::new(p)?, poset)?),
    };
    Ok((space, poset_path))
}

/// Writes a `.ssp` file referring to `poset_ref`; every element gets a line,
/// with the canonical basis of its subspace.
pub fn write_ssp<F: Field>(v: &SSpace<F>, poset_ref: &str) -> String {
    let field = v.field();
    let mut out = format!("field: {}\nposet: {poset_ref}\ndim: {}\n", field.kind(), v.dim());
    for s in v.poset().elements() {
        let vecs: Vec<String> = v
            .space(s)
            .basis_vectors()
            .iter()
            .map(|x| x.iter().map(|e| field.format_elem(e)).collect::<Vec<_>>().join(","))
            .collect();
        let body = vecs.join("; ");
        if body.is_empty() {
            out.push_str(&format!("space {}:\n", v.poset().label(s)));
        } else {
            out.push_str(&format!("space {}: {body}\n", v.poset().label(s)));
        }
    }
    out
}
