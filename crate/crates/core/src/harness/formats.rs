//! On-disk formats: polytope and coefficient files (JSON) and CSV output with
//! `#` comment headers.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{h_from_vertices, HPolytope, TriangularPiece, VPolytope};
use crate::spectral::TrigPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HBlock {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VBlock {
    pub vertices: Vec<Vec<f64>>,
}

/// `{"dim": d, "H": {"A": [...], "b": [...]}}` or
/// `{"dim": d, "V": {"vertices": [...]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HBlock>,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    pub v: Option<VBlock>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &HPolytope) -> Self {
        Self {
            dim: p.dim(),
            h: Some(HBlock {
                a: p.rows().iter().map(|r| r.normal.clone()).collect(),
                b: p.rows().iter().map(|r| r.offset).collect(),
            }),
            v: None,
        }
    }

    /// Normalized H-form. Inputs with d <= 3 are also checked for
    /// boundedness and irredundancy.
    pub fn to_polytope(&self) -> Result<HPolytope> {
        let p = match (&self.h, &self.v) {
            (Some(h), None) => HPolytope::new(self.dim, h.a.clone(), h.b.clone())?,
            (None, Some(v)) => h_from_vertices(&VPolytope::new(self.dim, v.vertices.clone())?)?,
            _ => {
                return Err(Error::InvalidInput(
                    "polytope file needs exactly one of \"H\" and \"V\"".into(),
                ))
            }
        };
        if p.dim() <= 3 {
            p.validate()?;
        }
        Ok(p)
    }
}

pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    serde_json::from_str::<PolytopeFile>(text)?.to_polytope()
}

pub fn read_polytope(path: &Path) -> Result<HPolytope> {
    parse_polytope(&fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub n: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// `{"dim": d, "coeffs": [{"n": [...], "re": r, "im": i}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffFile {
    pub dim: usize,
    pub coeffs: Vec<CoeffEntry>,
}

impl CoeffFile {
    pub fn from_polynomial(f: &TrigPolynomial) -> Self {
        Self {
            dim: f.dim(),
            coeffs: f
                .coeffs()
                .iter()
                .map(|(n, c)| CoeffEntry {
                    n: n.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<TrigPolynomial> {
        TrigPolynomial::new(
            self.dim,
            self.coeffs
                .iter()
                .map(|e| (e.n.clone(), Complex64::new(e.re, e.im))),
        )
    }
}

pub fn parse_coeffs(text: &str) -> Result<TrigPolynomial> {
    serde_json::from_str::<CoeffFile>(text)?.to_polynomial()
}

pub fn read_coeffs(path: &Path) -> Result<TrigPolynomial> {
    parse_coeffs(&fs::read_to_string(path)?)
}

/// Output of the `triangulate` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecesFile {
    pub dim: usize,
    pub pieces: Vec<TriangularPiece>,
}

/// A CSV document assembled in memory so that a failed run never leaves a
/// partial file behind.
#[derive(Debug, Clone, Default)]
pub struct CsvDoc {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn new(header: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.header.len());
        self.rows.push(fields);
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Shortest representation that parses back to the same value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_file() {
        let p = parse_polytope(r#"{"dim": 2, "H": {"A": [[2,0],[-1,0],[0,1],[0,-1]], "b": [2,1,1,1]}}"#).unwrap();
        assert_eq!(p, HPolytope::cube(2, 1.0).unwrap());
    }

    #[test]
    fn v_file() {
        let p = parse_polytope(r#"{"dim": 2, "V": {"vertices": [[1,0],[0,1],[-1,0],[0,-1]]}}"#).unwrap();
        assert_eq!(p.num_rows(), 4);
        assert_eq!(p.gauge(&[1.0, 2.0]).unwrap(), 3.0);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_polytope(r#"{"dim": 2}"#).is_err());
        assert!(parse_polytope(r#"{"dim": 1, "H": {"A": [[1]], "b": [1]}, "V": {"vertices": [[1],[-1]]}}"#).is_err());
        assert!(parse_polytope(r#"{"dim": 2, "H": {"A": [[1,0],[0,1]], "b": [1,1]}}"#).is_err());
        assert!(parse_polytope(r#"{"dim": 2, "H": {"A": [[1,0]"#).is_err());
        assert!(parse_polytope(r#"{"dim": 1, "H": {"A": [[1],[-1]], "b": [1,-1]}}"#).is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let text = r#"{"dim": 2, "coeffs": [{"n": [0, 0], "re": 1.5, "im": 0}, {"n": [-1, 2], "re": 0.25, "im": -3}]}"#;
        let f = parse_coeffs(text).unwrap();
        assert_eq!(f.coeff(&[-1, 2]), Complex64::new(0.25, -3.0));
        let again = CoeffFile::from_polynomial(&f).to_polynomial().unwrap();
        assert_eq!(again, f);
        assert!(parse_coeffs(r#"{"dim": 2, "coeffs": [{"n": [0], "re": 1, "im": 0}]}"#).is_err());
    }

    #[test]
    fn csv_with_comments() {
        let mut doc = CsvDoc::new(&["a", "b"]);
        doc.comment("seed = 42");
        doc.row(vec!["1".into(), fmt_f64(0.5)]);
        assert_eq!(doc.render().unwrap(), "# seed = 42\na,b\n1,0.5\n");
    }
}
