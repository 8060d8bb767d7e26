//! Reading documents and argument values.

use std::io::Read;
use std::path::{Path, PathBuf};

use rigidity_kit::io::{self, BracedDoc, FrameworkDoc, GraphDoc};
use rigidity_kit::{BracedGraph, Framework, Graph, Rational, VertexId};
use serde_json::Value;

use crate::CliError;

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn create_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Which document a JSON text holds, told apart by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Graph,
    Braced,
    Framework,
}

pub fn doc_kind(text: &str) -> Result<DocKind, CliError> {
    let v: Value = serde_json::from_str(text).map_err(rigidity_kit::Error::from)?;
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("graph") {
        DocKind::Framework
    } else if has("braces") {
        DocKind::Braced
    } else {
        DocKind::Graph
    })
}

/// A graph, a braced graph or a framework, with what each carries.
pub struct Loaded {
    pub braced: BracedGraph,
    pub framework: Option<Framework>,
    pub doc: Option<FrameworkDoc>,
}

impl Loaded {
    pub fn base(&self) -> &Graph {
        self.braced.base()
    }

    /// The graph with braces added as edges.
    pub fn full(&self) -> &Graph {
        self.braced.full_graph()
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read_text(path)?;
    Ok(match doc_kind(&text)? {
        DocKind::Graph => Loaded {
            braced: BracedGraph::unbraced(io::parse::<GraphDoc>(&text)?.to_graph()?)?,
            framework: None,
            doc: None,
        },
        DocKind::Braced => {
            let doc = io::parse::<BracedDoc>(&text)?;
            Loaded {
                braced: doc.to_braced()?,
                framework: doc.to_framework()?,
                doc: None,
            }
        }
        DocKind::Framework => {
            let doc = io::parse::<FrameworkDoc>(&text)?;
            Loaded {
                braced: doc.to_braced()?,
                framework: Some(doc.to_framework()?),
                doc: Some(doc),
            }
        }
    })
}

pub fn load_framework(path: &Path) -> Result<(Framework, BracedGraph), CliError> {
    let l = load(path)?;
    match l.framework {
        Some(f) => Ok((f, l.braced)),
        None => Err(CliError::Usage(format!(
            "{} has no placement",
            path.display()
        ))),
    }
}

pub fn load_doc<T: serde::de::DeserializeOwned + io::Tagged>(path: &Path) -> Result<T, CliError> {
    Ok(io::parse(&read_text(path)?)?)
}

/// Rational from `p/q`, an integer or a decimal such as `-0.15`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if s.contains('/') {
        return s.parse::<Rational>().map_err(|_| bad());
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(bad());
    }
    let numer: i128 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let r = Rational::new(numer, 10i128.pow(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

pub fn parse_list<T, F: Fn(&str) -> Result<T, String>>(s: &str, f: F) -> Result<Vec<T>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| f(p.trim()))
        .collect()
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("not a number: {s:?}"))
}

/// Index of a vertex named on the command line, or `default` when absent.
pub fn vertex_index(g: &Graph, v: Option<&str>, default: usize) -> Result<usize, CliError> {
    match v {
        None => Ok(default),
        Some(s) => Ok(g.require_index(&VertexId::parse(s))?),
    }
}

pub fn out_path(dir: &Path, prefix: &str, i: usize, count: usize) -> PathBuf {
    let width = count.saturating_sub(1).to_string().len().max(3);
    dir.join(format!("{prefix}_{i:0width$}.svg"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/5").unwrap(), Rational::new(1, 5));
        assert_eq!(parse_rational("-0.15").unwrap(), Rational::new(-3, 20));
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("-").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn kinds() {
        assert_eq!(
            doc_kind(r#"{"vertices":[],"edges":[]}"#).unwrap(),
            DocKind::Graph
        );
        assert_eq!(doc_kind(r#"{"braces":[]}"#).unwrap(), DocKind::Braced);
        assert_eq!(doc_kind(r#"{"graph":{}}"#).unwrap(), DocKind::Framework);
        assert!(doc_kind("[").is_err());
    }

    #[test]
    fn frame_names_sort() {
        let d = Path::new("out");
        assert_eq!(out_path(d, "frame", 3, 6), d.join("frame_003.svg"));
        assert_eq!(out_path(d, "frame", 3, 2000), d.join("frame_0003.svg"));
    }
}
