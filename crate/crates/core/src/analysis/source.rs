use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graph::{gen_dual_polar, gen_hamming, graph6::parse_graph6, Graph};

/// Where a graph comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Hamming { d: usize, n: usize },
    DualPolar { d: usize, q: u64 },
    File(PathBuf),
    /// An in-memory graph6 string or a graph built by the caller.
    Inline(String),
}

impl GraphSource {
    /// Parses `hamming D N`, `dualpolar D q` or `file:PATH`.
    pub fn parse(tokens: &[String]) -> Result<Self> {
        let num = |s: &String, what: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::Argument(format!("{what} must be a nonnegative integer, got {s:?}")))
        };
        match tokens {
            [family, d, n] if family == "hamming" => Ok(GraphSource::Hamming {
                d: num(d, "D")? as usize,
                n: num(n, "N")? as usize,
            }),
            [family, d, q] if family == "dualpolar" => Ok(GraphSource::DualPolar {
                d: num(d, "D")? as usize,
                q: num(q, "q")?,
            }),
            [path] if path.starts_with("file:") => {
                Ok(GraphSource::File(PathBuf::from(&path["file:".len()..])))
            }
            _ => Err(Error::Argument(format!(
                "unrecognised graph source {:?}; expected `hamming D N`, `dualpolar D q` or `file:PATH`",
                tokens.join(" ")
            ))),
        }
    }

    pub fn load(&self, size_cap: usize) -> Result<Graph> {
        let graph = match self {
            GraphSource::Hamming { d, n } => gen_hamming(*d, *n, size_cap)?,
            GraphSource::DualPolar { d, q } => gen_dual_polar(*d, *q, size_cap)?,
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Argument(format!("cannot read {}: {e}", path.display()))
                })?;
                let line = text
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .ok_or_else(|| Error::Parse {
                        offset: 0,
                        message: "file contains no graph6 line".into(),
                    })?;
                parse_graph6(line.trim())?
            }
            GraphSource::Inline(g6) => parse_graph6(g6)?,
        };
        if graph.vertex_count() > size_cap {
            return Err(Error::Capacity {
                requested: graph.vertex_count() as u128,
                cap: size_cap,
            });
        }
        Ok(graph)
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Hamming { d, n } => write!(f, "hamming {d} {n}"),
            GraphSource::DualPolar { d, q } => write!(f, "dualpolar {d} {q}"),
            GraphSource::File(p) => write!(f, "file:{}", p.display()),
            GraphSource::Inline(g6) => write!(f, "graph6:{g6}"),
        }
    }
}
