//! Edge-list text format and atomic file output.
//!
//! ```text
//! n m
//! u v      (m lines, u < v)
//! ```
//!
//! The reader also accepts `u > v` on an edge line, but rejects self-loops,
//! duplicate edges in either orientation, out-of-range endpoints and an edge
//! count that disagrees with the header. Blank lines and lines starting with
//! `#` are skipped.

use std::fs;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::ProductVertexMap;

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut seen = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        let mut fields = text.split_whitespace();
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(parse_err(format!("expected two integers, got '{text}'"))),
        };
        let a: usize = a.parse().map_err(|_| parse_err(format!("bad integer '{a}'")))?;
        let b: usize = b.parse().map_err(|_| parse_err(format!("bad integer '{b}'")))?;
        match header {
            None => {
                header = Some((a, b));
                g = Graph::empty(a);
            }
            Some((n, m)) => {
                if a >= n || b >= n {
                    return Err(parse_err(format!("edge {a} {b} out of range for n = {n}")));
                }
                if a == b {
                    return Err(parse_err(format!("self-loop at {a}")));
                }
                if seen == m {
                    return Err(parse_err(format!("more than the {m} declared edges")));
                }
                if !g.add_edge(a, b)? {
                    return Err(parse_err(format!("duplicate edge {a} {b}")));
                }
                seen += 1;
            }
        }
    }
    match header {
        None => Err(Error::Parse {
            line: 0,
            msg: "missing 'n m' header".into(),
        }),
        Some((_, m)) if seen != m => Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {seen}"),
        }),
        Some(_) => Ok(g),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes())
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    let file = fs::File::open(path)?;
    read_edge_list(std::io::BufReader::new(file))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

/// Sidecar mapping for a product: one `index u v` line per product vertex.
pub fn write_vertex_map<W: Write>(map: &ProductVertexMap, mut w: W) -> Result<()> {
    for idx in 0..map.len() {
        let (u, v) = map.pair(idx);
        writeln!(w, "{idx} {u} {v}")?;
    }
    Ok(())
}

/// Writes `path` through a temporary file in the same directory and renames
/// it into place, so a failed writer never leaves a partial file behind.
pub fn write_atomic<F>(path: impl AsRef<Path>, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        write(&mut w)?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
