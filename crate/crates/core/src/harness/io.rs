//! Line-oriented subdivision files.
//!
//! ```text
//! SUBDIV 1
//! # optional bounding square: lower-left corner and side
//! b 0 0 1
//! v 0 0 0
//! v 1 1 0
//! v 2 1 1
//! v 3 0 1
//! f 0 1.0 0 1 2 3
//! ```
//!
//! Face vertex lists are counter-clockwise. Ids are arbitrary non-negative
//! integers; faces are stored in file order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{Point, SimplePolygon};
use crate::subdivision::{Bounds, Face, Subdivision};

pub const FORMAT_VERSION: u32 = 1;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    t.parse().map_err(|_| perr(line, format!("bad {what} `{t}`")))
}

pub fn parse_subdivision(text: &str) -> Result<Subdivision> {
    let mut header = false;
    let mut verts: HashMap<u64, Point> = HashMap::new();
    let mut bounds = None;
    let mut faces = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tok = body.split_whitespace();
        let tag = tok.next().unwrap();
        if !header {
            if tag != "SUBDIV" {
                return Err(perr(line, "expected header `SUBDIV 1`"));
            }
            let v: u32 = num(tok.next(), line, "format version")?;
            if v != FORMAT_VERSION {
                return Err(perr(line, format!("unsupported format version {v}")));
            }
            header = true;
            continue;
        }
        match tag {
            "v" => {
                let id: u64 = num(tok.next(), line, "vertex id")?;
                let x: f64 = num(tok.next(), line, "x")?;
                let y: f64 = num(tok.next(), line, "y")?;
                let p = Point::checked(x, y).map_err(|e| perr(line, e.to_string()))?;
                if verts.insert(id, p).is_some() {
                    return Err(perr(line, format!("duplicate vertex id {id}")));
                }
            }
            "f" => {
                let _id: u64 = num(tok.next(), line, "face id")?;
                let gamma: f64 = num(tok.next(), line, "gamma")?;
                let mut ring = Vec::new();
                for t in tok.by_ref() {
                    let id: u64 = t.parse().map_err(|_| perr(line, format!("bad vertex id `{t}`")))?;
                    ring.push(*verts.get(&id).ok_or_else(|| perr(line, format!("unknown vertex {id}")))?);
                }
                let polygon = SimplePolygon::new(ring).map_err(|e| perr(line, e.to_string()))?;
                faces.push(Face { polygon, gamma });
            }
            "b" => {
                let x: f64 = num(tok.next(), line, "x")?;
                let y: f64 = num(tok.next(), line, "y")?;
                let size: f64 = num(tok.next(), line, "size")?;
                if !(size > 0.0 && size.is_finite()) {
                    return Err(perr(line, "bounding square side must be positive"));
                }
                bounds = Some(Bounds { min: Point::checked(x, y)?, size });
            }
            _ => return Err(perr(line, format!("unknown record `{tag}`"))),
        }
        if tok.next().is_some() && tag != "f" {
            return Err(perr(line, "trailing tokens"));
        }
    }
    if !header {
        return Err(perr(1, "empty file"));
    }
    Subdivision::new(faces, bounds)
}

pub fn load_subdivision(path: impl AsRef<Path>) -> Result<Subdivision> {
    parse_subdivision(&std::fs::read_to_string(path)?)
}

/// Text form with shared vertices and the bounding square.
pub fn format_subdivision(sub: &Subdivision) -> String {
    let mut ids: HashMap<(u64, u64), usize> = HashMap::new();
    let mut verts = Vec::new();
    let mut face_ids = Vec::new();
    for f in sub.faces() {
        let ring: Vec<usize> = f
            .polygon
            .vertices()
            .iter()
            .map(|p| {
                *ids.entry((p.x.to_bits(), p.y.to_bits())).or_insert_with(|| {
                    verts.push(*p);
                    verts.len() - 1
                })
            })
            .collect();
        face_ids.push(ring);
    }
    let mut s = String::new();
    let b = sub.bounds();
    let _ = writeln!(s, "SUBDIV {FORMAT_VERSION}");
    let _ = writeln!(s, "# {} faces, {} vertices, {} edges", sub.faces().len(), verts.len(), sub.n());
    let _ = writeln!(s, "b {} {} {}", b.min.x, b.min.y, b.size);
    for (i, p) in verts.iter().enumerate() {
        let _ = writeln!(s, "v {i} {} {}", p.x, p.y);
    }
    for (i, (f, ring)) in sub.faces().iter().zip(&face_ids).enumerate() {
        let _ = write!(s, "f {i} {}", f.gamma);
        for v in ring {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn save_subdivision(sub: &Subdivision, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_subdivision(sub))?;
    Ok(())
}
