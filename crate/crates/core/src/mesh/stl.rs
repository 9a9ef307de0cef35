//! STL reading and writing.
//!
//! Binary layout: 80-byte header, little-endian `u32` triangle count, then
//! 50 bytes per triangle (normal and three vertices as little-endian `f32`,
//! followed by a zero `u16` attribute). Import merges vertices whose `f32`
//! coordinates are bit-identical, so exporting and re-importing a mesh
//! reproduces its topology exactly.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{MeshError, TriMesh};

const HEADER: &[u8] = b"binary STL written by vesselkit";
const HEADER_LEN: usize = 80;
const RECORD_LEN: usize = 50;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StlFormat {
    #[default]
    Binary,
    Ascii,
}

fn normal_f32(mesh: &TriMesh, t: usize) -> [f32; 3] {
    mesh.normal(t).map(|c| c as f32)
}

pub fn export_stl(mesh: &TriMesh, format: StlFormat) -> Vec<u8> {
    match format {
        StlFormat::Binary => export_binary(mesh),
        StlFormat::Ascii => export_ascii(mesh, "vesselkit").into_bytes(),
    }
}

fn export_binary(mesh: &TriMesh) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 + RECORD_LEN * mesh.triangle_count());
    out.extend_from_slice(HEADER);
    out.resize(HEADER_LEN, 0);
    out.extend_from_slice(&(mesh.triangle_count() as u32).to_le_bytes());
    for t in 0..mesh.triangle_count() {
        for c in normal_f32(mesh, t) {
            out.extend_from_slice(&c.to_le_bytes());
        }
        for v in mesh.corners(t) {
            for c in v {
                out.extend_from_slice(&(c as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    out
}

fn export_ascii(mesh: &TriMesh, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "solid {name}");
    for t in 0..mesh.triangle_count() {
        let [nx, ny, nz] = normal_f32(mesh, t);
        let _ = writeln!(s, "  facet normal {nx:e} {ny:e} {nz:e}");
        s.push_str("    outer loop\n");
        for v in mesh.corners(t) {
            let [x, y, z] = v.map(|c| c as f32);
            let _ = writeln!(s, "      vertex {x:e} {y:e} {z:e}");
        }
        s.push_str("    endloop\n  endfacet\n");
    }
    let _ = writeln!(s, "endsolid {name}");
    s
}

/// Reads binary or ASCII STL. A stream whose length matches the binary
/// record count is read as binary even if its header starts with `solid`.
pub fn import_stl(bytes: &[u8]) -> Result<TriMesh, MeshError> {
    if bytes.len() >= HEADER_LEN + 4 {
        let count =
            u32::from_le_bytes(bytes[HEADER_LEN..HEADER_LEN + 4].try_into().unwrap()) as usize;
        if count
            .checked_mul(RECORD_LEN)
            .and_then(|n| n.checked_add(HEADER_LEN + 4))
            == Some(bytes.len())
        {
            return import_binary(bytes, count);
        }
    }
    if bytes.starts_with(b"solid") {
        return import_ascii(bytes);
    }
    if bytes.len() < HEADER_LEN + 4 {
        return Err(MeshError::Parse {
            offset: bytes.len(),
            message: format!(
                "truncated binary STL: {} bytes, header needs {}",
                bytes.len(),
                HEADER_LEN + 4
            ),
        });
    }
    let count = u32::from_le_bytes(bytes[HEADER_LEN..HEADER_LEN + 4].try_into().unwrap()) as usize;
    Err(MeshError::Parse {
        offset: HEADER_LEN,
        message: format!(
            "triangle count {count} implies {} bytes, stream has {}",
            (HEADER_LEN + 4) as u128 + RECORD_LEN as u128 * count as u128,
            bytes.len()
        ),
    })
}

#[derive(Default)]
struct VertexPool {
    index: HashMap<[u32; 3], usize>,
    vertices: Vec<[f64; 3]>,
}

impl VertexPool {
    fn insert(&mut self, v: [f32; 3]) -> usize {
        // +0.0 and -0.0 are the same point.
        let key = v.map(|c| if c == 0.0 { 0u32 } else { c.to_bits() });
        *self.index.entry(key).or_insert_with(|| {
            self.vertices.push(v.map(f64::from));
            self.vertices.len() - 1
        })
    }
}

fn finish(
    pool: VertexPool,
    triangles: Vec<[usize; 3]>,
    offsets: &[usize],
) -> Result<TriMesh, MeshError> {
    TriMesh::new(pool.vertices, triangles).map_err(|e| match e {
        MeshError::DegenerateTriangle { triangle } => MeshError::Parse {
            offset: offsets[triangle],
            message: format!("triangle {triangle} is degenerate"),
        },
        other => other,
    })
}

fn import_binary(bytes: &[u8], count: usize) -> Result<TriMesh, MeshError> {
    let mut pool = VertexPool::default();
    let mut triangles = Vec::with_capacity(count);
    let mut offsets = Vec::with_capacity(count);
    for t in 0..count {
        let start = HEADER_LEN + 4 + t * RECORD_LEN;
        let f = |k: usize| {
            let o = start + 12 + 4 * k;
            f32::from_le_bytes(bytes[o..o + 4].try_into().unwrap())
        };
        let mut tri = [0usize; 3];
        for (v, slot) in tri.iter_mut().enumerate() {
            let p = [f(3 * v), f(3 * v + 1), f(3 * v + 2)];
            if p.iter().any(|c| !c.is_finite()) {
                return Err(MeshError::Parse {
                    offset: start + 12 + 12 * v,
                    message: "non-finite vertex".into(),
                });
            }
            *slot = pool.insert(p);
        }
        triangles.push(tri);
        offsets.push(start);
    }
    finish(pool, triangles, &offsets)
}

struct Tokens<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let rest = &self.text[self.pos..];
        let skip = rest.len() - rest.trim_start().len();
        let start = self.pos + skip;
        let rest = &self.text[start..];
        if rest.is_empty() {
            self.pos = start;
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        self.pos = start + len;
        Some((start, &rest[..len]))
    }

    fn skip_line(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.find('\n').map_or(rest.len(), |i| i + 1);
    }

    fn expect(&mut self, word: &str) -> Result<usize, MeshError> {
        match self.next() {
            Some((at, tok)) if tok.eq_ignore_ascii_case(word) => Ok(at),
            Some((at, tok)) => Err(MeshError::Parse {
                offset: at,
                message: format!("expected `{word}`, found `{tok}`"),
            }),
            None => Err(MeshError::Parse {
                offset: self.pos,
                message: format!("expected `{word}`, found end of file"),
            }),
        }
    }

    fn float(&mut self) -> Result<f32, MeshError> {
        match self.next() {
            Some((at, tok)) => tok
                .parse::<f32>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| MeshError::Parse {
                    offset: at,
                    message: format!("invalid number `{tok}`"),
                }),
            None => Err(MeshError::Parse {
                offset: self.pos,
                message: "expected number, found end of file".into(),
            }),
        }
    }
}

fn import_ascii(bytes: &[u8]) -> Result<TriMesh, MeshError> {
    let text = std::str::from_utf8(bytes).map_err(|e| MeshError::Parse {
        offset: e.valid_up_to(),
        message: "ASCII STL is not valid UTF-8".into(),
    })?;
    let mut tokens = Tokens { text, pos: 0 };
    tokens.expect("solid")?;
    tokens.skip_line();
    let mut pool = VertexPool::default();
    let mut triangles = Vec::new();
    let mut offsets = Vec::new();
    loop {
        match tokens.next() {
            Some((at, tok)) if tok.eq_ignore_ascii_case("facet") => {
                tokens.expect("normal")?;
                for _ in 0..3 {
                    tokens.float()?;
                }
                tokens.expect("outer")?;
                tokens.expect("loop")?;
                let mut tri = [0usize; 3];
                for slot in &mut tri {
                    tokens.expect("vertex")?;
                    let p = [tokens.float()?, tokens.float()?, tokens.float()?];
                    *slot = pool.insert(p);
                }
                tokens.expect("endloop")?;
                tokens.expect("endfacet")?;
                triangles.push(tri);
                offsets.push(at);
            }
            Some((_, tok)) if tok.eq_ignore_ascii_case("endsolid") => break,
            Some((at, tok)) => {
                return Err(MeshError::Parse {
                    offset: at,
                    message: format!("expected `facet` or `endsolid`, found `{tok}`"),
                })
            }
            None => {
                return Err(MeshError::Parse {
                    offset: text.len(),
                    message: "missing `endsolid`".into(),
                })
            }
        }
    }
    finish(pool, triangles, &offsets)
}
