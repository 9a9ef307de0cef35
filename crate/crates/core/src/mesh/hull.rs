//! Prismatic hull with a superelliptic bow and a hollow interior.
//!
//! Frame: `x` along the length (bow toward `+x`, midship at `x = 0`), `y`
//! across the beam, `z` up with the keel at `z = 0`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{MeshError, TriMesh};

/// Points on each straight aft side of the planform.
const SIDE_SEGMENTS: usize = 8;
/// Segments along the bow curve.
const BOW_SEGMENTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullParams {
    pub length: f64,
    pub beam: f64,
    pub depth: f64,
    pub wall_thickness: f64,
    /// Superellipse exponent of the bow planform (2 gives an ellipse).
    pub bow_exponent: f64,
    pub deck_open: bool,
}

impl Default for HullParams {
    fn default() -> Self {
        Self {
            length: 0.40,
            beam: 0.22,
            depth: 0.10,
            wall_thickness: 0.003,
            bow_exponent: 2.5,
            deck_open: true,
        }
    }
}

impl HullParams {
    pub fn validate(&self) -> Result<(), MeshError> {
        for (name, v) in [
            ("length", self.length),
            ("beam", self.beam),
            ("depth", self.depth),
            ("wall_thickness", self.wall_thickness),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(MeshError::HullParameter(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        let limit = 0.5 * self.beam.min(self.depth).min(self.length);
        if self.wall_thickness >= limit {
            return Err(MeshError::HullParameter(format!(
                "wall_thickness {} must be below half the smallest dimension ({limit})",
                self.wall_thickness
            )));
        }
        if !(self.bow_exponent.is_finite() && self.bow_exponent >= 1.0) {
            return Err(MeshError::HullParameter(format!(
                "bow_exponent must be >= 1, got {}",
                self.bow_exponent
            )));
        }
        Ok(())
    }
}

/// Closed planform outline, counter-clockwise seen from above.
///
/// Aft of midship the sides are straight at `y = ±half_beam` back to a flat
/// transom at `x = -half_length`; forward the outline follows
/// `|x / half_length|^n + |y / half_beam|^n = 1`.
pub fn planform(half_length: f64, half_beam: f64, exponent: f64) -> Vec<[f64; 2]> {
    let mut ring = Vec::with_capacity(2 * SIDE_SEGMENTS + BOW_SEGMENTS + 1);
    let step = half_length / SIDE_SEGMENTS as f64;
    for i in 0..SIDE_SEGMENTS {
        ring.push([-half_length + step * i as f64, -half_beam]);
    }
    let e = 2.0 / exponent;
    for j in 0..=BOW_SEGMENTS {
        let theta = -FRAC_PI_2 + std::f64::consts::PI * j as f64 / BOW_SEGMENTS as f64;
        let (s, c) = theta.sin_cos();
        let x = if j == 0 || j == BOW_SEGMENTS {
            0.0
        } else {
            half_length * c.abs().powf(e)
        };
        let y = if j == BOW_SEGMENTS / 2 {
            0.0
        } else {
            half_beam * s.signum() * s.abs().powf(e)
        };
        ring.push([x, y]);
    }
    for i in 1..=SIDE_SEGMENTS {
        ring.push([-step * i as f64, half_beam]);
    }
    ring
}

pub fn planform_area(ring: &[[f64; 2]]) -> f64 {
    let n = ring.len();
    0.5 * (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
}

struct Builder {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
}

impl Builder {
    /// Adds the ring at height `z`, returning the index of its first vertex.
    fn ring(&mut self, outline: &[[f64; 2]], z: f64) -> usize {
        let base = self.vertices.len();
        self.vertices
            .extend(outline.iter().map(|&[x, y]| [x, y, z]));
        base
    }

    /// Quad strip from ring `a` to ring `b`; faces point along `t × (b − a)`
    /// where `t` is the ring's counter-clockwise tangent.
    fn strip(&mut self, a: usize, b: usize, n: usize) {
        for j in 0..n {
            let k = (j + 1) % n;
            self.triangles.push([a + j, a + k, b + k]);
            self.triangles.push([a + j, b + k, b + j]);
        }
    }

    /// Centroid fan over a ring, facing `+z` when `up`.
    fn cap(&mut self, ring: usize, n: usize, up: bool) {
        let (sx, sy, z) = self.vertices[ring..ring + n]
            .iter()
            .fold((0.0, 0.0, 0.0), |(sx, sy, _), v| {
                (sx + v[0], sy + v[1], v[2])
            });
        let center = self.vertices.len();
        self.vertices.push([sx / n as f64, sy / n as f64, z]);
        for j in 0..n {
            let k = (j + 1) % n;
            if up {
                self.triangles.push([center, ring + j, ring + k]);
            } else {
                self.triangles.push([center, ring + k, ring + j]);
            }
        }
    }

    fn closed_prism(&mut self, outline: &[[f64; 2]], z0: f64, z1: f64, inward: bool) {
        let n = outline.len();
        let lo = self.ring(outline, z0);
        let hi = self.ring(outline, z1);
        if inward {
            self.strip(hi, lo, n);
        } else {
            self.strip(lo, hi, n);
        }
        self.cap(lo, n, inward);
        self.cap(hi, n, !inward);
    }

    fn finish(self) -> Result<TriMesh, MeshError> {
        TriMesh::new(self.vertices, self.triangles)
    }
}

fn outer_outline(params: &HullParams) -> Vec<[f64; 2]> {
    planform(0.5 * params.length, 0.5 * params.beam, params.bow_exponent)
}

/// Cavity outline: both semi-axes and the aft length reduced by the wall thickness.
fn inner_outline(params: &HullParams) -> Vec<[f64; 2]> {
    let t = params.wall_thickness;
    planform(
        0.5 * params.length - t,
        0.5 * params.beam - t,
        params.bow_exponent,
    )
}

/// Hollow hull solid.
///
/// With `deck_open` the cavity is open to the top and the outer and inner
/// walls meet at a deck rim; otherwise the deck is closed with the wall
/// thickness and the result has an inner void shell.
pub fn generate_hull(params: &HullParams) -> Result<TriMesh, MeshError> {
    params.validate()?;
    let outer = outer_outline(params);
    let inner = inner_outline(params);
    let n = outer.len();
    let (t, d) = (params.wall_thickness, params.depth);
    let mut b = Builder {
        vertices: Vec::new(),
        triangles: Vec::new(),
    };

    if params.deck_open {
        let outer_keel = b.ring(&outer, 0.0);
        let outer_deck = b.ring(&outer, d);
        let inner_deck = b.ring(&inner, d);
        let inner_floor = b.ring(&inner, t);
        b.strip(outer_keel, outer_deck, n);
        b.cap(outer_keel, n, false);
        b.strip(outer_deck, inner_deck, n);
        b.strip(inner_deck, inner_floor, n);
        b.cap(inner_floor, n, true);
    } else {
        b.closed_prism(&outer, 0.0, d, false);
        b.closed_prism(&inner, t, d - t, true);
    }
    b.finish()
}

/// Outer envelope as a closed solid: the volume that displaces water.
pub fn hull_envelope(params: &HullParams) -> Result<TriMesh, MeshError> {
    params.validate()?;
    let mut b = Builder {
        vertices: Vec::new(),
        triangles: Vec::new(),
    };
    b.closed_prism(&outer_outline(params), 0.0, params.depth, false);
    b.finish()
}

/// Material volume of the hull shell from the planform areas (m³).
pub fn shell_volume(params: &HullParams) -> f64 {
    let outer = planform_area(&outer_outline(params)) * params.depth;
    let t = params.wall_thickness;
    let cavity_height = if params.deck_open {
        params.depth - t
    } else {
        params.depth - 2.0 * t
    };
    outer - planform_area(&inner_outline(params)) * cavity_height
}
