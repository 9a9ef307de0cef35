use std::fmt;

use super::{is_watertight, mesh_volume, MeshError};

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Indexed triangle mesh in meters.
///
/// Construction checks index ranges and rejects zero-area triangles; the
/// mesh cannot be mutated afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct TriMesh {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<[f64; 3]>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= vertices.len()) {
                return Err(MeshError::IndexOutOfRange {
                    triangle: t,
                    index,
                    vertex_count: vertices.len(),
                });
            }
            let [a, b, c] = tri.map(|i| vertices[i]);
            let n = cross(sub(b, a), sub(c, a));
            if n == [0.0; 3] || !dot(n, n).is_finite() {
                return Err(MeshError::DegenerateTriangle { triangle: t });
            }
        }
        Ok(Self {
            vertices,
            triangles,
        })
    }

    /// Axis-aligned box with outward-facing triangles (12 triangles, 8 vertices).
    pub fn cuboid(min: [f64; 3], max: [f64; 3]) -> Result<Self, MeshError> {
        let [x0, y0, z0] = min;
        let [x1, y1, z1] = max;
        let vertices = vec![
            [x0, y0, z0],
            [x1, y0, z0],
            [x1, y1, z0],
            [x0, y1, z0],
            [x0, y0, z1],
            [x1, y0, z1],
            [x1, y1, z1],
            [x0, y1, z1],
        ];
        let triangles = vec![
            [0, 2, 1],
            [0, 3, 2],
            [4, 5, 6],
            [4, 6, 7],
            [0, 1, 5],
            [0, 5, 4],
            [1, 2, 6],
            [1, 6, 5],
            [2, 3, 7],
            [2, 7, 6],
            [3, 0, 4],
            [3, 4, 7],
        ];
        Self::new(vertices, triangles)
    }

    /// Concatenates meshes without merging any vertices.
    pub fn merge(parts: &[TriMesh]) -> TriMesh {
        let mut vertices = Vec::with_capacity(parts.iter().map(|m| m.vertices.len()).sum());
        let mut triangles = Vec::with_capacity(parts.iter().map(|m| m.triangles.len()).sum());
        for part in parts {
            let base = vertices.len();
            vertices.extend_from_slice(&part.vertices);
            triangles.extend(part.triangles.iter().map(|t| t.map(|i| i + base)));
        }
        TriMesh {
            vertices,
            triangles,
        }
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn corners(&self, triangle: usize) -> [[f64; 3]; 3] {
        self.triangles[triangle].map(|i| self.vertices[i])
    }

    /// Unit normal from the right-hand winding.
    pub fn normal(&self, triangle: usize) -> [f64; 3] {
        let [a, b, c] = self.corners(triangle);
        let n = cross(sub(b, a), sub(c, a));
        let len = dot(n, n).sqrt();
        n.map(|v| v / len)
    }

    /// Same surface with every triangle wound the other way.
    pub fn flipped(&self) -> TriMesh {
        TriMesh {
            vertices: self.vertices.clone(),
            triangles: self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect(),
        }
    }

    /// Applies `f` to every vertex. The map must not collapse any triangle.
    pub fn map_vertices(&self, f: impl Fn([f64; 3]) -> [f64; 3]) -> Result<TriMesh, MeshError> {
        TriMesh::new(
            self.vertices.iter().map(|&v| f(v)).collect(),
            self.triangles.clone(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<TriMesh, MeshError> {
        self.map_vertices(|v| v.map(|c| c * factor))
    }

    pub fn bounding_box(&self) -> Option<([f64; 3], [f64; 3])> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), v| {
            (
                [lo[0].min(v[0]), lo[1].min(v[1]), lo[2].min(v[2])],
                [hi[0].max(v[0]), hi[1].max(v[1]), hi[2].max(v[2])],
            )
        }))
    }

    /// Splits the mesh into vertex-connected shells, ordered by first triangle.
    pub fn components(&self) -> Vec<TriMesh> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &[a, b, c] in &self.triangles {
            for (u, v) in [(a, b), (b, c)] {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }

        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let root = find(&mut parent, tri[0]);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, list)) => list.push(t),
                None => groups.push((root, vec![t])),
            }
        }

        groups
            .into_iter()
            .map(|(_, tris)| {
                // Keep the original relative vertex order.
                let mut remap = vec![usize::MAX; self.vertices.len()];
                for &t in &tris {
                    for i in self.triangles[t] {
                        remap[i] = 0;
                    }
                }
                let mut vertices = Vec::new();
                for (i, slot) in remap.iter_mut().enumerate() {
                    if *slot == 0 {
                        *slot = vertices.len();
                        vertices.push(self.vertices[i]);
                    }
                }
                let triangles = tris
                    .iter()
                    .map(|&t| self.triangles[t].map(|i| remap[i]))
                    .collect();
                TriMesh {
                    vertices,
                    triangles,
                }
            })
            .collect()
    }

    pub fn stats(&self) -> MeshStats {
        let watertight = is_watertight(self).is_watertight();
        MeshStats {
            vertices: self.vertex_count(),
            triangles: self.triangle_count(),
            shells: self.components().len(),
            watertight,
            volume: if watertight {
                mesh_volume(self).ok()
            } else {
                None
            },
        }
    }
}

/// Summary of a mesh, printed as `key = value` lines.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshStats {
    pub vertices: usize,
    pub triangles: usize,
    pub shells: usize,
    pub watertight: bool,
    /// Signed volume in m³, only for watertight meshes.
    pub volume: Option<f64>,
}

impl fmt::Display for MeshStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices = {}", self.vertices)?;
        writeln!(f, "triangles = {}", self.triangles)?;
        writeln!(f, "shells = {}", self.shells)?;
        writeln!(f, "watertight = {}", self.watertight)?;
        match self.volume {
            Some(v) => writeln!(f, "volume_m3 = {v:.9e}"),
            None => writeln!(f, "volume_m3 = n/a"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_index_and_degenerate() {
        let v = vec![[0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]];
        assert!(matches!(
            TriMesh::new(v.clone(), vec![[0, 1, 3]]),
            Err(MeshError::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            TriMesh::new(v, vec![[0, 1, 2]]),
            Err(MeshError::DegenerateTriangle { triangle: 0 })
        ));
    }

    #[test]
    fn cube_has_outward_normals() {
        let cube = TriMesh::cuboid([0.0; 3], [1.0; 3]).unwrap();
        assert_eq!(cube.triangle_count(), 12);
        for t in 0..12 {
            let [a, b, c] = cube.corners(t);
            let centroid = [0, 1, 2].map(|k| (a[k] + b[k] + c[k]) / 3.0 - 0.5);
            assert!(
                dot(centroid, cube.normal(t)) > 0.0,
                "triangle {t} faces inward"
            );
        }
    }

    #[test]
    fn components_split_disjoint_shells() {
        let a = TriMesh::cuboid([0.0; 3], [1.0; 3]).unwrap();
        let b = TriMesh::cuboid([2.0; 3], [3.0; 3]).unwrap();
        let merged = TriMesh::merge(&[a.clone(), b.clone()]);
        let parts = merged.components();
        assert_eq!(parts, vec![a, b]);
    }

    #[test]
    fn stats_report_format() {
        let cube = TriMesh::cuboid([0.0; 3], [1.0; 3]).unwrap();
        let text = cube.stats().to_string();
        assert!(text.contains("triangles = 12\n"));
        assert!(text.contains("watertight = true\n"));
        assert!(text.contains("volume_m3 = 1.000000000e0\n"));
    }
}
