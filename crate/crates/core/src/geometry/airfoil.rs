//! Symmetric four-digit airfoil sections.

use std::f64::consts::PI;

use super::{ChordSpacing, GeometryError};

/// Thickness polynomial coefficients; the last one is the closed trailing-edge variant.
const THICKNESS_COEFFS: [f64; 5] = [0.2969, -0.1260, -0.3516, 0.2843, -0.1036];

/// Half-thickness of the symmetric section at chordwise position `x ∈ [0, 1]`.
///
/// `t_max` is the maximum full thickness as a fraction of chord, so the peak
/// of this function is `t_max / 2`. The trailing edge closes: `f(1) = 0`.
pub fn thickness(x: f64, t_max: f64) -> f64 {
    let [a0, a1, a2, a3, a4] = THICKNESS_COEFFS;
    5.0 * t_max * (a0 * x.sqrt() + x * (a1 + x * (a2 + x * (a3 + x * a4))))
}

/// A closed, chord-normalized 2D section.
///
/// Points run from the trailing edge over the upper surface to the leading
/// edge and back along the lower surface; the trailing edge point is not
/// repeated at the end.
#[derive(Clone, Debug, PartialEq)]
pub struct AirfoilSection {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl AirfoilSection {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Signed polygon area via the shoelace formula (positive when counter-clockwise).
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let [x0, y0] = self.points[i];
                let [x1, y1] = self.points[(i + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum::<f64>()
            * 0.5
    }
}

fn chord_stations(n_points: usize, spacing: ChordSpacing) -> Vec<f64> {
    let last = (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let s = i as f64 / last;
            match spacing {
                ChordSpacing::Cosine => 0.5 * (1.0 - (PI * s).cos()),
                ChordSpacing::Uniform => s,
            }
        })
        .map(|x: f64| x.clamp(0.0, 1.0))
        .collect()
}

/// Builds a symmetric section with `n_points` chordwise stations
/// (`2 * n_points - 2` polygon vertices), shifted so the pitch axis `x0`
/// sits at the origin.
pub fn make_airfoil(
    n_points: usize,
    t_max: f64,
    x0: f64,
    spacing: ChordSpacing,
) -> Result<AirfoilSection, GeometryError> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(GeometryError::DegenerateSection(format!(
            "thickness ratio must be > 0, got {t_max}"
        )));
    }
    if n_points < 8 {
        return Err(GeometryError::DegenerateSection(format!(
            "need at least 8 chordwise points, got {n_points}"
        )));
    }
    if !(0.0..=1.0).contains(&x0) {
        return Err(GeometryError::Domain(format!(
            "pitch axis x0 = {x0} outside [0, 1]"
        )));
    }
    let xs = chord_stations(n_points, spacing);
    let mut points = Vec::with_capacity(2 * n_points - 2);
    // Upper surface, trailing edge to leading edge (inclusive of both).
    for &x in xs.iter().rev() {
        let y = if x == 0.0 || x == 1.0 {
            0.0
        } else {
            thickness(x, t_max)
        };
        points.push([x - x0, y]);
    }
    // Lower surface, leading edge excluded, trailing edge excluded.
    for &x in &xs[1..n_points - 1] {
        points.push([x - x0, -thickness(x, t_max)]);
    }
    Ok(AirfoilSection {
        points,
        closed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct term-by-term evaluation, independent of the Horner form above.
    fn oracle(x: f64, t: f64) -> f64 {
        5.0 * t
            * (0.2969 * x.sqrt() - 0.1260 * x - 0.3516 * x.powi(2) + 0.2843 * x.powi(3)
                - 0.1036 * x.powi(4))
    }

    #[test]
    fn leading_and_trailing_edge_are_closed() {
        assert_eq!(thickness(0.0, 0.12), 0.0);
        assert!(thickness(1.0, 0.12).abs() < 1e-12);
    }

    #[test]
    fn thickness_at_thirty_percent() {
        // Frozen from the term-by-term oracle: 0.06000706039397028.
        let f = thickness(0.3, 0.12);
        assert!((f - 0.060_007_060_393_970_28).abs() < 1e-15, "{f}");
        assert!((f - oracle(0.3, 0.12)).abs() < 1e-15);
    }

    #[test]
    fn horner_matches_oracle_on_grid() {
        for i in 0..=200 {
            let x = i as f64 / 200.0;
            assert!((thickness(x, 0.15) - oracle(x, 0.15)).abs() < 1e-15);
        }
    }

    #[test]
    fn section_layout_and_symmetry() {
        let s = make_airfoil(12, 0.12, 0.25, ChordSpacing::Cosine).unwrap();
        assert!(s.closed);
        assert_eq!(s.len(), 22);
        assert_eq!(s.points[0], [0.75, 0.0]);
        assert_eq!(s.points[11], [-0.25, 0.0]);
        for p in &s.points {
            if p[1] != 0.0 {
                assert!(s.points.iter().any(|q| q[0] == p[0] && q[1] == -p[1]));
            }
        }
    }

    #[test]
    fn section_is_convex_and_counter_clockwise() {
        for spacing in [ChordSpacing::Cosine, ChordSpacing::Uniform] {
            let s = make_airfoil(30, 0.2, 0.0, spacing).unwrap();
            assert!(s.signed_area() > 0.0);
            let n = s.len();
            for i in 0..n {
                let a = s.points[i];
                let b = s.points[(i + 1) % n];
                let c = s.points[(i + 2) % n];
                let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
                assert!(cross > 0.0, "reflex vertex at {i} ({spacing:?})");
            }
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(
            make_airfoil(12, 0.0, 0.25, ChordSpacing::Cosine),
            Err(GeometryError::DegenerateSection(_))
        ));
        assert!(make_airfoil(7, 0.12, 0.25, ChordSpacing::Cosine).is_err());
        assert!(make_airfoil(12, 0.12, 1.5, ChordSpacing::Cosine).is_err());
    }
}
