//! Product quadrature grids on the unit sphere `S^{n-1}`.
//!
//! Coordinates are hyperspherical angles `a_1, ..., a_{n-1}`: the first
//! `n-2` are polar-type angles in `(0, π)`, the last is the periodic
//! azimuth in `[0, 2π)`. A point of `S^{n-1}` is
//!
//! ```text
//! ω_j = cos(a_j) · Π_{i<j} sin(a_i)   for j = 1..n-1,
//! ω_n = Π_{i<n} sin(a_i),
//! ```
//!
//! and the round metric is diagonal with `σ_kk = Π_{i<k} sin²(a_i)`.
//! Polar angle `a_j` carries the `sin^{n-1-j}` Jacobian factor; its nodes
//! are Gauss-Gegenbauer in `cos a_j` with `λ = (n-2-j)/2`, which integrates
//! spherical polynomials exactly and analytic integrands geometrically. The
//! azimuth carries the trapezoid rule (spectral for periodic integrands).

use crate::constants::unit_sphere_area;

/// Quadrature grid over `S^{n-1}` with `resolution` Gauss-Legendre nodes per
/// polar angle and `2 * resolution` azimuthal nodes.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    n: usize,
    resolution: usize,
    azimuth_offset: f64,
    /// Flattened angles, `len = count * (n-1)`.
    angles: Vec<f64>,
    /// Flattened unit directions, `len = count * n`.
    directions: Vec<f64>,
    /// Quadrature weights including the spherical Jacobian; sums to `ω_{n-1}`.
    weights: Vec<f64>,
}

/// Smallest permitted grid resolution. Quadrature users should stay well
/// above this; source-placement grids may run this coarse.
pub const MIN_RESOLUTION: usize = 2;

impl SphereGrid {
    pub fn new(n: usize, resolution: usize) -> Self {
        Self::with_offset(n, resolution, 0.0)
    }

    /// Grid whose azimuthal ring is rotated by `azimuth_offset` radians;
    /// used to generate check nodes disjoint from collocation nodes.
    pub fn with_offset(n: usize, resolution: usize, azimuth_offset: f64) -> Self {
        assert!(n >= 3, "sphere grids require ambient dimension >= 3");
        assert!(resolution >= MIN_RESOLUTION, "resolution below minimum {MIN_RESOLUTION}");
        let n_polar_axes = n - 2;
        // Per-axis rule in t = cos a with weight (1-t²)^{(k-1)/2}, k the
        // sin-power of that axis; the Jacobian is inside the weights.
        let mut axis_nodes: Vec<Vec<f64>> = Vec::with_capacity(n_polar_axes);
        let mut axis_weights: Vec<Vec<f64>> = Vec::with_capacity(n_polar_axes);
        for axis in 0..n_polar_axes {
            let k = (n - 2 - axis) as f64;
            let (t, w) = crate::numerics::gauss_gegenbauer(resolution, (k - 1.0) / 2.0);
            axis_nodes.push(t.iter().map(|v| v.acos()).collect());
            axis_weights.push(w);
        }

        let n_azimuth = 2 * resolution;
        let dphi = std::f64::consts::TAU / n_azimuth as f64;

        let count = resolution.pow(n_polar_axes as u32) * n_azimuth;
        let mut angles = Vec::with_capacity(count * (n - 1));
        let mut directions = Vec::with_capacity(count * n);
        let mut weights = Vec::with_capacity(count);

        // Odometer over the polar axes, azimuth innermost.
        let mut idx = vec![0usize; n_polar_axes];
        loop {
            // Weight shared by the azimuthal ring.
            let mut base_w = 1.0;
            for (axis, &i) in idx.iter().enumerate() {
                base_w *= axis_weights[axis][i];
            }
            for k in 0..n_azimuth {
                let phi = (k as f64 + 0.5) * dphi + azimuth_offset;
                for (axis, &i) in idx.iter().enumerate() {
                    angles.push(axis_nodes[axis][i]);
                }
                angles.push(phi);
                let start = angles.len() - (n - 1);
                let node_angles = &angles[start..];
                let mut dir = vec![0.0; n];
                direction_from_angles(node_angles, &mut dir);
                directions.extend_from_slice(&dir);
                weights.push(base_w * dphi);
            }
            // Advance odometer.
            let mut axis = n_polar_axes;
            loop {
                if axis == 0 {
                    let total: f64 = weights.iter().sum();
                    debug_assert!(
                        (total / unit_sphere_area(n) - 1.0).abs() < 1e-10,
                        "grid weights should sum to the sphere area"
                    );
                    return Self { n, resolution, azimuth_offset, angles, directions, weights };
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < resolution {
                    break;
                }
                idx[axis] = 0;
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn azimuth_offset(&self) -> f64 {
        self.azimuth_offset
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Hyperspherical angles of node `i` (`n-1` values, azimuth last).
    pub fn angles(&self, i: usize) -> &[f64] {
        &self.angles[i * (self.n - 1)..(i + 1) * (self.n - 1)]
    }

    /// Unit direction of node `i`.
    pub fn direction(&self, i: usize) -> &[f64] {
        &self.directions[i * self.n..(i + 1) * self.n]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Coordinate tangent vector `∂ω/∂a_k` at node `i`, `k < n-1`.
    pub fn coordinate_tangent(&self, i: usize, k: usize, out: &mut [f64]) {
        coordinate_tangent_from_angles(self.angles(i), k, out);
    }

    /// `σ_kk = Π_{i<k} sin²(a_i)` at node `i` (0-based `k`).
    pub fn metric_diag(&self, i: usize, k: usize) -> f64 {
        let angles = self.angles(i);
        let mut p = 1.0;
        for a in &angles[..k] {
            p *= a.sin() * a.sin();
        }
        p
    }
}

/// Fill `out` (length `n`) with the unit vector for hyperspherical `angles`
/// (length `n-1`).
pub fn direction_from_angles(angles: &[f64], out: &mut [f64]) {
    let n = out.len();
    debug_assert_eq!(angles.len(), n - 1);
    let mut prefix = 1.0;
    for j in 0..n - 1 {
        out[j] = prefix * angles[j].cos();
        prefix *= angles[j].sin();
    }
    out[n - 1] = prefix;
}

/// Fill `out` with `∂ω/∂a_k`; its norm is `sqrt(σ_kk)`.
pub fn coordinate_tangent_from_angles(angles: &[f64], k: usize, out: &mut [f64]) {
    let n = out.len();
    debug_assert!(k < n - 1);
    let mut prefix = 1.0;
    for j in 0..n - 1 {
        let (s, c) = angles[j].sin_cos();
        out[j] = match j.cmp(&k) {
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Equal => -prefix * s,
            std::cmp::Ordering::Greater => {
                // cot(a_k) * ω_j
                let cot = angles[k].cos() / angles[k].sin();
                cot * prefix * c
            }
        };
        prefix *= s;
    }
    out[n - 1] = if k < n - 1 {
        let cot = angles[k].cos() / angles[k].sin();
        cot * prefix
    } else {
        0.0
    };
}
