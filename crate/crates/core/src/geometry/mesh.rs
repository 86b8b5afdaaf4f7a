//! Boundary quadrature meshes: nodes, weights, outward normals, and mean
//! curvature of the radial embedding `θ ↦ x0 + ρ(θ)θ`.
//!
//! The induced metric of the embedding is `g_ij = ρ² σ_ij + ρ_i ρ_j` and the
//! second fundamental form with respect to the outward normal is
//! `h_ij = (ρ² σ_ij + 2 ρ_i ρ_j − ρ ∇²_ij ρ) / sqrt(ρ² + |∇ρ|²)`,
//! with `∇²` the covariant Hessian of the round sphere. The mean curvature
//! below is the trace `g^{ij} h_ij`, i.e. the **sum** of principal
//! curvatures: a round sphere of radius `r` has `H = (n-1)/r`.

use rayon::prelude::*;

use super::domain::{GeometryError, StarDomain};
use super::sphere::SphereGrid;

/// Quadrature data on the boundary of a [`StarDomain`]. Nodes of one
/// component are stored contiguously.
#[derive(Debug, Clone)]
pub struct BoundaryMesh {
    n: usize,
    resolution: usize,
    positions: Vec<f64>,
    normals: Vec<f64>,
    weights: Vec<f64>,
    mean_curvatures: Vec<f64>,
    angles: Vec<f64>,
    component_ranges: Vec<std::ops::Range<usize>>,
}

impl BoundaryMesh {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.positions[i * self.n..(i + 1) * self.n]
    }

    pub fn normal(&self, i: usize) -> &[f64] {
        &self.normals[i * self.n..(i + 1) * self.n]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mean_curvature(&self, i: usize) -> f64 {
        self.mean_curvatures[i]
    }

    pub fn mean_curvatures(&self) -> &[f64] {
        &self.mean_curvatures
    }

    /// Hyperspherical angles of node `i` relative to its component center.
    pub fn node_angles(&self, i: usize) -> &[f64] {
        &self.angles[i * (self.n - 1)..(i + 1) * (self.n - 1)]
    }

    pub fn component_count(&self) -> usize {
        self.component_ranges.len()
    }

    /// Node index range of component `c`.
    pub fn component_nodes(&self, c: usize) -> std::ops::Range<usize> {
        self.component_ranges[c].clone()
    }

    /// Component owning node `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.component_ranges
            .iter()
            .position(|r| r.contains(&i))
            .expect("node index out of range")
    }

    /// Euclidean area of component `c` (sum of its weights).
    pub fn component_area(&self, c: usize) -> f64 {
        self.component_ranges[c].clone().map(|i| self.weights[i]).sum()
    }

    /// Mesh restricted to a subset of components (preserving their order).
    pub fn restrict_to_components(&self, comps: &[usize]) -> BoundaryMesh {
        let mut positions = Vec::new();
        let mut normals = Vec::new();
        let mut weights = Vec::new();
        let mut mean_curvatures = Vec::new();
        let mut angles = Vec::new();
        let mut component_ranges = Vec::new();
        let mut offset = 0usize;
        for &c in comps {
            let r = self.component_ranges[c].clone();
            let count = r.len();
            positions.extend_from_slice(&self.positions[r.start * self.n..r.end * self.n]);
            normals.extend_from_slice(&self.normals[r.start * self.n..r.end * self.n]);
            weights.extend_from_slice(&self.weights[r.start..r.end]);
            mean_curvatures.extend_from_slice(&self.mean_curvatures[r.start..r.end]);
            angles.extend_from_slice(
                &self.angles[r.start * (self.n - 1)..r.end * (self.n - 1)],
            );
            component_ranges.push(offset..offset + count);
            offset += count;
        }
        BoundaryMesh {
            n: self.n,
            resolution: self.resolution,
            positions,
            normals,
            weights,
            mean_curvatures,
            angles,
            component_ranges,
        }
    }
}

/// Discretize the boundary of `domain` at the given grid `resolution`.
pub fn boundary_quadrature(
    domain: &StarDomain,
    resolution: usize,
) -> Result<BoundaryMesh, GeometryError> {
    boundary_quadrature_offset(domain, resolution, 0.0)
}

/// Like [`boundary_quadrature`] with an azimuthal offset, for generating
/// check grids disjoint from collocation grids.
pub fn boundary_quadrature_offset(
    domain: &StarDomain,
    resolution: usize,
    azimuth_offset: f64,
) -> Result<BoundaryMesh, GeometryError> {
    let required = domain.min_resolution();
    if resolution < required {
        return Err(GeometryError::UnresolvedSpec { resolution, required });
    }
    let n = domain.dimension();
    let grid = SphereGrid::with_offset(n, resolution, azimuth_offset);
    let per = grid.len();
    let total = per * domain.components().len();

    let mut positions = vec![0.0; total * n];
    let mut normals = vec![0.0; total * n];
    let mut weights = vec![0.0; total];
    let mut mean_curvatures = vec![0.0; total];
    let mut angles = vec![0.0; total * (n - 1)];
    let mut component_ranges = Vec::with_capacity(domain.components().len());

    for (ci, comp) in domain.components().iter().enumerate() {
        let base = ci * per;
        component_ranges.push(base..base + per);
        let rows: Vec<NodeData> = (0..per)
            .into_par_iter()
            .map(|i| node_geometry(n, &grid, i, comp))
            .collect();
        for (i, row) in rows.into_iter().enumerate() {
            let g = base + i;
            positions[g * n..(g + 1) * n].copy_from_slice(&row.position);
            normals[g * n..(g + 1) * n].copy_from_slice(&row.normal);
            weights[g] = row.weight;
            mean_curvatures[g] = row.mean_curvature;
            angles[g * (n - 1)..(g + 1) * (n - 1)].copy_from_slice(grid.angles(i));
        }
    }

    Ok(BoundaryMesh {
        n,
        resolution,
        positions,
        normals,
        weights,
        mean_curvatures,
        angles,
        component_ranges,
    })
}

struct NodeData {
    position: Vec<f64>,
    normal: Vec<f64>,
    weight: f64,
    mean_curvature: f64,
}

fn node_geometry(
    n: usize,
    grid: &SphereGrid,
    i: usize,
    comp: &crate::geometry::domain::StarComponent,
) -> NodeData {
    let na = n - 1;
    let node_angles = grid.angles(i);
    let d = comp.radial.derivs(node_angles);
    let rho = d.value;
    let omega = grid.direction(i);

    // Inverse metric diagonal of the round sphere at this node.
    let inv_sigma: Vec<f64> = (0..na).map(|k| 1.0 / grid.metric_diag(i, k)).collect();

    // |∇ρ|² with indices raised by σ.
    let grad_sq: f64 = (0..na).map(|k| inv_sigma[k] * d.grad[k] * d.grad[k]).sum();
    let w_big = rho * rho + grad_sq;
    let sqrt_w = w_big.sqrt();

    // Covariant Hessian of ρ on the sphere.
    let cot: Vec<f64> = node_angles[..na.saturating_sub(1)]
        .iter()
        .map(|a| a.cos() / a.sin())
        .chain(std::iter::once(0.0))
        .take(na)
        .collect();
    let mut hess = vec![0.0; na * na];
    for k in 0..na {
        for l in 0..na {
            let mut v = d.hess[k * na + l];
            if k == l {
                let sigma_kk = 1.0 / inv_sigma[k];
                for m in 0..k {
                    v += sigma_kk * inv_sigma[m] * cot[m] * d.grad[m];
                }
            } else {
                let lo = k.min(l);
                let hi = k.max(l);
                v -= cot[lo] * d.grad[hi];
            }
            hess[k * na + l] = v;
        }
    }

    // Traces entering the mean curvature.
    let laplace: f64 = (0..na).map(|k| inv_sigma[k] * hess[k * na + k]).sum();
    let mut hess_grad_grad = 0.0;
    for k in 0..na {
        for l in 0..na {
            hess_grad_grad += inv_sigma[k] * inv_sigma[l] * d.grad[k] * d.grad[l] * hess[k * na + l];
        }
    }

    let h = (1.0 / (rho * rho * sqrt_w))
        * (rho * rho * (n as f64 - 1.0) + 2.0 * grad_sq - rho * laplace
            - (1.0 / w_big)
                * (rho * rho * grad_sq + 2.0 * grad_sq * grad_sq - rho * hess_grad_grad));

    // Sphere-gradient of ρ as an ambient vector.
    let mut grad_vec = vec![0.0; n];
    let mut tangent = vec![0.0; n];
    for k in 0..na {
        if d.grad[k] == 0.0 {
            continue;
        }
        grid.coordinate_tangent(i, k, &mut tangent);
        for j in 0..n {
            grad_vec[j] += inv_sigma[k] * d.grad[k] * tangent[j];
        }
    }

    let mut position = vec![0.0; n];
    let mut normal = vec![0.0; n];
    for j in 0..n {
        position[j] = comp.center[j] + rho * omega[j];
        normal[j] = (rho * omega[j] - grad_vec[j]) / sqrt_w;
    }

    let weight = rho.powi(n as i32 - 2) * sqrt_w * grid.weight(i);

    NodeData { position, normal, weight, mean_curvature: h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::unit_sphere_area;
    use crate::geometry::radial::{AxiProfile, RadialSpec};
    use approx::assert_relative_eq;

    #[test]
    fn sphere_mesh_area_and_curvature() {
        for n in [3usize, 4, 5] {
            let r = 1.7;
            let domain = StarDomain::ball(n, r, vec![0.0; n]).unwrap();
            let mesh = boundary_quadrature(&domain, if n == 3 { 16 } else { 6 }).unwrap();
            let area: f64 = mesh.weights().iter().sum();
            assert_relative_eq!(
                area,
                unit_sphere_area(n) * r.powi(n as i32 - 1),
                max_relative = 1e-10
            );
            for i in 0..mesh.len() {
                assert_relative_eq!(mesh.mean_curvature(i), (n as f64 - 1.0) / r, epsilon = 1e-9);
                let nn: f64 = mesh.normal(i).iter().map(|x| x * x).sum();
                assert_relative_eq!(nn, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn normals_point_outward() {
        let spec = RadialSpec::Axisymmetric {
            profile: AxiProfile::Cosine { base: 1.0, terms: vec![(2, 0.25)] },
        };
        let domain = StarDomain::star(3, vec![1.0, -2.0, 0.5], spec).unwrap();
        let mesh = boundary_quadrature(&domain, 20).unwrap();
        let center = &domain.components()[0].center;
        for i in 0..mesh.len() {
            let dot: f64 = (0..3)
                .map(|j| mesh.normal(i)[j] * (mesh.position(i)[j] - center[j]))
                .sum();
            assert!(dot > 0.0, "normal should have positive radial component");
        }
    }

    #[test]
    fn spheroid_mean_curvature_matches_closed_form() {
        // Prolate spheroid (a, b, b): meridian and parallel principal
        // curvatures are ab/f^{3/2} and a/(b f^{1/2}), f = a²sin²α + b²cos²α
        // in the polar parametrization (b sinα, a cosα).
        let (a, b) = (2.0, 1.0);
        let spec =
            RadialSpec::Axisymmetric { profile: AxiProfile::Spheroid { polar: a, equatorial: b } };
        let domain = StarDomain::star(3, vec![0.0; 3], spec).unwrap();
        let mesh = boundary_quadrature(&domain, 48).unwrap();
        for i in (0..mesh.len()).step_by(97) {
            let x = mesh.position(i);
            // Recover the ellipse parameter α from the position.
            let z = x[0];
            let alpha = (z / a).acos();
            let f = a * a * alpha.sin().powi(2) + b * b * alpha.cos().powi(2);
            let h_exact = a * b / f.powf(1.5) + a / (b * f.sqrt());
            assert_relative_eq!(mesh.mean_curvature(i), h_exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn restriction_keeps_per_component_data() {
        let comps = vec![
            crate::geometry::domain::StarComponent {
                center: vec![0.0; 3],
                radial: RadialSpec::ball(1.0),
            },
            crate::geometry::domain::StarComponent {
                center: vec![8.0, 0.0, 0.0],
                radial: RadialSpec::ball(2.0),
            },
        ];
        let domain = StarDomain::new(3, comps).unwrap();
        let mesh = boundary_quadrature(&domain, 12).unwrap();
        assert_eq!(mesh.component_count(), 2);
        let sub = mesh.restrict_to_components(&[1]);
        assert_eq!(sub.component_count(), 1);
        let area: f64 = sub.weights().iter().sum();
        assert_relative_eq!(area, 16.0 * std::f64::consts::PI, max_relative = 1e-10);
    }
}
