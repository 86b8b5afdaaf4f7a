//! Conformal transformation laws: scalar curvature, boundary mean curvature,
//! and areas of `g = u^{4/(n-2)} δ`.

use super::factor::{ConformalError, ConformalFactor};
use crate::geometry::BoundaryMesh;

/// Scalar curvature `R_g = -(4(n-1)/(n-2)) u^{-(n+2)/(n-2)} Δu` at `x`.
/// The Laplacian is exact: zero off bump supports, `-dens` on them.
pub fn scalar_curvature(u: &ConformalFactor, x: &[f64]) -> Result<f64, ConformalError> {
    let n = u.dimension() as f64;
    let val = u.eval(x);
    if val <= 0.0 {
        return Err(ConformalError::EvaluationAtSingularity { value: val });
    }
    let lap = u.laplacian(x);
    Ok(-(4.0 * (n - 1.0) / (n - 2.0)) * val.powf(-(n + 2.0) / (n - 2.0)) * lap)
}

/// Per-node mean curvature of the boundary with respect to `g`:
/// `H_g = u^{-n/(n-2)} (H u + (2(n-1)/(n-2)) ∂_ν u)`, ν pointing to infinity.
pub fn conformal_mean_curvature(
    u: &ConformalFactor,
    mesh: &BoundaryMesh,
) -> Result<Vec<f64>, ConformalError> {
    let n = u.dimension() as f64;
    let kappa = 2.0 * (n - 1.0) / (n - 2.0);
    let mut out = Vec::with_capacity(mesh.len());
    for i in 0..mesh.len() {
        let x = mesh.position(i);
        let val = u.eval(x);
        // u = 0 to roundoff marks a ZAS boundary, where H_g is undefined.
        if val <= 1e-10 {
            return Err(ConformalError::EvaluationAtSingularity { value: val });
        }
        let dnu = u.directional_derivative(x, mesh.normal(i));
        let h = mesh.mean_curvature(i);
        out.push(val.powf(-n / (n - 2.0)) * (h * val + kappa * dnu));
    }
    Ok(out)
}

/// Boundary area of each mesh component with respect to `g`: the area
/// element picks up `u^{2(n-1)/(n-2)}`.
pub fn conformal_areas(
    u: &ConformalFactor,
    mesh: &BoundaryMesh,
) -> Result<Vec<f64>, ConformalError> {
    let n = u.dimension() as f64;
    let p = 2.0 * (n - 1.0) / (n - 2.0);
    let mut areas = vec![0.0; mesh.component_count()];
    for c in 0..mesh.component_count() {
        for i in mesh.component_nodes(c) {
            let val = u.eval(mesh.position(i));
            if val < -1e-10 {
                return Err(ConformalError::EvaluationAtSingularity { value: val });
            }
            // ZAS components have u = 0 to roundoff and zero g-area.
            areas[c] += mesh.weight(i) * val.max(0.0).powf(p);
        }
    }
    Ok(areas)
}

/// Scale-invariant minimality threshold: `max |H_g| <= 1e-6 (n-1)/r_char`
/// where `r_char` is the area-radius of the mesh.
pub fn minimal_boundary_threshold(mesh: &BoundaryMesh) -> f64 {
    let n = mesh.dimension() as f64;
    let area: f64 = mesh.weights().iter().sum();
    let r_char = (area / crate::constants::unit_sphere_area(mesh.dimension()))
        .powf(1.0 / (n - 1.0));
    1e-6 * (n - 1.0) / r_char
}

/// Whether the boundary is minimal in `g` within the scale-aware threshold;
/// returns the measured `max |H_g|` as well.
pub fn is_minimal_boundary(
    u: &ConformalFactor,
    mesh: &BoundaryMesh,
) -> Result<(bool, f64), ConformalError> {
    let hg = conformal_mean_curvature(u, mesh)?;
    let max_abs = hg.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    Ok((max_abs <= minimal_boundary_threshold(mesh), max_abs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{boundary_quadrature, StarDomain};
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_factor_is_scalar_flat() {
        let u = ConformalFactor::schwarzschild(4, 1.0);
        let r = scalar_curvature(&u, &[2.0, 0.5, 0.0, 0.0]).unwrap();
        assert_relative_eq!(r, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_factor_preserves_mean_curvature() {
        let domain = StarDomain::ball(3, 2.0, vec![0.0; 3]).unwrap();
        let mesh = boundary_quadrature(&domain, 10).unwrap();
        let u = ConformalFactor::flat(3);
        let hg = conformal_mean_curvature(&u, &mesh).unwrap();
        for (i, h) in hg.iter().enumerate() {
            assert_relative_eq!(*h, mesh.mean_curvature(i), max_relative = 1e-12);
        }
        let areas = conformal_areas(&u, &mesh).unwrap();
        assert_relative_eq!(areas[0], mesh.component_area(0), max_relative = 1e-14);
    }

    #[test]
    fn minimal_boundary_of_reflected_factor() {
        // u = 1 + (r0/|x|)^{n-2} makes the sphere of radius r0 minimal.
        for n in [3usize, 5] {
            let r0: f64 = 1.3;
            let a = r0.powi(n as i32 - 2);
            let u = ConformalFactor::pole_family(n, vec![(vec![0.0; n], a)]);
            let domain = StarDomain::ball(n, r0, vec![0.0; n]).unwrap();
            let mesh = boundary_quadrature(&domain, if n == 3 { 12 } else { 5 }).unwrap();
            let (minimal, max_abs) = is_minimal_boundary(&u, &mesh).unwrap();
            assert!(minimal, "n={n}: max |H_g| = {max_abs}");
        }
    }

    #[test]
    fn zas_boundary_reports_singularity() {
        // u = 1 - 1/|x| vanishes on the unit sphere.
        let u = ConformalFactor::pole_family(3, vec![(vec![0.0; 3], -1.0)]);
        let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let mesh = boundary_quadrature(&domain, 8).unwrap();
        assert!(matches!(
            conformal_mean_curvature(&u, &mesh),
            Err(ConformalError::EvaluationAtSingularity { .. })
        ));
    }
}
