//! Least-squares collocation solve of exterior boundary-value problems with
//! a fundamental-solution basis (method of fundamental solutions).
//!
//! Sources sit on a shrunk copy of each boundary component plus one source
//! at each component center; the center source makes radially symmetric
//! solutions exactly representable. The system is solved by truncated-SVD
//! least squares, and the residual is certified on a rotated check grid that
//! shares no nodes with the collocation grid.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use thiserror::Error;

use super::harmonic::{HarmonicFunction, SolveCertificate};
use super::spec::{BcKind, BoundaryCondition, SolverSpec};
use crate::conformal::{ConformalFactor, SourceSet};
use crate::geometry::{
    boundary_quadrature, boundary_quadrature_offset, BoundaryMesh, GeometryError, SphereGrid,
    StarDomain,
};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("collocation matrix condition number {kappa:.3e} exceeds the {limit:.0e} guard")]
    IllConditioned { kappa: f64, limit: f64 },
    #[error("boundary residual {max:.3e} exceeds the acceptance threshold {threshold:.0e}")]
    ResidualTooLarge { max: f64, threshold: f64 },
    #[error("boundary condition covers {expected} components, domain has {got}")]
    BcMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("svd failed to converge")]
    SvdFailure,
}

/// Solve the exterior problem for `domain` with per-component `bc` and the
/// trivial background `u → 1`.
pub fn solve(
    domain: &StarDomain,
    bc: &BoundaryCondition,
    spec: &SolverSpec,
) -> Result<HarmonicFunction, SolverError> {
    solve_with_background(domain, bc, spec, ConformalFactor::flat(domain.dimension()))
}

/// Solve with a fixed background field (constant 1 plus optional poles and
/// bumps); the solved layer corrects the background to meet the boundary
/// conditions.
pub fn solve_with_background(
    domain: &StarDomain,
    bc: &BoundaryCondition,
    spec: &SolverSpec,
    background: ConformalFactor,
) -> Result<HarmonicFunction, SolverError> {
    let n = domain.dimension();
    if bc.per_component.len() != domain.components().len() {
        return Err(SolverError::BcMismatch {
            expected: bc.per_component.len(),
            got: domain.components().len(),
        });
    }

    let colloc = boundary_quadrature(domain, spec.collocation_resolution)?;
    let sources = place_sources(domain, spec);
    let kappa_nf = 2.0 * (n as f64 - 1.0) / (n as f64 - 2.0);

    // Row data: one row per collocation node.
    let rows = colloc.len();
    let cols = sources.count();
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    let entries: Vec<(Vec<f64>, f64)> = (0..rows)
        .into_par_iter()
        .map(|i| {
            let x = colloc.position(i);
            let comp = colloc.component_of(i);
            let mut row = vec![0.0; cols];
            let rhs;
            match bc.per_component[comp] {
                BcKind::Dirichlet { value } => {
                    for (j, r) in row.iter_mut().enumerate() {
                        *r = basis_value(&sources, j, x, n);
                    }
                    rhs = value - background.eval(x);
                }
                BcKind::Robin => {
                    let nu = colloc.normal(i);
                    let h = colloc.mean_curvature(i);
                    // H u + κ ∂_ν u = 0  ⇔  ∂_ν u + β u = 0, β = H/κ.
                    let beta = h / kappa_nf;
                    for (j, r) in row.iter_mut().enumerate() {
                        *r = basis_normal_derivative(&sources, j, x, nu, n)
                            + beta * basis_value(&sources, j, x, n);
                    }
                    rhs = -(background.directional_derivative(x, nu)
                        + beta * background.eval(x));
                }
            }
            (row, rhs)
        })
        .collect();
    for (i, (row, rhs)) in entries.into_iter().enumerate() {
        // Row equilibration stabilizes the mixed Dirichlet/Robin scaling.
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
        for (j, v) in row.into_iter().enumerate() {
            a[(i, j)] = v / norm;
        }
        b[i] = rhs / norm;
    }

    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
    let sigma_min = svd.singular_values.iter().fold(f64::INFINITY, |m, s| m.min(*s));
    let kappa = sigma_max / sigma_min.max(1e-300);
    if kappa > spec.condition_limit {
        return Err(SolverError::IllConditioned { kappa, limit: spec.condition_limit });
    }
    let cutoff = spec.truncation * sigma_max;
    let truncated_count = svd.singular_values.iter().filter(|s| **s < cutoff).count();
    let coeffs = svd.solve(&b, cutoff).map_err(|_| SolverError::SvdFailure)?;
    if std::env::var("CONFMASS_DEBUG_SOLVE").is_ok() {
        let resid = (&a * &coeffs - &b).amax();
        eprintln!(
            "[debug] rows={rows} cols={cols} kappa={:.6e} normalized-residual={:.3e}",
            kappa, resid
        );
    }

    let solved = SourceSet::new(
        n,
        (0..cols).flat_map(|j| sources.point(j).to_vec()).collect(),
        coeffs.iter().copied().collect(),
    );

    // Certify on a rotated/offset grid of one finer polar resolution.
    let offset = check_offset(spec);
    let check = boundary_quadrature_offset(domain, spec.collocation_resolution + 1, offset)?;
    let cert = certify(&check, bc, &background, &solved, kappa, truncated_count, spec)?;
    if cert.residual_max > spec.residual_threshold {
        return Err(SolverError::ResidualTooLarge {
            max: cert.residual_max,
            threshold: spec.residual_threshold,
        });
    }

    Ok(HarmonicFunction::new(n, solved, background, cert, bc.clone()))
}

fn check_offset(spec: &SolverSpec) -> f64 {
    use rand::Rng;
    let mut rng = crate::numerics::rng::seeded(spec.seed ^ 0x517c_c1b7_2722_0a95);
    rng.gen_range(0.05..0.45) / spec.collocation_resolution as f64 * std::f64::consts::PI
}

fn place_sources(domain: &StarDomain, spec: &SolverSpec) -> SourceSet {
    let n = domain.dimension();
    let grid = SphereGrid::new(n, spec.source_resolution);
    let mut set = SourceSet::empty(n);
    for comp in domain.components() {
        set.push(&comp.center, 0.0);
        for i in 0..grid.len() {
            let rho = comp.radial.eval(grid.angles(i));
            let pt: Vec<f64> = comp
                .center
                .iter()
                .zip(grid.direction(i))
                .map(|(c, d)| c + spec.shrink * rho * d)
                .collect();
            set.push(&pt, 0.0);
        }
    }
    set
}

#[inline]
fn basis_value(sources: &SourceSet, j: usize, x: &[f64], n: usize) -> f64 {
    let y = sources.point(j);
    let mut r2 = 0.0;
    for k in 0..n {
        let d = x[k] - y[k];
        r2 += d * d;
    }
    crate::conformal::sources::inv_pow(r2, n - 2)
}

#[inline]
fn basis_normal_derivative(sources: &SourceSet, j: usize, x: &[f64], nu: &[f64], n: usize) -> f64 {
    let y = sources.point(j);
    let mut r2 = 0.0;
    let mut dot = 0.0;
    for k in 0..n {
        let d = x[k] - y[k];
        r2 += d * d;
        dot += d * nu[k];
    }
    -((n - 2) as f64) * crate::conformal::sources::inv_pow(r2, n) * dot
}

fn certify(
    check: &BoundaryMesh,
    bc: &BoundaryCondition,
    background: &ConformalFactor,
    solved: &SourceSet,
    condition_number: f64,
    truncated_count: usize,
    spec: &SolverSpec,
) -> Result<SolveCertificate, SolverError> {
    let n = check.dimension();
    let kappa_nf = 2.0 * (n as f64 - 1.0) / (n as f64 - 2.0);
    let mut residual_max = 0.0f64;
    let mut min_dnu: Option<f64> = None;
    let mut min_u_minus_one: Option<f64> = None;
    let mut min_u_robin: Option<f64> = None;

    for c in 0..check.component_count() {
        let range = check.component_nodes(c);
        // Area-radius of the component for u-unit scaling of Robin rows.
        let area: f64 = range.clone().map(|i| check.weight(i)).sum();
        let r_char = (area / crate::constants::unit_sphere_area(n))
            .powf(1.0 / (n as f64 - 1.0));
        let node_stats: Vec<(f64, f64, f64)> = range
            .clone()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|i| {
                let x = check.position(i);
                let nu = check.normal(i);
                let uval = background.eval(x) + solved.eval(x);
                let mut grad = background.gradient(x);
                solved.add_gradient(x, &mut grad);
                let dnu: f64 = grad.iter().zip(nu).map(|(g, d)| g * d).sum();
                let res = match bc.per_component[c] {
                    BcKind::Dirichlet { value } => (uval - value).abs(),
                    BcKind::Robin => {
                        let beta = check.mean_curvature(i) / kappa_nf;
                        (dnu + beta * uval).abs() * r_char
                    }
                };
                (res, dnu, uval)
            })
            .collect();
        for (res, dnu, uval) in node_stats {
            residual_max = residual_max.max(res);
            match bc.per_component[c] {
                BcKind::Dirichlet { .. } => {
                    min_dnu = Some(min_dnu.map_or(dnu, |m: f64| m.min(dnu)));
                }
                BcKind::Robin => {
                    min_u_minus_one =
                        Some(min_u_minus_one.map_or(uval - 1.0, |m: f64| m.min(uval - 1.0)));
                    min_u_robin = Some(min_u_robin.map_or(uval, |m: f64| m.min(uval)));
                }
            }
        }
    }

    Ok(SolveCertificate {
        residual_max,
        residual_threshold: spec.residual_threshold,
        condition_number,
        truncated_count,
        min_normal_derivative_dirichlet: min_dnu,
        min_u_minus_one_robin: min_u_minus_one,
        min_u_robin,
    })
}

/// Mixed problem: Dirichlet-0 on every component of `omega_minus`, the
/// minimal-boundary Robin condition on every component of `omega_plus`.
/// Either side may be `None`. Returns the solution together with the
/// sampled minimum of `u` on the Robin side (the hypothesis-gate datum).
pub struct MixedSolution {
    pub harmonic: HarmonicFunction,
    /// Combined domain: minus-components first, then plus-components.
    pub domain: StarDomain,
    /// Number of Dirichlet (minus) components.
    pub minus_components: usize,
    /// Sampled `min u` over the Robin boundary (`None` when Ω₊ is empty).
    pub min_u_on_plus: Option<f64>,
}

pub fn solve_mixed(
    omega_plus: Option<&StarDomain>,
    omega_minus: Option<&StarDomain>,
    spec: &SolverSpec,
) -> Result<MixedSolution, SolverError> {
    let n = omega_plus
        .or(omega_minus)
        .expect("at least one side must be present")
        .dimension();
    let mut comps = Vec::new();
    let mut kinds = Vec::new();
    if let Some(minus) = omega_minus {
        for c in minus.components() {
            comps.push(c.clone());
            kinds.push(BcKind::Dirichlet { value: 0.0 });
        }
    }
    if let Some(plus) = omega_plus {
        for c in plus.components() {
            comps.push(c.clone());
            kinds.push(BcKind::Robin);
        }
    }
    let minus_components = omega_minus.map_or(0, |d| d.components().len());
    let domain = StarDomain::new(n, comps)?;
    let bc = BoundaryCondition { per_component: kinds };
    let harmonic = solve(&domain, &bc, spec)?;
    let min_u_on_plus = harmonic.certificate.min_u_robin;
    Ok(MixedSolution { harmonic, domain, minus_components, min_u_on_plus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_ball_dirichlet_recovers_radial_solution() {
        let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let bc = BoundaryCondition::dirichlet_zero(1);
        let spec = SolverSpec::default_for_dimension(3).strict();
        let h = solve(&domain, &bc, &spec).unwrap();
        assert!(h.certificate.residual_max < 1e-12, "res {}", h.certificate.residual_max);
        // u = 1 - 1/|x|
        for r in [1.5f64, 3.0, 10.0] {
            assert_relative_eq!(h.eval(&[r, 0.0, 0.0]), 1.0 - 1.0 / r, epsilon = 1e-11);
        }
        assert_relative_eq!(h.solved_monopole(), -1.0, epsilon = 1e-11);
        // Regular-singularity certificate: ∂_ν u > 0 on the boundary.
        assert!(h.certificate.min_normal_derivative_dirichlet.unwrap() > 0.9);
    }

    #[test]
    fn robin_ball_recovers_reflected_factor() {
        // Minimal-boundary factor of the ball of radius r0: u = 1 + (r0/|x|)^{n-2}.
        for n in [3usize, 4] {
            let r0 = 1.3f64;
            let domain = StarDomain::ball(n, r0, vec![0.0; n]).unwrap();
            let bc = BoundaryCondition::robin_minimal(1);
            let spec = SolverSpec::default_for_dimension(n).strict();
            let h = solve(&domain, &bc, &spec).unwrap();
            let a = r0.powi(n as i32 - 2);
            assert_relative_eq!(h.solved_monopole(), a, epsilon = 1e-10);
            let mut x = vec![0.0; n];
            x[0] = 2.5;
            assert_relative_eq!(
                h.eval(&x),
                1.0 + a / 2.5f64.powi(n as i32 - 2),
                epsilon = 1e-10
            );
            assert!(h.certificate.min_u_minus_one_robin.unwrap() > 0.0);
        }
    }

    #[test]
    fn mixed_reduces_to_pure_problems() {
        let minus = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let spec = SolverSpec::default_for_dimension(3);
        let sol = solve_mixed(None, Some(&minus), &spec).unwrap();
        assert!(sol.min_u_on_plus.is_none());
        assert_relative_eq!(sol.harmonic.solved_monopole(), -1.0, epsilon = 1e-10);

        let plus = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let sol = solve_mixed(Some(&plus), None, &spec).unwrap();
        assert_relative_eq!(sol.harmonic.solved_monopole(), 1.0, epsilon = 1e-10);
        assert!(sol.min_u_on_plus.unwrap() > 1.9);
    }

    #[test]
    fn bc_component_mismatch_is_rejected() {
        let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let bc = BoundaryCondition::dirichlet_zero(2);
        let spec = SolverSpec::default_for_dimension(3);
        assert!(matches!(solve(&domain, &bc, &spec), Err(SolverError::BcMismatch { .. })));
    }
}
