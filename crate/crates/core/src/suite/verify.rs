//! Verifiers: assemble both sides of each mass inequality, check the
//! hypotheses, and return a report with margin, error budget, and verdict.
//!
//! Each verifier also replays the intermediate steps of its derivation as
//! named detail entries ("link_*"), so a numerical fault localizes to the
//! step that broke rather than the end-to-end margin.

use thiserror::Error;

use super::report::{InequalityReport, TheoremId};
use crate::conformal::{
    adm_mass_exact, adm_mass_flux, conformal_mean_curvature, is_minimal_boundary,
    log_dirichlet_energy, minimal_boundary_threshold, weighted_scalar_integral, ConformalError,
    ConformalFactor, FluxSpec, VolumeQuadratureSpec,
};
use crate::constants::unit_sphere_area;
use crate::geometry::{
    is_mean_convex, BoundaryMesh, FunctionalErrors, GeometricFunctionals, GeometryError,
    StarDomain,
};
use crate::massfn::{area_term, holder_flux_bound, zas_mass, MassError, Quantity};
use crate::solver::{CapacityReport, MixedSolution, SolveCertificate, SolverError};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("hypothesis violated ({hypothesis}): {detail}")]
    HypothesisViolated { hypothesis: &'static str, detail: String },
    #[error("level set could not be resolved: {0}")]
    LevelSetDegeneracy(String),
    #[error(transparent)]
    Mass(#[from] MassError),
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One domain instance with its mesh and Euclidean functionals.
pub struct Instance<'a> {
    pub domain: &'a StarDomain,
    pub mesh: &'a BoundaryMesh,
    pub functionals: &'a GeometricFunctionals,
    pub errors: &'a FunctionalErrors,
    /// Instance descriptor hash carried into reports.
    pub id: String,
}

impl<'a> Instance<'a> {
    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }
}

/// ADM mass of `factor` with an error estimate combining the solve residual
/// (monopole perturbation bound) and the flux-route cross-check.
pub fn adm_mass_with_budget(
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
    domain: &StarDomain,
) -> Result<Quantity, SuiteError> {
    let n = domain.dimension();
    let value = adm_mass_exact(factor);
    let centroid = domain.centroid();
    let flux = adm_mass_flux(factor, &centroid, &FluxSpec::for_factor(factor, &centroid))?;
    let r_char = domain.circumradius_about(&centroid);
    let res_bound = cert.map_or(0.0, |c| 2.0 * c.residual_max * r_char.powi(n as i32 - 2));
    let error = (value - flux.value).abs() + flux.error + res_bound + 1e-14 * value.abs();
    Ok(Quantity::new(value, error))
}

fn area_term_error(area: f64, area_err: f64, n: usize) -> f64 {
    let nf = n as f64;
    let p = (nf - 2.0) / (nf - 1.0);
    let omega = unit_sphere_area(n);
    if area <= 0.0 {
        return 0.0;
    }
    p * (area / omega).powf(p - 1.0) * area_err / omega
}

fn require(cond: bool, hypothesis: &'static str, detail: String) -> Result<(), SuiteError> {
    if cond {
        Ok(())
    } else {
        Err(SuiteError::HypothesisViolated { hypothesis, detail })
    }
}

/// Gate data shared by the minimal-boundary verifiers.
struct MinimalGates {
    max_abs_hg: f64,
    mean_convex_margin: f64,
    min_u: f64,
    max_dnu: f64,
}

fn check_minimal_gates(
    instance: &Instance,
    factor: &ConformalFactor,
    require_superharmonic: bool,
) -> Result<MinimalGates, SuiteError> {
    let mesh = instance.mesh;
    let mc = is_mean_convex(mesh);
    require(
        mc.mean_convex,
        "mean-convex",
        format!("min mean curvature {} < 0", mc.margin),
    )?;
    let (minimal, max_abs_hg) = is_minimal_boundary(factor, mesh)?;
    require(
        minimal,
        "minimal-boundary",
        format!(
            "max |H_g| = {max_abs_hg:.3e} exceeds threshold {:.3e}",
            minimal_boundary_threshold(mesh)
        ),
    )?;
    if require_superharmonic {
        require(
            factor.exterior_superharmonic(),
            "superharmonic",
            "factor has negative-density content in the exterior".into(),
        )?;
    }
    // u >= 1 on the boundary plus superharmonicity give u >= 1 on M.
    let mut min_u = f64::INFINITY;
    let mut max_dnu = f64::NEG_INFINITY;
    for i in 0..mesh.len() {
        let x = mesh.position(i);
        min_u = min_u.min(factor.eval(x));
        max_dnu = max_dnu.max(factor.directional_derivative(x, mesh.normal(i)));
    }
    if require_superharmonic {
        require(
            min_u >= 1.0 - 1e-6,
            "u-at-least-one",
            format!("min u on boundary = {min_u}"),
        )?;
    }
    Ok(MinimalGates { max_abs_hg, mean_convex_margin: mc.margin, min_u, max_dnu })
}

/// Boundary flux `∫_{∂M} ∂_ν u dA` and `∫ H u dA`, `∫ H dA` by mesh
/// quadrature (chain-replay ingredients).
fn boundary_integrals(mesh: &BoundaryMesh, factor: &ConformalFactor) -> (f64, f64, f64) {
    let mut flux = 0.0;
    let mut hu = 0.0;
    let mut h = 0.0;
    for i in 0..mesh.len() {
        let x = mesh.position(i);
        let w = mesh.weight(i);
        flux += w * factor.directional_derivative(x, mesh.normal(i));
        let uval = factor.eval(x);
        hu += w * mesh.mean_curvature(i) * uval;
        h += w * mesh.mean_curvature(i);
    }
    (flux, hu, h)
}

/// Mass lower bound with per-component area powers and the `u^{-1}`-weighted
/// curvature integral. Hypotheses: mean-convex star-shaped components,
/// minimal boundary in `g`, superharmonic factor.
pub fn verify_thm_main(
    instance: &Instance,
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
) -> Result<InequalityReport, SuiteError> {
    let n = instance.dimension();
    let nf = n as f64;
    let omega = unit_sphere_area(n);
    let gates = check_minimal_gates(instance, factor, true)?;

    let mass = adm_mass_with_budget(factor, cert, instance.domain)?;
    let iw = weighted_scalar_integral(
        factor,
        -1,
        instance.domain,
        &VolumeQuadratureSpec::default_for_dimension(n),
    )?;

    let mut rhs = iw.value / (2.0 * (nf - 1.0) * omega);
    let mut rhs_err = iw.error / (2.0 * (nf - 1.0) * omega);
    for c in &instance.functionals.per_component {
        rhs += area_term(c.area, n);
        rhs_err += area_term_error(c.area, instance.errors.area, n);
    }

    let eps = mass.error + rhs_err;
    let mut report =
        InequalityReport::new(TheoremId::ThmMain, mass.value, rhs, eps, instance.id.clone());

    // Proof replay.
    let (flux, hu, h) = boundary_integrals(instance.mesh, factor);
    let flux_term = -2.0 / ((nf - 2.0) * omega) * flux;
    let curv_term = iw.value / (2.0 * (nf - 1.0) * omega);
    let hu_term = hu / ((nf - 1.0) * omega);
    let h_term = h / ((nf - 1.0) * omega);
    let mink_min = instance
        .functionals
        .per_component
        .iter()
        .map(|c| c.minkowski - area_term(c.area, n))
        .fold(f64::INFINITY, f64::min);
    report = report
        .with_detail("link_eqn1_residual", mass.value - (flux_term + curv_term))
        .with_detail("link_eqn2_residual", flux_term - hu_term)
        .with_detail("link_u_ge_1_margin", hu_term - h_term)
        .with_detail("link_minkowski_margin_min", mink_min)
        .with_detail("gate_max_abs_hg", gates.max_abs_hg)
        .with_detail("gate_mean_convex_margin", gates.mean_convex_margin)
        .with_detail("gate_min_u_boundary", gates.min_u)
        .with_detail("gate_max_normal_derivative", gates.max_dnu)
        .with_detail("i_minus_1", iw.value);
    Ok(report)
}

/// The two consequences of the main bound: total-area power and volume power.
/// Also replays the concavity step `Σ (A_i/ω)^p >= (Σ A_i/ω)^p`.
pub fn verify_corollaries(
    instance: &Instance,
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
) -> Result<(InequalityReport, InequalityReport), SuiteError> {
    let n = instance.dimension();
    let gates = check_minimal_gates(instance, factor, true)?;
    let mass = adm_mass_with_budget(factor, cert, instance.domain)?;

    let total_area_term = area_term(instance.functionals.area, n);
    let per_component_sum: f64 =
        instance.functionals.per_component.iter().map(|c| area_term(c.area, n)).sum();
    let area_eps = mass.error + area_term_error(instance.functionals.area, instance.errors.area, n);
    let area_report = InequalityReport::new(
        TheoremId::CorArea,
        mass.value,
        total_area_term,
        area_eps,
        instance.id.clone(),
    )
    .with_detail("link_concavity_margin", per_component_sum - total_area_term)
    .with_detail("gate_min_u_boundary", gates.min_u);

    let vol_term = crate::massfn::volume_term(instance.functionals.volume, n);
    let nf = n as f64;
    let vol_term_err = if instance.functionals.volume > 0.0 {
        (nf - 2.0) / nf * vol_term / instance.functionals.volume * instance.errors.volume
    } else {
        0.0
    };
    let vol_report = InequalityReport::new(
        TheoremId::CorVol,
        mass.value,
        vol_term,
        mass.error + vol_term_err,
        instance.id.clone(),
    )
    .with_detail("link_isoperimetric_iota", instance.functionals.iota);

    Ok((area_report, vol_report))
}

/// The `u^{-2}`-weighted bound: same statement shape with no sign condition
/// on the scalar curvature, flat-background specialization. Also records
/// the discarded Dirichlet-energy slack `(2/((n-2)ω)) ∫ |∇u|²/u² dV`.
pub fn verify_thm_general2_delta(
    instance: &Instance,
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
) -> Result<InequalityReport, SuiteError> {
    let n = instance.dimension();
    let nf = n as f64;
    let omega = unit_sphere_area(n);
    // Minimal boundary and mean convexity required; superharmonicity is not.
    let gates = check_minimal_gates(instance, factor, false)?;

    let mass = adm_mass_with_budget(factor, cert, instance.domain)?;
    let iw = weighted_scalar_integral(
        factor,
        -2,
        instance.domain,
        &VolumeQuadratureSpec::default_for_dimension(n),
    )?;

    let mut rhs = iw.value / (2.0 * (nf - 1.0) * omega);
    let mut rhs_err = iw.error / (2.0 * (nf - 1.0) * omega);
    for c in &instance.functionals.per_component {
        rhs += area_term(c.area, n);
        rhs_err += area_term_error(c.area, instance.errors.area, n);
    }
    let eps = mass.error + rhs_err;
    let mut report = InequalityReport::new(
        TheoremId::ThmGeneral2Delta,
        mass.value,
        rhs,
        eps,
        instance.id.clone(),
    )
    .with_detail("gate_max_abs_hg", gates.max_abs_hg)
    .with_detail("i_minus_2", iw.value);

    // Dirichlet-energy slack (single-component domains; the shell quadrature
    // needs one star center).
    if instance.domain.components().len() == 1 {
        let energy = log_dirichlet_energy(
            factor,
            instance.domain,
            &VolumeQuadratureSpec::default_for_dimension(n),
        )?;
        let slack = 2.0 / ((nf - 2.0) * omega) * energy.value;
        let mink_min = instance
            .functionals
            .per_component
            .iter()
            .map(|c| c.minkowski - area_term(c.area, n))
            .fold(f64::INFINITY, f64::min);
        let margin = report.margin;
        report = report
            .with_detail("dirichlet_energy_slack", slack)
            .with_detail("link_margin_minus_slack", margin - slack)
            .with_detail("link_minkowski_margin_min", mink_min);
    }
    Ok(report)
}

/// Shared checks for vanishing-boundary (ZAS) factors; returns nodewise
/// normal derivatives.
fn check_zas_gates(
    mesh: &BoundaryMesh,
    factor: &ConformalFactor,
) -> Result<Vec<f64>, SuiteError> {
    require(
        factor.exterior_superharmonic(),
        "superharmonic",
        "factor has negative-density content in the exterior".into(),
    )?;
    let mut max_u = 0.0f64;
    let mut dnu = Vec::with_capacity(mesh.len());
    for i in 0..mesh.len() {
        let x = mesh.position(i);
        max_u = max_u.max(factor.eval(x).abs());
        dnu.push(factor.directional_derivative(x, mesh.normal(i)));
    }
    require(
        max_u <= 1e-5,
        "vanishing-boundary",
        format!("max |u| on boundary = {max_u:.3e}"),
    )?;
    let min_dnu = dnu.iter().copied().fold(f64::INFINITY, f64::min);
    if min_dnu <= 0.0 {
        return Err(MassError::NotRegularZas { min_dnu }.into());
    }
    Ok(dnu)
}

/// ADM mass vs ZAS mass minus half the area power, for factors vanishing on
/// the whole boundary.
pub fn verify_lemma_zas(
    instance: &Instance,
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
) -> Result<InequalityReport, SuiteError> {
    let n = instance.dimension();
    let dnu = check_zas_gates(instance.mesh, factor)?;
    let mass = adm_mass_with_budget(factor, cert, instance.domain)?;
    let mzas = zas_mass(factor, instance.mesh)?;
    let half_area = 0.5 * area_term(instance.functionals.area, n);
    let rhs = mzas.value - half_area;
    let eps = mass.error
        + mzas.error
        + 0.5 * area_term_error(instance.functionals.area, instance.errors.area, n);
    let (holder_lhs, holder_rhs) = holder_flux_bound(n, instance.mesh, &dnu);
    Ok(InequalityReport::new(TheoremId::LemmaZas, mass.value, rhs, eps, instance.id.clone())
        .with_detail("m_zas", mzas.value)
        .with_detail("link_holder_lhs", holder_lhs)
        .with_detail("link_holder_rhs", holder_rhs)
        .with_detail("link_holder_margin", holder_rhs - holder_lhs))
}

/// ADM mass vs `m_ZAS (1 + ι²/4)`; also replays the capacity-route area
/// upper bound `(A/ω)^{(n-2)/(n-1)} <= (ι²/2) |m_ZAS|`.
pub fn verify_thm_zas(
    instance: &Instance,
    factor: &ConformalFactor,
    cert: Option<&SolveCertificate>,
    cap: &CapacityReport,
) -> Result<InequalityReport, SuiteError> {
    let n = instance.dimension();
    let _ = check_zas_gates(instance.mesh, factor)?;
    let mass = adm_mass_with_budget(factor, cert, instance.domain)?;
    let mzas = zas_mass(factor, instance.mesh)?;
    let iota = instance.functionals.iota;
    let rhs = mzas.value * (1.0 + 0.25 * iota * iota);
    let eps = mass.error
        + mzas.error * (1.0 + 0.25 * iota * iota)
        + mzas.value.abs() * 0.5 * iota * instance.errors.iota;
    let area_pow = area_term(instance.functionals.area, n);
    Ok(InequalityReport::new(TheoremId::ThmZas, mass.value, rhs, eps, instance.id.clone())
        .with_detail("m_zas", mzas.value)
        .with_detail("iota", iota)
        .with_detail("capacity", cap.value)
        .with_detail("link_area_bound_lhs", area_pow)
        .with_detail("link_area_bound_rhs", 0.5 * iota * iota * mzas.value.abs())
        .with_detail("link_area_bound_margin", 0.5 * iota * iota * mzas.value.abs() - area_pow))
}

/// Mixed minimal/vanishing boundary bound. The `u >= 1` hypothesis on the
/// minimal side is measured, not assumed: a failing gate demotes the verdict
/// to inconclusive and records the measured minimum.
pub fn verify_mixed(
    mixed: &MixedSolution,
    mesh: &BoundaryMesh,
    minus_functionals: Option<(&GeometricFunctionals, &FunctionalErrors)>,
    instance_id: String,
) -> Result<InequalityReport, SuiteError> {
    let n = mixed.domain.dimension();
    let factor = mixed.harmonic.to_conformal_factor();
    let cert = &mixed.harmonic.certificate;
    let minus_count = mixed.minus_components;
    let total = mixed.domain.components().len();

    let mass = adm_mass_with_budget(&factor, Some(cert), &mixed.domain)?;

    let mut rhs = 0.0;
    let mut eps = mass.error;
    let mut details: Vec<(&str, f64)> = Vec::new();

    // Plus side: total Euclidean area power of the minimal components.
    if minus_count < total {
        let plus: Vec<usize> = (minus_count..total).collect();
        let area_plus: f64 = plus.iter().map(|&c| mesh.component_area(c)).sum();
        rhs += area_term(area_plus, n);
        details.push(("area_plus", area_plus));
        // Certificate of minimality on the plus side.
        let plus_mesh = mesh.restrict_to_components(&plus);
        let hg = conformal_mean_curvature(&factor, &plus_mesh)?;
        let max_abs_hg = hg.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        require(
            max_abs_hg <= minimal_boundary_threshold(&plus_mesh),
            "minimal-boundary",
            format!("max |H_g| on plus side = {max_abs_hg:.3e}"),
        )?;
        details.push(("gate_max_abs_hg_plus", max_abs_hg));
    }

    // Minus side: ZAS mass scaled by the isoperimetric factor of Ω₋.
    if minus_count > 0 {
        let minus: Vec<usize> = (0..minus_count).collect();
        let minus_mesh = mesh.restrict_to_components(&minus);
        let _ = check_zas_gates(&minus_mesh, &factor)?;
        let mzas = zas_mass(&factor, &minus_mesh)?;
        let (iota, iota_err) = match minus_functionals {
            Some((f, e)) => (f.iota, e.iota),
            None => {
                return Err(SuiteError::HypothesisViolated {
                    hypothesis: "missing-minus-functionals",
                    detail: "Ω₋ functionals are required when the minus side is nonempty".into(),
                })
            }
        };
        rhs += mzas.value * (1.0 + 0.25 * iota * iota);
        eps += mzas.error * (1.0 + 0.25 * iota * iota)
            + mzas.value.abs() * 0.5 * iota * iota_err;
        details.push(("m_zas_minus", mzas.value));
        details.push(("iota_minus", iota));
    }

    let mut report =
        InequalityReport::new(TheoremId::Mixed, mass.value, rhs, eps, instance_id);
    for (k, v) in details {
        report = report.with_detail(k, v);
    }

    // The measured u >= 1 gate on the plus side.
    if let Some(min_u) = mixed.min_u_on_plus {
        report = report.with_detail("gate_min_u_plus", min_u);
        if min_u < 1.0 - (10.0 * cert.residual_max).max(1e-9) {
            report = report.demote_to_inconclusive();
        }
    }
    Ok(report)
}

/// Per-component normalized-mean-curvature vs area-power bound for
/// mean-convex star-shaped boundaries.
pub fn verify_minkowski(instance: &Instance) -> Result<Vec<InequalityReport>, SuiteError> {
    let n = instance.dimension();
    let mc = is_mean_convex(instance.mesh);
    require(
        mc.mean_convex,
        "mean-convex",
        format!("min mean curvature {} < 0", mc.margin),
    )?;
    let mut reports = Vec::new();
    for (ci, c) in instance.functionals.per_component.iter().enumerate() {
        let lhs = c.minkowski;
        let rhs = area_term(c.area, n);
        let eps = instance.errors.minkowski
            + area_term_error(c.area, instance.errors.area, n);
        reports.push(
            InequalityReport::new(TheoremId::Minkowski, lhs, rhs, eps, instance.id.clone())
                .with_detail("component", ci as f64)
                .with_detail("gate_mean_convex_margin", mc.margin),
        );
    }
    Ok(reports)
}

/// Isoperimetric ratio at least one.
pub fn verify_isoperimetric(instance: &Instance) -> InequalityReport {
    InequalityReport::new(
        TheoremId::Isoperimetric,
        instance.functionals.iota,
        1.0,
        instance.errors.iota,
        instance.id.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{boundary_quadrature, functionals_with_estimate};
    use crate::suite::report::Verdict;
    use approx::assert_relative_eq;

    fn ball_instance(
        n: usize,
        r: f64,
    ) -> (StarDomain, BoundaryMesh, GeometricFunctionals, FunctionalErrors) {
        let domain = StarDomain::ball(n, r, vec![0.0; n]).unwrap();
        let res = crate::geometry::default_resolution(n);
        let mesh = boundary_quadrature(&domain, res).unwrap();
        let (f, e) = functionals_with_estimate(&domain, res).unwrap();
        (domain, mesh, f, e)
    }

    #[test]
    fn schwarzschild_margin_is_half_mass() {
        for n in [3usize, 4, 5] {
            let m = 1.0f64;
            let r0 = (m / 2.0).powf(1.0 / (n as f64 - 2.0));
            let (domain, mesh, f, e) = ball_instance(n, r0);
            let instance =
                Instance { domain: &domain, mesh: &mesh, functionals: &f, errors: &e, id: "s".into() };
            let factor = ConformalFactor::schwarzschild(n, m);
            let report = verify_thm_main(&instance, &factor, None).unwrap();
            assert_eq!(report.verdict, Verdict::Holds);
            assert_relative_eq!(report.lhs, m, epsilon = 1e-9);
            assert_relative_eq!(report.rhs, m / 2.0, epsilon = 1e-7);
            assert_relative_eq!(report.margin, m / 2.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn flat_factor_fails_minimality_gate() {
        let (domain, mesh, f, e) = ball_instance(3, 1.0);
        let instance =
            Instance { domain: &domain, mesh: &mesh, functionals: &f, errors: &e, id: "g".into() };
        let factor = ConformalFactor::flat(3);
        match verify_thm_general2_delta(&instance, &factor, None) {
            Err(SuiteError::HypothesisViolated { hypothesis, .. }) => {
                assert_eq!(hypothesis, "minimal-boundary")
            }
            other => panic!("expected minimality violation, got {other:?}"),
        }
    }

    #[test]
    fn lemma_zas_ball_margin() {
        // Unit-ball potential: m = -2, m_zas = -2, area term = 1.
        let (domain, mesh, f, e) = ball_instance(3, 1.0);
        let instance =
            Instance { domain: &domain, mesh: &mesh, functionals: &f, errors: &e, id: "z".into() };
        let factor = ConformalFactor::pole_family(3, vec![(vec![0.0; 3], -1.0)]);
        let report = verify_lemma_zas(&instance, &factor, None).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_relative_eq!(report.lhs, -2.0, epsilon = 1e-9);
        assert_relative_eq!(report.rhs, -2.5, epsilon = 1e-7);
        assert_relative_eq!(report.margin, 0.5, epsilon = 1e-7);
    }

    #[test]
    fn schwarzschild_corollaries() {
        let n = 4;
        let m = 2.0f64;
        let r0 = (m / 2.0).powf(1.0 / (n as f64 - 2.0));
        let (domain, mesh, f, e) = ball_instance(n, r0);
        let instance =
            Instance { domain: &domain, mesh: &mesh, functionals: &f, errors: &e, id: "c".into() };
        let factor = ConformalFactor::schwarzschild(n, m);
        let (area, vol) = verify_corollaries(&instance, &factor, None).unwrap();
        assert_eq!(area.verdict, Verdict::Holds);
        assert_eq!(vol.verdict, Verdict::Holds);
        assert_relative_eq!(area.margin, m / 2.0, epsilon = 1e-7);
        // Single component: concavity step is an equality.
        assert_relative_eq!(area.details["link_concavity_margin"], 0.0, epsilon = 1e-12);
        // Ball: iota = 1, so the volume report coincides with the area one.
        assert_relative_eq!(vol.rhs, area.rhs, max_relative = 1e-9);
    }
}
