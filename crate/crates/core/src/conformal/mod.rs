//! Conformal factors `u` for `g = u^{4/(n-2)} δ` and the metric quantities
//! they induce: scalar curvature, boundary mean curvature, ADM mass, and
//! weighted curvature integrals.

pub mod bump;
pub mod curvature;
pub mod factor;
pub mod integrals;
pub mod mass;
pub mod sources;

pub use bump::RadialBump;
pub use curvature::{
    conformal_areas, conformal_mean_curvature, is_minimal_boundary, minimal_boundary_threshold,
    scalar_curvature,
};
pub use factor::{ConformalError, ConformalFactor, DecayConstants, Provenance};
pub use integrals::{
    log_dirichlet_energy, weighted_scalar_integral, IntegralEstimate, VolumeQuadratureSpec,
};
pub use mass::{adm_mass_exact, adm_mass_flux, FluxSpec, MassEstimate};
pub use sources::SourceSet;
