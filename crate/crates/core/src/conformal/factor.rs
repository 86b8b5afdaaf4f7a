//! The conformal factor `u` defining `g = u^{4/(n-2)} δ`.
//!
//! A factor is a background constant 1 plus a superposition of point poles
//! and radial bump potentials. Pole families and bump potentials cover the
//! closed-form constructions; factors recovered from exterior boundary-value
//! solves have the same shape and carry their residual certificate as
//! provenance.

use thiserror::Error;

use super::bump::RadialBump;
use super::sources::SourceSet;

#[derive(Debug, Error)]
pub enum ConformalError {
    #[error("conformal factor is nonpositive ({value}) at the evaluation point")]
    EvaluationAtSingularity { value: f64 },
    #[error("flux extrapolation gaps fail to decrease (last gaps {g0} -> {g1})")]
    NonConvergentFlux { g0: f64, g1: f64 },
    #[error("exterior integral tail fails the decay test: {0}")]
    NonConvergentIntegral(String),
    #[error("bump support must lie in the exterior region: {0}")]
    BumpPlacement(String),
    #[error("dimension mismatch: factor has n={expected}, argument has n={got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// How a factor was built; solved factors carry their certificate elsewhere
/// (see the solver module) and are referenced by run id.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    PoleFamily,
    BumpPotential,
    Numeric { run_id: String },
}

/// Asymptotic decay data: `|u - 1| <= c r^{-p}`, with curvature decay
/// exponent `q` (`None` = the non-harmonic part has compact support, so any
/// `q` works).
#[derive(Debug, Clone, PartialEq)]
pub struct DecayConstants {
    pub c: f64,
    pub p: f64,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalFactor {
    n: usize,
    sources: SourceSet,
    bumps: Vec<RadialBump>,
    provenance: Provenance,
}

impl ConformalFactor {
    /// `u(x) = 1 + Σ a_i |x - x_i|^{-(n-2)}`.
    pub fn pole_family(n: usize, poles: Vec<(Vec<f64>, f64)>) -> Self {
        let mut sources = SourceSet::empty(n);
        for (x, a) in &poles {
            sources.push(x, *a);
        }
        Self { n, sources, bumps: Vec::new(), provenance: Provenance::PoleFamily }
    }

    /// The factor `u = 1 + m/(2 |x|^{n-2})` of the mass-`m` model metric.
    pub fn schwarzschild(n: usize, m: f64) -> Self {
        Self::pole_family(n, vec![(vec![0.0; n], m / 2.0)])
    }

    /// Flat space, `u ≡ 1`.
    pub fn flat(n: usize) -> Self {
        Self::pole_family(n, Vec::new())
    }

    /// Pole family plus Newtonian bump potentials.
    pub fn with_bumps(n: usize, poles: Vec<(Vec<f64>, f64)>, bumps: Vec<RadialBump>) -> Self {
        let mut f = Self::pole_family(n, poles);
        f.bumps = bumps;
        f.provenance = Provenance::BumpPotential;
        f
    }

    /// Factor assembled from solver output.
    pub fn from_parts(
        n: usize,
        sources: SourceSet,
        bumps: Vec<RadialBump>,
        run_id: String,
    ) -> Self {
        Self { n, sources, bumps, provenance: Provenance::Numeric { run_id } }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn sources(&self) -> &SourceSet {
        &self.sources
    }

    pub fn bumps(&self) -> &[RadialBump] {
        &self.bumps
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Construction-level superharmonicity flag: all pole coefficients and
    /// bump amplitudes nonnegative.
    pub fn superharmonic_flag(&self) -> bool {
        self.sources.coeffs().iter().all(|c| *c >= 0.0)
            && self.bumps.iter().all(|b| b.amplitude >= 0.0)
    }

    /// `Δu <= 0` on the exterior region: poles contribute nothing there, so
    /// only bump signs matter.
    pub fn exterior_superharmonic(&self) -> bool {
        self.bumps.iter().all(|b| b.amplitude >= 0.0)
    }

    pub fn decay_constants(&self) -> DecayConstants {
        let c = self.sources.abs_sum()
            + self
                .bumps
                .iter()
                .map(|b| b.total_mass(self.n).abs())
                .sum::<f64>()
                / ((self.n as f64 - 2.0) * crate::constants::unit_sphere_area(self.n));
        DecayConstants { c, p: (self.n - 2) as f64, q: None }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let mut u = 1.0 + self.sources.eval(x);
        for b in &self.bumps {
            u += b.potential(self.n, x);
        }
        u
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        self.sources.add_gradient(x, &mut g);
        for b in &self.bumps {
            b.add_potential_gradient(self.n, x, &mut g);
        }
        g
    }

    /// `∇u · dir`.
    pub fn directional_derivative(&self, x: &[f64], dir: &[f64]) -> f64 {
        self.gradient(x).iter().zip(dir).map(|(g, d)| g * d).sum()
    }

    /// Exact Laplacian away from the poles: `Δu = -Σ dens_b(x)`.
    pub fn laplacian(&self, x: &[f64]) -> f64 {
        -self.bumps.iter().map(|b| b.density_at(x)).sum::<f64>()
    }

    /// Squared-gradient norm.
    pub fn gradient_norm_sq(&self, x: &[f64]) -> f64 {
        self.gradient(x).iter().map(|g| g * g).sum()
    }

    /// Largest distance of any pole or bump support point from `point`;
    /// the factor is harmonic outside this radius.
    pub fn compact_radius_about(&self, point: &[f64]) -> f64 {
        let mut r = self.sources.max_distance_from(point);
        for b in &self.bumps {
            let d = b
                .center
                .iter()
                .zip(point)
                .map(|(a, c)| (a - c) * (a - c))
                .sum::<f64>()
                .sqrt();
            r = r.max(d + b.r_outer);
        }
        r
    }
}
