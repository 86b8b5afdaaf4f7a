//! Numerically represented exterior harmonic functions and their residual
//! certificates.

use serde::{Deserialize, Serialize};

use super::spec::BoundaryCondition;
use crate::conformal::{ConformalFactor, SourceSet};

/// Quality certificate of a boundary-value solve, evaluated at check nodes
/// disjoint from the collocation nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveCertificate {
    /// Max |BC violation| at check nodes, in u-units.
    pub residual_max: f64,
    /// Residual threshold the solve was accepted under.
    pub residual_threshold: f64,
    /// Raw condition number of the collocation matrix.
    pub condition_number: f64,
    /// Singular values discarded by the spectral cutoff.
    pub truncated_count: usize,
    /// Per Dirichlet-0 component: minimum of `∂_ν u` over check nodes
    /// (positive certifies the regular-singularity / superharmonic side).
    pub min_normal_derivative_dirichlet: Option<f64>,
    /// Per Robin component: minimum of `u - 1` over check nodes.
    pub min_u_minus_one_robin: Option<f64>,
    /// Minimum of `u` over the Robin check nodes (hypothesis gate data).
    pub min_u_robin: Option<f64>,
}

/// An exterior harmonic function `u = background + Σ c_j |x - y_j|^{-(n-2)}`
/// built by collocation. Harmonic away from sources by construction; tends
/// to the background constant 1 at infinity.
#[derive(Debug, Clone)]
pub struct HarmonicFunction {
    n: usize,
    /// Solved fundamental-solution layer.
    solved: SourceSet,
    /// Fixed background (constant 1 plus optional poles/bumps).
    background: ConformalFactor,
    pub certificate: SolveCertificate,
    pub bc: BoundaryCondition,
    run_id: String,
}

impl HarmonicFunction {
    pub(crate) fn new(
        n: usize,
        solved: SourceSet,
        background: ConformalFactor,
        certificate: SolveCertificate,
        bc: BoundaryCondition,
    ) -> Self {
        let run_id = run_hash(n, &solved, &bc);
        Self { n, solved, background, certificate, bc, run_id }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The solved source layer (background poles excluded).
    pub fn solved_sources(&self) -> &SourceSet {
        &self.solved
    }

    pub fn background(&self) -> &ConformalFactor {
        &self.background
    }

    pub fn run_id(&self) -> &str {
        &self.run_id
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.background.eval(x) + self.solved.eval(x)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = self.background.gradient(x);
        self.solved.add_gradient(x, &mut g);
        g
    }

    pub fn directional_derivative(&self, x: &[f64], dir: &[f64]) -> f64 {
        self.gradient(x).iter().zip(dir).map(|(g, d)| g * d).sum()
    }

    /// Monopole moment of the solved layer; the far field of the solve is
    /// `(monopole)/|x|^{n-2}` plus background content.
    pub fn solved_monopole(&self) -> f64 {
        self.solved.monopole()
    }

    /// The total field as a conformal factor (background poles and bumps
    /// merged with the solved layer).
    pub fn to_conformal_factor(&self) -> ConformalFactor {
        let mut sources = SourceSet::empty(self.n);
        sources.extend(self.background.sources());
        sources.extend(&self.solved);
        ConformalFactor::from_parts(
            self.n,
            sources,
            self.background.bumps().to_vec(),
            self.run_id.clone(),
        )
    }
}

fn run_hash(n: usize, solved: &SourceSet, bc: &BoundaryCondition) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update((n as u64).to_le_bytes());
    for j in 0..solved.count() {
        for v in solved.point(j) {
            hasher.update(v.to_le_bytes());
        }
        hasher.update(solved.coeff(j).to_le_bytes());
    }
    hasher.update(serde_json::to_vec(bc).expect("bc serializes"));
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
