//! Bounded domains in `R^n` whose connected components are star-shaped
//! radial graphs over the unit sphere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::radial::RadialSpec;
use super::sphere::{direction_from_angles, SphereGrid};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("ambient dimension must be at least 3, got {0}")]
    InvalidDimension(usize),
    #[error("radial descriptor not admissible in dimension {n}")]
    SpecDimensionMismatch { n: usize },
    #[error("radial function must be strictly positive; min sampled value {min} at component {component}")]
    NonPositiveRadius { component: usize, min: f64 },
    #[error("grid resolution {resolution} cannot resolve the radial descriptor (needs >= {required})")]
    UnresolvedSpec { resolution: usize, required: usize },
    #[error("components {a} and {b} are too close: min boundary distance {distance} <= 10 x mesh spacing {spacing}")]
    ComponentsOverlap { a: usize, b: usize, distance: f64, spacing: f64 },
    #[error("center must have {expected} coordinates, got {got}")]
    CenterDimensionMismatch { expected: usize, got: usize },
}

/// One star-shaped component: a center and a radial support function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarComponent {
    pub center: Vec<f64>,
    pub radial: RadialSpec,
}

/// A bounded open set in `R^n` with pairwise-disjoint star-shaped components.
/// Star-shapedness holds by construction: boundaries are radial graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarDomain {
    n: usize,
    components: Vec<StarComponent>,
}

/// Default mesh resolution per ambient dimension, balancing accuracy against
/// the `O(resolution^{n-1})` node count.
pub fn default_resolution(n: usize) -> usize {
    match n {
        3 => 24,
        4 => 12,
        5 => 8,
        6 => 6,
        _ => 5,
    }
}

/// Resolution used when validating positivity and disjointness.
fn validation_resolution(n: usize, spec_min: usize) -> usize {
    default_resolution(n).max(spec_min)
}

impl StarDomain {
    /// Validated multi-component constructor.
    pub fn new(n: usize, components: Vec<StarComponent>) -> Result<Self, GeometryError> {
        if n < crate::constants::MIN_DIMENSION {
            return Err(GeometryError::InvalidDimension(n));
        }
        for c in &components {
            if c.center.len() != n {
                return Err(GeometryError::CenterDimensionMismatch {
                    expected: n,
                    got: c.center.len(),
                });
            }
            if !c.radial.valid_for_dimension(n) {
                return Err(GeometryError::SpecDimensionMismatch { n });
            }
        }
        let domain = Self { n, components };
        domain.validate_positivity()?;
        domain.validate_disjointness()?;
        Ok(domain)
    }

    /// Ball of radius `r` about `center`.
    pub fn ball(n: usize, r: f64, center: Vec<f64>) -> Result<Self, GeometryError> {
        if r <= 0.0 {
            return Err(GeometryError::NonPositiveRadius { component: 0, min: r });
        }
        Self::new(n, vec![StarComponent { center, radial: RadialSpec::ball(r) }])
    }

    /// Single-component star domain about `center`.
    pub fn star(n: usize, center: Vec<f64>, radial: RadialSpec) -> Result<Self, GeometryError> {
        Self::new(n, vec![StarComponent { center, radial }])
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[StarComponent] {
        &self.components
    }

    /// Smallest resolution that resolves every component's descriptor.
    pub fn min_resolution(&self) -> usize {
        self.components.iter().map(|c| c.radial.min_resolution()).max().unwrap_or(3)
    }

    /// Maximum boundary distance from `point`, sampled on a validation grid.
    pub fn circumradius_about(&self, point: &[f64]) -> f64 {
        let grid = SphereGrid::new(self.n, validation_resolution(self.n, self.min_resolution()));
        let mut best: f64 = 0.0;
        for c in &self.components {
            for i in 0..grid.len() {
                let rho = c.radial.eval(grid.angles(i));
                let d2: f64 = (0..self.n)
                    .map(|j| {
                        let x = c.center[j] + rho * grid.direction(i)[j] - point[j];
                        x * x
                    })
                    .sum();
                best = best.max(d2.sqrt());
            }
        }
        best
    }

    /// Mean of the component centers.
    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.n];
        for comp in &self.components {
            for (ci, xi) in c.iter_mut().zip(&comp.center) {
                *ci += xi / self.components.len() as f64;
            }
        }
        c
    }

    /// The domain scaled by `lambda` about the origin.
    pub fn scaled(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0);
        Self {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|c| StarComponent {
                    center: c.center.iter().map(|x| lambda * x).collect(),
                    radial: c.radial.scaled(lambda),
                })
                .collect(),
        }
    }

    /// True when `self` is contained in `other`, certified by radial
    /// dominance about a common center. Both domains must be
    /// single-component with coincident centers.
    pub fn radially_dominated_by(&self, other: &Self) -> bool {
        if self.n != other.n || self.components.len() != 1 || other.components.len() != 1 {
            return false;
        }
        let a = &self.components[0];
        let b = &other.components[0];
        if a.center.iter().zip(&b.center).any(|(x, y)| (x - y).abs() > 1e-14) {
            return false;
        }
        let res = validation_resolution(self.n, self.min_resolution().max(other.min_resolution()));
        let grid = SphereGrid::new(self.n, res);
        (0..grid.len()).all(|i| a.radial.eval(grid.angles(i)) <= b.radial.eval(grid.angles(i)) + 1e-14)
    }

    fn validate_positivity(&self) -> Result<(), GeometryError> {
        for (ci, c) in self.components.iter().enumerate() {
            let res = validation_resolution(self.n, c.radial.min_resolution());
            let grid = SphereGrid::new(self.n, res);
            let mut min = f64::INFINITY;
            for i in 0..grid.len() {
                min = min.min(c.radial.eval(grid.angles(i)));
            }
            // Also probe the polar axis, which grid nodes never hit exactly.
            for theta in [1e-9, std::f64::consts::PI - 1e-9] {
                let mut angles = vec![theta; 1];
                angles.resize(self.n - 1, 0.1);
                min = min.min(c.radial.eval(&angles));
            }
            if min <= 0.0 {
                return Err(GeometryError::NonPositiveRadius { component: ci, min });
            }
        }
        Ok(())
    }

    fn validate_disjointness(&self) -> Result<(), GeometryError> {
        if self.components.len() < 2 {
            return Ok(());
        }
        let res = validation_resolution(self.n, self.min_resolution());
        let grid = SphereGrid::new(self.n, res);
        // Sampled boundary points per component plus a local spacing scale.
        let mut points: Vec<Vec<f64>> = Vec::new();
        let mut spacing: Vec<f64> = Vec::new();
        for c in &self.components {
            let mut pts = Vec::with_capacity(grid.len() * self.n);
            let mut max_rho: f64 = 0.0;
            for i in 0..grid.len() {
                let rho = c.radial.eval(grid.angles(i));
                max_rho = max_rho.max(rho);
                for j in 0..self.n {
                    pts.push(c.center[j] + rho * grid.direction(i)[j]);
                }
            }
            points.push(pts);
            spacing.push(max_rho * std::f64::consts::PI / res as f64);
        }
        for a in 0..self.components.len() {
            for b in (a + 1)..self.components.len() {
                let h = spacing[a].max(spacing[b]);
                let mut min_d2 = f64::INFINITY;
                let (pa, pb) = (&points[a], &points[b]);
                for i in 0..pa.len() / self.n {
                    for j in 0..pb.len() / self.n {
                        let mut d2 = 0.0;
                        for k in 0..self.n {
                            let d = pa[i * self.n + k] - pb[j * self.n + k];
                            d2 += d * d;
                        }
                        min_d2 = min_d2.min(d2);
                    }
                }
                let dist = min_d2.sqrt();
                if dist <= 10.0 * h {
                    return Err(GeometryError::ComponentsOverlap { a, b, distance: dist, spacing: h });
                }
            }
        }
        Ok(())
    }

    /// Boundary point of component `comp` in direction given by `angles`.
    pub fn boundary_point(&self, comp: usize, angles: &[f64]) -> Vec<f64> {
        let c = &self.components[comp];
        let rho = c.radial.eval(angles);
        let mut dir = vec![0.0; self.n];
        direction_from_angles(angles, &mut dir);
        dir.iter().zip(&c.center).map(|(d, x0)| x0 + rho * d).collect()
    }
}
