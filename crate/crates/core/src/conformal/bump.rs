//! Compactly supported radial densities and their Newtonian potentials.
//!
//! A bump is a radial density `dens(t) = amplitude · (1 - s²)³` with
//! `s = (2t - (r_in + r_out)) / (r_out - r_in)` on the annulus
//! `r_in <= t <= r_out` about `center`, zero elsewhere. Its potential `N`
//! solves `ΔN = -dens` exactly, which keeps the scalar-curvature sign of the
//! resulting conformal factor a matter of algebra, not quadrature.

use serde::{Deserialize, Serialize};

use crate::constants::unit_sphere_area;
use crate::numerics::gauss_legendre_on;

/// Quadrature order for the enclosed-mass integral. The integrand is a
/// polynomial of degree `n + 5`, so this rule is exact for all supported n.
const MASS_ORDER: usize = 12;

/// Quadrature order for the outer potential integral; the integrand is
/// analytic on the support, so this is effectively exact.
const RADIAL_ORDER: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialBump {
    pub center: Vec<f64>,
    pub r_inner: f64,
    pub r_outer: f64,
    /// Peak density; may be negative (then the factor is not superharmonic).
    pub amplitude: f64,
}

impl RadialBump {
    pub fn ball(center: Vec<f64>, radius: f64, amplitude: f64) -> Self {
        Self { center, r_inner: 0.0, r_outer: radius, amplitude }
    }

    pub fn annulus(center: Vec<f64>, r_inner: f64, r_outer: f64, amplitude: f64) -> Self {
        assert!(0.0 <= r_inner && r_inner < r_outer);
        Self { center, r_inner, r_outer, amplitude }
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Density at radius `t` from the bump center. For a ball support
    /// (`r_inner = 0`) the profile peaks at the center; annuli vanish to
    /// third order at both edges.
    pub fn density(&self, t: f64) -> f64 {
        if t < self.r_inner || t > self.r_outer {
            return 0.0;
        }
        let s = if self.r_inner == 0.0 {
            t / self.r_outer
        } else {
            (2.0 * t - (self.r_inner + self.r_outer)) / (self.r_outer - self.r_inner)
        };
        let q = 1.0 - s * s;
        self.amplitude * q * q * q
    }

    pub fn density_at(&self, x: &[f64]) -> f64 {
        self.density(self.distance(x))
    }

    fn distance(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Mass within radius `t`: `M(t) = ω_{n-1} ∫_0^t dens(τ) τ^{n-1} dτ`.
    pub fn enclosed_mass(&self, n: usize, t: f64) -> f64 {
        let hi = t.min(self.r_outer);
        if hi <= self.r_inner {
            return 0.0;
        }
        let (nodes, weights) = gauss_legendre_on(MASS_ORDER, self.r_inner, hi);
        let integral: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(t, w)| w * self.density(*t) * t.powi(n as i32 - 1))
            .sum();
        unit_sphere_area(n) * integral
    }

    /// Total mass `∫ dens`.
    pub fn total_mass(&self, n: usize) -> f64 {
        self.enclosed_mass(n, self.r_outer)
    }

    /// Newtonian potential at radius `s`, normalized so `ΔN = -dens`:
    /// `N(s) = ∫_s^∞ M(t) / (ω_{n-1} t^{n-1}) dt`.
    pub fn potential_radial(&self, n: usize, s: f64) -> f64 {
        let omega = unit_sphere_area(n);
        let far = |r: f64| {
            self.total_mass(n) / ((n as f64 - 2.0) * omega * r.powi(n as i32 - 2))
        };
        if s >= self.r_outer {
            return far(s);
        }
        let lo = s.max(self.r_inner);
        let (nodes, weights) = gauss_legendre_on(RADIAL_ORDER, lo, self.r_outer);
        let inner: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(t, w)| w * self.enclosed_mass(n, *t) / (omega * t.powi(n as i32 - 1)))
            .sum();
        inner + far(self.r_outer)
    }

    pub fn potential(&self, n: usize, x: &[f64]) -> f64 {
        self.potential_radial(n, self.distance(x))
    }

    /// Gradient of the potential accumulated into `out`:
    /// `N'(s) = -M(s) / (ω_{n-1} s^{n-1})` along the radial direction.
    pub fn add_potential_gradient(&self, n: usize, x: &[f64], out: &mut [f64]) {
        let s = self.distance(x);
        if s < 1e-14 {
            return; // regular at the center, gradient vanishes
        }
        let deriv = -self.enclosed_mass(n, s) / (unit_sphere_area(n) * s.powi(n as i32 - 1));
        for (o, (xi, ci)) in out.iter_mut().zip(x.iter().zip(&self.center)) {
            *o += deriv * (xi - ci) / s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn potential_solves_poisson() {
        // Central finite-difference Laplacian of N should equal -dens.
        let bump = RadialBump::annulus(vec![0.0; 3], 0.5, 1.5, 2.0);
        let n = 3;
        for xr in [0.8f64, 1.0, 1.2, 1.9] {
            let x = [xr, 0.1, -0.2];
            let h = 1e-4;
            let mut lap = 0.0;
            for k in 0..3 {
                let mut xp = x;
                let mut xm = x;
                xp[k] += h;
                xm[k] -= h;
                lap += bump.potential(n, &xp) - 2.0 * bump.potential(n, &x)
                    + bump.potential(n, &xm);
            }
            lap /= h * h;
            assert_relative_eq!(lap, -bump.density_at(&x), epsilon = 2e-5);
        }
    }

    #[test]
    fn far_field_is_monopole() {
        let bump = RadialBump::ball(vec![0.0; 4], 1.0, 3.0);
        let n = 4;
        let m = bump.total_mass(n);
        let r: f64 = 7.0;
        let expect = m / ((n as f64 - 2.0) * unit_sphere_area(n) * r.powi(n as i32 - 2));
        assert_relative_eq!(
            bump.potential(n, &[r, 0.0, 0.0, 0.0]),
            expect,
            max_relative = 1e-13
        );
    }

    #[test]
    fn potential_constant_in_cavity() {
        let bump = RadialBump::annulus(vec![0.0; 3], 1.0, 2.0, 1.0);
        let v0 = bump.potential(3, &[0.0, 0.0, 0.0]);
        let v1 = bump.potential(3, &[0.5, 0.0, 0.0]);
        assert_relative_eq!(v0, v1, max_relative = 1e-13);
        let mut g = vec![0.0; 3];
        bump.add_potential_gradient(3, &[0.3, 0.2, 0.0], &mut g);
        assert!(g.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let bump = RadialBump::ball(vec![1.0, 0.0, 0.0, 0.0], 1.2, -0.8);
        let n = 4;
        let x = [1.4, 0.3, -0.2, 0.5];
        let mut g = vec![0.0; n];
        bump.add_potential_gradient(n, &x, &mut g);
        let h = 1e-6;
        for k in 0..n {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let fd = (bump.potential(n, &xp) - bump.potential(n, &xm)) / (2.0 * h);
            assert_relative_eq!(g[k], fd, epsilon = 1e-8);
        }
    }
}
