//! Radial support functions `ρ : S^{n-1} → R_{>0}` describing star-shaped
//! boundaries, with analytic first and second angular derivatives.
//!
//! Three descriptor families are supported: constants, axisymmetric profiles
//! in the first polar angle (cosine series or spheroids), and, in dimension
//! three, finite combinations of real spherical harmonics up to degree three.

use serde::{Deserialize, Serialize};

/// Axisymmetric profile `ρ(θ)` in the first polar angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AxiProfile {
    /// `ρ(θ) = base + Σ amp_k cos(k θ)`.
    Cosine { base: f64, terms: Vec<(u32, f64)> },
    /// Spheroid with semi-axis `polar` along the θ = 0 axis and
    /// `equatorial` on the orthogonal directions.
    Spheroid { polar: f64, equatorial: f64 },
}

/// One real spherical-harmonic term for dimension-three boundaries.
/// `m > 0` selects `cos(mφ)`, `m < 0` selects `sin(|m|φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphTerm {
    pub l: u32,
    pub m: i32,
    pub amp: f64,
}

/// Radial boundary descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialSpec {
    Constant { radius: f64 },
    Axisymmetric { profile: AxiProfile },
    /// `ρ(θ, φ) = base + Σ amp · Y_{l,m}(θ, φ)` (unnormalized real
    /// harmonics); valid only for n = 3.
    SphHarmonic { base: f64, terms: Vec<SphTerm> },
}

/// Value and angular derivatives of `ρ` at one grid node. `grad[k] = ∂ρ/∂a_k`
/// and `hess` is the raw coordinate Hessian `∂²ρ/∂a_k∂a_l` (row-major,
/// `(n-1) x (n-1)`), not yet covariant.
#[derive(Debug, Clone)]
pub struct RadialDerivs {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: Vec<f64>,
}

impl RadialSpec {
    pub fn ball(radius: f64) -> Self {
        RadialSpec::Constant { radius }
    }

    /// Largest angular frequency present, used to pick safe grid sizes.
    pub fn max_frequency(&self) -> u32 {
        match self {
            RadialSpec::Constant { .. } => 0,
            RadialSpec::Axisymmetric { profile } => match profile {
                AxiProfile::Cosine { terms, .. } => {
                    terms.iter().map(|(k, _)| *k).max().unwrap_or(0)
                }
                // Analytic; treat like a low-order profile.
                AxiProfile::Spheroid { .. } => 2,
            },
            RadialSpec::SphHarmonic { terms, .. } => terms.iter().map(|t| t.l).max().unwrap_or(0),
        }
    }

    /// Minimum grid resolution that resolves this profile.
    pub fn min_resolution(&self) -> usize {
        (2 * self.max_frequency() as usize + 2).max(3)
    }

    /// Whether the descriptor is admissible in ambient dimension `n`.
    pub fn valid_for_dimension(&self, n: usize) -> bool {
        match self {
            RadialSpec::SphHarmonic { .. } => n == 3,
            _ => true,
        }
    }

    pub fn eval(&self, angles: &[f64]) -> f64 {
        match self {
            RadialSpec::Constant { radius } => *radius,
            RadialSpec::Axisymmetric { profile } => profile.eval(angles[0]),
            RadialSpec::SphHarmonic { base, terms } => {
                let theta = angles[0];
                let phi = angles[angles.len() - 1];
                base + terms.iter().map(|t| t.amp * harmonic(t.l, t.m, theta, phi).0).sum::<f64>()
            }
        }
    }

    /// Value together with first and second coordinate derivatives.
    pub fn derivs(&self, angles: &[f64]) -> RadialDerivs {
        let na = angles.len();
        let mut d = RadialDerivs { value: 0.0, grad: vec![0.0; na], hess: vec![0.0; na * na] };
        match self {
            RadialSpec::Constant { radius } => d.value = *radius,
            RadialSpec::Axisymmetric { profile } => {
                let (v, d1, d2) = profile.derivs(angles[0]);
                d.value = v;
                d.grad[0] = d1;
                d.hess[0] = d2;
            }
            RadialSpec::SphHarmonic { base, terms } => {
                let theta = angles[0];
                let phi = angles[na - 1];
                let mut v = *base;
                let (mut dt, mut dp, mut dtt, mut dtp, mut dpp) = (0.0, 0.0, 0.0, 0.0, 0.0);
                for t in terms {
                    let h = harmonic(t.l, t.m, theta, phi);
                    v += t.amp * h.0;
                    dt += t.amp * h.1;
                    dp += t.amp * h.2;
                    dtt += t.amp * h.3;
                    dtp += t.amp * h.4;
                    dpp += t.amp * h.5;
                }
                d.value = v;
                d.grad[0] = dt;
                d.grad[na - 1] = dp;
                d.hess[0] = dtt;
                d.hess[na - 1] = dtp;
                d.hess[(na - 1) * na] = dtp;
                d.hess[(na - 1) * na + (na - 1)] = dpp;
            }
        }
        d
    }

    /// Profile with all lengths multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        match self {
            RadialSpec::Constant { radius } => RadialSpec::Constant { radius: lambda * radius },
            RadialSpec::Axisymmetric { profile } => RadialSpec::Axisymmetric {
                profile: match profile {
                    AxiProfile::Cosine { base, terms } => AxiProfile::Cosine {
                        base: lambda * base,
                        terms: terms.iter().map(|(k, a)| (*k, lambda * a)).collect(),
                    },
                    AxiProfile::Spheroid { polar, equatorial } => AxiProfile::Spheroid {
                        polar: lambda * polar,
                        equatorial: lambda * equatorial,
                    },
                },
            },
            RadialSpec::SphHarmonic { base, terms } => RadialSpec::SphHarmonic {
                base: lambda * base,
                terms: terms
                    .iter()
                    .map(|t| SphTerm { l: t.l, m: t.m, amp: lambda * t.amp })
                    .collect(),
            },
        }
    }
}

impl AxiProfile {
    fn eval(&self, theta: f64) -> f64 {
        self.derivs(theta).0
    }

    /// `(ρ, ρ', ρ'')` at `theta`.
    fn derivs(&self, theta: f64) -> (f64, f64, f64) {
        match self {
            AxiProfile::Cosine { base, terms } => {
                let mut v = *base;
                let mut d1 = 0.0;
                let mut d2 = 0.0;
                for &(k, amp) in terms {
                    let kf = k as f64;
                    let (s, c) = (kf * theta).sin_cos();
                    v += amp * c;
                    d1 -= amp * kf * s;
                    d2 -= amp * kf * kf * c;
                }
                (v, d1, d2)
            }
            AxiProfile::Spheroid { polar: a, equatorial: b } => {
                let (s2, c2) = (2.0 * theta).sin_cos();
                let sin2 = theta.sin() * theta.sin();
                let cos2 = theta.cos() * theta.cos();
                let f = a * a * sin2 + b * b * cos2;
                let fp = (a * a - b * b) * s2;
                let fpp = 2.0 * (a * a - b * b) * c2;
                let ab = a * b;
                let v = ab * f.powf(-0.5);
                let d1 = -0.5 * ab * f.powf(-1.5) * fp;
                let d2 = ab * (0.75 * f.powf(-2.5) * fp * fp - 0.5 * f.powf(-1.5) * fpp);
                (v, d1, d2)
            }
        }
    }
}

/// Value and partials `(Y, ∂θ, ∂φ, ∂θθ, ∂θφ, ∂φφ)` of the unnormalized real
/// harmonic `Y_{l,m}` for `l <= 3`.
fn harmonic(l: u32, m: i32, theta: f64, phi: f64) -> (f64, f64, f64, f64, f64, f64) {
    let am = m.unsigned_abs();
    assert!(l <= 3 && am <= l, "spherical harmonic (l={l}, m={m}) not supported");
    let (s, c) = theta.sin_cos();
    // Zonal factor f(θ) with two derivatives.
    let (f, f1, f2) = match (l, am) {
        (0, 0) => (1.0, 0.0, 0.0),
        (1, 0) => (c, -s, -c),
        (1, 1) => (s, c, -s),
        (2, 0) => ((3.0 * c * c - 1.0) / 2.0, -3.0 * c * s, -3.0 * (2.0 * theta).cos()),
        (2, 1) => (s * c, c * c - s * s, -4.0 * s * c),
        (2, 2) => (s * s, 2.0 * s * c, 2.0 * (c * c - s * s)),
        (3, 0) => (
            (5.0 * c * c * c - 3.0 * c) / 2.0,
            s * (3.0 - 15.0 * c * c) / 2.0,
            (33.0 * c - 45.0 * c * c * c) / 2.0,
        ),
        (3, 1) => (
            s * (5.0 * c * c - 1.0),
            15.0 * c * c * c - 11.0 * c,
            s * (11.0 - 45.0 * c * c),
        ),
        (3, 2) => (s * s * c, s * (3.0 * c * c - 1.0), 9.0 * c * c * c - 7.0 * c),
        (3, 3) => (s * s * s, 3.0 * s * s * c, 3.0 * s * (2.0 * c * c - s * s)),
        _ => unreachable!(),
    };
    // Azimuthal factor g(φ).
    let mf = am as f64;
    let (g, g1, g2) = if m == 0 {
        (1.0, 0.0, 0.0)
    } else if m > 0 {
        let (sp, cp) = (mf * phi).sin_cos();
        (cp, -mf * sp, -mf * mf * cp)
    } else {
        let (sp, cp) = (mf * phi).sin_cos();
        (sp, mf * cp, -mf * mf * sp)
    };
    (f * g, f1 * g, f * g1, f2 * g, f1 * g1, f * g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(spec: &RadialSpec, angles: &[f64]) {
        let h = 1e-5;
        let na = angles.len();
        let d = spec.derivs(angles);
        assert!((d.value - spec.eval(angles)).abs() < 1e-14);
        for k in 0..na {
            let mut ap = angles.to_vec();
            let mut am = angles.to_vec();
            ap[k] += h;
            am[k] -= h;
            let fd = (spec.eval(&ap) - spec.eval(&am)) / (2.0 * h);
            assert!((d.grad[k] - fd).abs() < 1e-7, "grad axis {k}: {} vs {}", d.grad[k], fd);
            for l in 0..na {
                let mut app = angles.to_vec();
                let mut apm = angles.to_vec();
                let mut amp = angles.to_vec();
                let mut amm = angles.to_vec();
                app[k] += h;
                app[l] += h;
                apm[k] += h;
                apm[l] -= h;
                amp[k] -= h;
                amp[l] += h;
                amm[k] -= h;
                amm[l] -= h;
                let fd2 = (spec.eval(&app) - spec.eval(&apm) - spec.eval(&amp)
                    + spec.eval(&amm))
                    / (4.0 * h * h);
                assert!(
                    (d.hess[k * na + l] - fd2).abs() < 2e-5,
                    "hess ({k},{l}): {} vs {}",
                    d.hess[k * na + l],
                    fd2
                );
            }
        }
    }

    #[test]
    fn axisymmetric_derivatives_match_finite_differences() {
        let spec = RadialSpec::Axisymmetric {
            profile: AxiProfile::Cosine { base: 1.0, terms: vec![(1, 0.2), (3, -0.05)] },
        };
        fd_check(&spec, &[0.7, 1.3]);
        fd_check(&spec, &[2.2, 4.0]);
        let spheroid =
            RadialSpec::Axisymmetric { profile: AxiProfile::Spheroid { polar: 2.0, equatorial: 1.0 } };
        fd_check(&spheroid, &[0.4, 2.0]);
        fd_check(&spheroid, &[1.9, 0.3]);
    }

    #[test]
    fn harmonic_derivatives_match_finite_differences() {
        for l in 0..=3u32 {
            for m in -(l as i32)..=(l as i32) {
                let spec = RadialSpec::SphHarmonic {
                    base: 2.0,
                    terms: vec![SphTerm { l, m, amp: 0.3 }],
                };
                fd_check(&spec, &[0.9, 1.1]);
                fd_check(&spec, &[2.4, 5.0]);
            }
        }
    }

    #[test]
    fn spheroid_hits_semi_axes() {
        let spec =
            RadialSpec::Axisymmetric { profile: AxiProfile::Spheroid { polar: 2.0, equatorial: 1.0 } };
        assert!((spec.eval(&[1e-9, 0.0]) - 2.0).abs() < 1e-6);
        assert!((spec.eval(&[std::f64::consts::FRAC_PI_2, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scaling_scales_values() {
        let spec = RadialSpec::SphHarmonic {
            base: 1.0,
            terms: vec![SphTerm { l: 2, m: 1, amp: 0.1 }],
        };
        let s = spec.scaled(2.5);
        let angles = [1.0, 2.0];
        assert!((s.eval(&angles) - 2.5 * spec.eval(&angles)).abs() < 1e-13);
    }
}
