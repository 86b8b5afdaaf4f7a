//! Dimension-dependent constants of Euclidean geometry.

use std::f64::consts::PI;

/// Smallest ambient dimension the mass formulas make sense in.
pub const MIN_DIMENSION: usize = 3;

/// Largest ambient dimension supported by the quadrature grids.
pub const MAX_DIMENSION: usize = 16;

/// Gamma function at integer or half-integer arguments `2k/2`.
///
/// `half_gamma(k)` returns `Γ(k/2)` for `k >= 1`.
fn half_gamma(k: usize) -> f64 {
    assert!(k >= 1, "gamma argument must be positive");
    if k % 2 == 0 {
        // Γ(m) = (m-1)!
        let m = k / 2;
        (1..m).map(|i| i as f64).product()
    } else {
        // Γ(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        let m = (k - 1) / 2;
        let mut v = PI.sqrt();
        for i in 0..m {
            v *= i as f64 + 0.5;
        }
        v
    }
}

/// Area of the unit `(n-1)`-sphere in `R^n`: `ω_{n-1} = 2 π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    assert!(
        (MIN_DIMENSION..=MAX_DIMENSION).contains(&n),
        "dimension {n} out of supported range"
    );
    2.0 * PI.powf(n as f64 / 2.0) / half_gamma(n)
}

/// Volume of the unit `n`-ball: `β_n = ω_{n-1} / n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    unit_sphere_area(n) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sphere_areas_match_closed_forms() {
        assert_relative_eq!(unit_sphere_area(3), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(4), 2.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(6), PI.powi(3), max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(7), 16.0 * PI.powi(3) / 15.0, max_relative = 1e-15);
    }

    #[test]
    fn ball_volumes_match_closed_forms() {
        assert_relative_eq!(unit_ball_volume(3), 4.0 * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(unit_ball_volume(4), PI * PI / 2.0, max_relative = 1e-15);
        assert_relative_eq!(unit_ball_volume(5), 8.0 * PI * PI / 15.0, max_relative = 1e-15);
    }
}
