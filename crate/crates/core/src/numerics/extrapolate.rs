//! Richardson extrapolation against a known leading error exponent.

/// Outcome of extrapolating a sequence `f(r_k)` sampled at radii (or grid
/// spacings) in fixed ratio, assuming `f(r) = L + C r^{-p} + o(r^{-p})`.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    /// Best available limit estimate.
    pub value: f64,
    /// Gap between the last two extrapolants; used as the error estimate.
    pub error: f64,
    /// Successive extrapolants, one per adjacent sample pair.
    pub extrapolants: Vec<f64>,
}

/// Two-term Richardson extrapolation of `samples[k] = f(r0 * ratio^k)` with
/// leading error `r^{-p}`.
///
/// Returns `None` when fewer than two samples are given. The caller decides
/// whether non-decreasing gaps constitute a failure; plateaus at roundoff
/// level are normal for sequences that are already converged.
pub fn richardson_limit(samples: &[f64], ratio: f64, p: f64) -> Option<Extrapolation> {
    if samples.len() < 2 {
        return None;
    }
    let factor = ratio.powf(p);
    let extrapolants: Vec<f64> = samples
        .windows(2)
        .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
        .collect();
    let value = *extrapolants.last().unwrap();
    let error = if extrapolants.len() >= 2 {
        (extrapolants[extrapolants.len() - 1] - extrapolants[extrapolants.len() - 2]).abs()
    } else {
        (samples[1] - samples[0]).abs()
    };
    Some(Extrapolation { value, error, extrapolants })
}

/// True when the gaps between successive extrapolants grow by more than
/// `growth` while staying above the absolute floor — the signature of a
/// sequence that is not converging at the assumed rate.
pub fn gaps_diverge(extrapolants: &[f64], floor: f64, growth: f64) -> bool {
    let gaps: Vec<f64> = extrapolants.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let mut bad = 0;
    for w in gaps.windows(2) {
        if w[1] > growth * w[0] && w[1] > floor {
            bad += 1;
        } else {
            bad = 0;
        }
        if bad >= 2 {
            return true;
        }
    }
    false
}

/// Observed convergence order from three values computed at resolutions in
/// ratio `r` (coarse, mid, fine): `log(|f0-f1| / |f1-f2|) / log(r)`.
///
/// Returns `None` when the finer delta is at roundoff scale relative to the
/// values themselves, in which case the sequence has saturated.
pub fn observed_order(coarse: f64, mid: f64, fine: f64, r: f64) -> Option<f64> {
    let d0 = (coarse - mid).abs();
    let d1 = (mid - fine).abs();
    let scale = coarse.abs().max(mid.abs()).max(fine.abs()).max(1e-300);
    if d1 <= 100.0 * f64::EPSILON * scale {
        return None;
    }
    Some((d0 / d1).ln() / r.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_power_law_limit() {
        let radii: Vec<f64> = (0..6).map(|k| 4.0 * 2f64.powi(k)).collect();
        let samples: Vec<f64> = radii.iter().map(|r| 7.0 + 3.0 / r).collect();
        let ex = richardson_limit(&samples, 2.0, 1.0).unwrap();
        assert_relative_eq!(ex.value, 7.0, epsilon = 1e-12);
        assert!(ex.error < 1e-12);
    }

    #[test]
    fn order_detection() {
        // Second-order sequence sampled at h, h/2, h/4.
        let f = |h: f64| 1.0 + 0.5 * h * h;
        let order = observed_order(f(0.1), f(0.05), f(0.025), 2.0).unwrap();
        assert_relative_eq!(order, 2.0, epsilon = 1e-9);
        // Saturated sequence reports None.
        assert!(observed_order(1.0, 1.0, 1.0, 2.0).is_none());
    }
}
