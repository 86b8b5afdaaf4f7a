//! Inequality reports: one theorem instance, both sides, the margin, the
//! error budget, and the verdict policy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Wire identifiers of the verifiable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// ADM mass dominates the sum of per-component normalized area powers
    /// plus the `u^{-1}`-weighted scalar-curvature integral.
    ThmMain,
    /// ADM mass dominates the total normalized area power.
    CorArea,
    /// ADM mass dominates the normalized volume power.
    CorVol,
    /// The `u^{-2}`-weighted variant with no sign condition on curvature,
    /// flat-background specialization.
    ThmGeneral2Delta,
    /// ADM mass vs ZAS mass minus half the area power.
    LemmaZas,
    /// ADM mass vs ZAS mass scaled by `1 + ι²/4`.
    ThmZas,
    /// Mixed minimal/vanishing boundary lower bound.
    Mixed,
    /// Capacity dominates the normalized volume power.
    Pfs,
    /// Normalized total mean curvature dominates the area power
    /// (mean-convex star-shaped components).
    Minkowski,
    /// Isoperimetric ratio at least one.
    Isoperimetric,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::ThmMain => "thm_main",
            TheoremId::CorArea => "cor_area",
            TheoremId::CorVol => "cor_vol",
            TheoremId::ThmGeneral2Delta => "thm_general2_delta",
            TheoremId::LemmaZas => "lemma_zas",
            TheoremId::ThmZas => "thm_zas",
            TheoremId::Mixed => "mixed",
            TheoremId::Pfs => "pfs",
            TheoremId::Minkowski => "minkowski",
            TheoremId::Isoperimetric => "isoperimetric",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "thm_main" => TheoremId::ThmMain,
            "cor_area" => TheoremId::CorArea,
            "cor_vol" => TheoremId::CorVol,
            "thm_general2_delta" => TheoremId::ThmGeneral2Delta,
            "lemma_zas" => TheoremId::LemmaZas,
            "thm_zas" => TheoremId::ThmZas,
            "mixed" => TheoremId::Mixed,
            "pfs" => TheoremId::Pfs,
            "minkowski" => TheoremId::Minkowski,
            "isoperimetric" => TheoremId::Isoperimetric,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

/// Verdict policy: `holds` iff `margin >= -10 ε`; `violated` only when the
/// deficit is both beyond the gate and far outside the error estimate
/// (`ε < |margin| / 100`); everything else is `inconclusive`.
///
/// The policy is monotone in `ε`: growing the error estimate can only move
/// a verdict toward `inconclusive`/`holds`, never fabricate a violation.
pub fn verdict(margin: f64, eps: f64) -> Verdict {
    let eps = eps.max(0.0);
    if margin >= -10.0 * eps {
        Verdict::Holds
    } else if eps < margin.abs() / 100.0 {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

/// Outcome of verifying one theorem instance.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`.
    pub margin: f64,
    /// Combined quadrature/solver/extrapolation error estimate.
    pub eps_est: f64,
    pub verdict: Verdict,
    /// Hash of the instance descriptor that produced this report.
    pub instance: String,
    /// Named diagnostic scalars (chain links, gates, slacks). BTree order
    /// keeps serialized reports byte-stable.
    pub details: BTreeMap<String, f64>,
}

impl InequalityReport {
    pub fn new(theorem: TheoremId, lhs: f64, rhs: f64, eps_est: f64, instance: String) -> Self {
        let margin = lhs - rhs;
        InequalityReport {
            theorem,
            lhs,
            rhs,
            margin,
            eps_est,
            verdict: verdict(margin, eps_est),
            instance,
            details: BTreeMap::new(),
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    /// Force the verdict (used by hypothesis gates that demote to
    /// inconclusive rather than failing).
    pub fn demote_to_inconclusive(mut self) -> Self {
        self.verdict = Verdict::Inconclusive;
        self
    }
}

/// Exit status of a suite of reports: 0 all hold, 2 any inconclusive,
/// 3 any violated.
pub fn suite_exit_code(reports: &[InequalityReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        3
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_policy() {
        assert_eq!(verdict(1.0, 1e-6), Verdict::Holds);
        assert_eq!(verdict(-1e-9, 1e-6), Verdict::Holds);
        assert_eq!(verdict(-1.0, 1e-6), Verdict::Violated);
        assert_eq!(verdict(-1.0, 0.5), Verdict::Inconclusive);
        // Gate boundary: margin exactly -10 eps still holds (binary-exact eps).
        assert_eq!(verdict(-1.25, 0.125), Verdict::Holds);
    }

    #[test]
    fn ids_round_trip() {
        for id in [
            TheoremId::ThmMain,
            TheoremId::CorArea,
            TheoremId::CorVol,
            TheoremId::ThmGeneral2Delta,
            TheoremId::LemmaZas,
            TheoremId::ThmZas,
            TheoremId::Mixed,
            TheoremId::Pfs,
            TheoremId::Minkowski,
            TheoremId::Isoperimetric,
        ] {
            assert_eq!(TheoremId::parse(id.as_str()), Some(id));
        }
    }

    #[test]
    fn exit_codes() {
        let mk = |m: f64, e: f64| InequalityReport::new(TheoremId::Pfs, m, 0.0, e, "x".into());
        assert_eq!(suite_exit_code(&[mk(1.0, 1e-9)]), 0);
        assert_eq!(suite_exit_code(&[mk(1.0, 1e-9), mk(-1.0, 0.5)]), 2);
        assert_eq!(suite_exit_code(&[mk(-1.0, 1e-9)]), 3);
    }
}
