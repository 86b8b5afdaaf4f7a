//! JSON descriptors for domains and conformal factors.

use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalFactor, RadialBump};
use crate::geometry::{GeometryError, RadialSpec, StarComponent, StarDomain};

/// `{"n": .., "components": [{"center": [..], "radial": {"kind": ..}}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainDescriptor {
    pub n: usize,
    pub components: Vec<ComponentDescriptor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDescriptor {
    pub center: Vec<f64>,
    pub radial: RadialSpec,
}

impl DomainDescriptor {
    pub fn to_domain(&self) -> Result<StarDomain, GeometryError> {
        StarDomain::new(
            self.n,
            self.components
                .iter()
                .map(|c| StarComponent { center: c.center.clone(), radial: c.radial.clone() })
                .collect(),
        )
    }

    pub fn from_domain(domain: &StarDomain) -> Self {
        DomainDescriptor {
            n: domain.dimension(),
            components: domain
                .components()
                .iter()
                .map(|c| ComponentDescriptor { center: c.center.clone(), radial: c.radial.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoleDescriptor {
    pub x: Vec<f64>,
    pub a: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BumpDescriptor {
    pub center: Vec<f64>,
    #[serde(default)]
    pub r_inner: f64,
    pub r_outer: f64,
    pub amplitude: f64,
}

impl BumpDescriptor {
    pub fn to_bump(&self) -> RadialBump {
        RadialBump {
            center: self.center.clone(),
            r_inner: self.r_inner,
            r_outer: self.r_outer,
            amplitude: self.amplitude,
        }
    }

    pub fn from_bump(b: &RadialBump) -> Self {
        BumpDescriptor {
            center: b.center.clone(),
            r_inner: b.r_inner,
            r_outer: b.r_outer,
            amplitude: b.amplitude,
        }
    }
}

/// Conformal-factor descriptor; solver-produced factors are referenced by
/// run id and resolved against a run store.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorDescriptor {
    Poles { poles: Vec<PoleDescriptor> },
    Bump { poles: Vec<PoleDescriptor>, bumps: Vec<BumpDescriptor> },
    NumericRef { run_id: String },
}

impl FactorDescriptor {
    /// Build the closed-form factor; `NumericRef` must be resolved through
    /// [`crate::io::runstore`] instead.
    pub fn to_factor(&self, n: usize) -> Option<ConformalFactor> {
        match self {
            FactorDescriptor::Poles { poles } => Some(ConformalFactor::pole_family(
                n,
                poles.iter().map(|p| (p.x.clone(), p.a)).collect(),
            )),
            FactorDescriptor::Bump { poles, bumps } => Some(ConformalFactor::with_bumps(
                n,
                poles.iter().map(|p| (p.x.clone(), p.a)).collect(),
                bumps.iter().map(|b| b.to_bump()).collect(),
            )),
            FactorDescriptor::NumericRef { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_descriptor_round_trip() {
        let json = r#"{
            "n": 3,
            "components": [
                {"center": [0.0, 0.0, 0.0],
                 "radial": {"kind": "axisymmetric",
                            "profile": {"type": "cosine", "base": 1.0, "terms": [[1, 0.2]]}}}
            ]
        }"#;
        let desc: DomainDescriptor = serde_json::from_str(json).unwrap();
        let domain = desc.to_domain().unwrap();
        assert_eq!(domain.dimension(), 3);
        let back = DomainDescriptor::from_domain(&domain);
        assert_eq!(serde_json::to_value(&back).unwrap()["components"][0]["radial"]["kind"], "axisymmetric");
    }

    #[test]
    fn factor_descriptor_kinds() {
        let json = r#"{"kind": "poles", "poles": [{"x": [0,0,0], "a": 0.5}]}"#;
        let desc: FactorDescriptor = serde_json::from_str(json).unwrap();
        let f = desc.to_factor(3).unwrap();
        assert_eq!(f.sources().count(), 1);

        let json = r#"{"kind": "numeric-ref", "run_id": "abc"}"#;
        let desc: FactorDescriptor = serde_json::from_str(json).unwrap();
        assert!(desc.to_factor(3).is_none());
    }
}
