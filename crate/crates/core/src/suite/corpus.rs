//! The fixed verification corpus: named star-shaped domains with
//! axisymmetric perturbations of moderate amplitude, mean-convex by
//! construction (checked in tests).

use crate::geometry::{AxiProfile, RadialSpec, StarDomain};

/// Named corpus domains for dimension `n`. Twelve instances in n = 3 and
/// four in n = 4; amplitudes stay at or below 0.3.
pub fn corpus_domains(n: usize) -> Vec<(String, StarDomain)> {
    let cosine = |base: f64, terms: Vec<(u32, f64)>| RadialSpec::Axisymmetric {
        profile: AxiProfile::Cosine { base, terms },
    };
    let spheroid = |polar: f64, equatorial: f64| RadialSpec::Axisymmetric {
        profile: AxiProfile::Spheroid { polar, equatorial },
    };
    let specs: Vec<(String, RadialSpec)> = match n {
        3 => vec![
            ("ball".into(), RadialSpec::ball(1.0)),
            ("tilt-10".into(), cosine(1.0, vec![(1, 0.10)])),
            ("tilt-20".into(), cosine(1.0, vec![(1, 0.20)])),
            ("tilt-30".into(), cosine(1.0, vec![(1, 0.30)])),
            ("squash-10".into(), cosine(1.0, vec![(2, 0.10)])),
            ("squash-15".into(), cosine(1.0, vec![(2, 0.15)])),
            ("tilt-squash".into(), cosine(1.0, vec![(1, 0.10), (2, 0.10)])),
            ("tilt-wobble".into(), cosine(1.0, vec![(1, 0.20), (3, -0.05)])),
            ("mixed-25".into(), cosine(1.0, vec![(1, 0.25), (2, 0.05)])),
            ("prolate-13".into(), spheroid(1.3, 1.0)),
            ("prolate-15".into(), spheroid(1.5, 1.0)),
            ("oblate-08".into(), spheroid(0.8, 1.0)),
        ],
        4 => vec![
            ("ball".into(), RadialSpec::ball(1.0)),
            ("tilt-15".into(), cosine(1.0, vec![(1, 0.15)])),
            ("squash-10".into(), cosine(1.0, vec![(2, 0.10)])),
            ("prolate-12".into(), spheroid(1.2, 1.0)),
        ],
        _ => vec![("ball".into(), RadialSpec::ball(1.0))],
    };
    specs
        .into_iter()
        .map(|(name, spec)| {
            let domain = StarDomain::star(n, vec![0.0; n], spec)
                .expect("corpus domains are valid by construction");
            (format!("n{n}-{name}"), domain)
        })
        .collect()
}
