//! Persistence of solver runs. A run file records sources, coefficients,
//! the boundary-condition descriptor, and the residual certificate; its
//! content hash is the id that `numeric-ref` factor descriptors point at.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::descriptors::{BumpDescriptor, PoleDescriptor};
use crate::conformal::{ConformalFactor, SourceSet};
use crate::solver::{BoundaryCondition, HarmonicFunction, SolveCertificate};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverRunRecord {
    pub n: usize,
    pub run_id: String,
    pub sources: Vec<PoleDescriptor>,
    pub background_poles: Vec<PoleDescriptor>,
    pub background_bumps: Vec<BumpDescriptor>,
    pub bc: BoundaryCondition,
    pub certificate: SolveCertificate,
}

impl SolverRunRecord {
    pub fn from_harmonic(h: &HarmonicFunction) -> Self {
        let solved = h.solved_sources();
        let bg = h.background();
        SolverRunRecord {
            n: h.dimension(),
            run_id: h.run_id().to_string(),
            sources: (0..solved.count())
                .map(|j| PoleDescriptor { x: solved.point(j).to_vec(), a: solved.coeff(j) })
                .collect(),
            background_poles: (0..bg.sources().count())
                .map(|j| PoleDescriptor {
                    x: bg.sources().point(j).to_vec(),
                    a: bg.sources().coeff(j),
                })
                .collect(),
            background_bumps: bg.bumps().iter().map(BumpDescriptor::from_bump).collect(),
            bc: h.bc.clone(),
            certificate: h.certificate.clone(),
        }
    }

    /// Rebuild the total field as a conformal factor.
    pub fn to_factor(&self) -> ConformalFactor {
        let mut sources = SourceSet::empty(self.n);
        for p in self.background_poles.iter().chain(&self.sources) {
            sources.push(&p.x, p.a);
        }
        ConformalFactor::from_parts(
            self.n,
            sources,
            self.background_bumps.iter().map(|b| b.to_bump()).collect(),
            self.run_id.clone(),
        )
    }
}

/// Write the record under `<dir>/runs/<run_id>.json`; returns the path.
pub fn save_run(dir: &Path, record: &SolverRunRecord) -> io::Result<PathBuf> {
    let runs = dir.join("runs");
    fs::create_dir_all(&runs)?;
    let path = runs.join(format!("{}.json", record.run_id));
    fs::write(&path, super::jsonfmt::to_json_string(record))?;
    Ok(path)
}

/// Load a run record by id.
pub fn load_run(dir: &Path, run_id: &str) -> io::Result<SolverRunRecord> {
    let path = dir.join("runs").join(format!("{run_id}.json"));
    let data = fs::read_to_string(&path)?;
    serde_json::from_str(&data).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::StarDomain;
    use crate::solver::{solve, SolverSpec};

    #[test]
    fn run_records_round_trip() {
        let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let bc = BoundaryCondition::dirichlet_zero(1);
        let h = solve(&domain, &bc, &SolverSpec::default_for_dimension(3)).unwrap();
        let record = SolverRunRecord::from_harmonic(&h);

        let dir = std::env::temp_dir().join(format!("runstore-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = save_run(&dir, &record).unwrap();
        assert!(path.exists());
        let loaded = load_run(&dir, h.run_id()).unwrap();
        assert_eq!(loaded.run_id, record.run_id);
        let factor = loaded.to_factor();
        let x = [2.0, 0.0, 0.0];
        assert!((factor.eval(&x) - h.eval(&x)).abs() < 1e-14);
        std::fs::remove_dir_all(&dir).ok();
    }
}
