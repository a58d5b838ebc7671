use std::path::{Path, PathBuf};

use isores::resonance::SearchRegion;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Resonances,
    Invariants,
    Compare,
    Sobolev,
    HeatTrace,
    DetSweep,
}

/// Grid of λ values for `det-sweep`: `re_steps` × `im_steps` points
/// spanning the region, corners included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub re_steps: usize,
    pub im_steps: usize,
}

fn default_tol() -> f64 {
    1e-8
}
fn default_nodes() -> usize {
    200
}
fn default_ell_max() -> usize {
    8
}
fn default_j_max() -> usize {
    3
}
fn default_match_tol() -> f64 {
    1e-6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    /// Potential files, relative to the config file.
    #[serde(default)]
    pub potentials: Vec<PathBuf>,
    #[serde(default)]
    pub region: Option<SearchRegion>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_ell_max")]
    pub ell_max: usize,
    /// Highest invariant order (invariants, compare, heat-trace) or
    /// inequality order (sobolev).
    #[serde(default = "default_j_max")]
    pub j_max: usize,
    /// Distance within which two resonances count as equal (compare).
    #[serde(default = "default_match_tol")]
    pub match_tol: f64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    /// Number of seeded random bump sums added to a `sobolev` run.
    #[serde(default)]
    pub random_potentials: usize,
    #[serde(default)]
    pub grid: Option<SweepGrid>,
    /// Heat times; ten log-spaced points in [1e-3, 1e-2] when absent.
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("malformed config {}: {e}", path.display())))?;
        if cfg.command == Command::HeatTrace && cfg.t_grid.is_none() {
            cfg.t_grid = Some((0..10).map(|i| 1e-3 * 10f64.powf(i as f64 / 9.0)).collect());
        }
        Ok(cfg)
    }

    pub fn validate(&self, base: &Path) -> Result<(), CliError> {
        let fail = |m: String| Err(CliError::Validation(m));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return fail(format!("tol must be positive, got {}", self.tol));
        }
        if !(self.match_tol > 0.0 && self.match_tol.is_finite()) {
            return fail(format!("match_tol must be positive, got {}", self.match_tol));
        }
        if self.nodes < 8 {
            return fail(format!("nodes must be at least 8, got {}", self.nodes));
        }
        for p in &self.potentials {
            if !base.join(p).is_file() {
                return fail(format!("potential file {} does not exist", base.join(p).display()));
            }
        }
        let needed = match self.command {
            Command::Compare => 2..=2,
            Command::Sobolev => usize::from(self.random_potentials == 0)..=usize::MAX,
            Command::Invariants => 1..=usize::MAX,
            _ => 1..=1,
        };
        if !needed.contains(&self.potentials.len()) {
            return fail(format!("{:?} takes {:?} potential files, got {}", self.command, needed, self.potentials.len()));
        }
        if matches!(self.command, Command::Resonances | Command::Compare | Command::DetSweep) {
            match &self.region {
                Some(r) => r.validate().map_err(|e| CliError::Validation(e.to_string()))?,
                None => return fail(format!("{:?} needs a region", self.command)),
            }
        }
        if self.command == Command::DetSweep {
            match self.grid {
                Some(g) if g.re_steps >= 1 && g.im_steps >= 1 => {}
                _ => return fail("det-sweep needs a grid with re_steps, im_steps ≥ 1".into()),
            }
        }
        Ok(())
    }
}
