//! TOML config files and flag/config/default precedence.
//!
//! Every flag has a config-file equivalent under the same name (with `_`
//! instead of `-`). A flag set on the command line overrides the config
//! value, which overrides the built-in default. The config path comes from
//! `--config`, falling back to the `EPAIR_CONFIG` environment variable.

use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "EPAIR_CONFIG";

#[derive(Debug, Clone, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub beta: Option<f64>,
    pub beta_v: Option<f64>,
    pub alpha: Option<f64>,
    pub mass: Option<f64>,
    pub grid: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub axis: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Loads the config named by `--config` or `EPAIR_CONFIG`, if any.
    pub fn resolve(cli_path: Option<&Path>) -> CliResult<Self> {
        if let Some(path) = cli_path {
            return Self::load(path);
        }
        if let Some(env_path) = std::env::var_os(CONFIG_ENV) {
            return Self::load(Path::new(&env_path));
        }
        Ok(Self::default())
    }
}

/// The six physics parameters after flag/config/default merging.
#[derive(Debug, Clone, Copy)]
pub struct PhysicsParams {
    pub phi: f64,
    pub theta: f64,
    pub beta: f64,
    pub beta_v: f64,
    pub alpha: f64,
    pub mass: f64,
}

/// Physics flags shared by `report` and `sweep`.
#[derive(Debug, Clone, Copy, Default, clap::Args)]
pub struct PhysicsArgs {
    /// Superposition angle phi in [0, pi/2] (radians).
    #[arg(long)]
    pub phi: Option<f64>,

    /// Relative phase theta (radians; default 0).
    #[arg(long)]
    pub theta: Option<f64>,

    /// Boost speed beta in [0, 1 - 1e-12].
    #[arg(long)]
    pub beta: Option<f64>,

    /// Particle speed beta_v in (0, 1 - 1e-12].
    #[arg(long = "beta-v")]
    pub beta_v: Option<f64>,

    /// Boost direction angle alpha in [0, pi] (radians).
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Particle mass (natural units; default 1).
    #[arg(long)]
    pub mass: Option<f64>,
}

impl PhysicsArgs {
    /// Merges flags over config values; `defaults` supplies the per-field
    /// fallbacks (None marks the field required unless `optional` names it).
    pub fn merge(&self, config: &FileConfig) -> MergedPhysics {
        MergedPhysics {
            phi: self.phi.or(config.phi),
            theta: self.theta.or(config.theta).or(Some(0.0)),
            beta: self.beta.or(config.beta),
            beta_v: self.beta_v.or(config.beta_v),
            alpha: self.alpha.or(config.alpha),
            mass: self.mass.or(config.mass).or(Some(1.0)),
        }
    }
}

/// Physics parameters where some fields may still be unset (sweep axes).
#[derive(Debug, Clone, Copy)]
pub struct MergedPhysics {
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub beta: Option<f64>,
    pub beta_v: Option<f64>,
    pub alpha: Option<f64>,
    pub mass: Option<f64>,
}

impl MergedPhysics {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "phi" => self.phi,
            "theta" => self.theta,
            "beta" => self.beta,
            "beta_v" => self.beta_v,
            "alpha" => self.alpha,
            "mass" => self.mass,
            _ => None,
        }
    }

    /// Requires every field to be present (report; sweep fills axes first).
    pub fn require_all(&self) -> CliResult<PhysicsParams> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| {
                CliError::Usage(format!(
                    "missing parameter `{name}` (set --{} or a config value)",
                    name.replace('_', "-")
                ))
            })
        };
        Ok(PhysicsParams {
            phi: need(self.phi, "phi")?,
            theta: need(self.theta, "theta")?,
            beta: need(self.beta, "beta")?,
            beta_v: need(self.beta_v, "beta_v")?,
            alpha: need(self.alpha, "alpha")?,
            mass: need(self.mass, "mass")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_overrides_config_overrides_default() {
        let config = FileConfig {
            phi: Some(0.3),
            theta: Some(1.0),
            mass: Some(2.0),
            ..FileConfig::default()
        };
        let args = PhysicsArgs {
            phi: Some(0.9),
            ..PhysicsArgs::default()
        };
        let merged = args.merge(&config);
        assert_eq!(merged.phi, Some(0.9)); // flag wins
        assert_eq!(merged.theta, Some(1.0)); // config wins over default
        assert_eq!(merged.mass, Some(2.0));
        let nothing = PhysicsArgs::default().merge(&FileConfig::default());
        assert_eq!(nothing.theta, Some(0.0)); // defaults
        assert_eq!(nothing.mass, Some(1.0));
        assert!(nothing.require_all().is_err());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let err = toml::from_str::<FileConfig>("phj = 0.5").unwrap_err();
        assert!(err.to_string().contains("phj"));
    }
}
