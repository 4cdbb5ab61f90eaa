//! Tolerance configuration: defaults, then an optional `key = value` file,
//! then command-line flags.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Args;
use imcf_soliton::Tolerances;

#[derive(Args, Debug, Clone, Default)]
pub struct ToleranceArgs {
    /// Read tolerances from a `key = value` file (flags take precedence)
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<std::path::PathBuf>,

    /// Band on |c^2 - 4(1-d)| treated as critical
    #[arg(long, global = true)]
    pub tolerance_discriminant: Option<f64>,

    /// Samples closer than this (in theta) to a cusp are dropped
    #[arg(long, global = true)]
    pub tolerance_cusp_exclusion: Option<f64>,

    /// Finite-difference step in theta
    #[arg(long, global = true)]
    pub tolerance_fd_step: Option<f64>,

    /// Bound on the scale-relative soliton residual
    #[arg(long, global = true)]
    pub tolerance_residual: Option<f64>,

    /// Bound on the residual with finite-difference derivatives
    #[arg(long, global = true)]
    pub tolerance_fd_residual: Option<f64>,

    /// Time step of the flow-law central difference
    #[arg(long, global = true)]
    pub tolerance_flow_dt: Option<f64>,

    /// Bound on the scale-relative flow-law residual
    #[arg(long, global = true)]
    pub tolerance_flow_residual: Option<f64>,

    /// Agreement between numeric and closed-form cusps
    #[arg(long, global = true)]
    pub tolerance_cusp_match: Option<f64>,
}

fn slot<'a>(tol: &'a mut Tolerances, key: &str) -> Option<&'a mut f64> {
    let key = key
        .trim()
        .trim_start_matches("tolerance")
        .trim_start_matches(['-', '_', '.']);
    Some(match key.replace('-', "_").as_str() {
        "discriminant" => &mut tol.discriminant,
        "cusp_exclusion" => &mut tol.cusp_exclusion,
        "fd_step" => &mut tol.fd_step,
        "residual" => &mut tol.residual,
        "fd_residual" => &mut tol.fd_residual,
        "flow_dt" => &mut tol.flow_dt,
        "flow_residual" => &mut tol.flow_residual,
        "cusp_match" => &mut tol.cusp_match,
        _ => return None,
    })
}

/// Applies `key = value` lines; `#` starts a comment.
pub fn apply_config_text(tol: &mut Tolerances, text: &str) -> Result<()> {
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`, got `{raw}`", n + 1);
        };
        let value: f64 = value.trim().parse().with_context(|| {
            format!("config line {}: `{}` is not a number", n + 1, value.trim())
        })?;
        check_positive(key.trim(), value)?;
        match slot(tol, key) {
            Some(s) => *s = value,
            None => bail!("config line {}: unknown tolerance `{}`", n + 1, key.trim()),
        }
    }
    Ok(())
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        bail!("tolerance {name} must be positive and finite, got {value}");
    }
    Ok(())
}

impl ToleranceArgs {
    pub fn resolve(&self) -> Result<Tolerances> {
        let mut tol = Tolerances::default();
        if let Some(path) = &self.config {
            let text = read(path)?;
            apply_config_text(&mut tol, &text)?;
        }
        let flags = [
            ("discriminant", self.tolerance_discriminant),
            ("cusp_exclusion", self.tolerance_cusp_exclusion),
            ("fd_step", self.tolerance_fd_step),
            ("residual", self.tolerance_residual),
            ("fd_residual", self.tolerance_fd_residual),
            ("flow_dt", self.tolerance_flow_dt),
            ("flow_residual", self.tolerance_flow_residual),
            ("cusp_match", self.tolerance_cusp_match),
        ];
        for (name, value) in flags {
            if let Some(v) = value {
                check_positive(name, v)?;
                *slot(&mut tol, name).unwrap() = v;
            }
        }
        Ok(tol)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read config file {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut tol = Tolerances::default();
        apply_config_text(
            &mut tol,
            "# comment\nresidual = 1e-6\ntolerance-flow-dt=2e-5  # trailing\n",
        )
        .unwrap();
        assert_eq!(tol.residual, 1e-6);
        assert_eq!(tol.flow_dt, 2e-5);
        assert_eq!(tol.cusp_match, 1e-8);

        let dir = std::env::temp_dir().join(format!("imcf-config-{}", std::process::id()));
        std::fs::write(&dir, "residual = 1e-6\nfd_step = 1e-4\n").unwrap();
        let args = ToleranceArgs {
            config: Some(dir.clone()),
            tolerance_residual: Some(3e-7),
            ..Default::default()
        };
        let tol = args.resolve().unwrap();
        std::fs::remove_file(dir).unwrap();
        assert_eq!(tol.residual, 3e-7);
        assert_eq!(tol.fd_step, 1e-4);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut tol = Tolerances::default();
        assert!(apply_config_text(&mut tol, "residual 1e-6").is_err());
        assert!(apply_config_text(&mut tol, "speed = 1").is_err());
        assert!(apply_config_text(&mut tol, "residual = -1").is_err());
        assert!(apply_config_text(&mut tol, "residual = abc").is_err());
    }
}
