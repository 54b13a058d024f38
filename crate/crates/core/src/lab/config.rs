//! Experiment configuration and the `key = value` config file format.

use std::fmt;
use std::path::PathBuf;

use crate::hypgeom::TwistUnit;
use crate::{Error, Result};

fn bad(key: &str, value: &str, why: &str) -> Error {
    Error::Config(format!("{key} = {value:?}: {why}"))
}

fn real(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| bad(key, value, "expected a number"))
}

fn integer(key: &str, value: &str) -> Result<u32> {
    value
        .trim()
        .parse::<u32>()
        .map_err(|_| bad(key, value, "expected a nonnegative integer"))
}

/// Normalises `grid_min`, `--grid-min` and `grid-min` to `grid-min`.
pub fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('_', "-")
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// later entries override earlier ones when applied in order.
pub fn parse_config_file(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {}: expected `key = value`, got {raw:?}",
                i + 1
            )));
        };
        let key = normalize_key(k);
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Parameters shared by the almost-isometry sweep and the Teichmüller
/// comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_step: f64,
    /// Enumeration height `Q`.
    pub height: u32,
    /// Mapping-class ball radius `R`.
    pub orbit_radius: u32,
    pub tol: f64,
    pub output_path: Option<PathBuf>,
    /// Allowed excess of the length-spectra bound over the product-region
    /// estimate before a pair is reported.
    pub c_slack: f64,
    pub twist_unit: TwistUnit,
    /// Compute rows on the rayon pool. Never affects the output.
    pub parallel: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid_min: 0.0,
            grid_max: 8.0,
            grid_step: 0.5,
            height: 200,
            orbit_radius: 6,
            tol: 1e-9,
            output_path: None,
            c_slack: 1.0,
            twist_unit: TwistUnit::DehnTwists,
            parallel: true,
        }
    }
}

impl SweepConfig {
    /// Applies one setting; `Ok(false)` if the key is not a sweep key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        match normalize_key(key).as_str() {
            "grid-min" => self.grid_min = real(key, value)?,
            "grid-max" => self.grid_max = real(key, value)?,
            "grid-step" => self.grid_step = real(key, value)?,
            "height" => self.height = integer(key, value)?,
            "orbit-radius" => self.orbit_radius = integer(key, value)?,
            "tol" => self.tol = real(key, value)?,
            "out" => self.output_path = Some(PathBuf::from(value.trim())),
            "c-slack" => self.c_slack = real(key, value)?,
            "twist-unit" => self.twist_unit = value.trim().parse()?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if !(self.grid_min >= 0.0) || !self.grid_min.is_finite() {
            return fail(format!("grid-min must be >= 0, got {}", self.grid_min));
        }
        if !(self.grid_step > 0.0) || !self.grid_step.is_finite() {
            return fail(format!("grid-step must be > 0, got {}", self.grid_step));
        }
        if !(self.grid_max >= self.grid_min) || !self.grid_max.is_finite() {
            return fail(format!(
                "grid-max must be >= grid-min, got {} < {}",
                self.grid_max, self.grid_min
            ));
        }
        if self.height < 1 {
            return fail("height must be >= 1".into());
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return fail(format!("tol must be > 0, got {}", self.tol));
        }
        if !(self.c_slack >= 0.0) {
            return fail(format!("c-slack must be >= 0, got {}", self.c_slack));
        }
        if self.grid().len() > 10_000 {
            return fail("grid has more than 10000 points".into());
        }
        Ok(())
    }

    /// Grid points `grid_min + i * grid_step` up to `grid_max`, inclusive
    /// up to rounding.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.grid_max - self.grid_min) / self.grid_step + 1e-9).floor();
        if !(n >= 0.0) || n > 1e6 {
            return Vec::new();
        }
        (0..=n as usize)
            .map(|i| self.grid_min + i as f64 * self.grid_step)
            .collect()
    }
}

/// Header description; excludes settings that cannot change the output.
impl fmt::Display for SweepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "grid_min={} grid_max={} grid_step={} height={} orbit_radius={} tol={:e} c_slack={} twist_unit={}",
            self.grid_min,
            self.grid_max,
            self.grid_step,
            self.height,
            self.orbit_radius,
            self.tol,
            self.c_slack,
            unit_name(self.twist_unit)
        )
    }
}

pub(crate) fn unit_name(u: TwistUnit) -> &'static str {
    match u {
        TwistUnit::DehnTwists => "dehn",
        TwistUnit::Length => "length",
    }
}

/// Schedule of the Dehn-twist divergence experiment: at step `n` the pants
/// curve has length `eps0 * 2^-n` and the twist count is
/// `round(twist_scale * 2^(twist_exponent * n))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceConfig {
    pub n_max: u32,
    pub twist_scale: f64,
    pub twist_exponent: f64,
    pub height: u32,
    pub orbit_radius: u32,
    pub twist_unit: TwistUnit,
    pub output_path: Option<PathBuf>,
}

impl Default for DivergenceConfig {
    fn default() -> Self {
        Self {
            n_max: 12,
            twist_scale: 1.0,
            twist_exponent: 0.5,
            height: 200,
            orbit_radius: 6,
            twist_unit: TwistUnit::DehnTwists,
            output_path: None,
        }
    }
}

impl DivergenceConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        match normalize_key(key).as_str() {
            "n-max" => self.n_max = integer(key, value)?,
            "twist-scale" => self.twist_scale = real(key, value)?,
            "twist-exponent" => self.twist_exponent = real(key, value)?,
            "height" => self.height = integer(key, value)?,
            "orbit-radius" => self.orbit_radius = integer(key, value)?,
            "twist-unit" => self.twist_unit = value.trim().parse()?,
            "out" => self.output_path = Some(PathBuf::from(value.trim())),
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::Config("n-max must be >= 1".into()));
        }
        if self.n_max > 60 {
            return Err(Error::Config("n-max must be <= 60".into()));
        }
        if self.height < 1 {
            return Err(Error::Config("height must be >= 1".into()));
        }
        if !(self.twist_scale >= 0.0) || !self.twist_scale.is_finite() {
            return Err(Error::Config(format!("twist-scale must be >= 0, got {}", self.twist_scale)));
        }
        if !self.twist_exponent.is_finite() {
            return Err(Error::Config("twist-exponent must be finite".into()));
        }
        Ok(())
    }

    pub fn twists(&self, n: u32) -> i64 {
        (self.twist_scale * (self.twist_exponent * f64::from(n)).exp2()).round() as i64
    }
}

impl fmt::Display for DivergenceConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n_max={} twist_scale={} twist_exponent={} height={} orbit_radius={} twist_unit={}",
            self.n_max,
            self.twist_scale,
            self.twist_exponent,
            self.height,
            self.orbit_radius,
            unit_name(self.twist_unit)
        )
    }
}
