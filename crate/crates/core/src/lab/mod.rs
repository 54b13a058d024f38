//! Experiment harness: almost-isometry sweeps over the model ray, the
//! Teichmüller comparison, Dehn-twist divergence sequences and CSV reports.

mod config;
mod report;

pub use config::{normalize_key, parse_config_file, DivergenceConfig, SweepConfig};
pub use report::{emit_report, render_report, Report};

use rayon::prelude::*;

use crate::hypgeom::{
    dehn_twist, fenchel_nielsen, length_spectra_distance, minsky_teich_estimate, zero_twist_point,
};
use crate::modelmap::{epsilon0, moduli_ls_distance, psi, ModelPoint};
use crate::{conemodel, Result};

/// Amount by which `d_L_lower` may sit below `d_V` before it counts as an
/// orbit undercut rather than rounding.
pub const UNDERCUT_TOLERANCE: f64 = 1e-6;

/// Tolerance for the zero-twist identity `d_T_est = d_V`.
pub const ZERO_TWIST_TOLERANCE: f64 = 1e-12;

/// One grid pair of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    /// Distance on the model ray, `|x - y| / 2`.
    pub d_v: f64,
    /// Orbit-minimised length-spectra lower bound between `psi(x)` and `psi(y)`.
    pub d_l_lower: f64,
    /// Product-region estimate of the Teichmüller distance.
    pub d_t_est: f64,
    pub delta: f64,
    /// Length-spectra lower bound for the identity matching.
    pub d_l_identity: f64,
}

/// A property failure found during a sweep. Never dropped from reports.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub x: f64,
    pub y: f64,
    pub kind: &'static str,
    pub amount: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub max_delta: f64,
    /// Max of `delta` over rows with `d_V >= 2`.
    pub max_delta_far: f64,
    /// Max of `delta` over rows with `d_V < 2`.
    pub max_delta_near: f64,
    /// Least-squares slope of `delta` against `d_V`.
    pub delta_slope: f64,
    /// Largest `d_V - d_L_lower` over undercutting rows, 0 if none.
    pub max_undercut: f64,
    pub undercuts: Vec<Violation>,
    /// Pairs with `d_L_lower > d_T_est + c_slack`.
    pub estimate_violations: Vec<Violation>,
}

/// Summary statistics; a pure function of the rows.
pub fn summarize(rows: &[SweepRow], c_slack: f64) -> SweepSummary {
    let max_of = |f: &dyn Fn(&SweepRow) -> bool| {
        rows.iter().filter(|r| f(r)).map(|r| r.delta).fold(0.0, f64::max)
    };
    let undercuts: Vec<Violation> = rows
        .iter()
        .filter(|r| r.d_l_lower < r.d_v - UNDERCUT_TOLERANCE)
        .map(|r| Violation {
            x: r.x,
            y: r.y,
            kind: "undercut",
            amount: r.d_v - r.d_l_lower,
        })
        .collect();
    let estimate_violations = rows
        .iter()
        .filter(|r| r.d_l_lower > r.d_t_est + c_slack)
        .map(|r| Violation {
            x: r.x,
            y: r.y,
            kind: "bound_above_estimate",
            amount: r.d_l_lower - r.d_t_est,
        })
        .collect();
    SweepSummary {
        rows: rows.len(),
        max_delta: max_of(&|_| true),
        max_delta_far: max_of(&|r| r.d_v >= 2.0),
        max_delta_near: max_of(&|r| r.d_v < 2.0),
        delta_slope: ols_slope(rows.iter().map(|r| (r.d_v, r.delta))),
        max_undercut: undercuts.iter().map(|v| v.amount).fold(0.0, f64::max),
        undercuts,
        estimate_violations,
    }
}

fn ols_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Computes one row; `x`, `y` must be nonnegative.
pub fn sweep_row(x: f64, y: f64, cfg: &SweepConfig) -> Result<SweepRow> {
    let (px, py) = (ModelPoint::new(x)?, ModelPoint::new(y)?);
    let d_v = conemodel::quotient_ray_distance_s11(x, y)?;
    let (tx, ty) = (psi(px), psi(py));
    let moduli = moduli_ls_distance(&tx, &ty, cfg.height, cfg.orbit_radius);
    let d_t_est = minsky_teich_estimate(
        &[fenchel_nielsen(&tx)],
        &[fenchel_nielsen(&ty)],
        epsilon0(),
        cfg.twist_unit,
    )?;
    let d_l_lower = moduli.bracket.lower;
    Ok(SweepRow {
        x,
        y,
        d_v,
        d_l_lower,
        d_t_est,
        delta: (d_v - d_l_lower).abs(),
        d_l_identity: moduli.identity_value,
    })
}

/// Rows for every ordered grid pair in row-major order.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let pairs: Vec<(f64, f64)> = grid
        .iter()
        .flat_map(|&x| grid.iter().map(move |&y| (x, y)))
        .collect();
    if cfg.parallel {
        pairs.par_iter().map(|&(x, y)| sweep_row(x, y, cfg)).collect()
    } else {
        pairs.iter().map(|&(x, y)| sweep_row(x, y, cfg)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Compares `d_V` with the orbit-minimised length-spectra bound at every
/// grid pair.
pub fn sweep_almost_isometry(cfg: &SweepConfig) -> Result<SweepReport> {
    let rows = sweep_rows(cfg)?;
    let summary = summarize(&rows, cfg.c_slack);
    Ok(SweepReport { rows, summary })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<SweepRow>,
    /// Largest `|d_T_est - d_V|`; zero twist makes these equal.
    pub max_zero_twist_error: f64,
    /// Largest `d_T_est - d_L_lower`: the empirical comparison constant.
    pub max_gap: f64,
    pub violations: Vec<Violation>,
}

/// Compares the product-region estimate with the length-spectra bound.
pub fn sweep_teich_comparison(cfg: &SweepConfig) -> Result<ComparisonReport> {
    let rows = sweep_rows(cfg)?;
    let mut violations: Vec<Violation> = rows
        .iter()
        .filter(|r| (r.d_t_est - r.d_v).abs() > ZERO_TWIST_TOLERANCE)
        .map(|r| Violation {
            x: r.x,
            y: r.y,
            kind: "zero-twist",
            amount: (r.d_t_est - r.d_v).abs(),
        })
        .collect();
    violations.extend(summarize(&rows, cfg.c_slack).estimate_violations);
    Ok(ComparisonReport {
        max_zero_twist_error: rows.iter().map(|r| (r.d_t_est - r.d_v).abs()).fold(0.0, f64::max),
        max_gap: rows.iter().map(|r| r.d_t_est - r.d_l_lower).fold(f64::NEG_INFINITY, f64::max),
        rows,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceRow {
    pub n: u32,
    /// Length of the pants curve at `X_n`.
    pub length: f64,
    pub twists: i64,
    /// Length-spectra lower bound between `X_n` and `Y_n` on Teichmüller
    /// space, without any orbit minimisation.
    pub d_ls_lower: f64,
    pub d_t_est: f64,
    /// `d_t_est / d_ls_lower`: 0 when both vanish, infinite when only the
    /// denominator does.
    pub ratio: f64,
    /// Orbit-minimised distance; `X_n` and `Y_n` are the same moduli point.
    pub moduli_lower: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    match (num == 0.0, den == 0.0) {
        (true, true) => 0.0,
        (false, true) => f64::INFINITY,
        _ => num / den,
    }
}

/// `X_n = zero_twist_point(eps0 / 2^n)` against `Y_n = dehn_twist(X_n, k_n)`.
pub fn divergence_row(n: u32, cfg: &DivergenceConfig) -> Result<DivergenceRow> {
    let length = epsilon0() * (-f64::from(n)).exp2();
    let twists = cfg.twists(n);
    let x = zero_twist_point(length)?;
    let y = dehn_twist(&x, twists);
    let d_ls_lower = length_spectra_distance(&x, &y, cfg.height).lower;
    let d_t_est = minsky_teich_estimate(
        &[fenchel_nielsen(&x)],
        &[fenchel_nielsen(&y)],
        epsilon0(),
        cfg.twist_unit,
    )?;
    let moduli_lower = moduli_ls_distance(&x, &y, cfg.height, cfg.orbit_radius)
        .bracket
        .lower;
    Ok(DivergenceRow {
        n,
        length,
        twists,
        d_ls_lower,
        d_t_est,
        ratio: ratio(d_t_est, d_ls_lower),
        moduli_lower,
    })
}

pub fn divergence_sequence(cfg: &DivergenceConfig) -> Result<Vec<DivergenceRow>> {
    cfg.validate()?;
    (1..=cfg.n_max)
        .into_par_iter()
        .map(|n| divergence_row(n, cfg))
        .collect()
}
