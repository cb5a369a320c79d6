//! Growth functions and the dimension bound they give.

use serde::Serialize;

use crate::coarse::PathMetric;
use crate::error::{Error, Result};
use crate::regress::{line_fit, LineFit};

/// `gamma(r) = max_x |B_r(x)|` for `r = 0..=r_max`, unreachable pairs excluded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthCurve {
    pub radii: Vec<u32>,
    pub gamma: Vec<usize>,
    /// Number of sites, the saturation ceiling of the curve.
    pub n_sites: usize,
}

impl GrowthCurve {
    pub fn of(metric: &PathMetric, r_max: u32) -> Self {
        assert!(r_max >= 1, "r_max must be >= 1");
        let n = metric.len();
        let radii: Vec<u32> = (0..=r_max).collect();
        let gamma = radii
            .iter()
            .map(|&r| {
                (0..n)
                    .map(|x| (0..n).filter(|&y| matches!(metric.get(x, y), Some(d) if d <= r)).count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        Self {
            radii,
            gamma,
            n_sites: n,
        }
    }

    pub fn r_max(&self) -> u32 {
        *self.radii.last().unwrap()
    }

    pub fn value(&self, r: u32) -> Option<usize> {
        self.radii
            .iter()
            .position(|&x| x == r)
            .map(|i| self.gamma[i])
    }
}

/// Knobs for the middle-range slope fit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsdimConfig {
    /// Fractions of `r_max` delimiting the fit window.
    pub window: (f64, f64),
    /// `k_hat` is the smallest `k` with `slope < k + 1 - margin`.
    pub margin: f64,
    /// Radii below this are discrete-scale noise and are dropped.
    pub min_radius: u32,
    /// Radii whose ball exceeds this fraction of the sites are saturated
    /// (boundary-dominated) and are dropped.
    pub saturation_fraction: f64,
    /// The fit is UNDETERMINED when the slope stderr exceeds this.
    pub max_stderr: f64,
}

impl Default for AsdimConfig {
    fn default() -> Self {
        Self {
            window: (0.2, 0.6),
            margin: 0.25,
            min_radius: 4,
            saturation_fraction: 0.5,
            max_stderr: 0.5,
        }
    }
}

/// Fitted log-log slope of a growth curve plus the dimension bound it implies.
#[derive(Debug, Clone, Serialize)]
pub struct AsdimBound {
    pub slope: f64,
    pub stderr: f64,
    /// `None` means UNDETERMINED (stderr too large).
    pub k_hat: Option<u32>,
    /// Radii actually used by the fit.
    pub radii_used: (u32, u32),
}

fn window_samples(curve: &GrowthCurve, cfg: &AsdimConfig) -> Vec<(f64, f64)> {
    let r_max = curve.r_max() as f64;
    let lo = (cfg.window.0 * r_max).ceil() as u32;
    let hi = (cfg.window.1 * r_max).floor() as u32;
    let cap = (cfg.saturation_fraction * curve.n_sites as f64).floor() as usize;
    curve
        .radii
        .iter()
        .zip(&curve.gamma)
        .filter(|&(&r, &g)| r >= lo.max(cfg.min_radius).max(1) && r <= hi && g <= cap && g >= 1)
        .map(|(&r, &g)| ((r as f64).ln(), (g as f64).ln()))
        .collect()
}

/// Least-squares slope of `log gamma(r)` against `log r` in the middle range,
/// and the smallest `k` with `gamma(r) / r^{k+1}` plausibly vanishing.
///
/// A curve already saturated at the window start is a bounded space: slope 0,
/// `k_hat = 0`.
pub fn asdim_bound(curve: &GrowthCurve, cfg: &AsdimConfig) -> Result<AsdimBound> {
    let r_max = curve.r_max() as f64;
    let lo = ((cfg.window.0 * r_max).ceil() as u32).max(1);
    if curve.value(lo).map_or(false, |g| g == curve.n_sites) {
        // Every site is within lo of some centre: bounded space.
        return Ok(AsdimBound {
            slope: 0.0,
            stderr: 0.0,
            k_hat: Some(0),
            radii_used: (lo, lo),
        });
    }
    let samples = window_samples(curve, cfg);
    if samples.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} radii inside the window after middle-range guards (need 4)",
            samples.len()
        )));
    }
    let fit: LineFit = line_fit(&samples);
    let k_hat = if fit.stderr > cfg.max_stderr {
        None
    } else {
        let mut k = 0u32;
        while !(fit.slope < (k + 1) as f64 - cfg.margin) {
            k += 1;
        }
        Some(k)
    };
    Ok(AsdimBound {
        slope: fit.slope,
        stderr: fit.stderr,
        k_hat,
        radii_used: (
            samples.first().map(|s| s.0.exp().round() as u32).unwrap(),
            samples.last().map(|s| s.0.exp().round() as u32).unwrap(),
        ),
    })
}

/// One-sided growth obstruction: `true` when `g_y` grows strictly faster
/// than `g_x` (beyond the joint uncertainty plus `cfg.margin`), so the space
/// behind `g_y` cannot embed as a sub-coarse structure of the one behind
/// `g_x`.
pub fn growth_obstruction(
    g_x: &GrowthCurve,
    g_y: &GrowthCurve,
    cfg: &AsdimConfig,
) -> Result<bool> {
    let fx = asdim_bound(g_x, cfg)?;
    let fy = asdim_bound(g_y, cfg)?;
    Ok(fy.slope - fx.slope > fx.stderr + fy.stderr + cfg.margin)
}
