//! Structure-level operations: stable ranges, higher-order closure, the
//! semicontinuity inclusion and per-epsilon profiles.

use serde::Serialize;

use crate::coarse::{
    asdim_bound, quasi_isometry_fit, AsdimConfig, DecayMatrix, GrowthCurve, PathMetric,
    QiDirection, Relation,
};
use crate::error::{Error, Result};

/// A maximal epsilon interval over which consecutive threshold metrics stay
/// bi-Lipschitz comparable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StableInterval {
    pub eps_min: f64,
    pub eps_max: f64,
    /// Grid points inside the interval.
    pub points: usize,
}

/// Finite-scale proxy for the stable range of `f`: scans a strictly
/// decreasing epsilon grid and groups consecutive values whose threshold-graph
/// path metrics compare with `L <= l_tol` and no violations.
///
/// Undecidable at infinite scale from a finite sample; the output is a proxy,
/// not a theorem.
pub fn stable_range(
    f: &DecayMatrix,
    eps_grid: &[f64],
    l_tol: f64,
) -> Result<Vec<StableInterval>> {
    if eps_grid.is_empty() {
        return Err(Error::EmptyGrid("eps grid is empty".into()));
    }
    if eps_grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::EmptyGrid("eps grid must be strictly decreasing".into()));
    }
    if eps_grid.iter().any(|&e| e <= 0.0) {
        return Err(Error::NonPositiveEpsilon(
            *eps_grid.iter().find(|&&e| e <= 0.0).unwrap(),
        ));
    }
    let metrics: Vec<PathMetric> = eps_grid
        .iter()
        .map(|&e| Ok(PathMetric::of(&f.epsilon_graph(e)?)))
        .collect::<Result<_>>()?;

    let mut pair_ok = Vec::with_capacity(metrics.len().saturating_sub(1));
    for w in metrics.windows(2) {
        let ok = match quasi_isometry_fit(&w[0], &w[1], 1, None) {
            Ok(rep) => {
                rep.l <= l_tol && rep.violation_fraction == 0.0 && rep.direction == QiDirection::Both
            }
            // No pair at distance >= 1 in the coarser metric: comparable only
            // if the finer one is also discrete.
            Err(Error::NoPairsBeyondR0(_)) => w[1]
                .sites()
                .ids()
                .len()
                .checked_sub(0)
                .map(|n| {
                    (0..n).all(|i| (0..n).all(|j| i == j || w[1].get(i, j).is_none()))
                })
                .unwrap_or(false),
            Err(e) => return Err(e),
        };
        pair_ok.push(ok);
    }

    let mut intervals = Vec::new();
    let mut start = 0usize;
    for idx in 0..eps_grid.len() {
        let run_ends = idx == eps_grid.len() - 1 || !pair_ok[idx];
        if run_ends {
            intervals.push(StableInterval {
                eps_min: eps_grid[idx],
                eps_max: eps_grid[start],
                points: idx - start + 1,
            });
            start = idx + 1;
        }
    }
    Ok(intervals)
}

/// Result of iterating the higher-order closure.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub relation: Relation,
    pub iterations: usize,
    /// False when `max_iter` elapsed before the fixpoint.
    pub converged: bool,
}

/// Iterates `E -> <E union { (x, y) : ftilde(E[x], E[y]) >= eps }>` to a
/// fixpoint, starting from `e0`.
///
/// `ftilde` must be symmetric in its arguments. On a finite set the fixpoint
/// is always reached; `max_iter` only guards against costly oracles.
pub fn higher_order_closure(
    ftilde: impl Fn(&[usize], &[usize]) -> f64,
    e0: &Relation,
    eps: f64,
    max_iter: usize,
) -> Result<ClosureResult> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let n = e0.len();
    let mut current = e0.transitive_closure();
    for iter in 1..=max_iter {
        let balls: Vec<Vec<usize>> = (0..n).map(|x| current.ball(x)).collect();
        let mut thresholded = Relation::diagonal(e0.sites().clone());
        for x in 0..n {
            for y in 0..n {
                if x != y && ftilde(&balls[x], &balls[y]) >= eps {
                    thresholded.insert(x, y);
                }
            }
        }
        let next = current.union(&thresholded)?.transitive_closure();
        if next == current {
            return Ok(ClosureResult {
                relation: current,
                iterations: iter,
                converged: true,
            });
        }
        current = next;
    }
    Ok(ClosureResult {
        relation: current,
        iterations: max_iter,
        converged: false,
    })
}

/// Verifies the semicontinuity inclusion `E_{f,eps} subset E_{g,eps-delta}`
/// with `delta = ||f - g||_inf`. Returns `true`; `false` would signal a bug
/// in the threshold machinery.
pub fn semicontinuity_check(f: &DecayMatrix, g: &DecayMatrix, eps: f64) -> Result<bool> {
    let delta = f.sup_distance(g)?;
    if eps <= delta {
        return Err(Error::EpsilonTooSmall {
            eps,
            bound: delta,
            context: "semicontinuity needs eps > ||f - g||_inf".into(),
        });
    }
    let e_f = f.epsilon_graph(eps)?;
    let e_g = if eps - delta > 0.0 {
        g.epsilon_graph(eps - delta)?
    } else {
        // delta = 0 exactly: same graph.
        g.epsilon_graph(eps)?
    };
    Ok(e_f.is_subset_of(&e_g))
}

/// Component partition of a relation plus the "dust": components at or below
/// the cutoff, standing in for the finite sets a connected completion adjoins.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentProfile {
    /// All component sizes, descending.
    pub component_sizes: Vec<usize>,
    /// Sites in dust components.
    pub dust_sites: Vec<usize>,
    pub dust_cutoff: usize,
    pub component_count: usize,
}

/// Default dust cutoff: components of size <= 2, or <= 2% of n, whichever is
/// larger.
pub fn default_dust_cutoff(n: usize) -> usize {
    2usize.max(n / 50)
}

pub fn connected_profile(relation: &Relation, dust_cutoff: Option<usize>) -> ComponentProfile {
    let cutoff = dust_cutoff.unwrap_or_else(|| default_dust_cutoff(relation.len()));
    let comps = relation.components();
    let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut dust_sites: Vec<usize> = comps
        .iter()
        .filter(|c| c.len() <= cutoff)
        .flatten()
        .copied()
        .collect();
    dust_sites.sort_unstable();
    ComponentProfile {
        component_count: sizes.len(),
        component_sizes: sizes,
        dust_sites,
        dust_cutoff: cutoff,
    }
}

/// Knobs for the per-epsilon profile.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileConfig {
    pub asdim: AsdimConfig,
    pub dust_cutoff: Option<usize>,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            asdim: AsdimConfig::default(),
            dust_cutoff: None,
        }
    }
}

/// Structural summary of one threshold graph.
#[derive(Debug, Clone, Serialize)]
pub struct CoarseProfile {
    pub epsilon: f64,
    pub components: ComponentProfile,
    /// Max finite distance; `None` when the graph is disconnected.
    pub diameter: Option<u32>,
    pub growth_slope: Option<f64>,
    pub growth_stderr: Option<f64>,
    /// `None` here means the fit was undetermined or had too little data.
    pub asdim_bound: Option<u32>,
}

/// Builds the epsilon graph of `f` and summarizes it: components with dust,
/// diameter, middle-range growth slope and the dimension bound.
pub fn coarse_profile(f: &DecayMatrix, eps: f64, cfg: &ProfileConfig) -> Result<CoarseProfile> {
    let rel = f.epsilon_graph(eps)?;
    let metric = PathMetric::of(&rel);
    let components = connected_profile(&rel, cfg.dust_cutoff);
    let diameter = metric.diameter();
    let reach = metric.max_finite_distance();
    let (growth_slope, growth_stderr, asdim) = if reach >= 1 {
        let curve = GrowthCurve::of(&metric, reach.div_ceil(2).max(1));
        match asdim_bound(&curve, &cfg.asdim) {
            Ok(b) => (Some(b.slope), Some(b.stderr), b.k_hat),
            Err(Error::InsufficientData(_)) => (None, None, None),
            Err(e) => return Err(e),
        }
    } else {
        (None, None, Some(0))
    };
    Ok(CoarseProfile {
        epsilon: eps,
        components,
        diameter,
        growth_slope,
        growth_stderr,
        asdim_bound: asdim,
    })
}
