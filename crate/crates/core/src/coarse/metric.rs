//! Graph path metrics and the quasi-isometry machinery comparing them.

use std::collections::VecDeque;

use serde::Serialize;

use crate::coarse::Relation;
use crate::error::{Error, Result};
use crate::sites::SiteSet;

/// All-pairs path distances of a graph; `None` encodes unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PathMetric {
    sites: SiteSet,
    dist: Vec<Option<u32>>,
}

impl PathMetric {
    /// Breadth-first all-pairs distances of the (symmetrized) relation.
    pub fn of(relation: &Relation) -> Self {
        let n = relation.len();
        let neighbours: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && (relation.contains(i, j) || relation.contains(j, i)))
                    .collect()
            })
            .collect();
        let mut dist = vec![None; n * n];
        for src in 0..n {
            dist[src * n + src] = Some(0);
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                let du = dist[src * n + u].unwrap();
                for &v in &neighbours[u] {
                    if dist[src * n + v].is_none() {
                        dist[src * n + v] = Some(du + 1);
                        queue.push_back(v);
                    }
                }
            }
        }
        Self {
            sites: relation.sites().clone(),
            dist,
        }
    }

    /// Builds from an explicit table; checks zero diagonal and symmetry only.
    pub fn from_table(sites: SiteSet, table: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let n = sites.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSites("table shape mismatch".into()));
        }
        for i in 0..n {
            if table[i][i] != Some(0) {
                return Err(Error::InvalidSites(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::InvalidSites(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self {
            sites,
            dist: table.into_iter().flatten().collect(),
        })
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.dist[i * self.sites.len() + j]
    }

    /// Largest finite distance (0 for a single site).
    pub fn max_finite_distance(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `Some(diameter)` when the graph is connected, `None` otherwise.
    pub fn diameter(&self) -> Option<u32> {
        if self.dist.iter().any(|d| d.is_none()) {
            None
        } else {
            Some(self.max_finite_distance())
        }
    }

    /// Pointwise map of finite distances, e.g. `d -> 2d + 1` reparameterizations.
    /// The diagonal stays 0.
    pub fn map_finite(&self, f: impl Fn(u32) -> u32) -> Self {
        let n = self.sites.len();
        let mut dist = self.dist.clone();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dist[i * n + j] = dist[i * n + j].map(&f);
                }
            }
        }
        Self {
            sites: self.sites.clone(),
            dist,
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.sites.len();
        let mut dist = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Self {
            sites: self.sites.permuted(perm),
            dist,
        }
    }
}

/// The table `rho(t) = max { d2(x, y) : d1(x, y) <= t }` over realized values
/// `t` of `d1`. An entry of `None` means some pair within `t` in `d1` is
/// unreachable in `d2`, so no finite bound exists.
pub type DominationTable = Vec<(u32, Option<u32>)>;

/// Monotone table witnessing `E^{d1} in E^{d2}` at finite scale: `d2 <= rho(d1)`
/// on every pair that is finite in `d1`.
pub fn monotone_domination(d1: &PathMetric, d2: &PathMetric) -> Result<DominationTable> {
    d1.sites().ensure_same(d2.sites())?;
    let n = d1.len();
    let mut realized: Vec<u32> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if let Some(t) = d1.get(i, j) {
                    realized.push(t);
                }
            }
        }
    }
    realized.sort_unstable();
    realized.dedup();
    let mut table = Vec::with_capacity(realized.len());
    for &t in &realized {
        let mut worst: Option<u32> = Some(0);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match (d1.get(i, j), d2.get(i, j)) {
                    (Some(a), Some(b)) if a <= t => {
                        worst = worst.map(|w| w.max(b));
                    }
                    (Some(a), None) if a <= t => {
                        worst = None;
                    }
                    _ => {}
                }
                if worst.is_none() {
                    break;
                }
            }
            if worst.is_none() {
                break;
            }
        }
        table.push((t, worst));
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QiDirection {
    /// Both inequalities hold on every mutually finite pair.
    Both,
    /// Only `d2 <= L d1 + C` holds.
    ForwardOnly,
    None,
}

/// Result of fitting quasi-isometry constants between two metrics on one set.
#[derive(Debug, Clone, Serialize)]
pub struct QuasiIsometryReport {
    pub l: f64,
    pub c: f64,
    /// Fraction of off-diagonal pairs violating the reported `(L, C)`,
    /// counting pairs finite in exactly one metric as violations.
    pub violation_fraction: f64,
    pub direction: QiDirection,
}

/// Fits `L = max(d2/d1, d1/d2)` over pairs with `d1 >= r0` and the smallest
/// `C` making `L^-1 d1 - C <= d2 <= L d1 + C` hold on all mutually finite
/// pairs. When `given` is supplied the violation fraction and direction are
/// evaluated against those constants instead of the fitted ones.
pub fn quasi_isometry_fit(
    d1: &PathMetric,
    d2: &PathMetric,
    r0: u32,
    given: Option<(f64, f64)>,
) -> Result<QuasiIsometryReport> {
    d1.sites().ensure_same(d2.sites())?;
    let n = d1.len();

    let mut l = 1.0f64;
    let mut seen_beyond_r0 = false;
    let mut mismatched = 0usize; // finite in exactly one metric
    let mut total = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            total += 1;
            match (d1.get(i, j), d2.get(i, j)) {
                (Some(a), Some(b)) => {
                    if a >= r0 {
                        seen_beyond_r0 = true;
                        let (af, bf) = (a as f64, b as f64);
                        if a > 0 && b > 0 {
                            l = l.max(bf / af).max(af / bf);
                        }
                    }
                }
                (None, None) => {}
                _ => mismatched += 1,
            }
        }
    }
    if !seen_beyond_r0 {
        return Err(Error::NoPairsBeyondR0(r0));
    }

    let fit_c = |l: f64| -> f64 {
        let mut c = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let (Some(a), Some(b)) = (d1.get(i, j), d2.get(i, j)) {
                    let (af, bf) = (a as f64, b as f64);
                    c = c.max(bf - l * af); // d2 <= L d1 + C
                    c = c.max(af / l - bf); // L^-1 d1 - C <= d2
                }
            }
        }
        c
    };

    let (l_used, c_used) = match given {
        Some((gl, gc)) => (gl, gc),
        None => (l, fit_c(l)),
    };

    // Count violations against the constants actually reported.
    let tol = 1e-9;
    let mut violations = mismatched;
    let mut forward_ok = true;
    let mut backward_ok = true;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let (Some(a), Some(b)) = (d1.get(i, j), d2.get(i, j)) {
                let (af, bf) = (a as f64, b as f64);
                let forward = bf <= l_used * af + c_used + tol;
                let backward = af / l_used - c_used <= bf + tol;
                forward_ok &= forward;
                backward_ok &= backward;
                if !(forward && backward) {
                    violations += 1;
                }
            }
        }
    }
    if mismatched > 0 {
        backward_ok = false;
    }
    let direction = match (forward_ok, backward_ok) {
        (true, true) if mismatched == 0 => QiDirection::Both,
        (true, _) => QiDirection::ForwardOnly,
        _ => QiDirection::None,
    };
    Ok(QuasiIsometryReport {
        l: l_used,
        c: c_used,
        violation_fraction: if total == 0 {
            0.0
        } else {
            violations as f64 / total as f64
        },
        direction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let d = PathMetric::of(&Relation::path(5));
        assert_eq!(d.get(0, 4), Some(4));
        assert_eq!(d.get(2, 2), Some(0));
        assert_eq!(d.diameter(), Some(4));
    }

    #[test]
    fn complete_graph_all_ones() {
        let d = PathMetric::of(&Relation::complete(6));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(d.get(i, j), Some(u32::from(i != j)));
            }
        }
    }

    #[test]
    fn disjoint_edges_unreachable() {
        let rel = Relation::from_edges(SiteSet::line(4), &[(0, 1), (2, 3)]);
        let d = PathMetric::of(&rel);
        assert_eq!(d.get(0, 1), Some(1));
        assert_eq!(d.get(1, 2), None);
        assert_eq!(d.diameter(), None);
        assert_eq!(d.max_finite_distance(), 1);
    }

    #[test]
    fn domination_identity_and_doubling() {
        let d = PathMetric::of(&Relation::path(7));
        let table = monotone_domination(&d, &d).unwrap();
        for &(t, rho) in &table {
            assert_eq!(rho, Some(t));
        }
        let doubled = d.map_finite(|t| 2 * t);
        let table = monotone_domination(&d, &doubled).unwrap();
        for &(t, rho) in &table {
            assert_eq!(rho, Some(2 * t));
        }
    }

    #[test]
    fn domination_worst_pair() {
        let complete = PathMetric::of(&Relation::complete(10));
        let path = PathMetric::of(&Relation::path(10));
        let table = monotone_domination(&complete, &path).unwrap();
        assert_eq!(table, vec![(1, Some(9))]);
    }

    #[test]
    fn qi_identity() {
        let d = PathMetric::of(&Relation::path(9));
        let rep = quasi_isometry_fit(&d, &d, 1, None).unwrap();
        assert_eq!(rep.l, 1.0);
        assert_eq!(rep.c, 0.0);
        assert_eq!(rep.violation_fraction, 0.0);
        assert_eq!(rep.direction, QiDirection::Both);
    }

    #[test]
    fn qi_detects_diameter_mismatch() {
        let path = PathMetric::of(&Relation::path(12));
        let complete = PathMetric::of(&Relation::complete(12));
        let rep = quasi_isometry_fit(&path, &complete, 1, None).unwrap();
        assert_eq!(rep.l, 11.0); // d1/d2 on the far pair
        assert_eq!(rep.direction, QiDirection::Both);
    }

    #[test]
    fn qi_needs_far_pairs() {
        let d = PathMetric::of(&Relation::path(3));
        assert!(matches!(
            quasi_isometry_fit(&d, &d, 10, None),
            Err(Error::NoPairsBeyondR0(10))
        ));
    }
}
