//! Symmetric nonnegative decay matrices and their threshold filtrations.

use serde::Serialize;

use crate::coarse::Relation;
use crate::error::{Error, Result};
use crate::sites::SiteSet;

/// A symmetric table `f(x, y) >= 0` over a finite site set.
///
/// Houses correlation matrices, commutator matrices and synthetic decay
/// functions alike. The diagonal is stored but ignored by every downstream
/// operation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayMatrix {
    sites: SiteSet,
    values: Vec<f64>,
}

impl DecayMatrix {
    /// Validates and builds a matrix from raw rows.
    ///
    /// With `symmetrize` set, `f(i, j) = max(raw[i][j], raw[j][i])`; otherwise
    /// the input must already be symmetric to within 1e-12.
    pub fn build(raw: &[Vec<f64>], sites: SiteSet, symmetrize: bool) -> Result<Self> {
        let n = sites.len();
        if raw.len() != n || raw.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSites(format!(
                "matrix must be {n}x{n} to match the site set"
            )));
        }
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (raw[i][j], raw[j][i]);
                if symmetrize {
                    values[i * n + j] = a.max(b);
                } else {
                    if (a - b).abs() > 1e-12 {
                        return Err(Error::AsymmetricInput {
                            row: i,
                            col: j,
                            delta: a - b,
                        });
                    }
                    // Pin exact symmetry even when the inputs differ in the
                    // last few ulps.
                    values[i * n + j] = a.max(b);
                }
            }
        }
        Ok(Self { sites, values })
    }

    /// Builds from a symmetric function of the pair `(i, j)`.
    pub fn from_fn(sites: SiteSet, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = sites.len();
        let raw: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::build(&raw, sites, true)
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

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.sites.len() + j]
    }

    /// Largest off-diagonal entry, 0.0 for a 1-site set.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.sites.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    best = best.max(self.value(i, j));
                }
            }
        }
        best
    }

    /// Off-diagonal sup distance to `g`.
    pub fn sup_distance(&self, g: &DecayMatrix) -> Result<f64> {
        self.sites.ensure_same(&g.sites)?;
        let n = self.sites.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    best = best.max((self.value(i, j) - g.value(i, j)).abs());
                }
            }
        }
        Ok(best)
    }

    /// The threshold graph `G_{f,eps}`: an edge wherever `f(x, y) >= eps`
    /// (non-strict), plus the diagonal.
    pub fn epsilon_graph(&self, eps: f64) -> Result<Relation> {
        if !(eps > 0.0) {
            return Err(Error::NonPositiveEpsilon(eps));
        }
        let n = self.sites.len();
        let mut rel = Relation::diagonal(self.sites.clone());
        for i in 0..n {
            for j in 0..n {
                if i != j && self.value(i, j) >= eps {
                    rel.insert(i, j);
                }
            }
        }
        Ok(rel)
    }

    /// Relabels sites by `perm`: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of the original.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.sites.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = self.value(perm[i], perm[j]);
            }
        }
        Self {
            sites: self.sites.permuted(perm),
            values,
        }
    }

    /// Pointwise map of the entries; the result is re-validated.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = self.sites.len();
        let raw: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f(self.value(i, j))).collect())
            .collect();
        Self::build(&raw, self.sites.clone(), true)
    }
}

/// The strictly decreasing list of distinct positive off-diagonal values of a
/// matrix: thresholds where the epsilon graph gains edges.
#[derive(Debug, Clone, Serialize)]
pub struct Filtration {
    matrix: DecayMatrix,
    thresholds: Vec<f64>,
}

impl Filtration {
    pub fn new(matrix: DecayMatrix) -> Self {
        let n = matrix.len();
        let mut vals: Vec<f64> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && matrix.value(i, j) > 0.0 {
                    vals.push(matrix.value(i, j));
                }
            }
        }
        vals.sort_unstable_by(|a, b| b.total_cmp(a));
        vals.dedup();
        Self {
            matrix,
            thresholds: vals,
        }
    }

    pub fn matrix(&self) -> &DecayMatrix {
        &self.matrix
    }

    /// Distinct positive off-diagonal values, strictly decreasing.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// The nested family of threshold graphs, one per threshold.
    pub fn graphs(&self) -> Result<Vec<(f64, Relation)>> {
        self.thresholds
            .iter()
            .map(|&t| Ok((t, self.matrix.epsilon_graph(t)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sites(n: usize) -> SiteSet {
        SiteSet::line(n)
    }

    #[test]
    fn zero_matrix_has_no_thresholds() {
        let m = DecayMatrix::build(&vec![vec![0.0; 2]; 2], sites(2), false).unwrap();
        assert!(Filtration::new(m).thresholds().is_empty());
    }

    #[test]
    fn symmetrize_takes_max() {
        let raw = vec![vec![0.0, 0.3], vec![0.1, 0.0]];
        let m = DecayMatrix::build(&raw, sites(2), true).unwrap();
        assert_eq!(m.value(0, 1), 0.3);
        assert_eq!(m.value(1, 0), 0.3);
        assert!(matches!(
            DecayMatrix::build(&raw, sites(2), false),
            Err(Error::AsymmetricInput { .. })
        ));
    }

    #[test]
    fn rejects_bad_entries() {
        let raw = vec![vec![0.0, -0.5], vec![-0.5, 0.0]];
        assert!(matches!(
            DecayMatrix::build(&raw, sites(2), false),
            Err(Error::NegativeEntry { .. })
        ));
        let raw = vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]];
        assert!(matches!(
            DecayMatrix::build(&raw, sites(2), false),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn filtration_extracts_distinct_values() {
        let raw = vec![
            vec![0.0, 0.9, 0.5],
            vec![0.9, 0.0, 0.1],
            vec![0.5, 0.1, 0.0],
        ];
        let m = DecayMatrix::build(&raw, sites(3), false).unwrap();
        assert_eq!(Filtration::new(m).thresholds(), &[0.9, 0.5, 0.1]);
    }

    #[test]
    fn epsilon_graph_thresholds_non_strictly() {
        let m = DecayMatrix::from_fn(sites(8), |i, j| {
            if i == j {
                0.0
            } else {
                0.5f64.powi((i as i32 - j as i32).abs())
            }
        })
        .unwrap();
        let rel = m.epsilon_graph(0.5).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = i == j || (i as i32 - j as i32).abs() == 1;
                assert_eq!(rel.contains(i, j), expect, "({i},{j})");
            }
        }
        assert!(matches!(
            m.epsilon_graph(0.0),
            Err(Error::NonPositiveEpsilon(_))
        ));
    }

    #[test]
    fn epsilon_graph_monotone_in_eps() {
        let m = DecayMatrix::from_fn(sites(6), |i, j| ((i * 7 + j * 3) % 10) as f64 / 10.0)
            .unwrap();
        let coarse = m.epsilon_graph(0.7).unwrap();
        let fine = m.epsilon_graph(0.3).unwrap();
        assert!(coarse.is_subset_of(&fine));
    }
}
