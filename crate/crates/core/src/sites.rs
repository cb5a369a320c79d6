//! The finite site set underlying every matrix, relation and metric.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of labelled sites, optionally carrying integer lattice
/// coordinates for ground-truth experiments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteSet {
    ids: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coords: Option<Vec<Vec<i64>>>,
}

impl SiteSet {
    pub fn new(ids: Vec<String>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::InvalidSites("need at least one site".into()));
        }
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidSites(format!("duplicate id {id:?}")));
            }
        }
        Ok(Self { ids, coords: None })
    }

    /// Sites labelled `"0"`, `"1"`, ... without coordinates.
    pub fn line(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect()).expect("n >= 1")
    }

    /// A `w` x `h` grid with ids `"r,c"` and 2-d integer coordinates.
    pub fn grid(w: usize, h: usize) -> Self {
        let mut ids = Vec::with_capacity(w * h);
        let mut coords = Vec::with_capacity(w * h);
        for r in 0..h {
            for c in 0..w {
                ids.push(format!("{r},{c}"));
                coords.push(vec![r as i64, c as i64]);
            }
        }
        let mut s = Self::new(ids).expect("w*h >= 1");
        s.coords = Some(coords);
        s
    }

    pub fn with_coords(mut self, coords: Vec<Vec<i64>>) -> Result<Self> {
        if coords.len() != self.len() {
            return Err(Error::InvalidSites(format!(
                "{} coordinate tuples for {} sites",
                coords.len(),
                self.len()
            )));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn coords(&self) -> Option<&[Vec<i64>]> {
        self.coords.as_deref()
    }

    /// L1 distance between the lattice coordinates of sites `i` and `j`.
    pub fn l1_distance(&self, i: usize, j: usize) -> Option<u64> {
        let coords = self.coords.as_ref()?;
        Some(
            coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(a, b)| a.abs_diff(*b))
                .sum(),
        )
    }

    /// Checks that `other` describes the same sites, for operations that
    /// require both operands over one set.
    pub fn ensure_same(&self, other: &SiteSet) -> Result<()> {
        if self.ids != other.ids {
            return Err(Error::SiteSetMismatch(format!(
                "{} vs {} sites (or differing labels)",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Relabels the sites by a permutation: site `i` of the result is site
    /// `perm[i]` of the original.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            ids: perm.iter().map(|&p| self.ids[p].clone()).collect(),
            coords: self
                .coords
                .as_ref()
                .map(|c| perm.iter().map(|&p| c[p].clone()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(SiteSet::new(vec![]).is_err());
        assert!(SiteSet::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn grid_coords_l1() {
        let s = SiteSet::grid(4, 3);
        assert_eq!(s.len(), 12);
        // (0,0) to (2,3) -> 5 steps
        assert_eq!(s.l1_distance(0, 11), Some(5));
    }

    #[test]
    fn coords_length_checked() {
        let s = SiteSet::line(3);
        assert!(s.clone().with_coords(vec![vec![0], vec![1]]).is_err());
        assert!(s.with_coords(vec![vec![0], vec![1], vec![2]]).is_ok());
    }
}
