//! Controlled sets as boolean relations, with the composition algebra used to
//! generate coarse structures.

use crate::error::Result;
use crate::sites::SiteSet;

/// A reflexive boolean relation on a site set.
///
/// The diagonal is forced on construction; symmetry holds whenever the
/// relation came from a decay matrix but is not required by the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    sites: SiteSet,
    adj: Vec<bool>,
}

impl Relation {
    pub fn diagonal(sites: SiteSet) -> Self {
        let n = sites.len();
        let mut adj = vec![false; n * n];
        for i in 0..n {
            adj[i * n + i] = true;
        }
        Self { sites, adj }
    }

    /// Relation holding the given ordered pairs (plus the diagonal).
    pub fn from_pairs(sites: SiteSet, pairs: &[(usize, usize)]) -> Self {
        let mut rel = Self::diagonal(sites);
        for &(i, j) in pairs {
            rel.insert(i, j);
        }
        rel
    }

    /// Undirected edges: both orientations are inserted.
    pub fn from_edges(sites: SiteSet, edges: &[(usize, usize)]) -> Self {
        let mut rel = Self::diagonal(sites);
        for &(i, j) in edges {
            rel.insert(i, j);
            rel.insert(j, i);
        }
        rel
    }

    /// Nearest-neighbour path graph on `n` sites.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(SiteSet::line(n), &edges)
    }

    /// Complete graph on `n` sites.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Self::from_edges(SiteSet::line(n), &edges)
    }

    /// 4-neighbour `w` x `h` grid graph with lattice coordinates attached.
    pub fn grid(w: usize, h: usize) -> Self {
        let sites = SiteSet::grid(w, h);
        let at = |r: usize, c: usize| r * w + c;
        let mut edges = Vec::new();
        for r in 0..h {
            for c in 0..w {
                if c + 1 < w {
                    edges.push((at(r, c), at(r, c + 1)));
                }
                if r + 1 < h {
                    edges.push((at(r, c), at(r + 1, c)));
                }
            }
        }
        Self::from_edges(sites, &edges)
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

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.sites.len() + j]
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let n = self.sites.len();
        self.adj[i * n + j] = true;
    }

    /// Number of off-diagonal ordered pairs in the relation.
    pub fn edge_count(&self) -> usize {
        let n = self.sites.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.contains(i, j))
            .count()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.sites.len();
        (0..n).all(|i| (0..n).all(|j| self.contains(i, j) == self.contains(j, i)))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.adj
            .iter()
            .zip(&other.adj)
            .all(|(&a, &b)| !a || b)
    }

    /// `E o F = {(x, z) : (x, y) in E and (y, z) in F for some y}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.sites.ensure_same(&other.sites)?;
        let n = self.sites.len();
        let mut out = Relation::diagonal(self.sites.clone());
        for x in 0..n {
            for y in 0..n {
                if self.contains(x, y) {
                    for z in 0..n {
                        if other.contains(y, z) {
                            out.insert(x, z);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Transpose relation.
    pub fn inverse(&self) -> Relation {
        let n = self.sites.len();
        let mut out = Relation::diagonal(self.sites.clone());
        for i in 0..n {
            for j in 0..n {
                if self.contains(i, j) {
                    out.insert(j, i);
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.sites.ensure_same(&other.sites)?;
        let mut out = self.clone();
        for (a, &b) in out.adj.iter_mut().zip(&other.adj) {
            *a = *a || b;
        }
        Ok(out)
    }

    /// Reflexive-symmetric-transitive closure: the largest relation the
    /// generated coarse structure reaches at finite scale.
    pub fn transitive_closure(&self) -> Relation {
        let n = self.sites.len();
        let sym = self.union(&self.inverse()).expect("same sites");
        // Floyd-Warshall style saturation on booleans.
        let mut adj = sym.adj;
        for k in 0..n {
            for i in 0..n {
                if adj[i * n + k] {
                    for j in 0..n {
                        if adj[k * n + j] {
                            adj[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Relation {
            sites: self.sites.clone(),
            adj,
        }
    }

    /// Connected components of the symmetrized relation, each sorted; the
    /// list is ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.sites.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if !seen[v] && (self.contains(u, v) || self.contains(v, u)) {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The ball `E[x] = {y : (x, y) in E}`.
    pub fn ball(&self, x: usize) -> Vec<usize> {
        (0..self.sites.len())
            .filter(|&y| self.contains(x, y))
            .collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let n = self.sites.len();
        let mut out = Relation::diagonal(self.sites.permuted(perm));
        for i in 0..n {
            for j in 0..n {
                if self.contains(perm[i], perm[j]) {
                    out.insert(i, j);
                }
            }
        }
        out
    }
}

/// Whether `e` lies in the coarse structure generated by `generators` using
/// composition words of length at most `max_words`.
///
/// The generators are first saturated: the union of all of them, their
/// inverses and the diagonal is formed, and that single relation is raised to
/// successive composition powers. Word length counts composition factors.
pub fn in_generated(e: &Relation, generators: &[Relation], max_words: usize) -> Result<bool> {
    assert!(max_words >= 1, "max_words must be >= 1");
    let mut sat = Relation::diagonal(e.sites().clone());
    for g in generators {
        e.sites().ensure_same(g.sites())?;
        sat = sat.union(g)?.union(&g.inverse())?;
    }
    let mut power = sat.clone();
    for word_len in 1..=max_words {
        if e.is_subset_of(&power) {
            return Ok(true);
        }
        if word_len == max_words {
            break;
        }
        let next = power.compose(&sat)?;
        if next == power {
            break; // fixpoint: longer words add nothing
        }
        power = next;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_reaches_two_steps() {
        let path = Relation::path(5);
        let two = path.compose(&path).unwrap();
        assert!(two.contains(0, 2));
        assert!(!two.contains(0, 3));
        // diagonal is a two-sided identity
        let diag = Relation::diagonal(path.sites().clone());
        assert_eq!(path.compose(&diag).unwrap(), path);
        assert_eq!(diag.compose(&path).unwrap(), path);
    }

    #[test]
    fn inverse_of_symmetric_is_identity() {
        let path = Relation::path(6);
        assert_eq!(path.inverse(), path);
        let dir = Relation::from_pairs(SiteSet::line(3), &[(0, 2)]);
        assert!(dir.inverse().contains(2, 0));
        assert!(!dir.inverse().contains(0, 2));
    }

    #[test]
    fn in_generated_matches_word_length() {
        let path = Relation::path(8);
        // distance <= 3 relation
        let mut dist3 = Relation::diagonal(path.sites().clone());
        for i in 0..8usize {
            for j in 0..8usize {
                if i.abs_diff(j) <= 3 {
                    dist3.insert(i, j);
                }
            }
        }
        assert!(in_generated(&dist3, &[path.clone()], 3).unwrap());
        assert!(!in_generated(&dist3, &[path.clone()], 2).unwrap());
        // any subset of a generator is reached at word length 1
        let sub = Relation::from_edges(path.sites().clone(), &[(2, 3)]);
        assert!(in_generated(&sub, &[path], 1).unwrap());
    }

    #[test]
    fn components_split() {
        let rel = Relation::from_edges(SiteSet::line(5), &[(0, 1), (3, 4)]);
        let comps = rel.components();
        assert_eq!(comps, vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn mismatched_sites_error() {
        let a = Relation::path(3);
        let b = Relation::path(4);
        assert!(a.compose(&b).is_err());
        assert!(a.union(&b).is_err());
    }
}
