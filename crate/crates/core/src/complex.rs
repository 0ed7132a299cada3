//! Abstract simplicial complexes on `0..vertex_count`, stored closed under
//! taking faces, one sorted list of simplices per dimension.

use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `simplices[d]` holds the sorted `d`-simplices, each a sorted vertex list.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Closure of the given simplices under taking nonempty faces.
    pub fn from_simplices(vertex_count: usize, generators: Vec<Vec<usize>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for mut s in generators {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            assert!(s.iter().all(|&v| v < vertex_count), "vertex out of range");
            let k = s.len();
            if by_dim.len() < k {
                by_dim.resize_with(k, BTreeSet::new);
            }
            if by_dim[k - 1].contains(&s) {
                continue;
            }
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                by_dim[sub.len() - 1].insert(sub);
            }
        }
        SimplicialComplex {
            vertex_count,
            simplices: by_dim.into_iter().map(|set| set.into_iter().collect()).collect(),
        }
    }

    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Self {
        Self::from_simplices(vertex_count, facets.to_vec())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.simplices.get(d)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().flatten().all(|s| other.contains(s))
    }

    /// Simplices satisfying `keep`; the predicate must be inherited by faces.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> SimplicialComplex {
        let mut simplices: Vec<Vec<Vec<usize>>> =
            self.simplices.iter().map(|level| level.iter().filter(|s| keep(s)).cloned().collect()).collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        SimplicialComplex { vertex_count: self.vertex_count, simplices }
    }

    /// Σ (-1)^d (number of d-simplices).
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}
