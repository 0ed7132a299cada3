//! Pure simplicial posets: validation, face-order queries, f- and h-vectors,
//! barycentric subdivision and dual faces.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty input: at least one facet or cell is required")]
    Empty,
    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),
    #[error("cell `{cell}` references unknown cell `{missing}`")]
    UnknownCell { cell: String, missing: String },
    #[error("non-unique minimum: `{cell}` is minimal but is not the empty cell")]
    NonUniqueMinimum { cell: String },
    #[error("cell `{cell}` of rank {rank} has face `{face}` of rank {face_rank}; covers must drop rank by exactly one")]
    NotGraded { cell: String, rank: usize, face: String, face_rank: usize },
    #[error("non-Boolean lower ideal at `{cell}`: {reason}")]
    NonBoolean { cell: String, reason: String },
    #[error("non-pure: maximal cell `{cell}` has rank {rank}, expected {expected}")]
    NotPure { cell: String, rank: usize, expected: usize },
    #[error("non-pure facets: {{{}}} and {{{}}} have different sizes", .smaller.join(","), .larger.join(","))]
    NonPureFacets { smaller: Vec<String>, larger: Vec<String> },
    #[error("facet {{{}}} repeats a vertex", .0.join(","))]
    RepeatedVertex(Vec<String>),
    #[error("the minimal cell has no dual face")]
    BottomHasNoDualFace,
    #[error("inconsistent meets of `{a}` and `{b}` across their joins")]
    InconsistentMeet { a: String, b: String },
}

/// Index of a cell in a validated poset. Index 0 is the minimal element, the
/// vertices follow, and the order of indices is a linear extension of the face
/// order (rank first, then vertex sets, then ids).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl FaceId {
    pub const BOTTOM: FaceId = FaceId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Counts of cells by dimension, starting with f₋₁ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// f_{i-1}, i.e. the number of cells of rank `rank`.
    pub fn by_rank(&self, rank: usize) -> u64 {
        self.0.get(rank).copied().unwrap_or(0)
    }
}

/// Sort key for user labels: integers compare numerically and sort before
/// other strings, ties broken by the raw text.
pub(crate) fn label_key(label: &str) -> (u8, i128, &str) {
    match label.parse::<i128>() {
        Ok(v) => (0, v, label),
        Err(_) => (1, 0, label),
    }
}

pub(crate) fn cmp_labels(a: &str, b: &str) -> Ordering {
    label_key(a).cmp(&label_key(b))
}

/// A cell record as it appears in the input document.
#[derive(Clone, Debug, Deserialize)]
pub struct CellRecord {
    pub id: String,
    pub rank: usize,
    #[serde(default)]
    pub facets: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SimplicialPoset {
    ids: Vec<String>,
    ranks: Vec<usize>,
    lower_covers: Vec<Vec<FaceId>>,
    upper_covers: Vec<Vec<FaceId>>,
    /// Sorted vertex indices (0-based positions among the vertices).
    vertex_sets: Vec<Vec<usize>>,
    /// Sorted, including the cell itself.
    below: Vec<Vec<FaceId>>,
    above: Vec<Vec<FaceId>>,
    facets: Vec<FaceId>,
    vertex_count: usize,
    n: usize,
    by_id: HashMap<String, FaceId>,
}

pub const BOTTOM_ID: &str = "∅";

impl SimplicialPoset {
    /// Builds and validates a poset from cover records. Rank-0 cells may be
    /// omitted; rank-1 cells referenced by rank-2 cells but never declared are
    /// created on the fly.
    pub fn from_cells(records: &[CellRecord]) -> Result<Self, PosetError> {
        if records.is_empty() {
            return Err(PosetError::Empty);
        }
        let mut bottom_id: Option<String> = None;
        let mut raw: Vec<(String, usize, Vec<String>)> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for rec in records {
            if seen.contains_key(&rec.id) {
                return Err(PosetError::DuplicateCell(rec.id.clone()));
            }
            if rec.rank == 0 {
                if let Some(prev) = &bottom_id {
                    return Err(PosetError::NonUniqueMinimum { cell: prev.clone().max(rec.id.clone()) });
                }
                if !rec.facets.is_empty() {
                    return Err(PosetError::NotGraded {
                        cell: rec.id.clone(),
                        rank: 0,
                        face: rec.facets[0].clone(),
                        face_rank: 0,
                    });
                }
                bottom_id = Some(rec.id.clone());
                seen.insert(rec.id.clone(), usize::MAX);
                continue;
            }
            seen.insert(rec.id.clone(), raw.len());
            raw.push((rec.id.clone(), rec.rank, rec.facets.clone()));
        }
        let bottom_id = bottom_id.unwrap_or_else(|| BOTTOM_ID.to_string());
        seen.entry(bottom_id.clone()).or_insert(usize::MAX);
        if raw.is_empty() {
            return Err(PosetError::Empty);
        }

        // auto-create undeclared vertices referenced from rank-2 cells
        let mut extra = Vec::new();
        for (id, rank, faces) in &raw {
            for f in faces {
                if seen.contains_key(f) {
                    continue;
                }
                if *rank == 2 {
                    seen.insert(f.clone(), raw.len() + extra.len());
                    extra.push((f.clone(), 1usize, Vec::new()));
                } else {
                    return Err(PosetError::UnknownCell { cell: id.clone(), missing: f.clone() });
                }
            }
        }
        raw.extend(extra);

        // raw index -> covers as raw indices; usize::MAX stands for the bottom
        let mut covers: Vec<Vec<usize>> = Vec::with_capacity(raw.len());
        for (id, rank, faces) in &raw {
            let mut cs = Vec::new();
            for f in faces {
                let idx = seen[f];
                let face_rank = if idx == usize::MAX { 0 } else { raw[idx].1 };
                if face_rank + 1 != *rank {
                    return Err(PosetError::NotGraded {
                        cell: id.clone(),
                        rank: *rank,
                        face: f.clone(),
                        face_rank,
                    });
                }
                if idx != usize::MAX {
                    cs.push(idx);
                }
            }
            if *rank >= 2 && cs.is_empty() {
                return Err(PosetError::NonUniqueMinimum { cell: id.clone() });
            }
            let distinct: BTreeSet<usize> = cs.iter().copied().collect();
            if distinct.len() != cs.len() {
                return Err(PosetError::NonBoolean {
                    cell: id.clone(),
                    reason: "a face is listed twice".into(),
                });
            }
            covers.push(cs);
        }

        // vertex order by label
        let mut vertex_raw: Vec<usize> = (0..raw.len()).filter(|&i| raw[i].1 == 1).collect();
        vertex_raw.sort_by(|&a, &b| cmp_labels(&raw[a].0, &raw[b].0));
        let mut vertex_pos = vec![usize::MAX; raw.len()];
        for (p, &r) in vertex_raw.iter().enumerate() {
            vertex_pos[r] = p;
        }

        // vertex sets in rank order
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i].1);
        let mut vsets: Vec<Vec<usize>> = vec![Vec::new(); raw.len()];
        for &i in &order {
            if raw[i].1 == 1 {
                vsets[i] = vec![vertex_pos[i]];
            } else {
                let set: BTreeSet<usize> =
                    covers[i].iter().flat_map(|&c| vsets[c].iter().copied()).collect();
                vsets[i] = set.into_iter().collect();
            }
        }

        // canonical order: rank, vertex set, id
        let mut canon: Vec<usize> = (0..raw.len()).collect();
        canon.sort_by(|&a, &b| {
            raw[a]
                .1
                .cmp(&raw[b].1)
                .then_with(|| vsets[a].cmp(&vsets[b]))
                .then_with(|| cmp_labels(&raw[a].0, &raw[b].0))
        });
        let total = raw.len() + 1;
        let mut new_index = vec![0u32; raw.len()];
        for (pos, &r) in canon.iter().enumerate() {
            new_index[r] = (pos + 1) as u32;
        }

        let mut ids = vec![bottom_id.clone()];
        let mut ranks = vec![0];
        let mut lower_covers = vec![Vec::new()];
        let mut vertex_sets = vec![Vec::new()];
        for &r in &canon {
            ids.push(raw[r].0.clone());
            ranks.push(raw[r].1);
            let mut lc: Vec<FaceId> = if raw[r].1 == 1 {
                vec![FaceId::BOTTOM]
            } else {
                covers[r].iter().map(|&c| FaceId(new_index[c])).collect()
            };
            lc.sort();
            lower_covers.push(lc);
            vertex_sets.push(vsets[r].clone());
        }
        let mut upper_covers = vec![Vec::new(); total];
        for (c, lcs) in lower_covers.iter().enumerate() {
            for l in lcs {
                upper_covers[l.index()].push(FaceId(c as u32));
            }
        }

        // down-sets, built in index order (a linear extension)
        let mut below: Vec<Vec<FaceId>> = vec![vec![FaceId::BOTTOM]];
        for c in 1..total {
            let mut set: BTreeSet<FaceId> = BTreeSet::new();
            set.insert(FaceId(c as u32));
            for l in &lower_covers[c] {
                set.extend(below[l.index()].iter().copied());
            }
            below.push(set.into_iter().collect());
        }
        let mut above: Vec<Vec<FaceId>> = vec![Vec::new(); total];
        for (c, down) in below.iter().enumerate() {
            for d in down {
                above[d.index()].push(FaceId(c as u32));
            }
        }

        let mut by_id = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            by_id.insert(id.clone(), FaceId(i as u32));
        }

        let vertex_count = vertex_raw.len();
        let n = *ranks.iter().max().unwrap_or(&0);
        let facets: Vec<FaceId> =
            (1..total).filter(|&c| upper_covers[c].is_empty()).map(|c| FaceId(c as u32)).collect();

        let poset = SimplicialPoset {
            ids,
            ranks,
            lower_covers,
            upper_covers,
            vertex_sets,
            below,
            above,
            facets,
            vertex_count,
            n,
            by_id,
        };
        poset.check_boolean()?;
        poset.check_pure()?;
        Ok(poset)
    }

    /// The face poset of the simplicial complex generated by `facets`.
    /// Identical facets are merged; facets of different sizes are rejected.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, PosetError> {
        if facets.is_empty() || facets.iter().any(|f| f.is_empty()) {
            return Err(PosetError::Empty);
        }
        let mut unique: Vec<Vec<String>> = Vec::new();
        for f in facets {
            let mut labels: Vec<String> = f.iter().map(|s| s.as_ref().to_string()).collect();
            labels.sort_by(|a, b| cmp_labels(a, b));
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return Err(PosetError::RepeatedVertex(labels));
            }
            if !unique.contains(&labels) {
                unique.push(labels);
            }
        }
        for a in &unique {
            for b in &unique {
                if a.len() < b.len() {
                    return Err(PosetError::NonPureFacets { smaller: a.clone(), larger: b.clone() });
                }
            }
        }

        let mut faces: BTreeSet<Vec<String>> = BTreeSet::new();
        for f in &unique {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<String> =
                    (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i].clone()).collect();
                faces.insert(sub);
            }
        }
        let face_id = |f: &[String]| f.join(",");
        let records: Vec<CellRecord> = faces
            .iter()
            .map(|f| CellRecord {
                id: face_id(f),
                rank: f.len(),
                facets: if f.len() == 1 {
                    Vec::new()
                } else {
                    (0..f.len())
                        .map(|skip| {
                            let sub: Vec<String> = f
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != skip)
                                .map(|(_, s)| s.clone())
                                .collect();
                            face_id(&sub)
                        })
                        .collect()
                },
            })
            .collect();
        Self::from_cells(&records)
    }

    fn check_boolean(&self) -> Result<(), PosetError> {
        for c in 1..self.len() {
            let rank = self.ranks[c];
            let id = &self.ids[c];
            if self.vertex_sets[c].len() != rank {
                return Err(PosetError::NonBoolean {
                    cell: id.clone(),
                    reason: format!(
                        "rank {rank} but {} vertices below it",
                        self.vertex_sets[c].len()
                    ),
                });
            }
            if rank >= 2 {
                let covers = &self.lower_covers[c];
                if covers.len() != rank {
                    return Err(PosetError::NonBoolean {
                        cell: id.clone(),
                        reason: format!("rank {rank} but {} codimension-one faces", covers.len()),
                    });
                }
                let sets: BTreeSet<&Vec<usize>> =
                    covers.iter().map(|f| &self.vertex_sets[f.index()]).collect();
                if sets.len() != covers.len() {
                    return Err(PosetError::NonBoolean {
                        cell: id.clone(),
                        reason: "two codimension-one faces share a vertex set".into(),
                    });
                }
            }
            let down = &self.below[c];
            if down.len() != 1usize << rank {
                return Err(PosetError::NonBoolean {
                    cell: id.clone(),
                    reason: format!("{} cells below it, expected {}", down.len(), 1usize << rank),
                });
            }
            let sets: BTreeSet<&Vec<usize>> =
                down.iter().map(|f| &self.vertex_sets[f.index()]).collect();
            if sets.len() != down.len() {
                return Err(PosetError::NonBoolean {
                    cell: id.clone(),
                    reason: "two faces below it share a vertex set".into(),
                });
            }
        }
        Ok(())
    }

    fn check_pure(&self) -> Result<(), PosetError> {
        for &f in &self.facets {
            if self.rank(f) != self.n {
                return Err(PosetError::NotPure {
                    cell: self.id(f).to_string(),
                    rank: self.rank(f),
                    expected: self.n,
                });
            }
        }
        Ok(())
    }

    /// Number of cells including the minimal one.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.len() <= 1
    }

    /// Common rank of the maximal cells.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices `m`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cells(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.len() as u32).map(FaceId)
    }

    pub fn proper_cells(&self) -> impl Iterator<Item = FaceId> + '_ {
        (1..self.len() as u32).map(FaceId)
    }

    /// Vertices in label order; vertex `i` is `FaceId(i + 1)`.
    pub fn vertices(&self) -> impl Iterator<Item = FaceId> + '_ {
        (1..=self.vertex_count as u32).map(FaceId)
    }

    pub fn vertex(&self, i: usize) -> FaceId {
        assert!(i < self.vertex_count);
        FaceId(i as u32 + 1)
    }

    pub fn facets(&self) -> &[FaceId] {
        &self.facets
    }

    pub fn rank(&self, f: FaceId) -> usize {
        self.ranks[f.index()]
    }

    pub fn id(&self, f: FaceId) -> &str {
        &self.ids[f.index()]
    }

    pub fn find(&self, id: &str) -> Option<FaceId> {
        self.by_id.get(id).copied()
    }

    /// Vertex positions (0-based) of a cell.
    pub fn vertex_set(&self, f: FaceId) -> &[usize] {
        &self.vertex_sets[f.index()]
    }

    pub fn lower_covers(&self, f: FaceId) -> &[FaceId] {
        &self.lower_covers[f.index()]
    }

    pub fn upper_covers(&self, f: FaceId) -> &[FaceId] {
        &self.upper_covers[f.index()]
    }

    /// Cells `≤ f`, sorted.
    pub fn below(&self, f: FaceId) -> &[FaceId] {
        &self.below[f.index()]
    }

    /// Cells `≥ f`, sorted.
    pub fn above(&self, f: FaceId) -> &[FaceId] {
        &self.above[f.index()]
    }

    pub fn le(&self, a: FaceId, b: FaceId) -> bool {
        a <= b && self.below[b.index()].binary_search(&a).is_ok()
    }

    pub fn comparable(&self, a: FaceId, b: FaceId) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// The cell below `top` with the given vertex set, if any.
    pub fn face_with_vertices(&self, top: FaceId, vertices: &[usize]) -> Option<FaceId> {
        self.below[top.index()].iter().copied().find(|&c| self.vertex_sets[c.index()] == vertices)
    }

    /// True when every vertex set occurs at most once, i.e. the poset is the
    /// face poset of a simplicial complex.
    pub fn is_simplicial_complex(&self) -> bool {
        let sets: BTreeSet<&Vec<usize>> = self.vertex_sets.iter().collect();
        sets.len() == self.vertex_sets.len()
    }

    /// Facets as lists of vertex positions; only meaningful as a complex when
    /// [`is_simplicial_complex`](Self::is_simplicial_complex) holds.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| self.vertex_sets[f.index()].clone()).collect()
    }

    /// Labels of vertices in order.
    pub fn vertex_labels(&self) -> Vec<String> {
        self.vertices().map(|v| self.id(v).to_string()).collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut f = vec![0u64; self.n + 1];
        for &r in &self.ranks {
            f[r] += 1;
        }
        FVector(f)
    }

    /// Least upper bounds and the meet of two cells.
    pub fn meet_join(&self, a: FaceId, b: FaceId) -> Result<MeetJoin, PosetError> {
        if self.le(a, b) {
            return Ok(MeetJoin { meet: Some(a), joins: vec![b] });
        }
        if self.le(b, a) {
            return Ok(MeetJoin { meet: Some(b), joins: vec![a] });
        }
        let up_a = &self.above[a.index()];
        let up_b = &self.above[b.index()];
        let common: Vec<FaceId> =
            up_a.iter().copied().filter(|c| up_b.binary_search(c).is_ok()).collect();
        let joins: Vec<FaceId> = common
            .iter()
            .copied()
            .filter(|&c| !common.iter().any(|&d| d != c && self.le(d, c)))
            .collect();
        if joins.is_empty() {
            return Ok(MeetJoin { meet: None, joins });
        }
        let va = &self.vertex_sets[a.index()];
        let vb = &self.vertex_sets[b.index()];
        let shared: Vec<usize> = va.iter().copied().filter(|v| vb.binary_search(v).is_ok()).collect();
        let mut meet = None;
        for &j in &joins {
            let m = self.face_with_vertices(j, &shared);
            match (meet, m) {
                (_, None) => {
                    return Err(PosetError::InconsistentMeet {
                        a: self.id(a).into(),
                        b: self.id(b).into(),
                    })
                }
                (None, Some(m)) => meet = Some(m),
                (Some(prev), Some(m)) if prev != m => {
                    return Err(PosetError::InconsistentMeet {
                        a: self.id(a).into(),
                        b: self.id(b).into(),
                    })
                }
                _ => {}
            }
        }
        Ok(MeetJoin { meet, joins })
    }

    /// Barycentric subdivision: the order complex of the proper cells. Vertex
    /// `i` of the result is the cell `FaceId(i + 1)`.
    pub fn barycentric_subdivision(&self) -> OrderComplex {
        let mut chains: Vec<Vec<usize>> = Vec::new();
        fn extend(poset: &SimplicialPoset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(chain.clone());
            let last = FaceId(*chain.last().expect("nonempty chain") as u32 + 1);
            for &next in poset.above(last) {
                if next != last {
                    chain.push(next.index() - 1);
                    extend(poset, chain, out);
                    chain.pop();
                }
            }
        }
        for c in self.proper_cells() {
            let mut chain = vec![c.index() - 1];
            extend(self, &mut chain, &mut chains);
        }
        OrderComplex { complex: SimplicialComplex::from_simplices(self.len() - 1, chains) }
    }

    /// The dual face `G_I` (chains starting at or above `I`) and its boundary
    /// (chains starting strictly above `I`), as subcomplexes of `sd`.
    pub fn dual_face_pair(
        &self,
        sd: &OrderComplex,
        face: FaceId,
    ) -> Result<(SimplicialComplex, SimplicialComplex), PosetError> {
        if face == FaceId::BOTTOM {
            return Err(PosetError::BottomHasNoDualFace);
        }
        let base = face.index() - 1;
        let g = sd.complex.filter(|s| {
            let min = FaceId(s[0] as u32 + 1);
            self.le(face, min)
        });
        let dg = sd.complex.filter(|s| {
            let min = FaceId(s[0] as u32 + 1);
            s[0] != base && self.le(face, min)
        });
        Ok((g, dg))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetJoin {
    /// Defined whenever `joins` is nonempty.
    pub meet: Option<FaceId>,
    pub joins: Vec<FaceId>,
}

/// h-vector from an f-vector via Σ h_k t^k = Σ f_{i-1} t^i (1-t)^{n-i}.
pub fn h_vector(f: &FVector, n: usize) -> Vec<i64> {
    assert_eq!(f.0.len(), n + 1, "f-vector length must be n + 1");
    let mut h = vec![0i64; n + 1];
    for (i, &fi) in f.0.iter().enumerate() {
        // t^i (1-t)^{n-i}
        let m = n - i;
        let mut binom = 1i64;
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            h[i + j] += sign * binom * fi as i64;
            binom = binom * (m - j) as i64 / (j + 1) as i64;
        }
    }
    h
}

/// The barycentric subdivision of a poset.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub complex: SimplicialComplex,
}

impl OrderComplex {
    /// Poset cell corresponding to a vertex of the subdivision.
    pub fn cell(&self, vertex: usize) -> FaceId {
        FaceId(vertex as u32 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, rank: usize, facets: &[&str]) -> CellRecord {
        CellRecord { id: id.into(), rank, facets: facets.iter().map(|s| s.to_string()).collect() }
    }

    pub(crate) fn circle() -> SimplicialPoset {
        SimplicialPoset::from_cells(&[rec("a", 2, &["u", "v"]), rec("b", 2, &["u", "v"])]).unwrap()
    }

    fn labels(rows: &[&[u32]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn circle_poset_is_valid() {
        let s = circle();
        assert_eq!(s.n(), 2);
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.f_vector(), FVector(vec![1, 2, 2]));
        assert!(!s.is_simplicial_complex());
    }

    #[test]
    fn triangle_over_two_vertices_is_rejected() {
        let err = SimplicialPoset::from_cells(&[
            rec("e", 2, &["u", "v"]),
            rec("f", 2, &["u", "v"]),
            rec("g", 2, &["u", "v"]),
            rec("t", 3, &["e", "f", "g"]),
        ])
        .unwrap_err();
        match err {
            PosetError::NonBoolean { cell, .. } => assert_eq!(cell, "t"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn doubled_edge_triangle_is_rejected() {
        let err = SimplicialPoset::from_cells(&[
            rec("a", 2, &["1", "2"]),
            rec("b", 2, &["1", "2"]),
            rec("c", 2, &["2", "3"]),
            rec("t", 3, &["a", "b", "c"]),
        ])
        .unwrap_err();
        assert!(matches!(err, PosetError::NonBoolean { ref cell, .. } if cell == "t"), "{err}");
    }

    #[test]
    fn missing_lower_faces_break_the_minimum() {
        let err = SimplicialPoset::from_cells(&[rec("x", 2, &[])]).unwrap_err();
        assert!(matches!(err, PosetError::NonUniqueMinimum { .. }));
    }

    #[test]
    fn two_bottoms_are_rejected() {
        let err =
            SimplicialPoset::from_cells(&[rec("z", 0, &[]), rec("y", 0, &[]), rec("v", 1, &[])])
                .unwrap_err();
        assert!(matches!(err, PosetError::NonUniqueMinimum { .. }));
    }

    #[test]
    fn non_pure_poset_is_rejected() {
        let err = SimplicialPoset::from_cells(&[rec("e", 2, &["1", "2"]), rec("3", 1, &[])])
            .unwrap_err();
        assert!(matches!(err, PosetError::NotPure { ref cell, .. } if cell == "3"));
    }

    #[test]
    fn from_facets_boundary_of_tetrahedron() {
        let s = SimplicialPoset::from_facets(&labels(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]))
            .unwrap();
        assert_eq!(s.f_vector(), FVector(vec![1, 4, 6, 4]));
        assert!(s.is_simplicial_complex());
    }

    #[test]
    fn from_facets_rejects_mixed_sizes() {
        let err = SimplicialPoset::from_facets(&labels(&[&[1, 2], &[1, 2, 3]])).unwrap_err();
        assert!(matches!(err, PosetError::NonPureFacets { .. }));
    }

    #[test]
    fn from_facets_deduplicates() {
        let s = SimplicialPoset::from_facets(&labels(&[&[1, 2], &[2, 1], &[2, 3]])).unwrap();
        assert_eq!(s.f_vector(), FVector(vec![1, 3, 2]));
    }

    #[test]
    fn labels_sort_numerically() {
        let s = SimplicialPoset::from_facets(&labels(&[&[10, 2], &[2, 1]])).unwrap();
        assert_eq!(s.vertex_labels(), vec!["1", "2", "10"]);
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&FVector(vec![1, 4, 6, 4]), 3), vec![1, 1, 1, 1]);
        assert_eq!(h_vector(&FVector(vec![1, 7, 21, 14]), 3), vec![1, 4, 10, -1]);
        assert_eq!(h_vector(&FVector(vec![1, 6, 15, 10]), 3), vec![1, 3, 6, 0]);
        assert_eq!(h_vector(&FVector(vec![1, 1]), 1), vec![1, 0]);
    }

    #[test]
    fn meet_join_on_circle() {
        let s = circle();
        let u = s.find("u").unwrap();
        let v = s.find("v").unwrap();
        let mj = s.meet_join(u, v).unwrap();
        assert_eq!(mj.meet, Some(FaceId::BOTTOM));
        let joins: Vec<&str> = mj.joins.iter().map(|&j| s.id(j)).collect();
        assert_eq!(joins, vec!["a", "b"]);
        assert_eq!(s.meet_join(u, u).unwrap(), MeetJoin { meet: Some(u), joins: vec![u] });
        let a = s.find("a").unwrap();
        let b = s.find("b").unwrap();
        assert_eq!(s.meet_join(a, b).unwrap().joins, vec![]);
    }

    #[test]
    fn subdivision_of_circle_poset() {
        let sd = circle().barycentric_subdivision();
        assert_eq!(sd.complex.count(0), 4);
        assert_eq!(sd.complex.count(1), 4);
        assert_eq!(sd.complex.dim(), Some(1));
    }

    #[test]
    fn subdivision_of_triangle_boundary_is_a_hexagon() {
        let s = SimplicialPoset::from_facets(&labels(&[&[1, 2], &[2, 3], &[1, 3]])).unwrap();
        let sd = s.barycentric_subdivision();
        assert_eq!(sd.complex.count(0), 6);
        assert_eq!(sd.complex.count(1), 6);
    }

    #[test]
    fn dual_faces_on_circle() {
        let s = circle();
        let sd = s.barycentric_subdivision();
        let u = s.find("u").unwrap();
        let (g, dg) = s.dual_face_pair(&sd, u).unwrap();
        assert_eq!((g.count(0), g.count(1)), (3, 2));
        assert_eq!((dg.count(0), dg.count(1)), (2, 0));
        let a = s.find("a").unwrap();
        let (g, dg) = s.dual_face_pair(&sd, a).unwrap();
        assert_eq!(g.count(0), 1);
        assert!(dg.is_empty());
        assert!(s.dual_face_pair(&sd, FaceId::BOTTOM).is_err());
    }
}
