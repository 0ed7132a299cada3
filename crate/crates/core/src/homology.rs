//! Simplicial homology over ℤ and ℚ, absolute (reduced) and relative, plus the
//! dual-face criteria for Buchsbaum posets and closed homology manifolds.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::linalg::{rational_rank, smith_normal_form, IntMatrix};
use crate::poset::{FaceId, OrderComplex, SimplicialPoset};
use crate::GroundRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the second complex is not a subcomplex of the first")]
    NotSubcomplex,
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
}

/// Integer boundary matrices `∂_k : C_k → C_{k-1}` in the sorted simplex bases.
///
/// In the augmented case `∂_0` maps every vertex to the empty simplex, so
/// the homology computed is reduced.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Augmented simplicial chain complex of `k`.
    pub fn of_complex(k: &SimplicialComplex) -> Self {
        Self::build(k, None, true)
    }

    /// Chains of `k` modulo chains of `l`.
    pub fn relative(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<Self, HomologyError> {
        if !l.is_subcomplex_of(k) {
            return Err(HomologyError::NotSubcomplex);
        }
        Ok(Self::build(k, Some(l), false))
    }

    fn build(k: &SimplicialComplex, l: Option<&SimplicialComplex>, augmented: bool) -> Self {
        let top = k.dim().map_or(0, |d| d + 1);
        // surviving simplices per degree and their positions
        let basis: Vec<Vec<&Vec<usize>>> = (0..top)
            .map(|d| k.simplices(d).iter().filter(|s| l.is_none_or(|l| !l.contains(s))).collect())
            .collect();
        let position = |d: usize, s: &[usize]| -> Option<usize> {
            basis[d].binary_search_by(|x| x.as_slice().cmp(s)).ok()
        };

        let mut boundaries = Vec::with_capacity(top);
        for d in 0..top {
            let cols = basis[d].len();
            if d == 0 {
                let rows = usize::from(augmented);
                let mut m = IntMatrix::zeros(rows, cols);
                if augmented {
                    for j in 0..cols {
                        m.set(0, j, BigInt::from(1));
                    }
                }
                boundaries.push(m);
                continue;
            }
            let mut m = IntMatrix::zeros(basis[d - 1].len(), cols);
            for (j, s) in basis[d].iter().enumerate() {
                for skip in 0..s.len() {
                    let face: Vec<usize> =
                        s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                    if let Some(i) = position(d - 1, &face) {
                        let sign = if skip % 2 == 0 { 1 } else { -1 };
                        m.set(i, j, BigInt::from(sign));
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplex { ranks: basis.iter().map(Vec::len).collect(), boundaries }
    }

    /// Top degree plus one.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    pub fn boundary(&self, d: usize) -> &IntMatrix {
        &self.boundaries[d]
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` in every degree.
    pub fn verify(&self) -> Result<(), HomologyError> {
        for d in 1..self.len() {
            if !self.boundaries[d - 1].mul(&self.boundaries[d]).is_zero() {
                return Err(HomologyError::BoundarySquare(d));
            }
        }
        Ok(())
    }

    /// Homology in degrees `0..len()`.
    pub fn homology(&self, ring: GroundRing) -> BettiVector {
        let n = self.len();
        let mut ranks = vec![0usize; n + 1];
        let mut torsion_of_image: Vec<Vec<BigInt>> = vec![Vec::new(); n + 1];
        for d in 0..n {
            match ring {
                GroundRing::Rational => ranks[d] = rational_rank(&self.boundaries[d]),
                GroundRing::Integer => {
                    let s = smith_normal_form(&self.boundaries[d], false);
                    ranks[d] = s.rank();
                    torsion_of_image[d] = s.torsion();
                }
            }
        }
        let betti = (0..n).map(|d| self.ranks[d] - ranks[d] - ranks[d + 1]).collect();
        let torsion = (0..n).map(|d| torsion_of_image[d + 1].clone()).collect();
        BettiVector { ring, betti, torsion }
    }
}

/// Betti numbers by degree; over ℤ also the torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub ring: GroundRing,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl BettiVector {
    pub fn get(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// True when the group in degree `d` is zero.
    pub fn vanishes(&self, d: usize) -> bool {
        self.get(d) == 0 && self.torsion.get(d).is_none_or(Vec::is_empty)
    }

    /// True when the group in degree `d` is isomorphic to the ground ring.
    pub fn is_ring_in(&self, d: usize) -> bool {
        self.get(d) == 1 && self.torsion.get(d).is_none_or(Vec::is_empty)
    }

    /// Pads or truncates to `len` degrees.
    pub fn resized(mut self, len: usize) -> Self {
        self.betti.resize(len, 0);
        self.torsion.resize(len, Vec::new());
        self
    }
}

pub fn chain_complex(k: &SimplicialComplex) -> ChainComplex {
    ChainComplex::of_complex(k)
}

/// Reduced homology of a complex.
pub fn reduced_betti(k: &SimplicialComplex, ring: GroundRing) -> BettiVector {
    ChainComplex::of_complex(k).homology(ring)
}

/// Reduced homology of `|S|`, degrees `0..n`.
pub fn poset_betti(sd: &OrderComplex, n: usize, ring: GroundRing) -> BettiVector {
    reduced_betti(&sd.complex, ring).resized(n)
}

/// Homology of the pair `(k, l)`.
pub fn relative_betti(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    ring: GroundRing,
) -> Result<BettiVector, HomologyError> {
    Ok(ChainComplex::relative(k, l)?.homology(ring))
}

/// Relative homology of one dual pair `(G_I, ∂G_I)`.
#[derive(Clone, Debug)]
pub struct DualFaceHomology {
    pub face: FaceId,
    /// `n - |I|`
    pub top_degree: usize,
    pub homology: BettiVector,
}

impl DualFaceHomology {
    /// Degrees other than the top one with nonzero homology.
    pub fn off_top_defects(&self) -> Vec<usize> {
        (0..self.homology.betti.len())
            .filter(|&d| d != self.top_degree && !self.homology.vanishes(d))
            .collect()
    }

    pub fn is_homology_cell(&self) -> bool {
        self.off_top_defects().is_empty() && self.homology.is_ring_in(self.top_degree)
    }
}

/// Relative homology of every dual pair, in face order.
pub fn dual_face_homology(s: &SimplicialPoset, sd: &OrderComplex, ring: GroundRing) -> Vec<DualFaceHomology> {
    let faces: Vec<FaceId> = s.proper_cells().collect();
    faces
        .par_iter()
        .map(|&face| {
            let (g, dg) = s.dual_face_pair(sd, face).expect("proper face");
            let top_degree = s.n() - s.rank(face);
            let homology = relative_betti(&g, &dg, ring).expect("dual boundary lies in the dual face");
            DualFaceHomology { face, top_degree, homology: homology.resized(top_degree + 1) }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceDefect {
    pub face: String,
    /// (degree, rank, torsion coefficients) for every nonvanishing off-top group
    pub groups: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuchsbaumReport {
    pub buchsbaum: bool,
    pub defects: Vec<FaceDefect>,
}

pub fn buchsbaum_from_duals(s: &SimplicialPoset, duals: &[DualFaceHomology]) -> BuchsbaumReport {
    let defects: Vec<FaceDefect> = duals
        .iter()
        .filter_map(|d| {
            let bad = d.off_top_defects();
            (!bad.is_empty()).then(|| FaceDefect {
                face: s.id(d.face).to_string(),
                groups: bad
                    .into_iter()
                    .map(|deg| {
                        let torsion = d.homology.torsion[deg].iter().map(ToString::to_string).collect();
                        (deg, d.homology.get(deg), torsion)
                    })
                    .collect(),
            })
        })
        .collect();
    BuchsbaumReport { buchsbaum: defects.is_empty(), defects }
}

/// Vanishing of `H_j(G_I, ∂G_I)` off the top degree for every proper face.
pub fn buchsbaum_check(s: &SimplicialPoset, ring: GroundRing) -> BuchsbaumReport {
    let sd = s.barycentric_subdivision();
    buchsbaum_from_duals(s, &dual_face_homology(s, &sd, ring))
}

/// Outcome of the dual-cell manifold criterion.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifoldReport {
    pub connected: bool,
    /// Every dual pair is a homology cell of the expected dimension.
    pub closed_homology_manifold: bool,
    /// Only decided for closed homology manifolds.
    pub orientable: Option<bool>,
    pub non_cell_faces: Vec<String>,
}

pub fn manifold_from_duals(
    s: &SimplicialPoset,
    betti: &BettiVector,
    duals: &[DualFaceHomology],
) -> ManifoldReport {
    let connected = !s.is_empty() && betti.get(0) == 0;
    let non_cell_faces: Vec<String> =
        duals.iter().filter(|d| !d.is_homology_cell()).map(|d| s.id(d.face).to_string()).collect();
    let closed = non_cell_faces.is_empty();
    let orientable = closed.then(|| betti.is_ring_in(s.n() - 1));
    ManifoldReport { connected, closed_homology_manifold: closed, orientable, non_cell_faces }
}

pub fn manifold_check(s: &SimplicialPoset, ring: GroundRing) -> ManifoldReport {
    let sd = s.barycentric_subdivision();
    let betti = poset_betti(&sd, s.n(), ring);
    manifold_from_duals(s, &betti, &dual_face_homology(s, &sd, ring))
}
