//! 𝕜[S]/Θ degree by degree, its interior socle, the quotient by that socle,
//! the top-degree pairing, and the report tying all checks together.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::face_ring::{
    find_characteristic_function, theta_multiplication_matrix, ChainMonomial, CharacteristicFunction,
    FaceRing, FaceRingError, GradedBasis, LambdaDocument, RingElement,
};
use crate::homology::{
    buchsbaum_from_duals, dual_face_homology, manifold_from_duals, poset_betti, BettiVector,
    BuchsbaumReport, ManifoldReport,
};
use crate::linalg::{
    dense_rank, dense_to_qvec, integer_determinant, integer_kernel, rational_kernel, Echelon, IntMatrix,
    LatticeQuotient, QVec,
};
use crate::poset::{h_vector, FaceId, SimplicialPoset};
use crate::GroundRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Ring(#[from] FaceRingError),
    #[error("(k[S]/Θ) has dimension {0} in degree 2n+2; the characteristic function is not a linear system of parameters")]
    NotLsop(usize),
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// h′_k = h_k + C(n,k) Σ_{j=1}^{k-1} (-1)^{k-j-1} β̃_{j-1}.
pub fn h_prime(h: &[i64], betti: &[usize], n: usize) -> Vec<i64> {
    (0..=n)
        .map(|k| {
            let alternating: i64 = (1..k)
                .map(|j| {
                    let b = betti.get(j - 1).copied().unwrap_or(0) as i64;
                    if (k - j - 1) % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            h[k] + binomial(n, k) * alternating
        })
        .collect()
}

/// h″_k = h′_k − C(n,k) β̃_{k-1} for 0 ≤ k < n, and h″_n = h′_n.
pub fn h_double_prime(h_prime: &[i64], betti: &[usize], n: usize) -> Vec<i64> {
    (0..=n)
        .map(|k| {
            if k == n || k == 0 {
                h_prime[k]
            } else {
                h_prime[k] - binomial(n, k) * betti.get(k - 1).copied().unwrap_or(0) as i64
            }
        })
        .collect()
}

/// One graded piece of 𝕜[S]/Θ.
#[derive(Clone, Debug)]
struct QuotientPiece {
    basis: Arc<GradedBasis>,
    theta: Echelon,
    /// Basis positions of the monomials spanning the quotient.
    complement: Vec<usize>,
    complement_index: HashMap<usize, usize>,
}

/// 𝕜[S]/Θ in half-degrees `0..=n+1` with canonical normal forms.
pub struct QuotientPresentation {
    ring: Arc<FaceRing>,
    pieces: Vec<QuotientPiece>,
}

impl QuotientPresentation {
    pub fn build(ring: Arc<FaceRing>, lambda: &CharacteristicFunction) -> Result<Self, AnalysisError> {
        let n = ring.poset().n();
        let pieces: Vec<QuotientPiece> = (0..=n + 1)
            .into_par_iter()
            .map(|k| -> Result<QuotientPiece, AnalysisError> {
                let basis = ring.basis(k);
                let mut theta = Echelon::new(basis.len());
                if k > 0 {
                    'outer: for j in 0..n {
                        for col in theta_multiplication_matrix(&ring, lambda, j, k - 1)? {
                            theta.insert(col);
                            if theta.is_full() {
                                break 'outer;
                            }
                        }
                    }
                }
                let complement = theta.free_coordinates();
                let complement_index = complement.iter().enumerate().map(|(i, &p)| (p, i)).collect();
                Ok(QuotientPiece { basis, theta, complement, complement_index })
            })
            .collect::<Result<_, _>>()?;
        let top = pieces[n + 1].complement.len();
        if top != 0 {
            return Err(AnalysisError::NotLsop(top));
        }
        Ok(QuotientPresentation { ring, pieces })
    }

    pub fn ring(&self) -> &FaceRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.pieces.len() - 2
    }

    /// dim (𝕜[S]/Θ)_{2k} for k = 0..=n+1.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.complement.len()).collect()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.pieces.get(k).map_or(0, |p| p.complement.len())
    }

    pub fn basis(&self, k: usize) -> &GradedBasis {
        &self.pieces[k].basis
    }

    /// Monomials representing the quotient basis in half-degree `k`.
    pub fn representatives(&self, k: usize) -> Vec<ChainMonomial> {
        self.pieces
            .get(k)
            .map(|p| p.complement.iter().map(|&i| p.basis.get(i).clone()).collect())
            .unwrap_or_default()
    }

    /// Dense quotient coordinates of an element of 𝕜[S]_{2k}.
    pub fn reduce(&self, x: &RingElement) -> Vec<BigRational> {
        let k = x.weight();
        let Some(piece) = self.pieces.get(k) else {
            // vanishes above 2n+2
            return Vec::new();
        };
        let nf = piece.theta.normal_form(&piece.basis.coordinates(x));
        let mut out = vec![BigRational::zero(); piece.complement.len()];
        for (i, c) in nf {
            out[piece.complement_index[&i]] = c;
        }
        out
    }

    /// True when `x` lies in Θ.
    pub fn in_theta(&self, x: &RingElement) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// The element of 𝕜[S] represented by quotient coordinates.
    pub fn lift(&self, k: usize, coords: &[BigRational]) -> RingElement {
        let piece = &self.pieces[k];
        RingElement::from_terms(
            k,
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| (piece.basis.get(piece.complement[i]).clone(), c.clone())),
        )
    }

    fn lift_basis(&self, k: usize, i: usize) -> RingElement {
        let piece = &self.pieces[k];
        RingElement::monomial(piece.basis.get(piece.complement[i]).clone(), k, BigRational::one())
    }

    /// Matrix (as columns over stacked targets) of multiplication by each of
    /// `cells` on the quotient piece of half-degree `k`. Targets above `n` vanish.
    fn multiplication_columns(&self, k: usize, cells: &[FaceId]) -> Result<(Vec<QVec>, usize), AnalysisError> {
        let s = self.ring.poset();
        let n = self.n();
        let targets: Vec<(FaceId, usize)> = cells
            .iter()
            .filter(|&&c| k + s.rank(c) <= n)
            .map(|&c| (c, k + s.rank(c)))
            .collect();
        let mut offsets = Vec::with_capacity(targets.len());
        let mut rows = 0;
        for &(_, t) in &targets {
            offsets.push(rows);
            rows += self.dim(t);
        }
        let mut columns = Vec::with_capacity(self.dim(k));
        for i in 0..self.dim(k) {
            let mono = self.pieces[k].basis.get(self.pieces[k].complement[i]).clone();
            let mut col: QVec = Vec::new();
            for (&(cell, _), &off) in targets.iter().zip(&offsets) {
                let prod = self.ring.multiply_generator(cell, &mono)?;
                for (j, c) in self.reduce(&prod).into_iter().enumerate() {
                    if !c.is_zero() {
                        col.push((off + j, c));
                    }
                }
            }
            columns.push(col);
        }
        Ok((columns, rows))
    }
}

/// Interior socle of 𝕜[S]/Θ in half-degrees `1..n`.
#[derive(Clone, Debug)]
pub struct SocleSummary {
    /// Annihilator of every generator v_J (the ring socle), by half-degree `1..n`.
    pub ring_socle: Vec<Vec<Vec<BigRational>>>,
    /// Annihilator of the vertex generators only (the polynomial-ring socle).
    pub polynomial_socle_dims: Vec<usize>,
}

impl SocleSummary {
    /// Dimensions of the ring socle for k = 1..n-1.
    pub fn dims(&self) -> Vec<usize> {
        self.ring_socle.iter().map(Vec::len).collect()
    }

    pub fn discrepancy(&self) -> bool {
        self.dims() != self.polynomial_socle_dims
    }
}

pub fn interior_socle(pres: &QuotientPresentation) -> Result<SocleSummary, AnalysisError> {
    let s = pres.ring().poset();
    let n = pres.n();
    let all: Vec<FaceId> = s.proper_cells().collect();
    let vertices: Vec<FaceId> = s.vertices().collect();
    let per_degree: Vec<(Vec<Vec<BigRational>>, usize)> = (1..n)
        .into_par_iter()
        .map(|k| -> Result<_, AnalysisError> {
            let (cols, rows) = pres.multiplication_columns(k, &all)?;
            let ring_socle = rational_kernel(&cols, rows);
            let (cols, rows) = pres.multiplication_columns(k, &vertices)?;
            let poly_dim = rational_kernel(&cols, rows).len();
            Ok((ring_socle, poly_dim))
        })
        .collect::<Result<_, _>>()?;
    let (ring_socle, polynomial_socle_dims) = per_degree.into_iter().unzip();
    Ok(SocleSummary { ring_socle, polynomial_socle_dims })
}

/// (𝕜[S]/Θ) modulo its interior socle.
pub struct NsQuotient<'a> {
    pres: &'a QuotientPresentation,
    /// Echelon form of the socle inside each quotient piece (zero at 0 and n).
    socle: Vec<Echelon>,
    /// Quotient coordinates spanning A in each half-degree.
    coords: Vec<Vec<usize>>,
}

impl<'a> NsQuotient<'a> {
    pub fn new(pres: &'a QuotientPresentation, socle: &SocleSummary) -> Self {
        let n = pres.n();
        let mut echelons = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut e = Echelon::new(pres.dim(k));
            if k > 0 && k < n {
                for v in &socle.ring_socle[k - 1] {
                    e.insert(dense_to_qvec(v));
                }
            }
            echelons.push(e);
        }
        let coords = echelons.iter().map(Echelon::free_coordinates).collect();
        NsQuotient { pres, socle: echelons, coords }
    }

    pub fn n(&self) -> usize {
        self.pres.n()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.coords.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.coords.get(k).map_or(0, Vec::len)
    }

    /// Dense A-coordinates of an element of 𝕜[S].
    pub fn reduce(&self, x: &RingElement) -> Vec<BigRational> {
        let k = x.weight();
        if k > self.n() {
            return Vec::new();
        }
        let q = dense_to_qvec(&self.pres.reduce(x));
        let nf = self.socle[k].normal_form(&q);
        let mut out = vec![BigRational::zero(); self.coords[k].len()];
        for (i, c) in nf {
            let pos = self.coords[k].binary_search(&i).expect("normal form is supported off pivots");
            out[pos] = c;
        }
        out
    }

    /// Ring element representing A-coordinates.
    pub fn lift(&self, k: usize, coords: &[BigRational]) -> RingElement {
        let mut q = vec![BigRational::zero(); self.pres.dim(k)];
        for (i, c) in coords.iter().enumerate() {
            q[self.coords[k][i]] = c.clone();
        }
        self.pres.lift(k, &q)
    }

    pub fn basis_monomials(&self, k: usize) -> Vec<ChainMonomial> {
        let reps = self.pres.representatives(k);
        self.coords[k].iter().map(|&i| reps[i].clone()).collect()
    }

    fn lift_basis(&self, k: usize, i: usize) -> RingElement {
        self.pres.lift_basis(k, self.coords[k][i])
    }

    /// Product in A of elements given by coordinates.
    pub fn multiply(
        &self,
        k1: usize,
        x: &[BigRational],
        k2: usize,
        y: &[BigRational],
    ) -> Result<Vec<BigRational>, AnalysisError> {
        let prod = self.pres.ring().multiply(&self.lift(k1, x), &self.lift(k2, y))?;
        Ok(self.reduce(&prod))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairingEntry {
    pub k: usize,
    pub rows: usize,
    pub cols: usize,
    /// `None` when the top degree is not one-dimensional.
    pub rank: Option<usize>,
    pub full_rank: bool,
    /// Entries as exact rationals, only when the top degree is one-dimensional.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralPairing {
    /// Torsion coefficients of ℤ[S]/Θ per half-degree `0..=n+1`.
    pub quotient_torsion: Vec<Vec<String>>,
    /// Free ranks of ℤ[S]/Θ per half-degree.
    pub free_ranks: Vec<usize>,
    /// Free ranks of the integral quotient by the socle.
    pub ns_ranks: Vec<usize>,
    /// Determinant of each square pairing, when the top degree has rank one.
    pub determinants: Vec<Option<String>>,
    pub unimodular: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PdReport {
    pub top_dim: usize,
    pub pairings: Vec<PairingEntry>,
    pub poincare_duality: bool,
    pub diagnosis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<IntegralPairing>,
}

/// Pairings `A_{2k} × A_{2n-2k} → A_{2n}` over ℚ.
pub fn pairing_ranks(a: &NsQuotient<'_>) -> Result<PdReport, AnalysisError> {
    let n = a.n();
    let top_dim = a.dim(n);
    let mut pairings = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (rows, cols) = (a.dim(k), a.dim(n - k));
        if top_dim != 1 {
            pairings.push(PairingEntry { k, rows, cols, rank: None, full_rank: false, matrix: Vec::new() });
            continue;
        }
        let mut matrix = vec![vec![BigRational::zero(); cols]; rows];
        for (i, row) in matrix.iter_mut().enumerate() {
            let x = a.lift_basis(k, i);
            for (j, slot) in row.iter_mut().enumerate() {
                let y = a.lift_basis(n - k, j);
                let prod = a.pres.ring().multiply(&x, &y)?;
                *slot = a.reduce(&prod)[0].clone();
            }
        }
        let rank = if rows == 0 || cols == 0 { 0 } else { dense_rank(&matrix) };
        pairings.push(PairingEntry {
            k,
            rows,
            cols,
            rank: Some(rank),
            full_rank: rank == rows && rank == cols,
            matrix: matrix.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        });
    }
    let poincare_duality = top_dim == 1 && pairings.iter().all(|p| p.full_rank);
    let diagnosis = if top_dim != 1 {
        Some(format!("top degree {} has dimension {top_dim}, expected 1", 2 * n))
    } else if !poincare_duality {
        let bad: Vec<String> =
            pairings.iter().filter(|p| !p.full_rank).map(|p| format!("2·{}", p.k)).collect();
        Some(format!("degenerate pairing in degrees {}", bad.join(", ")))
    } else {
        None
    };
    Ok(PdReport { top_dim, pairings, poincare_duality, diagnosis, integral: None })
}

/// ℤ-forms of the quotient pieces: lattice quotients and free bases.
struct IntegralPiece {
    basis: Arc<GradedBasis>,
    quotient: LatticeQuotient,
    /// Quotient of the free part by the integral socle.
    ns: LatticeQuotient,
}

fn int_vector_of(basis: &GradedBasis, x: &RingElement) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); basis.len()];
    for (m, c) in x.terms() {
        assert!(c.is_integer(), "integral computation produced a fraction");
        out[basis.position(m).expect("matching degree")] = c.to_integer();
    }
    out
}

fn ring_element_of(k: usize, basis: &GradedBasis, v: &[BigInt]) -> RingElement {
    RingElement::from_terms(
        k,
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (basis.get(i).clone(), BigRational::from_integer(c.clone()))),
    )
}

/// Integral versions of the quotient, socle and pairing; requires integral λ.
pub fn integral_pairing(
    ring: &FaceRing,
    lambda: &CharacteristicFunction,
) -> Result<IntegralPairing, AnalysisError> {
    let s = ring.poset();
    let n = s.n();
    let cells: Vec<FaceId> = s.proper_cells().collect();

    // ℤ[S]/Θ per half-degree
    let quotients: Vec<(Arc<GradedBasis>, LatticeQuotient)> = (0..=n + 1)
        .into_par_iter()
        .map(|k| -> Result<_, AnalysisError> {
            let basis = ring.basis(k);
            let mut gens: Vec<Vec<(usize, BigInt)>> = Vec::new();
            if k > 0 {
                for j in 0..n {
                    for col in theta_multiplication_matrix(ring, lambda, j, k - 1)? {
                        gens.push(col.into_iter().map(|(i, c)| (i, c.to_integer())).collect());
                    }
                }
            }
            let m = IntMatrix::from_sparse_columns(basis.len(), &gens);
            Ok((basis, LatticeQuotient::new(&m)))
        })
        .collect::<Result<_, _>>()?;

    let free_lift = |k: usize, coords: &[BigInt]| -> Vec<BigInt> {
        let (basis, q) = &quotients[k];
        let mut v = vec![BigInt::zero(); basis.len()];
        for (t, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in v.iter_mut().zip(q.lift(t)) {
                *slot += c * x;
            }
        }
        v
    };

    // integral socle and quotient by it
    let mut pieces: Vec<IntegralPiece> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (basis, quotient) = (&quotients[k].0, &quotients[k].1);
        let f = quotient.free_rank();
        let kernel = if k > 0 && k < n {
            let targets: Vec<FaceId> = cells.iter().copied().filter(|&c| k + s.rank(c) <= n).collect();
            let mut rows_total = 0;
            let mut offsets = Vec::new();
            for &c in &targets {
                offsets.push(rows_total);
                rows_total += quotients[k + s.rank(c)].1.free_rank();
            }
            let mut m = IntMatrix::zeros(rows_total, f);
            for i in 0..f {
                let mut unit = vec![BigInt::zero(); f];
                unit[i] = BigInt::one();
                let x = ring_element_of(k, basis, &free_lift(k, &unit));
                for (&c, &off) in targets.iter().zip(&offsets) {
                    let prod = ring.multiply(&ring.generator(c), &x)?;
                    let t = k + s.rank(c);
                    let projected = quotients[t].1.project(&int_vector_of(&quotients[t].0, &prod));
                    for (r, val) in projected.into_iter().enumerate() {
                        m.set(off + r, i, val);
                    }
                }
            }
            integer_kernel(&m)
        } else {
            IntMatrix::zeros(f, 0)
        };
        pieces.push(IntegralPiece { basis: basis.clone(), quotient: quotient.clone(), ns: LatticeQuotient::new(&kernel) });
    }

    // A-basis element i in half-degree k, as an integer vector over monomials
    let a_lift = |k: usize, i: usize| -> Vec<BigInt> { free_lift(k, &pieces[k].ns.lift(i)) };
    let top_rank = pieces[n].ns.free_rank();
    let mut determinants = Vec::with_capacity(n + 1);
    let mut unimodular = top_rank == 1;
    for k in 0..=n {
        let (rows, cols) = (pieces[k].ns.free_rank(), pieces[n - k].ns.free_rank());
        if top_rank != 1 || rows != cols {
            determinants.push(None);
            unimodular = false;
            continue;
        }
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            let x = ring_element_of(k, &pieces[k].basis, &a_lift(k, i));
            for j in 0..cols {
                let y = ring_element_of(n - k, &pieces[n - k].basis, &a_lift(n - k, j));
                let prod = ring.multiply(&x, &y)?;
                let free = pieces[n].quotient.project(&int_vector_of(&pieces[n].basis, &prod));
                m.set(i, j, pieces[n].ns.project(&free)[0].clone());
            }
        }
        let det = integer_determinant(&m);
        if !det.abs().is_one() {
            unimodular = false;
        }
        determinants.push(Some(det.to_string()));
    }

    Ok(IntegralPairing {
        quotient_torsion: quotients
            .iter()
            .map(|(_, q)| q.torsion().iter().map(ToString::to_string).collect())
            .collect(),
        free_ranks: quotients.iter().map(|(_, q)| q.free_rank()).collect(),
        ns_ranks: pieces.iter().map(|p| p.ns.free_rank()).collect(),
        determinants,
        unimodular,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict { status: Status::Pass, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict { status: Status::Fail, detail: detail.into() }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Verdict { status: Status::Skipped, detail: detail.into() }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            Self::fail(detail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Classification properties followed by theorem-level checks.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    pub poset: Verdict,
    pub pure: Verdict,
    pub buchsbaum: Verdict,
    pub manifold: Verdict,
    pub orientable: Verdict,
    pub schenzel: Verdict,
    pub nonnegativity: Verdict,
    pub ns_dimensions: Verdict,
    pub dehn_sommerville: Verdict,
    pub poincare_duality: Verdict,
}

impl Verdicts {
    /// Theorem-level checks, which decide the exit status of an analysis.
    pub fn theorem_checks(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("schenzel", &self.schenzel),
            ("nonnegativity", &self.nonnegativity),
            ("nsDimensions", &self.ns_dimensions),
            ("dehnSommerville", &self.dehn_sommerville),
            ("poincareDuality", &self.poincare_duality),
        ]
    }

    pub fn all(&self) -> [(&'static str, &Verdict); 10] {
        [
            ("poset", &self.poset),
            ("pure", &self.pure),
            ("buchsbaum", &self.buchsbaum),
            ("manifold", &self.manifold),
            ("orientable", &self.orientable),
            ("schenzel", &self.schenzel),
            ("nonnegativity", &self.nonnegativity),
            ("nsDimensions", &self.ns_dimensions),
            ("dehnSommerville", &self.dehn_sommerville),
            ("poincareDuality", &self.poincare_duality),
        ]
    }

    pub fn any_theorem_failed(&self) -> bool {
        self.theorem_checks().iter().any(|(_, v)| v.status == Status::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LambdaSource {
    User,
    Search,
    /// ℤ search failed; a ℚ-valued λ was used instead.
    SearchRationalFallback,
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub ring: GroundRing,
    pub seed: u64,
    pub lambda: Option<CharacteristicFunction>,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub ring: GroundRing,
    pub seed: u64,
    pub n: usize,
    pub vertex_count: usize,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology_torsion: Option<Vec<Vec<String>>>,
    pub h_prime: Vec<i64>,
    pub h_double_prime: Vec<i64>,
    pub lambda: LambdaDocument,
    pub lambda_source: LambdaSource,
    pub quotient_dims: Vec<usize>,
    pub socle_dims: Vec<usize>,
    pub polynomial_socle_dims: Vec<usize>,
    pub socle_discrepancy: bool,
    pub socle_representatives: Vec<Vec<String>>,
    pub ns_quotient_dims: Vec<usize>,
    pub pairing: PdReport,
    pub buchsbaum: BuchsbaumReport,
    pub manifold: ManifoldReport,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn seq<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// Every invariant and verdict for one poset.
pub fn full_report(s: Arc<SimplicialPoset>, options: &ReportOptions) -> Result<AnalysisReport, AnalysisError> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64());
        clock = Instant::now();
    };
    let ring_kind = options.ring;
    let n = s.n();
    let mut notes = Vec::new();

    // combinatorics and topology
    let f = s.f_vector();
    let h = h_vector(&f, n);
    let sd = s.barycentric_subdivision();
    let betti_full: BettiVector = poset_betti(&sd, n, ring_kind);
    let duals = dual_face_homology(&s, &sd, ring_kind);
    let buchsbaum = buchsbaum_from_duals(&s, &duals);
    let manifold = manifold_from_duals(&s, &betti_full, &duals);
    let betti = betti_full.betti.clone();
    let hp = h_prime(&h, &betti, n);
    let hpp = h_double_prime(&hp, &betti, n);
    lap("topology", &mut timings);

    // characteristic function
    let (lambda, lambda_source) = match &options.lambda {
        Some(l) => {
            l.validate(&s)?;
            (l.clone(), LambdaSource::User)
        }
        None => match find_characteristic_function(&s, ring_kind, options.seed) {
            Ok(l) => (l, LambdaSource::Search),
            Err(e @ FaceRingError::SearchExhausted { .. }) if ring_kind == GroundRing::Integer => {
                notes.push(format!("{e}; falling back to a rational characteristic function"));
                let l = find_characteristic_function(&s, GroundRing::Rational, options.seed)?;
                (l, LambdaSource::SearchRationalFallback)
            }
            Err(e) => return Err(e.into()),
        },
    };
    lap("lambda", &mut timings);

    // rings
    let ring = Arc::new(FaceRing::new(s.clone()));
    let pres = QuotientPresentation::build(ring.clone(), &lambda)?;
    let quotient_dims = pres.dims();
    lap("quotient", &mut timings);
    let socle = interior_socle(&pres)?;
    let socle_dims = socle.dims();
    let socle_representatives: Vec<Vec<String>> = socle
        .ring_socle
        .iter()
        .enumerate()
        .map(|(i, vs)| vs.iter().map(|v| pres.lift(i + 1, v).display(&s)).collect())
        .collect();
    let a = NsQuotient::new(&pres, &socle);
    let ns_dims = a.dims();
    let mut pairing = pairing_ranks(&a)?;
    lap("socle_and_pairing", &mut timings);

    let integral_ready = ring_kind == GroundRing::Integer && lambda.ring() == GroundRing::Integer;
    if integral_ready {
        pairing.integral = Some(integral_pairing(&ring, &lambda)?);
        lap("integral", &mut timings);
    }
    if ring_kind == GroundRing::Integer {
        let quotient_torsion = pairing.integral.as_ref().is_some_and(|i| i.quotient_torsion.iter().any(|t| !t.is_empty()));
        if betti_full.has_torsion() || duals.iter().any(|d| d.homology.has_torsion()) || quotient_torsion {
            notes.push("torsion present, ℚ verdict used".into());
        }
    }

    // verdicts
    let connected = manifold.connected;
    let closed = manifold.closed_homology_manifold;
    let orientable = manifold.orientable == Some(true);
    let om = connected && closed && orientable;
    let hypothesis_failure = || -> String {
        if !closed {
            "not a closed homology manifold".into()
        } else if !connected {
            "not connected".into()
        } else {
            "not orientable".into()
        }
    };

    let buchsbaum_v = if buchsbaum.buchsbaum {
        Verdict::pass("every dual face has homology only in its top degree")
    } else {
        let faces: Vec<&str> = buchsbaum.defects.iter().map(|d| d.face.as_str()).collect();
        Verdict::fail(format!("off-top relative homology at {}", faces.join(", ")))
    };
    let manifold_v = Verdict::check(
        connected && closed,
        if connected && closed {
            "connected closed homology manifold (dual-cell criterion)".to_string()
        } else if !closed {
            format!("dual faces that are not homology cells: {}", manifold.non_cell_faces.join(", "))
        } else {
            "not connected".to_string()
        },
    );
    let orientable_v = match manifold.orientable {
        Some(true) => Verdict::pass(format!("H_{}(S) is the ground ring", n - 1)),
        Some(false) => Verdict::fail(format!("H_{}(S) is not the ground ring", n - 1)),
        None => Verdict::skipped("not a closed homology manifold"),
    };

    let schenzel = if buchsbaum.buchsbaum {
        let matches = quotient_dims[..=n].iter().zip(&hp).all(|(&d, &e)| d as i64 == e);
        Verdict::check(
            matches && quotient_dims[n + 1] == 0,
            format!("quotient dims {} vs h' {}", seq(&quotient_dims[..=n]), seq(&hp)),
        )
    } else {
        Verdict::skipped("hypothesis failed: not Buchsbaum")
    };
    let nonnegativity = if buchsbaum.buchsbaum {
        Verdict::check(hpp.iter().all(|&x| x >= 0), format!("h'' = {}", seq(&hpp)))
    } else {
        Verdict::skipped("hypothesis failed: not Buchsbaum")
    };
    let expected_socle: Vec<i64> = (1..n).map(|k| binomial(n, k) * betti[k - 1] as i64).collect();
    let ns_dimensions = if om {
        let socle_ok = socle_dims.iter().zip(&expected_socle).all(|(&d, &e)| d as i64 == e);
        let quotient_ok = ns_dims.iter().zip(&hpp).all(|(&d, &e)| d as i64 == e);
        Verdict::check(
            socle_ok && quotient_ok,
            format!(
                "socle dims {} vs C(n,k)·b{} {}; quotient dims {} vs h'' {}",
                seq(&socle_dims),
                "(k-1)",
                seq(&expected_socle),
                seq(&ns_dims),
                seq(&hpp)
            ),
        )
    } else {
        Verdict::skipped(format!("hypothesis failed: {}", hypothesis_failure()))
    };
    let symmetric = (0..=n).all(|k| hpp[k] == hpp[n - k]);
    let dehn_sommerville = if om {
        Verdict::check(symmetric, format!("h'' = {}", seq(&hpp)))
    } else {
        Verdict::skipped(format!(
            "hypothesis failed: {}, h'' {} {}",
            hypothesis_failure(),
            if symmetric { "symmetric" } else { "asymmetric" },
            seq(&hpp)
        ))
    };
    let poincare_duality = if om {
        let ranks: Vec<String> =
            pairing.pairings.iter().map(|p| p.rank.map_or("-".into(), |r| r.to_string())).collect();
        let mut ok = pairing.poincare_duality;
        let mut detail = format!("top dimension {}, pairing ranks ({})", pairing.top_dim, ranks.join(","));
        if let Some(d) = &pairing.diagnosis {
            detail.push_str(&format!("; {d}"));
        }
        if let Some(int) = &pairing.integral {
            let dets: Vec<String> = int.determinants.iter().map(|d| d.clone().unwrap_or("-".into())).collect();
            detail.push_str(&format!("; integral determinants ({})", dets.join(",")));
            let torsion_free = int.quotient_torsion.iter().all(Vec::is_empty);
            if torsion_free {
                ok &= int.unimodular;
            }
        }
        Verdict::check(ok, detail)
    } else {
        let mut detail = format!(
            "hypothesis failed: {}; top dimension {}, h'' {} {}",
            hypothesis_failure(),
            pairing.top_dim,
            if symmetric { "symmetric" } else { "asymmetric" },
            seq(&hpp)
        );
        if let Some(d) = &pairing.diagnosis {
            detail.push_str(&format!("; {d}"));
        }
        Verdict::skipped(detail)
    };
    if let Some(d) = pairing.diagnosis.as_mut() {
        if !om {
            d.push_str(&format!(" ({})", hypothesis_failure()));
        }
    }
    if socle.discrepancy() {
        notes.push(format!(
            "ring socle dims {} differ from polynomial socle dims {}",
            seq(&socle_dims),
            seq(&socle.polynomial_socle_dims)
        ));
    }

    let verdicts = Verdicts {
        poset: Verdict::pass(format!("simplicial poset with n = {n}, m = {}", s.vertex_count())),
        pure: Verdict::pass(format!("all {} facets have rank {n}", s.facets().len())),
        buchsbaum: buchsbaum_v,
        manifold: manifold_v,
        orientable: orientable_v,
        schenzel,
        nonnegativity,
        ns_dimensions,
        dehn_sommerville,
        poincare_duality,
    };
    lap("verdicts", &mut timings);

    Ok(AnalysisReport {
        ring: ring_kind,
        seed: options.seed,
        n,
        vertex_count: s.vertex_count(),
        f_vector: f.0.clone(),
        h_vector: h,
        betti,
        homology_torsion: (ring_kind == GroundRing::Integer)
            .then(|| betti_full.torsion.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect()),
        h_prime: hp,
        h_double_prime: hpp,
        lambda: lambda.to_document(&s),
        lambda_source,
        quotient_dims,
        socle_dims,
        polynomial_socle_dims: socle.polynomial_socle_dims.clone(),
        socle_discrepancy: socle.discrepancy(),
        socle_representatives,
        ns_quotient_dims: ns_dims,
        pairing,
        buchsbaum,
        manifold,
        verdicts,
        notes,
        timings: options.timings.then_some(timings),
    })
}

/// dim (𝕜[S]/Θ)_{2k} for k = 0..=n+1.
pub fn quotient_dimensions(s: Arc<SimplicialPoset>, lambda: &CharacteristicFunction) -> Result<Vec<usize>, AnalysisError> {
    let ring = Arc::new(FaceRing::new(s));
    Ok(QuotientPresentation::build(ring, lambda)?.dims())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_prime_and_double_prime_formulas() {
        let hp = h_prime(&[1, 4, 10, -1], &[0, 2, 1], 3);
        assert_eq!(hp, vec![1, 4, 10, 1]);
        assert_eq!(h_double_prime(&hp, &[0, 2, 1], 3), vec![1, 4, 4, 1]);
        let hp = h_prime(&[1, 3, 6, 0], &[0, 0, 0], 3);
        assert_eq!(hp, vec![1, 3, 6, 0]);
        assert_eq!(h_double_prime(&hp, &[0, 0, 0], 3), vec![1, 3, 6, 0]);
        assert_eq!(h_prime(&[1, 1, 1, 1], &[0, 0, 1], 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(10, 5), 252);
    }
}
