//! The face ring 𝕜[S] of a simplicial poset on its chain-monomial basis.
//!
//! A basis element is a product `v_{I₁}^{a₁}⋯v_{I_r}^{a_r}` along a strict
//! chain `I₁ < ⋯ < I_r` of proper cells. Products of arbitrary monomials are
//! brought back to this basis by straightening: an incomparable pair of factors
//! `v_A v_B` is replaced by `v_{A∧B} Σ_{J ∈ A∨B} v_J` until every factor lies on
//! one chain. Each rewrite keeps the total rank and strictly increases the sum
//! of squared ranks, so the process terminates.
//!
//! Generator `v_I` has degree `2|I|`. Internally graded pieces are indexed by
//! the half-degree `k` (the piece of degree `2k`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    integer_determinant, qvec_from_pairs, rational_determinant, smith_normal_form, IntMatrix, QVec,
};
use crate::poset::{FaceId, MeetJoin, PosetError, SimplicialPoset};
use crate::GroundRing;

/// Default bound on rewrite steps for one product.
pub const DEFAULT_FUEL: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceRingError {
    #[error("straightening exceeded {0} rewrite steps")]
    FuelExhausted(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("invalid characteristic function: {0}")]
    InvalidCharacteristicFunction(String),
    #[error("no characteristic function over {ring} found after {attempts} attempts")]
    SearchExhausted { ring: GroundRing, attempts: usize },
    #[error("malformed characteristic function document: {0}")]
    Parse(String),
}

/// A basis monomial: the multiset of its factors, sorted along the chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChainMonomial(Vec<FaceId>);

impl ChainMonomial {
    pub fn unit() -> Self {
        ChainMonomial(Vec::new())
    }

    pub fn generator(face: FaceId) -> Self {
        if face == FaceId::BOTTOM {
            Self::unit()
        } else {
            ChainMonomial(vec![face])
        }
    }

    /// Factors with repetition, in chain order.
    pub fn cells(&self) -> &[FaceId] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// `(cell, exponent)` pairs along the chain.
    pub fn factors(&self) -> Vec<(FaceId, u32)> {
        let mut out: Vec<(FaceId, u32)> = Vec::new();
        for &c in &self.0 {
            match out.last_mut() {
                Some((last, e)) if *last == c => *e += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    /// Half-degree Σ aᵢ|Iᵢ|.
    pub fn weight(&self, s: &SimplicialPoset) -> usize {
        self.0.iter().map(|&c| s.rank(c)).sum()
    }

    pub fn display<'a>(&'a self, s: &'a SimplicialPoset) -> MonomialDisplay<'a> {
        MonomialDisplay { monomial: self, poset: s }
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a ChainMonomial,
    poset: &'a SimplicialPoset,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_unit() {
            return write!(f, "1");
        }
        for (i, (c, e)) in self.monomial.factors().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "v[{}]", self.poset.id(c))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer combination of basis monomials, sorted by monomial.
pub type Straightened = Vec<(ChainMonomial, BigInt)>;

/// Rewrites products of generators into the chain basis, with memoisation.
pub struct Straightener {
    poset: Arc<SimplicialPoset>,
    memo: RwLock<HashMap<Vec<FaceId>, Arc<Straightened>>>,
    meet_joins: RwLock<HashMap<(FaceId, FaceId), Arc<MeetJoin>>>,
    fuel: usize,
}

impl Straightener {
    pub fn new(poset: Arc<SimplicialPoset>, fuel: usize) -> Self {
        Straightener {
            poset,
            memo: RwLock::new(HashMap::new()),
            meet_joins: RwLock::new(HashMap::new()),
            fuel,
        }
    }

    fn meet_join(&self, a: FaceId, b: FaceId) -> Result<Arc<MeetJoin>, FaceRingError> {
        if let Some(mj) = self.meet_joins.read().expect("poisoned").get(&(a, b)) {
            return Ok(mj.clone());
        }
        let mj = Arc::new(self.poset.meet_join(a, b)?);
        self.meet_joins.write().expect("poisoned").entry((a, b)).or_insert(mj.clone());
        Ok(mj)
    }

    /// Product of the generators `v_c` for `c` in `cells` (any order, repeats allowed).
    pub fn straighten(&self, cells: &[FaceId]) -> Result<Arc<Straightened>, FaceRingError> {
        let mut key: Vec<FaceId> = cells.iter().copied().filter(|&c| c != FaceId::BOTTOM).collect();
        key.sort_unstable();
        let mut steps = 0;
        self.straighten_sorted(key, &mut steps)
    }

    fn straighten_sorted(&self, key: Vec<FaceId>, steps: &mut usize) -> Result<Arc<Straightened>, FaceRingError> {
        if let Some(hit) = self.memo.read().expect("poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let result = match self.first_incomparable(&key) {
            None => Arc::new(vec![(ChainMonomial(key.clone()), BigInt::one())]),
            Some((i, j)) => {
                *steps += 1;
                if *steps > self.fuel {
                    return Err(FaceRingError::FuelExhausted(self.fuel));
                }
                let (a, b) = (key[i], key[j]);
                let mj = self.meet_join(a, b)?;
                let mut acc: BTreeMap<ChainMonomial, BigInt> = BTreeMap::new();
                if !mj.joins.is_empty() {
                    let meet = mj.meet.expect("meet defined when joins exist");
                    let mut rest: Vec<FaceId> = key.clone();
                    rest.remove(j);
                    rest.remove(i);
                    if meet != FaceId::BOTTOM {
                        rest.push(meet);
                    }
                    for &join in &mj.joins {
                        let mut next = rest.clone();
                        next.push(join);
                        next.sort_unstable();
                        for (m, c) in self.straighten_sorted(next, steps)?.iter() {
                            *acc.entry(m.clone()).or_insert_with(BigInt::zero) += c;
                        }
                    }
                }
                Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            }
        };
        self.memo.write().expect("poisoned").entry(key).or_insert(result.clone());
        Ok(result)
    }

    /// Lexicographically least pair of positions holding incomparable cells.
    fn first_incomparable(&self, key: &[FaceId]) -> Option<(usize, usize)> {
        for i in 0..key.len() {
            if i > 0 && key[i] == key[i - 1] {
                continue;
            }
            for j in i + 1..key.len() {
                if key[j] == key[j - 1] && j > i + 1 {
                    continue;
                }
                if !self.poset.le(key[i], key[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Homogeneous element of 𝕜[S] with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    weight: usize,
    terms: BTreeMap<ChainMonomial, BigRational>,
}

impl RingElement {
    pub fn zero(weight: usize) -> Self {
        RingElement { weight, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(ChainMonomial::unit(), 0, BigRational::one())
    }

    pub fn monomial(m: ChainMonomial, weight: usize, coeff: BigRational) -> Self {
        let mut e = Self::zero(weight);
        e.add_term(m, coeff);
        e
    }

    pub fn from_terms(
        weight: usize,
        terms: impl IntoIterator<Item = (ChainMonomial, BigRational)>,
    ) -> Self {
        let mut e = Self::zero(weight);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: ChainMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Half-degree: this element lives in degree `2 * weight()`.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn degree(&self) -> usize {
        2 * self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChainMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ChainMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.weight, other.weight, "adding elements of different degrees");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> RingElement {
        RingElement::from_terms(self.weight, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn display<'a>(&'a self, s: &'a SimplicialPoset) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono = m.display(s).to_string();
                if c.is_one() {
                    mono
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Monomials of one graded piece with their positions.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    monomials: Vec<ChainMonomial>,
    index: HashMap<ChainMonomial, usize>,
}

impl GradedBasis {
    fn new(monomials: Vec<ChainMonomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        GradedBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ChainMonomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &ChainMonomial {
        &self.monomials[i]
    }

    pub fn position(&self, m: &ChainMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a ring element of this degree.
    pub fn coordinates(&self, x: &RingElement) -> QVec {
        qvec_from_pairs(x.terms().map(|(m, c)| {
            (self.position(m).expect("monomial of matching degree"), c.clone())
        }))
    }

    pub fn element(&self, weight: usize, v: &QVec) -> RingElement {
        RingElement::from_terms(weight, v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }
}

/// All chain monomials of half-degree `weight`, in canonical order.
pub fn enumerate_basis(s: &SimplicialPoset, weight: usize) -> Vec<ChainMonomial> {
    fn extend(
        s: &SimplicialPoset,
        prefix: &mut Vec<FaceId>,
        last: Option<FaceId>,
        remaining: usize,
        out: &mut Vec<ChainMonomial>,
    ) {
        if remaining == 0 {
            out.push(ChainMonomial(prefix.clone()));
            return;
        }
        let candidates: Vec<FaceId> = match last {
            None => s.proper_cells().collect(),
            Some(l) => s.above(l).iter().copied().filter(|&c| c != l).collect(),
        };
        for c in candidates {
            let r = s.rank(c);
            let mut e = 1;
            while e * r <= remaining {
                prefix.extend(std::iter::repeat_n(c, e));
                extend(s, prefix, Some(c), remaining - e * r, out);
                prefix.truncate(prefix.len() - e);
                e += 1;
            }
        }
    }
    let mut out = Vec::new();
    extend(s, &mut Vec::new(), None, weight, &mut out);
    out.sort();
    out
}

/// 𝕜[S] with cached graded bases and a shared straightening memo.
pub struct FaceRing {
    poset: Arc<SimplicialPoset>,
    straightener: Straightener,
    bases: Mutex<HashMap<usize, Arc<GradedBasis>>>,
}

impl FaceRing {
    pub fn new(poset: Arc<SimplicialPoset>) -> Self {
        Self::with_fuel(poset, DEFAULT_FUEL)
    }

    pub fn with_fuel(poset: Arc<SimplicialPoset>, fuel: usize) -> Self {
        FaceRing {
            straightener: Straightener::new(poset.clone(), fuel),
            poset,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn poset(&self) -> &SimplicialPoset {
        &self.poset
    }

    pub fn basis(&self, weight: usize) -> Arc<GradedBasis> {
        let mut cache = self.bases.lock().expect("poisoned");
        cache
            .entry(weight)
            .or_insert_with(|| Arc::new(GradedBasis::new(enumerate_basis(&self.poset, weight))))
            .clone()
    }

    pub fn generator(&self, face: FaceId) -> RingElement {
        RingElement::monomial(ChainMonomial::generator(face), self.poset.rank(face), BigRational::one())
    }

    /// Product of two basis monomials, with integer coefficients.
    pub fn multiply_monomials(&self, a: &ChainMonomial, b: &ChainMonomial) -> Result<Arc<Straightened>, FaceRingError> {
        let mut cells = a.cells().to_vec();
        cells.extend_from_slice(b.cells());
        self.straightener.straighten(&cells)
    }

    /// `v_I · mu` in the chain basis.
    pub fn multiply_generator(&self, face: FaceId, mu: &ChainMonomial) -> Result<RingElement, FaceRingError> {
        let weight = self.poset.rank(face) + mu.weight(&self.poset);
        let prod = self.multiply_monomials(&ChainMonomial::generator(face), mu)?;
        Ok(RingElement::from_terms(
            weight,
            prod.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        ))
    }

    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, FaceRingError> {
        let mut out = RingElement::zero(x.weight() + y.weight());
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let c = cx * cy;
                for (m, k) in self.multiply_monomials(mx, my)?.iter() {
                    out.add_term(m.clone(), &c * BigRational::from_integer(k.clone()));
                }
            }
        }
        Ok(out)
    }
}

/// Vertex-indexed vectors in 𝕜ⁿ whose restriction to every facet is a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFunction {
    ring: GroundRing,
    /// `values[i]` is λ of vertex `i` (label order).
    values: Vec<Vec<BigRational>>,
}

impl CharacteristicFunction {
    pub fn new(ring: GroundRing, values: Vec<Vec<BigRational>>) -> Self {
        CharacteristicFunction { ring, values }
    }

    pub fn from_integers(ring: GroundRing, values: &[Vec<i64>]) -> Self {
        let values = values
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        CharacteristicFunction { ring, values }
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn with_ring(mut self, ring: GroundRing) -> Self {
        self.ring = ring;
        self
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn value(&self, vertex: usize, coordinate: usize) -> &BigRational {
        &self.values[vertex][coordinate]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().flatten().all(|x| x.is_integer())
    }

    /// Checks shape and facet invertibility (unimodularity over ℤ).
    pub fn validate(&self, s: &SimplicialPoset) -> Result<(), FaceRingError> {
        let n = s.n();
        if self.values.len() != s.vertex_count() {
            return Err(FaceRingError::InvalidCharacteristicFunction(format!(
                "{} vectors given for {} vertices",
                self.values.len(),
                s.vertex_count()
            )));
        }
        if let Some((i, row)) = self.values.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(FaceRingError::InvalidCharacteristicFunction(format!(
                "vertex `{}` has {} coordinates, expected {n}",
                s.id(s.vertex(i)),
                row.len()
            )));
        }
        if self.ring == GroundRing::Integer && !self.is_integral() {
            return Err(FaceRingError::InvalidCharacteristicFunction(
                "non-integer entries over ℤ".into(),
            ));
        }
        for &facet in s.facets() {
            let rows: Vec<Vec<BigRational>> =
                s.vertex_set(facet).iter().map(|&v| self.values[v].clone()).collect();
            let det = rational_determinant(&rows);
            let ok = match self.ring {
                GroundRing::Rational => !det.is_zero(),
                GroundRing::Integer => det.abs().is_one(),
            };
            if !ok {
                return Err(FaceRingError::InvalidCharacteristicFunction(format!(
                    "facet `{}` has determinant {det}",
                    s.id(facet)
                )));
            }
        }
        Ok(())
    }

    /// Serializable form: vertex label → list of exact rationals.
    pub fn to_document(&self, s: &SimplicialPoset) -> LambdaDocument {
        LambdaDocument(
            s.vertex_labels()
                .into_iter()
                .zip(&self.values)
                .map(|(label, row)| (label, row.iter().map(ExactNumber::from_rational).collect()))
                .collect(),
        )
    }

    pub fn from_document(doc: &LambdaDocument, s: &SimplicialPoset, ring: GroundRing) -> Result<Self, FaceRingError> {
        let mut values = Vec::with_capacity(s.vertex_count());
        for label in s.vertex_labels() {
            let row = doc
                .0
                .get(&label)
                .ok_or_else(|| FaceRingError::Parse(format!("no value for vertex `{label}`")))?;
            values.push(row.iter().map(ExactNumber::to_rational).collect::<Result<Vec<_>, _>>()?);
        }
        if let Some(extra) = doc.0.keys().find(|k| s.find(k).is_none_or(|f| s.rank(f) != 1)) {
            return Err(FaceRingError::Parse(format!("`{extra}` is not a vertex")));
        }
        let lambda = CharacteristicFunction { ring, values };
        lambda.validate(s)?;
        Ok(lambda)
    }
}

/// An exact rational as it appears in documents: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactNumber {
    Int(i64),
    Text(String),
}

impl ExactNumber {
    pub fn from_rational(x: &BigRational) -> Self {
        if x.is_integer() {
            if let Ok(v) = i64::try_from(x.to_integer()) {
                return ExactNumber::Int(v);
            }
        }
        ExactNumber::Text(x.to_string())
    }

    pub fn to_rational(&self) -> Result<BigRational, FaceRingError> {
        match self {
            ExactNumber::Int(v) => Ok(BigRational::from_integer((*v).into())),
            ExactNumber::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, FaceRingError> {
    let bad = || FaceRingError::Parse(format!("`{s}` is not an exact rational"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaDocument(pub BTreeMap<String, Vec<ExactNumber>>);

/// Randomized search for a characteristic function, deterministic in `seed`.
///
/// Entries are drawn uniformly from `{-B, …, B}` with `B` doubling from 3;
/// each bound gets 64 attempts over ℚ and 512 over ℤ. Over ℤ a bounded
/// backtracking search follows when sampling fails.
pub fn find_characteristic_function(
    s: &SimplicialPoset,
    ring: GroundRing,
    seed: u64,
) -> Result<CharacteristicFunction, FaceRingError> {
    const BOUNDS: [i64; 4] = [3, 6, 12, 24];
    let per_bound = match ring {
        GroundRing::Rational => 64,
        GroundRing::Integer => 512,
    };
    let (m, n) = (s.vertex_count(), s.n());
    let facets: Vec<&[usize]> = s.facets().iter().map(|&f| s.vertex_set(f)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    for bound in BOUNDS {
        for _ in 0..per_bound {
            attempts += 1;
            let values: Vec<Vec<i64>> =
                (0..m).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let ok = facets.iter().all(|vs| {
                let rows: Vec<Vec<i64>> = vs.iter().map(|&v| values[v].clone()).collect();
                let det = integer_determinant(&IntMatrix::from_rows(&rows));
                match ring {
                    GroundRing::Rational => !det.is_zero(),
                    GroundRing::Integer => det.abs().is_one(),
                }
            });
            if ok {
                return Ok(CharacteristicFunction::from_integers(ring, &values));
            }
        }
    }
    if ring == GroundRing::Integer {
        if let Some(values) = unimodular_backtrack(s, &mut rng, &mut attempts) {
            return Ok(CharacteristicFunction::from_integers(ring, &values));
        }
    }
    Err(FaceRingError::SearchExhausted { ring, attempts })
}

/// Node budget of the integral backtracking stage.
const BACKTRACK_BUDGET: usize = 200_000;

/// Depth-first search over vectors with entries in {-1,0,1}, one vertex at a
/// time, pruning as soon as the assigned rows of some facet fail to extend to
/// a basis of ℤⁿ (some invariant factor other than 1). Candidate order is
/// shuffled per vertex by `rng`, so the result still depends only on the seed.
fn unimodular_backtrack(s: &SimplicialPoset, rng: &mut ChaCha8Rng, nodes: &mut usize) -> Option<Vec<Vec<i64>>> {
    let (m, n) = (s.vertex_count(), s.n());
    let candidates: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let digit = (code % 3) as i64 - 1;
                    code /= 3;
                    digit
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    let mut facets_of: Vec<Vec<&[usize]>> = vec![Vec::new(); m];
    for &f in s.facets() {
        for &v in s.vertex_set(f) {
            facets_of[v].push(s.vertex_set(f));
        }
    }
    let orders: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let mut idx: Vec<usize> = (0..candidates.len()).collect();
            for i in (1..idx.len()).rev() {
                idx.swap(i, rng.gen_range(0..=i));
            }
            idx
        })
        .collect();
    let extendable = |values: &[Vec<i64>], vertex: usize| {
        facets_of[vertex].iter().all(|vs| {
            let rows: Vec<Vec<i64>> = vs.iter().filter(|&&v| v <= vertex).map(|&v| values[v].clone()).collect();
            let snf = smith_normal_form(&IntMatrix::from_rows(&rows), false);
            snf.rank() == rows.len() && snf.diagonal.iter().all(One::is_one)
        })
    };
    let mut values: Vec<Vec<i64>> = Vec::with_capacity(m);
    let mut cursor = vec![0usize; m];
    let mut vertex = 0;
    while vertex < m {
        if cursor[vertex] == candidates.len() {
            cursor[vertex] = 0;
            if vertex == 0 {
                return None;
            }
            vertex -= 1;
            values.pop();
            continue;
        }
        *nodes += 1;
        if *nodes > BACKTRACK_BUDGET {
            return None;
        }
        values.push(candidates[orders[vertex][cursor[vertex]]].clone());
        cursor[vertex] += 1;
        if extendable(&values, vertex) {
            vertex += 1;
        } else {
            values.pop();
        }
    }
    Some(values)
}

/// θ_j = Σ_i λ_{i,j} v_i for j = 1..n.
pub fn theta_system(ring: &FaceRing, lambda: &CharacteristicFunction) -> Vec<RingElement> {
    let s = ring.poset();
    (0..s.n())
        .map(|j| {
            RingElement::from_terms(
                1,
                (0..s.vertex_count())
                    .map(|i| (ChainMonomial::generator(s.vertex(i)), lambda.value(i, j).clone())),
            )
        })
        .collect()
}

/// Columns (sparse, over `basis(weight + 1)`) of multiplication by θ_j on `basis(weight)`.
pub fn theta_multiplication_matrix(
    ring: &FaceRing,
    lambda: &CharacteristicFunction,
    j: usize,
    weight: usize,
) -> Result<Vec<QVec>, FaceRingError> {
    let s = ring.poset();
    let source = ring.basis(weight);
    let target = ring.basis(weight + 1);
    source
        .monomials()
        .iter()
        .map(|mu| {
            let mut pairs = Vec::new();
            for i in 0..s.vertex_count() {
                let c = lambda.value(i, j);
                if c.is_zero() {
                    continue;
                }
                for (m, k) in ring.multiply_monomials(&ChainMonomial::generator(s.vertex(i)), mu)?.iter() {
                    let pos = target.position(m).expect("product lands in the next degree");
                    pairs.push((pos, c * BigRational::from_integer(k.clone())));
                }
            }
            Ok(qvec_from_pairs(pairs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::CellRecord;

    fn circle() -> Arc<SimplicialPoset> {
        let rec = |id: &str| CellRecord { id: id.into(), rank: 2, facets: vec!["u".into(), "v".into()] };
        Arc::new(SimplicialPoset::from_cells(&[rec("a"), rec("b")]).unwrap())
    }

    fn complex(rows: &[&[u32]]) -> Arc<SimplicialPoset> {
        let f: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        Arc::new(SimplicialPoset::from_facets(&f).unwrap())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn circle_bases() {
        let s = circle();
        assert_eq!(enumerate_basis(&s, 0), vec![ChainMonomial::unit()]);
        assert_eq!(enumerate_basis(&s, 1).len(), 2);
        let b2: Vec<String> = enumerate_basis(&s, 2).iter().map(|m| m.display(&s).to_string()).collect();
        assert_eq!(b2, vec!["v[u]^2", "v[v]^2", "v[a]", "v[b]"]);
        assert_eq!(enumerate_basis(&s, 3).len(), 6);
    }

    #[test]
    fn product_of_the_two_circle_vertices() {
        let s = circle();
        let ring = FaceRing::new(s.clone());
        let u = s.find("u").unwrap();
        let v = s.find("v").unwrap();
        let p = ring.multiply_generator(u, &ChainMonomial::generator(v)).unwrap();
        assert_eq!(p.display(&s), "v[a] + v[b]");
        let a = s.find("a").unwrap();
        let b = s.find("b").unwrap();
        assert!(ring.multiply(&ring.generator(a), &ring.generator(b)).unwrap().is_zero());
        let sq = ring.multiply(&ring.generator(a), &ring.generator(a)).unwrap();
        assert_eq!(sq.display(&s), "v[a]^2");
    }

    #[test]
    fn square_of_vertex_sum_on_circle() {
        let s = circle();
        let ring = FaceRing::new(s.clone());
        let x = ring.generator(s.find("u").unwrap()).add(&ring.generator(s.find("v").unwrap()));
        let sq = ring.multiply(&x, &x).unwrap();
        assert_eq!(sq.display(&s), "v[u]^2 + v[v]^2 + 2*v[a] + 2*v[b]");
        assert_eq!(sq.degree(), 4);
    }

    #[test]
    fn antipodal_octahedron_vertices_multiply_to_zero() {
        let s = complex(&[
            &[1, 2, 3], &[1, 2, 6], &[1, 5, 3], &[1, 5, 6],
            &[4, 2, 3], &[4, 2, 6], &[4, 5, 3], &[4, 5, 6],
        ]);
        let ring = FaceRing::new(s.clone());
        let p = ring
            .multiply(&ring.generator(s.find("1").unwrap()), &ring.generator(s.find("4").unwrap()))
            .unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn stanley_reisner_rule_on_tetrahedron_boundary() {
        let s = complex(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let ring = FaceRing::new(s.clone());
        let e12 = s.find("1,2").unwrap();
        let e23 = s.find("2,3").unwrap();
        let e34 = s.find("3,4").unwrap();
        // v_12 v_23 = v_2 v_123
        let p = ring.multiply(&ring.generator(e12), &ring.generator(e23)).unwrap();
        assert_eq!(p.display(&s), "v[2]*v[1,2,3]");
        // 1234 is not a face
        let p = ring.multiply(&ring.generator(e12), &ring.generator(e34)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn fuel_bound_is_enforced() {
        let s = circle();
        let ring = FaceRing::with_fuel(s.clone(), 0);
        let u = s.find("u").unwrap();
        let v = s.find("v").unwrap();
        assert_eq!(
            ring.multiply_generator(u, &ChainMonomial::generator(v)),
            Err(FaceRingError::FuelExhausted(0))
        );
    }

    #[test]
    fn characteristic_functions() {
        let tri = complex(&[&[1, 2], &[2, 3], &[1, 3]]);
        let lambda = CharacteristicFunction::from_integers(GroundRing::Integer, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        lambda.validate(&tri).unwrap();
        let constant = CharacteristicFunction::from_integers(GroundRing::Rational, &[vec![1, 1], vec![1, 1], vec![1, 1]]);
        assert!(constant.validate(&tri).is_err());
        let doubled = CharacteristicFunction::from_integers(GroundRing::Integer, &[vec![2, 0], vec![0, 1], vec![1, 1]]);
        assert!(doubled.validate(&tri).is_err());
        assert!(doubled.clone().with_ring(GroundRing::Rational).validate(&tri).is_ok());

        let ring = FaceRing::new(tri.clone());
        let thetas = theta_system(&ring, &lambda);
        assert_eq!(thetas[0].display(&tri), "v[1] + v[3]");
        assert_eq!(thetas[1].display(&tri), "v[2] + v[3]");
    }

    #[test]
    fn search_is_deterministic_and_valid() {
        let s = complex(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let a = find_characteristic_function(&s, GroundRing::Rational, 7).unwrap();
        assert_eq!(a, find_characteristic_function(&s, GroundRing::Rational, 7).unwrap());
        a.validate(&s).unwrap();
        let z = find_characteristic_function(&s, GroundRing::Integer, 7).unwrap();
        assert_eq!(z, find_characteristic_function(&s, GroundRing::Integer, 7).unwrap());
        z.validate(&s).unwrap();
    }

    #[test]
    fn theta_matrix_on_circle() {
        let s = circle();
        let ring = FaceRing::new(s.clone());
        // θ = v_u
        let lambda = CharacteristicFunction::from_integers(GroundRing::Rational, &[vec![1], vec![0]]);
        let cols = theta_multiplication_matrix(&ring, &lambda, 0, 1).unwrap();
        let target = ring.basis(2);
        let named = |col: &QVec| -> Vec<String> {
            col.iter().map(|(i, c)| format!("{}:{}", target.get(*i).display(&s), c)).collect()
        };
        assert_eq!(named(&cols[0]), vec!["v[u]^2:1"]);
        assert_eq!(named(&cols[1]), vec!["v[a]:1", "v[b]:1"]);
        let unit = theta_multiplication_matrix(&ring, &lambda, 0, 0).unwrap();
        assert_eq!(unit, vec![vec![(0, q(1))]]);
    }

    #[test]
    fn lambda_documents_round_trip() {
        let tri = complex(&[&[1, 2], &[2, 3], &[1, 3]]);
        let lambda = CharacteristicFunction::new(
            GroundRing::Rational,
            vec![vec![q(1), q(0)], vec![q(0), BigRational::new(1.into(), 2.into())], vec![q(1), q(1)]],
        );
        let doc = lambda.to_document(&tri);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"1":[1,0],"2":[0,"1/2"],"3":[1,1]}"#);
        let back: LambdaDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(CharacteristicFunction::from_document(&back, &tri, GroundRing::Rational).unwrap(), lambda);
        assert!(parse_rational("1/0").is_err());
    }
}
