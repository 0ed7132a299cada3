//! Exact linear algebra over ℤ and ℚ.
//!
//! Two independent kernels live here: a dense Smith normal form over
//! arbitrary-precision integers (ranks, torsion, integral bases) and a sparse
//! incremental echelon form over the rationals (ranks, normal forms modulo a
//! subspace). Tests cross-check one against the other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse integer vectors.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, BigInt)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let d = q * s;
                self.data[target * self.cols + j] -= d;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn col_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let d = q * s;
                self.data[i * self.cols + target] -= d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

/// Result of a Smith normal form computation: `left * A * right = diag(diagonal, 0, ...)`.
///
/// Transforms are only populated when requested.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub left_inv: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by least-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> Smith {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut left = with_transforms.then(|| IntMatrix::identity(rows));
    let mut left_inv = with_transforms.then(|| IntMatrix::identity(rows));
    let mut right = with_transforms.then(|| IntMatrix::identity(cols));

    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&m, t) else { break };
        row_swap(&mut m, &mut left, &mut left_inv, t, pi);
        col_swap(&mut m, &mut right, t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).div_floor(m.get(t, t));
                row_sub(&mut m, &mut left, &mut left_inv, i, t, &q);
                if !m.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).div_floor(m.get(t, t));
                col_sub(&mut m, &mut right, j, t, &q);
                if !m.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&m, t);
                row_swap(&mut m, &mut left, &mut left_inv, t, pi);
                col_swap(&mut m, &mut right, t, pj);
                continue;
            }
            // the pivot must divide the remaining block
            let pivot = m.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !m.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    // row t += row i, then re-run elimination
                    row_sub(&mut m, &mut left, &mut left_inv, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }

        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(l) = left.as_mut() {
                l.negate_row(t);
            }
            if let Some(li) = left_inv.as_mut() {
                li.negate_col(t);
            }
        }
        diagonal.push(m.get(t, t).clone());
        t += 1;
    }

    Smith { diagonal, left, left_inv, right }
}

fn min_abs_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < m.get(bi, bj).abs(),
            };
            if better {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn min_abs_in_cross(m: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut val: Option<BigInt> = None;
    let candidates = (t..m.rows).map(|i| (i, t)).chain((t + 1..m.cols).map(|j| (t, j)));
    for (i, j) in candidates {
        let x = m.get(i, j);
        if x.is_zero() {
            continue;
        }
        if val.as_ref().is_none_or(|v| &x.abs() < v) {
            val = Some(x.abs());
            best = (i, j);
        }
    }
    best
}

fn row_swap(
    m: &mut IntMatrix,
    left: &mut Option<IntMatrix>,
    left_inv: &mut Option<IntMatrix>,
    a: usize,
    b: usize,
) {
    m.swap_rows(a, b);
    if let Some(l) = left.as_mut() {
        l.swap_rows(a, b);
    }
    if let Some(li) = left_inv.as_mut() {
        li.swap_cols(a, b);
    }
}

fn col_swap(m: &mut IntMatrix, right: &mut Option<IntMatrix>, a: usize, b: usize) {
    m.swap_cols(a, b);
    if let Some(r) = right.as_mut() {
        r.swap_cols(a, b);
    }
}

fn row_sub(
    m: &mut IntMatrix,
    left: &mut Option<IntMatrix>,
    left_inv: &mut Option<IntMatrix>,
    target: usize,
    source: usize,
    q: &BigInt,
) {
    m.row_sub(target, source, q);
    if let Some(l) = left.as_mut() {
        l.row_sub(target, source, q);
    }
    // E = I - q e_target e_source^T, so E^{-1} adds q * col_target to col_source
    if let Some(li) = left_inv.as_mut() {
        li.col_sub(source, target, &-q);
    }
}

fn col_sub(m: &mut IntMatrix, right: &mut Option<IntMatrix>, target: usize, source: usize, q: &BigInt) {
    m.col_sub(target, source, q);
    if let Some(r) = right.as_mut() {
        r.col_sub(target, source, q);
    }
}

/// Integer kernel basis of `a` (columns of the returned matrix), saturated.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let smith = smith_normal_form(a, true);
    let right = smith.right.expect("transforms requested");
    let r = smith.diagonal.len();
    let mut out = IntMatrix::zeros(a.cols, a.cols - r);
    for (dst, j) in (r..a.cols).enumerate() {
        for i in 0..a.cols {
            out.set(i, dst, right.get(i, j).clone());
        }
    }
    out
}

/// The quotient `ℤ^N / L` of a free module by the lattice spanned by some columns,
/// split as torsion plus a free part with explicit coordinates.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ambient: usize,
    rank: usize,
    torsion: Vec<BigInt>,
    left: IntMatrix,
    left_inv: IntMatrix,
}

impl LatticeQuotient {
    /// `generators` has `ambient` rows; its column span is the lattice.
    pub fn new(generators: &IntMatrix) -> Self {
        let smith = smith_normal_form(generators, true);
        LatticeQuotient {
            ambient: generators.rows(),
            rank: smith.rank(),
            torsion: smith.torsion(),
            left: smith.left.expect("transforms requested"),
            left_inv: smith.left_inv.expect("transforms requested"),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.ambient - self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Coordinates of the class of `x` in the free part.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient);
        (self.rank..self.ambient)
            .map(|i| {
                self.left
                    .row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// A vector of the ambient module representing the `j`-th free basis element.
    pub fn lift(&self, j: usize) -> Vec<BigInt> {
        self.left_inv.column(self.rank + j)
    }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn rational_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        assert_eq!(m[k].len(), n, "determinant of a non-square matrix");
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Sparse rational vector: strictly increasing indices, nonzero values.
pub type QVec = Vec<(usize, BigRational)>;

/// `x += c * y` on sparse vectors.
pub fn axpy(x: &QVec, c: &BigRational, y: &QVec) -> QVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + c * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from (index, value) pairs, summing duplicates.
pub fn qvec_from_pairs(pairs: impl IntoIterator<Item = (usize, BigRational)>) -> QVec {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (i, v) in pairs {
        *acc.entry(i).or_insert_with(BigRational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Row echelon form of a subspace of ℚ^N, built incrementally.
///
/// Each stored row has its pivot at its largest index, so the coordinates that
/// are never pivots index a complement made of the lowest-ordered basis vectors
/// possible.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, QVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: BTreeMap::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: QVec) -> bool {
        let mut v = v;
        while let Some((lead, c)) = v.last().cloned() {
            match self.rows.get(&lead) {
                Some(row) => {
                    // rows are normalised to a unit pivot
                    v = axpy(&v, &-c, row);
                }
                None => {
                    let inv = c.recip();
                    let normalised = v.into_iter().map(|(i, x)| (i, x * &inv)).collect();
                    self.rows.insert(lead, normalised);
                    return true;
                }
            }
        }
        false
    }

    /// The unique representative of `v + span` supported off the pivot set.
    pub fn normal_form(&self, v: &QVec) -> QVec {
        let mut v = v.clone();
        for (pivot, row) in self.rows.iter().rev() {
            if let Ok(pos) = v.binary_search_by_key(pivot, |(i, _)| *i) {
                let c = v[pos].1.clone();
                v = axpy(&v, &-c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.normal_form(v).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Ascending coordinates that are not pivots: a complement basis.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.rows.contains_key(i)).collect()
    }
}

/// Rank over ℚ of an integer matrix via sparse elimination.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut ech = Echelon::new(a.cols());
    for i in 0..a.rows() {
        let v: QVec = a
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, BigRational::from_integer(x.clone())))
            .collect();
        if !v.is_empty() {
            ech.insert(v);
        }
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// Rank of a dense rational matrix (rows as vectors).
pub fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
    let dim = rows.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(dim);
    for row in rows {
        ech.insert(dense_to_qvec(row));
    }
    ech.rank()
}

pub fn dense_to_qvec(row: &[BigRational]) -> QVec {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Kernel of the linear map whose columns are `columns` (each in ℚ^rows).
/// Returns a basis of the kernel as dense vectors of length `columns.len()`.
pub fn rational_kernel(columns: &[QVec], rows: usize) -> Vec<Vec<BigRational>> {
    let ncols = columns.len();
    // dense row-reduced form of the rows x ncols matrix
    let mut m = vec![vec![BigRational::zero(); ncols]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col {
            m[*i][j] = x.clone();
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect()
}
