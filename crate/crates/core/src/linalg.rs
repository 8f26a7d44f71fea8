//! Dense linear algebra over prime fields.
//!
//! Vectors are rows. A matrix `m` acts on a row vector `v` by `v * m`, which
//! is the convention used by module actions and module maps elsewhere in the
//! crate. Scalars are plain `u32` residues in `[0, p)`; the field context is
//! carried by [`PrimeField`].

use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_MODULUS: u32 = 5;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Number of elements, i.e. `p`.
    pub fn order(self) -> u64 {
        self.p as u64
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self {
            p: Self::DEFAULT_MODULUS,
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.reduce(x)))
            .collect();
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from residues already in `[0, p)`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        debug_assert!(data.iter().all(|&x| x < field.p));
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Self::from_vec(field, vectors.len(), cols, data)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.data[r * self.cols + c] = value % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.p as u64;
        let n = other.cols;
        let mut acc = vec![0u64; self.rows * n];
        for r in 0..self.rows {
            let out = &mut acc[r * n..(r + 1) * n];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (o, &b) in out.iter_mut().zip(row) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: n,
            data: acc.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.field.p as u64;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = (*o + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { data, ..*self }
    }

    /// `self += s * other`, entrywise.
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!(self.shape(), other.shape());
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = f.add(*a, f.mul(b, s));
            }
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: PrimeField, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for r in 0..rows {
                out.data[r * cols + offset..r * cols + offset + m.cols].copy_from_slice(m.row(r));
            }
            offset += m.cols;
        }
        out
    }

    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, columns.len());
        for r in 0..self.rows {
            for (j, &c) in columns.iter().enumerate() {
                out.data[r * columns.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row-echelon form, with the pivot column of each nonzero row.
    /// Zero rows are kept at the bottom so the shape is unchanged.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv(self.data[lead * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                let x = &mut self.data[lead * cols + j];
                *x = f.mul(*x, inv);
            }
            let pivot_row: Vec<u32> = self.data[lead * cols + c..(lead + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.data[r * cols + c];
                if factor == 0 {
                    continue;
                }
                let row = &mut self.data[r * cols + c..(r + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(factor, y));
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{x : self * x^T = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u32; self.cols];
            x[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(row, free));
            }
            vectors.push(x);
        }
        Subspace::span(&Matrix::from_row_vectors(f, self.cols, &vectors))
    }

    /// Left null space `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Row space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&right))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Result of solving `a * x = b` (column convention).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// A particular solution, or `None` if the system is inconsistent.
    pub particular: Option<Matrix>,
    /// Solutions of the homogeneous system, as a subspace of column vectors.
    pub homogeneous: Subspace,
}

/// Solves `a * x = b` for `x`, where `b` may carry several right-hand sides.
pub fn solve_linear_system(a: &Matrix, b: &Matrix) -> Result<LinearSolution> {
    if a.rows != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let aug = Matrix::hstack(a.field, a.rows, &[a, b]);
    let (r, pivots) = aug.rref();
    let homogeneous = a.kernel();
    if pivots.iter().any(|&c| c >= n) {
        return Ok(LinearSolution {
            particular: None,
            homogeneous,
        });
    }
    let mut x = Matrix::zeros(a.field, n, b.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(row, n + j));
        }
    }
    Ok(LinearSolution {
        particular: Some(x),
        homogeneous,
    })
}

/// A subspace of `F^n`, stored canonically as the nonzero rows of an rref
/// matrix. Two subspaces are equal iff their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list().entries(self.basis.row_vectors()).finish()
    }
}

/// Coordinates on a quotient `upper / lower`.
///
/// `projection` (ambient x q) sends a vector of `upper` to its class;
/// `section` (q x ambient) picks a representative in `upper` for each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCoordinates {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let basis = Matrix::from_vec(m.field, k, m.cols, r.data[..k * m.cols].to_vec());
        Self {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    pub fn from_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::span(&Matrix::from_row_vectors(field, ambient, vectors))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis rows in reduced row-echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` with respect to the rref basis, if `v` lies in the
    /// subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let back = self.basis.apply(&coords);
        (back == v).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.row_vectors().all(|v| self.contains(v))
    }

    /// Matrix (ambient x dim) sending vectors of the subspace to their
    /// coordinates. Only meaningful on the subspace itself.
    pub fn coordinate_map(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.ambient, self.dim());
        for (j, &c) in self.pivots.iter().enumerate() {
            m.set(c, j, 1);
        }
        m
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&Matrix::vstack(
            self.field(),
            self.ambient,
            &[&self.basis, &other.basis],
        )))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let stacked = Matrix::vstack(f, self.ambient, &[&self.basis, &other.basis]);
        let relations = stacked.left_kernel();
        let k = self.dim();
        let mut vectors = Vec::new();
        for rel in relations.basis.row_vectors() {
            vectors.push(self.basis.apply(&rel[..k]));
        }
        Ok(Subspace::from_vectors(f, self.ambient, &vectors))
    }

    /// Coordinates on `ambient / self`.
    pub fn quotient_coordinates(&self) -> QuotientCoordinates {
        let f = self.field();
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let q = free.len();
        let mut section = Matrix::zeros(f, q, n);
        let mut projection = Matrix::zeros(f, n, q);
        for (t, &c) in free.iter().enumerate() {
            section.set(t, c, 1);
            projection.set(c, t, 1);
        }
        // v - sum_r v[pivot_r] * row_r vanishes on pivot columns.
        for (r, &pc) in self.pivots.iter().enumerate() {
            for (t, &c) in free.iter().enumerate() {
                projection.set(pc, t, f.neg(self.basis.get(r, c)));
            }
        }
        QuotientCoordinates {
            projection,
            section,
        }
    }

    /// Coordinates on `upper / lower`, expressed against the common ambient
    /// space.
    pub fn layer_coordinates(upper: &Subspace, lower: &Subspace) -> Result<QuotientCoordinates> {
        upper.check_ambient(lower)?;
        if !upper.contains_subspace(lower) {
            return Err(Error::ShapeMismatch(
                "lower subspace is not contained in upper subspace".into(),
            ));
        }
        let f = upper.field();
        let lower_in_upper: Vec<Vec<u32>> = lower
            .basis
            .row_vectors()
            .map(|v| upper.coordinates(v).expect("contained"))
            .collect();
        let inner = Subspace::from_vectors(f, upper.dim(), &lower_in_upper).quotient_coordinates();
        Ok(QuotientCoordinates {
            projection: upper.coordinate_map().mul(&inner.projection),
            section: inner.section.mul(&upper.basis),
        })
    }
}
