//! Dense bit-packed linear algebra over the two-element field.
//!
//! Every matrix in the crate (boundary maps, transition matrices, homology
//! isomorphisms) is a [`Gf2Matrix`]. Storage is row-major, one `u64` word per
//! 64 columns. Addition is XOR, so subtraction and addition coincide.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("vector length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unit upper triangular (entry ({row}, {col}))")]
    NotUnitriangular { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector with ones at the given positions.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place `self += other`.
    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Index of the first set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Entries at the given positions, in that order.
    pub fn select(&self, positions: &[usize]) -> Gf2Vector {
        Gf2Vector::from_bits(positions.iter().map(|&i| self.get(i)))
    }

    /// Scatter into a vector of length `len`: entry `k` goes to `positions[k]`.
    pub fn scatter(&self, len: usize, positions: &[usize]) -> Gf2Vector {
        assert_eq!(self.len, positions.len());
        let mut out = Gf2Vector::zeros(len);
        for (k, &p) in positions.iter().enumerate() {
            if self.get(k) {
                out.set(p, true);
            }
        }
        out
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// Dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 integers. Panics on ragged input.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    /// Matrix with ones at the listed `(row, col)` positions.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(i, j) in entries {
            m.set(i, j, true);
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn columns(&self) -> Vec<Gf2Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Nonzero positions in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (i, j) in self.entries() {
            t.set(j, i, true);
        }
        t
    }

    /// Submatrix on the given row and column index lists, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    m.set(a, b, true);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.shape() != other.shape() {
            return Err(Gf2Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (dst, src) = (i * out.stride, k * other.stride);
                    for w in 0..out.stride {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(Gf2Vector::from_bits((0..self.rows).map(|i| {
            self.row_words(i)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 1
        })))
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.add_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] += row[src]`.
    pub fn add_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.stride {
            let s = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= s;
        }
    }

    /// `col[dst] += col[src]`.
    pub fn add_col_into(&mut self, src: usize, dst: usize) {
        for i in 0..self.rows {
            if self.get(i, src) {
                self.flip(i, dst);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, as columns. One vector per free column of the
    /// reduced echelon form, in increasing free-column order.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vector::unit(self.cols, f);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Gf2Matrix::from_columns(self.cols, &basis)
    }

    /// Basis of the column space, as columns: the nonzero rows of the reduced
    /// echelon form of the transpose.
    pub fn image_basis(&self) -> Gf2Matrix {
        let (r, pivots) = self.transpose().rref();
        let basis: Vec<Gf2Vector> = (0..pivots.len()).map(|i| r.row(i)).collect();
        Gf2Matrix::from_columns(self.rows, &basis)
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Option<Gf2Vector>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let augmented = self.hstack_vector(b);
        let (r, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if r.get(row, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    fn hstack_vector(&self, b: &Gf2Vector) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.rows, self.cols + 1);
        for (i, j) in self.entries() {
            m.set(i, j, true);
        }
        for i in b.ones() {
            m.set(i, self.cols, true);
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut m = Gf2Matrix::zeros(self.rows, self.cols + other.cols);
        for (i, j) in self.entries() {
            m.set(i, j, true);
        }
        for (i, j) in other.entries() {
            m.set(i, self.cols + j, true);
        }
        Ok(m)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.first_non_unitriangular().is_none()
    }

    fn first_non_unitriangular(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            if !self.get(i, i) {
                return Some((i, i));
            }
            for j in 0..i {
                if self.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Inverse of an upper triangular matrix with unit diagonal, by back
    /// substitution.
    pub fn invert_unitriangular(&self) -> Result<Gf2Matrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some((row, col)) = self.first_non_unitriangular() {
            return Err(Gf2Error::NotUnitriangular { row, col });
        }
        let n = self.rows;
        let mut inv = Gf2Matrix::identity(n);
        // Rows from the bottom: inv_i = e_i + sum_{k>i} a_ik inv_k.
        for i in (0..n).rev() {
            for k in i + 1..n {
                if self.get(i, k) {
                    inv.add_row_into(k, i);
                }
            }
        }
        Ok(inv)
    }

    /// General inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Gf2Matrix::zeros(0, 0));
        }
        let augmented = self.hstack(&Gf2Matrix::identity(n))?;
        let (r, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Gf2Error::Singular);
        }
        let all: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&all, &right))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Solution set `{ particular + span(nullspace) }` of an affine system, or
/// empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    dimension: usize,
    particular: Option<Gf2Vector>,
    nullspace: Vec<Gf2Vector>,
}

impl AffineSolutionSet {
    pub fn empty(dimension: usize) -> Self {
        Self {
            dimension,
            particular: None,
            nullspace: Vec::new(),
        }
    }

    /// Ambient number of unknowns.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn particular(&self) -> Option<&Gf2Vector> {
        self.particular.as_ref()
    }

    pub fn nullspace(&self) -> &[Gf2Vector] {
        &self.nullspace
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension of the affine set as a GF(2) flat; `None` when empty.
    pub fn free_dims(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.nullspace.len())
    }

    /// The member `particular + sum_i c_i n_i`, with `c_i` read from the bits of
    /// `coefficients`.
    pub fn member(&self, coefficients: &Gf2Vector) -> Option<Gf2Vector> {
        let p = self.particular.as_ref()?;
        assert_eq!(coefficients.len(), self.nullspace.len());
        let mut out = p.clone();
        for i in coefficients.ones() {
            out.add_assign(&self.nullspace[i]);
        }
        Some(out)
    }

    /// Enumerates every member. Only sensible for small nullspaces.
    pub fn members(&self) -> Vec<Gf2Vector> {
        let Some(p) = &self.particular else {
            return Vec::new();
        };
        let k = self.nullspace.len();
        assert!(k < 24, "refusing to enumerate 2^{k} members");
        (0u32..1 << k)
            .map(|mask| {
                let mut out = p.clone();
                for (i, n) in self.nullspace.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        out.add_assign(n);
                    }
                }
                out
            })
            .collect()
    }

    pub fn contains(&self, x: &Gf2Vector) -> bool {
        let Some(p) = &self.particular else {
            return false;
        };
        if x.len() != self.dimension {
            return false;
        }
        let diff = x.add(p);
        if self.nullspace.is_empty() {
            return diff.is_zero();
        }
        let basis = Gf2Matrix::from_columns(self.dimension, &self.nullspace);
        matches!(basis.solve(&diff), Ok(Some(_)))
    }
}

/// Exact solution set of `rows[i] . x = rhs[i]` for all `i`.
///
/// Every row must have length `unknowns`. The particular solution sets free
/// variables to zero; the nullspace basis is [`Gf2Matrix::kernel_basis`] order.
pub fn solve_affine(
    unknowns: usize,
    constraints: &[(Gf2Vector, bool)],
) -> Result<AffineSolutionSet, Gf2Error> {
    for (row, _) in constraints {
        if row.len() != unknowns {
            return Err(Gf2Error::LengthMismatch {
                expected: unknowns,
                got: row.len(),
            });
        }
    }
    let rows: Vec<Gf2Vector> = constraints.iter().map(|(r, _)| r.clone()).collect();
    let a = Gf2Matrix::from_row_vectors(unknowns, &rows);
    let b = Gf2Vector::from_bits(constraints.iter().map(|(_, v)| *v));
    let Some(particular) = a.solve(&b)? else {
        return Ok(AffineSolutionSet::empty(unknowns));
    };
    Ok(AffineSolutionSet {
        dimension: unknowns,
        particular: Some(particular),
        nullspace: a.kernel_basis().columns(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_delta_lambda() -> Gf2Matrix {
        Gf2Matrix::from_entries(3, 3, &[(0, 1)])
    }

    fn example_delta_mu() -> Gf2Matrix {
        Gf2Matrix::from_entries(3, 3, &[(0, 1), (0, 2)])
    }

    fn example_t() -> Gf2Matrix {
        Gf2Matrix::from_entries(3, 3, &[(0, 0), (1, 1), (1, 2), (2, 2)])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
        assert_eq!(example_delta_lambda().rank(), 1);
        assert_eq!(Gf2Matrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Gf2Matrix::identity(2).kernel_basis().cols(), 0);
        let k = Gf2Matrix::zeros(1, 3).kernel_basis();
        assert_eq!(k, Gf2Matrix::identity(3));
        // degree-1 block of the second example matrix: the row [1 1]
        let k = Gf2Matrix::from_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), Gf2Vector::from_bits([true, true]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(Gf2Matrix::zeros(3, 2).image_basis().cols(), 0);
        assert_eq!(Gf2Matrix::identity(3).image_basis(), Gf2Matrix::identity(3));
        let im = example_delta_lambda().image_basis();
        assert_eq!(im.cols(), 1);
        assert_eq!(im.column(0), Gf2Vector::unit(3, 0));
    }

    #[test]
    fn solve_examples() {
        let b = Gf2Vector::from_bits([true, false, true]);
        assert_eq!(Gf2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Gf2Matrix::zeros(3, 3).solve(&b).unwrap(), None);
        let x = Gf2Matrix::from_rows(&[&[1, 1]])
            .solve(&Gf2Vector::from_bits([true]))
            .unwrap();
        assert_eq!(x, Some(Gf2Vector::from_bits([true, false])));
        assert!(matches!(
            Gf2Matrix::identity(2).solve(&b),
            Err(Gf2Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn solve_affine_examples() {
        let s = solve_affine(2, &[]).unwrap();
        assert_eq!(s.particular(), Some(&Gf2Vector::zeros(2)));
        assert_eq!(s.free_dims(), Some(2));

        let s = solve_affine(1, &[(Gf2Vector::from_bits([true]), true)]).unwrap();
        assert_eq!(s.particular(), Some(&Gf2Vector::from_bits([true])));
        assert_eq!(s.free_dims(), Some(0));

        let s = solve_affine(
            2,
            &[
                (Gf2Vector::from_bits([true, true]), true),
                (Gf2Vector::from_bits([true, false]), true),
            ],
        )
        .unwrap();
        assert_eq!(s.particular(), Some(&Gf2Vector::from_bits([true, false])));
        assert_eq!(s.free_dims(), Some(0));

        let s = solve_affine(
            1,
            &[
                (Gf2Vector::from_bits([true]), true),
                (Gf2Vector::from_bits([true]), false),
            ],
        )
        .unwrap();
        assert!(s.is_empty());
        assert!(s.members().is_empty());
    }

    #[test]
    fn products_and_inverse() {
        let t = example_t();
        let inv = t.invert_unitriangular().unwrap();
        assert_eq!(t.mul(&inv).unwrap(), Gf2Matrix::identity(3));
        assert_eq!(inv, t);
        let lhs = t.mul(&example_delta_lambda()).unwrap();
        let rhs = example_delta_mu().mul(&t).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.entries(), [(0, 1)]);
        assert!(t.add(&t).unwrap().is_zero());
    }

    #[test]
    fn invert_rejects_bad_input() {
        let m = Gf2Matrix::from_rows(&[&[1, 0], &[1, 1]]);
        assert_eq!(
            m.invert_unitriangular(),
            Err(Gf2Error::NotUnitriangular { row: 1, col: 0 })
        );
        assert!(matches!(
            Gf2Matrix::zeros(2, 3).invert_unitriangular(),
            Err(Gf2Error::NotSquare { .. })
        ));
        assert_eq!(m.inverse().unwrap().mul(&m).unwrap(), Gf2Matrix::identity(2));
        assert_eq!(Gf2Matrix::zeros(2, 2).inverse(), Err(Gf2Error::Singular));
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let n = 130;
        let mut m = Gf2Matrix::identity(n);
        m.set(3, 129, true);
        m.set(64, 128, true);
        let inv = m.invert_unitriangular().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Gf2Matrix::identity(n));
        assert_eq!(m.rank(), n);
    }
}
