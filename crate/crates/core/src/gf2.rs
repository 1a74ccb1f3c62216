//! Dense linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words; matrices are stored as a list of
//! column vectors, since every algorithm in this crate works column by column.
//! Indexing follows the usual `(row, col)` convention.

use std::fmt;

use crate::error::{usage, Result};

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.flip(i);
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
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// In-place addition (XOR).
    #[inline]
    pub fn add_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the highest set bit, used as the elimination pivot.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Copy of the bits in `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        let mut out = BitVec::zeros(end - start);
        for i in self.ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "[{s}]")
    }
}

/// A `rows × cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            columns: vec![BitVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            columns: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from its columns; every column must have length `rows`.
    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Self {
        assert!(
            columns.iter().all(|c| c.len() == rows),
            "column length does not match row count {rows}"
        );
        Self { rows, columns }
    }

    /// Builds a matrix from row-major 0/1 entries.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                if x % 2 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.columns[col].set(row, value);
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<BitVec> {
        self.columns
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols(), self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for i in col.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Applies the matrix to a vector of length `cols`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(
            v.len(),
            self.cols(),
            "vector length does not match column count"
        );
        let mut out = BitVec::zeros(self.rows);
        for j in v.ones() {
            out.add_assign(&self.columns[j]);
        }
        out
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols(), rhs.rows, "incompatible shapes for product");
        Gf2Matrix {
            rows: self.rows,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Gf2Matrix {
            rows: self.rows,
            columns,
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols())?;
        for i in 0..self.rows {
            let row: String = (0..self.cols())
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Incrementally built echelon basis.
///
/// Each stored vector carries a tag vector that is transformed alongside it,
/// which is how kernels and homology coordinates are tracked.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    vectors: Vec<(BitVec, BitVec)>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Self {
            len,
            tag_len,
            vectors: Vec::new(),
            pivot_of: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` (with its tag) against the stored vectors until its leading
    /// bit is not a stored pivot.
    pub fn reduce(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        while let Some(p) = v.leading() {
            match self.pivot_of[p] {
                Some(k) => {
                    let (row, row_tag) = &self.vectors[k];
                    v.add_assign(row);
                    tag.add_assign(row_tag);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v`; returns `None` if it was independent of the stored
    /// vectors, or `Some(tag)` with the accumulated tag of a dependency.
    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.len);
        assert_eq!(tag.len(), self.tag_len);
        let (v, tag) = self.reduce(v, tag);
        match v.leading() {
            Some(p) => {
                self.pivot_of[p] = Some(self.vectors.len());
                self.vectors.push((v, tag));
                None
            }
            None => Some(tag),
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let (r, _) = self.reduce(v.clone(), BitVec::zeros(self.tag_len));
        r.is_zero()
    }
}

/// GF(2) rank.
pub fn rank(m: &Gf2Matrix) -> usize {
    let mut e = Echelon::new(m.rows(), 0);
    for c in m.columns() {
        e.insert(c.clone(), BitVec::zeros(0));
    }
    e.rank()
}

/// Basis of the null space `{x : m x = 0}`, as a subspace of `F^cols`.
pub fn kernel_basis(m: &Gf2Matrix) -> Subspace {
    let n = m.cols();
    let mut e = Echelon::new(m.rows(), n);
    let mut basis = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Some(tag) = e.insert(c.clone(), BitVec::unit(n, j)) {
            basis.push(tag);
        }
    }
    Subspace {
        ambient_dim: n,
        basis: Gf2Matrix::from_columns(n, basis),
    }
}

/// A linear subspace of `F^ambient_dim`, stored by an independent spanning set.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Gf2Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Gf2Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Gf2Matrix::identity(ambient_dim),
        }
    }

    /// Span of arbitrary vectors; dependent ones are dropped.
    pub fn span<'a, I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut e = Echelon::new(ambient_dim, 0);
        let mut basis = Vec::new();
        for v in vectors {
            if e.insert(v.clone(), BitVec::zeros(0)).is_none() {
                basis.push(v.clone());
            }
        }
        Self {
            ambient_dim,
            basis: Gf2Matrix::from_columns(ambient_dim, basis),
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Gf2Matrix) -> Self {
        Self::span(m.rows(), m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim, 0);
        for c in self.basis.columns() {
            e.insert(c.clone(), BitVec::zeros(0));
        }
        e
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        let e = other.echelon();
        self.basis.columns().iter().all(|c| e.contains(c))
    }

    /// Equality of spanned spaces (double containment).
    pub fn same_space(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis.columns().iter().chain(other.basis.columns()),
        ))
    }

    /// `self ∩ other`, from the kernel of the concatenated basis matrix.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let joint = self.basis.hcat(&other.basis);
        let kernel = kernel_basis(&joint);
        let k = self.dim();
        let vectors: Vec<BitVec> = kernel
            .basis
            .columns()
            .iter()
            .map(|x| self.basis.apply(&x.slice(0, k)))
            .collect();
        Ok(Subspace::span(self.ambient_dim, &vectors))
    }

    /// `dim self − dim sub`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.check_ambient(sub)?;
        let e = self.echelon();
        if let Some(bad) = sub.basis.columns().iter().find(|c| !e.contains(c)) {
            return Err(usage!(
                "quotient requires containment, but {bad:?} is not in the ambient subspace"
            ));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image of this subspace under `m` (which must have `ambient_dim` columns).
    pub fn image(&self, m: &Gf2Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(usage!(
                "cannot map a subspace of F^{} through a matrix with {} columns",
                self.ambient_dim,
                m.cols()
            ));
        }
        let images: Vec<BitVec> = self.basis.columns().iter().map(|c| m.apply(c)).collect();
        Ok(Subspace::span(m.rows(), &images))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(usage!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient_dim,
                other.ambient_dim
            ));
        }
        Ok(())
    }
}
