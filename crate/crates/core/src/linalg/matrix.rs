//! Dense matrices and vectors over GF(2^m).
//!
//! Storage is bit-sliced: a row of `n` entries is `m` planes of `⌈n/64⌉`
//! words, plane `b` holding bit `b` of every entry. Over GF(2) a row is a
//! plain bit vector and addition is XOR; scalar multiplication in an
//! extension field mixes planes through the field's scalar table.
//!
//! Matrices act on column vectors: `A.apply(v) = A v`.

use std::fmt;

use rand::Rng;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Layout {
    pub field: Field,
    pub words: usize,
}

impl Layout {
    pub fn new(field: Field, len: usize) -> Layout {
        Layout {
            field,
            words: len.div_ceil(64).max(1),
        }
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.words * self.field.degree()
    }

    #[inline]
    pub fn get(&self, row: &[u64], j: usize) -> u8 {
        let (w, b) = (j / 64, j % 64);
        let mut out = 0u8;
        for p in 0..self.field.degree() {
            out |= ((row[p * self.words + w] >> b & 1) as u8) << p;
        }
        out
    }

    #[inline]
    pub fn set(&self, row: &mut [u64], j: usize, v: u8) {
        let (w, b) = (j / 64, j % 64);
        for p in 0..self.field.degree() {
            let word = &mut row[p * self.words + w];
            *word = (*word & !(1u64 << b)) | (((v >> p) & 1) as u64) << b;
        }
    }

    /// `dst += c · src`
    #[inline]
    pub fn axpy(&self, dst: &mut [u64], c: u8, src: &[u64]) {
        if c == 0 {
            return;
        }
        let w = self.words;
        let m = self.field.degree();
        if m == 1 || c == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
            return;
        }
        for b in 0..m {
            let mut planes = self.field.scalar_planes(c, b);
            let s = &src[b * w..(b + 1) * w];
            while planes != 0 {
                let k = planes.trailing_zeros() as usize;
                planes &= planes - 1;
                for (d, x) in dst[k * w..(k + 1) * w].iter_mut().zip(s) {
                    *d ^= x;
                }
            }
        }
    }

    pub fn scale(&self, row: &mut [u64], c: u8) {
        if c == 1 {
            return;
        }
        let src = row.to_vec();
        row.iter_mut().for_each(|x| *x = 0);
        self.axpy(row, c, &src);
    }

    pub fn first_nonzero(&self, row: &[u64]) -> Option<usize> {
        let w = self.words;
        for i in 0..w {
            let mut acc = 0u64;
            for p in 0..self.field.degree() {
                acc |= row[p * w + i];
            }
            if acc != 0 {
                return Some(i * 64 + acc.trailing_zeros() as usize);
            }
        }
        None
    }

    /// `Σ_j a_j b_j`
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u8 {
        let w = self.words;
        let m = self.field.degree();
        if m == 1 {
            let mut acc = 0u64;
            for (x, y) in a.iter().zip(b) {
                acc ^= x & y;
            }
            return (acc.count_ones() & 1) as u8;
        }
        let mut out = 0u8;
        for p in 0..m {
            for q in 0..m {
                let mut acc = 0u64;
                for i in 0..w {
                    acc ^= a[p * w + i] & b[q * w + i];
                }
                if acc.count_ones() & 1 == 1 {
                    out ^= self.field.pow_t(p + q);
                }
            }
        }
        out
    }
}

/// A row or column vector over GF(2^m).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    len: usize,
    data: Vec<u64>,
}

impl Vector {
    pub fn zeros(field: Field, len: usize) -> Vector {
        let layout = Layout::new(field, len);
        Vector {
            field,
            len,
            data: vec![0; layout.stride()],
        }
    }

    pub fn from_entries(field: Field, entries: &[u8]) -> Vector {
        let mut v = Vector::zeros(field, entries.len());
        for (j, &e) in entries.iter().enumerate() {
            v.set(j, e);
        }
        v
    }

    pub fn unit(field: Field, len: usize, j: usize) -> Vector {
        let mut v = Vector::zeros(field, len);
        v.set(j, 1);
        v
    }

    pub fn random<R: Rng>(field: Field, len: usize, rng: &mut R) -> Vector {
        let mut v = Vector::zeros(field, len);
        for j in 0..len {
            v.set(j, rng.gen_range(0..field.order()) as u8);
        }
        v
    }

    pub(crate) fn from_raw(field: Field, len: usize, data: Vec<u64>) -> Vector {
        Vector { field, len, data }
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(self.field, self.len)
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.data
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> u8 {
        self.layout().get(&self.data, j)
    }

    pub fn set(&mut self, j: usize, v: u8) {
        let layout = self.layout();
        layout.set(&mut self.data, j, v)
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len).map(|j| self.get(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn add_scaled(&mut self, c: u8, other: &Vector) {
        let layout = self.layout();
        layout.axpy(&mut self.data, c, &other.data);
    }

    pub fn scaled(&self, c: u8) -> Vector {
        let mut out = Vector::zeros(self.field, self.len);
        out.add_scaled(c, self);
        out
    }

    pub fn dot(&self, other: &Vector) -> u8 {
        self.layout().dot(&self.data, &other.data)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.layout().first_nonzero(&self.data)
    }

    /// All-ones vector.
    pub fn ones(field: Field, len: usize) -> Vector {
        let mut v = Vector::zeros(field, len);
        for j in 0..len {
            v.set(j, 1);
        }
        v
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries())
    }
}

/// Dense `rows × cols` matrix over GF(2^m).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows.min(32) {
            let row: Vec<String> = (0..self.cols.min(64)).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let stride = Layout::new(field, cols).stride();
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u8) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Stacks vectors of length `cols` as rows.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols || r.field() != field {
                return Err(Error::Shape(format!(
                    "row {i} has length {} but {cols} columns were requested",
                    r.len()
                )));
            }
            m.row_mut(i).copy_from_slice(r.raw());
        }
        Ok(m)
    }

    /// Uses vectors of length `rows` as columns.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    pub fn random<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen_range(0..field.order()) as u8);
            }
        }
        m
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(self.field, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn stride(&self) -> usize {
        self.layout().stride()
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        let s = self.stride();
        &self.data[i * s..(i + 1) * s]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        let s = self.stride();
        &mut self.data[i * s..(i + 1) * s]
    }

    /// Mutable row `i` and shared row `j`, `i != j`.
    fn row_pair(&mut self, i: usize, j: usize) -> (&mut [u64], &[u64]) {
        let s = self.stride();
        assert_ne!(i, j);
        if i < j {
            let (a, b) = self.data.split_at_mut(j * s);
            (&mut a[i * s..(i + 1) * s], &b[..s])
        } else {
            let (a, b) = self.data.split_at_mut(i * s);
            (&mut b[..s], &a[j * s..(j + 1) * s])
        }
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::from_raw(self.field, self.cols, self.row(i).to_vec())
    }

    pub fn column_vector(&self, j: usize) -> Vector {
        let mut v = Vector::zeros(self.field, self.rows);
        for i in 0..self.rows {
            v.set(i, self.get(i, j));
        }
        v
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.layout().get(self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        let layout = self.layout();
        layout.set(self.row_mut(i), j, v)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Shape(format!(
                "field mismatch: {:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        if self.field.degree() == 1 {
            for i in 0..self.rows {
                let row = self.row(i);
                for (w, &word) in row.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        t.set(w * 64 + b, i, 1);
                    }
                }
            }
            return t;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    t.set(j, i, v);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Characteristic 2: subtraction is addition.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(other)
    }

    pub fn scaled(&self, c: u8) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        let layout = self.layout();
        for i in 0..self.rows {
            let src = self.row(i).to_vec();
            layout.axpy(out.row_mut(i), c, &src);
        }
        out
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: u8, other: &Matrix) -> Result<()> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("add_scaled shape mismatch".into()));
        }
        let layout = self.layout();
        let s = self.stride();
        for i in 0..self.rows {
            layout.axpy(&mut self.data[i * s..(i + 1) * s], c, &other.data[i * s..(i + 1) * s]);
        }
        Ok(())
    }

    /// `self · other`
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let ol = other.layout();
        let binary = self.field.degree() == 1;
        for i in 0..self.rows {
            let arow = self.row(i);
            let s = out.stride();
            let dst = &mut out.data[i * s..(i + 1) * s];
            if binary {
                for (w, &word) in arow.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let src = other.row(w * 64 + b);
                        for (d, x) in dst.iter_mut().zip(src) {
                            *d ^= x;
                        }
                    }
                }
            } else {
                for k in 0..self.cols {
                    let c = self.get(i, k);
                    if c != 0 {
                        ol.axpy(dst, c, other.row(k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols || v.field() != self.field {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let layout = self.layout();
        let mut out = Vector::zeros(self.field, self.rows);
        for i in 0..self.rows {
            let d = layout.dot(self.row(i), v.raw());
            if d != 0 {
                out.set(i, d);
            }
        }
        Ok(out)
    }

    /// `vᵀ A` for a row vector `v`.
    pub fn left_apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rows || v.field() != self.field {
            return Err(Error::Shape(format!(
                "cannot left-apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let layout = self.layout();
        let mut out = Vector::zeros(self.field, self.cols);
        for i in 0..self.rows {
            let c = v.get(i);
            if c != 0 {
                layout.axpy(out.raw_mut(), c, self.row(i));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Whether `self^k = 0` for some `k`.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        let mut k = 1usize;
        while k < self.rows {
            p = p.mul(&p).expect("square");
            k *= 2;
            if p.is_zero() {
                return true;
            }
        }
        p.is_zero()
    }

    /// Rows `start..end`.
    pub fn row_block(&self, start: usize, end: usize) -> Matrix {
        let s = self.stride();
        Matrix {
            field: self.field,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * s..end * s].to_vec(),
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Flattens row-major into a vector of length `rows · cols`.
    pub fn flatten(&self) -> Vector {
        let mut v = Vector::zeros(self.field, self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    v.set(i * self.cols + j, x);
                }
            }
        }
        v
    }

    pub fn unflatten(v: &Vector, rows: usize, cols: usize) -> Result<Matrix> {
        if v.len() != rows * cols {
            return Err(Error::Shape("unflatten length mismatch".into()));
        }
        Ok(Matrix::from_fn(v.field(), rows, cols, |i, j| v.get(i * cols + j)))
    }

    /// Applies a field embedding entrywise.
    pub fn map_field(&self, big: Field, embedding: &[u8]) -> Matrix {
        Matrix::from_fn(big, self.rows, self.cols, |i, j| embedding[self.get(i, j) as usize])
    }

    /// In-place reduced row echelon form. Every row operation is mirrored on
    /// `companion` (which must have the same number of rows). Returns the
    /// pivot columns.
    pub(crate) fn rref_in_place(&mut self, mut companion: Option<&mut Matrix>) -> Vec<usize> {
        let layout = self.layout();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| layout.get(self.row(i), col) != 0) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                if let Some(c) = companion.as_deref_mut() {
                    c.swap_rows(p, r);
                }
            }
            let lead = layout.get(self.row(r), col);
            if lead != 1 {
                let inv = f.inv(lead);
                layout.scale(self.row_mut(r), inv);
                if let Some(c) = companion.as_deref_mut() {
                    let cl = c.layout();
                    cl.scale(c.row_mut(r), inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let e = layout.get(self.row(i), col);
                if e != 0 {
                    let (dst, src) = self.row_pair(i, r);
                    layout.axpy(dst, e, src);
                    if let Some(c) = companion.as_deref_mut() {
                        let cl = c.layout();
                        let (dst, src) = c.row_pair(i, r);
                        cl.axpy(dst, e, src);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let s = self.stride();
        for k in 0..s {
            self.data.swap(i * s + k, j * s + k);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut r = self.clone();
        let pivots = r.rref_in_place(None);
        (r, pivots)
    }

    /// `(R, rank, T)` with `T · self = R` in reduced row echelon form.
    pub fn rref_with_transform(&self) -> (Matrix, usize, Matrix) {
        let mut r = self.clone();
        let mut t = Matrix::identity(self.field, self.rows);
        let pivots = r.rref_in_place(Some(&mut t));
        (r, pivots.len(), t)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let (_, rank, t) = self.rref_with_transform();
        if rank != self.rows {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(t)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of `{v : A v = 0}` as a canonical subspace.
    pub fn kernel(&self) -> super::Subspace {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Some `x` with `A x = b` (free variables set to zero), if one exists.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        if b.len() != self.rows || b.field() != self.field {
            return Err(Error::Shape("right-hand side has the wrong length".into()));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    aug.set(i, j, v);
                }
            }
            let v = b.get(i);
            if v != 0 {
                aug.set(i, self.cols, v);
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Vector::zeros(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.set(p, r.get(i, self.cols));
        }
        Ok(Some(x))
    }

    /// Columns `start..end`.
    pub fn column_block(&self, start: usize, end: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, end - start, |i, j| self.get(i, start + j))
    }
}

/// Kernel of the matrix whose RREF is `r` with pivots `pivots`.
pub(crate) fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> super::Subspace {
    let n = r.cols();
    let field = r.field();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = Vector::zeros(field, n);
        v.set(f, 1);
        for (i, &p) in pivots.iter().enumerate() {
            // characteristic 2: -r = r
            let e = r.get(i, f);
            if e != 0 {
                v.set(p, e);
            }
        }
        basis.push(v);
    }
    super::Subspace::from_vectors(field, n, &basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<Field> {
        vec![Field::gf2(), Field::new(2).unwrap(), Field::new(4).unwrap()]
    }

    #[test]
    fn rref_identity() {
        for f in fields() {
            let i = Matrix::identity(f, 70);
            let (r, p) = i.rref();
            assert_eq!(r, i);
            assert_eq!(p.len(), 70);
        }
    }

    #[test]
    fn all_ones_row_kernel() {
        let a = Matrix::from_fn(Field::gf2(), 1, 3, |_, _| 1);
        assert_eq!(a.kernel().dim(), 2);
    }

    /// Random invertible matrices built by row operations on the identity.
    fn random_invertible<R: Rng>(f: Field, n: usize, rng: &mut R) -> Matrix {
        let mut m = Matrix::identity(f, n);
        let layout = m.layout();
        for _ in 0..4 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                let c = rng.gen_range(1..f.order()) as u8;
                layout.scale(m.row_mut(i), c);
            } else {
                let c = rng.gen_range(0..f.order()) as u8;
                let (d, s) = m.row_pair(i, j);
                layout.axpy(d, c, s);
            }
        }
        m
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fields() {
            for t in 0..100 {
                let n = 1 + (t % 9) * 9;
                let a = random_invertible(f, n, &mut rng);
                let inv = a.inverse().unwrap();
                assert!(a.mul(&inv).unwrap().is_identity());
                assert!(inv.mul(&a).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn rref_transform_and_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in fields() {
            for _ in 0..20 {
                let rows = rng.gen_range(1..40);
                let cols = rng.gen_range(1..90);
                let a = Matrix::random(f, rows, cols, &mut rng);
                let (r, rank, t) = a.rref_with_transform();
                assert_eq!(t.mul(&a).unwrap(), r);
                assert_eq!(r.rref().0, r);
                assert_eq!(rank + a.kernel().dim(), cols);
                for v in a.kernel().basis().row_vectors() {
                    assert!(a.apply(&v).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in fields() {
            let a = Matrix::random(f, 12, 20, &mut rng);
            let x = Vector::random(f, 20, &mut rng);
            let b = a.apply(&x).unwrap();
            let y = a.solve(&b).unwrap().unwrap();
            assert_eq!(a.apply(&y).unwrap(), b);
        }
        let a = Matrix::from_fn(Field::gf2(), 2, 2, |i, _| (i == 0) as u8);
        let b = Vector::from_entries(Field::gf2(), &[0, 1]);
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    #[test]
    fn transpose_and_products_agree_with_entrywise_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in fields() {
            let a = Matrix::random(f, 7, 70, &mut rng);
            let b = Matrix::random(f, 70, 5, &mut rng);
            let c = a.mul(&b).unwrap();
            for i in 0..7 {
                for j in 0..5 {
                    let mut acc = 0u8;
                    for k in 0..70 {
                        acc ^= f.mul(a.get(i, k), b.get(k, j));
                    }
                    assert_eq!(c.get(i, j), acc);
                }
            }
            assert_eq!(a.transpose().transpose(), a);
            let v = Vector::random(f, 70, &mut rng);
            let av = a.apply(&v).unwrap();
            let vt = a.transpose().left_apply(&v).unwrap();
            assert_eq!(av, vt);
        }
    }

    #[test]
    fn shape_errors() {
        let f = Field::gf2();
        let a = Matrix::zeros(f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&Matrix::zeros(f, 3, 2)).is_err());
        assert!(a.inverse().is_err());
        assert!(Matrix::zeros(f, 2, 2).inverse().is_err());
    }
}
