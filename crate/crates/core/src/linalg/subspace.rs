//! Subspaces in canonical (reduced row echelon) form.

use super::matrix::{kernel_from_rref, Layout};
use super::{Field, Matrix, Vector};
use crate::error::{Error, Result};

/// A subspace of `F^n`, stored as the RREF of a basis. Two subspaces are
/// equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        Subspace {
            basis: r.row_block(0, pivots.len()),
            pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::row_space(&m.transpose())
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let m = Matrix::from_rows(field, ambient, vectors).expect("vectors lie in the ambient space");
        Subspace::row_space(&m)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.len() != self.ambient() || v.field() != self.field() {
            return Err(Error::Shape(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient()
            )));
        }
        Ok(())
    }

    /// `v` minus its component along the canonical basis; zero exactly on
    /// the subspace. Also returns the coefficients removed.
    pub fn reduce_with_coords(&self, v: &Vector) -> (Vector, Vec<u8>) {
        let layout = Layout::new(self.field(), self.ambient());
        let mut r = v.clone();
        let mut coords = vec![0u8; self.dim()];
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r.get(p);
            if c != 0 {
                coords[i] = c;
                layout.axpy(r.raw_mut(), c, self.basis.row(i));
            }
        }
        (r, coords)
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        self.reduce_with_coords(v).0
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.check(v).is_ok() && self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<u8>> {
        self.check(v).ok()?;
        let (r, c) = self.reduce_with_coords(v);
        r.is_zero().then_some(c)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape("sum of subspaces of different spaces".into()));
        }
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape("intersection of subspaces of different spaces".into()));
        }
        let k = self.dim();
        let stacked = self.basis.vstack(&other.basis)?;
        let rel = stacked.transpose().kernel();
        let mut out = Vec::new();
        for c in rel.basis_vectors() {
            let mut v = Vector::zeros(self.field(), self.ambient());
            for i in 0..k {
                let x = c.get(i);
                if x != 0 {
                    v.add_scaled(x, &self.basis.row_vector(i));
                }
            }
            out.push(v);
        }
        Ok(Subspace::from_vectors(self.field(), self.ambient(), &out))
    }

    /// The non-pivot coordinates, indexing a canonical complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&j| !is_pivot[j]).collect()
    }

    /// Matrix of the projection `F^n → F^n / self` in the coordinates given by
    /// [`Subspace::complement_coordinates`]: `(n - dim) × n`, kernel = self.
    pub fn quotient_map(&self) -> Matrix {
        let comp = self.complement_coordinates();
        let n = self.ambient();
        let mut q = Matrix::zeros(self.field(), comp.len(), n);
        for (row, &c) in comp.iter().enumerate() {
            q.set(row, c, 1);
        }
        // a pivot coordinate p of basis row i contributes -row_i restricted to comp
        for (i, &p) in self.pivots.iter().enumerate() {
            for (row, &c) in comp.iter().enumerate() {
                let e = self.basis.get(i, c);
                if e != 0 {
                    q.set(row, p, e);
                }
            }
        }
        q
    }

    /// Image of the subspace under `a` (acting on columns).
    pub fn image_under(&self, a: &Matrix) -> Result<Subspace> {
        let img = a.mul(&self.basis.transpose())?;
        Ok(Subspace::column_space(&img))
    }

    pub fn is_invariant_under(&self, a: &Matrix) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| a.apply(v).map(|w| self.contains(&w)).unwrap_or(false))
    }
}

/// Incrementally built set of independent vectors in echelon form.
pub struct EchelonBuilder {
    layout: Layout,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: Field, ambient: usize) -> EchelonBuilder {
        EchelonBuilder {
            layout: Layout::new(field, ambient),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    fn reduce(&self, v: &mut Vector) {
        // each stored row vanishes at the pivots of the rows before it
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p);
            if c != 0 {
                self.layout.axpy(v.raw_mut(), c, row.raw());
            }
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v`; returns whether it was independent of what is stored.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        let Some(p) = w.first_nonzero() else {
            return false;
        };
        let lead = w.get(p);
        let inv = self.layout.field.inv(lead);
        self.layout.scale(w.raw_mut(), inv);
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn span(&self) -> Subspace {
        Subspace::from_vectors(self.layout.field, self.ambient, &self.rows)
    }

    /// `{x : r · x = 0 for every stored row r}`.
    pub fn null_space(&self) -> Subspace {
        let m = Matrix::from_rows(self.layout.field, self.ambient, &self.rows).expect("rows fit");
        let (r, pivots) = m.rref();
        kernel_from_rref(&r, &pivots)
    }
}

/// Smallest subspace containing `seeds` and invariant under every matrix in
/// `gens` (acting on columns).
pub fn spin(field: Field, ambient: usize, seeds: &[Vector], gens: &[Matrix]) -> Result<Subspace> {
    let mut builder = EchelonBuilder::new(field, ambient);
    let mut queue: Vec<Vector> = Vec::new();
    for s in seeds {
        if builder.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if builder.is_full() {
            break;
        }
        for g in gens {
            let w = g.apply(&v)?;
            if builder.insert(&w) {
                queue.push(w);
            }
        }
    }
    Ok(builder.span())
}
