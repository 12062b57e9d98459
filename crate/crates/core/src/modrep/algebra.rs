//! Matrix algebras given by a basis, and their Jacobson radical.
//!
//! The radical is found in two ways. The fast path recognizes local algebras:
//! if every basis element is a scalar plus a nilpotent, and those nilpotent
//! parts span a nilpotent space `N`, then `J = N` and `A/J` is the base field.
//! Otherwise the radical is computed over GF(2) by the iterated trace-form
//! method for characteristic 2 (with restriction of scalars for larger
//! fields), then certified: `J` is a nilpotent ideal and `A/J` has zero radical.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace, Vector};

/// A subalgebra of `n × n` matrices over `F`, given by a basis.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
    /// flattened positions where the basis restricted is invertible
    pivots: Vec<usize>,
    /// coordinates of `x` = (x at pivots) · to_coords
    to_coords: Matrix,
}

impl AlgebraBasis {
    /// Wraps linearly independent `n × n` matrices. Closure under
    /// multiplication is not checked here (see [`AlgebraBasis::check_closed`]).
    pub fn new(field: Field, n: usize, basis: Vec<Matrix>) -> Result<AlgebraBasis> {
        let flat: Vec<Vector> = basis.iter().map(Matrix::flatten).collect();
        let m = Matrix::from_rows(field, n * n, &flat)?;
        let (r, rank, t) = m.rref_with_transform();
        if rank != basis.len() {
            return Err(Error::InvalidArgument("algebra basis is linearly dependent".into()));
        }
        let pivots: Vec<usize> = (0..rank)
            .map(|i| r.row_vector(i).first_nonzero().expect("nonzero row"))
            .collect();
        Ok(AlgebraBasis {
            field,
            n,
            basis,
            pivots,
            to_coords: t,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the matrices.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates of an element assumed to lie in the algebra.
    pub fn coords(&self, x: &Matrix) -> Vec<u8> {
        let n = self.n;
        let v = Vector::from_entries(
            self.field,
            &self.pivots.iter().map(|&p| x.get(p / n, p % n)).collect::<Vec<_>>(),
        );
        self.to_coords.left_apply(&v).expect("sizes agree").entries()
    }

    pub fn element(&self, coords: &[u8]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                acc.add_scaled(*c, b).expect("same shape");
            }
        }
        acc
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        x.rows() == self.n && x.cols() == self.n && self.element(&self.coords(x)) == *x
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Matrix::identity(self.field, self.n))
    }

    /// Whether all pairwise products of basis elements stay in the algebra.
    pub fn check_closed(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| self.contains(&a.mul(b).expect("square"))))
    }

    /// Structure constants: `table[i][j]` = coordinates of `b_i b_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u8>>> {
        self.basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| self.coords(&a.mul(b).expect("square")))
                    .collect()
            })
            .collect()
    }
}

/// `J(A)` as coordinate vectors in the basis of `A`, plus how it was found.
#[derive(Clone, Debug)]
pub struct Radical {
    /// span of coordinate vectors (length `dim A`)
    pub coords: Subspace,
    /// basis of `J` as matrices
    pub basis: Vec<Matrix>,
    /// whether the local fast path applied (then `A/J` is the base field)
    pub local: bool,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }
}

/// Subspaces `V ⊇ N V ⊇ N² V ⊇ …`; true when they reach zero.
fn acts_nilpotently(field: Field, n: usize, mats: &[Matrix]) -> bool {
    if mats.is_empty() || n == 0 {
        return true;
    }
    let mut v = Subspace::full(field, n);
    for _ in 0..=n {
        if v.is_zero() {
            return true;
        }
        let cols = v.basis().transpose();
        let mut images = Vec::new();
        for m in mats {
            let img = m.mul(&cols).expect("sizes agree").transpose();
            images.extend(img.row_vectors());
        }
        let next = Subspace::from_vectors(field, n, &images);
        if next.dim() == v.dim() {
            return false;
        }
        v = next;
    }
    v.is_zero()
}

/// The unique eigenvalue of `x` if `x` minus it is nilpotent.
fn scalar_part(x: &Matrix) -> Option<u8> {
    let f = x.field();
    let n = x.rows();
    (0..f.order()).map(|c| c as u8).find(|&c| {
        let mut y = x.clone();
        y.add_scaled(c, &Matrix::identity(f, n)).expect("square");
        !y.is_invertible() && y.is_nilpotent()
    })
}

/// Local fast path: `Some(J)` when `A = F·1 ⊕ J` with `J` nilpotent.
pub fn local_radical(a: &AlgebraBasis) -> Option<Radical> {
    if !a.contains_identity() {
        return None;
    }
    let f = a.field();
    let n = a.degree();
    let id = Matrix::identity(f, n);
    let mut nil = Vec::new();
    for b in a.basis() {
        let c = scalar_part(b)?;
        let mut y = b.clone();
        y.add_scaled(c, &id).expect("square");
        nil.push(y);
    }
    if !acts_nilpotently(f, n, &nil) {
        return None;
    }
    let coord_vecs: Vec<Vector> = nil
        .iter()
        .map(|x| Vector::from_entries(f, &a.coords(x)))
        .collect();
    let coords = Subspace::from_vectors(f, a.dim(), &coord_vecs);
    if coords.dim() + 1 != a.dim() {
        return None;
    }
    let basis = coords.basis_vectors().iter().map(|c| a.element(&c.entries())).collect();
    Some(Radical {
        coords,
        basis,
        local: true,
    })
}

/// GF(2)-image of an element of GF(2^m): the matrix of multiplication by `c`
/// on the polynomial basis.
fn mult_block(f: Field, c: u8) -> Vec<Vec<u8>> {
    let m = f.degree();
    let mut out = vec![vec![0u8; m]; m];
    for j in 0..m {
        let img = f.mul(c, 1 << j);
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = img >> i & 1;
        }
    }
    out
}

/// Integer lift of a GF(2^m) matrix viewed over GF(2).
fn lift(x: &Matrix) -> Vec<u32> {
    let f = x.field();
    let m = f.degree();
    let (r, c) = (x.rows(), x.cols());
    let size = c * m;
    let mut out = vec![0u32; r * m * size];
    for i in 0..r {
        for j in 0..c {
            let e = x.get(i, j);
            if e == 0 {
                continue;
            }
            let blk = mult_block(f, e);
            for (bi, row) in blk.iter().enumerate() {
                for (bj, &v) in row.iter().enumerate() {
                    out[(i * m + bi) * size + j * m + bj] = v as u32;
                }
            }
        }
    }
    out
}

fn int_square(a: &[u32], n: usize, mask: u32) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let (row, src) = (&mut out[i * n..(i + 1) * n], &a[k * n..(k + 1) * n]);
            for (o, &y) in row.iter_mut().zip(src) {
                *o = o.wrapping_add(x.wrapping_mul(y));
            }
        }
        for o in &mut out[i * n..(i + 1) * n] {
            *o &= mask;
        }
    }
    out
}

/// `(Tr(x̂^{2^i}) mod 2^{i+1}) / 2^i` for an integer lift `x̂` of size `n`.
fn trace_form(lifted: &[u32], n: usize, i: u32) -> u8 {
    let mask = if i + 1 >= 32 { u32::MAX } else { (1u32 << (i + 1)) - 1 };
    let mut p: Vec<u32> = lifted.iter().map(|&v| v & mask).collect();
    for _ in 0..i {
        p = int_square(&p, n, mask);
    }
    let tr = (0..n).fold(0u32, |acc, k| acc.wrapping_add(p[k * n + k])) & mask;
    (tr >> i & 1) as u8
}

/// A faithful representation used for the trace computations: either the
/// matrices themselves or the left regular representation, whichever is smaller.
fn working_representation(a: &AlgebraBasis) -> (Vec<Matrix>, usize) {
    let d = a.dim();
    if a.contains_identity() && d < a.degree() {
        let table = a.structure_constants();
        let f = a.field();
        let reg = (0..d)
            .map(|i| Matrix::from_fn(f, d, d, |r, c| table[i][c][r]))
            .collect();
        (reg, d)
    } else {
        (a.basis().to_vec(), a.degree())
    }
}

/// `J(A)` by the trace-form method over GF(2), without certification.
fn trace_radical(a: &AlgebraBasis) -> Result<Subspace> {
    let f = a.field();
    let m = f.degree();
    let d = a.dim();
    if d == 0 {
        return Ok(Subspace::zero(f, 0));
    }
    let (rep, size) = working_representation(a);
    let big = size * m;
    if big > 4096 {
        return Err(Error::resource("radical computation size", 4096));
    }
    let gf2 = Field::gf2();
    // GF(2)-basis t^e b_j, indexed j * m + e
    let elem = |coords2: &Vector| -> Matrix {
        let mut acc = Matrix::zeros(f, size, size);
        for j in 0..d {
            let mut c = 0u8;
            for e in 0..m {
                c |= coords2.get(j * m + e) << e;
            }
            if c != 0 {
                acc.add_scaled(c, &rep[j]).expect("same shape");
            }
        }
        acc
    };
    let f2_basis: Vec<Matrix> = (0..d * m)
        .map(|k| elem(&Vector::unit(gf2, d * m, k)))
        .collect();
    let levels = usize::BITS - 1 - big.leading_zeros();
    let mut current = Subspace::full(gf2, d * m);
    for i in 0..=levels {
        if current.is_zero() {
            break;
        }
        let members = current.basis_vectors();
        let mut g = Matrix::zeros(gf2, members.len(), d * m);
        for (r, c) in members.iter().enumerate() {
            let x = elem(c);
            for (col, y) in f2_basis.iter().enumerate() {
                let xy = x.mul(y)?;
                g.set(r, col, trace_form(&lift(&xy), big, i));
            }
        }
        // combinations Σ λ_r members[r] on which every form vanishes
        let ker = g.transpose().kernel();
        let next: Vec<Vector> = ker
            .basis_vectors()
            .iter()
            .map(|lam| {
                let mut v = Vector::zeros(gf2, d * m);
                for (r, c) in members.iter().enumerate() {
                    if lam.get(r) == 1 {
                        v.add_scaled(1, c);
                    }
                }
                v
            })
            .collect();
        current = Subspace::from_vectors(gf2, d * m, &next);
    }
    // back to coordinates over F
    let coords: Vec<Vector> = current
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut v = Vector::zeros(f, d);
            for j in 0..d {
                let mut x = 0u8;
                for e in 0..m {
                    x |= c.get(j * m + e) << e;
                }
                v.set(j, x);
            }
            v
        })
        .collect();
    Ok(Subspace::from_vectors(f, d, &coords))
}

/// Structure of `A/J` on the complement coordinates of `J`.
pub(crate) struct Quotient {
    pub comp: Vec<usize>,
    pub proj: Matrix,
}

impl Quotient {
    pub fn new(j: &Subspace) -> Quotient {
        Quotient {
            comp: j.complement_coordinates(),
            proj: j.quotient_map(),
        }
    }

    pub fn dim(&self) -> usize {
        self.comp.len()
    }

    /// Quotient coordinates of an algebra element.
    pub fn reduce(&self, a: &AlgebraBasis, x: &Matrix) -> Vector {
        let c = Vector::from_entries(a.field(), &a.coords(x));
        self.proj.apply(&c).expect("sizes agree")
    }

    /// Representative in `A` of quotient basis element `k`.
    pub fn lift(&self, a: &AlgebraBasis, k: usize) -> Matrix {
        a.basis()[self.comp[k]].clone()
    }

    /// `A/J` as an algebra of matrices via its left regular representation.
    pub fn regular_algebra(&self, a: &AlgebraBasis) -> Result<AlgebraBasis> {
        let f = a.field();
        let r = self.dim();
        let lifts: Vec<Matrix> = (0..r).map(|k| self.lift(a, k)).collect();
        let mats = lifts
            .iter()
            .map(|x| {
                let cols: Vec<Vector> = lifts
                    .iter()
                    .map(|y| self.reduce(a, &x.mul(y).expect("square")))
                    .collect();
                Matrix::from_columns(f, r, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraBasis::new(f, r, mats)
    }
}

/// `J(A)`, certified.
pub fn radical(a: &AlgebraBasis) -> Result<Radical> {
    if let Some(r) = local_radical(a) {
        return Ok(r);
    }
    let coords = trace_radical(a)?;
    let basis: Vec<Matrix> = coords
        .basis_vectors()
        .iter()
        .map(|c| a.element(&c.entries()))
        .collect();
    certify(a, &coords, &basis)?;
    Ok(Radical {
        coords,
        basis,
        local: false,
    })
}

fn certify(a: &AlgebraBasis, coords: &Subspace, basis: &[Matrix]) -> Result<()> {
    let fail = |what: &str| Err(Error::Internal(format!("radical certification failed: {what}")));
    if !acts_nilpotently(a.field(), a.degree(), basis) {
        return fail("J is not nilpotent");
    }
    for x in basis {
        for y in a.basis() {
            for p in [x.mul(y)?, y.mul(x)?] {
                let c = Vector::from_entries(a.field(), &a.coords(&p));
                if !coords.contains(&c) {
                    return fail("J is not an ideal");
                }
            }
        }
    }
    if coords.dim() < a.dim() {
        let q = Quotient::new(coords).regular_algebra(a)?;
        if !trace_radical(&q)?.is_zero() {
            return fail("A/J is not semisimple");
        }
    }
    Ok(())
}
