//! Homomorphism spaces between modules.
//!
//! `Hom_G(A, B)` is found by spinning `A`: pick seed vectors whose spans
//! under the generators fill `A`, so every basis vector `u_k` is a seed or
//! `A_i u_parent`. A homomorphism is fixed by the images of the seeds, and
//! `X u_k = T_k w` for the unknown seed images `w`. The conditions
//! `X A_i u_k = B_i X u_k` are then linear in `w`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Matrix, Subspace, Vector};

use super::rep::Representation;

enum Origin {
    Seed(usize),
    Child { parent: usize, gen: usize },
}

struct Spin {
    basis: Vec<Vector>,
    origin: Vec<Origin>,
    seeds: usize,
    /// `(k, i)` such that `A_i u_k` is itself a basis vector
    made: HashSet<(usize, usize)>,
    /// inverse of the matrix with the basis vectors as columns
    coords: Matrix,
}

fn spin_module(a: &Representation) -> Result<Spin> {
    let n = a.dim();
    let f = a.field();
    let mut builder = EchelonBuilder::new(f, n);
    let mut basis = Vec::with_capacity(n);
    let mut origin = Vec::with_capacity(n);
    let mut seeds = 0;
    let mut made = HashSet::new();
    for s in 0..n {
        if builder.is_full() {
            break;
        }
        let e = Vector::unit(f, n, s);
        if !builder.insert(&e) {
            continue;
        }
        let start = basis.len();
        basis.push(e);
        origin.push(Origin::Seed(seeds));
        seeds += 1;
        let mut head = start;
        while head < basis.len() {
            for (gi, g) in a.generator_matrices().iter().enumerate() {
                let w = g.apply(&basis[head])?;
                if builder.insert(&w) {
                    basis.push(w);
                    origin.push(Origin::Child { parent: head, gen: gi });
                    made.insert((head, gi));
                }
            }
            head += 1;
        }
    }
    let coords = Matrix::from_columns(f, n, &basis)?.inverse()?;
    Ok(Spin {
        basis,
        origin,
        seeds,
        made,
        coords,
    })
}

/// A basis of `Hom_G(A, B)`, each element a `dim B × dim A` matrix `X` with
/// `X ρ_A(g) = ρ_B(g) X`.
pub fn hom_space(a: &Representation, b: &Representation) -> Result<Vec<Matrix>> {
    if a.field() != b.field() || a.generator_matrices().len() != b.generator_matrices().len() {
        return Err(Error::InvalidArgument(
            "hom space needs modules for the same group and field".into(),
        ));
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    if da == 0 || db == 0 {
        return Ok(Vec::new());
    }
    let spin = spin_module(a)?;
    let unknowns = db * spin.seeds;
    // T_k: images of basis vectors as linear functions of the seed images
    let mut t: Vec<Matrix> = Vec::with_capacity(da);
    for o in &spin.origin {
        let tk = match *o {
            Origin::Seed(s) => {
                let mut m = Matrix::zeros(f, db, unknowns);
                for r in 0..db {
                    m.set(r, s * db + r, 1);
                }
                m
            }
            Origin::Child { parent, gen } => b.generator_matrices()[gen].mul(&t[parent])?,
        };
        t.push(tk);
    }
    let mut builder = EchelonBuilder::new(f, unknowns);
    'outer: for (k, u) in spin.basis.iter().enumerate() {
        for (gi, (ga, gb)) in a
            .generator_matrices()
            .iter()
            .zip(b.generator_matrices())
            .enumerate()
        {
            if builder.is_full() {
                break 'outer;
            }
            // relations that hold by construction
            if spin.made.contains(&(k, gi)) {
                continue;
            }
            let image = ga.apply(u)?;
            let c = spin.coords.apply(&image)?;
            let mut constraint = gb.mul(&t[k])?;
            for l in 0..da {
                let x = c.get(l);
                if x != 0 {
                    constraint.add_scaled(x, &t[l])?;
                }
            }
            for row in constraint.row_vectors() {
                builder.insert(&row);
                if builder.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let solutions = builder.null_space();
    let mut out = Vec::with_capacity(solutions.dim());
    for w in solutions.basis_vectors() {
        let cols: Vec<Vector> = t.iter().map(|tk| tk.apply(&w)).collect::<Result<_>>()?;
        let xu = Matrix::from_columns(f, db, &cols)?;
        out.push(xu.mul(&spin.coords)?);
    }
    Ok(out)
}

/// Basis of `End_G(M)`.
pub fn end_basis(m: &Representation) -> Result<Vec<Matrix>> {
    hom_space(m, m)
}

/// Whether `x` intertwines the two modules.
pub fn is_homomorphism(a: &Representation, b: &Representation, x: &Matrix) -> bool {
    a.generator_matrices()
        .iter()
        .zip(b.generator_matrices())
        .all(|(ga, gb)| match (x.mul(ga), gb.mul(x)) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        })
}

/// The intertwiners as a subspace of flattened matrices.
pub fn hom_subspace(a: &Representation, b: &Representation) -> Result<Subspace> {
    let basis = hom_space(a, b)?;
    let flat: Vec<Vector> = basis.iter().map(Matrix::flatten).collect();
    Ok(Subspace::from_vectors(a.field(), a.dim() * b.dim(), &flat))
}
