//! Fixed points, relative traces and the Brauer quotient.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::linalg::{Matrix, Subspace, Vector};

use super::rep::Representation;

/// `M^Q`, the vectors fixed by every element of `q`.
pub fn fixed_points(m: &Representation, q: &Subgroup) -> Result<Subspace> {
    let f = m.field();
    let d = m.dim();
    let mut rows: Vec<Vector> = Vec::new();
    for &g in q.generators() {
        let mut a = m.matrix_of(g);
        a.add_scaled(1, &Matrix::identity(f, d))?;
        rows.extend(a.row_vectors());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, d));
    }
    Ok(Matrix::from_rows(f, d, &rows)?.kernel())
}

/// Sum over left coset representatives `t` of `R` in `Q` of `t · v`.
fn trace_images(m: &Representation, reps: &[usize], basis: &[Vector]) -> Result<Vec<Vector>> {
    let mats: Vec<Matrix> = reps.iter().map(|&t| m.matrix_of(t)).collect();
    basis
        .iter()
        .map(|v| {
            let mut acc = Vector::zeros(m.field(), m.dim());
            for a in &mats {
                acc.add_scaled(1, &a.apply(v)?);
            }
            Ok(acc)
        })
        .collect()
}

/// Image of `Tr_R^Q : M^R → M^Q`.
pub fn relative_trace_image(m: &Representation, r: &Subgroup, q: &Subgroup) -> Result<Subspace> {
    if !r.is_subgroup_of(q) {
        return Err(Error::InvalidArgument("R must be a subgroup of Q".into()));
    }
    let reps = m.group().coset_reps(q, r);
    relative_trace_with(m, r, &reps)
}

/// As [`relative_trace_image`] with caller-chosen coset representatives.
pub fn relative_trace_with(m: &Representation, r: &Subgroup, reps: &[usize]) -> Result<Subspace> {
    let fixed = fixed_points(m, r)?;
    let images = trace_images(m, reps, &fixed.basis_vectors())?;
    Ok(Subspace::from_vectors(m.field(), m.dim(), &images))
}

/// The maximal subgroups of a 2-group `q`: the kernels of the nonzero
/// functionals on `Q/Φ(Q)`, where `Φ(Q)` is generated by the squares.
pub fn maximal_subgroups(g: &Group, q: &Subgroup) -> Result<Vec<Subgroup>> {
    if !q.order().is_power_of_two() {
        return Err(Error::InvalidArgument("maximal_subgroups expects a 2-group".into()));
    }
    if q.is_trivial() {
        return Ok(Vec::new());
    }
    let squares: Vec<usize> = q.elements().iter().map(|&x| g.mul(x, x)).collect();
    let phi = g.subgroup(&squares);
    // label Q/Φ by vectors over GF(2), one new coordinate per generator
    let mut label: HashMap<usize, u32> = phi.elements().iter().map(|&x| (x, 0)).collect();
    let mut rank = 0u32;
    for &x in q.elements() {
        if label.contains_key(&x) {
            continue;
        }
        let current: Vec<(usize, u32)> = label.iter().map(|(&k, &v)| (k, v)).collect();
        for (k, v) in current {
            label.insert(g.mul(k, x), v | 1 << rank);
        }
        rank += 1;
    }
    if label.len() != q.order() {
        return Err(Error::Internal("Frattini quotient labelling failed".into()));
    }
    let mut out = Vec::new();
    for functional in 1u32..(1 << rank) {
        let elems: Vec<usize> = q
            .elements()
            .iter()
            .copied()
            .filter(|x| (label[x] & functional).count_ones() % 2 == 0)
            .collect();
        out.push(g.subgroup_from_elements(elems)?);
    }
    out.sort();
    Ok(out)
}

/// `M(Q) = M^Q / Σ_{R < Q maximal} Tr_R^Q(M^R)` with its `N_G(Q)`-action.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    /// module for `N_G(Q)`, realized as `group().as_group(normalizer)`
    pub rep: Representation,
    pub normalizer: Subgroup,
    pub fixed: Subspace,
    pub trace_sum: Subspace,
    /// `dim M(Q) × dim M^Q`, in the coordinates of the canonical basis of `M^Q`
    pub projection: Matrix,
}

impl BrauerQuotient {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Image in `M(Q)` of a vector of `M^Q`.
    pub fn project(&self, v: &Vector) -> Result<Vector> {
        let c = self
            .fixed
            .coordinates(v)
            .ok_or_else(|| Error::InvalidArgument("vector is not Q-fixed".into()))?;
        self.projection.apply(&Vector::from_entries(v.field(), &c))
    }
}

/// The Brauer quotient of `m` at the 2-subgroup `q` of its acting group.
pub fn brauer_quotient(m: &Representation, q: &Subgroup) -> Result<BrauerQuotient> {
    let g = m.group();
    let f = m.field();
    let fixed = fixed_points(m, q)?;
    let mut trace_sum = Subspace::zero(f, m.dim());
    for r in maximal_subgroups(g, q)? {
        trace_sum = trace_sum.sum(&relative_trace_image(m, &r, q)?)?;
    }
    // the trace sum in coordinates of the basis of M^Q
    let inner: Vec<Vector> = trace_sum
        .basis_vectors()
        .iter()
        .map(|v| {
            fixed
                .coordinates(v)
                .map(|c| Vector::from_entries(f, &c))
                .ok_or_else(|| Error::Internal("trace image is not Q-fixed".into()))
        })
        .collect::<Result<_>>()?;
    let w = Subspace::from_vectors(f, fixed.dim(), &inner);
    let projection = w.quotient_map();
    let comp = w.complement_coordinates();
    let normalizer = g.normalizer(q);
    let n_group = g.as_group(&normalizer);
    let fixed_basis = fixed.basis_vectors();
    let gen_elems: Vec<usize> = if normalizer.generators().is_empty() {
        vec![g.identity()]
    } else {
        normalizer.generators().to_vec()
    };
    let e = comp.len();
    let gens = gen_elems
        .iter()
        .map(|&x| {
            let a = m.matrix_of(x);
            let cols = comp
                .iter()
                .map(|&c| {
                    let img = a.apply(&fixed_basis[c])?;
                    let coords = fixed
                        .coordinates(&img)
                        .ok_or_else(|| Error::Internal("N_G(Q) does not preserve M^Q".into()))?;
                    projection.apply(&Vector::from_entries(f, &coords))
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(f, e, &cols)
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Representation::new_unchecked(&n_group, f, e, gens)?;
    Ok(BrauerQuotient {
        rep,
        normalizer,
        fixed,
        trace_sum,
        projection,
    })
}
