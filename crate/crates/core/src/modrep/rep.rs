//! Matrix representations of permutation groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GSet, Group, Subgroup};
use crate::linalg::{Field, Matrix};

/// Largest module dimension the engine accepts.
pub const MAX_MODULE_DIM: usize = 2000;

/// A left `F G`-module: one invertible matrix per generator of `G`, acting on
/// column vectors. `matrix_of(g ∘ h) = matrix_of(g) · matrix_of(h)`.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Group,
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
}

impl Representation {
    /// Validates shapes and invertibility, and spot-checks the homomorphism
    /// property on 100 random element pairs.
    pub fn new(group: &Group, field: Field, dim: usize, gens: Vec<Matrix>) -> Result<Representation> {
        let rep = Representation::new_unchecked(group, field, dim, gens)?;
        for (i, a) in rep.gens.iter().enumerate() {
            if dim > 0 && !a.is_invertible() {
                return Err(Error::InvalidArgument(format!("generator matrix {i} is singular")));
            }
        }
        rep.verify_homomorphism(100, 0)?;
        Ok(rep)
    }

    /// Shape checks only; for matrices that are representations by construction.
    pub(crate) fn new_unchecked(
        group: &Group,
        field: Field,
        dim: usize,
        gens: Vec<Matrix>,
    ) -> Result<Representation> {
        if dim > MAX_MODULE_DIM {
            return Err(Error::resource("module dimension", MAX_MODULE_DIM));
        }
        if gens.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for a in &gens {
            if a.rows() != dim || a.cols() != dim || a.field() != field {
                return Err(Error::Shape(format!(
                    "generator matrix is {}x{} over {:?}, expected {dim}x{dim} over {field:?}",
                    a.rows(),
                    a.cols(),
                    a.field()
                )));
            }
        }
        Ok(Representation {
            group: group.clone(),
            field,
            dim,
            gens,
        })
    }

    /// Checks `ρ(a)ρ(b) = ρ(ab)` on `samples` random pairs.
    pub fn verify_homomorphism(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.group.order();
        for _ in 0..samples {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let lhs = self.matrix_of(a).mul(&self.matrix_of(b))?;
            if lhs != self.matrix_of(self.group.mul(a, b)) {
                return Err(Error::InvalidArgument(
                    "matrices do not define a representation".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrices of the group generators.
    pub fn generator_matrices(&self) -> &[Matrix] {
        &self.gens
    }

    /// Matrix of element `g`, evaluated along its word in the generators.
    pub fn matrix_of(&self, g: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim);
        for k in self.group.word(g).into_iter().rev() {
            acc = self.gens[k].mul(&acc).expect("square matrices of one size");
        }
        acc
    }

    /// The zero module.
    pub fn zero(group: &Group, field: Field) -> Representation {
        let gens = vec![Matrix::zeros(field, 0, 0); group.generators().len()];
        Representation::new_unchecked(group, field, 0, gens).expect("shapes agree")
    }

    /// The trivial module `F`.
    pub fn trivial(group: &Group, field: Field) -> Representation {
        let gens = vec![Matrix::identity(field, 1); group.generators().len()];
        Representation::new_unchecked(group, field, 1, gens).expect("shapes agree")
    }

    /// `F[Ω]` with the points of `gset` as basis: `g e_i = e_{g(i)}`.
    pub fn perm_module(group: &Group, gset: &GSet, field: Field) -> Result<Representation> {
        let d = gset.degree();
        let gens = gset
            .generator_images()
            .iter()
            .map(|p| Matrix::from_fn(field, d, d, |i, j| (p.apply(j) == i) as u8))
            .collect();
        Representation::new_unchecked(group, field, d, gens)
    }

    /// The regular module `F[G]`.
    pub fn regular(group: &Group, field: Field) -> Result<Representation> {
        let gset = group.coset_action(&group.trivial());
        Representation::perm_module(group, &gset, field)
    }

    /// Restriction to a subgroup `h` of the acting group. The result is a
    /// module for `group().as_group(h)`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Representation> {
        if h.elements().last().is_some_and(|&g| g >= self.group.order()) {
            return Err(Error::InvalidArgument("subgroup does not lie in the acting group".into()));
        }
        let sub = self.group.as_group(h);
        let gens = if h.generators().is_empty() {
            vec![Matrix::identity(self.field, self.dim)]
        } else {
            h.generators().iter().map(|&g| self.matrix_of(g)).collect()
        };
        Representation::new_unchecked(&sub, self.field, self.dim, gens)
    }

    /// Restriction to a subgroup given in terms of another group `other`
    /// whose elements contain it.
    pub fn restrict_from(&self, other: &Group, h: &Subgroup) -> Result<Representation> {
        let local = self.group.translate(other, h)?;
        self.restrict(&local)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.field != other.field || self.gens.len() != other.gens.len() {
            return Err(Error::InvalidArgument(
                "direct sum needs modules for the same group and field".into(),
            ));
        }
        let (a, b) = (self.dim, other.dim);
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(x, y)| {
                Matrix::from_fn(self.field, a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j),
                    (false, false) => y.get(i - a, j - a),
                    _ => 0,
                })
            })
            .collect();
        Representation::new_unchecked(&self.group, self.field, a + b, gens)
    }

    /// The same matrices read over a larger field.
    pub fn extend_scalars(&self, big: Field) -> Result<Representation> {
        let emb = self.field.embedding_into(big)?;
        let gens = self.gens.iter().map(|a| a.map_field(big, &emb)).collect();
        Representation::new_unchecked(&self.group, big, self.dim, gens)
    }

    /// The module transported along a change of basis: `ρ'(g) = S ρ(g) S⁻¹`.
    pub fn conjugate_by(&self, s: &Matrix) -> Result<Representation> {
        let s_inv = s.inverse()?;
        let gens = self
            .gens
            .iter()
            .map(|a| s.mul(a)?.mul(&s_inv))
            .collect::<Result<Vec<_>>>()?;
        Representation::new_unchecked(&self.group, self.field, self.dim, gens)
    }

    /// The action on the subspace with basis the columns of `inclusion`,
    /// read back through `projection` (a left inverse of `inclusion`).
    pub(crate) fn compress(&self, inclusion: &Matrix, projection: &Matrix) -> Result<Representation> {
        let gens = self
            .gens
            .iter()
            .map(|a| projection.mul(&a.mul(inclusion)?))
            .collect::<Result<Vec<_>>>()?;
        Representation::new_unchecked(&self.group, self.field, inclusion.cols(), gens)
    }
}
