//! Modules over group algebras in characteristic 2.

mod algebra;
mod brauer;
mod decompose;
mod hom;
mod rep;

pub use algebra::{local_radical, radical, AlgebraBasis, Radical};
pub use brauer::{
    brauer_quotient, fixed_points, maximal_subgroups, relative_trace_image, relative_trace_with,
    BrauerQuotient,
};
pub use decompose::{
    decompose, is_indecomposable, modules_isomorphic, EndCertificate, Indecomposability, IsoOutcome,
    Summand,
};
pub(crate) use decompose::{end_certificate, find_split};
pub use hom::{end_basis, hom_space, hom_subspace, is_homomorphism};
pub use rep::{Representation, MAX_MODULE_DIM};
