//! Indecomposability certificates, decomposition into indecomposables and
//! isomorphism tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace, Vector};

use super::algebra::{radical, AlgebraBasis, Quotient};
use super::hom::{end_basis, hom_space};
use super::rep::Representation;

/// Random endomorphisms tried per split before giving up.
const SPLIT_BUDGET: usize = 400;

/// Dimension data of `End(M)` behind an indecomposability verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndCertificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    /// `dim End/J` over the field of the module.
    pub residue_dim: usize,
    /// When `End/J` is a field, its degree over the field of the module.
    pub residue_field_degree: Option<usize>,
}

impl EndCertificate {
    pub fn is_local(&self) -> bool {
        self.residue_dim == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indecomposability {
    /// The answer over an algebraic closure of the base field.
    pub indecomposable: bool,
    /// Certificate over the base field.
    pub certificate: EndCertificate,
    /// Degree over GF(2) of the field the final answer was read in, when a
    /// scalar extension was needed.
    pub extended_to: Option<usize>,
}

/// Certificate for `End(M)`; also returns the basis and radical for reuse.
pub(crate) fn end_certificate(m: &Representation) -> Result<(EndCertificate, AlgebraBasis, Vec<Matrix>)> {
    let f = m.field();
    let basis = end_basis(m)?;
    let alg = AlgebraBasis::new(f, m.dim(), basis)?;
    let rad = radical(&alg)?;
    let residue_dim = alg.dim() - rad.dim();
    let mut cert = EndCertificate {
        end_dim: alg.dim(),
        radical_dim: rad.dim(),
        residue_dim,
        residue_field_degree: None,
    };
    if residue_dim == 1 {
        cert.residue_field_degree = Some(1);
    } else if residue_dim > 1 {
        cert.residue_field_degree = residue_field_degree(&alg, &rad.coords)?;
    }
    Ok((cert, alg, rad.basis))
}

/// If `A/J` is a field, its degree over `F` (Berlekamp: the fixed space of
/// `x ↦ x^q` on a commutative semisimple algebra counts its field factors).
fn residue_field_degree(a: &AlgebraBasis, j: &Subspace) -> Result<Option<usize>> {
    let q = Quotient::new(j);
    let r = q.dim();
    let f = a.field();
    let lifts: Vec<Matrix> = (0..r).map(|k| q.lift(a, k)).collect();
    for x in &lifts {
        for y in &lifts {
            let d = x.mul(y)?.add(&y.mul(x)?)?;
            if !q.reduce(a, &d).is_zero() {
                return Ok(None);
            }
        }
    }
    let mut frob = Matrix::zeros(f, r, r);
    for (k, x) in lifts.iter().enumerate() {
        let img = q.reduce(a, &x.pow(f.order() as u64)?);
        for i in 0..r {
            frob.set(i, k, img.get(i) ^ (i == k) as u8);
        }
    }
    Ok((frob.kernel().dim() == 1).then_some(r))
}

/// Absolute indecomposability of `M` (false for the zero module).
pub fn is_indecomposable(m: &Representation) -> Result<Indecomposability> {
    if m.is_zero() {
        return Ok(Indecomposability {
            indecomposable: false,
            certificate: EndCertificate {
                end_dim: 0,
                radical_dim: 0,
                residue_dim: 0,
                residue_field_degree: None,
            },
            extended_to: None,
        });
    }
    let (cert, _, _) = end_certificate(m)?;
    if cert.is_local() {
        return Ok(Indecomposability {
            indecomposable: true,
            certificate: cert,
            extended_to: None,
        });
    }
    if let Some(s) = cert.residue_field_degree {
        // indecomposable over F but End/J = GF(q^s): splits after extension
        let total = m.field().degree() * s;
        if total > 8 {
            return Err(Error::resource("scalar extension degree", 8));
        }
        let big = m.extend_scalars(Field::new(total)?)?;
        let (ext, _, _) = end_certificate(&big)?;
        return Ok(Indecomposability {
            indecomposable: ext.is_local(),
            certificate: cert,
            extended_to: Some(total),
        });
    }
    Ok(Indecomposability {
        indecomposable: false,
        certificate: cert,
        extended_to: None,
    })
}

/// A direct summand `N` of a module `M`: `inclusion` (`dim M × dim N`) has
/// the basis of `N` as columns and `projection · inclusion = 1`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Representation,
    pub inclusion: Matrix,
    pub projection: Matrix,
    pub certificate: Option<EndCertificate>,
}

impl Summand {
    pub fn whole(m: &Representation) -> Summand {
        let id = Matrix::identity(m.field(), m.dim());
        Summand {
            rep: m.clone(),
            inclusion: id.clone(),
            projection: id,
            certificate: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn parent_dim(&self) -> usize {
        self.inclusion.rows()
    }

    /// `inclusion · projection`, an idempotent endomorphism of the parent.
    pub fn idempotent(&self) -> Matrix {
        self.inclusion.mul(&self.projection).expect("shapes agree")
    }

    /// The image of the summand in the parent.
    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.inclusion)
    }

    /// Splits along a decomposition of the summand's own space into
    /// complementary invariant subspaces with bases the columns of `a`, `b`.
    pub(crate) fn split(&self, a: &Matrix, b: &Matrix) -> Result<(Summand, Summand)> {
        let f = self.rep.field();
        let d = self.dim();
        let cols: Vec<Vector> = (0..a.cols())
            .map(|j| a.column_vector(j))
            .chain((0..b.cols()).map(|j| b.column_vector(j)))
            .collect();
        let change = Matrix::from_columns(f, d, &cols)?;
        let inv = change.inverse()?;
        let (pa, pb) = (inv.row_block(0, a.cols()), inv.row_block(a.cols(), d));
        let part = |basis: &Matrix, proj: &Matrix| -> Result<Summand> {
            Ok(Summand {
                rep: self.rep.compress(basis, proj)?,
                inclusion: self.inclusion.mul(basis)?,
                projection: proj.mul(&self.projection)?,
                certificate: None,
            })
        };
        Ok((part(a, &pa)?, part(b, &pb)?))
    }

    /// Checks the summand identities against the parent module.
    pub fn verify(&self, parent: &Representation) -> bool {
        let e = self.idempotent();
        let id = Matrix::identity(self.rep.field(), self.dim());
        self.projection.mul(&self.inclusion).map(|x| x == id).unwrap_or(false)
            && e.mul(&e).map(|x| x == e).unwrap_or(false)
            && parent
                .generator_matrices()
                .iter()
                .all(|g| g.mul(&e).ok() == e.mul(g).ok())
            && parent
                .generator_matrices()
                .iter()
                .zip(self.rep.generator_matrices())
                .all(|(g, h)| {
                    g.mul(&self.inclusion).ok() == self.inclusion.mul(h).ok()
                })
    }
}

/// Fitting decomposition for `ψ`: `(image, kernel)` bases of a high power,
/// or `None` when `ψ` is nilpotent or invertible.
fn fitting(psi: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let d = psi.rows();
    let mut p = psi.clone();
    let mut k = 1;
    while k < d {
        p = p.mul(&p)?;
        k *= 2;
    }
    let img = Subspace::column_space(&p);
    if img.dim() == 0 || img.dim() == d {
        return Ok(None);
    }
    let ker = p.kernel();
    Ok(Some((img.basis().transpose(), ker.basis().transpose())))
}

/// Tries `φ - λ` for every scalar `λ` at which it is singular.
fn split_with(phi: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let f = phi.field();
    let id = Matrix::identity(f, phi.rows());
    for c in (0..f.order()).map(|c| c as u8) {
        let mut psi = phi.clone();
        psi.add_scaled(c, &id)?;
        if psi.is_invertible() {
            continue;
        }
        if let Some(s) = fitting(&psi)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Some endomorphism giving a proper Fitting split, trying the basis first
/// and then seeded random combinations.
pub(crate) fn find_split(basis: &[Matrix], seed: u64) -> Result<Option<(Matrix, Matrix)>> {
    for b in basis {
        if let Some(s) = split_with(b)? {
            return Ok(Some(s));
        }
    }
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let f = first.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPLIT_BUDGET {
        let mut x = Matrix::zeros(f, first.rows(), first.cols());
        for b in basis {
            x.add_scaled(rng.gen_range(0..f.order()) as u8, b)?;
        }
        if rng.gen_bool(0.5) {
            let mut y = Matrix::zeros(f, first.rows(), first.cols());
            for b in basis {
                y.add_scaled(rng.gen_range(0..f.order()) as u8, b)?;
            }
            x = x.mul(&y)?;
        }
        if let Some(s) = split_with(&x)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn decompose_rec(s: Summand, seed: u64) -> Result<Vec<Summand>> {
    let (cert, alg, _) = end_certificate(&s.rep)?;
    if cert.is_local() || cert.residue_field_degree.is_some_and(|k| k > 1) {
        return Ok(vec![Summand {
            certificate: Some(cert),
            ..s
        }]);
    }
    let Some((a, b)) = find_split(alg.basis(), seed)? else {
        return Err(Error::Internal(format!(
            "no splitting endomorphism found for a module of dimension {} (End dim {}, End/J dim {})",
            s.dim(),
            cert.end_dim,
            cert.residue_dim
        )));
    };
    let (x, y) = s.split(&a, &b)?;
    let left = seed.wrapping_mul(2).wrapping_add(1);
    let right = seed.wrapping_mul(2).wrapping_add(2);
    let (rx, ry) = rayon::join(|| decompose_rec(x, left), || decompose_rec(y, right));
    let mut out = rx?;
    out.extend(ry?);
    Ok(out)
}

fn canonical_key(s: &Summand) -> (usize, Vec<u8>) {
    let img = s.image();
    let mut key = Vec::new();
    for v in img.basis_vectors() {
        key.extend(v.entries());
    }
    (s.dim(), key)
}

/// Splits `M` into indecomposable summands, absolutely: if some summand has
/// a residue field larger than the base field, the whole module is extended
/// to a field where every residue field is trivial and decomposed again.
pub fn decompose(m: &Representation, seed: u64) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let mut parts = decompose_rec(Summand::whole(m), seed)?;
    let need: Vec<usize> = parts
        .iter()
        .filter_map(|p| p.certificate.as_ref().and_then(|c| c.residue_field_degree))
        .filter(|&k| k > 1)
        .collect();
    if !need.is_empty() {
        let l = need.iter().fold(1, |acc, &k| crate::perm::lcm(acc, k));
        let total = m.field().degree() * l;
        if total > 8 {
            return Err(Error::resource("scalar extension degree", 8));
        }
        let big = m.extend_scalars(Field::new(total)?)?;
        parts = decompose_rec(Summand::whole(&big), seed)?;
        if parts.iter().any(|p| !p.certificate.as_ref().is_some_and(|c| c.is_local())) {
            return Err(Error::Internal(
                "a summand is still not absolutely indecomposable after scalar extension".into(),
            ));
        }
    }
    parts.sort_by_cached_key(canonical_key);
    Ok(parts)
}

/// Outcome of an isomorphism test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

/// Whether two modules for the same group are isomorphic.
pub fn modules_isomorphic(a: &Representation, b: &Representation, seed: u64) -> Result<IsoOutcome> {
    if a.dim() != b.dim() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if a.is_zero() {
        return Ok(IsoOutcome::Isomorphic);
    }
    let ab = hom_space(a, b)?;
    if ab.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if ab.iter().any(Matrix::is_invertible) {
        return Ok(IsoOutcome::Isomorphic);
    }
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut x = Matrix::zeros(f, b.dim(), a.dim());
        for h in &ab {
            x.add_scaled(rng.gen_range(0..f.order()) as u8, h)?;
        }
        if x.is_invertible() {
            return Ok(IsoOutcome::Isomorphic);
        }
    }
    // local End(A): A ≅ B iff some ψφ is invertible, ψ: B → A, φ: A → B
    let (cert, _, _) = end_certificate(a)?;
    if cert.is_local() {
        let ba = hom_space(b, a)?;
        for psi in &ba {
            for phi in &ab {
                if psi.mul(phi)?.is_invertible() {
                    return Ok(IsoOutcome::Isomorphic);
                }
            }
        }
        return Ok(IsoOutcome::NotIsomorphic);
    }
    Ok(IsoOutcome::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GSet, Group};
    use crate::perm::Perm;

    fn group(gens: &[&str], degree: usize) -> Group {
        Group::from_generators(gens.iter().map(|s| Perm::parse_cycles(degree, s).unwrap()).collect())
            .unwrap()
    }

    fn check_decomposition(m: &Representation, parts: &[Summand]) {
        let f = m.field();
        let mut total = Matrix::zeros(f, m.dim(), m.dim());
        for (i, p) in parts.iter().enumerate() {
            assert!(p.verify(m));
            for (j, q) in parts.iter().enumerate() {
                if i != j {
                    assert!(p.idempotent().mul(&q.idempotent()).unwrap().is_zero());
                }
            }
            total = total.add(&p.idempotent()).unwrap();
        }
        assert!(total.is_identity());
        assert_eq!(parts.iter().map(Summand::dim).sum::<usize>(), m.dim());
    }

    #[test]
    fn trivial_and_double_trivial() {
        let f = Field::gf2();
        let g = group(&["(0 1 2)", "(0 1)"], 3);
        let k = Representation::trivial(&g, f);
        let r = is_indecomposable(&k).unwrap();
        assert!(r.indecomposable);
        assert_eq!(r.certificate.end_dim, 1);
        let kk = k.direct_sum(&k).unwrap();
        let r = is_indecomposable(&kk).unwrap();
        assert!(!r.indecomposable);
        assert_eq!(r.certificate.end_dim, 4);
        assert_eq!(decompose(&kk, 0).unwrap().len(), 2);
        assert!(!is_indecomposable(&Representation::zero(&g, f)).unwrap().indecomposable);
    }

    #[test]
    fn s3_on_cosets_of_c2() {
        let f = Field::gf2();
        let g = group(&["(0 1 2)", "(0 1)"], 3);
        let m = Representation::perm_module(&g, &GSet::natural(&g), f).unwrap();
        let parts = decompose(&m, 0).unwrap();
        assert_eq!(parts.iter().map(Summand::dim).collect::<Vec<_>>(), vec![1, 2]);
        check_decomposition(&m, &parts);
        for p in &parts {
            assert!(is_indecomposable(&p.rep).unwrap().indecomposable);
        }
    }

    #[test]
    fn regular_c2_is_indecomposable() {
        let f = Field::gf2();
        let g = group(&["(0 1)"], 2);
        let m = Representation::regular(&g, f).unwrap();
        assert!(is_indecomposable(&m).unwrap().indecomposable);
        let parts = decompose(&m, 0).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].dim(), 2);
    }

    #[test]
    fn residue_field_extension() {
        // C3 on its 2-dim irreducible over GF(2): End = GF(4)
        let f = Field::gf2();
        let g = group(&["(0 1 2)"], 3);
        let m = Representation::perm_module(&g, &GSet::natural(&g), f).unwrap();
        let parts = decompose(&m, 0).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].rep.field().degree(), 2);
        let two = parts_over_base(&m);
        let r = is_indecomposable(&two).unwrap();
        assert!(!r.indecomposable);
        assert_eq!(r.certificate.residue_field_degree, Some(2));
        assert_eq!(r.extended_to, Some(2));
    }

    fn parts_over_base(m: &Representation) -> Representation {
        // the augmentation submodule, spanned by e0 + e2 and e1 + e2
        let f = m.field();
        let inc = Matrix::from_fn(f, 3, 2, |i, j| ((i == j) || (i == 2 && j == 1) || (i == 2 && j == 0)) as u8);
        let proj = Matrix::from_fn(f, 2, 3, |i, j| (i == j) as u8);
        m.compress(&inc, &proj).unwrap()
    }

    #[test]
    fn s4_modules_decompose_soundly() {
        let f = Field::gf2();
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        for h in s4.subgroups_all().unwrap() {
            let m = Representation::perm_module(&s4, &s4.coset_action(&h), f).unwrap();
            let parts = decompose(&m, 0).unwrap();
            check_decomposition(&m, &parts);
            let again = decompose(&m, 0).unwrap();
            assert_eq!(
                parts.iter().map(|p| p.idempotent()).collect::<Vec<_>>(),
                again.iter().map(|p| p.idempotent()).collect::<Vec<_>>()
            );
            for p in &parts {
                let sub = decompose(&p.rep, 0).unwrap();
                assert_eq!(sub.len(), 1);
            }
        }
    }

    #[test]
    fn isomorphism_tests() {
        let f = Field::gf2();
        let g = group(&["(0 1 2)", "(0 1)"], 3);
        let m = Representation::perm_module(&g, &GSet::natural(&g), f).unwrap();
        assert_eq!(modules_isomorphic(&m, &m, 0).unwrap(), IsoOutcome::Isomorphic);
        let parts = decompose(&m, 0).unwrap();
        let two = &parts[1].rep;
        // relabel the basis by a swap
        let swap = Matrix::from_fn(f, 2, 2, |i, j| (i != j) as u8);
        let moved = two.conjugate_by(&swap).unwrap();
        assert_eq!(modules_isomorphic(two, &moved, 0).unwrap(), IsoOutcome::Isomorphic);
        let k = Representation::trivial(&g, f);
        let c2 = group(&["(0 1)"], 2);
        assert_eq!(
            modules_isomorphic(&Representation::trivial(&c2, f), &Representation::regular(&c2, f).unwrap(), 0)
                .unwrap(),
            IsoOutcome::NotIsomorphic
        );
        let kk = k.direct_sum(&k).unwrap();
        assert_eq!(modules_isomorphic(&kk, two, 0).unwrap(), IsoOutcome::NotIsomorphic);
    }
}
