//! Scott modules `Sc(G, H)`: the indecomposable summand of `F[G/H]` with a
//! nonzero `G`-fixed vector.

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::linalg::{Field, Matrix, Subspace, Vector};
use crate::modrep::{
    decompose, end_certificate, fixed_points, EndCertificate, Representation, Summand,
};

#[derive(Clone, Debug)]
pub struct ScottModule {
    pub summand: Summand,
    /// `F[G/H]`
    pub parent: Representation,
    pub subgroup: Subgroup,
    pub certificate: EndCertificate,
}

impl ScottModule {
    pub fn rep(&self) -> &Representation {
        &self.summand.rep
    }

    pub fn dim(&self) -> usize {
        self.summand.dim()
    }

    pub fn group(&self) -> &Group {
        self.parent.group()
    }

    /// Whether the orbit sum of `F[G/H]` lies in the summand.
    pub fn contains_orbit_sum(&self) -> bool {
        let ones = Vector::ones(self.parent.field(), self.parent.dim());
        self.summand.image().contains(&ones)
    }
}

fn has_fixed_points(rep: &Representation) -> Result<bool> {
    Ok(!fixed_points(rep, &rep.group().whole())?.is_zero())
}

/// `Sc(G, H)`, found by repeatedly splitting `F[G/H]` and keeping the part
/// with nonzero `G`-fixed points.
pub fn scott(g: &Group, h: &Subgroup, field: Field, seed: u64) -> Result<ScottModule> {
    let parent = Representation::perm_module(g, &g.coset_action(h), field)?;
    scott_in(&parent, h, seed)
}

/// The Scott summand of a given transitive permutation module.
pub(crate) fn scott_in(parent: &Representation, h: &Subgroup, seed: u64) -> Result<ScottModule> {
    let mut current = Summand::whole(parent);
    let mut seed = seed;
    loop {
        let (cert, alg, _) = end_certificate(&current.rep)?;
        if cert.is_local() {
            let out = ScottModule {
                summand: Summand {
                    certificate: Some(cert.clone()),
                    ..current
                },
                parent: parent.clone(),
                subgroup: h.clone(),
                certificate: cert,
            };
            if !out.contains_orbit_sum() {
                return Err(Error::Internal("Scott summand misses the orbit sum".into()));
            }
            return Ok(out);
        }
        if cert.residue_field_degree.is_some() {
            return Err(Error::Internal(
                "summand with trivial socle has a residue field larger than the base field".into(),
            ));
        }
        let Some((a, b)) = crate::modrep::find_split(alg.basis(), seed)? else {
            return Err(Error::Internal(format!(
                "no splitting endomorphism found (dim {}, End/J dim {})",
                current.dim(),
                cert.residue_dim
            )));
        };
        let (x, y) = current.split(&a, &b)?;
        match (has_fixed_points(&x.rep)?, has_fixed_points(&y.rep)?) {
            (true, false) => current = x,
            (false, true) => current = y,
            (fx, fy) => {
                return Err(Error::Internal(format!(
                    "fixed points must lie in exactly one summand, found ({fx}, {fy})"
                )))
            }
        }
        seed = seed.wrapping_mul(2).wrapping_add(1);
    }
}

/// `Sc(G, H)` via a full decomposition of `F[G/H]`: the unique summand whose
/// image contains the orbit sum.
pub fn scott_by_decomposition(g: &Group, h: &Subgroup, field: Field, seed: u64) -> Result<Summand> {
    let parent = Representation::perm_module(g, &g.coset_action(h), field)?;
    let parts = decompose(&parent, seed)?;
    let big = parts.first().map_or(field, |p| p.rep.field());
    let ones = Vector::ones(big, parent.dim());
    let mut hits = parts.into_iter().filter(|p| p.image().contains(&ones));
    let first = hits
        .next()
        .ok_or_else(|| Error::Internal("no summand contains the orbit sum".into()))?;
    if hits.next().is_some() {
        return Err(Error::Internal("two summands contain the orbit sum".into()));
    }
    Ok(first)
}

/// Whether `M` has a surjection onto the trivial module, i.e. nonzero
/// coinvariants `M / Σ_g (g - 1)M`.
pub fn has_trivial_top(m: &Representation) -> bool {
    let f = m.field();
    let d = m.dim();
    if d == 0 {
        return false;
    }
    let mut span = Subspace::zero(f, d);
    for a in m.generator_matrices() {
        let mut x = a.clone();
        x.add_scaled(1, &Matrix::identity(f, d)).expect("square");
        span = span.sum(&Subspace::column_space(&x)).expect("same space");
    }
    span.dim() < d
}

pub fn scott_has_trivial_top(s: &ScottModule) -> bool {
    has_trivial_top(s.rep())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(gens: &[&str], degree: usize) -> Group {
        Group::from_generators(gens.iter().map(|s| Perm::parse_cycles(degree, s).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn small_examples() {
        let f = Field::gf2();
        let s3 = group(&["(0 1 2)", "(0 1)"], 3);
        let whole = scott(&s3, &s3.whole(), f, 0).unwrap();
        assert_eq!(whole.dim(), 1);
        assert!(scott_has_trivial_top(&whole));
        let c2 = s3.subgroup(&[s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let sc = scott(&s3, &c2, f, 0).unwrap();
        assert_eq!(sc.dim(), 1);
        assert!(sc.contains_orbit_sum());
        // the 2-dimensional projective summand has no trivial quotient
        let m = Representation::perm_module(&s3, &s3.coset_action(&c2), f).unwrap();
        let parts = decompose(&m, 0).unwrap();
        assert!(!has_trivial_top(&parts[1].rep));
    }

    #[test]
    fn agrees_with_full_decomposition() {
        let f = Field::gf2();
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        for h in s4.subgroups_all().unwrap() {
            let a = scott(&s4, &h, f, 0).unwrap();
            let b = scott_by_decomposition(&s4, &h, f, 0).unwrap();
            assert_eq!(a.dim(), b.dim());
            assert!(scott_has_trivial_top(&a));
            // socle and top both contain the trivial module once
            let fixed = fixed_points(a.rep(), &s4.whole()).unwrap().dim();
            assert_eq!(fixed, 1);
        }
    }
}
