//! 2-nilpotency and the subgroups `H_Q ≤ N_G(Q)` in which `N_P(Q)` is Sylow
//! with 2-power index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_power_of_two, two_part, Group, Subgroup};
use crate::perm::Perm;

/// Whether `G` has a normal 2-complement.
pub fn is_two_nilpotent(g: &Group) -> bool {
    g.order() / g.o_odd().order() == two_part(g.order())
}

/// [`is_two_nilpotent`] for a subgroup of `g`.
pub fn is_two_nilpotent_in(g: &Group, s: &Subgroup) -> bool {
    if is_power_of_two(s.order()) {
        return true;
    }
    is_two_nilpotent(&g.as_group(s))
}

/// `O_{2'}(S)` as a subgroup of `g`.
pub fn o_odd_of(g: &Group, s: &Subgroup) -> Subgroup {
    let sg = g.as_group(s);
    let k = sg.o_odd();
    let elems: Vec<usize> = k.elements().iter().map(|&i| s.elements()[i]).collect();
    g.subgroup_from_elements(elems).expect("image of a subgroup")
}

/// A subgroup `H ≅ S_3` of `gq` containing the involution `t`, where `qbar`
/// is a normal 2-subgroup with `gq / qbar ≅ S_3` and `t ∉ qbar`.
pub fn s3_lift(gq: &Group, qbar: &Subgroup, t: usize) -> Result<Subgroup> {
    if !is_power_of_two(qbar.order()) || !gq.is_normal(qbar) || gq.order() != 6 * qbar.order() {
        return Err(Error::Precondition(
            "s3_lift needs a normal 2-subgroup of index 6".into(),
        ));
    }
    if gq.element_order(t) != 2 || qbar.contains(t) {
        return Err(Error::Precondition("t must be an involution outside Qbar".into()));
    }
    let t_inv = gq.inv(t);
    for a in 0..gq.order() {
        if gq.element_order(a) != 3 || gq.mul(gq.mul(t, a), t_inv) != gq.inv(a) {
            continue;
        }
        let h = gq.subgroup(&[a, t]);
        if h.order() == 6 {
            return Ok(h);
        }
    }
    Err(Error::Precondition(format!(
        "no S3 subgroup contains the involution {}",
        gq.perm(t)
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HQPath {
    /// `N_G(Q) / Q C_G(Q)` is a 2-group and `H_Q = O_{2'}(N_G(Q)) N_P(Q)`
    AutTwoGroup,
    /// `N_G(Q) / Q C_G(Q) ≅ S_3`, via an `S_3` lifted through `O_{2'}(QC_G(Q)) × Q`
    S3Lift,
    BruteForce,
}

#[derive(Clone, Debug)]
pub struct HQWitness {
    pub h_q: Subgroup,
    /// `N_P(Q)` is a Sylow 2-subgroup of `H_Q`
    pub sylow_check: bool,
    /// `|N_G(Q) : H_Q|`
    pub index: usize,
    pub path: HQPath,
    /// `|N_G(Q) : Q C_G(Q)|`
    pub quotient_order: usize,
    /// whether that quotient is a 2-group
    pub quotient_is_two_group: bool,
}

impl HQWitness {
    /// Recomputes the three defining properties.
    pub fn verify(&self, g: &Group, p: &Subgroup, q: &Subgroup) -> bool {
        let n = g.normalizer(q);
        let np = g.normalizer_in(p, q);
        np.is_subgroup_of(&self.h_q)
            && self.h_q.is_subgroup_of(&n)
            && two_part(self.h_q.order()) == np.order()
            && n.order() % self.h_q.order() == 0
            && is_power_of_two(n.order() / self.h_q.order())
            && self.index == n.order() / self.h_q.order()
    }
}

fn check_candidate(n: &Subgroup, np: &Subgroup, h: &Subgroup) -> bool {
    np.is_subgroup_of(h)
        && h.is_subgroup_of(n)
        && two_part(h.order()) == np.order()
        && is_power_of_two(n.order() / h.order())
}

/// Finds `H_Q` for `Q ≤ P ≤ G`, trying the constructive routes before a
/// search. Requires `C_G(Q)` to be 2-nilpotent.
pub fn find_hq(g: &Group, p: &Subgroup, q: &Subgroup) -> Result<HQWitness> {
    if !q.is_subgroup_of(p) {
        return Err(Error::InvalidArgument("Q must be a subgroup of P".into()));
    }
    let c = g.centralizer(q);
    if !is_two_nilpotent_in(g, &c) {
        return Err(Error::Precondition("C_G(Q) is not 2-nilpotent".into()));
    }
    let n = g.normalizer(q);
    let np = g.normalizer_in(p, q);
    let qc = g.join(q, &c);
    let quotient_order = n.order() / qc.order();
    let quotient_is_two_group = is_power_of_two(quotient_order);
    let witness = |h: Subgroup, path| HQWitness {
        sylow_check: two_part(h.order()) == np.order(),
        index: n.order() / h.order(),
        h_q: h,
        path,
        quotient_order,
        quotient_is_two_group,
    };

    if quotient_is_two_group {
        let k = o_odd_of(g, &n);
        let h = g.join(&k, &np);
        if check_candidate(&n, &np, &h) {
            return Ok(witness(h, HQPath::AutTwoGroup));
        }
    } else if quotient_order == 6 {
        if let Some(h) = s3_route(g, &n, &np, q, &qc)? {
            if check_candidate(&n, &np, &h) {
                return Ok(witness(h, HQPath::S3Lift));
            }
        }
    }
    match brute_force(g, &n, &np) {
        Some(h) => Ok(witness(h, HQPath::BruteForce)),
        None => Err(Error::Internal(format!(
            "no subgroup H_Q found (|N_G(Q)| = {}, |N_P(Q)| = {})",
            n.order(),
            np.order()
        ))),
    }
}

/// `L = O_{2'}(QC_G(Q)) Q`, pass to `N_G(Q)/L`, lift an `S_3` through the
/// image of `N_P(Q)` and take the preimage.
fn s3_route(
    g: &Group,
    n: &Subgroup,
    np: &Subgroup,
    q: &Subgroup,
    qc: &Subgroup,
) -> Result<Option<Subgroup>> {
    let k = o_odd_of(g, qc);
    let l = g.join(&k, q);
    let ng = g.as_group(n);
    let l_in_n = ng.localize(n, &l)?;
    let action = ng.coset_action(&l_in_n);
    let images: Vec<Perm> = (0..ng.order()).map(|i| action.image(&ng, i)).collect();
    let gq = Group::from_generators(action.generator_images().to_vec())?;
    let bar = |s: &Subgroup| -> Result<Subgroup> {
        let local = ng.localize(n, s)?;
        let mut elems: Vec<usize> = local
            .elements()
            .iter()
            .map(|&i| gq.index_of(&images[i]).expect("image lies in the quotient"))
            .collect();
        elems.sort_unstable();
        elems.dedup();
        gq.subgroup_from_elements(elems)
    };
    let qbar = bar(qc)?;
    let np_bar = bar(np)?;
    let Some(t) = np_bar
        .elements()
        .iter()
        .copied()
        .find(|&t| gq.element_order(t) == 2 && !qbar.contains(t))
    else {
        return Ok(None);
    };
    let h = match s3_lift(&gq, &qbar, t) {
        Ok(h) => h,
        Err(_) => return Ok(None),
    };
    let pre: Vec<usize> = (0..ng.order())
        .filter(|&i| h.contains(gq.index_of(&images[i]).expect("image lies in the quotient")))
        .map(|i| n.elements()[i])
        .collect();
    Ok(Some(g.subgroup_from_elements(pre)?))
}

/// Grows `N_P(Q)` by odd-order elements of `N_G(Q)` as long as the 2-part
/// stays `|N_P(Q)|`, trying every odd element as the first addition.
fn brute_force(g: &Group, n: &Subgroup, np: &Subgroup) -> Option<Subgroup> {
    let odd: Vec<usize> = n
        .elements()
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) % 2 == 1 && x != g.identity())
        .collect();
    if check_candidate(n, np, np) {
        return Some(np.clone());
    }
    for &first in &odd {
        let mut h = g.join(np, &g.subgroup(&[first]));
        if two_part(h.order()) != np.order() {
            continue;
        }
        for &x in &odd {
            if h.contains(x) {
                continue;
            }
            let bigger = g.join(&h, &g.subgroup(&[x]));
            if two_part(bigger.order()) == np.order() {
                h = bigger;
            }
        }
        if check_candidate(n, np, &h) {
            return Some(h);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str], degree: usize) -> Group {
        Group::from_generators(gens.iter().map(|s| Perm::parse_cycles(degree, s).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn small_groups() {
        assert!(is_two_nilpotent(&group(&["(0 1 2)", "(0 1)"], 3)));
        assert!(!is_two_nilpotent(&group(&["(0 1 2)", "(0 1)(2 3)"], 4)));
        assert!(is_two_nilpotent(&group(&["(0 1 2 3)", "(0 2)"], 4)));
        assert!(!is_two_nilpotent(&group(&["(0 1 2 3)", "(0 1)"], 4)));
        // C3 ⋊ C4 with odd normal part
        assert!(is_two_nilpotent(&group(&["(0 1 2)", "(1 2)(3 4 5 6)"], 7)));
    }

    #[test]
    fn s3_lift_examples() {
        let s3 = group(&["(0 1 2)", "(0 1)"], 3);
        let t = s3.index_of(&Perm::parse_cycles(3, "(1 2)").unwrap()).unwrap();
        let h = s3_lift(&s3, &s3.trivial(), t).unwrap();
        assert_eq!(h, s3.whole());

        // C2 × S3
        let g = group(&["(3 4)", "(0 1 2)", "(0 1)"], 5);
        let c2 = g.subgroup(&[g.index_of(&Perm::parse_cycles(5, "(3 4)").unwrap()).unwrap()]);
        let t = g.index_of(&Perm::parse_cycles(5, "(0 1)").unwrap()).unwrap();
        let h = s3_lift(&g, &c2, t).unwrap();
        assert_eq!(h.order(), 6);
        assert!(h.contains(t));

        // D12 on a hexagon, t a reflection outside the centre
        let d12 = group(&["(0 1 2 3 4 5)", "(1 5)(2 4)"], 6);
        let z = d12.center();
        let t = d12.index_of(&Perm::parse_cycles(6, "(1 5)(2 4)").unwrap()).unwrap();
        let h = s3_lift(&d12, &z, t).unwrap();
        let s3s: Vec<Subgroup> = d12
            .subgroups_all()
            .unwrap()
            .into_iter()
            .filter(|s| s.order() == 6 && s.contains(t) && d12.as_group(s).center().order() == 1)
            .collect();
        assert!(s3s.contains(&h));
    }

    #[test]
    fn hq_in_s4() {
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        let p = s4.sylow2();
        for q in s4.subgroups_of(&p).unwrap() {
            if !is_two_nilpotent_in(&s4, &s4.centralizer(&q)) {
                continue;
            }
            let w = find_hq(&s4, &p, &q).unwrap();
            assert!(w.verify(&s4, &p, &q));
        }
    }
}
