//! Fusion systems `F_P(G)` of conjugation maps between subgroups of `P`.
//!
//! Elements of `P` are addressed by their position in `P.elements()`, and a
//! map `Q → R` is stored as the table of images of `Q.elements()` in that
//! local numbering. Only isomorphisms onto their image are stored; every
//! morphism is an isomorphism followed by an inclusion.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Largest `|P|` accepted.
pub const MAX_FUSION_ORDER: usize = 512;

type Table = Vec<u32>;

#[derive(Clone, Debug)]
pub struct FusionSystem {
    group: Group,
    p: Subgroup,
    /// `P`'s multiplication table in local numbering
    p_mul: Vec<u32>,
    subgroups: Vec<Subgroup>,
    /// sorted local element lists of `subgroups`
    local: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    /// `isos[q][r]`: the maps of `Q` onto `R`
    isos: Vec<BTreeMap<usize, BTreeSet<Table>>>,
}

/// One failed saturation condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationWitness {
    pub subgroup: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub saturated: bool,
    pub witnesses: Vec<SaturationWitness>,
}

fn local_index(p: &Subgroup) -> HashMap<usize, u32> {
    p.elements().iter().enumerate().map(|(i, &g)| (g, i as u32)).collect()
}

impl FusionSystem {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn p(&self) -> &Subgroup {
        &self.p
    }

    /// Subgroups of `P` in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn index_of(&self, q: &Subgroup) -> Option<usize> {
        let pos = local_index(&self.p);
        let mut loc: Vec<u32> = q.elements().iter().map(|g| pos.get(g).copied()).collect::<Option<_>>()?;
        loc.sort_unstable();
        self.lookup.get(&loc).copied()
    }

    fn idx(&self, q: &Subgroup) -> Result<usize> {
        self.index_of(q)
            .ok_or_else(|| Error::InvalidArgument("subgroup is not contained in P".into()))
    }

    fn lmul(&self, a: u32, b: u32) -> u32 {
        self.p_mul[a as usize * self.p.order() + b as usize]
    }

    fn linv(&self, a: u32) -> u32 {
        (0..self.p.order() as u32)
            .find(|&b| self.lmul(a, b) == 0)
            .expect("group element has an inverse")
    }

    /// Isomorphisms of `Q` onto `R`, as image tables.
    pub fn isomorphisms(&self, q: &Subgroup, r: &Subgroup) -> Result<Vec<Vec<u32>>> {
        let (qi, ri) = (self.idx(q)?, self.idx(r)?);
        Ok(self.isos[qi].get(&ri).map(|s| s.iter().cloned().collect()).unwrap_or_default())
    }

    /// All morphisms `Q → R`.
    pub fn homs(&self, q: &Subgroup, r: &Subgroup) -> Result<BTreeSet<Vec<u32>>> {
        let (qi, ri) = (self.idx(q)?, self.idx(r)?);
        let rset: BTreeSet<u32> = self.local[ri].iter().copied().collect();
        let mut out = BTreeSet::new();
        for (&t, maps) in &self.isos[qi] {
            if self.local[t].iter().all(|x| rset.contains(x)) {
                out.extend(maps.iter().cloned());
            }
        }
        Ok(out)
    }

    /// `Aut_F(Q)`.
    pub fn automorphisms(&self, q: &Subgroup) -> Result<Vec<Vec<u32>>> {
        self.isomorphisms(q, q)
    }

    /// Indices of the subgroups `F`-conjugate to subgroup `qi`.
    fn class_of(&self, qi: usize) -> Vec<usize> {
        self.isos[qi].keys().copied().collect()
    }

    /// The `F`-conjugacy class of `q`, in canonical order.
    pub fn class(&self, q: &Subgroup) -> Result<Vec<Subgroup>> {
        Ok(self.class_of(self.idx(q)?).into_iter().map(|i| self.subgroups[i].clone()).collect())
    }

    fn np_order(&self, qi: usize) -> usize {
        self.group.normalizer_in(&self.p, &self.subgroups[qi]).order()
    }

    /// `|N_P(Q)| ≥ |N_P(Q')|` for every `Q'` that is `F`-conjugate to `Q`.
    pub fn is_fully_normalized(&self, q: &Subgroup) -> Result<bool> {
        let qi = self.idx(q)?;
        let own = self.np_order(qi);
        Ok(self.class_of(qi).into_iter().all(|r| self.np_order(r) <= own))
    }

    /// One fully normalized subgroup per `F`-class: among the maximizers of
    /// `|N_P(Q)|`, the first in canonical order.
    pub fn fully_normalized_representatives(&self) -> Vec<Subgroup> {
        let mut done = vec![false; self.subgroups.len()];
        let mut out = Vec::new();
        for qi in 0..self.subgroups.len() {
            if done[qi] {
                continue;
            }
            let class = self.class_of(qi);
            let mut best = class[0];
            let mut best_n = self.np_order(best);
            for &r in &class {
                done[r] = true;
                let n = self.np_order(r);
                if n > best_n {
                    best = r;
                    best_n = n;
                }
            }
            out.push(self.subgroups[best].clone());
        }
        out
    }

    /// Conjugation by `x ∈ N_P(Q)` restricted to `Q`.
    fn inner_table(&self, qi: usize, x: u32) -> Table {
        let xi = self.linv(x);
        self.local[qi].iter().map(|&a| self.lmul(self.lmul(x, a), xi)).collect()
    }

    /// `Aut_P(Q)` as tables.
    fn aut_p(&self, qi: usize) -> BTreeSet<Table> {
        let set: BTreeSet<u32> = self.local[qi].iter().copied().collect();
        (0..self.p.order() as u32)
            .filter(|&x| {
                let xi = self.linv(x);
                self.local[qi].iter().all(|&a| set.contains(&self.lmul(self.lmul(x, a), xi)))
            })
            .map(|x| self.inner_table(qi, x))
            .collect()
    }

    fn position_in(&self, qi: usize, a: u32) -> usize {
        self.local[qi].binary_search(&a).expect("element of the subgroup")
    }

    /// `ψ ∘ φ` for `φ: Q → R` and `ψ` defined on `R`.
    fn compose(&self, ri: usize, psi: &[u32], phi: &[u32]) -> Table {
        phi.iter().map(|&a| psi[self.position_in(ri, a)]).collect()
    }

    fn inverse_table(&self, qi: usize, phi: &[u32]) -> Table {
        let mut pairs: Vec<(u32, u32)> =
            phi.iter().zip(&self.local[qi]).map(|(&img, &src)| (img, src)).collect();
        pairs.sort_unstable();
        pairs.into_iter().map(|(_, src)| src).collect()
    }

    fn target_of(&self, phi: &[u32]) -> Option<usize> {
        let mut img = phi.to_vec();
        img.sort_unstable();
        self.lookup.get(&img).copied()
    }

    /// Structural checks: maps are injective homomorphisms, `Aut_P(Q) ⊆
    /// Aut_F(Q)`, and the maps are closed under inverses and composition.
    fn structural_witnesses(&self) -> Vec<SaturationWitness> {
        let mut out = Vec::new();
        for qi in 0..self.subgroups.len() {
            let elems = &self.local[qi];
            for (&ri, maps) in &self.isos[qi] {
                for phi in maps {
                    let hom = elems.iter().enumerate().all(|(i, &a)| {
                        elems.iter().enumerate().all(|(j, &b)| {
                            let k = self.position_in(qi, self.lmul(a, b));
                            phi[k] == self.lmul(phi[i], phi[j])
                        })
                    });
                    if !hom || self.target_of(phi) != Some(ri) {
                        out.push(SaturationWitness {
                            subgroup: qi,
                            reason: format!("map {phi:?} is not an isomorphism onto subgroup {ri}"),
                        });
                        continue;
                    }
                    let inv = self.inverse_table(qi, phi);
                    if !self.isos[ri].get(&qi).is_some_and(|s| s.contains(&inv)) {
                        out.push(SaturationWitness {
                            subgroup: qi,
                            reason: format!("inverse of {phi:?} is missing"),
                        });
                    }
                    for (&ti, next) in &self.isos[ri] {
                        for psi in next {
                            let c = self.compose(ri, psi, phi);
                            if !self.isos[qi].get(&ti).is_some_and(|s| s.contains(&c)) {
                                out.push(SaturationWitness {
                                    subgroup: qi,
                                    reason: format!("composite {psi:?} o {phi:?} is missing"),
                                });
                            }
                        }
                    }
                }
            }
            let auts = self.isos[qi].get(&qi).cloned().unwrap_or_default();
            if let Some(missing) = self.aut_p(qi).into_iter().find(|t| !auts.contains(t)) {
                out.push(SaturationWitness {
                    subgroup: qi,
                    reason: format!("inner automorphism {missing:?} is missing from Aut_F"),
                });
            }
        }
        out
    }

    /// `Aut_P(Q)` is a Sylow 2-subgroup of `Aut_F(Q)`.
    fn fully_automized(&self, qi: usize) -> std::result::Result<(), String> {
        let aut_f = self.isos[qi].get(&qi).map_or(0, BTreeSet::len);
        let aut_p = self.aut_p(qi).len();
        if aut_f == 0 || crate::group::two_part(aut_f) != aut_p {
            return Err(format!("|Aut_P(Q)| = {aut_p} but |Aut_F(Q)| = {aut_f}"));
        }
        Ok(())
    }

    /// Every `φ: R → Q` extends to `N_φ`.
    fn receptive(&self, qi: usize) -> std::result::Result<(), String> {
        let aut_p_q = self.aut_p(qi);
        for ri in self.class_of(qi) {
            let Some(maps) = self.isos[ri].get(&qi) else { continue };
            let r_set: BTreeSet<u32> = self.local[ri].iter().copied().collect();
            let np_r: Vec<u32> = (0..self.p.order() as u32)
                .filter(|&x| {
                    let xi = self.linv(x);
                    self.local[ri].iter().all(|&a| r_set.contains(&self.lmul(self.lmul(x, a), xi)))
                })
                .collect();
            for phi in maps {
                let phi_inv = self.inverse_table(ri, phi);
                // x ∈ N_P(R) with φ c_x φ⁻¹ ∈ Aut_P(Q)
                let n_phi: Vec<u32> = np_r
                    .iter()
                    .copied()
                    .filter(|&x| {
                        let cx = self.inner_table(ri, x);
                        let t = self.compose(ri, phi, &self.compose(ri, &cx, &phi_inv));
                        aut_p_q.contains(&t)
                    })
                    .collect();
                let Some(&ni) = self.lookup.get(&n_phi) else {
                    return Err(format!("N_phi for {phi:?} is not a subgroup"));
                };
                let positions: Vec<usize> =
                    self.local[ri].iter().map(|&a| self.position_in(ni, a)).collect();
                let extends = self.isos[ni].values().flatten().any(|psi| {
                    positions.iter().zip(phi).all(|(&k, &img)| psi[k] == img)
                });
                if !extends {
                    return Err(format!(
                        "map {phi:?} from subgroup {ri} does not extend to N_phi (subgroup {ni})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Brute-force saturation test: structural sanity, then in every
    /// `F`-class some member that is fully automized and receptive.
    pub fn is_saturated(&self) -> Saturation {
        let mut witnesses = self.structural_witnesses();
        let mut done = vec![false; self.subgroups.len()];
        for qi in 0..self.subgroups.len() {
            if done[qi] {
                continue;
            }
            let class = self.class_of(qi);
            for &r in &class {
                done[r] = true;
            }
            let mut reasons = Vec::new();
            let good = class.iter().any(|&c| {
                match self.fully_automized(c).and_then(|_| self.receptive(c)) {
                    Ok(()) => true,
                    Err(e) => {
                        reasons.push(format!("subgroup {c}: {e}"));
                        false
                    }
                }
            });
            if !good {
                witnesses.push(SaturationWitness {
                    subgroup: qi,
                    reason: format!(
                        "no fully automized receptive member in the class of {}: {}",
                        describe(&self.group, &self.subgroups[qi]),
                        reasons.join("; ")
                    ),
                });
            }
        }
        Saturation {
            saturated: witnesses.is_empty(),
            witnesses,
        }
    }

    /// The same fusion data read through an isomorphism `φ: P → P'` onto
    /// `p2 ≤ g2`; `map[i]` is the local index in `p2` of `φ(P.elements()[i])`.
    pub fn transport(&self, g2: &Group, p2: &Subgroup, map: &[usize]) -> Result<FusionSystem> {
        let n = self.p.order();
        if p2.order() != n || map.len() != n {
            return Err(Error::InvalidArgument("identification has the wrong size".into()));
        }
        let mut seen = vec![false; n];
        for &m in map {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidArgument("identification is not a bijection".into()));
            }
        }
        let target = FusionSystem::skeleton(g2, p2)?;
        for a in 0..n {
            for b in 0..n {
                let ab = self.p_mul[a * n + b] as usize;
                if target.p_mul[map[a] * n + map[b]] as usize != map[ab] {
                    return Err(Error::InvalidArgument("identification is not a homomorphism".into()));
                }
            }
        }
        let relabel = |set: &[u32]| -> Vec<u32> {
            let mut v: Vec<u32> = set.iter().map(|&a| map[a as usize] as u32).collect();
            v.sort_unstable();
            v
        };
        let mut out = target;
        out.isos = vec![BTreeMap::new(); out.subgroups.len()];
        for qi in 0..self.subgroups.len() {
            let new_q = out.lookup[&relabel(&self.local[qi])];
            // tables in the new order of Q's elements
            let order: Vec<usize> = out.local[new_q]
                .iter()
                .map(|&a| {
                    let src = map.iter().position(|&m| m as u32 == a).expect("bijection") as u32;
                    self.position_in(qi, src)
                })
                .collect();
            for (&ri, maps) in &self.isos[qi] {
                let new_r = out.lookup[&relabel(&self.local[ri])];
                let entry = out.isos[new_q].entry(new_r).or_default();
                for phi in maps {
                    entry.insert(order.iter().map(|&k| map[phi[k] as usize] as u32).collect());
                }
            }
        }
        Ok(out)
    }

    /// Removes one stored map; for building deliberately broken fixtures.
    pub fn remove_map(&mut self, q: &Subgroup, r: &Subgroup, table: &[u32]) -> Result<bool> {
        let (qi, ri) = (self.idx(q)?, self.idx(r)?);
        Ok(self.isos[qi].get_mut(&ri).is_some_and(|s| s.remove(table)))
    }

    /// Local table of `Q → Q`, `a ↦ x a x⁻¹`, for `x ∈ P`.
    pub fn inner_map(&self, q: &Subgroup, x: usize) -> Result<Vec<u32>> {
        let qi = self.idx(q)?;
        let pos = local_index(&self.p);
        let lx = *pos.get(&x).ok_or_else(|| Error::InvalidArgument("x is not in P".into()))?;
        Ok(self.inner_table(qi, lx))
    }

    /// Subgroups, local numbering and multiplication table; no maps yet.
    fn skeleton(g: &Group, p: &Subgroup) -> Result<FusionSystem> {
        if p.order() > MAX_FUSION_ORDER {
            return Err(Error::resource("fusion system |P|", MAX_FUSION_ORDER));
        }
        if !p.order().is_power_of_two() {
            return Err(Error::InvalidArgument("P must be a 2-group".into()));
        }
        let pos = local_index(p);
        let n = p.order();
        let mut p_mul = Vec::with_capacity(n * n);
        for &a in p.elements() {
            for &b in p.elements() {
                p_mul.push(pos[&g.mul(a, b)]);
            }
        }
        let subgroups = g.subgroups_of(p)?;
        let local: Vec<Vec<u32>> = subgroups
            .iter()
            .map(|s| s.elements().iter().map(|e| pos[e]).collect())
            .collect();
        let lookup = local.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(FusionSystem {
            group: g.clone(),
            p: p.clone(),
            p_mul,
            isos: vec![BTreeMap::new(); subgroups.len()],
            subgroups,
            local,
            lookup,
        })
    }
}

fn describe(g: &Group, s: &Subgroup) -> String {
    let gens: Vec<String> = s.generators().iter().map(|&a| g.perm(a).to_string()).collect();
    format!("<{}>", gens.join(", "))
}

/// `F_P(G)` by scanning every `g ∈ G`.
pub fn fusion_system(g: &Group, p: &Subgroup) -> Result<FusionSystem> {
    let mut f = FusionSystem::skeleton(g, p)?;
    let pos = local_index(p);
    let found: Vec<BTreeMap<usize, BTreeSet<Table>>> = f
        .subgroups
        .par_iter()
        .map(|q| {
            let mut maps: BTreeMap<usize, BTreeSet<Table>> = BTreeMap::new();
            for x in 0..g.order() {
                let Some(table) = q
                    .elements()
                    .iter()
                    .map(|&a| pos.get(&g.conj(x, a)).copied())
                    .collect::<Option<Vec<u32>>>()
                else {
                    continue;
                };
                let mut img = table.clone();
                img.sort_unstable();
                let r = f.lookup[&img];
                maps.entry(r).or_default().insert(table);
            }
            maps
        })
        .collect();
    f.isos = found;
    Ok(f)
}

/// Whether two fusion systems over the same `P` have the same morphisms.
pub fn fusion_equal(a: &FusionSystem, b: &FusionSystem) -> Result<bool> {
    let same_p = a.p.order() == b.p.order()
        && a.p_mul == b.p_mul
        && a.group.degree() == b.group.degree()
        && a.p
            .elements()
            .iter()
            .zip(b.p.elements())
            .all(|(&x, &y)| a.group.element(x) == b.group.element(y));
    if !same_p {
        return Err(Error::InvalidArgument(
            "fusion systems are over different subgroups P".into(),
        ));
    }
    Ok(a.isos == b.isos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::semidihedral::make_semidihedral;

    fn group(gens: &[&str], degree: usize) -> Group {
        Group::from_generators(gens.iter().map(|s| Perm::parse_cycles(degree, s).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn inner_fusion_of_sd16() {
        let sd = make_semidihedral(4).unwrap();
        let g = sd.group();
        let p = g.whole();
        let f = fusion_system(g, &p).unwrap();
        let sat = f.is_saturated();
        assert!(sat.saturated, "{:?}", sat.witnesses);
        assert!(fusion_equal(&f, &f).unwrap());
        for q in f.subgroups() {
            // every map comes from an element of P, so Aut_F(Q) = Aut_P(Q)
            assert_eq!(f.automorphisms(q).unwrap().len(), f.aut_p(f.idx(q).unwrap()).len());
        }
        let reps = f.fully_normalized_representatives();
        for r in &reps {
            assert!(f.is_fully_normalized(r).unwrap());
        }
        assert!(f.is_fully_normalized(&p).unwrap());
        assert!(f.is_fully_normalized(&g.center()).unwrap());
    }

    #[test]
    fn s4_over_d8() {
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        let p = s4.sylow2();
        let f = fusion_system(&s4, &p).unwrap();
        assert!(f.is_saturated().saturated);
        let inner = fusion_system(&s4, &p).unwrap();
        assert!(fusion_equal(&f, &inner).unwrap());
        // F-conjugacy is an equivalence relation
        for q in f.subgroups() {
            let class = f.class(q).unwrap();
            assert!(class.contains(q));
            for r in &class {
                assert_eq!(f.class(r).unwrap(), class);
            }
        }
    }

    #[test]
    fn removing_a_map_breaks_saturation() {
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        let p = s4.sylow2();
        let mut f = fusion_system(&s4, &p).unwrap();
        let x = *p.elements().iter().find(|&&x| !s4.center().contains(x) && x != 0).unwrap();
        let t = f.inner_map(&p, x).unwrap();
        assert!(f.remove_map(&p, &p, &t).unwrap());
        let sat = f.is_saturated();
        assert!(!sat.saturated);
        assert!(!sat.witnesses.is_empty());
    }

    #[test]
    fn transport_along_identity() {
        let s4 = group(&["(0 1 2 3)", "(0 1)"], 4);
        let p = s4.sylow2();
        let f = fusion_system(&s4, &p).unwrap();
        let id: Vec<usize> = (0..p.order()).collect();
        let t = f.transport(&s4, &p, &id).unwrap();
        assert!(fusion_equal(&f, &t).unwrap());
        let swap: Vec<usize> = (0..p.order()).rev().collect();
        assert!(f.transport(&s4, &p, &swap).is_err());
    }
}
