//! Semidihedral 2-groups `SD_{2^n} = ⟨x, y | x^{2^{n-1}} = y² = 1, y⁻¹xy = x^{2^{n-2}-1}⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::harness::{Check, Report};
use crate::perm::Perm;

/// Isomorphism type of a subgroup of a semidihedral group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupType {
    Trivial,
    Cyclic,
    Klein,
    Dihedral,
    Quaternion,
    Semidihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupClass {
    pub tag: SubgroupType,
    pub order: usize,
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order;
        match self.tag {
            SubgroupType::Trivial => write!(f, "1"),
            SubgroupType::Cyclic => write!(f, "C{n}"),
            SubgroupType::Klein => write!(f, "C2xC2"),
            SubgroupType::Dihedral => write!(f, "D{n}"),
            SubgroupType::Quaternion => write!(f, "Q{n}"),
            SubgroupType::Semidihedral => write!(f, "SD{n}"),
        }
    }
}

/// Elements `x, y` of a group realizing the semidihedral presentation on a
/// subgroup of order `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SdFrame {
    pub n: u32,
    pub x: usize,
    pub y: usize,
}

impl SdFrame {
    pub fn order(&self) -> usize {
        1 << self.n
    }

    /// The central involution `x^{2^{n-2}}`.
    pub fn z(&self, g: &Group) -> usize {
        g.pow(self.x, 1 << (self.n - 2))
    }

    /// `x^i y` for any integer `i`.
    pub fn xi_y(&self, g: &Group, i: i64) -> usize {
        let m = 1i64 << (self.n - 1);
        let e = i.rem_euclid(m) as usize;
        g.mul(g.pow(self.x, e), self.y)
    }

    /// Whether `x, y` satisfy the defining relations in `g`.
    pub fn relations_hold(&self, g: &Group) -> bool {
        let half = 1usize << (self.n - 1);
        let m = (1usize << (self.n - 2)) - 1;
        g.element_order(self.x) == half
            && g.element_order(self.y) == 2
            && g.mul(g.mul(g.inv(self.y), self.x), self.y) == g.pow(self.x, m)
    }

    /// Evaluates a word such as `x^3y`, `xyx^-1` or `1`.
    pub fn word(&self, g: &Group, word: &str) -> Result<usize> {
        let w: String = word.chars().filter(|c| !c.is_whitespace()).collect();
        if w == "1" || w.is_empty() {
            return Ok(g.identity());
        }
        let chars: Vec<char> = w.chars().collect();
        let mut acc = g.identity();
        let mut i = 0;
        while i < chars.len() {
            let base = match chars[i] {
                'x' => self.x,
                'y' => self.y,
                'z' => self.z(g),
                c => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected '{c}' in word '{word}'"
                    )))
                }
            };
            i += 1;
            let mut exp: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                exp = s.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad exponent in word '{word}'"))
                })?;
            }
            let ord = g.element_order(base) as i64;
            let e = exp.rem_euclid(ord) as usize;
            acc = g.mul(acc, g.pow(base, e));
        }
        Ok(acc)
    }

    /// The subgroups named by the tags `z`, `klein`, `y`, `c4a`, `c4b`, `p`.
    pub fn tagged_subgroup(&self, g: &Group, tag: &str) -> Result<Subgroup> {
        let z = self.z(g);
        let gens = match tag {
            "z" => vec![z],
            "klein" => vec![z, self.y],
            "y" => vec![self.y],
            "c4a" => vec![g.pow(self.x, 1 << (self.n - 3))],
            "c4b" => vec![g.mul(self.x, self.y)],
            "p" => vec![self.x, self.y],
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown subgroup tag '{tag}' (expected z, klein, y, c4a, c4b or p)"
                )))
            }
        };
        Ok(g.subgroup(&gens))
    }
}

/// First `(x, y)` in element order presenting `p` as semidihedral, if any.
pub fn find_semidihedral_frame(g: &Group, p: &Subgroup) -> Option<SdFrame> {
    let order = p.order();
    if order < 16 || !order.is_power_of_two() {
        return None;
    }
    let n = order.trailing_zeros();
    let half = order / 2;
    let m = (1usize << (n - 2)) - 1;
    for &x in p.elements() {
        if g.element_order(x) != half {
            continue;
        }
        let xm = g.pow(x, m);
        let cyc = g.closure(&[x]);
        for &y in p.elements() {
            if cyc.binary_search(&y).is_ok() || g.element_order(y) != 2 {
                continue;
            }
            if g.mul(g.mul(y, x), y) == xm {
                return Some(SdFrame { n, x, y });
            }
        }
    }
    None
}

/// `SD_{2^n}` with its presentation generators.
#[derive(Clone, Debug)]
pub struct Semidihedral {
    group: Group,
    frame: SdFrame,
}

impl Semidihedral {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.frame.n
    }

    pub fn frame(&self) -> SdFrame {
        self.frame
    }

    pub fn x(&self) -> Perm {
        self.group.perm(self.frame.x)
    }

    pub fn y(&self) -> Perm {
        self.group.perm(self.frame.y)
    }

    pub fn z(&self) -> Perm {
        self.group.perm(self.frame.z(&self.group))
    }
}

/// `SD_{2^n}` acting on the `2^{n-1}` cosets of `⟨y⟩`, for `4 ≤ n ≤ 8`.
pub fn make_semidihedral(n: u32) -> Result<Semidihedral> {
    if !(4..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "semidihedral order 2^n needs 4 <= n <= 8, got n = {n}"
        )));
    }
    let d = 1u32 << (n - 1);
    let m = (1u32 << (n - 2)) - 1;
    let x = Perm::from_images((0..d).map(|i| (i + 1) % d).collect())?;
    let y = Perm::from_images((0..d).map(|i| i * m % d).collect())?;
    let group = Group::from_generators(vec![x.clone(), y.clone()])?;
    let frame = SdFrame {
        n,
        x: group.index_of(&x).expect("generator"),
        y: group.index_of(&y).expect("generator"),
    };
    if group.order() != 1 << n || !frame.relations_hold(&group) {
        return Err(Error::Internal(format!("SD_{} construction is wrong", 1 << n)));
    }
    Ok(Semidihedral { group, frame })
}

/// Isomorphism type of a 2-subgroup that is cyclic, Klein, dihedral,
/// generalized quaternion or semidihedral.
pub fn classify_subgroup(g: &Group, q: &Subgroup) -> Result<SubgroupClass> {
    let order = q.order();
    let class = |tag| Ok(SubgroupClass { tag, order });
    if order == 1 {
        return class(SubgroupType::Trivial);
    }
    let elems = q.elements();
    if elems.iter().any(|&a| g.element_order(a) == order) {
        return class(SubgroupType::Cyclic);
    }
    let abelian = q
        .generators()
        .iter()
        .all(|&a| q.generators().iter().all(|&b| g.commute(a, b)));
    if order == 4 && abelian {
        return class(SubgroupType::Klein);
    }
    if order >= 8 && !abelian && order.is_power_of_two() {
        let half = order / 2;
        // a cyclic subgroup of index 2 and an element outside it
        for &a in elems.iter().filter(|&&a| g.element_order(a) == half) {
            let cyc = g.closure(&[a]);
            let a_inv = g.inv(a);
            let a_sd = g.pow(a, half / 2 - 1);
            let a_half = g.pow(a, half / 2);
            for &b in elems.iter().filter(|&&b| cyc.binary_search(&b).is_err()) {
                let conj = g.conj(b, a);
                let b2 = g.mul(b, b);
                if conj == a_inv && b2 == g.identity() {
                    return class(SubgroupType::Dihedral);
                }
                if conj == a_inv && b2 == a_half {
                    return class(SubgroupType::Quaternion);
                }
                if order >= 16 && conj == a_sd && b2 == g.identity() {
                    return class(SubgroupType::Semidihedral);
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "subgroup of order {order} with generators {:?} matches no expected type",
        q.generators().iter().map(|&a| g.perm(a).to_string()).collect::<Vec<_>>()
    )))
}

fn describe(g: &Group, s: &Subgroup) -> String {
    let gens: Vec<String> = s.generators().iter().map(|&a| g.perm(a).to_string()).collect();
    format!("<{}>", gens.join(", "))
}

/// Checks the structural facts about `P = SD_{2^n}` used throughout.
pub fn structure_report(n: u32) -> Result<Report> {
    let sd = make_semidihedral(n)?;
    let g = sd.group();
    let f = sd.frame();
    let p = g.whole();
    let mut report = Report::new(format!("structure of SD{}", 1 << n), 0);
    report.assertions.push(Check::new("presentation relations hold", f.relations_hold(g)));

    let subs = g.subgroups_all()?;
    let maximal: Vec<&Subgroup> = subs.iter().filter(|s| s.order() == p.order() / 2).collect();
    let mut tags = maximal
        .iter()
        .map(|s| classify_subgroup(g, s))
        .collect::<Result<Vec<_>>>()?;
    tags.sort_by_key(|c| c.tag);
    let names: Vec<String> = tags.iter().map(|c| c.to_string()).collect();
    let tags_ok = tags.iter().map(|c| c.tag).collect::<Vec<_>>()
        == [SubgroupType::Cyclic, SubgroupType::Dihedral, SubgroupType::Quaternion];
    report.assertions.push(
        Check::new(
            "exactly three maximal subgroups: cyclic, dihedral, quaternion",
            maximal.len() == 3 && tags_ok,
        )
        .with_witness(names.join(", ")),
    );

    let kleins: Vec<&Subgroup> = subs
        .iter()
        .filter(|s| classify_subgroup(g, s).map(|c| c.tag) == Ok(SubgroupType::Klein))
        .collect();
    let one_class = kleins.iter().all(|k| g.are_conjugate(kleins[0], k).is_some());
    report.assertions.push(
        Check::new("Klein four subgroups form one P-class", !kleins.is_empty() && one_class)
            .with_witness(format!("{} Klein four subgroups", kleins.len())),
    );
    let self_centralizing = kleins.iter().all(|k| g.centralizer(k) == **k);
    report
        .assertions
        .push(Check::new("C_P(Q) = Q for Klein four Q", self_centralizing));

    let xy = g.subgroup(&[g.mul(f.x, f.y)]);
    report.assertions.push(
        Check::new("C_P(<xy>) = <xy>", g.centralizer(&xy) == xy)
            .with_witness(describe(g, &xy)),
    );

    let zg = g.subgroup(&[f.z(g)]);
    report.assertions.push(
        Check::new("Z(P) = <z> of order 2", g.center() == zg && zg.order() == 2)
            .with_witness(describe(g, &zg)),
    );

    let half = 1i64 << (n - 1);
    let bad: Vec<i64> = (0..half)
        .filter(|&i| (g.element_order(f.xi_y(g, i)) == 2) != (i % 2 == 0))
        .collect();
    let orders: Vec<usize> = (0..half.min(4)).map(|i| g.element_order(f.xi_y(g, i))).collect();
    report.assertions.push(
        Check::new("order(x^i y) = 2 iff i even, otherwise 4", bad.is_empty()
            && (0..half).all(|i| matches!(g.element_order(f.xi_y(g, i)), 2 | 4)))
        .with_witness(format!("orders of y, xy, x^2y, x^3y: {orders:?}")),
    );
    report.finalize();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sd16_basics() {
        let sd = make_semidihedral(4).unwrap();
        let g = sd.group();
        assert_eq!(g.order(), 16);
        assert_eq!(g.center().order(), 2);
        let f = sd.frame();
        assert_eq!(g.element_order(g.mul(f.x, f.y)), 4);
        assert_eq!(g.element_order(g.mul(g.pow(f.x, 2), f.y)), 2);
        assert_eq!(make_semidihedral(5).unwrap().group().order(), 32);
        assert!(make_semidihedral(3).is_err());
        assert!(make_semidihedral(9).is_err());
    }

    #[test]
    fn classification_examples() {
        let sd = make_semidihedral(4).unwrap();
        let (g, f) = (sd.group(), sd.frame());
        let z = f.z(g);
        let c = classify_subgroup(g, &g.subgroup(&[z])).unwrap();
        assert_eq!((c.tag, c.order), (SubgroupType::Cyclic, 2));
        let c = classify_subgroup(g, &g.subgroup(&[z, f.y])).unwrap();
        assert_eq!((c.tag, c.order), (SubgroupType::Klein, 4));
        let q8 = g.subgroup(&[g.pow(f.x, 2), g.mul(f.x, f.y)]);
        let c = classify_subgroup(g, &q8).unwrap();
        assert_eq!((c.tag, c.order), (SubgroupType::Quaternion, 8));
        let c = classify_subgroup(g, &g.whole()).unwrap();
        assert_eq!(c.tag, SubgroupType::Semidihedral);
    }

    #[test]
    fn only_whole_group_is_semidihedral() {
        for n in 4..=6 {
            let sd = make_semidihedral(n).unwrap();
            let g = sd.group();
            for s in g.subgroups_all().unwrap() {
                let c = classify_subgroup(g, &s).unwrap();
                assert_eq!(c.tag == SubgroupType::Semidihedral, s.order() == g.order());
            }
        }
    }

    #[test]
    fn classification_is_conjugation_invariant() {
        let sd = make_semidihedral(4).unwrap();
        let g = sd.group();
        for s in g.subgroups_all().unwrap() {
            let c = classify_subgroup(g, &s).unwrap();
            for h in 0..g.order() {
                assert_eq!(classify_subgroup(g, &g.conjugate_subgroup(h, &s)).unwrap(), c);
            }
        }
    }

    #[test]
    fn words_and_tags() {
        let sd = make_semidihedral(4).unwrap();
        let (g, f) = (sd.group(), sd.frame());
        assert_eq!(f.word(g, "x^8").unwrap(), g.identity());
        assert_eq!(f.word(g, "xy").unwrap(), g.mul(f.x, f.y));
        assert_eq!(f.word(g, "x^-1").unwrap(), g.inv(f.x));
        assert!(f.word(g, "xq").is_err());
        assert_eq!(f.tagged_subgroup(g, "klein").unwrap().order(), 4);
        assert_eq!(f.tagged_subgroup(g, "c4a").unwrap().order(), 4);
        assert_eq!(f.tagged_subgroup(g, "c4b").unwrap().order(), 4);
        assert!(f.tagged_subgroup(g, "nope").is_err());
        assert_eq!(find_semidihedral_frame(g, &g.whole()).map(|f| f.n), Some(4));
    }

    #[test]
    fn structure_reports_pass() {
        for n in 4..=6 {
            let r = structure_report(n).unwrap();
            assert!(r.verdict.is_pass(), "{}", r.summary());
        }
    }
}
