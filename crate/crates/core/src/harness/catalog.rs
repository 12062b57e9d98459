//! Built-in groups, each with a Sylow 2-subgroup whose isomorphism type is
//! checked on construction.

use crate::error::{Error, Result};
use crate::group::{parse_group_text, DirectProduct, Group, Subgroup};
use crate::perm::Perm;
use crate::semidihedral::{classify_subgroup, find_semidihedral_frame, make_semidihedral, SdFrame};

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub recipe: &'static str,
    pub order: usize,
    /// e.g. `SD16`, `C2xC2`, `SD16xSD16`, `1`
    pub sylow_type: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "sd16", recipe: "SD16 on 8 points", order: 16, sylow_type: "SD16" },
    CatalogEntry { name: "sd32", recipe: "SD32 on 16 points", order: 32, sylow_type: "SD32" },
    CatalogEntry { name: "sd64", recipe: "SD64 on 32 points", order: 64, sylow_type: "SD64" },
    CatalogEntry { name: "s3", recipe: "S3 on 3 points", order: 6, sylow_type: "C2" },
    CatalogEntry { name: "a4", recipe: "A4 on 4 points", order: 12, sylow_type: "C2xC2" },
    CatalogEntry { name: "c2xc2", recipe: "C2 x C2 on 4 points", order: 4, sylow_type: "C2xC2" },
    CatalogEntry { name: "q8", recipe: "Q8, regular action", order: 8, sylow_type: "Q8" },
    CatalogEntry { name: "gl23", recipe: "GL(2,3) on the 8 nonzero vectors of F_3^2", order: 48, sylow_type: "SD16" },
    CatalogEntry { name: "m11", recipe: "M11 on 11 points", order: 7920, sylow_type: "SD16" },
    CatalogEntry { name: "psl33", recipe: "PSL(3,3) on the 13 points of the projective plane", order: 5616, sylow_type: "SD16" },
    CatalogEntry { name: "gl23xgl23", recipe: "GL(2,3) x GL(2,3) on 16 points", order: 2304, sylow_type: "SD16xSD16" },
    CatalogEntry { name: "c3", recipe: "C3 on 3 points", order: 3, sylow_type: "1" },
    CatalogEntry { name: "sd16xc3", recipe: "SD16 x C3 on 11 points", order: 48, sylow_type: "SD16" },
];

/// A group with a chosen Sylow 2-subgroup and, when that is semidihedral,
/// presentation generators for it.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub group: Group,
    pub sylow: Subgroup,
    pub frame: Option<SdFrame>,
    pub product: Option<Box<ProductInfo>>,
}

#[derive(Clone, Debug)]
pub struct ProductInfo {
    pub dp: DirectProduct,
    pub left: CatalogGroup,
    pub right: CatalogGroup,
}

fn gens(degree: usize, cycles: &[&str]) -> Result<Group> {
    let perms = cycles
        .iter()
        .map(|c| Perm::parse_cycles(degree, c))
        .collect::<Result<Vec<_>>>()?;
    Group::from_generators(perms)
}

/// Matrices over `F_3` acting on the nonzero vectors of `F_3^k`, or on the
/// projective points (first nonzero coordinate 1) when `projective`.
fn matrix_group_f3(k: usize, mats: &[Vec<i64>], projective: bool) -> Result<Group> {
    let mut points: Vec<Vec<i64>> = Vec::new();
    for code in 1..3usize.pow(k as u32) {
        let v: Vec<i64> = (0..k).rev().map(|i| (code / 3usize.pow(i as u32) % 3) as i64).collect();
        if !projective || v.iter().find(|&&c| c != 0) == Some(&1) {
            points.push(v);
        }
    }
    let normalize = |v: Vec<i64>| -> Vec<i64> {
        if !projective {
            return v;
        }
        let lead = *v.iter().find(|&&c| c != 0).expect("nonzero vector");
        v.iter().map(|&c| c * lead % 3).collect()
    };
    let perms = mats
        .iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let w: Vec<i64> = (0..k)
                        .map(|i| (0..k).map(|j| m[i * k + j] * v[j]).sum::<i64>().rem_euclid(3))
                        .collect();
                    let w = normalize(w);
                    points.iter().position(|p| *p == w).expect("image is a point") as u32
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Group::from_generators(perms)
}

fn build_group(name: &str) -> Result<(Group, Option<SdFrame>)> {
    let sd = |n| -> Result<(Group, Option<SdFrame>)> {
        let s = make_semidihedral(n)?;
        Ok((s.group().clone(), Some(s.frame())))
    };
    let g = match name {
        "sd16" => return sd(4),
        "sd32" => return sd(5),
        "sd64" => return sd(6),
        "s3" => gens(3, &["(0 1 2)", "(0 1)"])?,
        "a4" => gens(4, &["(0 1 2)", "(0 1)(2 3)"])?,
        "c2xc2" => gens(4, &["(0 1)", "(2 3)"])?,
        "c3" => gens(3, &["(0 1 2)"])?,
        "q8" => gens(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"])?,
        "gl23" => matrix_group_f3(
            2,
            &[vec![1, 1, 0, 1], vec![1, 0, 1, 1], vec![2, 0, 0, 1]],
            false,
        )?,
        "m11" => gens(11, &["(0 1 2 3 4 5 6 7 8 9 10)", "(2 6 10 7)(3 9 4 5)"])?,
        "psl33" => {
            let mut mats = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut m = vec![0, 0, 0, 0, 0, 0, 0, 0, 0];
                        for d in 0..3 {
                            m[d * 3 + d] = 1;
                        }
                        m[i * 3 + j] = 1;
                        mats.push(m);
                    }
                }
            }
            matrix_group_f3(3, &mats, true)?
        }
        "sd16xc3" => {
            let s = make_semidihedral(4)?;
            let c3 = gens(3, &["(0 1 2)"])?;
            let dp = DirectProduct::new(s.group(), &c3)?;
            dp.group().clone()
        }
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok((g, None))
}

fn check_entry(entry: &CatalogEntry, cg: &CatalogGroup) -> Result<()> {
    if cg.group.order() != entry.order {
        return Err(Error::Internal(format!(
            "{} has order {}, expected {}",
            entry.name,
            cg.group.order(),
            entry.order
        )));
    }
    let found = sylow_type(cg)?;
    if found != entry.sylow_type {
        return Err(Error::Internal(format!(
            "{} has Sylow 2-subgroup {found}, expected {}",
            entry.name, entry.sylow_type
        )));
    }
    Ok(())
}

/// Isomorphism type of the Sylow 2-subgroup; semidihedral types are
/// confirmed by a relation search.
pub fn sylow_type(cg: &CatalogGroup) -> Result<String> {
    if let Some(p) = &cg.product {
        return Ok(format!("{}x{}", sylow_type(&p.left)?, sylow_type(&p.right)?));
    }
    if let Some(f) = &cg.frame {
        if f.relations_hold(&cg.group) && cg.group.subgroup(&[f.x, f.y]) == cg.sylow {
            return Ok(format!("SD{}", f.order()));
        }
    }
    Ok(classify_subgroup(&cg.group, &cg.sylow)?.to_string())
}

impl CatalogGroup {
    /// Wraps an arbitrary group, choosing the first Sylow 2-subgroup and a
    /// semidihedral frame for it when one exists.
    pub fn from_group(name: impl Into<String>, group: Group) -> CatalogGroup {
        let sylow = group.sylow2();
        let frame = find_semidihedral_frame(&group, &sylow);
        CatalogGroup {
            name: name.into(),
            group,
            sylow,
            frame,
            product: None,
        }
    }

    /// `G × G'` with both factors' data kept.
    pub fn product(left: &CatalogGroup, right: &CatalogGroup) -> Result<CatalogGroup> {
        let dp = DirectProduct::new(&left.group, &right.group)?;
        let sylow = dp.product_subgroup(&left.sylow, &right.sylow);
        Ok(CatalogGroup {
            name: format!("{}x{}", left.name, right.name),
            group: dp.group().clone(),
            sylow,
            frame: None,
            product: Some(Box::new(ProductInfo {
                dp,
                left: left.clone(),
                right: right.clone(),
            })),
        })
    }

    /// The frame of the Sylow subgroup, or an error naming the group.
    pub fn require_frame(&self) -> Result<SdFrame> {
        self.frame.ok_or_else(|| {
            Error::Precondition(format!("the Sylow 2-subgroup of {} is not semidihedral", self.name))
        })
    }

    /// Resolves a subgroup description:
    /// `sylow`, `1`, a tag (`z`, `klein`, `y`, `c4a`, `c4b`, `p`), a comma
    /// separated list of words in `x, y`, a `;` separated list of
    /// permutations in cycle notation, or for products `delta` /
    /// `delta:<spec>` for the diagonal copy of a subgroup of the left
    /// factor's Sylow 2-subgroup.
    pub fn subgroup(&self, spec: &str) -> Result<Subgroup> {
        let spec = spec.trim();
        let g = &self.group;
        if spec == "sylow" {
            return Ok(self.sylow.clone());
        }
        if spec == "1" || spec == "trivial" {
            return Ok(g.trivial());
        }
        if spec.starts_with('(') {
            let elems = spec
                .split(';')
                .map(|c| {
                    let p = Perm::parse_cycles(g.degree(), c)?;
                    g.index_of(&p).ok_or_else(|| {
                        Error::InvalidArgument(format!("{c} is not an element of {}", self.name))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(g.subgroup(&elems));
        }
        if let Some(info) = &self.product {
            let inner = match spec {
                "delta" => "p",
                s => s.strip_prefix("delta:").ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "subgroups of a product are given as delta, delta:<spec>, sylow or permutations; got {spec:?}"
                    ))
                })?,
            };
            let (ident_p, ident) = info.identification()?;
            let q = info.left.subgroup(inner)?;
            if !q.is_subgroup_of(&ident_p) {
                return Err(Error::InvalidArgument(format!(
                    "{inner} is not inside the Sylow 2-subgroup of {}",
                    info.left.name
                )));
            }
            let sub_ident: Vec<usize> = q
                .elements()
                .iter()
                .map(|&u| ident[ident_p.position(u).expect("inside P")])
                .collect();
            return info.dp.delta(&q, &sub_ident);
        }
        let frame = self.require_frame()?;
        if let Ok(s) = frame.tagged_subgroup(g, spec) {
            return Ok(s);
        }
        let elems = spec
            .split(',')
            .map(|w| frame.word(g, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(g.subgroup(&elems))
    }
}

impl ProductInfo {
    /// The Sylow subgroup of the left factor and, for each of its elements,
    /// the matching element of the right factor via the two frames.
    pub fn identification(&self) -> Result<(Subgroup, Vec<usize>)> {
        let ident = frame_identification(
            &self.left.group,
            self.left.require_frame()?,
            &self.right.group,
            self.right.require_frame()?,
        )?;
        Ok((self.left.sylow.clone(), ident))
    }
}

/// `x^i y^j ↦ x'^i y'^j`, listed in the element order of `⟨x, y⟩`.
pub fn frame_identification(g: &Group, f: SdFrame, g2: &Group, f2: SdFrame) -> Result<Vec<usize>> {
    if f.n != f2.n {
        return Err(Error::InvalidArgument(format!(
            "semidihedral groups of orders {} and {} cannot be identified",
            f.order(),
            f2.order()
        )));
    }
    let p = g.subgroup(&[f.x, f.y]);
    let mut ident = vec![usize::MAX; p.order()];
    let half = f.order() / 2;
    for i in 0..half {
        for j in 0..2 {
            let a = g.mul(g.pow(f.x, i), g.pow(f.y, j));
            let b = g2.mul(g2.pow(f2.x, i), g2.pow(f2.y, j));
            ident[p.position(a).expect("element of P")] = b;
        }
    }
    Ok(ident)
}

/// Builds a catalog group by name, verifying order and Sylow type.
pub fn catalog(name: &str) -> Result<CatalogGroup> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let cg = if name == "gl23xgl23" {
        let gl = catalog("gl23")?;
        CatalogGroup::product(&gl, &gl)?
    } else {
        let (group, frame) = build_group(name)?;
        let mut cg = CatalogGroup::from_group(name, group);
        if let Some(f) = frame {
            cg.sylow = cg.group.subgroup(&[f.x, f.y]);
            cg.frame = Some(f);
        }
        cg
    };
    check_entry(entry, &cg)?;
    Ok(cg)
}

/// A catalog name, or a path to a group file.
pub fn load_group(source: &str) -> Result<CatalogGroup> {
    if CATALOG.iter().any(|e| e.name == source) {
        return catalog(source);
    }
    let path = std::path::Path::new(source);
    if !path.exists() {
        return Err(Error::UnknownGroup(format!(
            "{source} (not a catalog name or an existing file)"
        )));
    }
    let text = std::fs::read_to_string(path)?;
    Ok(CatalogGroup::from_group(source, parse_group_text(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries_build() {
        for e in CATALOG.iter().filter(|e| e.order <= 2304) {
            let cg = catalog(e.name).unwrap();
            assert_eq!(cg.group.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn gl23_sylow_is_sd16() {
        let cg = catalog("gl23").unwrap();
        let f = cg.require_frame().unwrap();
        assert!(f.relations_hold(&cg.group));
        assert_eq!(cg.subgroup("z").unwrap(), cg.group.center());
        assert_eq!(cg.group.degree(), 8);
    }

    #[test]
    fn product_subgroups() {
        let cg = catalog("gl23xgl23").unwrap();
        assert_eq!(cg.subgroup("delta").unwrap().order(), 16);
        assert_eq!(cg.subgroup("delta:klein").unwrap().order(), 4);
        assert!(cg.subgroup("z").is_err());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(catalog("badname"), Err(Error::UnknownGroup(_))));
        assert!(matches!(load_group("badname"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn large_entries_build() {
        for name in ["m11", "psl33"] {
            let cg = catalog(name).unwrap();
            assert_eq!(sylow_type(&cg).unwrap(), "SD16");
        }
    }
}
