//! Finite permutation groups with full element enumeration.
//!
//! Elements are kept in lexicographic order of their image arrays, so the
//! identity is always element `0` and every "first found" search below is
//! deterministic. Subgroups are sorted lists of element indices into their
//! parent group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::{cycle_order, Perm};

/// Largest group the engine will enumerate.
pub const MAX_GROUP_ORDER: usize = 100_000;
/// Largest group `subgroups_all` accepts.
pub const MAX_SUBGROUP_LATTICE_ORDER: usize = 512;

#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Perm>,
    gen_idx: Vec<usize>,
    points: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    // element g = gen * parent along a BFS tree rooted at the identity
    words: OnceLock<Vec<(u32, u32)>>,
}

/// A subgroup, stored as sorted element indices of its parent group together
/// with a small generating set. Equality and ordering only look at the
/// element set: first by order, then lexicographically.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}
impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Position of `g` in the element list, used as a local label.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

/// Action of a group on a finite set, given by one permutation per group
/// generator. Coset actions also remember the coset of every element.
#[derive(Clone, Debug)]
pub struct GSet {
    degree: usize,
    gen_images: Vec<Perm>,
    cosets: Option<CosetData>,
}

#[derive(Clone, Debug)]
struct CosetData {
    reps: Vec<usize>,
    point_of: Vec<u32>,
}

impl GSet {
    /// The action of `group` on its own points.
    pub fn natural(group: &Group) -> GSet {
        GSet {
            degree: group.degree(),
            gen_images: group.generators().to_vec(),
            cosets: None,
        }
    }

    pub fn from_generator_images(group: &Group, gen_images: Vec<Perm>) -> Result<GSet> {
        if gen_images.len() != group.generators().len() {
            return Err(Error::InvalidArgument(
                "one image per group generator is required".into(),
            ));
        }
        let degree = gen_images.first().map_or(1, Perm::degree);
        if let Some(p) = gen_images.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        Ok(GSet {
            degree,
            gen_images,
            cosets: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.gen_images
    }

    /// Coset representatives (element indices), point `i` being `reps[i] H`.
    pub fn coset_representatives(&self) -> Option<&[usize]> {
        self.cosets.as_ref().map(|c| c.reps.as_slice())
    }

    /// Permutation of the points induced by element `g` of `group`.
    pub fn image(&self, group: &Group, g: usize) -> Perm {
        if let Some(c) = &self.cosets {
            let images: Vec<u32> = c
                .reps
                .iter()
                .map(|&r| c.point_of[group.mul(g, r)])
                .collect();
            return Perm::from_images_unchecked(images.into_boxed_slice());
        }
        let mut acc = Perm::identity(self.degree);
        for gen in group.word(g) {
            acc = self.gen_images[gen].compose(&acc).expect("same degree");
        }
        acc
    }

    /// Number of points fixed by every element of `q`.
    pub fn fixed_point_count(&self, group: &Group, q: &Subgroup) -> usize {
        let images: Vec<Perm> = q.generators().iter().map(|&g| self.image(group, g)).collect();
        (0..self.degree)
            .filter(|&i| images.iter().all(|p| p.apply(i) == i))
            .count()
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.inner.generators)
            .finish()
    }
}

impl Group {
    /// Enumerates the closure of `gens`.
    pub fn from_generators(gens: Vec<Perm>) -> Result<Group> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidArgument("at least one generator is required".into()));
        };
        let degree = first.degree();
        if let Some(p) = gens.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Box<[u32]>> = HashSet::new();
        let mut all: Vec<Box<[u32]>> = vec![id.images().into()];
        seen.insert(id.images().into());
        let mut head = 0;
        while head < all.len() {
            let cur = all[head].clone();
            head += 1;
            for g in &gens {
                let next: Box<[u32]> = cur.iter().map(|&j| g.images()[j as usize]).collect();
                if !seen.contains(&next) {
                    if all.len() >= MAX_GROUP_ORDER {
                        return Err(Error::resource("group closure", MAX_GROUP_ORDER));
                    }
                    seen.insert(next.clone());
                    all.push(next);
                }
            }
        }
        all.sort();
        Ok(Group::from_sorted(degree, gens, all))
    }

    /// Trusted constructor: `elements` is a sorted, closed set containing the
    /// closure of `gens`.
    fn from_sorted(degree: usize, gens: Vec<Perm>, elements: Vec<Box<[u32]>>) -> Group {
        let order = elements.len();
        let mut points = Vec::with_capacity(order * degree);
        let mut index = HashMap::with_capacity(order);
        let mut orders = Vec::with_capacity(order);
        for (i, e) in elements.into_iter().enumerate() {
            points.extend_from_slice(&e);
            orders.push(cycle_order(&e) as u32);
            index.insert(e, i as u32);
        }
        let mut data = GroupData {
            degree,
            gen_idx: Vec::new(),
            generators: gens,
            points,
            index,
            inverse: Vec::new(),
            orders,
            words: OnceLock::new(),
        };
        let mut buf = vec![0u32; degree];
        let mut inverse = Vec::with_capacity(order);
        for i in 0..order {
            let e = &data.points[i * degree..(i + 1) * degree];
            for (a, &b) in e.iter().enumerate() {
                buf[b as usize] = a as u32;
            }
            inverse.push(data.index[buf.as_slice()]);
        }
        data.inverse = inverse;
        data.gen_idx = data
            .generators
            .iter()
            .map(|g| data.index[g.images()] as usize)
            .collect();
        Group {
            inner: Arc::new(data),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.orders.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.inner.gen_idx
    }

    pub fn element(&self, i: usize) -> &[u32] {
        let d = self.inner.degree;
        &self.inner.points[i * d..(i + 1) * d]
    }

    pub fn perm(&self, i: usize) -> Perm {
        Perm::from_images_unchecked(self.element(i).into())
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index_of_images(p.images())
    }

    pub fn index_of_images(&self, images: &[u32]) -> Option<usize> {
        self.inner.index.get(images).map(|&i| i as usize)
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `a ∘ b` (apply `b` first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let d = self.inner.degree;
        let ea = self.element(a);
        let eb = self.element(b);
        if d <= 64 {
            let mut buf = [0u32; 64];
            for i in 0..d {
                buf[i] = ea[eb[i] as usize];
            }
            self.inner.index[&buf[..d]] as usize
        } else {
            let buf: Vec<u32> = eb.iter().map(|&j| ea[j as usize]).collect();
            self.inner.index[buf.as_slice()] as usize
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.inner.orders[a] as usize
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Generator indices `w` with `g = gens[w[0]] ∘ gens[w[1]] ∘ …` (empty for the identity).
    pub fn word(&self, g: usize) -> Vec<usize> {
        let words = self.inner.words.get_or_init(|| self.build_words());
        let mut out = Vec::new();
        let mut cur = g;
        while cur != 0 {
            let (parent, gen) = words[cur];
            out.push(gen as usize);
            cur = parent as usize;
        }
        out
    }

    fn build_words(&self) -> Vec<(u32, u32)> {
        let n = self.order();
        let mut words = vec![(u32::MAX, u32::MAX); n];
        words[0] = (0, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (k, &g) in self.inner.gen_idx.iter().enumerate() {
                let next = self.mul(g, cur);
                if next != 0 && words[next].0 == u32::MAX {
                    words[next] = (cur as u32, k as u32);
                    queue.push_back(next);
                }
            }
        }
        words
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
            gens: self.generator_indices().to_vec(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            elements: vec![0],
            gens: Vec::new(),
        }
    }

    /// Sorted element indices of `⟨gens⟩`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = HashSet::new();
        inside.insert(0usize);
        let mut all = vec![0usize];
        let mut head = 0;
        while head < all.len() {
            let cur = all[head];
            head += 1;
            for &g in gens {
                let next = self.mul(g, cur);
                if inside.insert(next) {
                    all.push(next);
                }
            }
        }
        all.sort_unstable();
        all
    }

    /// The subgroup generated by `gens`; redundant generators are dropped.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut kept = Vec::new();
        let mut current = vec![0usize];
        for &g in gens {
            if current.binary_search(&g).is_err() {
                kept.push(g);
                current = self.closure(&kept);
            }
        }
        Subgroup {
            elements: current,
            gens: kept,
        }
    }

    /// Wraps an element set that is already known to be a subgroup and picks
    /// a greedy generating set for it.
    pub fn subgroup_from_elements(&self, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        let sub = self.subgroup(&elements);
        if sub.elements != elements {
            return Err(Error::InvalidArgument(
                "element set is not closed under composition".into(),
            ));
        }
        Ok(sub)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a.gens.iter().chain(b.gens.iter()).copied().collect();
        self.subgroup(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = a.elements.iter().copied().filter(|&g| b.contains(g)).collect();
        self.subgroup(&elements)
    }

    /// `g S g⁻¹`.
    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = s.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup {
            elements,
            gens: s.gens.iter().map(|&x| self.conj(g, x)).collect(),
        }
    }

    pub fn normalizes(&self, g: usize, s: &Subgroup) -> bool {
        s.gens.iter().all(|&x| s.contains(self.conj(g, x)))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generator_indices().iter().all(|&g| self.normalizes(g, s))
    }

    /// `{g : gs = sg for all s ∈ S}` by element scan.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = (0..self.order())
            .filter(|&g| s.gens.iter().all(|&x| self.commute(g, x)))
            .collect();
        self.subgroup(&elements)
    }

    /// `{g : gSg⁻¹ = S}` by element scan.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = (0..self.order())
            .filter(|&g| self.normalizes(g, s))
            .collect();
        self.subgroup(&elements)
    }

    /// Centralizer of `s` inside the subgroup `within`.
    pub fn centralizer_in(&self, within: &Subgroup, s: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = within
            .elements
            .iter()
            .copied()
            .filter(|&g| s.gens.iter().all(|&x| self.commute(g, x)))
            .collect();
        self.subgroup(&elements)
    }

    /// Normalizer of `s` inside the subgroup `within`.
    pub fn normalizer_in(&self, within: &Subgroup, s: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = within
            .elements
            .iter()
            .copied()
            .filter(|&g| self.normalizes(g, s))
            .collect();
        self.subgroup(&elements)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// A Sylow 2-subgroup, grown one doubling at a time by the first element
    /// of `N_G(P) \ P` whose square lies in `P`.
    pub fn sylow2(&self) -> Subgroup {
        let target = two_part(self.order());
        let mut p = self.trivial();
        while p.order() < target {
            let next = (0..self.order()).find(|&g| {
                !p.contains(g) && p.contains(self.mul(g, g)) && self.normalizes(g, &p)
            });
            let g = next.expect("a 2-subgroup that is not Sylow has a proper normalizer overgroup");
            let mut gens = p.gens.clone();
            gens.push(g);
            p = self.subgroup(&gens);
        }
        p
    }

    /// The largest normal subgroup of odd order, `O_{2'}(G)`.
    ///
    /// Greedy: an odd-order element lies in `O_{2'}(G)` exactly when the normal
    /// closure of it together with the part found so far still has odd order.
    pub fn o_odd(&self) -> Subgroup {
        let mut current = self.trivial();
        let mut rejected = vec![false; self.order()];
        for g in 0..self.order() {
            if self.element_order(g) % 2 == 0 || rejected[g] || current.contains(g) {
                continue;
            }
            let mut gens = current.gens.clone();
            gens.push(g);
            match self.odd_normal_closure(&gens) {
                Some(n) => current = n,
                None => {
                    for h in 0..self.order() {
                        rejected[self.conj(h, g)] = true;
                    }
                }
            }
        }
        current
    }

    /// Normal closure of `gens`, or `None` as soon as an even-order element appears.
    fn odd_normal_closure(&self, gens: &[usize]) -> Option<Subgroup> {
        let mut gens = gens.to_vec();
        loop {
            let elements = self.closure_odd(&gens)?;
            let missing = gens.iter().find_map(|&s| {
                self.generator_indices()
                    .iter()
                    .map(|&h| self.conj(h, s))
                    .find(|c| elements.binary_search(c).is_err())
            });
            match missing {
                Some(c) => gens.push(c),
                None => return Some(self.subgroup(&elements)),
            }
        }
    }

    fn closure_odd(&self, gens: &[usize]) -> Option<Vec<usize>> {
        let mut inside = HashSet::new();
        inside.insert(0usize);
        let mut all = vec![0usize];
        let mut head = 0;
        while head < all.len() {
            let cur = all[head];
            head += 1;
            for &g in gens {
                let next = self.mul(g, cur);
                if inside.insert(next) {
                    if self.element_order(next) % 2 == 0 {
                        return None;
                    }
                    all.push(next);
                }
            }
        }
        all.sort_unstable();
        Some(all)
    }

    /// Left action on the cosets `gH`. Point 0 is `H`; the other points are
    /// numbered by the smallest element of their coset.
    pub fn coset_action(&self, h: &Subgroup) -> GSet {
        let mut point_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if point_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &x in &h.elements {
                point_of[self.mul(g, x)] = id;
            }
        }
        let gen_images = self
            .generator_indices()
            .iter()
            .map(|&g| {
                let images: Vec<u32> = reps.iter().map(|&r| point_of[self.mul(g, r)]).collect();
                Perm::from_images_unchecked(images.into_boxed_slice())
            })
            .collect();
        GSet {
            degree: reps.len(),
            gen_images,
            cosets: Some(CosetData { reps, point_of }),
        }
    }

    /// Some `g` with `gAg⁻¹ = B`, first in element order.
    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        (0..self.order()).find(|&g| a.gens.iter().all(|&x| b.contains(self.conj(g, x))))
    }

    /// Conjugacy is tested within the subgroup `within` only.
    pub fn are_conjugate_in(&self, within: &Subgroup, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        within
            .elements
            .iter()
            .copied()
            .find(|&g| a.gens.iter().all(|&x| b.contains(self.conj(g, x))))
    }

    /// Every subgroup, in canonical order (by order, then element list).
    pub fn subgroups_all(&self) -> Result<Vec<Subgroup>> {
        subgroups_of(self, &self.whole())
    }

    /// Every subgroup of `s` (which must have order at most 512).
    pub fn subgroups_of(&self, s: &Subgroup) -> Result<Vec<Subgroup>> {
        subgroups_of(self, s)
    }

    /// The subgroup `s` as a group in its own right. Element `i` of the result
    /// is element `s.elements()[i]` of `self`.
    pub fn as_group(&self, s: &Subgroup) -> Group {
        let gens: Vec<Perm> = if s.gens.is_empty() {
            vec![Perm::identity(self.degree())]
        } else {
            s.gens.iter().map(|&g| self.perm(g)).collect()
        };
        let elements: Vec<Box<[u32]>> = s.elements.iter().map(|&g| self.element(g).into()).collect();
        Group::from_sorted(self.degree(), gens, elements)
    }

    /// A subgroup `s ≤ n` of the parent group, re-expressed inside
    /// `self`, which must be `parent.as_group(n)`.
    pub fn localize(&self, n: &Subgroup, s: &Subgroup) -> Result<Subgroup> {
        let elems = s
            .elements
            .iter()
            .map(|&x| {
                n.position(x)
                    .ok_or_else(|| Error::InvalidArgument("subgroup is not inside n".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = s.gens.iter().map(|&x| n.position(x).expect("inside n")).collect();
        if self.order() != n.order() {
            return Err(Error::InvalidArgument("group does not match n".into()));
        }
        Ok(Subgroup { elements: elems, gens })
    }

    /// Re-expresses a subgroup of `other` (given by its elements' permutations)
    /// as a subgroup of `self`.
    pub fn translate(&self, other: &Group, s: &Subgroup) -> Result<Subgroup> {
        let map = |g: usize| {
            self.index_of_images(other.element(g)).ok_or_else(|| {
                Error::InvalidArgument("subgroup element is not in the target group".into())
            })
        };
        let elements = s.elements.iter().map(|&g| map(g)).collect::<Result<Vec<_>>>()?;
        let gens = s.gens.iter().map(|&g| map(g)).collect::<Result<Vec<_>>>()?;
        let mut sorted = elements;
        sorted.sort_unstable();
        Ok(Subgroup {
            elements: sorted,
            gens,
        })
    }

    /// Left coset representatives of `r` in `q`, the first element of each
    /// coset in element order.
    pub fn coset_reps(&self, q: &Subgroup, r: &Subgroup) -> Vec<usize> {
        let mut covered = HashSet::new();
        let mut reps = Vec::new();
        for &g in &q.elements {
            if covered.contains(&g) {
                continue;
            }
            reps.push(g);
            for &x in &r.elements {
                covered.insert(self.mul(g, x));
            }
        }
        reps
    }
}

/// Parses the group text format: a `degree d` line, then one generator per
/// line in 0-based cycle notation. Blank lines and `#` comments are ignored.
pub fn parse_group_text(text: &str) -> Result<Group> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: k + 1, msg };
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| err(format!("expected `degree d`, found {line:?}")))?;
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree {:?}", rest.trim())))?;
                if d == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(d);
            }
            Some(d) => gens.push(Perm::parse_cycles(d, line).map_err(|e| err(e.to_string()))?),
        }
    }
    let Some(d) = degree else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing `degree d` line".into(),
        });
    };
    if gens.is_empty() {
        gens.push(Perm::identity(d));
    }
    Group::from_generators(gens)
}

/// Largest power of two dividing `n`.
pub fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

pub fn is_power_of_two(n: usize) -> bool {
    n.is_power_of_two()
}

fn subgroups_of(group: &Group, s: &Subgroup) -> Result<Vec<Subgroup>> {
    let n = s.order();
    if n > MAX_SUBGROUP_LATTICE_ORDER {
        return Err(Error::resource("subgroup enumeration", MAX_SUBGROUP_LATTICE_ORDER));
    }
    // local multiplication table on positions within s
    let elems = &s.elements;
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = group.mul(elems[i], elems[j]);
            table[i * n + j] = s.position(k).expect("closed") as u16;
        }
    }
    let words = n.div_ceil(64);
    let close = |gens: &[usize]| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        bits[0] |= 1;
        let mut all = vec![0usize];
        let mut head = 0;
        while head < all.len() {
            let cur = all[head];
            head += 1;
            for &g in gens {
                let next = table[g * n + cur] as usize;
                if bits[next / 64] >> (next % 64) & 1 == 0 {
                    bits[next / 64] |= 1 << (next % 64);
                    all.push(next);
                }
            }
        }
        bits
    };
    let has = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;

    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut found: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    let mut cyclic: Vec<usize> = Vec::new();
    for g in 0..n {
        let bits = close(&[g]);
        if !seen.contains_key(&bits) {
            seen.insert(bits.clone(), found.len());
            found.push((bits, if g == 0 { vec![] } else { vec![g] }));
            if g != 0 {
                cyclic.push(g);
            }
        }
    }
    let mut head = 0;
    while head < found.len() {
        let (bits, gens) = found[head].clone();
        head += 1;
        for &c in &cyclic {
            if has(&bits, c) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(c);
            let joined = close(&g2);
            if !seen.contains_key(&joined) {
                seen.insert(joined.clone(), found.len());
                found.push((joined, g2));
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(bits, gens)| Subgroup {
            elements: (0..n).filter(|&i| has(&bits, i)).map(|i| elems[i]).collect(),
            gens: gens.into_iter().map(|i| elems[i]).collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `G × G'` acting on the disjoint union of the two point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    group: Group,
    left: Group,
    right: Group,
}

impl DirectProduct {
    pub fn new(left: &Group, right: &Group) -> Result<DirectProduct> {
        let total = left.order() * right.order();
        if total > MAX_GROUP_ORDER {
            return Err(Error::resource("direct product order", MAX_GROUP_ORDER));
        }
        let (dl, dr) = (left.degree(), right.degree());
        let degree = dl + dr;
        let mut elements = Vec::with_capacity(total);
        for a in 0..left.order() {
            for b in 0..right.order() {
                let mut e: Vec<u32> = left.element(a).to_vec();
                e.extend(right.element(b).iter().map(|&j| j + dl as u32));
                elements.push(e.into_boxed_slice());
            }
        }
        let gens: Vec<Perm> = left
            .generators()
            .iter()
            .map(|g| g.embed(0, degree))
            .chain(right.generators().iter().map(|g| g.embed(dl, degree)))
            .collect();
        Ok(DirectProduct {
            group: Group::from_sorted(degree, gens, elements),
            left: left.clone(),
            right: right.clone(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.right.order(), g % self.right.order())
    }

    pub fn embed_left(&self, s: &Subgroup) -> Subgroup {
        Subgroup {
            elements: s.elements.iter().map(|&a| self.pair(a, 0)).collect(),
            gens: s.gens.iter().map(|&a| self.pair(a, 0)).collect(),
        }
    }

    pub fn embed_right(&self, s: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = s.elements.iter().map(|&b| self.pair(0, b)).collect();
        elements.sort_unstable();
        Subgroup {
            elements,
            gens: s.gens.iter().map(|&b| self.pair(0, b)).collect(),
        }
    }

    /// `A × B` inside the product.
    pub fn product_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for &x in &a.elements {
            for &y in &b.elements {
                elements.push(self.pair(x, y));
            }
        }
        let gens: Vec<usize> = a
            .gens
            .iter()
            .map(|&x| self.pair(x, 0))
            .chain(b.gens.iter().map(|&y| self.pair(0, y)))
            .collect();
        Subgroup { elements, gens }
    }

    /// `{(u, ι(u)) : u ∈ P}` where `identification[i]` is the image in the right
    /// factor of `p.elements()[i]`. The identification must be an injective
    /// homomorphism.
    pub fn delta(&self, p: &Subgroup, identification: &[usize]) -> Result<Subgroup> {
        if identification.len() != p.order() {
            return Err(Error::InvalidArgument(
                "identification must list one image per element of P".into(),
            ));
        }
        let iota = |u: usize| identification[p.position(u).expect("element of P")];
        for &u in &p.elements {
            for &v in &p.elements {
                let uv = self.left.mul(u, v);
                if iota(uv) != self.right.mul(iota(u), iota(v)) {
                    return Err(Error::InvalidArgument(
                        "identification is not a homomorphism".into(),
                    ));
                }
            }
        }
        let mut images: Vec<usize> = identification.to_vec();
        images.sort_unstable();
        images.dedup();
        if images.len() != p.order() {
            return Err(Error::InvalidArgument("identification is not injective".into()));
        }
        let gens: Vec<usize> = p.gens.iter().map(|&u| self.pair(u, iota(u))).collect();
        let mut elements: Vec<usize> = p.elements.iter().map(|&u| self.pair(u, iota(u))).collect();
        elements.sort_unstable();
        Ok(Subgroup { elements, gens })
    }

    /// Image of a subgroup under the projection to the left factor.
    pub fn project_left(&self, s: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = s.elements.iter().map(|&g| self.split(g).0).collect();
        self.left.subgroup(&elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Group::from_generators(vec![Perm::from_images(images).unwrap()]).unwrap()
    }

    fn sym(n: usize) -> Group {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Group::from_generators(vec![
            Perm::from_images(cycle).unwrap(),
            Perm::parse_cycles(n, "(0 1)").unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn identity_group_has_order_one() {
        let g = Group::from_generators(vec![Perm::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.trivial(), g.whole());
    }

    #[test]
    fn elements_are_sorted_and_identity_first() {
        let g = sym(4);
        assert_eq!(g.order(), 24);
        assert!(g.perm(0).is_identity());
        for i in 1..g.order() {
            assert!(g.element(i - 1) < g.element(i));
        }
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            let w = g.word(i);
            let mut acc = Perm::identity(4);
            for k in w.iter().rev() {
                acc = g.generators()[*k].compose(&acc).unwrap();
            }
            assert_eq!(g.index_of(&acc), Some(i));
        }
    }

    #[test]
    fn closure_limit_is_enforced() {
        // S_9 has 362880 elements
        let cycle: Vec<u32> = (0..9u32).map(|i| (i + 1) % 9).collect();
        let err = Group::from_generators(vec![
            Perm::from_images(cycle).unwrap(),
            Perm::parse_cycles(9, "(0 1)").unwrap(),
        ])
        .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn centralizer_of_trivial_is_everything() {
        let g = sym(4);
        assert_eq!(g.centralizer(&g.trivial()), g.whole());
        assert_eq!(g.normalizer(&g.trivial()), g.whole());
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sym(3).sylow2().order(), 2);
        assert_eq!(sym(4).sylow2().order(), 8);
        assert_eq!(cyclic(12).sylow2().order(), 4);
    }

    #[test]
    fn o_odd_small_cases() {
        let s3 = sym(3);
        assert_eq!(s3.o_odd().order(), 3);
        assert_eq!(sym(4).o_odd().order(), 1);
        assert_eq!(cyclic(15).o_odd().order(), 15);
    }

    #[test]
    fn coset_action_shape() {
        let g = sym(4);
        let h = g.sylow2();
        let a = g.coset_action(&h);
        assert_eq!(a.degree() * h.order(), g.order());
        for x in 0..g.order() {
            let img = a.image(&g, x);
            assert_eq!(img.apply(0) == 0, h.contains(x));
        }
        let one = g.coset_action(&g.whole());
        assert_eq!(one.degree(), 1);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(cyclic(2).subgroups_all().unwrap().len(), 2);
        let v4 = Group::from_generators(vec![
            Perm::parse_cycles(4, "(0 1)").unwrap(),
            Perm::parse_cycles(4, "(2 3)").unwrap(),
        ])
        .unwrap();
        assert_eq!(v4.subgroups_all().unwrap().len(), 5);
        assert_eq!(sym(4).subgroups_all().unwrap().len(), 30);
    }

    #[test]
    fn subgroup_enumeration_bound() {
        let g = sym(6);
        assert!(g.subgroups_all().unwrap_err().is_resource());
    }

    #[test]
    fn direct_product_indices() {
        let a = sym(3);
        let b = cyclic(4);
        let dp = DirectProduct::new(&a, &b).unwrap();
        assert_eq!(dp.group().order(), 24);
        for x in 0..a.order() {
            for y in 0..b.order() {
                let g = dp.pair(x, y);
                let mut expect = a.element(x).to_vec();
                expect.extend(b.element(y).iter().map(|&j| j + 3));
                assert_eq!(dp.group().element(g), expect.as_slice());
                assert_eq!(dp.split(g), (x, y));
            }
        }
    }

    #[test]
    fn delta_rejects_non_homomorphism() {
        let a = sym(3);
        let dp = DirectProduct::new(&a, &a).unwrap();
        let whole = a.whole();
        let ident: Vec<usize> = whole.elements().to_vec();
        let d = dp.delta(&whole, &ident).unwrap();
        assert_eq!(d.order(), 6);
        assert_eq!(dp.delta(&a.trivial(), &[0]).unwrap().order(), 1);
        let mut bad = ident.clone();
        bad.swap(1, 2);
        assert!(dp.delta(&whole, &bad).is_err());
    }

    #[test]
    fn group_text_format() {
        let g = parse_group_text("# S4\ndegree 4\n\n(0 1 2 3)\n(0 1)  # transposition\n").unwrap();
        assert_eq!(g.order(), 24);
        let e = parse_group_text("degree 3\n(0 1 2)\n(0 5)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        assert!(matches!(parse_group_text("(0 1)\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(parse_group_text("degree 2\n").unwrap().order(), 1);
    }
}
