//! Finite permutation groups with fully enumerated element tables, their
//! subgroup-conjugacy-class registry, and finite G-sets.
//!
//! The intended scale is |G| ≤ 16 (the engine works over Gal(K/F) ≅ C2×C2 and
//! its subgroups), so every structure is enumerated eagerly at construction
//! and all values are immutable afterwards.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator image is not a permutation of 0..{degree}: {perm:?}")]
    InvalidPermutation { degree: usize, perm: Vec<usize> },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("unknown subgroup")]
    UnknownSubgroup,
}

/// Conjugacy class of subgroups. `rep` lists the element ids of the chosen
/// representative, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub rep: Vec<usize>,
    pub order: usize,
}

/// Index into a group's subgroup-class registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupId(pub usize);

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
    /// elements[mul[a][b]] = elements[a] ∘ elements[b]
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// generator word (indices into `generators`) realizing each element
    words: Vec<Vec<usize>>,
    classes: Vec<SubgroupClass>,
    /// every subgroup (sorted element-id list) → its conjugacy class
    class_of_subgroup: HashMap<Vec<usize>, SubgroupId>,
    fingerprint: u64,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &i in p {
        if i >= degree || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        for g in &generators {
            if !is_permutation(g, degree) {
                return Err(GroupError::InvalidPermutation {
                    degree,
                    perm: g.clone(),
                });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let prod = compose(&elements[e], g);
                if !index.contains_key(&prod) {
                    let id = elements.len();
                    index.insert(prod.clone(), id);
                    elements.push(prod);
                    let mut w = words[e].clone();
                    w.push(gi);
                    words.push(w);
                    queue.push_back(id);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                mul[a][b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap())
            .collect();

        let (classes, class_of_subgroup) = enumerate_subgroup_classes(n, &mul, &inverse);

        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        degree.hash(&mut hasher);
        elements.hash(&mut hasher);
        let fingerprint = hasher.finish();

        Ok(PermGroup {
            degree,
            generators,
            elements,
            mul,
            inverse,
            words,
            classes,
            class_of_subgroup,
            fingerprint,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    pub fn element(&self, id: usize) -> &[usize] {
        &self.elements[id]
    }

    pub fn element_id(&self, perm: &[usize]) -> Option<usize> {
        self.elements.iter().position(|e| e == perm)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn word(&self, id: usize) -> &[usize] {
        &self.words[id]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, id: SubgroupId) -> &SubgroupClass {
        &self.classes[id.0]
    }

    pub fn trivial_class(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn full_class(&self) -> SubgroupId {
        SubgroupId(self.classes.len() - 1)
    }

    /// Conjugacy class of a subgroup given by its (closed) element-id set.
    pub fn class_of(&self, elements: &[usize]) -> Result<SubgroupId, GroupError> {
        let mut key: Vec<usize> = elements.to_vec();
        key.sort_unstable();
        key.dedup();
        self.class_of_subgroup
            .get(&key)
            .copied()
            .ok_or(GroupError::UnknownSubgroup)
    }

    /// Subgroup generated by a set of element ids, then classified.
    pub fn class_of_generated(&self, gens: &[usize]) -> Result<SubgroupId, GroupError> {
        let closed = self.close_subset(gens);
        self.class_of(&closed)
    }

    fn close_subset(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(0);
        loop {
            let mut grew = false;
            let cur: Vec<usize> = set.iter().copied().collect();
            for &a in &cur {
                for &b in &cur {
                    if set.insert(self.mul[a][b]) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        set.into_iter().collect()
    }

    /// Cyclic subgroup class ⟨g⟩.
    pub fn cyclic_class(&self, g: usize) -> SubgroupId {
        self.class_of_generated(&[g])
            .expect("cyclic subgroup is always registered")
    }

    /// The representative subgroup of a class, as a standalone permutation
    /// group acting on the same index set (generated by all its elements).
    pub fn subgroup_group(&self, id: SubgroupId) -> PermGroup {
        let gens: Vec<Vec<usize>> = self.classes[id.0]
            .rep
            .iter()
            .map(|&e| self.elements[e].clone())
            .collect();
        PermGroup::new(self.degree, gens).expect("subgroup elements are valid permutations")
    }

    /// Identify an element of `sub` (a subgroup_group of self) in self's table.
    pub fn parent_element_id(&self, sub: &PermGroup, sub_elem: usize) -> usize {
        self.element_id(sub.element(sub_elem))
            .expect("subgroup element lies in parent")
    }

    /// Map a subgroup class of `sub` to the class of the same subgroup in self.
    pub fn parent_class(&self, sub: &PermGroup, id: SubgroupId) -> SubgroupId {
        let elems: Vec<usize> = sub
            .class(id)
            .rep
            .iter()
            .map(|&e| self.parent_element_id(sub, e))
            .collect();
        self.class_of(&elems)
            .expect("subgroup of a subgroup is registered in the parent")
    }

    /// Left-coset G-set G/H for the representative H of the class.
    pub fn coset_gset(&self, id: SubgroupId) -> GSet {
        let h = &self.classes[id.0].rep;
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..self.order() {
            let mut coset: Vec<usize> = h.iter().map(|&x| self.mul[g][x]).collect();
            coset.sort_unstable();
            if seen.insert(coset.clone()) {
                cosets.push(coset);
            }
        }
        cosets.sort_by_key(|c| c[0]);
        let coset_index = |c: &Vec<usize>| cosets.iter().position(|x| x == c).unwrap();
        let gen_ids: Vec<usize> = self
            .generators
            .iter()
            .map(|g| self.element_id(g).expect("generator is an element"))
            .collect();
        let action: Vec<Vec<usize>> = gen_ids
            .iter()
            .map(|&g| {
                cosets
                    .iter()
                    .map(|c| {
                        let mut img: Vec<usize> = c.iter().map(|&x| self.mul[g][x]).collect();
                        img.sort_unstable();
                        coset_index(&img)
                    })
                    .collect()
            })
            .collect();
        GSet {
            size: cosets.len(),
            action,
            group_fp: self.fingerprint,
        }
    }

    /// Action permutation of an arbitrary element on a G-set, built from its
    /// generator word. The word g_{i1}·g_{i2}·…·g_{ik} acts by
    /// act(g_{i1}) ∘ act(g_{i2}) ∘ … ∘ act(g_{ik}).
    pub fn element_action(&self, gset: &GSet, elem: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..gset.size).collect();
        for &gi in &self.words[elem] {
            p = compose(&p, &gset.action[gi]);
        }
        p
    }
}

fn enumerate_subgroup_classes(
    n: usize,
    mul: &[Vec<usize>],
    inverse: &[usize],
) -> (Vec<SubgroupClass>, HashMap<Vec<usize>, SubgroupId>) {
    let close = |gens: &BTreeSet<usize>| -> Vec<usize> {
        let mut set = gens.clone();
        set.insert(0);
        loop {
            let mut grew = false;
            let cur: Vec<usize> = set.iter().copied().collect();
            for &a in &cur {
                for &b in &cur {
                    if set.insert(mul[a][b]) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        set.into_iter().collect()
    };

    let mut subgroups: BTreeSet<Vec<usize>> = BTreeSet::new();
    subgroups.insert(vec![0]);
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![0usize]]);
    while let Some(h) = queue.pop_front() {
        for x in 0..n {
            if h.binary_search(&x).is_err() {
                let mut gens: BTreeSet<usize> = h.iter().copied().collect();
                gens.insert(x);
                let bigger = close(&gens);
                if subgroups.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
    }

    // partition into conjugacy classes
    let mut remaining: BTreeSet<Vec<usize>> = subgroups.clone();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut members: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(h) = remaining.iter().next().cloned() {
        let mut class_members: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..n {
            let mut conj: Vec<usize> = h.iter().map(|&x| mul[mul[g][x]][inverse[g]]).collect();
            conj.sort_unstable();
            class_members.insert(conj);
        }
        for m in &class_members {
            remaining.remove(m);
        }
        let rep = class_members.iter().next().cloned().unwrap();
        reps.push(rep);
        members.push(class_members.into_iter().collect());
    }

    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| (reps[a].len(), &reps[a]).cmp(&(reps[b].len(), &reps[b])));

    let mut classes = Vec::new();
    let mut class_of_subgroup = HashMap::new();
    for (new_id, &old) in order.iter().enumerate() {
        classes.push(SubgroupClass {
            rep: reps[old].clone(),
            order: reps[old].len(),
        });
        for m in &members[old] {
            class_of_subgroup.insert(m.clone(), SubgroupId(new_id));
        }
    }
    (classes, class_of_subgroup)
}

/// A finite G-set: a carrier {0..size−1} with one permutation per group
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    size: usize,
    action: Vec<Vec<usize>>,
    group_fp: u64,
}

/// One orbit of a G-set: its points (ascending) and the conjugacy class of
/// the stabilizer of the smallest point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub stabilizer: SubgroupId,
}

impl GSet {
    /// Build from explicit generator actions, checking that they extend to a
    /// group action (the generator relations must hold on the carrier).
    pub fn new(group: &PermGroup, action: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if action.len() != group.num_generators() {
            return Err(GroupError::InvalidAction(format!(
                "expected {} generator actions, got {}",
                group.num_generators(),
                action.len()
            )));
        }
        let size = action.first().map_or(0, |a| a.len());
        for a in &action {
            if !is_permutation(a, size) {
                return Err(GroupError::InvalidAction(format!(
                    "action table {a:?} is not a permutation of 0..{size}"
                )));
            }
        }
        let gset = GSet {
            size,
            action,
            group_fp: group.fingerprint(),
        };
        // the word-built action must be a homomorphism on the whole table
        let acts: Vec<Vec<usize>> = (0..group.order())
            .map(|e| group.element_action(&gset, e))
            .collect();
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.multiply(a, b);
                if compose(&acts[a], &acts[b]) != acts[ab] {
                    return Err(GroupError::InvalidAction(
                        "generator relations are violated by the action".into(),
                    ));
                }
            }
        }
        Ok(gset)
    }

    pub fn empty(group: &PermGroup) -> Self {
        GSet {
            size: 0,
            action: vec![vec![]; group.num_generators()],
            group_fp: group.fingerprint(),
        }
    }

    /// The one-point G-set.
    pub fn point(group: &PermGroup) -> Self {
        GSet {
            size: 1,
            action: vec![vec![0]; group.num_generators()],
            group_fp: group.fingerprint(),
        }
    }

    /// n points with trivial action.
    pub fn trivial(group: &PermGroup, n: usize) -> Self {
        GSet {
            size: n,
            action: vec![(0..n).collect(); group.num_generators()],
            group_fp: group.fingerprint(),
        }
    }

    /// The regular G-set (left translation on the element table).
    pub fn regular(group: &PermGroup) -> Self {
        let action = (0..group.num_generators())
            .map(|gi| {
                let g = group
                    .element_id(&group.generators[gi].clone())
                    .expect("generator is an element");
                (0..group.order()).map(|e| group.multiply(g, e)).collect()
            })
            .collect();
        GSet {
            size: group.order(),
            action,
            group_fp: group.fingerprint(),
        }
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        assert_eq!(
            self.group_fp, other.group_fp,
            "G-sets over different groups"
        );
        assert_eq!(self.action.len(), other.action.len());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&x| x + self.size))
                    .collect()
            })
            .collect();
        GSet {
            size: self.size + other.size,
            action,
            group_fp: self.group_fp,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn group_fp(&self) -> u64 {
        self.group_fp
    }

    /// The product G-set with the diagonal action, points ordered
    /// lexicographically as (self, other).
    pub fn product(&self, other: &GSet) -> GSet {
        assert_eq!(
            self.group_fp, other.group_fp,
            "G-sets over different groups"
        );
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut table = Vec::with_capacity(self.size * other.size);
                for &ai in a {
                    for &bj in b {
                        table.push(ai * other.size + bj);
                    }
                }
                table
            })
            .collect();
        GSet {
            size: self.size * other.size,
            action,
            group_fp: self.group_fp,
        }
    }

    /// Relabel the carrier through a permutation (point i becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> GSet {
        assert!(is_permutation(perm, self.size));
        let mut inv = vec![0usize; self.size];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let action = self
            .action
            .iter()
            .map(|a| (0..self.size).map(|p| perm[a[inv[p]]]).collect())
            .collect();
        GSet {
            size: self.size,
            action,
            group_fp: self.group_fp,
        }
    }

    /// Restrict to a subgroup (given as a standalone group over the same
    /// index set) on a subset of points, re-indexed in ascending order.
    pub fn restrict_to(&self, parent: &PermGroup, sub: &PermGroup, points: &[usize]) -> GSet {
        let mut pts: Vec<usize> = points.to_vec();
        pts.sort_unstable();
        let pos = |p: usize| pts.binary_search(&p).expect("point in subset");
        let action: Vec<Vec<usize>> = (0..sub.num_generators())
            .map(|gi| {
                let gen_perm = sub.generators[gi].clone();
                let parent_id = parent
                    .element_id(&gen_perm)
                    .expect("subgroup generator lies in parent");
                let full = parent.element_action(self, parent_id);
                pts.iter().map(|&p| pos(full[p])).collect()
            })
            .collect();
        GSet {
            size: pts.len(),
            action,
            group_fp: sub.fingerprint(),
        }
    }
}

/// Orbit decomposition of a G-set, smallest point first. Stabilizers are
/// computed at the smallest point of each orbit and reported as conjugacy
/// classes.
pub fn orbit_decompose(group: &PermGroup, gset: &GSet) -> Result<Vec<Orbit>, GroupError> {
    if gset.group_fp != group.fingerprint() {
        return Err(GroupError::MixedGroups);
    }
    let acts: Vec<Vec<usize>> = (0..group.order())
        .map(|e| group.element_action(gset, e))
        .collect();
    let mut seen = vec![false; gset.size];
    let mut orbits = Vec::new();
    for start in 0..gset.size {
        if seen[start] {
            continue;
        }
        let mut points: BTreeSet<usize> = BTreeSet::new();
        let mut stab = Vec::new();
        for (e, act) in acts.iter().enumerate() {
            points.insert(act[start]);
            if act[start] == start {
                stab.push(e);
            }
        }
        for &p in &points {
            seen[p] = true;
        }
        let stabilizer = group.class_of(&stab)?;
        orbits.push(Orbit {
            points: points.into_iter().collect(),
            stabilizer,
        });
    }
    Ok(orbits)
}

/// Setwise stabilizer {g : g(S) = S} of a subset, as element ids.
pub fn setwise_stabilizer(group: &PermGroup, gset: &GSet, subset: &[usize]) -> Vec<usize> {
    let target: BTreeSet<usize> = subset.iter().copied().collect();
    (0..group.order())
        .filter(|&e| {
            let act = group.element_action(gset, e);
            subset.iter().map(|&p| act[p]).collect::<BTreeSet<_>>() == target
        })
        .collect()
}

/// Orbits of the group acting on all subsets of the carrier. Returns one
/// representative per orbit (the lexicographically smallest subset) together
/// with its setwise stabilizer element ids.
pub fn subset_orbits(group: &PermGroup, gset: &GSet) -> Vec<(Vec<usize>, Vec<usize>)> {
    let acts: Vec<Vec<usize>> = (0..group.order())
        .map(|e| group.element_action(gset, e))
        .collect();
    let n = gset.size;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if seen.contains(&subset) {
            continue;
        }
        let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stab = Vec::new();
        for (e, act) in acts.iter().enumerate() {
            let img: BTreeSet<usize> = subset.iter().map(|&p| act[p]).collect();
            let img: Vec<usize> = img.into_iter().collect();
            if img == subset {
                stab.push(e);
            }
            orbit.insert(img);
        }
        for s in &orbit {
            seen.insert(s.clone());
        }
        out.push((subset, stab));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn klein_four() -> PermGroup {
        PermGroup::new(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap()
    }

    #[test]
    fn klein_four_registry_order() {
        let g = klein_four();
        assert_eq!(g.order(), 4);
        // elements come out as [id, s1, s2, s1s2]
        assert_eq!(g.element(1), &[1, 0, 2, 3]);
        assert_eq!(g.element(2), &[0, 1, 3, 2]);
        assert_eq!(g.element(3), &[1, 0, 3, 2]);
        let reps: Vec<Vec<usize>> = g.classes().iter().map(|c| c.rep.clone()).collect();
        assert_eq!(
            reps,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![0, 1, 2, 3]
            ]
        );
    }

    #[test]
    fn regular_set_is_one_free_orbit() {
        let g = klein_four();
        let reg = GSet::regular(&g);
        let orbits = orbit_decompose(&g, &reg).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].points, vec![0, 1, 2, 3]);
        assert_eq!(orbits[0].stabilizer, g.trivial_class());
    }

    #[test]
    fn coset_set_stabilizers() {
        let g = klein_four();
        for id in 0..g.num_classes() {
            let sid = SubgroupId(id);
            let cs = g.coset_gset(sid);
            assert_eq!(cs.size() * g.class(sid).order, g.order());
            let orbits = orbit_decompose(&g, &cs).unwrap();
            assert_eq!(orbits.len(), 1);
            assert_eq!(orbits[0].stabilizer, sid);
        }
    }

    #[test]
    fn invalid_action_rejected() {
        let g = klein_four();
        // s1 would act with order 3: relations violated
        let bad = GSet::new(&g, vec![vec![1, 2, 0], vec![0, 1, 2]]);
        assert!(matches!(bad, Err(GroupError::InvalidAction(_))));
        let not_perm = GSet::new(&g, vec![vec![0, 0], vec![0, 1]]);
        assert!(matches!(not_perm, Err(GroupError::InvalidAction(_))));
    }

    #[test]
    fn subgroup_group_roundtrip() {
        let g = klein_four();
        let sid = g.class_of_generated(&[1]).unwrap(); // ⟨s1⟩
        let sub = g.subgroup_group(sid);
        assert_eq!(sub.order(), 2);
        assert_eq!(g.parent_class(&sub, sub.full_class()), sid);
        assert_eq!(g.parent_class(&sub, sub.trivial_class()), g.trivial_class());
    }

    #[test]
    fn nonabelian_words_act_correctly() {
        // S3 on three letters, generated by a transposition and a 3-cycle
        let g = PermGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        let natural = GSet::new(&g, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        for e in 0..6 {
            assert_eq!(g.element_action(&natural, e), g.element(e).to_vec());
        }
        let orbits = orbit_decompose(&g, &natural).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(g.class(orbits[0].stabilizer).order, 2);
    }

    #[test]
    fn relabel_preserves_orbit_structure() {
        let g = klein_four();
        let cs = g
            .coset_gset(SubgroupId(1))
            .disjoint_union(&g.coset_gset(SubgroupId(2)));
        let relabeled = cs.relabel(&[2, 0, 3, 1]);
        let a = orbit_decompose(&g, &cs).unwrap();
        let b = orbit_decompose(&g, &relabeled).unwrap();
        let stab = |v: &Vec<Orbit>| {
            let mut s: Vec<SubgroupId> = v.iter().map(|o| o.stabilizer).collect();
            s.sort();
            s
        };
        assert_eq!(stab(&a), stab(&b));
    }
}
