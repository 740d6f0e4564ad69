//! The Burnside ring of a finite group: integer combinations of transitive
//! G-sets in normal form, the table-of-marks homomorphism, and induction.
//!
//! Basis elements are indexed by the subgroup-class registry of the owning
//! group; the element [G/H] for the full subgroup H = G is the ring unit.

use std::collections::BTreeMap;

use crate::perm::{orbit_decompose, GSet, GroupError, PermGroup, SubgroupId};

/// Element of the Burnside ring in normal form (only nonzero coefficients are
/// stored, keyed by subgroup class in registry order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    coeffs: BTreeMap<SubgroupId, i64>,
    group_fp: u64,
}

/// Fixed-point counts at every subgroup class, in registry order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkVector(pub Vec<i64>);

impl std::fmt::Display for MarkVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

impl MarkVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }
}

impl BurnsideElement {
    pub fn zero(group: &PermGroup) -> Self {
        BurnsideElement {
            coeffs: BTreeMap::new(),
            group_fp: group.fingerprint(),
        }
    }

    pub fn basis(group: &PermGroup, id: SubgroupId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id, 1);
        BurnsideElement {
            coeffs,
            group_fp: group.fingerprint(),
        }
    }

    /// n · [G/G], the n-fold unit.
    pub fn constant(group: &PermGroup, n: i64) -> Self {
        let mut e = BurnsideElement::zero(group);
        if n != 0 {
            e.coeffs.insert(group.full_class(), n);
        }
        e
    }

    pub fn one(group: &PermGroup) -> Self {
        BurnsideElement::constant(group, 1)
    }

    pub fn from_coeffs(group: &PermGroup, coeffs: &[(SubgroupId, i64)]) -> Self {
        let mut e = BurnsideElement::zero(group);
        for &(id, n) in coeffs {
            e.add_term(id, n);
        }
        e
    }

    fn add_term(&mut self, id: SubgroupId, n: i64) {
        let entry = self.coeffs.entry(id).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.coeffs.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, id: SubgroupId) -> i64 {
        self.coeffs.get(&id).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (SubgroupId, i64)> + '_ {
        self.coeffs.iter().map(|(&id, &n)| (id, n))
    }

    pub fn group_fp(&self) -> u64 {
        self.group_fp
    }

    pub fn add(&self, other: &BurnsideElement) -> BurnsideElement {
        assert_eq!(self.group_fp, other.group_fp, "mixed groups");
        let mut out = self.clone();
        for (id, n) in other.terms() {
            out.add_term(id, n);
        }
        out
    }

    pub fn sub(&self, other: &BurnsideElement) -> BurnsideElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BurnsideElement {
        BurnsideElement {
            coeffs: self.coeffs.iter().map(|(&id, &n)| (id, -n)).collect(),
            group_fp: self.group_fp,
        }
    }

    pub fn scale(&self, k: i64) -> BurnsideElement {
        if k == 0 {
            return BurnsideElement {
                coeffs: BTreeMap::new(),
                group_fp: self.group_fp,
            };
        }
        BurnsideElement {
            coeffs: self.coeffs.iter().map(|(&id, &n)| (id, k * n)).collect(),
            group_fp: self.group_fp,
        }
    }

    /// Leading sign for canonical printing: the sign of the first nonzero
    /// coefficient in registry order, 0 for the zero element.
    pub fn first_sign(&self) -> i64 {
        self.coeffs.values().next().map_or(0, |&n| n.signum())
    }
}

/// Class of a G-set in the Burnside ring: one basis term per orbit.
/// Isomorphic G-sets give identical elements.
pub fn burnside_normal_form(group: &PermGroup, gset: &GSet) -> Result<BurnsideElement, GroupError> {
    let orbits = orbit_decompose(group, gset)?;
    let mut e = BurnsideElement::zero(group);
    for orbit in orbits {
        e.add_term(orbit.stabilizer, 1);
    }
    Ok(e)
}

/// Multiplication table of basis elements, realized by orbit decomposition of
/// the literal product G-set. Precomputed once per group by `MarkTable`.
#[derive(Debug, Clone)]
pub struct BurnsideTables {
    /// product[a][b] = normal form coefficients of [G/Ha]·[G/Hb]
    product: Vec<Vec<Vec<(SubgroupId, i64)>>>,
    /// marks[h][h'] = #fixed points of H acting on G/H'
    marks: Vec<Vec<i64>>,
    group_fp: u64,
}

impl BurnsideTables {
    pub fn new(group: &PermGroup) -> Self {
        let k = group.num_classes();
        let cosets: Vec<GSet> = (0..k).map(|i| group.coset_gset(SubgroupId(i))).collect();
        let mut product = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let prod = cosets[a].product(&cosets[b]);
                let nf =
                    burnside_normal_form(group, &prod).expect("product of valid G-sets is valid");
                product[a][b] = nf.terms().collect();
            }
        }
        let mut marks = vec![vec![0i64; k]; k];
        for (h, row) in marks.iter_mut().enumerate() {
            let subgroup = &group.class(SubgroupId(h)).rep.clone();
            for (hp, m) in row.iter_mut().enumerate() {
                *m = count_fixed_points(group, &cosets[hp], subgroup);
            }
        }
        BurnsideTables {
            product,
            marks,
            group_fp: group.fingerprint(),
        }
    }

    pub fn mul(
        &self,
        a: &BurnsideElement,
        b: &BurnsideElement,
    ) -> Result<BurnsideElement, GroupError> {
        if a.group_fp != self.group_fp || b.group_fp != self.group_fp {
            return Err(GroupError::MixedGroups);
        }
        let mut out = BurnsideElement {
            coeffs: BTreeMap::new(),
            group_fp: self.group_fp,
        };
        for (ia, na) in a.terms() {
            for (ib, nb) in b.terms() {
                for &(id, n) in &self.product[ia.0][ib.0] {
                    out.add_term(id, na * nb * n);
                }
            }
        }
        Ok(out)
    }

    pub fn marks(&self, a: &BurnsideElement) -> MarkVector {
        assert_eq!(a.group_fp, self.group_fp, "mixed groups");
        let k = self.marks.len();
        let mut v = vec![0i64; k];
        for (id, n) in a.terms() {
            for (h, slot) in v.iter_mut().enumerate() {
                *slot += n * self.marks[h][id.0];
            }
        }
        MarkVector(v)
    }

    pub fn mark_at(&self, a: &BurnsideElement, h: SubgroupId) -> i64 {
        a.terms().map(|(id, n)| n * self.marks[h.0][id.0]).sum()
    }
}

/// #points of the G-set fixed by every element of `subgroup` (element ids).
pub fn count_fixed_points(group: &PermGroup, gset: &GSet, subgroup: &[usize]) -> i64 {
    let acts: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|&e| group.element_action(gset, e))
        .collect();
    (0..gset.size())
        .filter(|&p| acts.iter().all(|a| a[p] == p))
        .count() as i64
}

/// Induction along H ≤ G: linear extension of [H/U] ↦ [G/U].
///
/// `sub` must be the standalone group of a registered subgroup class of
/// `parent` (see `PermGroup::subgroup_group`), and `a` an element over `sub`.
pub fn induce(
    parent: &PermGroup,
    sub: &PermGroup,
    a: &BurnsideElement,
) -> Result<BurnsideElement, GroupError> {
    if a.group_fp() != sub.fingerprint() {
        return Err(GroupError::MixedGroups);
    }
    let mut out = BurnsideElement::zero(parent);
    for (id, n) in a.terms() {
        let parent_id = parent.parent_class(sub, id);
        out.add_term(parent_id, n);
    }
    Ok(out)
}

/// Restriction to H ≤ G: decompose each G/H' into H-orbits. Internal helper,
/// used to state reciprocity checks against `induce`.
pub fn restrict(
    parent: &PermGroup,
    sub: &PermGroup,
    a: &BurnsideElement,
) -> Result<BurnsideElement, GroupError> {
    if a.group_fp() != parent.fingerprint() {
        return Err(GroupError::MixedGroups);
    }
    let mut out = BurnsideElement::zero(sub);
    for (id, n) in a.terms() {
        let cosets = parent.coset_gset(id);
        let all_points: Vec<usize> = (0..cosets.size()).collect();
        let restricted = cosets.restrict_to(parent, sub, &all_points);
        let nf = burnside_normal_form(sub, &restricted)?;
        out = out.add(&nf.scale(n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_four() -> PermGroup {
        PermGroup::new(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap()
    }

    // registry order for C2×C2: {1}=K, ⟨s1⟩=E1, ⟨s2⟩=E2, ⟨s1s2⟩=E12, G=F
    const K: SubgroupId = SubgroupId(0);
    const E1: SubgroupId = SubgroupId(1);
    const E2: SubgroupId = SubgroupId(2);
    const E12: SubgroupId = SubgroupId(3);
    const F: SubgroupId = SubgroupId(4);

    #[test]
    fn normal_form_examples() {
        let g = klein_four();
        let one_point = GSet::point(&g);
        assert_eq!(
            burnside_normal_form(&g, &one_point).unwrap(),
            BurnsideElement::basis(&g, F)
        );
        let regular = GSet::regular(&g);
        assert_eq!(
            burnside_normal_form(&g, &regular).unwrap(),
            BurnsideElement::basis(&g, K)
        );
        let e1_plus_e2 = g.coset_gset(E1).disjoint_union(&g.coset_gset(E2));
        let nf = burnside_normal_form(&g, &e1_plus_e2).unwrap();
        assert_eq!(nf, BurnsideElement::from_coeffs(&g, &[(E1, 1), (E2, 1)]));
    }

    #[test]
    fn product_examples() {
        let g = klein_four();
        let t = BurnsideTables::new(&g);
        let e1 = BurnsideElement::basis(&g, E1);
        let e2 = BurnsideElement::basis(&g, E2);
        let e12 = BurnsideElement::basis(&g, E12);
        let k = BurnsideElement::basis(&g, K);
        let one = BurnsideElement::one(&g);
        assert_eq!(t.mul(&one, &e12).unwrap(), e12);
        assert_eq!(t.mul(&e1, &e2).unwrap(), k);
        assert_eq!(t.mul(&e12, &e12).unwrap(), e12.scale(2));
        assert_eq!(t.mul(&k, &k).unwrap(), k.scale(4));
        assert_eq!(t.mul(&k, &e1).unwrap(), k.scale(2));
    }

    #[test]
    fn mark_examples() {
        let g = klein_four();
        let t = BurnsideTables::new(&g);
        let k = BurnsideElement::basis(&g, K);
        let e1 = BurnsideElement::basis(&g, E1);
        assert_eq!(t.marks(&k), MarkVector(vec![4, 0, 0, 0, 0]));
        assert_eq!(t.marks(&e1), MarkVector(vec![2, 2, 0, 0, 0]));
        assert_eq!(
            t.marks(&BurnsideElement::one(&g)),
            MarkVector(vec![1, 1, 1, 1, 1])
        );
        // 2 + K - E1 - E2 - E12 has marks (0,0,0,0,2): the relation it would
        // satisfy is impossible
        let w = BurnsideElement::from_coeffs(&g, &[(F, 2), (K, 1), (E1, -1), (E2, -1), (E12, -1)]);
        assert_eq!(t.marks(&w), MarkVector(vec![0, 0, 0, 0, 2]));
    }

    #[test]
    fn induction_examples() {
        let g = klein_four();
        let sub = g.subgroup_group(E1);
        let unit = BurnsideElement::one(&sub);
        assert_eq!(
            induce(&g, &sub, &unit).unwrap(),
            BurnsideElement::basis(&g, E1)
        );
        let reg = BurnsideElement::basis(&sub, sub.trivial_class());
        assert_eq!(
            induce(&g, &sub, &reg).unwrap(),
            BurnsideElement::basis(&g, K)
        );
        let triv = g.subgroup_group(K);
        let three = BurnsideElement::one(&triv).scale(3);
        assert_eq!(
            induce(&g, &triv, &three).unwrap(),
            BurnsideElement::basis(&g, K).scale(3)
        );
    }

    #[test]
    fn frobenius_reciprocity() {
        let g = klein_four();
        let t = BurnsideTables::new(&g);
        for h in [E1, E2, E12] {
            let sub = g.subgroup_group(h);
            let st = BurnsideTables::new(&sub);
            for a_id in 0..sub.num_classes() {
                let a = BurnsideElement::basis(&sub, SubgroupId(a_id));
                for b_id in 0..g.num_classes() {
                    let b = BurnsideElement::basis(&g, SubgroupId(b_id));
                    let lhs = t.mul(&induce(&g, &sub, &a).unwrap(), &b).unwrap();
                    let res_b = restrict(&g, &sub, &b).unwrap();
                    let rhs = induce(&g, &sub, &st.mul(&a, &res_b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn marks_multiplicative_and_injective_randomized() {
        use crate::rng::SplitMix64;
        let g = klein_four();
        let t = BurnsideTables::new(&g);
        let mut rng = SplitMix64::new(0xb00b_5eed);
        let random_elem = |rng: &mut SplitMix64| {
            let coeffs: Vec<(SubgroupId, i64)> =
                (0..5).map(|i| (SubgroupId(i), rng.range(-4, 4))).collect();
            BurnsideElement::from_coeffs(&g, &coeffs)
        };
        for _ in 0..200 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            let ma = t.marks(&a).0;
            let mb = t.marks(&b).0;
            let mab = t.marks(&t.mul(&a, &b).unwrap()).0;
            let componentwise: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| x * y).collect();
            assert_eq!(mab, componentwise);
            // injectivity on normal forms: distinct elements have distinct marks
            if a != b {
                assert_ne!(ma, mb, "marks must separate {a:?} and {b:?}");
            }
            assert_eq!(t.marks(&a).is_zero(), a.is_zero());
        }
    }
}
