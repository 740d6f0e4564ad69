//! Class computations for tori and classifying stacks: the quasi-split
//! stratification recursion, projective-line restrictions, norm-one classes,
//! twisted-union aggregation, and the division rules along short exact
//! sequences with special middle term.

use std::collections::HashMap;

use thiserror::Error;

use crate::burnside::{burnside_normal_form, induce, BurnsideElement};
use crate::context::GaloisContext;
use crate::intmat::{gcd, image_order_mod, IntMat};
use crate::lattice::{
    find_iso_certificate, find_permutation_basis, integer_kernel, invariant_functionals,
    verify_exact_sequence, GaloisLattice, LatticeError, LatticeMap, ModNKernel, PermBasisOutcome,
};
use crate::perm::{orbit_decompose, subset_orbits, GSet, GroupError, PermGroup, SubgroupId};
use crate::poly::{render_poly, ArtinPolynomial, RingError};
use crate::stack::{render_stack, SpecialCertificate, SpecialRegistry, StackClass, StackError};
use crate::trace::{ClassResult, DerivationStep, RationalityFlag, SideCondition};

#[derive(Debug, Error)]
pub enum TorusError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Stack(#[from] StackError),
    #[error("subgroup does not have index 2")]
    NotQuadratic,
    #[error("stratum payload does not match the orbit stabilizer: {0}")]
    BadPayload(String),
    #[error("rule does not apply to this stratum: {0}")]
    RuleScope(String),
    #[error("middle term {0:?} is not registered as special")]
    NotSpecial(String),
    #[error("flank is not certified quasi-split: {0}")]
    NotQuasiSplit(String),
    #[error("sequence verification failed: {0}")]
    BadSequence(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
}

/// Caches shared by the quasi-split recursion: stabilizer subgroups as
/// standalone groups (keyed by their permutation lists) and memoized results
/// keyed by the isomorphism class of the acted-on set.
type IsoClassKey = (u64, Vec<(usize, i64)>);

struct QsCaches {
    groups: HashMap<Vec<Vec<usize>>, PermGroup>,
    memo: HashMap<IsoClassKey, Vec<BurnsideElement>>,
}

impl QsCaches {
    fn new() -> Self {
        QsCaches {
            groups: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn group_for(&mut self, degree: usize, perms: Vec<Vec<usize>>) -> &PermGroup {
        self.groups.entry(perms.clone()).or_insert_with(|| {
            PermGroup::new(degree, perms).expect("stabilizer elements are permutations")
        })
    }
}

fn memo_key(group: &PermGroup, gset: &GSet) -> Result<IsoClassKey, GroupError> {
    let nf = burnside_normal_form(group, gset)?;
    Ok((
        group.fingerprint(),
        nf.terms().map(|(id, n)| (id.0, n)).collect(),
    ))
}

/// The class of the quasi-split torus R_{A/F}(G_m) of the étale algebra A
/// corresponding to a Γ-set S.
///
/// Affine |S|-space is stratified by which coordinates vanish; the stratum of
/// a subset S′ is a torus over the intermediate field of its orbit, and the
/// twist of the induced union pushes forward by coefficientwise induction.
/// Solving for the dense stratum:
///
///   L^{|S|} = Σ over orbits of subsets S′ of Ind_{Stab(S′)}( qs(S′) ),
///
/// a recursion on strictly smaller subsets.
pub fn quasi_split_class(ctx: &GaloisContext, gset: &GSet) -> Result<ArtinPolynomial, TorusError> {
    if gset.group_fp() != ctx.fingerprint() {
        return Err(GroupError::MixedGroups.into());
    }
    let mut caches = QsCaches::new();
    let coeffs = qs_rec(ctx.group(), gset, &mut caches)?;
    Ok(ArtinPolynomial::from_coeffs(ctx, coeffs))
}

fn qs_rec(
    group: &PermGroup,
    gset: &GSet,
    caches: &mut QsCaches,
) -> Result<Vec<BurnsideElement>, TorusError> {
    let key = memo_key(group, gset)?;
    if let Some(hit) = caches.memo.get(&key) {
        return Ok(hit.clone());
    }
    let n = gset.size();
    let mut coeffs = vec![BurnsideElement::zero(group); n + 1];
    coeffs[n] = BurnsideElement::one(group);
    for (subset, stab_elems) in subset_orbits(group, gset) {
        if subset.len() == n {
            continue; // the dense stratum is the unknown being solved for
        }
        let perms: Vec<Vec<usize>> = stab_elems
            .iter()
            .map(|&e| group.element(e).to_vec())
            .collect();
        let sub = caches.group_for(group.degree(), perms).clone();
        let sub_gset = gset.restrict_to(group, &sub, &subset);
        let sub_coeffs = qs_rec(&sub, &sub_gset, caches)?;
        for (k, c) in sub_coeffs.iter().enumerate() {
            if !c.is_zero() {
                let lifted = induce(group, &sub, c)?;
                coeffs[k] = coeffs[k].sub(&lifted);
            }
        }
    }
    caches.memo.insert(key, coeffs.clone());
    Ok(coeffs)
}

/// The class of the Weil restriction of the projective line along the étale
/// algebra of a Γ-set S: the product of projective lines is stratified by
/// subsets into affine cells, each twisted stratum collapses to affine space
/// over the intermediate field, contributing \[orbit\]·L^{|S′|}.
pub fn weil_restriction_p1_class(
    ctx: &GaloisContext,
    gset: &GSet,
) -> Result<ArtinPolynomial, TorusError> {
    if gset.group_fp() != ctx.fingerprint() {
        return Err(GroupError::MixedGroups.into());
    }
    let group = ctx.group();
    let n = gset.size();
    let mut coeffs = vec![BurnsideElement::zero(group); n + 1];
    for (subset, stab_elems) in subset_orbits(group, gset) {
        let class = group.class_of(&stab_elems)?;
        coeffs[subset.len()] = coeffs[subset.len()].add(&BurnsideElement::basis(group, class));
    }
    Ok(ArtinPolynomial::from_coeffs(ctx, coeffs))
}

pub const AXIOM_P1_FIXED_POINT: &str =
    "the inversion action on the projective line fixes the rational point z = 1, so the twisted form has a rational point and is a projective line";

pub const AXIOM_P1XP1_RULING: &str =
    "every automorphism of a product of two projective lines respects the ruling, so the descent datum factors through the Weil-restriction form";

pub const AXIOM_RANK2_RATIONAL: &str = "every torus of rank 2 is rational";

/// The class of the norm-one torus of the quadratic subfield fixed by an
/// index-2 subgroup: L − \[Γ/H\] + 1, derived from the twisted projective line
/// minus the twisted point pair.
pub fn norm_one_quadratic_class(
    ctx: &GaloisContext,
    h: SubgroupId,
) -> Result<ClassResult<ArtinPolynomial>, TorusError> {
    let group = ctx.group();
    if group.class(h).order * 2 != group.order() {
        return Err(TorusError::NotQuadratic);
    }
    let e_class = BurnsideElement::basis(group, h);
    let class = ArtinPolynomial::lefschetz(ctx)
        .sub(&ArtinPolynomial::constant(ctx, e_class.clone()))
        .add(&ArtinPolynomial::one(ctx));
    let label = ctx.label(h).to_string();
    let trace = vec![
        DerivationStep::axiom(
            "untwist-projective-line",
            "L + 1".to_string(),
            AXIOM_P1_FIXED_POINT,
        ),
        DerivationStep::verified("twist-induced-point-pair", format!("[{label}]")).with_conditions(
            vec![SideCondition::passed(
                "orbit of the coordinate pair {0,∞} is the two-point coset set",
            )],
        ),
        DerivationStep::verified("scissor-subtraction", render_poly(ctx, &class))
            .with_premises(vec!["L + 1".into(), format!("[{label}]")]),
    ];
    Ok(ClassResult::new(
        class,
        RationalityFlag::Yes(
            "open immersion into the twisted projective line, which has a rational point".into(),
        ),
        trace,
    ))
}

/// The three ways a torus enters the engine: as the Weil restriction of an
/// étale algebra, as the norm-one torus of a quadratic subfield, or through
/// its character lattice.
pub enum TorusPresentation {
    QuasiSplit { name: String, gset: GSet },
    NormOneQuadratic { name: String, subgroup: SubgroupId },
    Lattice(GaloisLattice),
}

impl TorusPresentation {
    pub fn name(&self) -> &str {
        match self {
            TorusPresentation::QuasiSplit { name, .. } => name,
            TorusPresentation::NormOneQuadratic { name, .. } => name,
            TorusPresentation::Lattice(l) => &l.name,
        }
    }

    /// Dispatch to the class rule matching the presentation. Lattice
    /// presentations go through the filtration evaluator and may come back
    /// `NotQuasiSplit` when no verified route exists within the bound.
    pub fn class(
        &self,
        ctx: &GaloisContext,
        catalog: &LatticeClassCatalog,
        bound: i64,
    ) -> Result<ClassResult<ArtinPolynomial>, TorusError> {
        match self {
            TorusPresentation::QuasiSplit { gset, .. } => {
                let class = quasi_split_class(ctx, gset)?;
                Ok(ClassResult::new(
                    class.clone(),
                    RationalityFlag::Yes("quasi-split tori are rational".into()),
                    vec![DerivationStep::verified(
                        "quasi-split-stratification",
                        render_poly(ctx, &class),
                    )],
                ))
            }
            TorusPresentation::NormOneQuadratic { subgroup, .. } => {
                norm_one_quadratic_class(ctx, *subgroup)
            }
            TorusPresentation::Lattice(lattice) => {
                torus_class_from_lattice(ctx, lattice, catalog, bound).ok_or_else(|| {
                    TorusError::NotQuasiSplit(format!(
                        "{}: no verified route within bound {bound}",
                        lattice.name
                    ))
                })
            }
        }
    }
}

/// A payload for one orbit of an induced stratum: a class polynomial over the
/// standalone group of the orbit's stabilizer class.
#[derive(Debug, Clone)]
pub struct TwistPayload {
    pub coeffs: Vec<BurnsideElement>,
}

/// Class of the twist of an induced disjoint union of strata: for each orbit
/// of the label set, the payload over the intermediate field is pushed
/// forward by coefficientwise induction. Payloads align with the orbit order
/// of `orbit_decompose` and must be written over the orbit's stabilizer
/// subgroup (as produced by `GaloisContext::subgroup_group`).
pub fn twist_of_induced_strata(
    ctx: &GaloisContext,
    strata: &GSet,
    payloads: &[TwistPayload],
) -> Result<ArtinPolynomial, TorusError> {
    let group = ctx.group();
    let orbits = orbit_decompose(group, strata)?;
    if orbits.len() != payloads.len() {
        return Err(TorusError::BadPayload(format!(
            "{} orbits but {} payloads",
            orbits.len(),
            payloads.len()
        )));
    }
    let mut total = ArtinPolynomial::zero(ctx);
    for (orbit, payload) in orbits.iter().zip(payloads) {
        let sub = ctx.subgroup_group(orbit.stabilizer);
        for (k, c) in payload.coeffs.iter().enumerate() {
            if c.group_fp() != sub.fingerprint() {
                return Err(TorusError::BadPayload(format!(
                    "payload coefficient is not over the stabilizer subgroup {:?}",
                    group.class(orbit.stabilizer).rep
                )));
            }
            if !c.is_zero() {
                let lifted = induce(group, sub, c)?;
                total = total.add(&ArtinPolynomial::monomial(ctx, lifted, k));
            }
        }
    }
    Ok(total)
}

/// A declared geometric stratum fed to the untwisting rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratum {
    /// A projective line; `inversion` says whether the quadratic twist acts
    /// by z ↦ z⁻¹.
    ProjectiveLine { inversion: bool },
    /// A multiplicative group with the inversion action: out of scope for
    /// the fixed-point rule (the correct class is the norm-one torus).
    MultiplicativeGroup { inversion: bool },
}

/// Untwist a projective-line stratum through its rational fixed point: the
/// class is L + 1. Rejects strata that are not projective lines.
pub fn fixed_point_untwist(
    ctx: &GaloisContext,
    stratum: &Stratum,
) -> Result<ClassResult<ArtinPolynomial>, TorusError> {
    match stratum {
        Stratum::ProjectiveLine { inversion } => {
            let class = ArtinPolynomial::lefschetz(ctx).add(&ArtinPolynomial::one(ctx));
            let step = if *inversion {
                DerivationStep::axiom("untwist-projective-line", "L + 1", AXIOM_P1_FIXED_POINT)
            } else {
                DerivationStep::verified("split-projective-line", "L + 1")
            };
            Ok(ClassResult::new(
                class,
                RationalityFlag::Yes("a projective line is rational".into()),
                vec![step],
            ))
        }
        Stratum::MultiplicativeGroup { .. } => Err(TorusError::RuleScope(
            "the fixed-point rule applies to projective lines only; a twisted multiplicative group is a norm-one torus".into(),
        )),
    }
}

/// Evidence that a short exact sequence of group schemes has been verified at
/// the lattice level.
pub enum SequenceEvidence<'a> {
    /// 0 → X(H) → X(G) → X(N) → 0 for a sequence of tori 1 → N → G → H → 1.
    Lattice(&'a [LatticeMap]),
    /// For finite N: the kernel construction 0 → X(S) → X(G) → X(G)/n → 0 of
    /// a sequence 1 → N → G → S → 1, carried by its mod-n kernel.
    ModN {
        map: &'a LatticeMap,
        n: i64,
        kernel: &'a ModNKernel,
    },
}

fn verify_evidence(
    group: &PermGroup,
    evidence: &SequenceEvidence,
) -> Result<Vec<SideCondition>, TorusError> {
    match evidence {
        SequenceEvidence::Lattice(maps) => {
            let verdict = verify_exact_sequence(group, maps)
                .map_err(|e| TorusError::BadSequence(e.to_string()))?;
            if let Some(fail) = verdict.first_failure() {
                return Err(TorusError::BadSequence(format!(
                    "{}: {}",
                    fail.name, fail.detail
                )));
            }
            Ok(verdict
                .checks
                .iter()
                .map(|c| SideCondition::passed(c.name.clone()))
                .collect())
        }
        SequenceEvidence::ModN { map, n, kernel } => {
            if *n < 1 {
                return Err(TorusError::BadSequence("modulus must be positive".into()));
            }
            // the inclusion must land in the mod-n kernel and have the right index
            let composite = map.matrix.mul(&kernel.inclusion.matrix);
            for i in 0..composite.nrows() {
                for j in 0..composite.ncols() {
                    if composite[(i, j)] % n != 0 {
                        return Err(TorusError::BadSequence(
                            "inclusion does not land in the mod-n kernel".into(),
                        ));
                    }
                }
            }
            let expected = image_order_mod(&map.matrix, *n);
            if kernel.index != expected {
                return Err(TorusError::BadSequence(format!(
                    "kernel index {} does not match the image order {} mod {}",
                    kernel.index, expected, n
                )));
            }
            if !kernel.inclusion.is_equivariant(group) {
                return Err(TorusError::BadSequence(
                    "inclusion is not equivariant".into(),
                ));
            }
            Ok(vec![
                SideCondition::passed("inclusion lands in the mod-n kernel"),
                SideCondition::passed(format!(
                    "kernel index {} equals the order of the image mod {}",
                    kernel.index, n
                )),
            ])
        }
    }
}

/// {BN} = {H}/{G} for a verified sequence 1 → N → G → H → 1 whose middle term
/// is registered special. Both classes are taken by name from the registry
/// (middle) and by value (H).
pub fn bn_from_special_sequence(
    ctx: &GaloisContext,
    registry: &SpecialRegistry,
    evidence: &SequenceEvidence,
    middle_name: &str,
    class_h: &ArtinPolynomial,
) -> Result<ClassResult<StackClass>, TorusError> {
    let class_g = registry
        .lookup(middle_name)
        .ok_or_else(|| TorusError::NotSpecial(middle_name.to_string()))?
        .clone();
    let conditions = verify_evidence(ctx.group(), evidence)?;
    let bn = StackClass::new(ctx, registry, class_h.clone(), vec![class_g.clone()])?;
    let step = DerivationStep::verified("quotient-by-special-middle", render_stack(ctx, &bn))
        .with_premises(vec![
            format!("{middle_name} special: {}", render_poly(ctx, &class_g)),
            render_poly(ctx, class_h),
        ])
        .with_conditions(conditions);
    Ok(ClassResult::new(
        bn,
        RationalityFlag::Unknown("not tracked by this rule".into()),
        vec![step],
    ))
}

/// How a flank of a resolution is certified quasi-split.
pub enum QuasiSplitWitness {
    /// An explicit G-set whose permutation lattice must match the flank
    /// lattice by certificate.
    Explicit(GSet),
    /// Search for a permuted basis up to the given coordinate bound.
    Search { bound: i64 },
}

fn certify_quasi_split(
    ctx: &GaloisContext,
    lattice: &GaloisLattice,
    witness: &QuasiSplitWitness,
) -> Result<(GSet, SideCondition), TorusError> {
    let group = ctx.group();
    match witness {
        QuasiSplitWitness::Explicit(gset) => {
            let perm = GaloisLattice::permutation(group, format!("Z[{}]", lattice.name), gset);
            let cert = find_iso_certificate(group, &perm, lattice, 2).ok_or_else(|| {
                TorusError::NotQuasiSplit(format!(
                    "no certificate matching {} to the permutation lattice of the given set",
                    lattice.name
                ))
            })?;
            Ok((
                gset.clone(),
                SideCondition::passed(format!(
                    "certificate {:?} matches {} to the stated permuted basis",
                    cert.matrix, lattice.name
                )),
            ))
        }
        QuasiSplitWitness::Search { bound } => match find_permutation_basis(group, lattice, *bound)
        {
            PermBasisOutcome::Found { gset, .. } => Ok((
                gset,
                SideCondition::passed(format!("permuted basis found for {}", lattice.name)),
            )),
            PermBasisOutcome::None { reason } => Err(TorusError::NotQuasiSplit(format!(
                "{}: {reason}",
                lattice.name
            ))),
            PermBasisOutcome::Unknown { bound } => Err(TorusError::NotQuasiSplit(format!(
                "{}: search exhausted at bound {bound}",
                lattice.name
            ))),
        },
    }
}

/// Output of `class_and_bdual_from_resolution`.
pub struct ResolutionOutcome {
    /// {T} = {T₂}/{T₁}, reduced to a polynomial by exact division whenever
    /// the division is exact.
    pub torus_class: ClassResult<ArtinPolynomial>,
    /// {B T^∨} = {T₁}/{T₂} in the fraction ring.
    pub b_dual_class: ClassResult<StackClass>,
}

/// Classes from a quasi-split resolution 1 → T₁ → T₂ → T → 1, given on
/// character lattices as 0 → X(T) → X(T₂) → X(T₁) → 0. Both flanks must be
/// certified quasi-split; their classes are computed and registered. Then
/// {T} = {T₂}/{T₁} and {B T^∨} = {T₁}/{T₂}, and B T^∨ is stably rational.
pub fn class_and_bdual_from_resolution(
    ctx: &GaloisContext,
    registry: &mut SpecialRegistry,
    maps: &[LatticeMap; 2],
    t2_witness: &QuasiSplitWitness,
    t1_witness: &QuasiSplitWitness,
) -> Result<ResolutionOutcome, TorusError> {
    let group = ctx.group();
    let seq_conditions = verify_evidence(group, &SequenceEvidence::Lattice(&maps[..]))?;
    let t2_lattice = &maps[0].target;
    let t1_lattice = &maps[1].target;
    let (t2_gset, t2_cond) = certify_quasi_split(ctx, t2_lattice, t2_witness)?;
    let (t1_gset, t1_cond) = certify_quasi_split(ctx, t1_lattice, t1_witness)?;
    let t2_class = quasi_split_class(ctx, &t2_gset)?;
    let t1_class = quasi_split_class(ctx, &t1_gset)?;
    registry.register(
        t2_lattice.name.clone(),
        ctx,
        t2_class.clone(),
        SpecialCertificate::QuasiSplit(t2_gset),
    )?;
    registry.register(
        t1_lattice.name.clone(),
        ctx,
        t1_class.clone(),
        SpecialCertificate::QuasiSplit(t1_gset),
    )?;

    let mut conditions = seq_conditions;
    conditions.push(t2_cond);
    conditions.push(t1_cond);

    let quotient = t2_class.exact_divide(ctx, &t1_class)?;
    // re-multiplication check: the quotient must reproduce the dividend
    let back = quotient.mul(ctx, &t1_class);
    if back != t2_class {
        return Err(TorusError::BadSequence(
            "re-multiplication after exact division failed".into(),
        ));
    }
    let mut t_conditions = conditions.clone();
    t_conditions.push(SideCondition::passed(
        "quotient re-multiplies to the dividend",
    ));
    let torus_class = ClassResult::new(
        quotient.clone(),
        RationalityFlag::Unknown("resolution alone does not decide rationality of T".into()),
        vec![DerivationStep::verified(
            "class-from-quasi-split-resolution",
            render_poly(ctx, &quotient),
        )
        .with_premises(vec![
            format!("{} = {}", t2_lattice.name, render_poly(ctx, &t2_class)),
            format!("{} = {}", t1_lattice.name, render_poly(ctx, &t1_class)),
        ])
        .with_conditions(t_conditions)],
    );

    let b_dual = StackClass::new(ctx, registry, t1_class.clone(), vec![t2_class.clone()])?;
    let b_dual_class = ClassResult::new(
        b_dual.clone(),
        RationalityFlag::Yes(
            "the dual torus embeds into a quasi-split torus with rational quotient".into(),
        ),
        vec![DerivationStep::verified(
            "bdual-from-quasi-split-resolution",
            render_stack(ctx, &b_dual),
        )
        .with_premises(vec![
            format!("{} = {}", t1_lattice.name, render_poly(ctx, &t1_class)),
            format!("{} = {}", t2_lattice.name, render_poly(ctx, &t2_class)),
        ])
        .with_conditions(conditions)],
    );
    Ok(ResolutionOutcome {
        torus_class,
        b_dual_class,
    })
}

/// {X} = (L−1)·{Y} for a verified sequence 1 → G_m → X → Y → 1 (on lattices
/// 0 → X(Y) → X(X) → Z → 0 with trivial rank-1 quotient). The rationality
/// flag of Y propagates to X.
pub fn gm_torsor_factor(
    ctx: &GaloisContext,
    maps: &[LatticeMap; 2],
    class_y: &ClassResult<ArtinPolynomial>,
) -> Result<ClassResult<ArtinPolynomial>, TorusError> {
    let group = ctx.group();
    let z = &maps[1].target;
    if z.rank() != 1 || (0..group.num_generators()).any(|gi| z.action(gi)[(0, 0)] != 1) {
        return Err(TorusError::BadSequence(
            "the quotient lattice is not the trivial rank-1 lattice of a multiplicative-group kernel".into(),
        ));
    }
    let conditions = verify_evidence(group, &SequenceEvidence::Lattice(&maps[..]))?;
    let class = ArtinPolynomial::lefschetz_minus_one(ctx).mul(ctx, &class_y.class);
    let flag = match &class_y.stably_rational {
        RationalityFlag::Yes(why) => RationalityFlag::Yes(format!(
            "a multiplicative-group torsor over a rational base is rational; base: {why}"
        )),
        RationalityFlag::Unknown(why) => RationalityFlag::Unknown(why.clone()),
    };
    let mut trace = class_y.trace.clone();
    trace.push(
        DerivationStep::verified(
            "multiplicative-group-torsor-factor",
            render_poly(ctx, &class),
        )
        .with_premises(vec![render_poly(ctx, &class_y.class)])
        .with_conditions(conditions),
    );
    Ok(ClassResult::new(class, flag, trace))
}

/// A catalog of lattices with already-established classes, used by the
/// filtration evaluator to recognize rank-2 pieces by certificate.
pub struct LatticeClassCatalog {
    pub entries: Vec<(GaloisLattice, ArtinPolynomial, String)>,
}

impl LatticeClassCatalog {
    pub fn new() -> Self {
        LatticeClassCatalog {
            entries: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        lattice: GaloisLattice,
        class: ArtinPolynomial,
        name: impl Into<String>,
    ) {
        self.entries.push((lattice, class, name.into()));
    }
}

impl Default for LatticeClassCatalog {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluate the class of the torus with the given character lattice by
/// peeling multiplicative-group torsors and matching certified pieces:
///
/// * rank 0: the point, class 1;
/// * a permuted basis: quasi-split, by the stratification recursion;
/// * a basis of common ±1 eigenvectors: product of norm-one tori and G_m's;
/// * a certificate onto a catalog lattice: the cataloged class;
/// * an invariant functional with primitive image: a G_m-torsor over the
///   kernel torus, class (L−1)·(class of the kernel).
///
/// Returns None when no route applies within the search bounds.
pub fn torus_class_from_lattice(
    ctx: &GaloisContext,
    lattice: &GaloisLattice,
    catalog: &LatticeClassCatalog,
    bound: i64,
) -> Option<ClassResult<ArtinPolynomial>> {
    let group = ctx.group();
    if lattice.rank() == 0 {
        return Some(ClassResult::new(
            ArtinPolynomial::one(ctx),
            RationalityFlag::Yes("the trivial torus is a point".into()),
            vec![DerivationStep::verified("trivial-torus", "1")],
        ));
    }
    if let PermBasisOutcome::Found { gset, .. } = find_permutation_basis(group, lattice, bound) {
        let class = quasi_split_class(ctx, &gset).ok()?;
        return Some(ClassResult::new(
            class.clone(),
            RationalityFlag::Yes("quasi-split tori are rational".into()),
            vec![DerivationStep::verified(
                "quasi-split-by-permuted-basis",
                render_poly(ctx, &class),
            )
            .with_premises(vec![lattice.name.clone()])],
        ));
    }
    if let Some(result) = try_sign_diagonal(ctx, lattice, bound) {
        return Some(result);
    }
    for (cat_lattice, cat_class, cat_name) in &catalog.entries {
        if cat_lattice.rank() == lattice.rank() {
            if let Some(cert) = find_iso_certificate(group, lattice, cat_lattice, bound) {
                return Some(ClassResult::new(
                    cat_class.clone(),
                    RationalityFlag::Unknown("class taken from a certified match".into()),
                    vec![DerivationStep::verified(
                        "class-by-certificate",
                        render_poly(ctx, cat_class),
                    )
                    .with_premises(vec![lattice.name.clone(), cat_name.clone()])
                    .with_conditions(vec![SideCondition::passed(format!(
                        "unimodular certificate {:?} onto {cat_name}",
                        cert.matrix
                    ))])],
                ));
            }
        }
    }
    // strip a multiplicative-group torsor along an invariant functional
    for f in invariant_functionals(group, lattice) {
        let g = f.iter().fold(0i64, |acc, &x| gcd(acc, x));
        if g == 0 {
            continue;
        }
        let normalized: Vec<i64> = f.iter().map(|x| x / g).collect();
        let z = GaloisLattice::trivial(group, "Z", 1);
        let theta = LatticeMap::new(
            group,
            lattice,
            &z,
            IntMat::from_rows(vec![normalized.clone()]),
        )
        .ok()?;
        // surjectivity after normalization
        if theta.matrix.column_lattice_basis() != IntMat::identity(1) {
            continue;
        }
        let Ok((kernel, _incl)) =
            integer_kernel(group, &theta, format!("ker θ ⊂ {}", lattice.name))
        else {
            continue;
        };
        if let Some(base) = torus_class_from_lattice(ctx, &kernel, catalog, bound) {
            let class = ArtinPolynomial::lefschetz_minus_one(ctx).mul(ctx, &base.class);
            let mut trace = base.trace.clone();
            trace.push(
                DerivationStep::verified(
                    "multiplicative-group-torsor-strip",
                    render_poly(ctx, &class),
                )
                .with_premises(vec![lattice.name.clone()])
                .with_conditions(vec![SideCondition::passed(format!(
                    "invariant functional {normalized:?} is surjective with free kernel"
                ))]),
            );
            let flag = match &base.stably_rational {
                RationalityFlag::Yes(why) => RationalityFlag::Yes(format!(
                    "multiplicative-group torsor over a rational base; base: {why}"
                )),
                RationalityFlag::Unknown(why) => RationalityFlag::Unknown(why.clone()),
            };
            return Some(ClassResult::new(class, flag, trace));
        }
    }
    None
}

/// A basis of common ±1 eigenvectors splits the torus into a product of
/// one-dimensional pieces: G_m for the trivial character, otherwise the
/// norm-one torus of the quadratic subfield fixed by the character kernel.
fn try_sign_diagonal(
    ctx: &GaloisContext,
    lattice: &GaloisLattice,
    bound: i64,
) -> Option<ClassResult<ArtinPolynomial>> {
    let group = ctx.group();
    let r = lattice.rank();
    let span = (2 * bound + 1) as usize;
    let total = span.pow(r as u32);
    let mut candidates: Vec<(Vec<i64>, Vec<i64>)> = Vec::new(); // (vector, sign per generator)
    for idx in 0..total {
        let mut rem = idx;
        let mut v = Vec::with_capacity(r);
        for _ in 0..r {
            v.push((rem % span) as i64 - bound);
            rem /= span;
        }
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let mut signs = Vec::new();
        let mut ok = true;
        for gi in 0..group.num_generators() {
            let img = lattice.action(gi).mul_vec(&v);
            if img == v {
                signs.push(1);
            } else if img.iter().zip(&v).all(|(a, b)| *a == -b) {
                signs.push(-1);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            candidates.push((v, signs));
        }
    }
    // back-track over candidates for a unimodular basis
    fn assemble(
        candidates: &[(Vec<i64>, Vec<i64>)],
        start: usize,
        chosen: &mut Vec<usize>,
        r: usize,
    ) -> Option<Vec<usize>> {
        if chosen.len() == r {
            let m = IntMat::from_cols(chosen.iter().map(|&i| candidates[i].0.clone()).collect());
            if m.is_unimodular() {
                return Some(chosen.clone());
            }
            return None;
        }
        for i in start..candidates.len() {
            chosen.push(i);
            if let Some(found) = assemble(candidates, i + 1, chosen, r) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    let mut chosen = Vec::new();
    let picked = assemble(&candidates, 0, &mut chosen, r)?;
    let mut class = ArtinPolynomial::one(ctx);
    let mut factors = Vec::new();
    for &i in &picked {
        let signs = &candidates[i].1;
        if signs.iter().all(|&s| s == 1) {
            class = class.mul(ctx, &ArtinPolynomial::lefschetz_minus_one(ctx));
            factors.push("L - 1".to_string());
        } else {
            // kernel of the character: elements whose word multiplies to +1
            let kernel: Vec<usize> = (0..group.order())
                .filter(|&e| group.word(e).iter().map(|&gi| signs[gi]).product::<i64>() == 1)
                .collect();
            let h = group.class_of(&kernel).ok()?;
            let piece = norm_one_quadratic_class(ctx, h).ok()?;
            factors.push(render_poly(ctx, &piece.class));
            class = class.mul(ctx, &piece.class);
        }
    }
    Some(ClassResult::new(
        class.clone(),
        RationalityFlag::Yes("a product of rational tori is rational".into()),
        vec![
            DerivationStep::verified("sign-diagonal-split", render_poly(ctx, &class))
                .with_premises(vec![lattice.name.clone()])
                .with_conditions(vec![SideCondition::passed(format!(
                    "common eigenbasis with factors {}",
                    factors.join(" · ")
                ))]),
        ],
    ))
}

/// Master cross-check: for every group element g, the cyclic specialization
/// of the class must equal det(q·I − ρ(g)) of the character-lattice action.
pub fn charpoly_oracle_check(
    ctx: &GaloisContext,
    class: &ArtinPolynomial,
    lattice: &GaloisLattice,
) -> Result<(), String> {
    let group = ctx.group();
    for e in 0..group.order() {
        let spec = class.cyclic_specialization(ctx, e);
        let cp = crate::poly::IntPoly::from_high_coeffs(&lattice.charpoly_at(group, e));
        if spec != cp {
            return Err(format!(
                "element {e}: specialization {spec} differs from characteristic polynomial {cp}"
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::biquadratic;

    fn bq() -> GaloisContext {
        GaloisContext::biquadratic()
    }

    fn label_elem(ctx: &GaloisContext, l: &str) -> BurnsideElement {
        BurnsideElement::basis(ctx.group(), ctx.subgroup_by_label(l).unwrap())
    }

    fn poly_of(ctx: &GaloisContext, terms: &[(&str, usize)]) -> ArtinPolynomial {
        // terms (label-or-int, power)
        let mut p = ArtinPolynomial::zero(ctx);
        for (expr, k) in terms {
            let c = ctx.parse_element(expr).unwrap();
            p = p.add(&ArtinPolynomial::monomial(ctx, c, *k));
        }
        p
    }

    #[test]
    fn qs_point_and_quadratic() {
        let ctx = bq();
        let point = GSet::point(ctx.group());
        assert_eq!(
            quasi_split_class(&ctx, &point).unwrap(),
            ArtinPolynomial::lefschetz_minus_one(&ctx)
        );
        // a 2-point coset set: (L−1)(L−[E1]+1)
        let e1 = ctx.subgroup_by_label("E1").unwrap();
        let qs = quasi_split_class(&ctx, &ctx.group().coset_gset(e1)).unwrap();
        let expected = poly_of(&ctx, &[("1", 2), ("-[E1]", 1), ("[E1]-1", 0)]);
        assert_eq!(qs, expected);
        let cq = GaloisContext::quadratic();
        let qs2 = quasi_split_class(&cq, &GSet::regular(cq.group())).unwrap();
        let expected2 = poly_of(&cq, &[("1", 2), ("-[E]", 1), ("[E]-1", 0)]);
        assert_eq!(qs2, expected2);
    }

    #[test]
    fn qs_regular_biquadratic() {
        let ctx = bq();
        let qs = quasi_split_class(&ctx, &GSet::regular(ctx.group())).unwrap();
        let expected = poly_of(
            &ctx,
            &[
                ("1", 4),
                ("-[K]", 3),
                ("3*[K]-[E1]-[E2]-[E12]", 2),
                ("-[K]", 1),
                ("[E1]+[E2]+[E12]-[K]-1", 0),
            ],
        );
        assert_eq!(qs, expected);
        // subleading coefficient is minus the class of the set
        assert_eq!(qs.coeff(&ctx, 3), label_elem(&ctx, "K").neg());
        // charpoly oracle against the regular permutation lattice
        let q = biquadratic::pair_permutation(ctx.group());
        // the pair-index set is also regular, so the classes agree
        charpoly_oracle_check(&ctx, &qs, &q).unwrap();
    }

    #[test]
    fn qs_multiplicative_over_disjoint_unions() {
        let ctx = bq();
        let g = ctx.group();
        for a in 0..g.num_classes() {
            for b in 0..g.num_classes() {
                let sa = g.coset_gset(SubgroupId(a));
                let sb = g.coset_gset(SubgroupId(b));
                let union = sa.disjoint_union(&sb);
                let lhs = quasi_split_class(&ctx, &union).unwrap();
                let rhs = quasi_split_class(&ctx, &sa)
                    .unwrap()
                    .mul(&ctx, &quasi_split_class(&ctx, &sb).unwrap());
                assert_eq!(lhs, rhs, "multiplicativity at ({a},{b})");
            }
        }
    }

    #[test]
    fn qs_monic_with_subleading_minus_class() {
        let ctx = bq();
        let g = ctx.group();
        for a in 0..g.num_classes() {
            let s = g.coset_gset(SubgroupId(a));
            let qs = quasi_split_class(&ctx, &s).unwrap();
            assert!(qs.is_monic(&ctx));
            assert_eq!(qs.degree(), Some(s.size()));
            let nf = burnside_normal_form(g, &s).unwrap();
            assert_eq!(qs.coeff(&ctx, s.size() - 1), nf.neg());
        }
    }

    #[test]
    fn p1_classes() {
        let ctx = bq();
        let g = ctx.group();
        let point = GSet::point(g);
        let expected = poly_of(&ctx, &[("1", 1), ("1", 0)]);
        assert_eq!(weil_restriction_p1_class(&ctx, &point).unwrap(), expected);
        let e12 = ctx.subgroup_by_label("E12").unwrap();
        let p1 = weil_restriction_p1_class(&ctx, &g.coset_gset(e12)).unwrap();
        assert_eq!(p1, poly_of(&ctx, &[("1", 2), ("[E12]", 1), ("1", 0)]));
        let p1r = weil_restriction_p1_class(&ctx, &GSet::regular(g)).unwrap();
        assert_eq!(
            p1r,
            poly_of(
                &ctx,
                &[
                    ("1", 4),
                    ("[K]", 3),
                    ("[E1]+[E2]+[E12]", 2),
                    ("[K]", 1),
                    ("1", 0)
                ]
            )
        );
    }

    #[test]
    fn p1_point_count_oracle() {
        // at each cyclic subgroup the class counts points of a product of
        // projective lines over the orbit fields: Π (q^len + 1)
        let ctx = bq();
        let g = ctx.group();
        for a in 0..g.num_classes() {
            let s = g.coset_gset(SubgroupId(a));
            let p1 = weil_restriction_p1_class(&ctx, &s).unwrap();
            for e in 0..g.order() {
                let spec = p1.cyclic_specialization(&ctx, e);
                // orbit lengths of ⟨e⟩ on the set
                let act = g.element_action(&s, e);
                let mut seen = vec![false; s.size()];
                let mut expected = crate::poly::IntPoly::from_low_coeffs(vec![1]);
                for start in 0..s.size() {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut p = start;
                    loop {
                        seen[p] = true;
                        len += 1;
                        p = act[p];
                        if p == start {
                            break;
                        }
                    }
                    let mut factor = vec![0i64; len + 1];
                    factor[0] = 1;
                    factor[len] = 1;
                    expected = expected.mul(&crate::poly::IntPoly::from_low_coeffs(factor));
                }
                assert_eq!(spec, expected, "class {a}, element {e}");
            }
        }
    }

    #[test]
    fn norm_one_classes() {
        let ctx = bq();
        for (label, l) in [("E1", "E1"), ("E2", "E2"), ("E12", "E12")] {
            let h = ctx.subgroup_by_label(label).unwrap();
            let r = norm_one_quadratic_class(&ctx, h).unwrap();
            let expected = poly_of(&ctx, &[("1", 1), (&format!("1-[{l}]"), 0)]);
            assert_eq!(r.class, expected);
            assert!(r.stably_rational.is_yes());
            assert_eq!(r.axioms(), vec![AXIOM_P1_FIXED_POINT.to_string()]);
            // (L−1)·(L−[E]+1) = quasi-split class of the coset set
            let qs = quasi_split_class(&ctx, &ctx.group().coset_gset(h)).unwrap();
            let product = ArtinPolynomial::lefschetz_minus_one(&ctx).mul(&ctx, &r.class);
            assert_eq!(product, qs);
        }
        // the full subgroup has index 1, the trivial one index 4
        let f = ctx.subgroup_by_label("F").unwrap();
        assert!(matches!(
            norm_one_quadratic_class(&ctx, f),
            Err(TorusError::NotQuadratic)
        ));
    }

    #[test]
    fn twist_strata_examples() {
        let ctx = bq();
        let g = ctx.group();
        // one free orbit of 4 labels with payload L−1 over the trivial
        // subgroup: class [K](L−1)
        let regular = GSet::regular(g);
        let triv = ctx.subgroup_group(g.trivial_class());
        let payload = TwistPayload {
            coeffs: vec![BurnsideElement::one(triv).neg(), BurnsideElement::one(triv)],
        };
        let class = twist_of_induced_strata(&ctx, &regular, &[payload]).unwrap();
        let expected = poly_of(&ctx, &[("[K]", 1), ("-[K]", 0)]);
        assert_eq!(class, expected);
        // two labels with payload L over the index-2 stabilizer: [E1]·L
        let e1 = ctx.subgroup_by_label("E1").unwrap();
        let sub = ctx.subgroup_group(e1);
        let payload = TwistPayload {
            coeffs: vec![BurnsideElement::zero(sub), BurnsideElement::one(sub)],
        };
        let class = twist_of_induced_strata(&ctx, &g.coset_gset(e1), &[payload]).unwrap();
        assert_eq!(class, poly_of(&ctx, &[("[E1]", 1)]));
        // payload over the wrong subgroup is rejected
        let wrong = TwistPayload {
            coeffs: vec![BurnsideElement::one(g)],
        };
        assert!(matches!(
            twist_of_induced_strata(&ctx, &g.coset_gset(e1), &[wrong]),
            Err(TorusError::BadPayload(_))
        ));
    }

    #[test]
    fn untwist_rule_scope() {
        let ctx = bq();
        let p1 = fixed_point_untwist(&ctx, &Stratum::ProjectiveLine { inversion: true }).unwrap();
        assert_eq!(p1.class, poly_of(&ctx, &[("1", 1), ("1", 0)]));
        assert_eq!(p1.axioms().len(), 1);
        let split =
            fixed_point_untwist(&ctx, &Stratum::ProjectiveLine { inversion: false }).unwrap();
        assert!(split.axioms().is_empty());
        assert!(matches!(
            fixed_point_untwist(&ctx, &Stratum::MultiplicativeGroup { inversion: true }),
            Err(TorusError::RuleScope(_))
        ));
    }

    #[test]
    fn trivial_resolution_of_gm() {
        // 1 → 1 → G_m → G_m → 1 on lattices: 0 → Z → Z → 0 → 0
        let ctx = bq();
        let g = ctx.group();
        let mut reg = SpecialRegistry::new(&ctx);
        let z = GaloisLattice::trivial(g, "Z", 1);
        let zero = GaloisLattice::zero(g, "0");
        let id = LatticeMap::new(g, &z, &z, IntMat::identity(1)).unwrap();
        let to_zero = LatticeMap::new(g, &z, &zero, IntMat::zero(0, 1)).unwrap();
        let out = class_and_bdual_from_resolution(
            &ctx,
            &mut reg,
            &[id, to_zero],
            &QuasiSplitWitness::Search { bound: 1 },
            &QuasiSplitWitness::Search { bound: 1 },
        )
        .unwrap();
        assert_eq!(
            out.torus_class.class,
            ArtinPolynomial::lefschetz_minus_one(&ctx)
        );
        assert_eq!(render_stack(&ctx, &out.b_dual_class.class), "1 / ((L - 1))");
        assert!(out.b_dual_class.stably_rational.is_yes());
    }

    #[test]
    fn bn_requires_registered_middle() {
        let ctx = bq();
        let g = ctx.group();
        let reg = SpecialRegistry::new(&ctx);
        let q = biquadratic::pair_permutation(g);
        let n = biquadratic::sum_zero(g);
        let pi = LatticeMap::new(
            g,
            &q,
            &n,
            IntMat::from_cols(vec![
                vec![1, 0, -1],
                vec![0, 1, -1],
                vec![1, 0, 0],
                vec![0, 1, 0],
            ]),
        )
        .unwrap();
        let kernel = crate::lattice::kernel_mod_n(g, &pi, 2).unwrap();
        let evidence = SequenceEvidence::ModN {
            map: &pi,
            n: 2,
            kernel: &kernel,
        };
        let err =
            bn_from_special_sequence(&ctx, &reg, &evidence, "R_K", &ArtinPolynomial::one(&ctx));
        assert!(matches!(err, Err(TorusError::NotSpecial(_))));
    }

    #[test]
    fn bn_commutes_with_common_registered_factor() {
        // dividing H and the middle by a common registered monic factor
        // leaves the quotient class unchanged in the fraction ring
        let ctx = bq();
        let g = ctx.group();
        let mut reg = SpecialRegistry::new(&ctx);
        let regular = GSet::regular(g);
        let r_k = quasi_split_class(&ctx, &regular).unwrap();
        reg.register(
            "R_K",
            &ctx,
            r_k.clone(),
            SpecialCertificate::QuasiSplit(regular.clone()),
        )
        .unwrap();
        // the same torus with an extra split factor: R_K × G_m
        let padded = regular.disjoint_union(&GSet::point(g));
        let r_k_padded = quasi_split_class(&ctx, &padded).unwrap();
        reg.register(
            "R_K x Gm",
            &ctx,
            r_k_padded.clone(),
            SpecialCertificate::QuasiSplit(padded),
        )
        .unwrap();
        assert_eq!(
            r_k_padded,
            r_k.mul(&ctx, &ArtinPolynomial::lefschetz_minus_one(&ctx))
        );

        let q = biquadratic::pair_permutation(g);
        let n = biquadratic::sum_zero(g);
        let pi = LatticeMap::new(
            g,
            &q,
            &n,
            IntMat::from_cols(vec![
                vec![1, 0, -1],
                vec![0, 1, -1],
                vec![1, 0, 0],
                vec![0, 1, 0],
            ]),
        )
        .unwrap();
        let kernel = crate::lattice::kernel_mod_n(g, &pi, 2).unwrap();
        let class_h = ArtinPolynomial::lefschetz(&ctx)
            .pow(&ctx, 3)
            .add(&ArtinPolynomial::one(&ctx));
        let evidence = SequenceEvidence::ModN {
            map: &pi,
            n: 2,
            kernel: &kernel,
        };
        let plain = bn_from_special_sequence(&ctx, &reg, &evidence, "R_K", &class_h).unwrap();
        let evidence = SequenceEvidence::ModN {
            map: &pi,
            n: 2,
            kernel: &kernel,
        };
        let scaled = bn_from_special_sequence(
            &ctx,
            &reg,
            &evidence,
            "R_K x Gm",
            &class_h.mul(&ctx, &ArtinPolynomial::lefschetz_minus_one(&ctx)),
        )
        .unwrap();
        assert!(crate::stack::stack_equal(&ctx, &plain.class, &scaled.class).is_equal());
    }

    #[test]
    fn resolution_commutes_with_common_registered_factor() {
        // padding both flanks of a resolution with a common split summand
        // changes neither the divided class nor the dual stack class
        let ctx = bq();
        let g = ctx.group();
        let e12 = ctx.subgroup_by_label("E12").unwrap();
        let cosets = g.coset_gset(e12);
        let perm = GaloisLattice::permutation(g, "Z[G/E12]", &cosets);
        let sign = biquadratic::sign(g);
        let z = GaloisLattice::trivial(g, "Z", 1);
        let incl = LatticeMap::new(g, &sign, &perm, IntMat::from_cols(vec![vec![1, -1]])).unwrap();
        let aug = LatticeMap::new(g, &perm, &z, IntMat::from_rows(vec![vec![1, 1]])).unwrap();
        let mut reg = SpecialRegistry::new(&ctx);
        let plain = class_and_bdual_from_resolution(
            &ctx,
            &mut reg,
            &[incl, aug],
            &QuasiSplitWitness::Explicit(cosets.clone()),
            &QuasiSplitWitness::Search { bound: 1 },
        )
        .unwrap();

        // padded: X(T) → X(T2)⊕Z → X(T1)⊕Z with the identity on the new Z
        let perm_padded =
            GaloisLattice::permutation(g, "Z[G/E12]+Z", &cosets.disjoint_union(&GSet::point(g)));
        let z2 = GaloisLattice::trivial(g, "Z2", 2);
        let incl_padded = LatticeMap::new(
            g,
            &sign,
            &perm_padded,
            IntMat::from_cols(vec![vec![1, -1, 0]]),
        )
        .unwrap();
        let aug_padded = LatticeMap::new(
            g,
            &perm_padded,
            &z2,
            IntMat::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]),
        )
        .unwrap();
        let padded = class_and_bdual_from_resolution(
            &ctx,
            &mut reg,
            &[incl_padded, aug_padded],
            &QuasiSplitWitness::Search { bound: 1 },
            &QuasiSplitWitness::Search { bound: 1 },
        )
        .unwrap();
        assert_eq!(plain.torus_class.class, padded.torus_class.class);
        assert!(crate::stack::stack_equal(
            &ctx,
            &plain.b_dual_class.class,
            &padded.b_dual_class.class
        )
        .is_equal());
    }

    #[test]
    fn filtration_evaluator_basics() {
        let ctx = bq();
        let g = ctx.group();
        let catalog = LatticeClassCatalog::new();
        // quasi-split: the pair-permutation lattice
        let q = biquadratic::pair_permutation(g);
        let r = torus_class_from_lattice(&ctx, &q, &catalog, 2).unwrap();
        assert_eq!(r.class, quasi_split_class(&ctx, &GSet::regular(g)).unwrap());
        // sign lattice: the norm-one torus of E12
        let zpm = biquadratic::sign(g);
        let r = torus_class_from_lattice(&ctx, &zpm, &catalog, 2).unwrap();
        assert_eq!(r.class, poly_of(&ctx, &[("1", 1), ("1-[E12]", 0)]));
        // the diagonal product lattice splits into three norm-one factors
        let d = biquadratic::norm_one_product(g);
        let r = torus_class_from_lattice(&ctx, &d, &catalog, 1).unwrap();
        let e1 = poly_of(&ctx, &[("1", 1), ("1-[E1]", 0)]);
        let e2 = poly_of(&ctx, &[("1", 1), ("1-[E2]", 0)]);
        let e12 = poly_of(&ctx, &[("1", 1), ("1-[E12]", 0)]);
        assert_eq!(r.class, e1.mul(&ctx, &e2).mul(&ctx, &e12));
        // sum-zero: a torsor strip down to rank 2 needs a catalog entry, so
        // without one the twisted plane is unreachable
        let p = biquadratic::twisted_plane(g);
        assert!(torus_class_from_lattice(&ctx, &p, &catalog, 1).is_none());
    }

    #[test]
    fn presentation_dispatch() {
        let ctx = bq();
        let g = ctx.group();
        let catalog = LatticeClassCatalog::new();
        let e12 = ctx.subgroup_by_label("E12").unwrap();
        let qs = TorusPresentation::QuasiSplit {
            name: "R_K".into(),
            gset: GSet::regular(g),
        };
        assert_eq!(
            qs.class(&ctx, &catalog, 1).unwrap().class,
            quasi_split_class(&ctx, &GSet::regular(g)).unwrap()
        );
        let norm_one = TorusPresentation::NormOneQuadratic {
            name: "R1_E12".into(),
            subgroup: e12,
        };
        assert_eq!(
            norm_one.class(&ctx, &catalog, 1).unwrap().class,
            poly_of(&ctx, &[("1", 1), ("1-[E12]", 0)])
        );
        let lat = TorusPresentation::Lattice(biquadratic::twisted_plane(g));
        assert_eq!(lat.name(), "P");
        assert!(matches!(
            lat.class(&ctx, &catalog, 1),
            Err(TorusError::NotQuasiSplit(_))
        ));
    }
}
