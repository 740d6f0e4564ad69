//! End-to-end derivation scenarios: each one reproduces a family of class
//! formulas as a checked derivation and renders a verdict report.
//!
//! A report lists assertions with three possible verdicts: `pass` (the engine
//! verified the statement), `fail` (a required check did not hold), and
//! `discrepancy` (the engine's computed value disagrees with the stated
//! expected value; the computation itself is sound and the disagreement is
//! reported with a witness). Discrepancies are first-class outcomes: the
//! engine adjudicates formulas, it does not assume them.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::burnside::BurnsideElement;
use crate::context::GaloisContext;
use crate::intmat::IntMat;
use crate::lattice::{
    biquadratic, check_iso_certificate, find_iso_certificate, find_permutation_basis,
    integer_kernel, kernel_mod_n, verify_exact_sequence, GaloisLattice, IsoCertificate, LatticeMap,
    PermBasisOutcome,
};
use crate::perm::{orbit_decompose, GSet, SubgroupId};
use crate::poly::{render_poly, ArtinPolynomial};
use crate::stack::{
    render_stack, stack_equal, EqualityVerdict, SpecialCertificate, SpecialRegistry, StackClass,
};
use crate::torus::{
    bn_from_special_sequence, charpoly_oracle_check, class_and_bdual_from_resolution,
    fixed_point_untwist, gm_torsor_factor, quasi_split_class, torus_class_from_lattice,
    twist_of_induced_strata, weil_restriction_p1_class, LatticeClassCatalog, QuasiSplitWitness,
    SequenceEvidence, Stratum, TorusError, TwistPayload, AXIOM_P1XP1_RULING, AXIOM_RANK2_RATIONAL,
};
use crate::trace::{axioms_of, ClassResult, DerivationStep, RationalityFlag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: BTreeMap<String, String>,
    /// The independence hypotheses in force (printed in every report).
    pub axiom_flags: Vec<String>,
    /// Statements of the axiom nodes reachable in the trace.
    pub axioms: Vec<String>,
    pub assertions: Vec<Assertion>,
    pub steps: Vec<DerivationStep>,
    pub wall_ms: u64,
}

impl ScenarioReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.verdict == Verdict::Pass)
    }

    pub fn has_failure(&self) -> bool {
        self.assertions.iter().any(|a| a.verdict == Verdict::Fail)
    }

    pub fn has_discrepancy(&self) -> bool {
        self.assertions
            .iter()
            .any(|a| a.verdict == Verdict::Discrepancy)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== scenario {} ==\n", self.scenario));
        if !self.params.is_empty() {
            let params: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            out.push_str(&format!("params: {}\n", params.join(", ")));
        }
        out.push_str("axiom flags:\n");
        if self.axiom_flags.is_empty() {
            out.push_str("  (none: verdicts hold in the coefficient model only)\n");
        }
        for f in &self.axiom_flags {
            out.push_str(&format!("  {f}\n"));
        }
        out.push_str("assertions:\n");
        for a in &self.assertions {
            let tag = match a.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Discrepancy => "discrepancy",
            };
            out.push_str(&format!("  [{tag}] {} — {}\n", a.name, a.detail));
            if let Some(w) = &a.witness {
                out.push_str(&format!("         witness: {w}\n"));
            }
        }
        if !self.axioms.is_empty() {
            out.push_str("axiom nodes used:\n");
            for ax in &self.axioms {
                out.push_str(&format!("  - {ax}\n"));
            }
        }
        out.push_str(&format!(
            "{} derivation steps; wall {} ms\n",
            self.steps.len(),
            self.wall_ms
        ));
        out
    }
}

struct Builder {
    scenario: String,
    params: BTreeMap<String, String>,
    assertions: Vec<Assertion>,
    steps: Vec<DerivationStep>,
    start: Instant,
    axiom_flags: Vec<String>,
}

impl Builder {
    fn new(ctx: &GaloisContext, scenario: &str) -> Self {
        Builder {
            scenario: scenario.into(),
            params: BTreeMap::new(),
            assertions: Vec::new(),
            steps: Vec::new(),
            start: Instant::now(),
            axiom_flags: ctx.axiom_notes(),
        }
    }

    fn param(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.into(), v.to_string());
    }

    fn absorb<T>(&mut self, result: &ClassResult<T>) {
        self.steps.extend(result.trace.iter().cloned());
    }

    fn push(&mut self, name: &str, verdict: Verdict, witness: Option<String>, detail: String) {
        // every fail or discrepancy carries a witness, at minimum the
        // diagnostic that produced it
        let witness = match (verdict, witness) {
            (Verdict::Pass, w) => w,
            (_, Some(w)) => Some(w),
            (_, None) => Some(detail.clone()),
        };
        self.assertions.push(Assertion {
            name: name.into(),
            verdict,
            witness,
            detail,
        });
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.push(
            name,
            if ok { Verdict::Pass } else { Verdict::Fail },
            None,
            detail.into(),
        );
    }

    fn check_poly(
        &mut self,
        ctx: &GaloisContext,
        name: &str,
        got: &ArtinPolynomial,
        expected: &ArtinPolynomial,
    ) {
        if got == expected {
            self.push(name, Verdict::Pass, None, render_poly(ctx, got));
        } else {
            self.push(
                name,
                Verdict::Fail,
                Some(render_poly(ctx, &got.sub(expected))),
                format!(
                    "got {} but expected {}",
                    render_poly(ctx, got),
                    render_poly(ctx, expected)
                ),
            );
        }
    }

    /// Expect two stack classes to be equal.
    fn check_stack_equal(
        &mut self,
        ctx: &GaloisContext,
        name: &str,
        x: &StackClass,
        y: &StackClass,
    ) {
        match stack_equal(ctx, x, y) {
            EqualityVerdict::Equal { sound } => {
                self.push(
                    name,
                    Verdict::Pass,
                    None,
                    format!(
                        "{} = {}{}",
                        render_stack(ctx, x),
                        render_stack(ctx, y),
                        if sound { "" } else { " (model only)" }
                    ),
                );
            }
            EqualityVerdict::Unequal { witness, marks, .. } => {
                self.push(
                    name,
                    Verdict::Fail,
                    Some(format!("{} with marks {marks}", render_poly(ctx, &witness))),
                    "expected equality but the cross-multiplied difference is nonzero".into(),
                );
            }
        }
    }

    /// Expect inequality with a specific witness leading coefficient.
    fn check_stack_unequal(
        &mut self,
        ctx: &GaloisContext,
        name: &str,
        x: &StackClass,
        y: &StackClass,
        expected_leading: &BurnsideElement,
        expected_marks: &[i64],
    ) {
        match stack_equal(ctx, x, y) {
            EqualityVerdict::Equal { .. } => {
                self.push(
                    name,
                    Verdict::Fail,
                    None,
                    "expected inequality but the classes are equal".into(),
                );
            }
            EqualityVerdict::Unequal {
                witness,
                leading_degree,
                marks,
                sound,
            } => {
                let lead = witness.coeff(ctx, leading_degree);
                let ok = &lead == expected_leading && marks.0 == expected_marks;
                self.push(
                    name,
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    Some(format!(
                        "difference {} has leading coefficient {} with marks {marks}",
                        render_poly(ctx, &witness),
                        ctx.render_element(&lead),
                    )),
                    format!(
                        "unequal{}; witness leading coefficient {} expected {}",
                        if sound { "" } else { " (model only)" },
                        ctx.render_element(&lead),
                        ctx.render_element(expected_leading)
                    ),
                );
            }
        }
    }

    fn finish(self) -> ScenarioReport {
        let axioms = axioms_of(&self.steps);
        ScenarioReport {
            scenario: self.scenario,
            params: self.params,
            axiom_flags: self.axiom_flags,
            axioms,
            assertions: self.assertions,
            steps: self.steps,
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("the scenario needs the biquadratic context (C2×C2 with labels K, E1, E2, E12, F)")]
    WrongContext,
    #[error(transparent)]
    Torus(#[from] TorusError),
}

fn require_biquadratic(ctx: &GaloisContext) -> Result<(), ScenarioError> {
    let ok = ctx.group().order() == 4
        && ctx.group().num_classes() == 5
        && ["K", "E1", "E2", "E12", "F"]
            .iter()
            .all(|l| ctx.subgroup_by_label(l).is_some());
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::WrongContext)
    }
}

fn label_class(ctx: &GaloisContext, label: &str) -> BurnsideElement {
    BurnsideElement::basis(ctx.group(), ctx.subgroup_by_label(label).unwrap())
}

fn norm_one_poly(ctx: &GaloisContext, label: &str) -> ArtinPolynomial {
    ArtinPolynomial::lefschetz(ctx)
        .sub(&ArtinPolynomial::constant(ctx, label_class(ctx, label)))
        .add(&ArtinPolynomial::one(ctx))
}

/// The norm-one class of an index-2 subgroup derived without geometric
/// axioms: from the resolution 0 → (sign of H) → Z[Γ/H] → Z → 0, so
/// {R/G_m} = {R}/(L−1) by exact division. Registers the quasi-split class.
fn norm_one_by_resolution(
    ctx: &GaloisContext,
    registry: &mut SpecialRegistry,
    h: SubgroupId,
) -> Result<ClassResult<ArtinPolynomial>, TorusError> {
    let group = ctx.group();
    let cosets = group.coset_gset(h);
    let perm = GaloisLattice::permutation(group, format!("Z[G/{}]", ctx.label(h)), &cosets);
    let signs: Vec<IntMat> = (0..group.num_generators())
        .map(|gi| {
            let fixes = perm.action(gi)[(0, 0)] == 1;
            IntMat::from_rows(vec![vec![if fixes { 1 } else { -1 }]])
        })
        .collect();
    let sign_lat = GaloisLattice::new(group, format!("sign({})", ctx.label(h)), signs)?;
    let incl = LatticeMap::new(
        group,
        &sign_lat,
        &perm,
        IntMat::from_cols(vec![vec![1, -1]]),
    )?;
    let z = GaloisLattice::trivial(group, "Z", 1);
    let aug = LatticeMap::new(group, &perm, &z, IntMat::from_rows(vec![vec![1, 1]]))?;
    let outcome = class_and_bdual_from_resolution(
        ctx,
        registry,
        &[incl, aug],
        &QuasiSplitWitness::Explicit(cosets),
        &QuasiSplitWitness::Search { bound: 1 },
    )?;
    let mut result = outcome.torus_class;
    result.stably_rational = RationalityFlag::Yes(
        "kernel of the norm; an open subvariety of the twisted projective line".into(),
    );
    Ok(result)
}

/// The natural G-set on the group's letters (the defining permutation
/// action).
fn natural_gset(ctx: &GaloisContext) -> GSet {
    let group = ctx.group();
    let action = (0..group.num_generators())
        .map(|i| group.generator(i).to_vec())
        .collect();
    GSet::new(group, action).expect("the defining action is a valid action")
}

/// Augmentation-quotient lattice Z[S]/Z·(1,…,1) with the induced action, and
/// the quotient map from Z[S].
fn aug_quotient(ctx: &GaloisContext, gset: &GSet, name: &str) -> (GaloisLattice, LatticeMap) {
    let group = ctx.group();
    let s = gset.size();
    let perm = GaloisLattice::permutation(group, format!("Z[{name}]"), gset);
    let r = s - 1;
    let action: Vec<IntMat> = (0..group.num_generators())
        .map(|gi| {
            let mut m = IntMat::zero(r, r);
            for i in 0..r {
                let img = gset.action()[gi][i];
                if img < r {
                    m[(img, i)] = 1;
                } else {
                    for row in 0..r {
                        m[(row, i)] = -1;
                    }
                }
            }
            m
        })
        .collect();
    let quotient =
        GaloisLattice::new(group, format!("{name}/diag"), action).expect("quotient action");
    let mut qmat = IntMat::zero(r, s);
    for i in 0..r {
        qmat[(i, i)] = 1;
    }
    for row in 0..r {
        qmat[(row, s - 1)] = -1;
    }
    let q = LatticeMap::new(group, &perm, &quotient, qmat).expect("quotient map is equivariant");
    (quotient, q)
}

/// The division route to the central classes: {R_K} as the quasi-split class
/// of the regular set, {G} = {R_K} exactly divided by the norm-one class of
/// E12, and {T} = {G}/(L−1).
pub struct DivisionRoute {
    pub r_k: ArtinPolynomial,
    pub g: ClassResult<ArtinPolynomial>,
    pub t: ClassResult<ArtinPolynomial>,
}

pub fn division_route(
    ctx: &GaloisContext,
    registry: &mut SpecialRegistry,
) -> Result<DivisionRoute, ScenarioError> {
    require_biquadratic(ctx)?;
    let group = ctx.group();
    let regular = GSet::regular(group);
    let r_k = quasi_split_class(ctx, &regular).map_err(ScenarioError::Torus)?;
    registry
        .register(
            "R_K",
            ctx,
            r_k.clone(),
            SpecialCertificate::QuasiSplit(regular),
        )
        .map_err(|e| ScenarioError::Torus(e.into()))?;

    // verify the presentation 0 → M → Q → sign → 0 underlying the division
    let q = biquadratic::pair_permutation(group);
    let m = biquadratic::diag_quotient(group);
    let zpm = biquadratic::sign(group);
    let m_into_q = LatticeMap::new(
        ctx.group(),
        &m,
        &q,
        IntMat::from_cols(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![-1, -1, 0, 0]]),
    )
    .map_err(TorusError::from)?;
    let q_onto_sign = LatticeMap::new(
        ctx.group(),
        &q,
        &zpm,
        IntMat::from_rows(vec![vec![1, -1, -1, 1]]),
    )
    .map_err(TorusError::from)?;
    let verdict =
        verify_exact_sequence(group, &[m_into_q, q_onto_sign]).map_err(TorusError::from)?;
    if let Some(fail) = verdict.first_failure() {
        return Err(ScenarioError::Torus(TorusError::BadSequence(format!(
            "{}: {}",
            fail.name, fail.detail
        ))));
    }

    let e12 = ctx.subgroup_by_label("E12").unwrap();
    let norm_one_e12 = norm_one_by_resolution(ctx, registry, e12)?;
    let g_poly = r_k
        .exact_divide(ctx, &norm_one_e12.class)
        .map_err(TorusError::from)?;
    let mut g_trace = norm_one_e12.trace.clone();
    g_trace.push(
        DerivationStep::verified("quotient-by-special-middle", render_poly(ctx, &g_poly))
            .with_premises(vec![
                "R_K = ".to_string() + &render_poly(ctx, &r_k),
                format!(
                    "B(norm-one E12) inverse = {}",
                    render_poly(ctx, &norm_one_e12.class)
                ),
            ]),
    );
    let g = ClassResult::new(
        g_poly.clone(),
        RationalityFlag::Unknown("rationality of the rank-3 torus is not derived here".into()),
        g_trace,
    );
    let t_poly = g_poly
        .exact_divide(ctx, &ArtinPolynomial::lefschetz_minus_one(ctx))
        .map_err(TorusError::from)?;
    let t = ClassResult::new(
        t_poly.clone(),
        RationalityFlag::Unknown("rank-2 rationality is quoted, never derived".into()),
        vec![
            DerivationStep::verified("quotient-by-special-middle", render_poly(ctx, &t_poly))
                .with_premises(vec![render_poly(ctx, &g_poly), "L - 1".into()]),
        ],
    );
    Ok(DivisionRoute { r_k, g, t })
}

/// The two-variable inversion/swap actions on the coordinate square, applied
/// to the boundary strata. `swap` exchanges the coordinates first; `inv`
/// inverts each coordinate afterwards.
#[derive(Clone, Copy)]
struct SquareAction {
    swap: bool,
    inv: (bool, bool),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Pt {
    Zero,
    Inf,
}

impl Pt {
    fn inv(self) -> Pt {
        match self {
            Pt::Zero => Pt::Inf,
            Pt::Inf => Pt::Zero,
        }
    }
}

impl SquareAction {
    fn apply_point(&self, (a, b): (Pt, Pt)) -> (Pt, Pt) {
        let (x, y) = if self.swap { (b, a) } else { (a, b) };
        (
            if self.inv.0 { x.inv() } else { x },
            if self.inv.1 { y.inv() } else { y },
        )
    }

    /// Components of the one-dimensional boundary stratum: (slot, value),
    /// slot 0 = {value} × G_m, slot 1 = G_m × {value}.
    fn apply_component(&self, (slot, v): (usize, Pt)) -> (usize, Pt) {
        // the free coordinate moves to the other slot exactly when we swap
        let new_slot = if self.swap { 1 - slot } else { slot };
        // the pinned value passes through the inversion of its landing slot
        let landing_inv = if new_slot == 0 {
            self.inv.0
        } else {
            self.inv.1
        };
        (new_slot, if landing_inv { v.inv() } else { v })
    }
}

/// The generator actions on the square: s1·(u,v) = (v⁻¹, u⁻¹) and
/// s2·(u,v) = (v, u).
fn square_generator_actions() -> [SquareAction; 2] {
    [
        SquareAction {
            swap: true,
            inv: (true, true),
        },
        SquareAction {
            swap: true,
            inv: (false, false),
        },
    ]
}

fn corner_points() -> Vec<(Pt, Pt)> {
    vec![
        (Pt::Zero, Pt::Zero),
        (Pt::Zero, Pt::Inf),
        (Pt::Inf, Pt::Zero),
        (Pt::Inf, Pt::Inf),
    ]
}

fn edge_components() -> Vec<(usize, Pt)> {
    vec![(0, Pt::Zero), (0, Pt::Inf), (1, Pt::Zero), (1, Pt::Inf)]
}

fn gset_from_orbit_model<T: PartialEq + Copy>(
    ctx: &GaloisContext,
    points: &[T],
    actions: &[SquareAction; 2],
    apply: impl Fn(&SquareAction, T) -> T,
) -> GSet {
    let tables: Vec<Vec<usize>> = actions
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|&p| {
                    let img = apply(a, p);
                    points
                        .iter()
                        .position(|&q| q == img)
                        .expect("action is closed")
                })
                .collect()
        })
        .collect();
    GSet::new(ctx.group(), tables).expect("derived action satisfies the relations")
}

/// Quadratic basics: the norm-one, quasi-split and projective-line formulas
/// for each quadratic subfield, plus a seeded randomized consistency check of
/// the Burnside tables.
pub fn scenario_basics(ctx: &GaloisContext, seed: u64) -> Result<ScenarioReport, ScenarioError> {
    require_biquadratic(ctx)?;
    let mut b = Builder::new(ctx, "basics");
    b.param("seed", seed);
    let group = ctx.group();
    let lm1 = ArtinPolynomial::lefschetz_minus_one(ctx);

    for label in ["E1", "E2", "E12"] {
        let h = ctx.subgroup_by_label(label).unwrap();
        // (c) geometric route: twisted projective line minus the point pair
        let geometric = crate::torus::norm_one_quadratic_class(ctx, h)?;
        b.absorb(&geometric);
        b.check_poly(
            ctx,
            &format!("norm-one-{label}"),
            &geometric.class,
            &norm_one_poly(ctx, label),
        );
        // (d) the quasi-split class factors as (L−1)(L−[E]+1)
        let qs = quasi_split_class(ctx, &group.coset_gset(h))?;
        b.check_poly(
            ctx,
            &format!("qs-quadratic-{label}"),
            &qs,
            &lm1.mul(ctx, &geometric.class),
        );
        // (e) the projective-line restriction
        let p1 = weil_restriction_p1_class(ctx, &group.coset_gset(h))?;
        let expected_p1 = ArtinPolynomial::monomial(ctx, BurnsideElement::one(group), 2)
            .add(&ArtinPolynomial::monomial(ctx, label_class(ctx, label), 1))
            .add(&ArtinPolynomial::one(ctx));
        b.check_poly(ctx, &format!("p1-quadratic-{label}"), &p1, &expected_p1);
    }

    // the same identity over a standalone order-2 group
    let cq = GaloisContext::quadratic();
    let qs = quasi_split_class(&cq, &GSet::regular(cq.group())).map_err(ScenarioError::Torus)?;
    let expected = ArtinPolynomial::lefschetz_minus_one(&cq).mul(&cq, &norm_one_poly(&cq, "E"));
    b.check(
        "qs-C2-regular",
        qs == expected,
        format!("over C2: {}", render_poly(&cq, &qs)),
    );

    // seeded randomized consistency of the Burnside tables: the product of
    // two random elements has componentwise-multiplicative marks, and the
    // mark vector vanishes exactly on the zero element
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut failures = 0usize;
    for _ in 0..200 {
        let coeffs: Vec<(SubgroupId, i64)> = (0..group.num_classes())
            .map(|i| (SubgroupId(i), rng.range(-4, 4)))
            .collect();
        let a = BurnsideElement::from_coeffs(group, &coeffs);
        let coeffs: Vec<(SubgroupId, i64)> = (0..group.num_classes())
            .map(|i| (SubgroupId(i), rng.range(-4, 4)))
            .collect();
        let c = BurnsideElement::from_coeffs(group, &coeffs);
        let prod = ctx.tables().mul(&a, &c).expect("same group");
        let ma = ctx.tables().marks(&a);
        let mc = ctx.tables().marks(&c);
        let mp = ctx.tables().marks(&prod);
        let componentwise: Vec<i64> = ma.0.iter().zip(&mc.0).map(|(x, y)| x * y).collect();
        if mp.0 != componentwise || ctx.tables().marks(&a).is_zero() != a.is_zero() {
            failures += 1;
        }
    }
    b.check(
        "burnside-tables-randomized",
        failures == 0,
        format!("200 seeded samples, {failures} failures"),
    );

    Ok(b.finish())
}

/// The rank-2 twisted torus: division route, geometric stratification
/// cross-check with verbatim orbit tables, the characteristic-polynomial
/// oracle, and the per-coefficient comparison against the stated polynomial
/// L² + (\[E12\] − \[K\])L + 1 (any deviation is a discrepancy, not a failure).
pub fn scenario_torus_t(ctx: &GaloisContext) -> Result<ScenarioReport, ScenarioError> {
    require_biquadratic(ctx)?;
    let mut b = Builder::new(ctx, "lemma-t");
    let group = ctx.group();
    let mut registry = SpecialRegistry::new(ctx);

    // presentation 0 → P → M → Z → 0
    let p = biquadratic::twisted_plane(group);
    let m = biquadratic::diag_quotient(group);
    let z = GaloisLattice::trivial(group, "Z", 1);
    let p_into_m = LatticeMap::new(
        group,
        &p,
        &m,
        IntMat::from_cols(vec![
            biquadratic::to_diag_quotient_coords([1, 0, 1, 0]),
            biquadratic::to_diag_quotient_coords([1, 0, 0, 1]),
        ]),
    )
    .map_err(TorusError::from)?;
    let degree_map = LatticeMap::new(group, &m, &z, IntMat::from_rows(vec![vec![1, 1, -1]]))
        .map_err(TorusError::from)?;
    let verdict =
        verify_exact_sequence(group, &[p_into_m, degree_map]).map_err(TorusError::from)?;
    b.check(
        "sequence-P-M-Z",
        verdict.passed(),
        verdict
            .first_failure()
            .map(|f| format!("{}: {}", f.name, f.detail))
            .unwrap_or_else(|| "all checks pass".into()),
    );

    // division route (verifies 0 → M → Q → sign → 0 on the way)
    let route = division_route(ctx, &mut registry)?;
    b.absorb(&route.g);
    b.absorb(&route.t);
    b.check(
        "sequence-M-Q-sign",
        true,
        "verified inside the division route",
    );
    b.check(
        "g-remultiplies",
        route.g.class.mul(ctx, &norm_one_poly(ctx, "E12")) == route.r_k,
        "G · (L - [E12] + 1) reproduces the quasi-split class of the regular set",
    );
    b.check(
        "t-remultiplies",
        route
            .t
            .class
            .mul(ctx, &ArtinPolynomial::lefschetz_minus_one(ctx))
            == route.g.class,
        "T · (L - 1) reproduces G",
    );

    // geometric route: the twisted square compactifies inside a product of
    // projective lines whose twist is the quadratic restriction along E12
    let p1_e12 = weil_restriction_p1_class(
        ctx,
        &group.coset_gset(ctx.subgroup_by_label("E12").unwrap()),
    )?;
    let expected_p1 = ArtinPolynomial::monomial(ctx, BurnsideElement::one(group), 2)
        .add(&ArtinPolynomial::monomial(ctx, label_class(ctx, "E12"), 1))
        .add(&ArtinPolynomial::one(ctx));
    b.check_poly(ctx, "twisted-square-closure", &p1_e12, &expected_p1);
    // the two-stage untwisting imports two geometric facts: the diagonal
    // quotient has a fixed point on each factor, and the residual swap
    // descent is of Weil-restriction form
    let untwist = fixed_point_untwist(ctx, &Stratum::ProjectiveLine { inversion: true })?;
    b.absorb(&untwist);
    b.steps.push(DerivationStep::axiom(
        "untwist-square-of-projective-lines",
        render_poly(ctx, &p1_e12),
        AXIOM_P1XP1_RULING,
    ));

    // boundary strata from the action formulas, orbit tables verbatim
    let actions = square_generator_actions();
    let corners = corner_points();
    let z1 = gset_from_orbit_model(ctx, &corners, &actions, |a, p| a.apply_point(p));
    let z1_orbits = orbit_decompose(group, &z1).map_err(TorusError::from)?;
    let z1_table: Vec<String> = z1_orbits
        .iter()
        .map(|o| {
            format!(
                "orbit {:?} stabilizer {}",
                o.points,
                ctx.label(o.stabilizer)
            )
        })
        .collect();
    b.steps.push(DerivationStep::verified(
        "orbit-table-corner-stratum",
        z1_table.join("; "),
    ));
    // the stated claim: one transitive orbit of the four corners
    let transitive = z1_orbits.len() == 1;
    if transitive {
        b.push(
            "corner-stratum-transitivity",
            Verdict::Pass,
            None,
            "the four corners form one orbit".into(),
        );
    } else {
        b.push(
            "corner-stratum-transitivity",
            Verdict::Discrepancy,
            Some(z1_table.join("; ")),
            format!(
                "stated: one transitive orbit of the four corners; computed: {} orbits — the computed table is used downstream",
                z1_orbits.len()
            ),
        );
    }
    let z1_payloads: Vec<TwistPayload> = z1_orbits
        .iter()
        .map(|o| TwistPayload {
            coeffs: vec![BurnsideElement::one(ctx.subgroup_group(o.stabilizer))],
        })
        .collect();
    let z1_class = twist_of_induced_strata(ctx, &z1, &z1_payloads)?;

    let edges = edge_components();
    let z2 = gset_from_orbit_model(ctx, &edges, &actions, |a, p| a.apply_component(p));
    let z2_orbits = orbit_decompose(group, &z2).map_err(TorusError::from)?;
    b.check(
        "edge-stratum-transitivity",
        z2_orbits.len() == 1 && z2_orbits[0].stabilizer == group.trivial_class(),
        "the four one-dimensional components form one free orbit",
    );
    let z2_payloads: Vec<TwistPayload> = z2_orbits
        .iter()
        .map(|o| {
            let sub = ctx.subgroup_group(o.stabilizer);
            TwistPayload {
                coeffs: vec![BurnsideElement::one(sub).neg(), BurnsideElement::one(sub)],
            }
        })
        .collect();
    let z2_class = twist_of_induced_strata(ctx, &z2, &z2_payloads)?;
    let expected_z2 = ArtinPolynomial::monomial(ctx, label_class(ctx, "K"), 1)
        .sub(&ArtinPolynomial::constant(ctx, label_class(ctx, "K")));
    b.check_poly(ctx, "edge-stratum-class", &z2_class, &expected_z2);

    // scissor subtraction must agree with the division route
    let t_geometric = p1_e12.sub(&z1_class).sub(&z2_class);
    b.check_poly(ctx, "t-two-routes-agree", &t_geometric, &route.t.class);

    // characteristic polynomial oracle at every group element
    let p_lat = biquadratic::twisted_plane(group);
    let oracle = charpoly_oracle_check(ctx, &route.t.class, &p_lat);
    b.check(
        "t-charpoly-oracle",
        oracle.is_ok(),
        oracle
            .err()
            .unwrap_or_else(|| "specializations match at all four elements".into()),
    );

    // per-coefficient comparison with the stated polynomial
    let stated = ArtinPolynomial::monomial(ctx, BurnsideElement::one(group), 2)
        .add(&ArtinPolynomial::monomial(
            ctx,
            label_class(ctx, "E12").sub(&label_class(ctx, "K")),
            1,
        ))
        .add(&ArtinPolynomial::one(ctx));
    for k in (0..=2).rev() {
        let got = route.t.class.coeff(ctx, k);
        let want = stated.coeff(ctx, k);
        let name = format!("t-coefficient-L{k}");
        if got == want {
            b.push(&name, Verdict::Pass, None, ctx.render_element(&got));
        } else {
            let diff = got.sub(&want);
            b.push(
                &name,
                Verdict::Discrepancy,
                Some(format!(
                    "computed {} minus stated {} = {} with marks {}",
                    ctx.render_element(&got),
                    ctx.render_element(&want),
                    ctx.render_element(&diff),
                    ctx.tables().marks(&diff)
                )),
                "computed coefficient differs from the stated one; downstream verdicts use the computed class".into(),
            );
        }
    }

    Ok(b.finish())
}

/// Everything the inequality theorem needs, reused by the scenarios below.
struct InequalityData {
    registry: SpecialRegistry,
    route: DivisionRoute,
    /// {G'} as a polynomial.
    g_prime: ArtinPolynomial,
    /// {BG} = (L−1)/{quasi-split resolution middle} as a stack class.
    bg: ClassResult<StackClass>,
    /// {G}⁻¹ = (L−[E12]+1)/{R_K}.
    g_inverse: StackClass,
    /// The impossible relation's coefficient 2 + [K] − [E1] − [E2] − [E12].
    witness: BurnsideElement,
}

fn inequality_data(ctx: &GaloisContext) -> Result<InequalityData, ScenarioError> {
    require_biquadratic(ctx)?;
    let group = ctx.group();
    let mut registry = SpecialRegistry::new(ctx);
    let route = division_route(ctx, &mut registry)?;

    // route (b): the resolution 1 → G_m → R_{E1} × R_{E2} → G' → 1 on
    // lattices 0 → (sum-zero) → Z[letters] → Z → 0
    let letters = natural_gset(ctx);
    let perm4 = GaloisLattice::permutation(group, "Z[letters]", &letters);
    let sum_zero = biquadratic::sum_zero(group);
    let incl = LatticeMap::new(
        group,
        &sum_zero,
        &perm4,
        IntMat::from_cols(vec![
            vec![1, 0, 0, -1],
            vec![0, 1, 0, -1],
            vec![0, 0, 1, -1],
        ]),
    )
    .map_err(TorusError::from)?;
    let z = GaloisLattice::trivial(group, "Z", 1);
    let aug = LatticeMap::new(group, &perm4, &z, IntMat::from_rows(vec![vec![1, 1, 1, 1]]))
        .map_err(TorusError::from)?;
    let outcome = class_and_bdual_from_resolution(
        ctx,
        &mut registry,
        &[incl, aug],
        &QuasiSplitWitness::Explicit(letters),
        &QuasiSplitWitness::Search { bound: 1 },
    )?;
    let g_prime_b = outcome.torus_class;
    let bg = outcome.b_dual_class;

    let e12_class = norm_one_poly(ctx, "E12");
    let g_inverse = StackClass::new(
        ctx,
        &registry,
        e12_class,
        vec![registry
            .lookup("R_K")
            .expect("registered by the division route")
            .clone()],
    )
    .map_err(TorusError::from)?;

    let witness = ctx
        .parse_element("2+[K]-[E1]-[E2]-[E12]")
        .expect("witness parses");

    Ok(InequalityData {
        registry,
        route,
        g_prime: g_prime_b.class,
        bg,
        g_inverse,
        witness,
    })
}

/// The inequality theorem: {BG} ≠ {G}⁻¹, by both routes, stable under
/// multiplying by r more multiplicative-group factors.
pub fn scenario_theorem_1_5(ctx: &GaloisContext, r: u32) -> Result<ScenarioReport, ScenarioError> {
    let mut b = Builder::new(ctx, "thm15");
    b.param("r", r);
    let group = ctx.group();
    let data = inequality_data(ctx)?;
    b.absorb(&data.bg);
    b.absorb(&data.route.g);

    // route (a): {G'} as a G_m-torsor over the product of two norm-one tori
    let mut registry2 = SpecialRegistry::new(ctx);
    let e1 = ctx.subgroup_by_label("E1").unwrap();
    let e2 = ctx.subgroup_by_label("E2").unwrap();
    let n1 = norm_one_by_resolution(ctx, &mut registry2, e1)?;
    let n2 = norm_one_by_resolution(ctx, &mut registry2, e2)?;
    let product = ClassResult::new(
        n1.class.mul(ctx, &n2.class),
        RationalityFlag::Yes("a product of rational tori is rational".into()),
        [n1.trace.clone(), n2.trace.clone()].concat(),
    );
    let sum_zero = biquadratic::sum_zero(group);
    let d2 = GaloisLattice::new(
        group,
        "D2",
        vec![
            IntMat::from_rows(vec![vec![-1, 0], vec![0, 1]]),
            IntMat::from_rows(vec![vec![1, 0], vec![0, -1]]),
        ],
    )
    .map_err(TorusError::from)?;
    let incl = LatticeMap::new(
        group,
        &d2,
        &sum_zero,
        IntMat::from_cols(vec![vec![1, -1, 0], vec![0, 0, 1]]),
    )
    .map_err(TorusError::from)?;
    let z = GaloisLattice::trivial(group, "Z", 1);
    let theta = LatticeMap::new(group, &sum_zero, &z, IntMat::from_rows(vec![vec![1, 1, 0]]))
        .map_err(TorusError::from)?;
    let g_prime_a = gm_torsor_factor(ctx, &[incl, theta], &product)?;
    b.absorb(&g_prime_a);

    // the two routes agree, and match (L−1)(L−[E1]+1)(L−[E2]+1)
    b.check_poly(ctx, "g-prime-routes-agree", &g_prime_a.class, &data.g_prime);
    let expected_g_prime = ArtinPolynomial::lefschetz_minus_one(ctx)
        .mul(ctx, &norm_one_poly(ctx, "E1"))
        .mul(ctx, &norm_one_poly(ctx, "E2"));
    b.check_poly(ctx, "g-prime-formula", &data.g_prime, &expected_g_prime);

    // {BG}·{G'} = 1, and BG is stably rational
    let bg_times_gprime = data
        .bg
        .class
        .mul(ctx, &StackClass::from_polynomial(data.g_prime.clone()));
    b.check_stack_equal(
        ctx,
        "bg-times-g-prime-is-one",
        &bg_times_gprime,
        &StackClass::one(ctx),
    );
    b.check(
        "bg-stably-rational",
        data.bg.stably_rational.is_yes(),
        "propagated from the quasi-split resolution",
    );

    // the inequality, with its witness
    b.check_stack_unequal(
        ctx,
        "bg-differs-from-g-inverse",
        &data.bg.class,
        &data.g_inverse,
        &data.witness,
        &[0, 0, 0, 0, 2],
    );

    // restating through the leading coefficients of the quartic: the
    // L³-coefficient of {R_K} is −[K], while the product side carries
    // 2 − [E1] − [E2] − [E12]
    let lead = data.route.r_k.coeff(ctx, 3);
    b.check(
        "r-k-cubic-coefficient",
        lead == label_class(ctx, "K").neg(),
        format!(
            "L^3-coefficient of the regular quasi-split class is {}",
            ctx.render_element(&lead)
        ),
    );
    let product_side = expected_g_prime.mul(ctx, &norm_one_poly(ctx, "E12"));
    let difference = product_side
        .coeff(ctx, 3)
        .sub(&data.route.r_k.coeff(ctx, 3));
    b.check(
        "leading-coefficient-comparison",
        difference == data.witness && !ctx.tables().marks(&difference).is_zero(),
        format!(
            "cubic coefficients differ by {} with marks {}",
            ctx.render_element(&difference),
            ctx.tables().marks(&difference)
        ),
    );

    // extension to H = G × G_m^r
    let lm1 = ArtinPolynomial::lefschetz_minus_one(ctx);
    let mut bh = data.bg.class.clone();
    let mut h_inverse = data.g_inverse.clone();
    for _ in 0..r {
        bh = bh
            .divide_by_registered(ctx, &data.registry, lm1.clone())
            .map_err(TorusError::from)?;
        h_inverse = h_inverse
            .divide_by_registered(ctx, &data.registry, lm1.clone())
            .map_err(TorusError::from)?;
    }
    b.check_stack_unequal(
        ctx,
        "bh-differs-from-h-inverse",
        &bh,
        &h_inverse,
        &data.witness,
        &[0, 0, 0, 0, 2],
    );

    // replay for the dual torus, behind the rank-2 rationality axiom:
    // {BG'} = {G}⁻¹, so {BG'}{G'} = {G'}/{G} ≠ 1 as well
    b.steps.push(DerivationStep::axiom(
        "bdual-from-rationality",
        "BG' = 1/G".to_string(),
        AXIOM_RANK2_RATIONAL,
    ));
    let bgp_times_gp = data
        .g_inverse
        .mul(ctx, &StackClass::from_polynomial(data.g_prime.clone()));
    b.check_stack_unequal(
        ctx,
        "bg-prime-times-g-prime-not-one",
        &bgp_times_gp,
        &StackClass::one(ctx),
        &data.witness,
        &[0, 0, 0, 0, 2],
    );

    Ok(b.finish())
}

/// The finite-subgroup theorem: the 2m-torsion A of the dual torus has
/// {BA} = {BG}⁻¹{G}⁻¹ ≠ 1, through the mod-n kernel lattices and the stated
/// conjugation certificates.
pub fn scenario_theorem_1_6(ctx: &GaloisContext, m: i64) -> Result<ScenarioReport, ScenarioError> {
    if m < 1 {
        return Err(ScenarioError::UnsupportedParameter(format!(
            "m must be a positive integer, got {m}"
        )));
    }
    let n = 2 * m;
    let mut b = Builder::new(ctx, "thm16");
    b.param("m", m);
    b.param("n", n);
    let group = ctx.group();
    let data = inequality_data(ctx)?;
    b.absorb(&data.bg);
    b.absorb(&data.route.g);

    // the kernel of Q → (sum-zero) → (sum-zero)/n
    let q = biquadratic::pair_permutation(group);
    let sum_zero = biquadratic::sum_zero(group);
    let pi = LatticeMap::new(
        group,
        &q,
        &sum_zero,
        IntMat::from_cols(vec![
            vec![1, 0, -1],
            vec![0, 1, -1],
            vec![1, 0, 0],
            vec![0, 1, 0],
        ]),
    )
    .map_err(TorusError::from)?;
    let kernel = kernel_mod_n(group, &pi, n).map_err(TorusError::from)?;
    b.check(
        "kernel-index",
        kernel.index == n.pow(3),
        format!(
            "index {} equals the order n^3 = {} of the image mod n",
            kernel.index,
            n.pow(3)
        ),
    );
    let (stated_kernel, stated_incl) = biquadratic::torsion_kernel(group, n);
    b.check(
        "kernel-matches-stated-basis",
        kernel
            .inclusion
            .matrix
            .same_column_lattice(&stated_incl.matrix),
        "the computed kernel equals the span of n·e13, n·e23, n·e14 and e13−e23−e14+e24",
    );

    // slice off the coordinate-sum functional: 0 → N' → N → Z → 0
    let (nprime, nprime_incl) = biquadratic::torsion_kernel_slice(group, n);
    let z = GaloisLattice::trivial(group, "Z", 1);
    let coord_sum = LatticeMap::new(
        group,
        &stated_kernel,
        &z,
        IntMat::from_rows(vec![vec![1, 1, 1, 0]]),
    )
    .map_err(TorusError::from)?;
    let verdict = verify_exact_sequence(group, &[nprime_incl.clone(), coord_sum.clone()])
        .map_err(TorusError::from)?;
    b.check(
        "sequence-Nprime-N-Z",
        verdict.passed(),
        verdict
            .first_failure()
            .map(|f| format!("{}: {}", f.name, f.detail))
            .unwrap_or_else(|| "all checks pass".into()),
    );

    // derived action matrices on the stated basis, matched to the stated
    // ±2m forms by an explicit basis-sign certificate, then conjugated to
    // the diagonal by the stated τ
    let stated_plus_form = GaloisLattice::new(
        group,
        "N'(+)",
        vec![
            IntMat::from_rows(vec![vec![-1, 0, n], vec![0, -1, 0], vec![0, 0, 1]]),
            IntMat::from_rows(vec![vec![-1, n, 0], vec![0, 1, 0], vec![0, 0, -1]]),
        ],
    )
    .map_err(TorusError::from)?;
    let mut sign_cert: Option<IntMat> = None;
    for mask in 0..8u8 {
        let d = IntMat::from_rows(vec![
            vec![if mask & 1 != 0 { -1 } else { 1 }, 0, 0],
            vec![0, if mask & 2 != 0 { -1 } else { 1 }, 0],
            vec![0, 0, if mask & 4 != 0 { -1 } else { 1 }],
        ]);
        let cert = IsoCertificate { matrix: d.clone() };
        if check_iso_certificate(group, &nprime, &stated_plus_form, &cert) == Ok(true) {
            sign_cert = Some(d);
            break;
        }
    }
    b.check(
        "sign-certificate-to-stated-matrices",
        sign_cert.is_some(),
        sign_cert
            .as_ref()
            .map(|d| format!("basis-sign certificate {:?}", d))
            .unwrap_or_else(|| "no diagonal sign matrix matches the stated forms".into()),
    );
    let tau = IsoCertificate {
        matrix: IntMat::from_rows(vec![vec![1, m, m], vec![0, 1, 0], vec![0, 0, 1]]),
    };
    let diag = biquadratic::norm_one_product(group);
    b.check(
        "tau-conjugates-to-diagonal",
        check_iso_certificate(group, &stated_plus_form, &diag, &tau) == Ok(true),
        "τ = [[1,m,m],[0,1,0],[0,0,1]] conjugates the stated forms to diag(−1,−1,1), diag(−1,1,−1)",
    );
    if let Some(d) = &sign_cert {
        let composite = IsoCertificate {
            matrix: d.mul(&tau.matrix),
        };
        b.check(
            "composite-certificate",
            check_iso_certificate(group, &nprime, &diag, &composite) == Ok(true),
            "the composed certificate matches the derived lattice to the norm-one product",
        );
    }

    // {S'} = (L−[E1]+1)(L−[E2]+1)(L−[E12]+1) read off the diagonal
    let mut registry = data.registry;
    let mut s_prime = ClassResult::new(
        ArtinPolynomial::one(ctx),
        RationalityFlag::Yes("a product of rational tori is rational".into()),
        vec![],
    );
    for label in ["E1", "E2", "E12"] {
        let h = ctx.subgroup_by_label(label).unwrap();
        let piece = norm_one_by_resolution(ctx, &mut registry, h)?;
        s_prime.class = s_prime.class.mul(ctx, &piece.class);
        s_prime.trace.extend(piece.trace);
    }
    let expected_s_prime = norm_one_poly(ctx, "E1")
        .mul(ctx, &norm_one_poly(ctx, "E2"))
        .mul(ctx, &norm_one_poly(ctx, "E12"));
    b.check_poly(ctx, "s-prime-formula", &s_prime.class, &expected_s_prime);
    b.absorb(&s_prime);

    // {S} = (L−1){S'}
    let s = gm_torsor_factor(ctx, &[nprime_incl, coord_sum], &s_prime)?;
    b.check(
        "s-rational",
        s.stably_rational.is_yes(),
        "a multiplicative-group torsor over a product of rational tori",
    );

    // {BA} = {S}/{R_K} via the special middle term
    let evidence = SequenceEvidence::ModN {
        map: &pi,
        n,
        kernel: &kernel,
    };
    let ba = bn_from_special_sequence(ctx, &registry, &evidence, "R_K", &s.class)?;
    b.absorb(&ba);
    let mut ba = ba;
    ba.stably_rational = RationalityFlag::Yes(
        "the sequence presents BA as the stack quotient of the rational S by a special group"
            .into(),
    );
    b.check(
        "ba-stably-rational",
        ba.stably_rational.is_yes(),
        "propagated from S",
    );

    // {BA} = {BG}⁻¹{G}⁻¹
    let rhs = StackClass::from_polynomial(data.g_prime.clone()).mul(ctx, &data.g_inverse);
    b.check_stack_equal(ctx, "ba-equals-bg-inverse-g-inverse", &ba.class, &rhs);

    // {BA}·{BG}·{G} = 1
    let product = ba.class.mul(ctx, &data.bg.class).mul(
        ctx,
        &StackClass::from_polynomial(data.route.g.class.clone()),
    );
    b.check_stack_equal(
        ctx,
        "ba-bg-g-product-is-one",
        &product,
        &StackClass::one(ctx),
    );

    // {BA} ≠ 1 with the same witness as the torus inequality
    b.check_stack_unequal(
        ctx,
        "ba-not-one",
        &ba.class,
        &StackClass::one(ctx),
        &data.witness,
        &[0, 0, 0, 0, 2],
    );

    Ok(b.finish())
}

/// One torsion case of the closing identities: for the étale algebra of the
/// given G-set S and a torsion order n, adjudicate {B(R\[n\])} = 1 (the n-power
/// isogeny route) and {B(R⁽¹⁾\[n\])} = 1 (the route through the ambient Weil
/// restriction). The second identity is exactly what the engine can decide:
/// when the kernel torus is certified isomorphic to R/G_m the identity is
/// verified; when the engine instead certifies a different product shape, the
/// stated identity is refuted and reported as a discrepancy with its witness.
pub fn scenario_remark_torsion(
    ctx: &GaloisContext,
    gset: &GSet,
    n: i64,
    gset_label: &str,
) -> Result<ScenarioReport, ScenarioError> {
    if n < 1 {
        return Err(ScenarioError::UnsupportedParameter(format!(
            "torsion order must be positive, got {n}"
        )));
    }
    if gset.size() < 2 {
        return Err(ScenarioError::UnsupportedParameter(
            "the étale algebra must have degree at least 2".into(),
        ));
    }
    let mut b = Builder::new(ctx, "remark");
    b.param("algebra", gset_label);
    b.param("n", n);
    let group = ctx.group();
    let mut registry = SpecialRegistry::new(ctx);

    let r_class = quasi_split_class(ctx, gset)?;
    registry
        .register(
            "R_L",
            ctx,
            r_class.clone(),
            SpecialCertificate::QuasiSplit(gset.clone()),
        )
        .map_err(TorusError::from)?;

    // ---- the full torsion subgroup, via the n-power isogeny ----
    let perm = GaloisLattice::permutation(group, "Z[S]", gset);
    let id_map = LatticeMap::new(group, &perm, &perm, IntMat::identity(gset.size()))
        .map_err(TorusError::from)?;
    let full_kernel = kernel_mod_n(group, &id_map, n).map_err(TorusError::from)?;
    b.check(
        "full-torsion-kernel-index",
        full_kernel.index == n.pow(gset.size() as u32),
        format!("index {} equals n^{}", full_kernel.index, gset.size()),
    );
    let target_class = match find_permutation_basis(group, &full_kernel.lattice, 1) {
        PermBasisOutcome::Found { gset: found, .. } => {
            let cls = quasi_split_class(ctx, &found)?;
            b.check(
                "full-torsion-target-quasi-split",
                cls == r_class,
                "the n-multiple lattice carries the same permutation action",
            );
            cls
        }
        other => {
            b.check(
                "full-torsion-target-quasi-split",
                false,
                format!("no permuted basis found: {other:?}"),
            );
            r_class.clone()
        }
    };
    let evidence = SequenceEvidence::ModN {
        map: &id_map,
        n,
        kernel: &full_kernel,
    };
    let ba = bn_from_special_sequence(ctx, &registry, &evidence, "R_L", &target_class)?;
    b.absorb(&ba);
    b.check_stack_equal(
        ctx,
        "full-torsion-b-class-is-one",
        &ba.class,
        &StackClass::one(ctx),
    );

    // ---- the norm-one torsion subgroup, through the ambient restriction ----
    let (_, q_map) = aug_quotient(ctx, gset, "S");
    let w = kernel_mod_n(group, &q_map, n).map_err(TorusError::from)?;
    b.check(
        "norm-one-torsion-kernel-index",
        w.index == n.pow(gset.size() as u32 - 1),
        format!("index {} equals n^{}", w.index, gset.size() - 1),
    );

    // the restriction of the coordinate sum to the kernel, made surjective
    let s = gset.size();
    let ones = IntMat::from_rows(vec![vec![1; s]]);
    let eps_on_w = ones.mul(&w.inclusion.matrix);
    let content = (0..eps_on_w.ncols())
        .map(|j| eps_on_w[(0, j)])
        .fold(0i64, crate::intmat::gcd);
    let theta_row: Vec<i64> = if content == 0 {
        vec![0; eps_on_w.ncols()]
    } else {
        (0..eps_on_w.ncols())
            .map(|j| eps_on_w[(0, j)] / content)
            .collect()
    };
    let z = GaloisLattice::trivial(group, "Z", 1);
    let theta = LatticeMap::new(group, &w.lattice, &z, IntMat::from_rows(vec![theta_row]))
        .map_err(TorusError::from)?;
    let (u, u_incl) = integer_kernel(group, &theta, "U").map_err(TorusError::from)?;
    let verdict =
        verify_exact_sequence(group, &[u_incl.clone(), theta.clone()]).map_err(TorusError::from)?;
    b.check(
        "sequence-U-W-Z",
        verdict.passed(),
        verdict
            .first_failure()
            .map(|f| format!("{}: {}", f.name, f.detail))
            .unwrap_or_else(|| "all checks pass".into()),
    );

    // the reference quotient torus R/G_m and its class
    let aug = LatticeMap::new(group, &perm, &z, IntMat::from_rows(vec![vec![1; s]]))
        .map_err(TorusError::from)?;
    let (v, _v_incl) = integer_kernel(group, &aug, "V").map_err(TorusError::from)?;
    let r_mod_gm = r_class
        .exact_divide(ctx, &ArtinPolynomial::lefschetz_minus_one(ctx))
        .map_err(TorusError::from)?;

    // decide the torus T = R/A' through its lattice W: first try the stated
    // identification of the G_m-quotient with R/G_m
    let lm1 = ArtinPolynomial::lefschetz_minus_one(ctx);
    let cert =
        find_iso_certificate(group, &u, &v, 1).or_else(|| find_iso_certificate(group, &u, &v, 2));
    if let Some(cert) = cert {
        b.push(
            "norm-one-torsion-quotient-identified",
            Verdict::Pass,
            None,
            format!(
                "certificate {:?} identifies the kernel torus with R/G_m",
                cert.matrix
            ),
        );
        let t_class = lm1.mul(ctx, &r_mod_gm);
        b.check_poly(ctx, "norm-one-torsion-t-class", &t_class, &r_class);
        let ba_prime = StackClass::new(ctx, &registry, t_class, vec![r_class.clone()])
            .map_err(TorusError::from)?;
        b.check_stack_equal(
            ctx,
            "norm-one-torsion-b-class-is-one",
            &ba_prime,
            &StackClass::one(ctx),
        );
    } else {
        // the stated identification fails; evaluate the kernel torus by
        // filtration and adjudicate the stated identity against the result
        let mut catalog = LatticeClassCatalog::new();
        catalog.push(v.clone(), r_mod_gm.clone(), "sum-zero quotient lattice");
        if require_biquadratic(ctx).is_ok() {
            let mut reg2 = SpecialRegistry::new(ctx);
            if let Ok(route) = division_route(ctx, &mut reg2) {
                catalog.push(
                    biquadratic::twisted_plane(group),
                    route.t.class.clone(),
                    "twisted plane",
                );
            }
        }
        match torus_class_from_lattice(ctx, &u, &catalog, 2) {
            Some(u_result) => {
                b.steps.extend(u_result.trace.iter().cloned());
                let t_class = lm1.mul(ctx, &u_result.class);
                let ba_prime =
                    StackClass::new(ctx, &registry, t_class.clone(), vec![r_class.clone()])
                        .map_err(TorusError::from)?;
                match stack_equal(ctx, &ba_prime, &StackClass::one(ctx)) {
                    EqualityVerdict::Equal { .. } => {
                        b.push(
                            "norm-one-torsion-b-class-is-one",
                            Verdict::Pass,
                            None,
                            "verified through the filtration route".into(),
                        );
                    }
                    EqualityVerdict::Unequal {
                        witness,
                        leading_degree,
                        marks,
                        sound,
                    } => {
                        let lead = witness.coeff(ctx, leading_degree);
                        b.push(
                            "norm-one-torsion-b-class-is-one",
                            Verdict::Discrepancy,
                            Some(format!(
                                "difference {} with leading coefficient {} and marks {marks}",
                                render_poly(ctx, &witness),
                                ctx.render_element(&lead)
                            )),
                            format!(
                                "stated: the torsion classifying stack has class 1; computed: {} / R_L ≠ 1{} — the kernel torus is certified as {} instead of R/G_m",
                                render_poly(ctx, &t_class),
                                if sound { "" } else { " (model only)" },
                                u_result
                                    .trace
                                    .last()
                                    .map(|s| s.rule.clone())
                                    .unwrap_or_else(|| "a different product".into()),
                            ),
                        );
                    }
                }
            }
            None => {
                b.push(
                    "norm-one-torsion-b-class-is-one",
                    Verdict::Fail,
                    None,
                    "the kernel torus could not be evaluated within the search bounds".into(),
                );
            }
        }
    }
    Ok(b.finish())
}

/// Run the torsion scenario over the standard grid of étale algebras and
/// torsion orders, merging everything into one report.
pub fn scenario_remark_grid(ctx: &GaloisContext) -> Result<ScenarioReport, ScenarioError> {
    require_biquadratic(ctx)?;
    let mut b = Builder::new(ctx, "remark");
    let cases: Vec<(&str, GSet)> = vec![
        ("E1", ctx.parse_gset("coset:E1").unwrap()),
        ("E", ctx.parse_gset("coset:E1+coset:E2").unwrap()),
        ("split", ctx.parse_gset("trivial:4").unwrap()),
    ];
    for (label, gset) in &cases {
        for n in [2i64, 3, 4] {
            let report = scenario_remark_torsion(ctx, gset, n, label)?;
            for a in report.assertions {
                b.assertions.push(Assertion {
                    name: format!("{label}-n{n}-{}", a.name),
                    ..a
                });
            }
            b.steps.extend(report.steps);
        }
    }
    Ok(b.finish())
}

/// All scenarios with default parameters, in a fixed order.
pub fn run_all(
    ctx: &GaloisContext,
    seed: u64,
    m: i64,
    r: u32,
) -> Result<Vec<ScenarioReport>, ScenarioError> {
    Ok(vec![
        scenario_basics(ctx, seed)?,
        scenario_torus_t(ctx)?,
        scenario_theorem_1_5(ctx, r)?,
        scenario_theorem_1_6(ctx, m)?,
        scenario_remark_grid(ctx)?,
    ])
}
