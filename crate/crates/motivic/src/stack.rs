//! The monic-denominator fraction ring modeling classes of stacks.
//!
//! Denominators are restricted to registered monic polynomials: classes of
//! quasi-split tori, the Lefschetz class, and L−1. Such classes are
//! invertible in the ring of stacks, and monic polynomials are
//! non-zero-divisors over any coefficient ring, so equality by
//! cross-multiplication is sound and inequality verdicts transfer to the
//! ambient ring under the context's independence hypotheses.

use thiserror::Error;

use crate::burnside::MarkVector;
use crate::context::GaloisContext;
use crate::perm::GSet;
use crate::poly::{render_poly, ArtinPolynomial, RingError, ZeroVerdict};

#[derive(Debug, Error)]
pub enum StackError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("denominator {0:?} is not registered as a special-torus class")]
    UnsoundDenominator(String),
}

/// Why a registered denominator is invertible in the ring of stacks.
#[derive(Debug, Clone)]
pub enum SpecialCertificate {
    /// The Lefschetz class L itself (class of the affine line).
    Lefschetz,
    /// The class of the quasi-split torus of an étale algebra, carried by its
    /// G-set. Covers L−1 via the one-point set.
    QuasiSplit(GSet),
}

/// Registry of monic polynomials certified as classes of special tori.
#[derive(Debug)]
pub struct SpecialRegistry {
    entries: Vec<(String, ArtinPolynomial, SpecialCertificate)>,
    ctx_fp: u64,
}

impl SpecialRegistry {
    /// Registry seeded with L and L−1 (the latter certified by the one-point
    /// G-set).
    pub fn new(ctx: &GaloisContext) -> Self {
        let mut reg = SpecialRegistry {
            entries: Vec::new(),
            ctx_fp: ctx.fingerprint(),
        };
        reg.entries.push((
            "L".into(),
            ArtinPolynomial::lefschetz(ctx),
            SpecialCertificate::Lefschetz,
        ));
        reg.entries.push((
            "L-1".into(),
            ArtinPolynomial::lefschetz_minus_one(ctx),
            SpecialCertificate::QuasiSplit(GSet::point(ctx.group())),
        ));
        reg
    }

    pub fn register(
        &mut self,
        name: impl Into<String>,
        ctx: &GaloisContext,
        poly: ArtinPolynomial,
        cert: SpecialCertificate,
    ) -> Result<(), StackError> {
        if !poly.is_monic(ctx) {
            return Err(StackError::Ring(RingError::NotMonic));
        }
        let name = name.into();
        if !self.entries.iter().any(|(_, p, _)| *p == poly) {
            self.entries.push((name, poly, cert));
        }
        Ok(())
    }

    pub fn is_registered(&self, poly: &ArtinPolynomial) -> bool {
        self.entries.iter().any(|(_, p, _)| p == poly)
    }

    pub fn lookup(&self, name: &str) -> Option<&ArtinPolynomial> {
        self.entries
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, p, _)| p)
    }

    pub fn ctx_fp(&self) -> u64 {
        self.ctx_fp
    }
}

/// Fraction with a multiset of registered monic denominators. Equality is by
/// cross-multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackClass {
    numerator: ArtinPolynomial,
    denominator: Vec<ArtinPolynomial>,
}

impl StackClass {
    pub fn from_polynomial(p: ArtinPolynomial) -> Self {
        StackClass {
            numerator: p,
            denominator: vec![],
        }
    }

    pub fn one(ctx: &GaloisContext) -> Self {
        StackClass::from_polynomial(ArtinPolynomial::one(ctx))
    }

    pub fn new(
        ctx: &GaloisContext,
        registry: &SpecialRegistry,
        numerator: ArtinPolynomial,
        denominator: Vec<ArtinPolynomial>,
    ) -> Result<Self, StackError> {
        for d in &denominator {
            if !d.is_monic(ctx) {
                return Err(StackError::Ring(RingError::NotMonic));
            }
            if !registry.is_registered(d) {
                return Err(StackError::UnsoundDenominator(render_poly(ctx, d)));
            }
        }
        let mut denominator = denominator;
        sort_denominators(&mut denominator);
        Ok(StackClass {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &ArtinPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[ArtinPolynomial] {
        &self.denominator
    }

    pub fn mul(&self, ctx: &GaloisContext, other: &StackClass) -> StackClass {
        let numerator = self.numerator.mul(ctx, &other.numerator);
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        sort_denominators(&mut denominator);
        StackClass {
            numerator,
            denominator,
        }
    }

    /// Multiply by a registered monic polynomial in the denominator (i.e.
    /// divide by it in the fraction ring).
    pub fn divide_by_registered(
        &self,
        ctx: &GaloisContext,
        registry: &SpecialRegistry,
        d: ArtinPolynomial,
    ) -> Result<StackClass, StackError> {
        if !registry.is_registered(&d) {
            return Err(StackError::UnsoundDenominator(render_poly(ctx, &d)));
        }
        let mut denominator = self.denominator.clone();
        denominator.push(d);
        sort_denominators(&mut denominator);
        Ok(StackClass {
            numerator: self.numerator.clone(),
            denominator,
        })
    }

    pub fn denominator_product(&self, ctx: &GaloisContext) -> ArtinPolynomial {
        self.denominator
            .iter()
            .fold(ArtinPolynomial::one(ctx), |acc, d| acc.mul(ctx, d))
    }
}

fn sort_denominators(dens: &mut [ArtinPolynomial]) {
    dens.sort_by_key(|d| (d.degree().map_or(0, |k| k), format!("{d:?}")));
}

/// Outcome of a fraction-ring equality test, with the sign-normalized
/// cross-multiplied difference as witness.
#[derive(Debug, Clone)]
pub enum EqualityVerdict {
    Equal {
        sound: bool,
    },
    Unequal {
        /// Sign-normalized cross-multiplied difference.
        witness: ArtinPolynomial,
        /// Its leading coefficient and that coefficient's marks.
        leading_degree: usize,
        marks: MarkVector,
        sound: bool,
    },
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::Equal { .. })
    }
}

/// Equality of two stack classes by cross-multiplication, delegated to the
/// marks-based zero test. The two orientations x−y and y−x differ by a sign,
/// so the witness is normalized: the first tabulated entry of its leading
/// coefficient is made positive, making the verdict symmetric in x and y.
pub fn stack_equal(ctx: &GaloisContext, x: &StackClass, y: &StackClass) -> EqualityVerdict {
    let lhs = x.numerator.mul(ctx, &y.denominator_product(ctx));
    let rhs = y.numerator.mul(ctx, &x.denominator_product(ctx));
    let mut diff = lhs.sub(&rhs);
    if let Some(lead) = diff.leading() {
        if lead.first_sign() < 0 {
            diff = diff.neg();
        }
    }
    match diff.test_zero(ctx) {
        ZeroVerdict::Zero { sound } => EqualityVerdict::Equal { sound },
        ZeroVerdict::Nonzero {
            degree,
            marks,
            sound,
            ..
        } => EqualityVerdict::Unequal {
            witness: diff,
            leading_degree: degree,
            marks,
            sound,
        },
    }
}

/// Render as "num / (d1 * d2 * ...)".
pub fn render_stack(ctx: &GaloisContext, s: &StackClass) -> String {
    let num = render_poly(ctx, s.numerator());
    if s.denominator().is_empty() {
        return num;
    }
    let dens: Vec<String> = s
        .denominator()
        .iter()
        .map(|d| format!("({})", render_poly(ctx, d)))
        .collect();
    format!("{num} / ({})", dens.join(" * "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::BurnsideElement;

    fn setup() -> (GaloisContext, SpecialRegistry) {
        let ctx = GaloisContext::biquadratic();
        let reg = SpecialRegistry::new(&ctx);
        (ctx, reg)
    }

    #[test]
    fn registered_denominators_only() {
        let (ctx, reg) = setup();
        let lm1 = ArtinPolynomial::lefschetz_minus_one(&ctx);
        let ok = StackClass::new(&ctx, &reg, ArtinPolynomial::one(&ctx), vec![lm1.clone()]);
        assert!(ok.is_ok());
        // a norm-one class is monic but not registered as special
        let e12 = ctx.subgroup_by_label("E12").unwrap();
        let norm_one = ArtinPolynomial::lefschetz(&ctx)
            .sub(&ArtinPolynomial::constant(
                &ctx,
                BurnsideElement::basis(ctx.group(), e12),
            ))
            .add(&ArtinPolynomial::one(&ctx));
        let err = StackClass::new(&ctx, &reg, ArtinPolynomial::one(&ctx), vec![norm_one]);
        assert!(matches!(err, Err(StackError::UnsoundDenominator(_))));
        // not monic at all
        let two = ArtinPolynomial::integer(&ctx, 2);
        let err = StackClass::new(&ctx, &reg, ArtinPolynomial::one(&ctx), vec![two]);
        assert!(matches!(err, Err(StackError::Ring(RingError::NotMonic))));
    }

    #[test]
    fn representative_independence() {
        let (ctx, mut reg) = setup();
        let l = ArtinPolynomial::lefschetz(&ctx);
        let lm1 = ArtinPolynomial::lefschetz_minus_one(&ctx);
        reg.register("L", &ctx, l.clone(), SpecialCertificate::Lefschetz)
            .unwrap();
        let p = l.add(&ArtinPolynomial::one(&ctx));
        let x = StackClass::new(&ctx, &reg, p.clone(), vec![lm1.clone()]).unwrap();
        // (p·L) / ((L−1)·L) equals p / (L−1)
        let y = StackClass::new(&ctx, &reg, p.mul(&ctx, &l), vec![lm1.clone(), l.clone()]).unwrap();
        assert!(stack_equal(&ctx, &x, &y).is_equal());
        assert!(stack_equal(&ctx, &x, &x).is_equal());
        let not_y = StackClass::new(
            &ctx,
            &reg,
            p.mul(&ctx, &l).add(&ArtinPolynomial::one(&ctx)),
            vec![lm1.clone(), l],
        )
        .unwrap();
        assert!(!stack_equal(&ctx, &x, &not_y).is_equal());
    }

    #[test]
    fn witness_is_orientation_free() {
        let (ctx, _) = setup();
        let w = ctx.parse_element("2+[K]-[E1]-[E2]-[E12]").unwrap();
        let p = ArtinPolynomial::monomial(&ctx, w.clone(), 1);
        let x = StackClass::from_polynomial(p);
        let one = StackClass::one(&ctx);
        for (a, b) in [(&x, &one), (&one, &x)] {
            match stack_equal(&ctx, a, b) {
                EqualityVerdict::Unequal {
                    witness,
                    leading_degree,
                    marks,
                    sound,
                } => {
                    assert_eq!(leading_degree, 1);
                    assert_eq!(marks.0, vec![0, 0, 0, 0, 2]);
                    assert!(sound);
                    // normalized witness always carries +w, never −w
                    assert_eq!(witness.coeff(&ctx, 1).coeff(ctx.group().full_class()), 2);
                }
                other => panic!("expected unequal, got {other:?}"),
            }
        }
    }

    #[test]
    fn rendering() {
        let (ctx, mut reg) = setup();
        let l = ArtinPolynomial::lefschetz(&ctx);
        let lm1 = ArtinPolynomial::lefschetz_minus_one(&ctx);
        reg.register("L", &ctx, l.clone(), SpecialCertificate::Lefschetz)
            .unwrap();
        let s = StackClass::new(&ctx, &reg, ArtinPolynomial::one(&ctx), vec![lm1, l]).unwrap();
        assert_eq!(render_stack(&ctx, &s), "1 / ((L - 1) * (L))");
    }
}
