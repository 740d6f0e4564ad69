//! Polynomials in the Lefschetz class L with Burnside-ring coefficients, and
//! the sound zero test through the table of marks.
//!
//! Every variety class this engine produces lives here: a class of the form
//! Σ cᵢ·Lⁱ with each cᵢ an integer combination of étale-algebra classes.

use thiserror::Error;

use crate::burnside::{BurnsideElement, MarkVector};
use crate::context::GaloisContext;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("operands belong to different contexts")]
    MixedContexts,
    #[error("divisor is not monic in L")]
    NotMonic,
    #[error("division leaves a nonzero remainder")]
    NotDivisible { remainder: ArtinPolynomial },
    #[error("denominator polynomial is not registered as a special class")]
    UnsoundDenominator,
}

/// Polynomial in L over the Burnside ring, trailing zero coefficients trimmed.
/// `coeffs[k]` is the coefficient of L^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinPolynomial {
    coeffs: Vec<BurnsideElement>,
    group_fp: u64,
}

impl ArtinPolynomial {
    pub fn zero(ctx: &GaloisContext) -> Self {
        ArtinPolynomial {
            coeffs: vec![],
            group_fp: ctx.fingerprint(),
        }
    }

    pub fn constant(ctx: &GaloisContext, c: BurnsideElement) -> Self {
        let mut p = ArtinPolynomial {
            coeffs: vec![c],
            group_fp: ctx.fingerprint(),
        };
        p.trim();
        p
    }

    pub fn one(ctx: &GaloisContext) -> Self {
        ArtinPolynomial::constant(ctx, BurnsideElement::one(ctx.group()))
    }

    pub fn integer(ctx: &GaloisContext, n: i64) -> Self {
        ArtinPolynomial::constant(ctx, BurnsideElement::constant(ctx.group(), n))
    }

    /// The class L of the affine line.
    pub fn lefschetz(ctx: &GaloisContext) -> Self {
        ArtinPolynomial::monomial(ctx, BurnsideElement::one(ctx.group()), 1)
    }

    /// L - 1, the class of the multiplicative group.
    pub fn lefschetz_minus_one(ctx: &GaloisContext) -> Self {
        ArtinPolynomial::lefschetz(ctx).sub(&ArtinPolynomial::one(ctx))
    }

    pub fn monomial(ctx: &GaloisContext, c: BurnsideElement, k: usize) -> Self {
        let mut coeffs = vec![BurnsideElement::zero(ctx.group()); k + 1];
        coeffs[k] = c;
        let mut p = ArtinPolynomial {
            coeffs,
            group_fp: ctx.fingerprint(),
        };
        p.trim();
        p
    }

    pub fn from_coeffs(ctx: &GaloisContext, coeffs: Vec<BurnsideElement>) -> Self {
        let mut p = ArtinPolynomial {
            coeffs,
            group_fp: ctx.fingerprint(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in L; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, ctx: &GaloisContext, k: usize) -> BurnsideElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| BurnsideElement::zero(ctx.group()))
    }

    pub fn leading(&self) -> Option<&BurnsideElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, ctx: &GaloisContext) -> bool {
        self.leading()
            .is_some_and(|c| *c == BurnsideElement::one(ctx.group()))
    }

    pub fn group_fp(&self) -> u64 {
        self.group_fp
    }

    fn check_same(&self, other: &ArtinPolynomial) -> Result<(), RingError> {
        if self.group_fp != other.group_fp {
            return Err(RingError::MixedContexts);
        }
        Ok(())
    }

    pub fn add(&self, other: &ArtinPolynomial) -> ArtinPolynomial {
        self.check_same(other).expect("mixed contexts");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let c = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut p = ArtinPolynomial {
            coeffs,
            group_fp: self.group_fp,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> ArtinPolynomial {
        ArtinPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            group_fp: self.group_fp,
        }
    }

    pub fn sub(&self, other: &ArtinPolynomial) -> ArtinPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, ctx: &GaloisContext, other: &ArtinPolynomial) -> ArtinPolynomial {
        self.check_same(other).expect("mixed contexts");
        if self.is_zero() || other.is_zero() {
            return ArtinPolynomial::zero(ctx);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![BurnsideElement::zero(ctx.group()); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = ctx.tables().mul(a, b).expect("same context");
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        let mut p = ArtinPolynomial {
            coeffs,
            group_fp: self.group_fp,
        };
        p.trim();
        p
    }

    pub fn scale(&self, k: i64) -> ArtinPolynomial {
        let mut p = ArtinPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
            group_fp: self.group_fp,
        };
        p.trim();
        p
    }

    pub fn pow(&self, ctx: &GaloisContext, mut e: u32) -> ArtinPolynomial {
        let mut out = ArtinPolynomial::one(ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            e >>= 1;
        }
        out
    }

    /// Exact division by a divisor monic in L. Valid over any coefficient
    /// ring; a nonzero remainder is returned as the error witness.
    pub fn exact_divide(
        &self,
        ctx: &GaloisContext,
        divisor: &ArtinPolynomial,
    ) -> Result<ArtinPolynomial, RingError> {
        self.check_same(divisor)?;
        if !divisor.is_monic(ctx) {
            return Err(RingError::NotMonic);
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.clone();
        let mut quot_terms: Vec<(usize, BurnsideElement)> = Vec::new();
        while rem.coeffs.len() > d || (d == 0 && !rem.is_zero()) {
            let k = rem.coeffs.len() - 1 - d;
            let lead = rem.coeffs.last().unwrap().clone();
            // rem -= lead * L^k * divisor
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let prod = ctx.tables().mul(&lead, b).expect("same context");
                rem.coeffs[k + j] = rem.coeffs[k + j].sub(&prod);
            }
            rem.trim();
            quot_terms.push((k, lead));
        }
        if !rem.is_zero() {
            return Err(RingError::NotDivisible { remainder: rem });
        }
        let deg_q = quot_terms.first().map_or(0, |(k, _)| *k);
        let mut coeffs = vec![BurnsideElement::zero(ctx.group()); deg_q + 1];
        for (k, c) in quot_terms {
            coeffs[k] = c;
        }
        let mut q = ArtinPolynomial {
            coeffs,
            group_fp: self.group_fp,
        };
        q.trim();
        Ok(q)
    }

    /// Substitute each coefficient by its mark at ⟨g⟩ and L by q. Under the
    /// fixed-point dictionary this is the number of points over the degree-q
    /// field on which Frobenius acts through g.
    pub fn cyclic_specialization(&self, ctx: &GaloisContext, elem: usize) -> IntPoly {
        let h = ctx.group().cyclic_class(elem);
        let coeffs: Vec<i64> = self
            .coeffs
            .iter()
            .map(|c| ctx.tables().mark_at(c, h))
            .collect();
        IntPoly::from_low_coeffs(coeffs)
    }

    /// Sound zero test: under the two independence hypotheses of the context,
    /// the polynomial vanishes in the ambient ring iff every coefficient has
    /// zero mark vector. The verdict is downgraded to model-only when either
    /// hypothesis is switched off.
    pub fn test_zero(&self, ctx: &GaloisContext) -> ZeroVerdict {
        let sound = ctx.axioms_sound();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let marks = ctx.tables().marks(c);
            if !marks.is_zero() {
                return ZeroVerdict::Nonzero {
                    degree: k,
                    coefficient: c.clone(),
                    marks,
                    sound,
                };
            }
        }
        ZeroVerdict::Zero { sound }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Fallible ring arithmetic: the checked entry point for callers that cannot
/// guarantee both operands share the context.
pub fn poly_arith(
    ctx: &GaloisContext,
    a: &ArtinPolynomial,
    b: &ArtinPolynomial,
    op: PolyOp,
) -> Result<ArtinPolynomial, RingError> {
    if a.group_fp != ctx.fingerprint() || b.group_fp != ctx.fingerprint() {
        return Err(RingError::MixedContexts);
    }
    Ok(match op {
        PolyOp::Add => a.add(b),
        PolyOp::Sub => a.sub(b),
        PolyOp::Mul => a.mul(ctx, b),
    })
}

/// Outcome of the zero test, with the witness coefficient of highest degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroVerdict {
    Zero {
        sound: bool,
    },
    Nonzero {
        degree: usize,
        coefficient: BurnsideElement,
        marks: MarkVector,
        sound: bool,
    },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroVerdict::Zero { .. })
    }
}

/// Plain integer polynomial in q (cyclic specializations and characteristic
/// polynomials land here). Coefficients are stored low-to-high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn from_low_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// From highest-power-first coefficients (as produced by `IntMat::charpoly`).
    pub fn from_high_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_low_coeffs(coeffs.iter().rev().copied().collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_low_coeffs(out)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "q")?;
                }
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical rendering of an Artin polynomial: terms in descending powers of
/// L; simple coefficients inline, composite ones parenthesized.
pub fn render_poly(ctx: &GaloisContext, p: &ArtinPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let unit = BurnsideElement::one(ctx.group());
    let mut out = String::new();
    let mut first = true;
    for k in (0..p.coeffs.len()).rev() {
        let c = &p.coeffs[k];
        if c.is_zero() {
            continue;
        }
        let n_terms = c.terms().count();
        let power = |k: usize| match k {
            0 => String::new(),
            1 => "L".to_string(),
            _ => format!("L^{k}"),
        };
        let (sign_str, body) = if n_terms == 1 && k > 0 {
            let (id, n) = c.terms().next().unwrap();
            let sign = n < 0;
            let mag = n.abs();
            let body = if c == &unit || c.neg() == unit {
                power(k)
            } else if id == ctx.group().full_class() {
                format!("{mag}*{}", power(k))
            } else if mag == 1 {
                format!("[{}]*{}", ctx.label(id), power(k))
            } else {
                format!("{mag}*[{}]*{}", ctx.label(id), power(k))
            };
            (sign, body)
        } else if k == 0 {
            if n_terms == 1 {
                let rendered = ctx.render_element(c);
                if let Some(stripped) = rendered.strip_prefix('-') {
                    (true, stripped.to_string())
                } else {
                    (false, rendered)
                }
            } else {
                (false, format!("({})", ctx.render_element(c)))
            }
        } else {
            (false, format!("({})*{}", ctx.render_element(c), power(k)))
        };
        if first {
            if sign_str {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if sign_str { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}
