//! Finite fields of odd characteristic and monic irreducible polynomials
//! that are self-dual for a field involution of order at most two.

pub mod field;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use field::{field_make, field_make_bounded, prime_power, FieldError, FiniteField};
pub use poly::{MonicPoly, PolyError};

use crate::config;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfpolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("fixed-subfield index must be 1 or 2, got {0}")]
    BadIndex(u8),
    #[error("index 2 needs an even extension degree, got {0}")]
    OddDegreeForIndexTwo(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("enumeration of {count} candidates exceeds the bound {bound}")]
    TooLarge { count: u64, bound: u64 },
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial {0} is not self-dual")]
    NotSelfDual(String),
}

/// The residue field `k_E` together with the index of its fixed subfield
/// under `bar`. `bar` is the identity for index 1 and `x ↦ x^√q` for
/// index 2.
#[derive(Clone)]
pub struct DualityContext {
    field: FiniteField,
    index: u8,
}

impl DualityContext {
    pub fn new(field: FiniteField, index: u8) -> Result<Self, FfpolyError> {
        match index {
            1 => {}
            2 if field.k().is_multiple_of(2) => {}
            2 => return Err(FfpolyError::OddDegreeForIndexTwo(field.k())),
            other => return Err(FfpolyError::BadIndex(other)),
        }
        Ok(DualityContext { field, index })
    }

    /// Context over the field of `q_e` elements.
    pub fn over(q_e: u64, index: u8) -> Result<Self, FfpolyError> {
        let (p, k) = prime_power(q_e).ok_or(FfpolyError::NotPrimePower(q_e))?;
        Self::new(field_make(p, k)?, index)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn size(&self) -> u32 {
        self.field.size()
    }

    fn key(&self) -> (u32, u32, u8) {
        (self.field.p(), self.field.k(), self.index)
    }

    pub fn bar(&self, x: u32) -> u32 {
        if self.index == 1 {
            return x;
        }
        let root = (self.field.p() as u64).pow(self.field.k() / 2);
        self.field.pow(x, root)
    }

    /// `X - 1`.
    pub fn x_minus_one(&self) -> MonicPoly {
        MonicPoly::linear(&self.field, 1)
    }

    /// `X + 1`.
    pub fn x_plus_one(&self) -> MonicPoly {
        MonicPoly::linear(&self.field, self.field.neg(1))
    }
}

impl fmt::Debug for DualityContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ctx(q={}, index={})", self.field.size(), self.index)
    }
}

impl PartialEq for DualityContext {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for DualityContext {}

impl Ord for DualityContext {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}
impl PartialOrd for DualityContext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Hash for DualityContext {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

/// `bar(Q(0))⁻¹ · X^deg · barQ(1/X)`.
pub fn poly_dual(q: &MonicPoly, ctx: &DualityContext) -> Result<MonicPoly, FfpolyError> {
    let c0 = q.constant_term();
    if c0 == 0 {
        return Err(FfpolyError::ZeroConstantTerm);
    }
    let f = ctx.field();
    let scale = f.inv(ctx.bar(c0)).expect("nonzero");
    let d = q.degree();
    let coeffs = (0..=d)
        .map(|j| f.mul(scale, ctx.bar(q.coeffs()[d - j])))
        .collect();
    Ok(MonicPoly::new(coeffs)?)
}

/// `(-1)^deg · Q(-X)`.
pub fn negate_variable(q: &MonicPoly, field: &FiniteField) -> MonicPoly {
    let d = q.degree();
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if (d - i) % 2 == 1 { field.neg(c) } else { c })
        .collect();
    MonicPoly::new(coeffs).expect("leading coefficient unchanged")
}

/// Ben-Or: `Q` is irreducible iff `gcd(X^(q^i) - X, Q) = 1` for
/// `1 ≤ i ≤ deg/2`.
pub fn is_irreducible(q: &MonicPoly, field: &FiniteField) -> bool {
    let d = q.degree();
    if d == 1 {
        return true;
    }
    let m = q.coeffs();
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = poly::powmod(field, &h, field.size() as u64, m);
        let g = poly::gcd(field, &poly::sub(field, &h, &x), m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Exhaustive trial division by every monic polynomial of degree at most
/// `deg/2`.
pub fn is_irreducible_trial(q: &MonicPoly, field: &FiniteField) -> bool {
    (1..=q.degree() / 2).all(|d| {
        MonicPoly::all_of_degree(field, d)
            .all(|div| !poly::rem(field, q.coeffs(), div.coeffs()).is_empty())
    })
}

/// A monic irreducible polynomial fixed by [`poly_dual`].
#[derive(Clone)]
pub struct SelfDualPoly {
    poly: MonicPoly,
    ctx: DualityContext,
}

impl SelfDualPoly {
    pub fn new(poly: MonicPoly, ctx: &DualityContext) -> Result<Self, FfpolyError> {
        if let Some(&bad) = poly.coeffs().iter().find(|&&c| c >= ctx.size()) {
            return Err(PolyError::BadCoefficient(bad).into());
        }
        if poly_dual(&poly, ctx)? != poly {
            return Err(FfpolyError::NotSelfDual(poly.render(ctx.field())));
        }
        if !is_irreducible(&poly, ctx.field()) {
            return Err(FfpolyError::NotIrreducible(poly.render(ctx.field())));
        }
        Ok(SelfDualPoly {
            poly,
            ctx: ctx.clone(),
        })
    }

    pub fn from_coeffs(coeffs: Vec<u32>, ctx: &DualityContext) -> Result<Self, FfpolyError> {
        Self::new(MonicPoly::new(coeffs)?, ctx)
    }

    pub fn x_minus_one(ctx: &DualityContext) -> Self {
        SelfDualPoly {
            poly: ctx.x_minus_one(),
            ctx: ctx.clone(),
        }
    }

    pub fn x_plus_one(ctx: &DualityContext) -> Self {
        SelfDualPoly {
            poly: ctx.x_plus_one(),
            ctx: ctx.clone(),
        }
    }

    pub fn poly(&self) -> &MonicPoly {
        &self.poly
    }

    pub fn ctx(&self) -> &DualityContext {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn coeffs(&self) -> &[u32] {
        self.poly.coeffs()
    }

    pub fn is_x_minus_one(&self) -> bool {
        self.poly == self.ctx.x_minus_one()
    }

    pub fn is_x_plus_one(&self) -> bool {
        self.poly == self.ctx.x_plus_one()
    }

    pub fn render(&self) -> String {
        self.poly.render(self.ctx.field())
    }
}

impl fmt::Debug for SelfDualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for SelfDualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl PartialEq for SelfDualPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.poly == other.poly
    }
}
impl Eq for SelfDualPoly {}
impl Ord for SelfDualPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .cmp(&other.ctx)
            .then_with(|| self.poly.cmp(&other.poly))
    }
}
impl PartialOrd for SelfDualPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Hash for SelfDualPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.hash(state);
        self.poly.hash(state);
    }
}

/// Self-dual monic irreducibles of degree `m`, canonical order, using the
/// environment bound.
pub fn enumerate_self_dual_irreducible(
    ctx: &DualityContext,
    m: usize,
) -> Result<Vec<SelfDualPoly>, FfpolyError> {
    enumerate_self_dual_irreducible_bounded(ctx, m, config::cardinality_bound())
}

pub fn enumerate_self_dual_irreducible_bounded(
    ctx: &DualityContext,
    m: usize,
    bound: u64,
) -> Result<Vec<SelfDualPoly>, FfpolyError> {
    let count = candidate_count(ctx, m);
    if count > bound {
        return Err(FfpolyError::TooLarge { count, bound });
    }
    let field = ctx.field();
    Ok(MonicPoly::all_of_degree(field, m)
        .filter(|q| q.constant_term() != 0)
        .filter(|q| poly_dual(q, ctx).as_ref() == Ok(q))
        .filter(|q| is_irreducible(q, field))
        .map(|poly| SelfDualPoly {
            poly,
            ctx: ctx.clone(),
        })
        .collect())
}

/// `q_E^m`, saturating.
pub fn candidate_count(ctx: &DualityContext, m: usize) -> u64 {
    (ctx.size() as u64).saturating_pow(m as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    #[default]
    Identity,
    NegateVariable,
}

impl Involution {
    pub fn compose(self, other: Involution) -> Involution {
        if self == other {
            Involution::Identity
        } else {
            Involution::NegateVariable
        }
    }
}

pub fn apply_involution(sig: Involution, q: &SelfDualPoly) -> SelfDualPoly {
    match sig {
        Involution::Identity => q.clone(),
        Involution::NegateVariable => SelfDualPoly {
            poly: negate_variable(&q.poly, q.ctx.field()),
            ctx: q.ctx.clone(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64, index: u8) -> DualityContext {
        DualityContext::over(q, index).unwrap()
    }

    #[test]
    fn index_two_needs_even_degree() {
        let f = field_make(3, 1).unwrap();
        assert_eq!(
            DualityContext::new(f, 2).unwrap_err(),
            FfpolyError::OddDegreeForIndexTwo(1)
        );
        let c = ctx(9, 2);
        for x in c.field().elements() {
            assert_eq!(c.bar(c.bar(x)), x);
        }
    }

    #[test]
    fn dual_examples() {
        let c = ctx(3, 1);
        let xm1 = c.x_minus_one();
        assert_eq!(poly_dual(&xm1, &c).unwrap(), xm1);
        let c7 = ctx(7, 1);
        let f = c7.field();
        // X - 3 ↦ X - 3⁻¹ = X - 5 over GF(7).
        let q = MonicPoly::linear(f, 3);
        assert_eq!(poly_dual(&q, &c7).unwrap(), MonicPoly::linear(f, 5));
        let x = MonicPoly::new(vec![0, 1]).unwrap();
        assert_eq!(poly_dual(&x, &c7).unwrap_err(), FfpolyError::ZeroConstantTerm);
    }

    #[test]
    fn dual_is_involution_on_quadratics_over_three() {
        let c = ctx(3, 1);
        for q in MonicPoly::all_of_degree(c.field(), 2).filter(|q| q.constant_term() != 0) {
            let d = poly_dual(&q, &c).unwrap();
            assert_eq!(poly_dual(&d, &c).unwrap(), q);
        }
        // X^2 + X + 2 ↦ 2⁻¹(2X^2 + X + 1) = X^2 + 2X + 2.
        let q = MonicPoly::new(vec![2, 1, 1]).unwrap();
        assert_eq!(poly_dual(&q, &c).unwrap().coeffs(), &[2, 2, 1]);
    }

    #[test]
    fn irreducibility_examples() {
        let f = field_make(3, 1).unwrap();
        assert!(is_irreducible(&MonicPoly::new(vec![1, 0, 1]).unwrap(), &f));
        assert!(!is_irreducible(&MonicPoly::new(vec![2, 0, 1]).unwrap(), &f));
        assert!(is_irreducible(&MonicPoly::new(vec![0, 1]).unwrap(), &f));
    }

    #[test]
    fn irreducibility_routes_agree() {
        for q in [3u64, 5, 9] {
            let c = ctx(q, 1);
            for m in 1..=3 {
                for p in MonicPoly::all_of_degree(c.field(), m) {
                    assert_eq!(
                        is_irreducible(&p, c.field()),
                        is_irreducible_trial(&p, c.field()),
                        "{p:?} over {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let c = ctx(3, 1);
        let one = enumerate_self_dual_irreducible(&c, 1).unwrap();
        let got: Vec<_> = one.iter().map(|p| p.coeffs().to_vec()).collect();
        // X + 1 = [1,1] precedes X - 1 = [2,1].
        assert_eq!(got, vec![vec![1, 1], vec![2, 1]]);
        // Over GF(3) the only self-dual irreducible quadratic is X^2 + 1.
        let two = enumerate_self_dual_irreducible(&c, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].coeffs(), &[1, 0, 1]);
        // Index 2 over GF(9): a·a^3 = 1 has exactly 4 solutions.
        let u = enumerate_self_dual_irreducible(&ctx(9, 2), 1).unwrap();
        assert_eq!(u.len(), 4);
    }

    #[test]
    fn even_degree_only_beyond_linear_in_index_one() {
        let c = ctx(5, 1);
        assert!(enumerate_self_dual_irreducible(&c, 3).unwrap().is_empty());
    }

    #[test]
    fn bound_is_enforced() {
        let c = ctx(9, 1);
        assert!(matches!(
            enumerate_self_dual_irreducible_bounded(&c, 3, 100),
            Err(FfpolyError::TooLarge { count: 729, .. })
        ));
    }

    #[test]
    fn involution_examples() {
        let c = ctx(3, 1);
        let xm1 = SelfDualPoly::x_minus_one(&c);
        assert_eq!(apply_involution(Involution::Identity, &xm1), xm1);
        assert_eq!(
            apply_involution(Involution::NegateVariable, &xm1),
            SelfDualPoly::x_plus_one(&c)
        );
    }

    #[test]
    fn self_dual_constructor_checks() {
        let c = ctx(5, 1);
        assert!(matches!(
            SelfDualPoly::from_coeffs(vec![3, 1], &c),
            Err(FfpolyError::NotSelfDual(_))
        ));
        assert!(matches!(
            SelfDualPoly::from_coeffs(vec![1, 2, 1], &c),
            Err(FfpolyError::NotIrreducible(_))
        ));
    }
}
