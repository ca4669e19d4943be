//! Parameters `r` of the quadratic relations in rank-one finite Hecke
//! algebras, the resulting reducibility real parts, and the unramified
//! twist number `t(ρ)`.

use num_traits::Signed;
use thiserror::Error;

use crate::ffpoly::{apply_involution, Involution, SelfDualPoly};
use crate::lusztig::{CuspidalDatum, GroupKind};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("polynomial {0} and the datum live over different contexts")]
    ContextMismatch(String),
    #[error("polynomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("inertia degree f must be positive")]
    ZeroInertiaDegree,
    #[error("t(rho) must be positive")]
    ZeroTwistNumber,
    #[error("{0} is not a half-integer")]
    NonHalfInteger(String),
    #[error("{dim} is not divisible by {e}")]
    NotDivisible { dim: u64, e: u64 },
}

/// Which branch of the case table produced a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeCase {
    PlusEigenvalue,
    MinusEigenvalue,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeParam {
    /// The exponent `r`.
    pub r: Rational,
    /// `r / f`.
    pub r_over_f: Rational,
    /// The polynomial whose `b` was read off.
    pub p_star: SelfDualPoly,
    pub b: u32,
    pub case: HeckeCase,
    /// Index 1, `m = 1`, even orthogonal factor with `a₊ = a₋ = 0`.
    pub exceptional: bool,
}

pub fn hecke_parameter(
    q: &SelfDualPoly,
    m: usize,
    d: &CuspidalDatum,
    sig_m: Involution,
    f: u32,
) -> Result<HeckeParam, HeckeError> {
    if q.ctx() != d.ctx() {
        return Err(HeckeError::ContextMismatch(q.render()));
    }
    if q.degree() != m {
        return Err(HeckeError::DegreeMismatch {
            expected: m,
            found: q.degree(),
        });
    }
    if f == 0 {
        return Err(HeckeError::ZeroInertiaDegree);
    }
    let p_star = apply_involution(sig_m, q);
    let b = d.b(&p_star);
    let kind = d.kind();
    let index_one = d.ctx().index() == 1;
    let (r_over_f, case) = if index_one && p_star.is_x_minus_one() {
        let v = if kind == GroupKind::EvenSpecialOrthogonal {
            2 * b
        } else {
            2 * b + 1
        };
        (int(v as i64), HeckeCase::PlusEigenvalue)
    } else if index_one && p_star.is_x_plus_one() {
        let v = if kind == GroupKind::OddSpecialOrthogonal {
            2 * b + 1
        } else {
            2 * b
        };
        (int(v as i64), HeckeCase::MinusEigenvalue)
    } else {
        (
            Rational::new((2 * b as i64 + 1) * m as i64, 2),
            HeckeCase::Generic,
        )
    };
    let exceptional = index_one
        && m == 1
        && kind == GroupKind::EvenSpecialOrthogonal
        && d.b_plus() == 0
        && d.b_minus() == 0;
    Ok(HeckeParam {
        r: r_over_f * int(f as i64),
        r_over_f,
        p_star,
        b,
        case,
        exceptional,
    })
}

/// The pair of parameters for one polynomial together with the data
/// needed downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeParams {
    pub r0: Rational,
    pub r1: Rational,
    pub f: u32,
    pub m: usize,
    /// Whether `2 r_t / f` is odd (same for both `t` when coherent).
    pub two_r_over_f_is_odd: bool,
}

impl HeckeParams {
    pub fn new(r0: Rational, r1: Rational, f: u32, m: usize) -> Self {
        let two = r0 * int(2) / int(f as i64);
        let odd = two.is_integer() && two.to_integer() % 2 != 0;
        HeckeParams {
            r0,
            r1,
            f,
            m,
            two_r_over_f_is_odd: odd,
        }
    }
}

/// `2x` is an integer.
pub fn is_half_integer(x: &Rational) -> bool {
    (x * int(2)).is_integer()
}

/// `{(r0+r1)/2t, |r0−r1|/2t}`, larger first.
pub fn reducibility_real_parts(
    r0: Rational,
    r1: Rational,
    t_rho: u64,
) -> Result<(Rational, Rational), HeckeError> {
    if t_rho == 0 {
        return Err(HeckeError::ZeroTwistNumber);
    }
    let two_t = int(2 * t_rho as i64);
    let s1 = (r0 + r1) / two_t;
    let s2 = (r0 - r1).abs() / two_t;
    for s in [&s1, &s2] {
        if !is_half_integer(s) {
            return Err(HeckeError::NonHalfInteger(s.to_string()));
        }
    }
    Ok((s1, s2))
}

/// Both `r0/t` and `r1/t` integers, or both strict half-integers.
pub fn parity_coherent(r0: Rational, r1: Rational, t_rho: u64) -> bool {
    let t = int(t_rho as i64);
    let (x, y) = (r0 / t, r1 / t);
    is_half_integer(&x) && is_half_integer(&y) && x.is_integer() == y.is_integer()
}

pub fn unramified_twist_number(dim_w_over_f: u64, e_ef: u64) -> Result<u64, HeckeError> {
    if e_ef == 0 || !dim_w_over_f.is_multiple_of(e_ef) {
        return Err(HeckeError::NotDivisible {
            dim: dim_w_over_f,
            e: e_ef,
        });
    }
    Ok(dim_w_over_f / e_ef)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::ffpoly::{enumerate_self_dual_irreducible, DualityContext};
    use crate::lusztig::{datum_validate, EigenTypes, GroupType};
    use crate::rational::rat;

    const ID: Involution = Involution::Identity;

    fn datum(kind: GroupKind, c: &DualityContext, dim: usize, a: &[(SelfDualPoly, u32)]) -> CuspidalDatum {
        datum_validate(
            &GroupType::new(kind, c).unwrap(),
            dim,
            a.iter().cloned().collect::<BTreeMap<_, _>>(),
            EigenTypes::default(),
        )
        .unwrap()
    }

    #[test]
    fn unitary_three_f() {
        // f' = 2f with f = 1.
        let c = DualityContext::over(9, 2).unwrap();
        let p = enumerate_self_dual_irreducible(&c, 1).unwrap()[0].clone();
        let d = datum(GroupKind::Unitary, &c, 1, &[(p.clone(), 1)]);
        let h = hecke_parameter(&p, 1, &d, ID, 2).unwrap();
        assert_eq!(h.r, int(3));
        assert_eq!(h.b, 1);
    }

    #[test]
    fn symplectic_plus() {
        let c = DualityContext::over(3, 1).unwrap();
        let xm1 = SelfDualPoly::x_minus_one(&c);
        let d = datum(GroupKind::Symplectic, &c, 1, &[(xm1.clone(), 1)]);
        let h = hecke_parameter(&xm1, 1, &d, ID, 1).unwrap();
        assert_eq!(h.r, int(1));
        assert_eq!(h.case, HeckeCase::PlusEigenvalue);
        let xp1 = SelfDualPoly::x_plus_one(&c);
        assert_eq!(hecke_parameter(&xp1, 1, &d, ID, 1).unwrap().r, int(0));
        assert_eq!(
            hecke_parameter(&xp1, 1, &d, Involution::NegateVariable, 1).unwrap().r,
            int(1)
        );
    }

    #[test]
    fn exceptional_even_orthogonal() {
        let c = DualityContext::over(5, 1).unwrap();
        let d = datum(GroupKind::EvenSpecialOrthogonal, &c, 0, &[]);
        for f in 1..4 {
            for p in [SelfDualPoly::x_minus_one(&c), SelfDualPoly::x_plus_one(&c)] {
                let h = hecke_parameter(&p, 1, &d, ID, f).unwrap();
                assert!(h.exceptional);
                assert_eq!(h.r, int(0));
            }
        }
    }

    #[test]
    fn errors() {
        let c = DualityContext::over(3, 1).unwrap();
        let c5 = DualityContext::over(5, 1).unwrap();
        let xm1 = SelfDualPoly::x_minus_one(&c);
        let d = datum(GroupKind::Symplectic, &c, 1, &[(xm1.clone(), 1)]);
        assert!(matches!(
            hecke_parameter(&SelfDualPoly::x_minus_one(&c5), 1, &d, ID, 1),
            Err(HeckeError::ContextMismatch(_))
        ));
        assert!(matches!(
            hecke_parameter(&xm1, 2, &d, ID, 1),
            Err(HeckeError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn real_parts_examples() {
        for f in 1..5i64 {
            let t = f as u64;
            assert_eq!(
                reducibility_real_parts(int(3 * f), int(f), 2 * t).unwrap(),
                (int(1), rat(1, 2))
            );
            assert_eq!(reducibility_real_parts(int(f), int(f), t).unwrap(), (int(1), int(0)));
            assert_eq!(
                reducibility_real_parts(int(0), int(f), t).unwrap(),
                (rat(1, 2), rat(1, 2))
            );
        }
        assert!(matches!(
            reducibility_real_parts(int(1), int(0), 3),
            Err(HeckeError::NonHalfInteger(_))
        ));
    }

    #[test]
    fn twist_number() {
        assert_eq!(unramified_twist_number(2, 1), Ok(2));
        assert_eq!(unramified_twist_number(4, 2), Ok(2));
        for (e, f, m) in [(2, 3, 1), (1, 2, 3), (4, 1, 2)] {
            assert_eq!(unramified_twist_number(e * f * m, e), Ok(f * m));
        }
        assert!(unramified_twist_number(3, 2).is_err());
    }

    #[test]
    fn coherence() {
        assert!(parity_coherent(int(3), int(1), 2));
        assert!(parity_coherent(int(3), int(2), 1));
        assert!(!parity_coherent(int(1), int(2), 2));
    }
}
