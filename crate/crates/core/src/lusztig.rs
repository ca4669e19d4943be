//! Cuspidal data of finite classical groups: the exponents `a_P` of the
//! characteristic polynomial of a semisimple dual element, the derived
//! `b_P`, and the per-type constraint system tying them together.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffpoly::{apply_involution, DualityContext, Involution, SelfDualPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Unitary,
    OddSpecialOrthogonal,
    Symplectic,
    EvenSpecialOrthogonal,
}

impl GroupKind {
    /// Dimension of the space the dual group acts on, given the natural
    /// dimension `n` of the group's own space.
    pub fn dual_dim_of(self, n: usize) -> Option<usize> {
        match self {
            GroupKind::Unitary => Some(n),
            GroupKind::Symplectic => n.is_multiple_of(2).then_some(n + 1),
            GroupKind::OddSpecialOrthogonal => (n % 2 == 1).then(|| n - 1),
            GroupKind::EvenSpecialOrthogonal => n.is_multiple_of(2).then_some(n),
        }
    }

    /// Inverse of [`GroupKind::dual_dim_of`].
    pub fn natural_dim_of(self, dual_dim: usize) -> Option<usize> {
        match self {
            GroupKind::Unitary => Some(dual_dim),
            GroupKind::Symplectic => (dual_dim % 2 == 1).then(|| dual_dim - 1),
            GroupKind::OddSpecialOrthogonal => dual_dim.is_multiple_of(2).then_some(dual_dim + 1),
            GroupKind::EvenSpecialOrthogonal => dual_dim.is_multiple_of(2).then_some(dual_dim),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Unitary => "U",
            GroupKind::OddSpecialOrthogonal => "SO_odd",
            GroupKind::Symplectic => "Sp",
            GroupKind::EvenSpecialOrthogonal => "SO_even",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupType {
    kind: GroupKind,
    ctx: DualityContext,
}

impl GroupType {
    pub fn new(kind: GroupKind, ctx: &DualityContext) -> Result<Self, LusztigError> {
        if (kind == GroupKind::Unitary) != (ctx.index() == 2) {
            return Err(LusztigError::KindContextMismatch {
                kind,
                index: ctx.index(),
            });
        }
        Ok(GroupType {
            kind,
            ctx: ctx.clone(),
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn ctx(&self) -> &DualityContext {
        &self.ctx
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn of_parity(n: u32) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Optional types of the `±1`-eigenspaces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenTypes {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Sign>,
}

impl EigenTypes {
    fn swapped(self) -> Self {
        EigenTypes {
            plus: self.minus,
            minus: self.plus,
        }
    }
}

/// Which constraint governs a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyCase {
    Generic,
    Plus,
    Minus,
}

pub fn key_case(p: &SelfDualPoly) -> KeyCase {
    if p.ctx().index() == 2 {
        KeyCase::Generic
    } else if p.is_x_minus_one() {
        KeyCase::Plus
    } else if p.is_x_plus_one() {
        KeyCase::Minus
    } else {
        KeyCase::Generic
    }
}

/// `a` as a function of `b` for the given group kind and key case.
pub fn a_of_b(kind: GroupKind, case: KeyCase, b: u32) -> u32 {
    match (case, kind) {
        (KeyCase::Generic, _) | (_, GroupKind::Unitary) => b * (b + 1) / 2,
        (_, GroupKind::OddSpecialOrthogonal) => 2 * (b * b + b),
        (KeyCase::Plus, GroupKind::Symplectic) => 2 * (b * b + b) + 1,
        (KeyCase::Minus, GroupKind::Symplectic) => 2 * b * b,
        (_, GroupKind::EvenSpecialOrthogonal) => 2 * b * b,
    }
}

/// Solves `a = a_of_b(kind, case, b)`; the map is strictly increasing.
pub fn solve_b(kind: GroupKind, case: KeyCase, a: u32) -> Option<u32> {
    (0..)
        .map(|b| (b, a_of_b(kind, case, b)))
        .take_while(|&(_, v)| v <= a)
        .find(|&(_, v)| v == a)
        .map(|(b, _)| b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LusztigError {
    #[error("group kind {kind:?} is incompatible with a context of index {index}")]
    KindContextMismatch { kind: GroupKind, index: u8 },
    #[error("a = {a} for {poly} matches no admissible b")]
    NonTriangular { poly: String, a: u32 },
    #[error("sum of a_P deg P is {got}, expected dual dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("eigenspace {which} has type {given}, expected {expected}")]
    EigenTypeMismatch {
        which: Sign,
        given: Sign,
        expected: String,
    },
    #[error("symplectic datum has no entry for X - 1")]
    MissingSymplecticPlus,
    #[error("entry {0} has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("polynomial {0} lives over a different duality context")]
    ContextMismatch(String),
}

/// A validated cuspidal datum. `b_map` is derived from `a_map`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalDatum {
    gtype: GroupType,
    dual_dim: usize,
    a_map: BTreeMap<SelfDualPoly, u32>,
    b_map: BTreeMap<SelfDualPoly, u32>,
    eigen_types: EigenTypes,
}

pub fn datum_validate(
    gtype: &GroupType,
    dual_dim: usize,
    a_map: BTreeMap<SelfDualPoly, u32>,
    eigen_types: EigenTypes,
) -> Result<CuspidalDatum, LusztigError> {
    let kind = gtype.kind();
    let mut b_map = BTreeMap::new();
    for (p, &a) in &a_map {
        if p.ctx() != gtype.ctx() {
            return Err(LusztigError::ContextMismatch(p.render()));
        }
        if a == 0 {
            return Err(LusztigError::ZeroMultiplicity(p.render()));
        }
        let b = solve_b(kind, key_case(p), a).ok_or_else(|| LusztigError::NonTriangular {
            poly: p.render(),
            a,
        })?;
        b_map.insert(p.clone(), b);
    }
    if kind == GroupKind::Symplectic
        && !a_map.contains_key(&SelfDualPoly::x_minus_one(gtype.ctx()))
    {
        return Err(LusztigError::MissingSymplecticPlus);
    }
    let got: usize = a_map.iter().map(|(p, &a)| a as usize * p.degree()).sum();
    if got != dual_dim {
        return Err(LusztigError::DimensionMismatch {
            got,
            expected: dual_dim,
        });
    }
    let datum = CuspidalDatum {
        gtype: gtype.clone(),
        dual_dim,
        a_map,
        b_map,
        eigen_types,
    };
    datum.check_eigen_types()?;
    Ok(datum)
}

impl CuspidalDatum {
    fn check_eigen_types(&self) -> Result<(), LusztigError> {
        let kind = self.gtype.kind();
        let checks = [
            (Sign::Plus, self.eigen_types.plus, self.b_plus()),
            (Sign::Minus, self.eigen_types.minus, self.b_minus()),
        ];
        for (which, given, b) in checks {
            let Some(given) = given else { continue };
            let applicable = match kind {
                GroupKind::EvenSpecialOrthogonal => true,
                GroupKind::Symplectic => which == Sign::Minus,
                _ => false,
            };
            let expected = Sign::of_parity(b);
            if !applicable {
                return Err(LusztigError::EigenTypeMismatch {
                    which,
                    given,
                    expected: "no type (not an even orthogonal eigenspace)".into(),
                });
            }
            if given != expected {
                return Err(LusztigError::EigenTypeMismatch {
                    which,
                    given,
                    expected: expected.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn gtype(&self) -> &GroupType {
        &self.gtype
    }

    pub fn kind(&self) -> GroupKind {
        self.gtype.kind()
    }

    pub fn ctx(&self) -> &DualityContext {
        self.gtype.ctx()
    }

    pub fn dual_dim(&self) -> usize {
        self.dual_dim
    }

    pub fn a_map(&self) -> &BTreeMap<SelfDualPoly, u32> {
        &self.a_map
    }

    pub fn b_map(&self) -> &BTreeMap<SelfDualPoly, u32> {
        &self.b_map
    }

    pub fn eigen_types(&self) -> EigenTypes {
        self.eigen_types
    }

    /// `a_P`, zero when absent.
    pub fn a(&self, p: &SelfDualPoly) -> u32 {
        self.a_map.get(p).copied().unwrap_or(0)
    }

    /// `b_P`, zero when absent.
    pub fn b(&self, p: &SelfDualPoly) -> u32 {
        self.b_map.get(p).copied().unwrap_or(0)
    }

    pub fn b_plus(&self) -> u32 {
        self.b(&SelfDualPoly::x_minus_one(self.ctx()))
    }

    pub fn b_minus(&self) -> u32 {
        self.b(&SelfDualPoly::x_plus_one(self.ctx()))
    }

    /// Natural dimension of the group's space.
    pub fn natural_dim(&self) -> Option<usize> {
        self.kind().natural_dim_of(self.dual_dim)
    }

    /// Degrees of the polynomials in the support.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.a_map.keys().map(|p| p.degree())
    }
}

/// `a'_P = a_{sig(P)}`, re-validated.
pub fn datum_twist(d: &CuspidalDatum, sig: Involution) -> Result<CuspidalDatum, LusztigError> {
    let a_map = d
        .a_map
        .iter()
        .map(|(p, &a)| (apply_involution(sig, p), a))
        .collect();
    let eigen = match sig {
        Involution::Identity => d.eigen_types,
        Involution::NegateVariable => d.eigen_types.swapped(),
    };
    datum_validate(&d.gtype, d.dual_dim, a_map, eigen)
}

pub fn datum_dimension(d: &CuspidalDatum) -> usize {
    d.a_map.iter().map(|(p, &a)| a as usize * p.degree()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::enumerate_self_dual_irreducible;

    fn ctx(q: u64, i: u8) -> DualityContext {
        DualityContext::over(q, i).unwrap()
    }

    fn gt(kind: GroupKind, c: &DualityContext) -> GroupType {
        GroupType::new(kind, c).unwrap()
    }

    #[test]
    fn kind_requires_matching_index() {
        assert!(GroupType::new(GroupKind::Unitary, &ctx(3, 1)).is_err());
        assert!(GroupType::new(GroupKind::Symplectic, &ctx(9, 2)).is_err());
    }

    #[test]
    fn symplectic_minimal() {
        let c = ctx(3, 1);
        let d = datum_validate(
            &gt(GroupKind::Symplectic, &c),
            1,
            BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 1)]),
            EigenTypes::default(),
        )
        .unwrap();
        assert_eq!((d.b_plus(), d.b_minus()), (0, 0));
        assert_eq!(datum_dimension(&d), 1);
        assert_eq!(d.natural_dim(), Some(0));
    }

    #[test]
    fn unitary_triangular() {
        let c = ctx(9, 2);
        let q = enumerate_self_dual_irreducible(&c, 1).unwrap()[0].clone();
        let d = datum_validate(
            &gt(GroupKind::Unitary, &c),
            3,
            BTreeMap::from([(q.clone(), 3)]),
            EigenTypes::default(),
        )
        .unwrap();
        assert_eq!(d.b(&q), 2);
        assert_eq!(datum_dimension(&d), 3);
    }

    #[test]
    fn symplectic_parity_obstruction() {
        let c = ctx(3, 1);
        let err = datum_validate(
            &gt(GroupKind::Symplectic, &c),
            2,
            BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 2)]),
            EigenTypes::default(),
        )
        .unwrap_err();
        assert!(matches!(err, LusztigError::NonTriangular { a: 2, .. }));
    }

    #[test]
    fn symplectic_requires_plus() {
        let c = ctx(3, 1);
        let err = datum_validate(
            &gt(GroupKind::Symplectic, &c),
            2,
            BTreeMap::from([(SelfDualPoly::x_plus_one(&c), 2)]),
            EigenTypes::default(),
        )
        .unwrap_err();
        assert_eq!(err, LusztigError::MissingSymplecticPlus);
    }

    #[test]
    fn dimension_and_mixed_degrees() {
        let c = ctx(3, 1);
        let quad = enumerate_self_dual_irreducible(&c, 2).unwrap()[0].clone();
        let a_map = BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 1), (quad, 1)]);
        let g = gt(GroupKind::Symplectic, &c);
        let d = datum_validate(&g, 3, a_map.clone(), EigenTypes::default()).unwrap();
        assert_eq!(datum_dimension(&d), 3);
        assert_eq!(
            datum_validate(&g, 4, a_map, EigenTypes::default()).unwrap_err(),
            LusztigError::DimensionMismatch {
                got: 3,
                expected: 4
            }
        );
    }

    #[test]
    fn eigen_types_checked() {
        let c = ctx(5, 1);
        let g = gt(GroupKind::EvenSpecialOrthogonal, &c);
        let a_map = BTreeMap::from([(SelfDualPoly::x_plus_one(&c), 2)]);
        let ok = EigenTypes {
            plus: Some(Sign::Plus),
            minus: Some(Sign::Minus),
        };
        assert!(datum_validate(&g, 2, a_map.clone(), ok).is_ok());
        let bad = EigenTypes {
            plus: None,
            minus: Some(Sign::Plus),
        };
        assert!(matches!(
            datum_validate(&g, 2, a_map, bad),
            Err(LusztigError::EigenTypeMismatch { .. })
        ));
        let odd = gt(GroupKind::OddSpecialOrthogonal, &c);
        let a_map = BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 4)]);
        let any = EigenTypes {
            plus: Some(Sign::Minus),
            minus: None,
        };
        assert!(datum_validate(&odd, 4, a_map, any).is_err());
    }

    #[test]
    fn twist_odd_orthogonal() {
        let c = ctx(3, 1);
        let g = gt(GroupKind::OddSpecialOrthogonal, &c);
        let d = datum_validate(
            &g,
            4,
            BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 4)]),
            EigenTypes::default(),
        )
        .unwrap();
        assert_eq!(d.b_plus(), 1);
        let t = datum_twist(&d, Involution::NegateVariable).unwrap();
        assert_eq!(t.a(&SelfDualPoly::x_plus_one(&c)), 4);
        assert_eq!((t.b_plus(), t.b_minus()), (0, 1));
        assert_eq!(datum_twist(&d, Involution::Identity).unwrap(), d);
        assert_eq!(datum_twist(&t, Involution::NegateVariable).unwrap(), d);
    }

    #[test]
    fn twist_can_break_symplectic() {
        let c = ctx(3, 1);
        let d = datum_validate(
            &gt(GroupKind::Symplectic, &c),
            1,
            BTreeMap::from([(SelfDualPoly::x_minus_one(&c), 1)]),
            EigenTypes::default(),
        )
        .unwrap();
        assert!(datum_twist(&d, Involution::NegateVariable).is_err());
    }

    #[test]
    fn a_b_round_trip_all_kinds() {
        use GroupKind::*;
        for kind in [Unitary, OddSpecialOrthogonal, Symplectic, EvenSpecialOrthogonal] {
            for case in [KeyCase::Generic, KeyCase::Plus, KeyCase::Minus] {
                for b in 0..=4 {
                    let a = a_of_b(kind, case, b);
                    assert_eq!(solve_b(kind, case, a), Some(b), "{kind:?} {case:?} {b}");
                }
            }
        }
    }

    #[test]
    fn dual_dimension_conventions() {
        use GroupKind::*;
        assert_eq!(Symplectic.dual_dim_of(4), Some(5));
        assert_eq!(OddSpecialOrthogonal.dual_dim_of(5), Some(4));
        assert_eq!(EvenSpecialOrthogonal.dual_dim_of(4), Some(4));
        assert_eq!(Unitary.dual_dim_of(3), Some(3));
        assert_eq!(Symplectic.dual_dim_of(3), None);
        for kind in [Unitary, OddSpecialOrthogonal, Symplectic, EvenSpecialOrthogonal] {
            for n in 0..10 {
                if let Some(d) = kind.dual_dim_of(n) {
                    assert_eq!(kind.natural_dim_of(d), Some(n));
                }
            }
        }
    }
}
