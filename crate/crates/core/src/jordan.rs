//! Inertial Jordan sets from simple cuspidal descriptors, the counting
//! identity, and composition of simple parts into the general case.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::endo::{DualType, EndoClass, EndoError};
use crate::ffpoly::{
    apply_involution, field_make, prime_power, DualityContext, FfpolyError, Involution,
    SelfDualPoly,
};
use crate::hecke::{
    hecke_parameter, is_half_integer, parity_coherent, reducibility_real_parts, HeckeError,
};
use crate::lusztig::{datum_validate, CuspidalDatum, EigenTypes, GroupKind, GroupType, LusztigError};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiTwist {
    #[default]
    Trivial,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Ffpoly(#[from] FfpolyError),
    #[error(transparent)]
    Lusztig(#[from] LusztigError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("q = {0} is not an odd prime power")]
    BadBaseField(u64),
    #[error("endo-class {0} is not self-dual")]
    NotSelfDual(String),
    #[error("degree {degree} does not divide 2N = {two_n}")]
    DegreeDoesNotDivide { degree: u32, two_n: u32 },
    #[error("data live over {found}, expected {expected}")]
    ContextMismatch { expected: String, found: String },
    #[error("factor kinds {kinds:?} are not allowed for {dual_type:?}")]
    FactorTypes {
        dual_type: DualType,
        kinds: [GroupKind; 2],
    },
    #[error("factor natural dimensions sum to {got}, expected dim_E V = {expected}")]
    NaturalDimension { expected: usize, got: usize },
    #[error("factor {0} has a dual dimension with no natural dimension")]
    BadDualDimension(usize),
    #[error("depth-zero descriptors carry only identity involutions")]
    DepthZeroInvolution,
    #[error("involution key ({t}, {m}) has t outside {{0, 1}} or m = 0")]
    BadInvolutionKey { t: u8, m: usize },
    #[error("r0/t = {x} and r1/t = {y} for {poly} are not coherent")]
    ParityIncoherent { poly: String, x: String, y: String },
    #[error("contribution {floor} differs from block sum {blocks} at {poly}")]
    ContributionMismatch { poly: String, floor: u64, blocks: u64 },
    #[error("counting identity fails: total {} but expected {}", .0.total, .0.expected)]
    IdentityViolation(Box<IdentityReport>),
    #[error("endo-class {0} appears in more than one part")]
    DuplicateEndoClass(String),
    #[error("parts have total dimension {got}, expected 2N = {expected}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("parts use base fields of sizes {0} and {1}")]
    BaseFieldMismatch(u64, u64),
    #[error("unknown polynomial name {0:?}")]
    UnknownPolynomial(String),
}

/// Everything needed to run the simple-case algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCuspidalDescriptor {
    q: u64,
    endo: EndoClass,
    n: u32,
    data: [CuspidalDatum; 2],
    involutions: BTreeMap<(u8, usize), Involution>,
    chi_twist: Option<ChiTwist>,
}

/// Context `k_Θ` of the descriptor: `q^f` elements, index 2 exactly for
/// unramified quadratic classes.
pub fn context_for(q: u64, endo: &EndoClass) -> Result<DualityContext, JordanError> {
    let (p, a) = match prime_power(q) {
        Some((p, a)) if p % 2 == 1 => (p, a),
        _ => return Err(JordanError::BadBaseField(q)),
    };
    let index = if endo.dual_type == Some(DualType::UnramifiedQuadratic) {
        2
    } else {
        1
    };
    let field = field_make(p, a * endo.f).map_err(FfpolyError::from)?;
    Ok(DualityContext::new(field, index)?)
}

/// Factor kinds permitted for a duality type and `dim_E V`, as ordered
/// pairs.
pub fn allowed_kinds(dual_type: DualType, dim_e_v: usize) -> Vec<[GroupKind; 2]> {
    use GroupKind::*;
    match dual_type {
        DualType::UnramifiedQuadratic => vec![[Unitary, Unitary]],
        DualType::TrivialClass => vec![[Symplectic, Symplectic]],
        DualType::RamifiedQuadratic => {
            let so = if dim_e_v % 2 == 1 {
                OddSpecialOrthogonal
            } else {
                EvenSpecialOrthogonal
            };
            vec![[Symplectic, so], [so, Symplectic]]
        }
    }
}

impl SimpleCuspidalDescriptor {
    pub fn new(
        q: u64,
        endo: EndoClass,
        n: u32,
        data: [CuspidalDatum; 2],
        involutions: BTreeMap<(u8, usize), Involution>,
        chi_twist: Option<ChiTwist>,
    ) -> Result<Self, JordanError> {
        let desc = Self::assemble_unchecked(q, endo, n, data, involutions, chi_twist)?;
        let dim = desc.dim_e_v();
        let mut got = 0;
        for (t, d) in desc.data.iter().enumerate() {
            got += d.natural_dim().ok_or(JordanError::BadDualDimension(t))?;
        }
        if got != dim {
            return Err(JordanError::NaturalDimension { expected: dim, got });
        }
        Ok(desc)
    }

    /// Structural checks only; the natural dimensions of the factors are
    /// not compared with `dim_E V`. The identity check then detects any
    /// inconsistency.
    pub fn assemble_unchecked(
        q: u64,
        endo: EndoClass,
        n: u32,
        data: [CuspidalDatum; 2],
        involutions: BTreeMap<(u8, usize), Involution>,
        chi_twist: Option<ChiTwist>,
    ) -> Result<Self, JordanError> {
        endo.validate()?;
        let dual_type = match (endo.self_dual, endo.dual_type) {
            (true, Some(t)) => t,
            _ => return Err(JordanError::NotSelfDual(endo.display_label())),
        };
        if !(2 * n).is_multiple_of(endo.degree) {
            return Err(JordanError::DegreeDoesNotDivide {
                degree: endo.degree,
                two_n: 2 * n,
            });
        }
        let ctx = context_for(q, &endo)?;
        for d in &data {
            if d.ctx() != &ctx {
                return Err(JordanError::ContextMismatch {
                    expected: format!("{ctx:?}"),
                    found: format!("{:?}", d.ctx()),
                });
            }
        }
        let kinds = [data[0].kind(), data[1].kind()];
        let dim_e_v = (2 * n / endo.degree) as usize;
        if !allowed_kinds(dual_type, dim_e_v).contains(&kinds) {
            return Err(JordanError::FactorTypes { dual_type, kinds });
        }
        for &(t, m) in involutions.keys() {
            if t > 1 || m == 0 {
                return Err(JordanError::BadInvolutionKey { t, m });
            }
        }
        let involutions: BTreeMap<_, _> = involutions
            .into_iter()
            .filter(|(_, s)| *s != Involution::Identity)
            .collect();
        if dual_type == DualType::TrivialClass && !involutions.is_empty() {
            return Err(JordanError::DepthZeroInvolution);
        }
        Ok(SimpleCuspidalDescriptor {
            q,
            endo,
            n,
            data,
            involutions,
            chi_twist,
        })
    }

    /// The depth-zero part of the trivial group: `Sp(0) × Sp(0)`.
    pub fn depth_zero_trivial(q: u64) -> Result<Self, JordanError> {
        let endo = EndoClass::trivial();
        let ctx = context_for(q, &endo)?;
        let g = GroupType::new(GroupKind::Symplectic, &ctx)?;
        let a = BTreeMap::from([(SelfDualPoly::x_minus_one(&ctx), 1)]);
        let d = datum_validate(&g, 1, a, EigenTypes::default())?;
        Self::new(q, endo, 0, [d.clone(), d], BTreeMap::new(), None)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn endo(&self) -> &EndoClass {
        &self.endo
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim_e_v(&self) -> usize {
        (2 * self.n / self.endo.degree) as usize
    }

    pub fn data(&self) -> &[CuspidalDatum; 2] {
        &self.data
    }

    pub fn factor_kinds(&self) -> [GroupKind; 2] {
        [self.data[0].kind(), self.data[1].kind()]
    }

    pub fn ctx(&self) -> &DualityContext {
        self.data[0].ctx()
    }

    /// Only non-identity entries are stored.
    pub fn involutions(&self) -> &BTreeMap<(u8, usize), Involution> {
        &self.involutions
    }

    pub fn sigma(&self, t: u8, m: usize) -> Involution {
        self.involutions.get(&(t, m)).copied().unwrap_or_default()
    }

    pub fn chi_twist(&self) -> Option<ChiTwist> {
        self.chi_twist
    }

    pub fn is_depth_zero(&self) -> bool {
        self.endo.is_trivial()
    }

    /// `2N + 1` at depth zero, `2N` otherwise.
    pub fn expected_total(&self) -> u64 {
        2 * self.n as u64 + self.is_depth_zero() as u64
    }
}

/// Inertial class label: the class of `Θ²`, the polynomial, and whether a
/// quadratic twist was applied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassLabel {
    pub endo: EndoClass,
    pub poly: SelfDualPoly,
    pub twisted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IJordEntry {
    pub label: ClassLabel,
    pub m: u32,
    pub deg_rho: u64,
}

/// Unaggregated multiset of Jordan blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IJordMultiset {
    pub entries: Vec<IJordEntry>,
}

impl IJordMultiset {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.m as u64 * e.deg_rho).sum()
    }

    /// Distinct entries with their multiplicities, in canonical order.
    pub fn aggregated(&self) -> Vec<(IJordEntry, usize)> {
        let mut counts: BTreeMap<&IJordEntry, usize> = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(e).or_default() += 1;
        }
        counts.into_iter().map(|(e, c)| (e.clone(), c)).collect()
    }

    /// Whenever `(label, m)` occurs with `m > 2`, so does `(label, m-2)`.
    pub fn has_no_holes(&self) -> bool {
        let present: BTreeSet<(&ClassLabel, u32)> =
            self.entries.iter().map(|e| (&e.label, e.m)).collect();
        present
            .iter()
            .all(|&(l, m)| m <= 2 || present.contains(&(l, m - 2)))
    }

    pub fn union(parts: impl IntoIterator<Item = IJordMultiset>) -> Self {
        IJordMultiset {
            entries: parts.into_iter().flat_map(|p| p.entries).collect(),
        }
    }

    /// Applies a quadratic twist to every label.
    pub fn twisted(&self, chi: ChiTwist) -> Self {
        if chi == ChiTwist::Trivial {
            return self.clone();
        }
        let entries = self
            .entries
            .iter()
            .map(|e| IJordEntry {
                label: ClassLabel {
                    endo: e.label.endo.clone(),
                    poly: apply_involution(Involution::NegateVariable, &e.label.poly),
                    twisted: !e.label.twisted,
                },
                m: e.m,
                deg_rho: e.deg_rho,
            })
            .collect();
        IJordMultiset { entries }
    }
}

/// One row of the per-polynomial breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakdownRow {
    pub poly: SelfDualPoly,
    pub m: usize,
    pub p_star: [SelfDualPoly; 2],
    pub r: [Rational; 2],
    pub t_rho: u64,
    pub real_parts: (Rational, Rational),
    pub blocks: Vec<u32>,
    pub contribution: u64,
    pub deg_rho: u64,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleResult {
    pub multiset: IJordMultiset,
    pub breakdown: Vec<BreakdownRow>,
}

/// `2s-1, 2s-3, …` down to 1 or 2; empty below `s = 1`.
pub fn jordan_blocks_from_real_part(s: Rational) -> Result<Vec<u32>, HeckeError> {
    if !is_half_integer(&s) || s < int(0) {
        return Err(HeckeError::NonHalfInteger(s.to_string()));
    }
    let top = (s * int(2)).to_integer() - 1;
    Ok((1..=top).rev().step_by(2).map(|m| m as u32).collect())
}

/// `floor((r0² + r1²) / (2 t²))`.
pub fn inertial_contribution(r0: Rational, r1: Rational, t_rho: u64) -> Result<u64, HeckeError> {
    if t_rho == 0 {
        return Err(HeckeError::ZeroTwistNumber);
    }
    let t = int(t_rho as i64);
    let v = (r0 * r0 + r1 * r1) / (int(2) * t * t);
    Ok(v.floor().to_integer() as u64)
}

/// The set of polynomials on which either factor can produce a block.
pub fn q_set(desc: &SimpleCuspidalDescriptor) -> BTreeSet<SelfDualPoly> {
    let mut set = BTreeSet::new();
    for t in 0..2u8 {
        for p in desc.data[t as usize].a_map().keys() {
            set.insert(apply_involution(desc.sigma(t, p.degree()), p));
        }
    }
    set
}

pub fn ijord_simple(desc: &SimpleCuspidalDescriptor) -> Result<IJordMultiset, JordanError> {
    Ok(ijord_simple_detailed(desc)?.multiset)
}

/// One breakdown row for `Q`, whether or not `Q` lies in the block set.
pub fn breakdown_row(desc: &SimpleCuspidalDescriptor, q: &SelfDualPoly) -> Result<BreakdownRow, JordanError> {
    let m = q.degree();
    let f = desc.endo.f;
    let t_rho = m as u64 * f as u64;
    let mut r = [int(0), int(0)];
    let mut p_star = [q.clone(), q.clone()];
    let mut exceptional = false;
    for t in 0..2u8 {
        let h = hecke_parameter(q, m, &desc.data[t as usize], desc.sigma(t, m), f)?;
        r[t as usize] = h.r;
        p_star[t as usize] = h.p_star;
        exceptional |= h.exceptional;
    }
    if !parity_coherent(r[0], r[1], t_rho) {
        let t = int(t_rho as i64);
        return Err(JordanError::ParityIncoherent {
            poly: q.render(),
            x: (r[0] / t).to_string(),
            y: (r[1] / t).to_string(),
        });
    }
    let (s1, s2) = reducibility_real_parts(r[0], r[1], t_rho)?;
    let mut blocks = jordan_blocks_from_real_part(s1)?;
    blocks.extend(jordan_blocks_from_real_part(s2)?);
    let contribution = inertial_contribution(r[0], r[1], t_rho)?;
    let block_sum: u64 = blocks.iter().map(|&b| b as u64).sum();
    if block_sum != contribution {
        return Err(JordanError::ContributionMismatch {
            poly: q.render(),
            floor: contribution,
            blocks: block_sum,
        });
    }
    Ok(BreakdownRow {
        poly: q.clone(),
        m,
        p_star,
        r,
        t_rho,
        real_parts: (s1, s2),
        blocks,
        contribution,
        deg_rho: m as u64 * desc.endo.degree as u64,
        exceptional,
    })
}

pub fn ijord_simple_detailed(desc: &SimpleCuspidalDescriptor) -> Result<SimpleResult, JordanError> {
    let theta2 = desc.endo.square();
    let mut entries = Vec::new();
    let mut breakdown = Vec::new();
    for q in q_set(desc) {
        let row = breakdown_row(desc, &q)?;
        let label = ClassLabel {
            endo: theta2.clone(),
            poly: q.clone(),
            twisted: false,
        };
        entries.extend(row.blocks.iter().map(|&m| IJordEntry {
            label: label.clone(),
            m,
            deg_rho: row.deg_rho,
        }));
        breakdown.push(row);
    }
    Ok(SimpleResult {
        multiset: IJordMultiset { entries },
        breakdown,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub poly: String,
    pub m: u32,
    pub count: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub expected: u64,
    pub total: u64,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.expected == self.total
    }
}

pub fn identity_report(expected: u64, ij: &IJordMultiset) -> IdentityReport {
    let rows = ij
        .aggregated()
        .into_iter()
        .map(|(e, count)| IdentityRow {
            poly: format!("{}:{}", e.label.endo, e.label.poly.render()),
            m: e.m,
            count,
            weight: count as u64 * e.m as u64 * e.deg_rho,
        })
        .collect();
    IdentityReport {
        expected,
        total: ij.total(),
        rows,
    }
}

/// `Σ m·deg ρ = 2N (+1 at depth zero)`.
pub fn identity_check(
    desc: &SimpleCuspidalDescriptor,
    ij: &IJordMultiset,
) -> Result<IdentityReport, JordanError> {
    let report = identity_report(desc.expected_total(), ij);
    if report.holds() {
        Ok(report)
    } else {
        Err(JordanError::IdentityViolation(Box::new(report)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralResult {
    pub multiset: IJordMultiset,
    pub parts: Vec<(SimpleCuspidalDescriptor, ChiTwist, SimpleResult)>,
    /// The depth-zero part was supplied implicitly.
    pub inserted_depth_zero: bool,
    pub report: IdentityReport,
}

/// Disjoint union over the parts, each twisted by its character. A
/// missing depth-zero part is taken to be the trivial group. Only the
/// structural checks are applied; see [`ijord_general`].
pub fn ijord_general_unchecked(
    n: u32,
    parts: &[(SimpleCuspidalDescriptor, ChiTwist)],
) -> Result<GeneralResult, JordanError> {
    let mut seen = BTreeSet::new();
    for (d, _) in parts {
        let key = d.endo.key();
        if !seen.insert((key.0.to_string(), key.1)) {
            return Err(JordanError::DuplicateEndoClass(d.endo.display_label()));
        }
    }
    let got: u32 = parts.iter().map(|(d, _)| 2 * d.n).sum();
    if got != 2 * n {
        return Err(JordanError::DimensionMismatch {
            expected: 2 * n,
            got,
        });
    }
    let mut q = None;
    for (d, _) in parts {
        match q {
            Some(q0) if q0 != d.q => return Err(JordanError::BaseFieldMismatch(q0, d.q)),
            _ => q = Some(d.q),
        }
    }
    let mut all: Vec<(SimpleCuspidalDescriptor, ChiTwist)> = parts.to_vec();
    let inserted = !parts.iter().any(|(d, _)| d.is_depth_zero());
    if inserted {
        let q = q.unwrap_or(3);
        all.insert(0, (SimpleCuspidalDescriptor::depth_zero_trivial(q)?, ChiTwist::Trivial));
    }
    let mut results = Vec::with_capacity(all.len());
    for (d, chi) in all {
        let res = ijord_simple_detailed(&d)?;
        results.push((d, chi, res));
    }
    let multiset =
        IJordMultiset::union(results.iter().map(|(_, chi, r)| r.multiset.twisted(*chi)));
    let report = identity_report(2 * n as u64 + 1, &multiset);
    Ok(GeneralResult {
        multiset,
        parts: results,
        inserted_depth_zero: inserted,
        report,
    })
}

/// [`ijord_general_unchecked`] followed by the identity for every part and
/// for the total `2N + 1`.
pub fn ijord_general(
    n: u32,
    parts: &[(SimpleCuspidalDescriptor, ChiTwist)],
) -> Result<GeneralResult, JordanError> {
    let res = ijord_general_unchecked(n, parts)?;
    for (d, _, r) in &res.parts {
        identity_check(d, &r.multiset)?;
    }
    if !res.report.holds() {
        return Err(JordanError::IdentityViolation(Box::new(res.report)));
    }
    Ok(res)
}
