//! Serializable reports and their plain-text tables. Rationals are
//! always rendered as `"p/q"` strings.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::ffpoly::{enumerate_self_dual_irreducible, DualityContext, FfpolyError};
use crate::jordan::{
    identity_report, ijord_general_unchecked, ijord_simple_detailed, BreakdownRow, ChiTwist,
    IJordMultiset, JordanError, SimpleCuspidalDescriptor, SimpleResult,
};
use crate::params::{
    enumerate_cuspidal_shapes, four_squares_shape, is_regular, packet_counts, ParamsError, Registry,
};
use crate::rational::{serde_str_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowReport {
    pub poly: String,
    pub coeffs: Vec<u32>,
    pub m: usize,
    pub p_star: Vec<String>,
    #[serde(with = "serde_str_vec")]
    pub r: Vec<Rational>,
    pub t_rho: u64,
    #[serde(with = "serde_str_vec")]
    pub real_parts: Vec<Rational>,
    pub blocks: Vec<u32>,
    pub contribution: u64,
    pub deg_rho: u64,
    pub exceptional: bool,
}

impl From<&BreakdownRow> for RowReport {
    fn from(r: &BreakdownRow) -> Self {
        RowReport {
            poly: r.poly.render(),
            coeffs: r.poly.coeffs().to_vec(),
            m: r.m,
            p_star: r.p_star.iter().map(|p| p.render()).collect(),
            r: r.r.to_vec(),
            t_rho: r.t_rho,
            real_parts: vec![r.real_parts.0, r.real_parts.1],
            blocks: r.blocks.clone(),
            contribution: r.contribution,
            deg_rho: r.deg_rho,
            exceptional: r.exceptional,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartReport {
    pub endo: String,
    pub q: u64,
    pub n: u32,
    pub kinds: Vec<String>,
    pub chi: ChiTwist,
    pub depth_zero: bool,
    pub inserted: bool,
    pub expected_total: u64,
    pub total: u64,
    pub holds: bool,
    pub breakdown: Vec<RowReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultisetRow {
    pub class: String,
    pub poly: String,
    pub twisted: bool,
    pub m: u32,
    pub deg_rho: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IjordReport {
    pub n: u32,
    pub expected_total: u64,
    pub total: u64,
    pub holds: bool,
    pub parts: Vec<PartReport>,
    pub multiset: Vec<MultisetRow>,
}

impl IjordReport {
    /// Every part and the total satisfy the counting identity.
    pub fn all_hold(&self) -> bool {
        self.holds && self.parts.iter().all(|p| p.holds)
    }
}

fn multiset_rows(ij: &IJordMultiset) -> Vec<MultisetRow> {
    ij.aggregated()
        .into_iter()
        .map(|(e, count)| MultisetRow {
            class: e.label.endo.display_label(),
            poly: e.label.poly.render(),
            twisted: e.label.twisted,
            m: e.m,
            deg_rho: e.deg_rho,
            count,
        })
        .collect()
}

fn part_report(d: &SimpleCuspidalDescriptor, chi: ChiTwist, inserted: bool, res: &SimpleResult) -> PartReport {
    let rep = identity_report(d.expected_total(), &res.multiset);
    PartReport {
        endo: d.endo().display_label(),
        q: d.q(),
        n: d.n(),
        kinds: d.factor_kinds().iter().map(|k| k.name().to_string()).collect(),
        chi,
        depth_zero: d.is_depth_zero(),
        inserted,
        expected_total: rep.expected,
        total: rep.total,
        holds: rep.holds(),
        breakdown: res.breakdown.iter().map(RowReport::from).collect(),
    }
}

pub fn simple_report(d: &SimpleCuspidalDescriptor) -> Result<IjordReport, JordanError> {
    let res = ijord_simple_detailed(d)?;
    let part = part_report(d, ChiTwist::Trivial, false, &res);
    Ok(IjordReport {
        n: d.n(),
        expected_total: part.expected_total,
        total: part.total,
        holds: part.holds,
        parts: vec![part],
        multiset: multiset_rows(&res.multiset),
    })
}

pub fn general_report(n: u32, parts: &[(SimpleCuspidalDescriptor, ChiTwist)]) -> Result<IjordReport, JordanError> {
    let res = ijord_general_unchecked(n, parts)?;
    let parts = res
        .parts
        .iter()
        .enumerate()
        .map(|(i, (d, chi, r))| part_report(d, *chi, res.inserted_depth_zero && i == 0, r))
        .collect();
    Ok(IjordReport {
        n,
        expected_total: res.report.expected,
        total: res.report.total,
        holds: res.report.holds(),
        parts,
        multiset: multiset_rows(&res.multiset),
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render_ijord(rep: &IjordReport) -> String {
    let mut s = String::new();
    for p in &rep.parts {
        let _ = writeln!(
            s,
            "part {} (q = {}, N = {}, {}){}{}",
            p.endo,
            p.q,
            p.n,
            p.kinds.join(" x "),
            if p.chi == ChiTwist::Quadratic { ", twisted" } else { "" },
            if p.inserted { ", implicit" } else { "" },
        );
        let _ = writeln!(s, "  {:<24} {:>3} {:>11} {:>6} {:>11} {:<10} {:>4}", "Q", "m", "r", "t", "s", "blocks", "sum");
        for r in &p.breakdown {
            let _ = writeln!(
                s,
                "  {:<24} {:>3} {:>11} {:>6} {:>11} {:<10} {:>4}{}",
                r.poly,
                r.m,
                join(&r.r),
                r.t_rho,
                join(&r.real_parts),
                format!("[{}]", join(&r.blocks)),
                r.contribution * r.deg_rho,
                if r.exceptional { "  (exceptional)" } else { "" },
            );
        }
        let _ = writeln!(
            s,
            "  total {} expected {}: {}",
            p.total,
            p.expected_total,
            if p.holds { "ok" } else { "VIOLATED" }
        );
    }
    let _ = writeln!(s, "IJord:");
    for r in &rep.multiset {
        let _ = writeln!(
            s,
            "  ({}{}, {}) m = {} deg = {}{}",
            if r.twisted { "chi*" } else { "" },
            r.class,
            r.poly,
            r.m,
            r.deg_rho,
            if r.count > 1 { format!(" x{}", r.count) } else { String::new() },
        );
    }
    let _ = writeln!(
        s,
        "identity: total {} expected {}: {}",
        rep.total,
        rep.expected_total,
        if rep.all_hold() { "ok" } else { "VIOLATED" }
    );
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyRow {
    pub coeffs: Vec<u32>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyListing {
    pub q: u64,
    pub index: u8,
    pub m: usize,
    pub count: usize,
    pub polys: Vec<PolyRow>,
}

pub fn poly_listing(q: u64, index: u8, m: usize) -> Result<PolyListing, FfpolyError> {
    let ctx = DualityContext::over(q, index)?;
    let polys: Vec<PolyRow> = enumerate_self_dual_irreducible(&ctx, m)?
        .iter()
        .map(|p| PolyRow { coeffs: p.coeffs().to_vec(), text: p.render() })
        .collect();
    Ok(PolyListing { q, index, m, count: polys.len(), polys })
}

pub fn render_polys(l: &PolyListing) -> String {
    let mut s = format!("self-dual irreducible polynomials, q_E = {}, index {}, degree {}\n", l.q, l.index, l.m);
    for p in &l.polys {
        let _ = writeln!(s, "  {:<30} [{}]", p.text, join(&p.coeffs));
    }
    let _ = writeln!(s, "count: {}", l.count);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRef {
    pub id: String,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRow {
    pub shape: String,
    pub blocks: Vec<BlockRef>,
    pub packet_size: u64,
    pub cuspidal_count: Option<u64>,
    pub regular: bool,
    pub four_squares: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamCatalog {
    pub n: u32,
    pub count: usize,
    pub shapes: Vec<CatalogRow>,
}

/// Cuspidal shapes of dimension `2N + 1` over the registry inventory.
/// `four_squares` marks the shape built by the four-squares recipe from
/// the shape's own wild restriction.
pub fn param_catalog(n: u32, reg: &Registry) -> Result<ParamCatalog, ParamsError> {
    reg.validate()?;
    let shapes = enumerate_cuspidal_shapes(n, &reg.irreps)?;
    let mut rows = Vec::with_capacity(shapes.len());
    for sh in &shapes {
        let pc = packet_counts(sh);
        let fs = sh
            .restriction(reg)
            .and_then(|wp| four_squares_shape(&wp, reg))
            .is_ok_and(|f| &f == sh);
        rows.push(CatalogRow {
            shape: sh.to_string(),
            blocks: sh.blocks().iter().map(|b| BlockRef { id: b.irrep.id.clone(), m: b.m }).collect(),
            packet_size: pc.packet_size,
            cuspidal_count: pc.cuspidal_count,
            regular: is_regular(sh),
            four_squares: fs,
        });
    }
    Ok(ParamCatalog { n, count: rows.len(), shapes: rows })
}

pub fn render_catalog(c: &ParamCatalog) -> String {
    let mut s = format!("cuspidal discrete parameter shapes, 2N+1 = {}\n", 2 * c.n + 1);
    for r in &c.shapes {
        let _ = writeln!(
            s,
            "  {:<48} packet {:>3} cuspidal {:>3}{}{}",
            r.shape,
            r.packet_size,
            r.cuspidal_count.map_or("-".into(), |x| x.to_string()),
            if r.regular { "  regular" } else { "  irregular" },
            if r.four_squares { "  four-squares" } else { "" },
        );
    }
    let _ = writeln!(s, "count: {}", c.count);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantRow {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub seed: u64,
    pub bound: u64,
    pub rows: Vec<InvariantRow>,
    pub passed: bool,
}

pub fn render_verify(v: &VerifyReport) -> String {
    let mut s = format!("verification (seed {}, bound {})\n", v.seed, v.bound);
    for r in &v.rows {
        let _ = writeln!(
            s,
            "  {:<8} {:<54} {:>8} checked {:>4} failed",
            if r.failed == 0 { "PASS" } else { "FAIL" },
            r.name,
            r.checked,
            r.failed
        );
        if let Some(f) = &r.first_failure {
            let _ = writeln!(s, "           first failure: {f}");
        }
    }
    let _ = writeln!(s, "{}", if v.passed { "all invariants hold" } else { "invariant violations found" });
    s
}
