//! The invariant suite behind `verify`: each check runs a production
//! routine against an independent oracle over a bounded corpus and
//! reports counts rather than stopping at the first failure.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::corpus::{compositions, simple_corpus, CorpusSpec};
use crate::ffpoly::{
    enumerate_self_dual_irreducible, field_make, is_irreducible_trial, negate_variable, poly_dual,
    DualityContext, FiniteField, MonicPoly, SelfDualPoly,
};
use crate::jordan::{
    identity_check, ijord_general, ijord_simple, ijord_simple_detailed, inertial_contribution,
    jordan_blocks_from_real_part, SimpleCuspidalDescriptor,
};
use crate::lattice::{hom_lattice_jumps, model, signature_char, LatticeSeqSpec};
use crate::lusztig::{datum_validate, EigenTypes, GroupKind, GroupType};
use crate::params::registry_gen::{base_self_dual_classes, quadratic_characters, synthetic_registry};
use crate::params::{
    enumerate_cuspidal_shapes, four_squares_shape, is_cuspidal, is_regular, packet_counts,
    ramification_gl, ramification_sp, ramification_sp_inverse, regular_shape, validate_discrete,
    Block, EndoParameter, IrrepDescriptor, LParamShape, Registry, WildOrbit, WildParameter,
};
use crate::report::{InvariantRow, VerifyReport};
use crate::schema::{parse_document, to_json, Document, SimpleSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySpec {
    pub seed: u64,
    /// Largest `N` in the simple corpus.
    pub max_n: u32,
    /// Adds one descriptor whose factors do not fill `dim_E V`.
    pub mutant: bool,
}

impl Default for VerifySpec {
    fn default() -> Self {
        VerifySpec { seed: 0, max_n: 6, mutant: false }
    }
}

/// Accumulates one report row.
#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn row(self, name: &str) -> InvariantRow {
        InvariantRow { name: name.to_string(), checked: self.checked, failed: self.failed, first_failure: self.first }
    }
}

/// Parallel map keeping input order, then folded into a tally.
fn tally_par<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<(), String> + Sync + Send) -> Tally {
    let results: Vec<Result<(), String>> = items.par_iter().map(f).collect();
    let mut t = Tally::default();
    for r in results {
        t.check(r.is_ok(), || r.unwrap_err());
    }
    t
}

/// A descriptor whose second factor is one step too large; only the
/// structural checks accept it.
pub fn mutant_descriptor(q: u64) -> SimpleCuspidalDescriptor {
    let base = SimpleCuspidalDescriptor::depth_zero_trivial(q).expect("valid");
    let ctx = base.ctx().clone();
    let g = GroupType::new(GroupKind::Symplectic, &ctx).expect("index 1");
    let a = BTreeMap::from([(SelfDualPoly::x_minus_one(&ctx), 1), (SelfDualPoly::x_plus_one(&ctx), 2)]);
    let big = datum_validate(&g, 3, a, EigenTypes::default()).expect("valid datum");
    SimpleCuspidalDescriptor::assemble_unchecked(
        q,
        base.endo().clone(),
        0,
        [base.data()[0].clone(), big],
        BTreeMap::new(),
        None,
    )
    .expect("structurally valid")
}

pub fn check_identity(corpus: &[SimpleCuspidalDescriptor]) -> InvariantRow {
    tally_par(corpus, |d| {
        let ij = ijord_simple(d).map_err(|e| e.to_string())?;
        identity_check(d, &ij).map(|_| ()).map_err(|e| format!("{} N={}: {e}", d.endo(), d.n()))
    })
    .row("counting identity over the simple corpus")
}

/// Rows of every descriptor: the closed-form contribution against the
/// summed Jordan ladders of the two real parts.
pub fn check_contribution(corpus: &[SimpleCuspidalDescriptor]) -> InvariantRow {
    let per: Vec<Vec<Result<(), String>>> = corpus
        .par_iter()
        .map(|d| match ijord_simple_detailed(d) {
            Err(e) => vec![Err(e.to_string())],
            Ok(res) => res
                .breakdown
                .iter()
                .map(|r| {
                    let floor = inertial_contribution(r.r[0], r.r[1], r.t_rho).map_err(|e| e.to_string())?;
                    let mut sum = 0u64;
                    for s in [r.real_parts.0, r.real_parts.1] {
                        sum += jordan_blocks_from_real_part(s)
                            .map_err(|e| e.to_string())?
                            .iter()
                            .map(|&b| b as u64)
                            .sum::<u64>();
                    }
                    (floor == sum).then_some(()).ok_or_else(|| format!("{}: {floor} vs {sum}", r.poly.render()))
                })
                .collect(),
        })
        .collect();
    let mut t = Tally::default();
    for r in per.into_iter().flatten() {
        t.check(r.is_ok(), || r.unwrap_err());
    }
    t.row("inertial contribution equals block sum")
}

pub fn check_no_holes(corpus: &[SimpleCuspidalDescriptor]) -> InvariantRow {
    tally_par(corpus, |d| match ijord_simple(d) {
        Ok(ij) if ij.has_no_holes() => Ok(()),
        Ok(_) => Err(format!("{} N={}: holes", d.endo(), d.n())),
        Err(e) => Err(e.to_string()),
    })
    .row("IJord has no holes")
}

/// `Q*` straight from the definition: reverse, apply `bar`, normalize.
pub fn definitional_dual(q: &MonicPoly, ctx: &DualityContext) -> Option<MonicPoly> {
    let f = ctx.field();
    let inv = f.inv(ctx.bar(q.constant_term()))?;
    let coeffs: Vec<u32> = q.coeffs().iter().rev().map(|&c| f.mul(ctx.bar(c), inv)).collect();
    MonicPoly::new(coeffs).ok()
}

/// Brute-force filter over all monic polynomials of degree `m`.
pub fn brute_force_self_dual(ctx: &DualityContext, m: usize) -> Vec<MonicPoly> {
    MonicPoly::all_of_degree(ctx.field(), m)
        .filter(|q| definitional_dual(q, ctx).as_ref() == Some(q))
        .filter(|q| is_irreducible_trial(q, ctx.field()))
        .collect()
}

/// Contexts with `q_E ≤ 9`.
pub fn small_contexts() -> Vec<DualityContext> {
    let mut out = Vec::new();
    for q in [3u64, 5, 7, 9] {
        out.push(DualityContext::over(q, 1).expect("odd prime power"));
    }
    out.push(DualityContext::over(9, 2).expect("square"));
    out
}

pub fn check_polynomials() -> (InvariantRow, InvariantRow) {
    let mut eq = Tally::default();
    let mut inv = Tally::default();
    for ctx in small_contexts() {
        for m in 1..=3 {
            let fast: Vec<MonicPoly> = match enumerate_self_dual_irreducible(&ctx, m) {
                Ok(v) => v.iter().map(|p| p.poly().clone()).collect(),
                Err(e) => {
                    eq.check(false, || e.to_string());
                    continue;
                }
            };
            let slow = brute_force_self_dual(&ctx, m);
            let (a, b): (BTreeSet<_>, BTreeSet<_>) = (fast.iter().collect(), slow.iter().collect());
            eq.check(a == b && fast.len() == slow.len(), || {
                format!("q_E={} index={} m={m}: {} vs {}", ctx.size(), ctx.index(), fast.len(), slow.len())
            });
            for q in &fast {
                let d = poly_dual(q, &ctx);
                let dd = d.as_ref().ok().and_then(|d| poly_dual(d, &ctx).ok());
                let n = negate_variable(q, ctx.field());
                let nn = negate_variable(&n, ctx.field());
                let ok = dd.as_ref() == Some(q) && nn == *q && a.contains(&n) && d.is_ok_and(|d| a.contains(&d));
                inv.check(ok, || format!("{} over q_E={}", q.render(ctx.field()), ctx.size()));
            }
        }
    }
    (
        eq.row("self-dual enumeration equals brute force"),
        inv.row("dual and NegateVariable are involutions"),
    )
}

fn matrices(f: &FiniteField, n: usize) -> Vec<Vec<u32>> {
    let q = f.size();
    let total = (q as u64).pow((n * n) as u32);
    (0..total)
        .map(|mut idx| {
            (0..n * n)
                .map(|_| {
                    let c = (idx % q as u64) as u32;
                    idx /= q as u64;
                    c
                })
                .collect()
        })
        .collect()
}

pub fn check_signatures() -> InvariantRow {
    let mut t = Tally::default();
    for (p, k) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        let f = field_make(p, k).expect("odd prime power");
        for n in 1..=2 {
            let ms = matrices(&f, n);
            let res: Vec<Option<bool>> = ms
                .par_iter()
                .map(|g| {
                    let det = model::det(&f, g, n);
                    (det != 0).then(|| signature_char(&f, det).ok() == Some(model::permutation_sign(&f, g, n)))
                })
                .collect();
            for (g, r) in ms.iter().zip(res) {
                if let Some(ok) = r {
                    t.check(ok, || format!("GF({}) matrix {g:?}", f.size()));
                }
            }
        }
    }
    t.row("signature character equals permutation sign")
}

/// All principal specs with period `e` and dimension at most `max_dim`.
pub fn lattice_specs(e: u32, max_dim: u32) -> Vec<LatticeSeqSpec> {
    let mut out = Vec::new();
    for s in (1..=e).filter(|s| e.is_multiple_of(*s)) {
        for a in 0..s {
            for dim in 1..=max_dim {
                if let Ok(spec) = LatticeSeqSpec::new(e, a, s, dim) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

pub fn check_jumps(max_e: u32, max_dim: u32) -> InvariantRow {
    let mut t = Tally::default();
    for e in 1..=max_e {
        let specs = lattice_specs(e, max_dim);
        for ly in &specs {
            for lw in &specs {
                let fast = hom_lattice_jumps(ly, lw).ok();
                let slow = model::jump_result(ly, lw);
                t.check(fast.is_some() && fast == slow, || format!("{ly:?} -> {lw:?}: {fast:?} vs {slow:?}"));
            }
        }
    }
    t.row("hom-lattice jumps equal the filtration model")
}

/// Multisets over `weights` with total weight at most `max`, as
/// multiplicity vectors.
pub fn bounded_multisets(weights: &[u64], max: u64) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u64, w: &[u64], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k as u64 * w[i] <= left {
            cur.push(k);
            rec(i + 1, left - k as u64 * w[i], w, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(0, max, weights, &mut Vec::new(), &mut out);
    out
}

/// Sweep over every self-dual endo-parameter of even degree at most
/// `max_degree` built from the registry's base classes.
pub fn check_ramification(reg: &Registry, max_degree: u64) -> (InvariantRow, InvariantRow) {
    let classes = base_self_dual_classes(reg);
    let weights: Vec<u64> = classes.iter().map(|c| c.degree as u64).collect();
    let eps: Vec<EndoParameter> = bounded_multisets(&weights, max_degree)
        .into_iter()
        .map(|ms| {
            EndoParameter::make(classes.iter().cloned().zip(ms).filter(|(_, m)| *m > 0)).expect("positive")
        })
        .collect();
    let trivial = reg.trivial_orbit().expect("trivial orbit").clone();
    let mut ram = Tally::default();
    let mut iota = Tally::default();
    let mut images = BTreeSet::new();
    let mut iota_images = BTreeSet::new();
    let mut even = 0u64;
    for ep in &eps {
        ram.check(ep.square().unsquare() == *ep && ep.square().degree() == ep.degree(), || {
            format!("square round trip fails for {ep:?}")
        });
        if ep.degree() % 2 == 1 {
            iota.check(ep.iota_2n().is_err(), || format!("iota accepted odd degree {}", ep.degree()));
            continue;
        }
        even += 1;
        let composite = ramification_gl(&ep.square(), reg)
            .map(|w| w.add(&WildParameter::make([(trivial.clone(), 1)])));
        let sp = ramification_sp(ep, reg);
        let ok = match (&sp, &composite) {
            (Ok(a), Ok(b)) => {
                a == b
                    && a.dim() == ep.degree() + 1
                    && a.is_discrete_self_dual()
                    && ramification_sp_inverse(a, reg).as_ref() == Ok(ep)
            }
            _ => false,
        };
        ram.check(ok, || format!("ramification mismatch at degree {}", ep.degree()));
        if let Ok(a) = sp {
            images.insert(a);
        }
        match ep.iota_2n() {
            Ok(i) => {
                iota.check(i.degree() == ep.degree() + 1, || format!("iota degree {}", i.degree()));
                iota_images.insert(i);
            }
            Err(e) => iota.check(false, || e.to_string()),
        }
    }
    iota.check(iota_images.len() as u64 == even, || "iota is not injective".into());
    // Surjectivity: every discrete self-dual parameter of odd dimension
    // over the squared orbits is hit.
    let targets: Vec<&WildOrbit> = classes
        .iter()
        .filter(|c| !c.is_trivial())
        .filter_map(|c| reg.orbit_of(&c.square()))
        .collect();
    let tw: Vec<u64> = targets.iter().map(|o| o.dim as u64).collect();
    let mut wanted = 0u64;
    for ms in bounded_multisets(&tw, max_degree) {
        let rest: u64 = ms.iter().zip(&tw).map(|(&m, &w)| m as u64 * w).sum();
        for m0 in (1..=max_degree + 1 - rest).step_by(2) {
            wanted += 1;
            let wp = WildParameter::make(
                targets.iter().map(|o| (*o).clone()).zip(ms.iter().copied()).chain([(trivial.clone(), m0 as u32)]),
            );
            ram.check(images.contains(&wp), || format!("dimension-{} parameter not hit", wp.dim()));
        }
    }
    ram.check(wanted == images.len() as u64, || format!("{} images for {wanted} targets", images.len()));
    (
        ram.row("ramification_sp = increment . gl . square, bijective"),
        iota.row("iota_2N degree and injectivity"),
    )
}

/// Every discrete self-dual wild parameter of odd dimension at most
/// `max_dim` over the registry's self-dual orbits.
pub fn wild_sweep(reg: &Registry, max_dim: u64) -> Vec<WildParameter> {
    let trivial = reg.trivial_orbit().expect("trivial orbit").clone();
    let orbits: Vec<&WildOrbit> = reg.orbits.iter().filter(|o| o.self_dual && !o.is_trivial()).collect();
    let w: Vec<u64> = orbits.iter().map(|o| o.dim as u64).collect();
    let mut out = Vec::new();
    for ms in bounded_multisets(&w, max_dim.saturating_sub(1)) {
        let rest: u64 = ms.iter().zip(&w).map(|(&m, &d)| m as u64 * d).sum();
        for m0 in (1..=max_dim - rest).step_by(2) {
            out.push(WildParameter::make(
                orbits.iter().map(|o| (*o).clone()).zip(ms.iter().copied()).chain([(trivial.clone(), m0 as u32)]),
            ));
        }
    }
    out
}

fn inventory_over(reg: &Registry, wp: &WildParameter) -> Vec<IrrepDescriptor> {
    let labels: BTreeSet<&str> = wp.terms().keys().map(|o| o.label.as_str()).collect();
    reg.irreps
        .iter()
        .filter(|r| labels.contains(r.orbit.as_str()) && r.orbit_multiplicity <= wp.multiplicity(&r.orbit))
        .cloned()
        .collect()
}

/// Recipe check, enumeration check, and `(packet, cuspidal, regular)` per
/// enumerated shape.
type ShapeOutcome = (Result<(), String>, Result<(), String>, Vec<(u64, Option<u64>, bool)>);

/// Four-squares and regular shapes over the sweep; enumeration containment
/// for sweep members of dimension at most `enum_dim`.
pub fn check_shapes(reg: &Registry, max_dim: u64, enum_dim: u64) -> (InvariantRow, InvariantRow, InvariantRow) {
    let sweep = wild_sweep(reg, max_dim);
    let res: Vec<ShapeOutcome> = sweep
        .par_iter()
        .map(|wp| {
            let n = ((wp.dim() - 1) / 2) as u32;
            let mut counts = Vec::new();
            let fs = (|| {
                let fs = four_squares_shape(wp, reg).map_err(|e| e.to_string())?;
                let rg = regular_shape(wp, reg).map_err(|e| e.to_string())?;
                for s in [&fs, &rg] {
                    let rep = validate_discrete(s, n);
                    if !rep.is_valid() || !is_cuspidal(s) || s.restriction(reg).as_ref() != Ok(wp) {
                        return Err(format!("{s}: {:?}", rep.violations));
                    }
                }
                if !is_regular(&rg) {
                    return Err(format!("{rg} is not regular"));
                }
                Ok((fs, rg))
            })();
            let enumerated = match &fs {
                Err(e) => Err(e.clone()),
                Ok(_) if wp.dim() > enum_dim => Ok(()),
                Ok((f, r)) => match enumerate_cuspidal_shapes(n, &inventory_over(reg, wp)) {
                    Err(e) => Err(e.to_string()),
                    Ok(all) => {
                        for s in &all {
                            let pc = packet_counts(s);
                            counts.push((pc.packet_size, pc.cuspidal_count, is_regular(s)));
                        }
                        if all.contains(f) && all.contains(r) {
                            Ok(())
                        } else {
                            Err(format!("dimension {}: recipe shape missing from enumeration", wp.dim()))
                        }
                    }
                },
            };
            (fs.map(|_| ()), enumerated, counts)
        })
        .collect();
    let (mut a, mut b, mut c) = (Tally::default(), Tally::default(), Tally::default());
    for (fs, en, counts) in res {
        a.check(fs.is_ok(), || fs.unwrap_err());
        if en.as_ref().err().is_some() || !counts.is_empty() {
            b.check(en.is_ok(), || en.unwrap_err());
        }
        for (size, cusp, regular) in counts {
            let ok = matches!(cusp, Some(k) if k <= size && ((k == size) == regular));
            c.check(ok, || format!("packet {size}, cuspidal {cusp:?}, regular {regular}"));
        }
    }
    (
        a.row("four-squares and regular shapes validate and restrict"),
        b.row("enumeration contains the recipe shapes"),
        c.row("cuspidal count <= packet size, equality iff regular"),
    )
}

/// Every set of three distinct quadratic characters with trivial product.
pub fn sl2_oracle() -> BTreeSet<LParamShape> {
    let chars = quadratic_characters();
    let mut out = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let trip = [&chars[i], &chars[j], &chars[k]];
                if crate::params::QuadChar::product(trip.iter().map(|r| r.det_char)) == crate::params::QuadChar::One {
                    out.insert(LParamShape::new(trip.iter().map(|r| Block::new(r, 1)).collect()));
                }
            }
        }
    }
    out
}

pub fn check_sl2() -> InvariantRow {
    let mut t = Tally::default();
    let got: BTreeSet<_> = enumerate_cuspidal_shapes(1, &quadratic_characters())
        .map(|v| v.into_iter().collect())
        .unwrap_or_default();
    let want = sl2_oracle();
    t.check(got == want, || format!("{} shapes vs {}", got.len(), want.len()));
    t.row("N = 1 shapes are the trivial-product triples")
}

pub fn check_compositions(corpus: &[SimpleCuspidalDescriptor], count: usize, seed: u64) -> InvariantRow {
    let comps = compositions(corpus, count, 3, seed);
    tally_par(&comps, |(n, parts)| {
        ijord_general(*n, parts)
            .map_err(|e| format!("N={n}: {e}"))
            .and_then(|r| {
                (r.multiset.total() == 2 * *n as u64 + 1).then_some(()).ok_or_else(|| "total".to_string())
            })
    })
    .row("composed total equals 2N + 1")
}

pub fn check_json(corpus: &[SimpleCuspidalDescriptor], stride: usize) -> InvariantRow {
    let sample: Vec<&SimpleCuspidalDescriptor> = corpus.iter().step_by(stride.max(1)).collect();
    tally_par(&sample, |d| {
        let doc = Document::SimpleCuspidal(SimpleSpec::from_descriptor(d));
        let back = parse_document(&to_json(&doc)).map_err(|e| e.to_string())?;
        match &back {
            Document::SimpleCuspidal(s) if back == doc && s.build().as_ref() == Ok(*d) => Ok(()),
            _ => Err(format!("{} N={} does not round-trip", d.endo(), d.n())),
        }
    })
    .row("descriptor JSON round-trips")
}

pub fn run(spec: &VerifySpec) -> VerifyReport {
    let cs = CorpusSpec { max_n: spec.max_n, ..CorpusSpec::default() };
    let mut rows = Vec::new();
    let mut corpus = match simple_corpus(&cs) {
        Ok(c) => c,
        Err(e) => {
            rows.push(InvariantRow { name: "corpus generation".into(), checked: 1, failed: 1, first_failure: Some(e.to_string()) });
            Vec::new()
        }
    };
    if spec.mutant {
        corpus.push(mutant_descriptor(3));
    }
    rows.push(check_identity(&corpus));
    rows.push(check_contribution(&corpus));
    rows.push(check_no_holes(&corpus));
    let (p1, p2) = check_polynomials();
    rows.push(p1);
    rows.push(p2);
    rows.push(check_signatures());
    rows.push(check_jumps(12, 3));
    let reg = synthetic_registry(4, 3);
    let (r1, r2) = check_ramification(&reg, 6);
    rows.push(r1);
    rows.push(r2);
    rows.push(check_sl2());
    let small = synthetic_registry(1, 15);
    let (s1, s2, s3) = check_shapes(&small, 15, 9);
    rows.extend([s1, s2, s3]);
    let valid: Vec<_> = corpus.iter().filter(|d| !spec.mutant || d.n() > 0 || d.data()[1].dual_dim() <= 1).cloned().collect();
    rows.push(check_compositions(&valid, 200, spec.seed));
    rows.push(check_json(&corpus, 7));
    let passed = rows.iter().all(|r| r.failed == 0);
    VerifyReport { seed: spec.seed, bound: spec.max_n as u64, rows, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_are_bounded() {
        let ms = bounded_multisets(&[1, 2], 3);
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m[0] + 2 * m[1] <= 3));
    }

    #[test]
    fn mutant_breaks_identity() {
        let d = mutant_descriptor(3);
        let row = check_identity(&[d]);
        assert_eq!(row.failed, 1);
    }

    #[test]
    fn definitional_dual_agrees_on_linear() {
        let ctx = DualityContext::over(7, 1).unwrap();
        let q = MonicPoly::linear(ctx.field(), 3);
        assert_eq!(definitional_dual(&q, &ctx), poly_dual(&q, &ctx).ok());
    }
}
