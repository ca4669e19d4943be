//! Bounded exhaustive corpora of simple descriptors and of compositions,
//! used by the property suites and the `verify` command.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::endo::{DualType, EndoClass};
use crate::ffpoly::{candidate_count, enumerate_self_dual_irreducible_bounded, DualityContext, Involution, SelfDualPoly};
use crate::jordan::{allowed_kinds, context_for, ChiTwist, JordanError, SimpleCuspidalDescriptor};
use crate::lusztig::{a_of_b, datum_validate, key_case, CuspidalDatum, EigenTypes, GroupKind, GroupType, KeyCase};
use crate::params::registry_gen::SELF_DUAL_SHAPES;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub qs: Vec<u64>,
    pub max_theta_degree: u32,
    pub max_n: u32,
    pub max_b: u32,
    /// Polynomials of one degree are taken only while `q_E^m` stays below
    /// this cap.
    pub poly_candidate_cap: u64,
    /// Leading polynomials kept per degree, in canonical order.
    pub polys_per_degree: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            qs: vec![3, 5],
            max_theta_degree: 4,
            max_n: 6,
            max_b: 2,
            poly_candidate_cap: 20_000,
            polys_per_degree: 2,
        }
    }
}

/// The trivial class and one self-dual class per shape of bounded degree.
pub fn corpus_classes(max_degree: u32) -> Vec<EndoClass> {
    let mut out = vec![EndoClass::trivial()];
    for (s, &(e, f, t)) in SELF_DUAL_SHAPES.iter().enumerate() {
        if e * f <= max_degree {
            out.push(EndoClass::self_dual(&format!("c{s}"), e, f, t));
        }
    }
    out
}

struct PolyCache<'a> {
    spec: &'a CorpusSpec,
    cache: HashMap<(DualityContext, usize), Vec<SelfDualPoly>>,
}

impl PolyCache<'_> {
    fn of_degree(&mut self, ctx: &DualityContext, m: usize) -> &[SelfDualPoly] {
        let spec = self.spec;
        self.cache.entry((ctx.clone(), m)).or_insert_with(|| {
            if candidate_count(ctx, m) > spec.poly_candidate_cap {
                return Vec::new();
            }
            let mut v = enumerate_self_dual_irreducible_bounded(ctx, m, u64::MAX).unwrap_or_default();
            v.truncate(spec.polys_per_degree.max(if m == 1 { 2 } else { 0 }));
            v
        })
    }

    fn keys(&mut self, ctx: &DualityContext, max_deg: usize) -> Vec<SelfDualPoly> {
        (1..=max_deg).flat_map(|m| self.of_degree(ctx, m).to_vec()).collect()
    }
}

type Emit<'a> = dyn FnMut(&[(SelfDualPoly, u32)]) + 'a;

/// Every datum of the given kind and dual dimension over the key set with
/// all `b ≤ max_b`.
fn data_for(kind: GroupKind, ctx: &DualityContext, dual_dim: usize, keys: &[SelfDualPoly], max_b: u32) -> Vec<CuspidalDatum> {
    let options: Vec<Vec<u32>> = keys
        .iter()
        .map(|p| {
            let case = key_case(p);
            let mut a: Vec<u32> = (0..=max_b).map(|b| a_of_b(kind, case, b)).filter(|&a| a > 0).collect();
            a.dedup();
            if case == KeyCase::Generic {
                a.retain(|&a| a as usize * p.degree() <= dual_dim);
            }
            a
        })
        .collect();
    let gtype = GroupType::new(kind, ctx).expect("kind matches context");
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        left: usize,
        keys: &[SelfDualPoly],
        options: &[Vec<u32>],
        chosen: &mut Vec<(SelfDualPoly, u32)>,
        emit: &mut Emit<'_>,
    ) {
        if left == 0 {
            emit(chosen);
            return;
        }
        if i == keys.len() {
            return;
        }
        rec(i + 1, left, keys, options, chosen, emit);
        for &a in &options[i] {
            let used = a as usize * keys[i].degree();
            if used <= left {
                chosen.push((keys[i].clone(), a));
                rec(i + 1, left - used, keys, options, chosen, emit);
                chosen.pop();
            }
        }
    }
    rec(0, dual_dim, keys, &options, &mut chosen, &mut |c| {
        let a: BTreeMap<_, _> = c.iter().cloned().collect();
        if let Ok(d) = datum_validate(&gtype, dual_dim, a, EigenTypes::default()) {
            out.push(d);
        }
    });
    out
}

/// All subsets of the involution keys, as maps to `NegateVariable`.
fn involution_flags(keys: &BTreeSet<(u8, usize)>) -> Vec<BTreeMap<(u8, usize), Involution>> {
    let keys: Vec<_> = keys.iter().copied().collect();
    (0u32..1 << keys.len())
        .map(|mask| {
            keys.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &k)| (k, Involution::NegateVariable))
                .collect()
        })
        .collect()
}

/// One cell of the corpus: a class, `N`, a kind pair and a split.
struct Cell {
    q: u64,
    endo: EndoClass,
    n: u32,
    kinds: [GroupKind; 2],
    dual_dims: [usize; 2],
}

fn cells(spec: &CorpusSpec) -> Vec<Cell> {
    let mut out = Vec::new();
    for &q in &spec.qs {
        for endo in corpus_classes(spec.max_theta_degree) {
            let t = endo.dual_type.expect("self-dual");
            let n_min = if endo.is_trivial() { 0 } else { 1 };
            for n in n_min..=spec.max_n {
                if (2 * n) % endo.degree != 0 {
                    continue;
                }
                let dim = (2 * n / endo.degree) as usize;
                for kinds in allowed_kinds(t, dim) {
                    for n0 in 0..=dim {
                        let nat = [n0, dim - n0];
                        let dd = [kinds[0].dual_dim_of(nat[0]), kinds[1].dual_dim_of(nat[1])];
                        if let [Some(d0), Some(d1)] = dd {
                            out.push(Cell { q, endo: endo.clone(), n, kinds, dual_dims: [d0, d1] });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The exhaustive simple corpus in canonical order.
pub fn simple_corpus(spec: &CorpusSpec) -> Result<Vec<SimpleCuspidalDescriptor>, JordanError> {
    let cells = cells(spec);
    let mut polys = PolyCache { spec, cache: HashMap::new() };
    let mut per_cell = Vec::with_capacity(cells.len());
    for c in &cells {
        let ctx = context_for(c.q, &c.endo)?;
        let max_deg = c.dual_dims[0].max(c.dual_dims[1]);
        per_cell.push((ctx.clone(), polys.keys(&ctx, max_deg)));
    }
    let blocks: Vec<Vec<SimpleCuspidalDescriptor>> = cells
        .par_iter()
        .zip(per_cell.par_iter())
        .map(|(c, (ctx, keys))| expand_cell(c, ctx, keys, spec.max_b))
        .collect::<Result<_, _>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

fn expand_cell(c: &Cell, ctx: &DualityContext, keys: &[SelfDualPoly], max_b: u32) -> Result<Vec<SimpleCuspidalDescriptor>, JordanError> {
    let d0 = data_for(c.kinds[0], ctx, c.dual_dims[0], keys, max_b);
    let d1 = data_for(c.kinds[1], ctx, c.dual_dims[1], keys, max_b);
    let mut out = Vec::new();
    for a in &d0 {
        for b in &d1 {
            let flags = if c.endo.dual_type == Some(DualType::TrivialClass) {
                vec![BTreeMap::new()]
            } else {
                let degs: BTreeSet<usize> = a.degrees().chain(b.degrees()).collect();
                let keys = (0..2u8).flat_map(|t| degs.iter().map(move |&m| (t, m))).collect();
                involution_flags(&keys)
            };
            for inv in flags {
                out.push(SimpleCuspidalDescriptor::new(
                    c.q,
                    c.endo.clone(),
                    c.n,
                    [a.clone(), b.clone()],
                    inv,
                    None,
                )?);
            }
        }
    }
    Ok(out)
}

/// Deterministic compositions of corpus descriptors over distinct
/// endo-classes sharing `q`. Roughly half include an explicit depth-zero
/// part; the rest rely on the implicit one.
pub fn compositions(
    corpus: &[SimpleCuspidalDescriptor],
    count: usize,
    max_parts: usize,
    seed: u64,
) -> Vec<(u32, Vec<(SimpleCuspidalDescriptor, ChiTwist)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_class: BTreeMap<(u64, String), Vec<&SimpleCuspidalDescriptor>> = BTreeMap::new();
    for d in corpus {
        by_class.entry((d.q(), d.endo().display_label())).or_default().push(d);
    }
    let qs: Vec<u64> = by_class.keys().map(|k| k.0).collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = *qs.choose(&mut rng).expect("non-empty corpus");
        let mut classes: Vec<&(u64, String)> = by_class.keys().filter(|k| k.0 == q).collect();
        classes.shuffle(&mut rng);
        let parts_wanted = rng.gen_range(1..=max_parts.min(classes.len()));
        let mut parts = Vec::new();
        for key in classes.into_iter().take(parts_wanted) {
            let pool = &by_class[key];
            let d = (*pool.choose(&mut rng).expect("non-empty class")).clone();
            if d.is_depth_zero() && rng.gen_bool(0.5) {
                continue;
            }
            let chi = if rng.gen_bool(0.5) { ChiTwist::Quadratic } else { ChiTwist::Trivial };
            parts.push((d, chi));
        }
        if parts.is_empty() {
            continue;
        }
        let n = parts.iter().map(|(d, _)| d.n()).sum();
        out.push((n, parts));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_cover_all_subsets() {
        let keys = BTreeSet::from([(0, 1), (1, 1), (1, 2)]);
        let f = involution_flags(&keys);
        assert_eq!(f.len(), 8);
        assert!(f[0].is_empty());
        assert_eq!(f[7].len(), 3);
    }

    #[test]
    fn small_corpus_is_valid_and_deterministic() {
        let spec = CorpusSpec { qs: vec![3], max_theta_degree: 2, max_n: 2, ..CorpusSpec::default() };
        let a = simple_corpus(&spec).unwrap();
        let b = simple_corpus(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().any(|d| d.is_depth_zero()));
        assert!(a.iter().any(|d| !d.involutions().is_empty()));
        let comps = compositions(&a, 20, 3, 7);
        assert_eq!(comps, compositions(&a, 20, 3, 7));
        assert_eq!(comps.len(), 20);
    }
}
