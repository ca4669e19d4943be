use std::sync::OnceLock;

use ijord::corpus::{compositions, simple_corpus, CorpusSpec};
use ijord::endo::{DualType, EndoClass};
use ijord::ffpoly::{negate_variable, poly_dual, DualityContext, MonicPoly};
use ijord::hecke::reducibility_real_parts;
use ijord::jordan::{inertial_contribution, jordan_blocks_from_real_part, SimpleCuspidalDescriptor};
use ijord::params::{nontrivial_quadruple, trivial_quadruple, QuadChar};
use ijord::rational::int;
use ijord::schema::{parse_document, to_json, Document, SimpleSpec};
use proptest::prelude::*;

fn context() -> impl Strategy<Value = DualityContext> {
    prop_oneof![
        Just((3u64, 1u8)),
        Just((5, 1)),
        Just((7, 1)),
        Just((9, 1)),
        Just((9, 2)),
        Just((25, 2)),
    ]
    .prop_map(|(q, i)| DualityContext::over(q, i).unwrap())
}

fn quad() -> impl Strategy<Value = QuadChar> {
    (0usize..4).prop_map(|i| QuadChar::ALL[i])
}

proptest! {
    #[test]
    fn field_axioms(ctx in context(), a in 0u32..25, b in 0u32..25, c in 0u32..25) {
        let f = ctx.field();
        let (a, b, c) = (a % f.size(), b % f.size(), c % f.size());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(ctx.bar(ctx.bar(a)), a);
    }

    #[test]
    fn dual_and_negation_are_involutions(
        ctx in context(),
        tail in prop::collection::vec(0u32..25, 1..5),
    ) {
        let f = ctx.field();
        let mut coeffs: Vec<u32> = tail.iter().map(|c| c % f.size()).collect();
        if coeffs[0] == 0 {
            coeffs[0] = 1;
        }
        coeffs.push(1);
        let q = MonicPoly::new(coeffs).unwrap();
        let d = poly_dual(&q, &ctx).unwrap();
        prop_assert_eq!(d.degree(), q.degree());
        prop_assert_eq!(poly_dual(&d, &ctx).unwrap(), q.clone());
        prop_assert_eq!(negate_variable(&negate_variable(&q, f), f), q);
    }

    #[test]
    fn klein_group(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * a, QuadChar::One);
        prop_assert_eq!(QuadChar::product([a, b, c]), a * b * c);
    }

    #[test]
    fn nontrivial_quadruple_is_valid(m in 0u32..400) {
        if let Some([a1, a2, a3, a4]) = nontrivial_quadruple(m) {
            prop_assert_eq!(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4, 4 * m + 2);
            prop_assert!(a1 >= a2 && a3 >= a4);
            prop_assert!(a1 % 2 == 0 && a2 % 2 == 0 && a3 % 2 == 1 && a4 % 2 == 1);
        }
    }

    #[test]
    fn trivial_quadruple_is_valid(m in 1u32..400) {
        if let Some([a1, a2, a3, a4]) = trivial_quadruple(m) {
            prop_assert_eq!(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4, m);
            prop_assert!(a2 >= a3 && a3 >= a4);
            prop_assert!(a2 % 2 == a3 % 2 && a3 % 2 == a4 % 2 && a1 % 2 != a2 % 2);
        }
    }

    #[test]
    fn real_parts_and_blocks(k0 in 0i64..30, k1 in 0i64..30, t in 1u64..5) {
        // r_t/t integers of one parity or both half-integers keep the
        // real parts half-integral.
        let (r0, r1) = (int(k0 * t as i64), int(k1 * t as i64));
        let (s1, s2) = reducibility_real_parts(r0, r1, t).unwrap();
        prop_assert!(s1 >= s2);
        prop_assert_eq!(s1 + s2, int(k0.max(k1)));
        let total: u64 = [s1, s2]
            .into_iter()
            .flat_map(|s| jordan_blocks_from_real_part(s).unwrap())
            .map(|b| b as u64)
            .sum();
        prop_assert_eq!(inertial_contribution(r0, r1, t).unwrap(), total);
    }

    #[test]
    fn squaring_round_trips(label in "[a-z]{1,4}", k in -3i32..4, e in 1u32..4) {
        let mut c = EndoClass::self_dual(&label, 2 * e, 1, DualType::RamifiedQuadratic);
        c.square_exp = k;
        prop_assert_eq!(c.square().unsquare(), c.clone());
        prop_assert_eq!(c.square().degree, c.degree);
    }
}

fn small_corpus() -> &'static [SimpleCuspidalDescriptor] {
    static CORPUS: OnceLock<Vec<SimpleCuspidalDescriptor>> = OnceLock::new();
    CORPUS.get_or_init(|| simple_corpus(&CorpusSpec { max_n: 3, ..CorpusSpec::default() }).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn descriptor_json_round_trips(pick in any::<prop::sample::Index>()) {
        let corpus = small_corpus();
        let d = pick.get(corpus);
        let doc = Document::SimpleCuspidal(SimpleSpec::from_descriptor(d));
        let text = to_json(&doc);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(to_json(&back), text);
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn compositions_are_seed_deterministic(seed in any::<u64>()) {
        let corpus = small_corpus();
        let a = compositions(corpus, 5, 3, seed);
        let b = compositions(corpus, 5, 3, seed);
        prop_assert_eq!(a, b);
    }
}
