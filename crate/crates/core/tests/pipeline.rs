use ijord::corpus::{simple_corpus, CorpusSpec};
use ijord::jordan::{ijord_simple, SimpleCuspidalDescriptor};
use ijord::params::registry_gen::minimal_registry;
use ijord::report::{param_catalog, poly_listing, render_verify, simple_report};
use ijord::verify::{self, mutant_descriptor, VerifySpec};

#[test]
fn depth_zero_totals_are_odd() {
    for q in [3, 5, 7, 9] {
        let d = SimpleCuspidalDescriptor::depth_zero_trivial(q).unwrap();
        let ij = ijord_simple(&d).unwrap();
        assert_eq!(ij.total(), 2 * d.n() as u64 + 1);
        assert!(simple_report(&d).unwrap().all_hold());
    }
}

#[test]
fn poly_listing_counts() {
    assert_eq!(poly_listing(3, 1, 1).unwrap().count, 2);
    for (q, index, m) in [(3, 1, 2), (9, 2, 1), (5, 1, 3)] {
        let l = poly_listing(q, index, m).unwrap();
        assert_eq!(l.count, l.polys.len());
        assert!(l.polys.windows(2).all(|w| w[0].coeffs < w[1].coeffs));
    }
}

#[test]
fn catalog_small_ranks() {
    let reg = minimal_registry();
    assert_eq!(param_catalog(0, &reg).unwrap().shapes.len(), 1);
    let one = param_catalog(1, &reg).unwrap();
    assert!(!one.shapes.is_empty());
    assert!(one.shapes.iter().all(|r| r.packet_size >= r.cuspidal_count.unwrap_or(0)));
}

#[test]
fn verify_is_deterministic_and_catches_the_mutant() {
    let spec = VerifySpec { max_n: 2, ..VerifySpec::default() };
    let a = verify::run(&spec);
    let b = verify::run(&spec);
    assert!(a.passed, "{}", render_verify(&a));
    assert_eq!(render_verify(&a), render_verify(&b));

    let bad = verify::run(&VerifySpec { mutant: true, ..spec });
    assert!(!bad.passed);
    let identity = &bad.rows[0];
    assert_eq!(identity.failed, 1);
}

#[test]
fn mutant_fails_alone() {
    let m = mutant_descriptor(5);
    let row = verify::check_identity(&[m]);
    assert_eq!((row.checked, row.failed), (1, 1));
}

#[test]
fn corpus_is_deterministic() {
    let spec = CorpusSpec { max_n: 2, ..CorpusSpec::default() };
    assert_eq!(simple_corpus(&spec).unwrap(), simple_corpus(&spec).unwrap());
}
