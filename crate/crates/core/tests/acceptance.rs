//! Acceptance harness: one PASS/FAIL line per criterion. Exits nonzero
//! when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ijord::corpus::{simple_corpus, CorpusSpec};
use ijord::ffpoly::enumerate_self_dual_irreducible;
use ijord::jordan::{breakdown_row, SimpleCuspidalDescriptor};
use ijord::params::registry_gen::{base_self_dual_classes, synthetic_registry};
use ijord::rational::{int, rat, Rational};
use ijord::report::InvariantRow;
use ijord::schema::{parse_document, Document};
use ijord::verify;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const SIGNATURE_LIMIT: Duration = Duration::from_secs(30);
const MIN_CORPUS: usize = 500;
const MIN_CLASSES: usize = 50;
const MIN_COMPOSITIONS: u64 = 100;
const JUMP_MAX_E: u32 = 12;
const JUMP_MAX_DIM: u32 = 3;
const SHAPE_MAX_DIM: u64 = 15;
const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rows_pass(rows: &[&InvariantRow]) -> Outcome {
    let pass = rows.iter().all(|r| r.failed == 0 && r.checked > 0);
    let detail = rows
        .iter()
        .map(|r| {
            let first = r.first_failure.as_deref().map(|f| format!(" [{f}]")).unwrap_or_default();
            format!("{}: {} checked, {} failed{first}", r.name, r.checked, r.failed)
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

fn descriptor(endo: &str, n: u32, factors: &str) -> SimpleCuspidalDescriptor {
    let text = format!(
        r#"{{"version":"1","kind":"simple_cuspidal","body":{{"q":3,"endo":{endo},"n":{n},"factors":{factors}}}}}"#
    );
    match parse_document(&text).expect("well-formed") {
        Document::SimpleCuspidal(s) => s.build().expect("valid descriptor"),
        other => panic!("unexpected document {other:?}"),
    }
}

type Pairs = Vec<(Rational, Rational)>;

/// `(r_a, r_b)` and real parts at every degree-one self-dual polynomial.
fn golden_rows(d: &SimpleCuspidalDescriptor) -> Vec<(String, Pairs)> {
    enumerate_self_dual_irreducible(d.ctx(), 1)
        .expect("small field")
        .iter()
        .map(|p| {
            let row = breakdown_row(d, p).expect("row");
            (p.render(), vec![(row.r[0], row.r[1]), row.real_parts])
        })
        .collect()
}

fn criterion_golden() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for f in 1..=2u32 {
        // Unramified: the inertia degree of the class is 2f.
        let endo = format!(
            r#"{{"label":"u","degree":{d},"e":1,"f":{d},"dual_type":"unramified_quadratic","self_dual":true}}"#,
            d = 2 * f
        );
        let d = descriptor(&endo, f, r#"[{"kind":"unitary","a":[{"poly":"X-1","a":1}]},{"kind":"unitary","a":[]}]"#);
        let fr = int(f as i64);
        for (poly, got) in golden_rows(&d) {
            checked += 1;
            let want = if poly == d.data()[0].a_map().keys().next().expect("support").render() {
                vec![(fr * int(3), fr), (int(1), rat(1, 2))]
            } else {
                vec![(fr, fr), (rat(1, 2), int(0))]
            };
            if got != want {
                failures.push(format!("unramified f={f} {poly}: {got:?}"));
            }
        }
        // Ramified: e = 2 and the same residue degree f.
        let endo = format!(
            r#"{{"label":"r","degree":{d},"e":2,"f":{f},"dual_type":"ramified_quadratic","self_dual":true}}"#,
            d = 2 * f
        );
        let d = descriptor(
            &endo,
            f,
            r#"[{"kind":"symplectic","a":[{"poly":"X-1","a":1}]},{"kind":"odd_special_orthogonal","a":[]}]"#,
        );
        for (poly, got) in golden_rows(&d) {
            checked += 1;
            let minus_one = poly == ijord::ffpoly::SelfDualPoly::x_minus_one(d.ctx()).render();
            let want = if minus_one {
                vec![(fr, fr), (int(1), int(0))]
            } else {
                vec![(int(0), fr), (rat(1, 2), rat(1, 2))]
            };
            if got != want {
                failures.push(format!("ramified f={f} {poly}: {got:?}"));
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && checked > 0,
        detail: if failures.is_empty() {
            format!("{checked} rows exact")
        } else {
            failures.join("; ")
        },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(l) = limit {
        if took >= l {
            o.pass = false;
            o.detail.push_str(&format!("; over the {l:?} limit"));
        }
    }
    (o, took)
}

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome, Duration)> = Vec::new();

    let (o, t) = timed(Some(GOLDEN_LIMIT), criterion_golden);
    results.push((1, "golden maximal-beta rows", o, t));

    let start = Instant::now();
    let corpus = simple_corpus(&CorpusSpec::default()).expect("corpus");
    let (o, t) = timed(None, || {
        let row = verify::check_identity(&corpus);
        let mut o = rows_pass(&[&row]);
        let qs: Vec<usize> = [3, 5].iter().map(|&q| corpus.iter().filter(|d| d.q() == q).count()).collect();
        if corpus.len() < MIN_CORPUS {
            o.pass = false;
        }
        o.detail = format!("{} descriptors (q=3: {}, q=5: {}); {}", corpus.len(), qs[0], qs[1], o.detail);
        o
    });
    let total = start.elapsed();
    let o = if total >= CORPUS_LIMIT {
        Outcome { pass: false, detail: format!("{}; over the {CORPUS_LIMIT:?} limit", o.detail) }
    } else {
        o
    };
    results.push((2, "counting identity", o, total.max(t)));

    let (o, t) = timed(None, || rows_pass(&[&verify::check_contribution(&corpus)]));
    results.push((3, "contribution equivalence", o, t));

    let (o, t) = timed(None, || {
        let (a, b) = verify::check_polynomials();
        rows_pass(&[&a, &b])
    });
    results.push((4, "polynomial oracle", o, t));

    let (o, t) = timed(Some(SIGNATURE_LIMIT), || rows_pass(&[&verify::check_signatures()]));
    results.push((5, "signature oracle", o, t));

    let (o, t) = timed(None, || rows_pass(&[&verify::check_jumps(JUMP_MAX_E, JUMP_MAX_DIM)]));
    results.push((6, "jump oracle", o, t));

    let (o, t) = timed(None, || {
        let reg = synthetic_registry(4, 3);
        let classes = reg.orbits.len();
        let (a, b) = verify::check_ramification(&reg, 6);
        let mut o = rows_pass(&[&a, &b]);
        if classes < MIN_CLASSES {
            o.pass = false;
        }
        o.detail = format!(
            "{classes} endo-classes ({} self-dual bases); {}",
            base_self_dual_classes(&reg).len(),
            o.detail
        );
        o
    });
    results.push((7, "ramification algebra", o, t));

    let (o, t) = timed(None, || {
        let sl2 = verify::check_sl2();
        let reg = synthetic_registry(1, SHAPE_MAX_DIM as u32);
        let (a, b, c) = verify::check_shapes(&reg, SHAPE_MAX_DIM, 9);
        rows_pass(&[&sl2, &a, &b, &c])
    });
    results.push((8, "parameter shapes", o, t));

    let (o, t) = timed(None, || {
        let row = verify::check_compositions(&corpus, 200, SEED);
        let mut o = rows_pass(&[&row]);
        if row.checked < MIN_COMPOSITIONS {
            o.pass = false;
        }
        o
    });
    results.push((9, "composition total", o, t));

    let mut all = true;
    for (n, name, o, t) in &results {
        all &= o.pass;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n} {verdict} {name} ({:.3}s): {}", t.as_secs_f64(), o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
