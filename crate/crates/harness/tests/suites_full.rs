use std::time::Instant;

use harness::report::CheckReport;
use harness::suites::{render_suite_json, run_suite, Suite, SuiteOptions};

fn by_id<'a>(reports: &'a [CheckReport], id: &str) -> &'a CheckReport {
    reports
        .iter()
        .find(|r| r.check_id == id)
        .unwrap_or_else(|| panic!("missing report {id}"))
}

#[test]
fn umbrella_suite_full_corpus() {
    let opts = SuiteOptions::default();
    let start = Instant::now();
    let reports = run_suite(Suite::All, &opts).unwrap();
    let elapsed = start.elapsed();
    for r in &reports {
        eprintln!(
            "{}: cases {} vacuous {} violations {} worst {:.6e} pass {}",
            r.check_id,
            r.cases,
            r.vacuous,
            r.violations.len(),
            r.worst_ratio,
            r.passes()
        );
    }
    eprintln!("elapsed {elapsed:?}");

    // proved bounds hold with zero violations on the whole corpus
    for id in [
        "identities",
        "pointwise-keys",
        "lorentz-sup-bound",
        "weak-sup-bound",
        "morrey-sup-bound",
        "weak-morrey-sup-bound",
        "local-average-bounds",
        "lorentz-morrey-embedding",
        "lebesgue-sup-embedding",
        "morrey-sup-embedding",
        "product-holder-step",
        "exp-tail-decay",
        "series-vs-moments",
    ] {
        let r = by_id(&reports, id);
        assert!(r.violations.is_empty(), "{id} violated: {:?}", r.violations.first());
        assert!(r.cases > r.vacuous, "{id} entirely vacuous");
    }

    // the restriction-doubling bound genuinely fails on log-shaped grids
    let doubling = by_id(&reports, "cutoff-bmo-doubling");
    assert!(
        !doubling.violations.is_empty(),
        "expected the cutoff oscillation gap to appear on the corpus"
    );

    // estimates stay finite and the normalized growth curves stay flat
    for id in ["lorentz-gap-growth", "lorentz-bmo-growth", "morrey-bmo-growth"] {
        let r = by_id(&reports, id);
        assert!(r.passes(), "{id} failed");
        let slope = r.constant_estimate;
        assert!(slope.is_some(), "{id} produced no estimate");
    }

    assert!(elapsed.as_secs() < 60, "umbrella suite too slow: {elapsed:?}");
}

#[test]
fn umbrella_suite_is_byte_deterministic() {
    let opts = SuiteOptions::default();
    let a = run_suite(Suite::LorentzInterp, &opts).unwrap();
    let b = run_suite(Suite::LorentzInterp, &opts).unwrap();
    let ja = render_suite_json("lorentz-interp", opts.seed, "t", &a);
    let jb = render_suite_json("lorentz-interp", opts.seed, "t", &b);
    assert_eq!(ja, jb);
}

#[test]
fn seed_moves_the_corpus_but_not_the_verdicts() {
    for seed in [43u64, 44] {
        let opts = SuiteOptions {
            seed,
            ..SuiteOptions::default()
        };
        let reports = run_suite(Suite::Embeddings, &opts).unwrap();
        for r in &reports {
            assert!(r.violations.is_empty(), "seed {seed}: {} violated", r.check_id);
        }
    }
}
