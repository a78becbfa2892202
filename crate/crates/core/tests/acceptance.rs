//! The ten acceptance criteria at full size, one PASS/FAIL line each.

use henselkit::arith::factor_fp::DEFAULT_SEED;
use henselkit::suite::{run_all, Mode, Sizes, SuiteOutcome};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: &'static str,
    /// Wall-clock budget in milliseconds, where one applies.
    budget: Option<u128>,
    min_instances: usize,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "generator invariants on >= 200 settings",
        suite: "generator",
        budget: Some(60_000),
        min_instances: 200,
    },
    Criterion {
        number: 2,
        title: "conductor inclusion, 100 elements x >= 20 fields",
        suite: "conductor",
        budget: Some(30_000),
        min_instances: 20,
    },
    Criterion {
        number: 3,
        title: "localization covers, 20 elements x >= 20 instances",
        suite: "cover",
        budget: None,
        min_instances: 20,
    },
    Criterion {
        number: 4,
        title: "henselian triples, 50 elements x 10 instances",
        suite: "triple",
        budget: None,
        min_instances: 10,
    },
    Criterion {
        number: 5,
        title: "fibers match exhaustive root search (p <= 13, deg <= 4)",
        suite: "fiber oracle",
        budget: None,
        min_instances: 1,
    },
    Criterion {
        number: 6,
        title: "conditions (iv), (v) and (ii) on every spectrum",
        suite: "fg conditions",
        budget: None,
        min_instances: 1,
    },
    Criterion {
        number: 7,
        title: "reciprocal certificates of unit henselian elements",
        suite: "reciprocal",
        budget: None,
        min_instances: 1,
    },
    Criterion {
        number: 8,
        title: "chain decomposition and restriction on every spectrum",
        suite: "chains",
        budget: None,
        min_instances: 1,
    },
    Criterion {
        number: 9,
        title: "rank-2 reassembly on 1000 elements, convex subgroup bounds",
        suite: "decomposition",
        budget: None,
        min_instances: 1000,
    },
    Criterion {
        number: 10,
        title: "uniformization catalogue, deterministic",
        suite: "uniformization",
        budget: Some(5_000),
        min_instances: 3,
    },
];

fn verdict(c: &Criterion, o: &SuiteOutcome) -> Result<(), String> {
    if !o.passed() {
        return Err(format!("{} of {} checks failed: {:?}", o.failure_count, o.checks, o.failures));
    }
    if o.instances < c.min_instances {
        return Err(format!("only {} instances", o.instances));
    }
    match c.budget {
        Some(b) if o.millis > b => Err(format!("took {} ms, budget {} ms", o.millis, b)),
        _ => Ok(()),
    }
}

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(DEFAULT_SEED, &Sizes::default(), Mode::Parallel);
    let mut failed = Vec::new();
    for c in CRITERIA {
        let o = outcomes.iter().find(|o| o.name == c.suite).expect("suite ran");
        let v = verdict(c, o);
        println!(
            "{} criterion {:>2}: {} [{} instances, {} checks, {} ms]{}",
            if v.is_ok() { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            o.instances,
            o.checks,
            o.millis,
            v.as_ref().err().map(|e| format!(" {e}")).unwrap_or_default()
        );
        if v.is_err() {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
