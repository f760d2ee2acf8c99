//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use dimcalc_core::harness::{generate_pairs, run_suites, shrink_pair, GeneratorConfig};
use dimcalc_core::invariants::{af_status, infer, krull_dim, valuative_dim};
use dimcalc_core::tensor::{
    applicable_rules, compute_d, evaluate_rule, raw_theorem19, tensor_krull_dim,
    tensor_valuative_dim,
};
use dimcalc_core::{AlgebraExpr, DimValue, RuleId, TriState};

/// Every quantity is an integer; answers must match exactly.
const TOLERANCE: u32 = 0;
/// Random pairs for the property suites, and the bounds they are drawn from.
const SUITE_PAIRS: usize = 1000;
const SUITE_DEPTH: u32 = 3;
const SUITE_TDEG: u32 = 8;
/// Seeds swept by the eligibility-driven criteria.
const SEEDS: std::ops::Range<u64> = 0..8;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn exact(v: DimValue, want: u32, what: &str) -> Result<(), String> {
    let ok = v.is_exact() && v.lo().abs_diff(want) <= TOLERANCE;
    ensure!(ok, "{what}: expected exactly {want}, got {v}");
    Ok(())
}

fn err(e: dimcalc_core::Error) -> String {
    e.to_string()
}

fn short_maximal_ideal() -> Outcome {
    let r = af_pullback_with_short_m();
    ensure!(af_status(&r).map_err(err)? == TriState::Yes, "R should be AF");
    let ev = tensor_krull_dim(&r, &r).map_err(err)?;
    exact(ev.value, 4, "dim(R ⊗ R)")?;
    ensure!(ev.rule() == RuleId::F2Wadsworth, "dim(R ⊗ R) via {}", ev.rule());
    let raw = raw_theorem19(&r, &r).map_err(err)?;
    exact(raw.value, 3, "unchecked pullback-pair formula")?;
    Ok("dim(R ⊗ R) = 4 via F2, unchecked formula gives 3".into())
}

fn mixed_pullback_pair() -> Outcome {
    let (r1, r2) = (residue_gap_pullback(), pvd());
    for (name, r) in [("R1", &r1), ("R2", &r2)] {
        exact(krull_dim(r).map_err(err)?, 1, &format!("dim {name}"))?;
        exact(valuative_dim(r).map_err(err)?, 2, &format!("dim_v {name}"))?;
        ensure!(af_status(r).map_err(err)? == TriState::No, "{name} should not be AF");
    }
    let ev = tensor_krull_dim(&r1, &r2).map_err(err)?;
    exact(ev.value, 4, "dim(R1 ⊗ R2)")?;
    ensure!(ev.rule() == RuleId::F4PullbackPair, "dim(R1 ⊗ R2) via {}", ev.rule());
    let wadsworth = ev
        .trace
        .children
        .iter()
        .find(|t| t.rule_id == RuleId::F2Wadsworth && !t.applied)
        .ok_or("trace lacks the rejected F2 node")?;
    // min(dim R1 + t2, dim R2 + t1) = min(1 + 2, 1 + 3)
    ensure!(
        wadsworth.value == Some(DimValue::exact(3)),
        "F2 raw value {:?}",
        wadsworth.value
    );
    Ok("dim(R1 ⊗ R2) = 4 via F4, F2 raw value 3 in trace".into())
}

fn pullback_tower() -> Outcome {
    let (r1, r2) = (pvd(), pvd_tower());
    exact(krull_dim(&r2).map_err(err)?, 2, "dim R2")?;
    exact(valuative_dim(&r2).map_err(err)?, 4, "dim_v R2")?;
    exact(tensor_krull_dim(&r1, &r1).map_err(err)?.value, 3, "dim(R1 ⊗ R1)")?;
    let ev = tensor_krull_dim(&r1, &r2).map_err(err)?;
    exact(ev.value, 5, "dim(R1 ⊗ R2)")?;
    ensure!(ev.rule() == RuleId::F5Recursive, "dim(R1 ⊗ R2) via {}", ev.rule());
    ensure!(
        ev.trace.notes.iter().any(|n| n.contains("max{2 + 2, 2 + 3} = 5")),
        "trace notes {:?}",
        ev.trace.notes
    );
    Ok("dim(R1 ⊗ R2) = max{2 + 2, 2 + 3} = 5 via F5".into())
}

fn non_af_self_tensor() -> Outcome {
    let r = residue_gap_pullback();
    let dim = tensor_krull_dim(&r, &r).map_err(err)?;
    let vdim = tensor_valuative_dim(&r, &r).map_err(err)?;
    exact(dim.value, 5, "dim(R ⊗ R)")?;
    exact(vdim.value, 5, "dim_v(R ⊗ R)")?;
    ensure!(dim.rule() == RuleId::F6SelfTensor, "dim(R ⊗ R) via {}", dim.rule());
    let notes = &dim.trace.notes;
    let recursive = notes.iter().any(|n| n.starts_with("htM[t] + dim(D ⊗ R) = 2 + 3 = 5"));
    let shortcut = notes.iter().any(|n| n.ends_with("t + dim_v R = 3 + 2 = 5"));
    ensure!(recursive && shortcut, "F6 paths missing from {notes:?}");
    Ok("dim = dim_v = 5, both F6 paths give 5".into())
}

fn sharp_wadsworth_grid() -> Outcome {
    for t1 in 0..=5 {
        for t2 in 0..=5 {
            let (a, b) = (AlgebraExpr::field(t1), AlgebraExpr::field(t2));
            let ev = tensor_krull_dim(&a, &b).map_err(err)?;
            exact(ev.value, t1.min(t2), &format!("field({t1}) ⊗ field({t2})"))?;
            ensure!(
                (t1 == 0 || t2 == 0) || ev.rule() == RuleId::F1Sharp,
                "field pair ({t1}, {t2}) via {}",
                ev.rule()
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (a, ta, da) = af_leaf(&mut rng);
        let (b, tb, db) = af_leaf(&mut rng);
        let want = (da + tb).min(db + ta);
        let f2 = evaluate_rule(RuleId::F2Wadsworth, &a, &b)
            .map_err(err)?
            .or(evaluate_rule(RuleId::F1Sharp, &a, &b).map_err(err)?)
            .ok_or(format!("F1/F2 inapplicable to {a} ⊗ {b}"))?;
        exact(f2.value, want, &format!("F2 on {a} ⊗ {b}"))?;
        let one_af = compute_d(ta, da, &b).map_err(err)?;
        exact(one_af.value, want, &format!("D({ta}, {da}, {b})"))?;
        let swapped = compute_d(tb, db, &a).map_err(err)?;
        exact(swapped.value, want, &format!("D({tb}, {db}, {a})"))?;
    }
    Ok("36 field pairs and 200 AF pairs agree".into())
}

fn af_leaf(rng: &mut ChaCha8Rng) -> (AlgebraExpr, u32, u32) {
    let t = rng.gen_range(0..=6);
    let d = rng.gen_range(0..=t);
    let e = match rng.gen_range(0..3) {
        0 => AlgebraExpr::field(t),
        1 if d >= 1 => local(t, d, rng.gen_range(1..=d), rng.gen()),
        _ => AlgebraExpr::af(t, d),
    };
    let d = if matches!(e, AlgebraExpr::Field { .. }) { 0 } else { d };
    (e, t, d)
}

fn property_suites() -> Outcome {
    let cfg = GeneratorConfig {
        max_depth: SUITE_DEPTH,
        max_tdeg: SUITE_TDEG,
        max_dim: 4,
        seed: 42,
        count: SUITE_PAIRS,
    };
    let report = run_suites(&cfg);
    ensure!(report.ok(), "{}", report.render_text());
    for p in &report.properties {
        ensure!(p.applicable >= 30, "{} exercised only {} times", p.id, p.applicable);
        ensure!(p.failed == 0 || !p.counterexamples.is_empty(), "{} lacks a counterexample", p.id);
    }
    // The shrinker reaches a minimal witness for a planted failure.
    let (a, _) = shrink_pair(pvd_tower(), pvd(), |a, _| a.pullback_depth() >= 2);
    ensure!(a.pullback_depth() == 2 && a.size() <= 5, "shrunk to {a}");
    let counts: Vec<_> = report.properties.iter().map(|p| format!("{} {}", p.id, p.applicable)).collect();
    Ok(format!("{} pairs, 0 failures ({})", report.pairs, counts.join(", ")))
}

fn closed_forms_on_eligible_pairs() -> Outcome {
    let mut checked = (0, 0);
    for seed in SEEDS {
        let report = run_suites(&GeneratorConfig {
            seed,
            ..GeneratorConfig::default()
        });
        for (id, n) in [("P4", &mut checked.0), ("P5", &mut checked.1)] {
            let p = report.property(id).expect("property present");
            ensure!(p.failed == 0, "{}", report.render_text());
            *n += p.applicable;
        }
    }
    ensure!(checked.0 >= 1000 && checked.1 >= 500, "too few eligible pairs: {checked:?}");
    Ok(format!("P4 on {} pairs, P5 on {} pairs", checked.0, checked.1))
}

fn open_problem_guard() -> Outcome {
    let mut guarded = 0;
    let mut candidates = vec![(residue_gap_pullback(), AlgebraExpr::pullback(residue_gap_pullback(), AlgebraExpr::k()))];
    for seed in SEEDS {
        candidates.extend(generate_pairs(&GeneratorConfig {
            seed,
            count: 5000,
            ..GeneratorConfig::default()
        }));
    }
    for (a, b) in &candidates {
        let (Some((t1, _)), Some((t2, _))) = (a.as_pullback(), b.as_pullback()) else {
            continue;
        };
        let af = (infer(t1).map_err(err)?.is_af, infer(t2).map_err(err)?.is_af);
        if (af.0 == TriState::Yes) == (af.1 == TriState::Yes) {
            continue;
        }
        let rules = applicable_rules(a, b).map_err(err)?;
        if rules.iter().any(|(r, _)| *r != RuleId::FbBounds) {
            continue;
        }
        let ev = tensor_krull_dim(a, b).map_err(err)?;
        ensure!(!ev.value.is_exact(), "exact {} for {a} ⊗ {b}", ev.value);
        guarded += 1;
    }
    ensure!(guarded >= 100, "only {guarded} pairs reached the guard");
    Ok(format!("{guarded} one-AF pairs, all intervals"))
}

const CRITERIA: [(&str, fn() -> Outcome); 8] = [
    ("worked example: AF pullback with ht M < dim T", short_maximal_ideal),
    ("worked example: mixed pullback pair", mixed_pullback_pair),
    ("worked example: pullback tower", pullback_tower),
    ("worked example: self-tensor of a non-AF pullback", non_af_self_tensor),
    ("field and AF-leaf grid", sharp_wadsworth_grid),
    ("property suites P1-P7", property_suites),
    ("closed-form dim_v and Jaffard criterion", closed_forms_on_eligible_pairs),
    ("one AF ambient ring gives an interval", open_problem_guard),
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (title, run)) in CRITERIA.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
