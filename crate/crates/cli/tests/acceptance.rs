//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test -p cbd-cli --test acceptance -- --nocapture`).
//! Every expectation is exact; there are no tolerances anywhere.

use cbd::contextuality::{
    contextuality_degree, decide_noncontextuality, decision_lp, degree_lp, feynman_residual,
    is_consistently_connected, max_pair_equality, Mode,
};
use cbd::coupling::{coupling_reproduces_system, DEFAULT_MAX_ASSIGNMENTS};
use cbd::format::{parse_system, serialize_system};
use cbd::lp::{brute_force_solve, simplex_solve, LinearProgram, LpStatus};
use cbd::rational::{int, ratio, Rational};
use cbd::scenarios::{
    make_cyclic4, make_double_slit, sample_random_system, Cyclic4Params, SystemShape,
};
use cbd::system::Distribution;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn acceptance_1_all_random_griffiths_systems_are_noncontextual() {
    let start = Instant::now();
    for seed in 0..100u64 {
        let s = sample_random_system(SystemShape::Griffiths, 16, seed);
        let verdict = decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        assert!(verdict.noncontextual, "seed {seed} came out contextual");
        assert!(verdict.degree == int(0), "seed {seed} has nonzero degree");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion requires < 60 s, took {elapsed:?}"
    );
    println!("acceptance 1 (two-context shared-content claim): pass — 100/100 noncontextual with degree 0 in {elapsed:?}");
}

#[test]
fn acceptance_2_strict_and_extended_verdicts_coincide_when_consistent() {
    for seed in 0..50u64 {
        let s = sample_random_system(
            SystemShape::Cyclic4 {
                consistent_marginals: true,
            },
            8,
            1000 + seed,
        );
        assert!(is_consistently_connected(&s).consistent, "seed {seed}");
        let strict = decision_lp(&s, Mode::Strict, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        let extended = decision_lp(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        for target in extended.pair_constraints() {
            assert_eq!(target.value, int(1), "seed {seed}: pair target not 1");
        }
        let strict_verdict = simplex_solve(strict.lp()).unwrap().status != LpStatus::Infeasible;
        let extended_verdict = simplex_solve(extended.lp()).unwrap().status != LpStatus::Infeasible;
        assert_eq!(strict_verdict, extended_verdict, "seed {seed}");
    }
    println!("acceptance 2 (mode coincidence on consistent systems): pass — 50/50 identical verdicts, all pair targets exactly 1");
}

#[test]
fn acceptance_3_simplex_and_brute_force_verdicts_agree() {
    let mut agree = 0;
    for seed in 0..50u64 {
        let s = sample_random_system(
            SystemShape::Cyclic4 {
                consistent_marginals: seed % 2 == 0,
            },
            8,
            2000 + seed,
        );
        let clp = decision_lp(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        let simplex = simplex_solve(clp.lp()).unwrap().status == LpStatus::Infeasible;
        let brute = brute_force_solve(clp.lp()).unwrap().status == LpStatus::Infeasible;
        assert_eq!(simplex, brute, "seed {seed}: routes disagree");
        agree += 1;
    }
    assert_eq!(agree, 50);
    println!(
        "acceptance 3 (oracle equivalence): pass — 50/50 agreements on mixed cyclic-rank-4 systems"
    );
}

#[test]
fn acceptance_4_pr_box_is_contextual_with_degree_one() {
    let pr = make_cyclic4(&Cyclic4Params::with_zero_marginals([
        int(1),
        int(1),
        int(1),
        int(-1),
    ]))
    .unwrap();
    let verdict = decide_noncontextuality(&pr, Mode::Strict, DEFAULT_MAX_ASSIGNMENTS).unwrap();
    assert!(
        !verdict.noncontextual,
        "three perfect correlations and one anticorrelation glued"
    );

    let simplex_degree = contextuality_degree(&pr, DEFAULT_MAX_ASSIGNMENTS).unwrap();
    let dlp = degree_lp(&pr, DEFAULT_MAX_ASSIGNMENTS).unwrap();
    let brute_degree = -brute_force_solve(dlp.lp())
        .unwrap()
        .objective_value
        .unwrap();
    assert_eq!(
        simplex_degree, brute_degree,
        "optimizers disagree on the degree"
    );
    assert_eq!(brute_degree, int(1));

    // The corpus records the same ground-truth value.
    let expected = std::fs::read_to_string(repo_root().join("corpus/pr_box.expected")).unwrap();
    assert!(expected.contains("degree 1/1"));
    println!("acceptance 4 (PR box): pass — strict-mode contextual, degree exactly 1 by both optimizers, matching the corpus record");
}

#[test]
fn acceptance_5_deterministic_system_has_a_point_mass_witness() {
    let params = Cyclic4Params {
        expectations: std::array::from_fn(|_| int(1)),
        marginals: std::array::from_fn(|_| (int(1), int(1))),
    };
    let s = make_cyclic4(&params).unwrap();
    let verdict = decide_noncontextuality(&s, Mode::Strict, DEFAULT_MAX_ASSIGNMENTS).unwrap();
    assert!(verdict.noncontextual);
    let witness = verdict
        .witness
        .expect("noncontextual verdicts carry a witness");
    assert_eq!(witness.len(), 1, "witness is a point mass");
    let (assignment, mass) = witness.iter().next().unwrap();
    assert_eq!(mass, &int(1));
    assert!(assignment.iter().all(|(_, outcome)| outcome == "+1"));
    assert!(
        coupling_reproduces_system(&s, &witness),
        "witness must reproduce every bunch pmf exactly"
    );
    println!("acceptance 5 (deterministic system): pass — point-mass witness reproduces all bunches exactly");
}

#[test]
fn acceptance_6_single_content_systems_are_always_noncontextual() {
    let mut checked = 0;
    for i in 0..25u64 {
        let contexts = 2 + (i % 3) as usize;
        let s = sample_random_system(SystemShape::SingleContent { contexts }, 16, 3000 + i);
        let verdict = decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        assert!(verdict.noncontextual, "instance {i} ({contexts} contexts)");
        let clp = decision_lp(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        let oracle = brute_force_solve(clp.lp()).unwrap().status;
        assert_ne!(
            oracle,
            LpStatus::Infeasible,
            "instance {i}: oracle disagrees"
        );
        checked += 1;
    }
    assert_eq!(checked, 25);
    println!("acceptance 6 (single-content systems): pass — 25/25 noncontextual for 2..=4 contexts, oracle-confirmed");
}

#[test]
fn acceptance_7_additivity_residual_is_not_a_contextuality_criterion() {
    let residual = feynman_residual(&ratio(1, 4), &ratio(1, 4), &ratio(1, 3));
    assert_eq!(residual, ratio(-1, 6));
    let s = make_double_slit(int(0), ratio(1, 4), ratio(1, 4), ratio(1, 3)).unwrap();
    let verdict = decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
    assert!(verdict.noncontextual);
    assert!(verdict.degree == int(0));
    println!("acceptance 7 (additivity residual): pass — residual exactly -1/6 and the system is still noncontextual");
}

/// The coupling program of one pair of binary distributions: four cell
/// unknowns, two marginal constraints per side, maximize the diagonal.
fn pair_coupling_max(p: &Rational, q: &Rational) -> Rational {
    let mut lp = LinearProgram::new(4);
    lp.add_constraint(&[(0, int(1)), (1, int(1))], p.clone());
    lp.add_constraint(&[(2, int(1)), (3, int(1))], int(1) - p);
    lp.add_constraint(&[(0, int(1)), (2, int(1))], q.clone());
    lp.add_constraint(&[(1, int(1)), (3, int(1))], int(1) - q);
    lp.set_objective(&[(0, int(1)), (3, int(1))]);
    simplex_solve(&lp).unwrap().objective_value.unwrap()
}

#[test]
fn acceptance_8_closed_form_equals_simplex_maximum() {
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for case in 0..100 {
        let d = 2 + (next() % 31) as i64;
        let p = ratio((next() % (d as u64 + 1)) as i64, d);
        let q = ratio((next() % (d as u64 + 1)) as i64, d);
        let d1 = Distribution::new(vec![
            ("+1".to_string(), p.clone()),
            ("-1".to_string(), int(1) - &p),
        ])
        .unwrap();
        let d2 = Distribution::new(vec![
            ("+1".to_string(), q.clone()),
            ("-1".to_string(), int(1) - &q),
        ])
        .unwrap();
        let closed_form = max_pair_equality(&d1, &d2).unwrap();
        let lp_max = pair_coupling_max(&p, &q);
        assert_eq!(closed_form, lp_max, "case {case}: p={p} q={q}");
    }
    println!("acceptance 8 (maximal pair equality): pass — closed form equals the simplex maximum on 100/100 seeded pairs");
}

#[test]
fn acceptance_9_round_trip_identity_and_byte_stable_output() {
    let corpus = repo_root().join("corpus");
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&corpus)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "system"))
        .collect();
    entries.sort();
    assert!(!entries.is_empty());
    for path in &entries {
        let text = std::fs::read_to_string(path).unwrap();
        let system = parse_system(&text).unwrap();
        let canonical = serialize_system(&system);
        let reparsed = parse_system(&canonical).unwrap();
        assert_eq!(system, reparsed, "{}", path.display());
        assert_eq!(
            serialize_system(&reparsed),
            canonical,
            "{}: canonical form must be a fixpoint",
            path.display()
        );
    }

    let bin = env!("CARGO_BIN_EXE_cbd");
    for path in &entries {
        let run = || {
            Command::new(bin)
                .args([
                    "analyze",
                    path.to_str().unwrap(),
                    "--degree",
                    "--witness",
                    "--json",
                ])
                .output()
                .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(
            a.stdout,
            b.stdout,
            "{}: output not byte-stable",
            path.display()
        );
        assert_eq!(a.status.code(), b.status.code());
    }
    println!(
        "acceptance 9 (round trip and determinism): pass — {} corpus files round-trip and analyze byte-identically",
        entries.len()
    );
}
