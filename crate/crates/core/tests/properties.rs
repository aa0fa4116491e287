//! Cross-module invariants, exercised on seeded random systems.

use cbd::contextuality::{
    contextuality_degree, decide_noncontextuality, decision_lp, is_consistently_connected, Mode,
};
use cbd::coupling::{coupling_pair_equality, coupling_reproduces_system, DEFAULT_MAX_ASSIGNMENTS};
use cbd::format::{parse_system, serialize_system};
use cbd::lp::{brute_force_solve, simplex_solve};
use cbd::rational::{int, ratio, Rational};
use cbd::scenarios::{sample_random_system, SystemShape};
use cbd::system::{Bunch, Content, ContentId, Context, Label, System};
use num::Zero;
use proptest::prelude::*;

const SHAPES: [SystemShape; 4] = [
    SystemShape::Cyclic4 {
        consistent_marginals: true,
    },
    SystemShape::Cyclic4 {
        consistent_marginals: false,
    },
    SystemShape::Griffiths,
    SystemShape::SingleContent { contexts: 4 },
];

#[test]
fn round_trip_identity_on_sampled_systems() {
    for (i, shape) in SHAPES.iter().enumerate() {
        for seed in 0..25u64 {
            let s = sample_random_system(*shape, 12, seed * 31 + i as u64);
            let text = serialize_system(&s);
            let back = parse_system(&text).expect("canonical text parses");
            assert_eq!(s, back, "shape {shape:?} seed {seed}");
            assert_eq!(
                serialize_system(&back),
                text,
                "canonical form is a fixpoint"
            );
        }
    }
}

#[test]
fn marginals_sum_to_one_exactly() {
    for (i, shape) in SHAPES.iter().enumerate() {
        let s = sample_random_system(*shape, 16, 1000 + i as u64);
        for bunch in s.bunches() {
            for member in bunch.members() {
                let d = s.marginal(bunch.context(), member).unwrap();
                let total: Rational = d.entries().iter().map(|(_, p)| p.clone()).sum();
                assert_eq!(total, int(1));
            }
        }
    }
}

#[test]
fn witnesses_reproduce_bunches_and_attain_targets() {
    for shape in [
        SystemShape::Griffiths,
        SystemShape::SingleContent { contexts: 3 },
        SystemShape::Cyclic4 {
            consistent_marginals: false,
        },
    ] {
        for seed in 0..8u64 {
            let s = sample_random_system(shape, 8, 77 + seed);
            let verdict =
                decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            if let Some(witness) = &verdict.witness {
                assert!(
                    coupling_reproduces_system(&s, witness),
                    "shape {shape:?} seed {seed}"
                );
                for pair in &verdict.pair_targets {
                    let first = Label::new(pair.content.clone(), pair.contexts.0.clone());
                    let second = Label::new(pair.content.clone(), pair.contexts.1.clone());
                    assert_eq!(
                        coupling_pair_equality(witness, &first, &second),
                        pair.value,
                        "shape {shape:?} seed {seed}"
                    );
                }
            }
        }
    }
}

#[test]
fn degree_zero_iff_extended_noncontextual() {
    for (i, shape) in SHAPES.iter().enumerate() {
        let seeds = match shape {
            SystemShape::Cyclic4 { .. } => 4u64,
            _ => 10,
        };
        for seed in 0..seeds {
            let s = sample_random_system(*shape, 6, 500 + seed * 7 + i as u64);
            let verdict =
                decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            let degree = contextuality_degree(&s, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            assert_eq!(verdict.noncontextual, degree.is_zero());
            assert_eq!(verdict.degree, degree);
        }
    }
}

#[test]
fn strict_and_extended_coincide_on_consistent_systems() {
    for seed in 0..8u64 {
        let s = sample_random_system(
            SystemShape::Cyclic4 {
                consistent_marginals: true,
            },
            8,
            9000 + seed,
        );
        assert!(is_consistently_connected(&s).consistent);
        let strict = decide_noncontextuality(&s, Mode::Strict, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        let extended =
            decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        assert_eq!(strict.noncontextual, extended.noncontextual, "seed {seed}");
        for t in &extended.pair_targets {
            assert_eq!(t.value, int(1));
        }
    }
}

/// Relabeling contents, contexts and outcomes consistently must not change
/// any verdict or degree.
#[test]
fn verdicts_are_relabeling_invariant() {
    let relabel = |s: &System| -> System {
        let contents: Vec<Content> = s
            .contents()
            .iter()
            .map(|c| {
                Content::new(
                    format!("content-{}", c.id()),
                    c.outcomes().iter().map(|v| format!("out({v})")),
                )
                .unwrap()
            })
            .collect();
        let contexts: Vec<Context> = s
            .contexts()
            .iter()
            .map(|c| Context::new(format!("ctx-{}", c.id()), None).unwrap())
            .collect();
        let bunches: Vec<Bunch> = s
            .bunches()
            .iter()
            .map(|b| {
                Bunch::new(
                    format!("ctx-{}", b.context()),
                    b.members()
                        .iter()
                        .map(|m| ContentId::new(format!("content-{m}"))),
                    b.pmf().iter().map(|(key, p)| {
                        (key.iter().map(|v| format!("out({v})")).collect(), p.clone())
                    }),
                )
                .unwrap()
            })
            .collect();
        System::new(contents, contexts, bunches).unwrap()
    };

    for shape in [
        SystemShape::Griffiths,
        SystemShape::Cyclic4 {
            consistent_marginals: false,
        },
    ] {
        for seed in 0..5u64 {
            let s = sample_random_system(shape, 6, 40 + seed);
            let t = relabel(&s);
            let vs = decide_noncontextuality(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            let vt = decide_noncontextuality(&t, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            assert_eq!(
                vs.noncontextual, vt.noncontextual,
                "shape {shape:?} seed {seed}"
            );
            assert_eq!(vs.degree, vt.degree, "shape {shape:?} seed {seed}");
        }
    }
}

#[test]
fn simplex_agrees_with_brute_force_on_decision_programs() {
    for seed in 0..10u64 {
        let s = sample_random_system(
            SystemShape::Cyclic4 {
                consistent_marginals: seed % 2 == 0,
            },
            8,
            seed,
        );
        let clp = decision_lp(&s, Mode::Extended, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        let a = simplex_solve(clp.lp()).unwrap().status;
        let b = brute_force_solve(clp.lp()).unwrap().status;
        assert_eq!(a, b, "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Rational literals survive a print/parse round trip.
    #[test]
    fn rational_format_parse_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = ratio(n, d);
        let text = cbd::rational::format_rational(&r);
        prop_assert_eq!(cbd::rational::parse_rational(&text).unwrap(), r);
    }

    /// Shuffling declarations never changes the canonical serialization.
    #[test]
    fn canonical_serialization_ignores_declaration_order(seed in 0u64..2000, shape_idx in 0usize..4) {
        let s = sample_random_system(SHAPES[shape_idx], 8, seed);
        let text = serialize_system(&s);
        // Re-declare in reverse order through the constructor.
        let s2 = System::new(
            s.contents().iter().rev().cloned().collect(),
            s.contexts().iter().rev().cloned().collect(),
            s.bunches().iter().rev().cloned().collect(),
        ).unwrap();
        prop_assert_eq!(serialize_system(&s2), text);
    }

    /// The pairwise maximum-equality is symmetric and 1 on the diagonal.
    #[test]
    fn max_equality_symmetry(p in 0u32..=12, q in 0u32..=12) {
        let s = sample_random_system(SystemShape::SingleContent { contexts: 2 }, 12, 0);
        let _ = s; // shape only; build the two distributions directly
        let d1 = cbd::system::Distribution::new(vec![
            ("+1".to_string(), ratio(p as i64, 12)),
            ("-1".to_string(), int(1) - ratio(p as i64, 12)),
        ]).unwrap();
        let d2 = cbd::system::Distribution::new(vec![
            ("+1".to_string(), ratio(q as i64, 12)),
            ("-1".to_string(), int(1) - ratio(q as i64, 12)),
        ]).unwrap();
        let a = cbd::max_pair_equality(&d1, &d2).unwrap();
        let b = cbd::max_pair_equality(&d2, &d1).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(cbd::max_pair_equality(&d1, &d1).unwrap(), int(1));
        // For binary marginals the maximum is 1 - |p - q|.
        let tv = d1.total_variation(&d2).unwrap();
        prop_assert_eq!(a, int(1) - tv);
    }
}
