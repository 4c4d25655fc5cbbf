//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Criterion 11 is the flagged long run (`--ignored`).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finstr::cert::{
    certificate_enumerator, classify_3element, derive_certificate, ClassificationVerdict,
    enum_homs_group, enum_homs_semilattice, enumerate_surjective_with_certificate,
};
use finstr::congruence::Congruence;
use finstr::hom::{count_homs, counting_probe, enumerate_homs, hom_exists, is_homomorphism,
    ProbeFamily};
use finstr::paper;
use finstr::random::{mutated_power, random_algebra, random_structure};
use finstr::rewrite::enforce_identities;
use finstr::signature::Signature;
use finstr::solve::{
    classify_boolean, prop5_solve, schaefer_check, sheffer_solve, solve_boolean, z_solve,
    BooleanVerdict,
};
use finstr::structure::Structure;
use finstr::table::all_tuples;
use finstr::tct::type_of_cover;
use finstr::term::parse_identities;
use finstr::width::{
    build_not23_instance, kl_minimality, paper_p_system, verify_system,
};

fn pass(criterion: &str, detail: &str) {
    println!("criterion {}: PASS ({})", criterion, detail);
}

#[test]
fn criterion_01_prop_6_1_reproduction() {
    let start = Instant::now();
    let out = finstr::cli::run(&["paper".to_string(), "prop-6-1".to_string()]);
    assert_eq!(out.exit_code, 1, "paper prop-6-1 must report no homomorphism");
    assert!(out.report.contains("homomorphisms: 0"));

    let x = build_not23_instance();
    let a = paper::sheffer_template();
    assert_eq!(x.size(), 10);
    assert_eq!(count_homs(&x, &a, false).unwrap(), 0);
    let p = paper_p_system();
    assert!(p.is_nontrivial());
    assert_eq!(verify_system(&x, &a, &p, 2, 3).unwrap(), None);
    let fixpoint = kl_minimality(&x, &a, 2, 3);
    assert!(fixpoint.is_nontrivial());
    assert!(p.contained_in(&fixpoint));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    pass("1", &format!("10-element instance, 0 homs, explicit system compatible and contained, {:?}", elapsed));
}

#[test]
fn criterion_02_sheffer_pipeline_oracle_sweep() {
    let start = Instant::now();
    let a = paper::sheffer_template();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut yes = 0usize;
    for i in 0..500 {
        let x = if i % 5 == 0 {
            mutated_power(&a, 1 + (i as u32 % 3), i % 6, &mut rng).unwrap()
        } else {
            let size = rng.gen_range(1..=10);
            random_algebra(a.signature(), size, &mut rng).unwrap()
        };
        if x.size() > 10 {
            continue;
        }
        let fast = sheffer_solve(&x, &a).unwrap();
        let brute = hom_exists(&x, &a).unwrap();
        assert_eq!(fast.is_some(), brute, "disagreement on instance {}", i);
        if let Some(h) = &fast {
            assert!(is_homomorphism(h, &x, &a).is_ok());
            yes += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {:?}", elapsed);
    pass("2", &format!("500 instances, 0 disagreements, {} satisfiable, {:?}", yes, elapsed));
}

#[test]
fn criterion_03_z_solver_oracle_sweep() {
    let z = paper::z_template();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let mut yes = 0usize;
    for i in 0..500 {
        let x = if i % 5 == 0 {
            mutated_power(&z, 1 + (i as u32 % 2), i % 6, &mut rng).unwrap()
        } else {
            let size = rng.gen_range(1..=10);
            random_algebra(z.signature(), size, &mut rng).unwrap()
        };
        let fast = z_solve(&x).unwrap();
        let brute = hom_exists(&x, &z).unwrap();
        assert_eq!(fast.is_some(), brute, "disagreement on instance {}", i);
        if let Some(h) = &fast {
            assert!(is_homomorphism(h, &x, &z).is_ok());
            yes += 1;
        }
    }
    pass("3", &format!("500 instances, 0 disagreements, {} satisfiable", yes));
}

#[test]
fn criterion_04_identity_enforcement_preserves_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let meet2 = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        2,
        vec![vec![0, 0, 0, 1]],
    )
    .unwrap();
    // three-element meet chain 0 < 1 < 2
    let meet3 = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        3,
        vec![vec![0, 0, 0, 0, 1, 1, 0, 1, 2]],
    )
    .unwrap();
    let group_sig = Signature::of(&[("mul", 2), ("inv", 1), ("e", 0)], &[]);
    let z2 = Structure::algebra(group_sig.clone(), 2, vec![vec![0, 1, 1, 0], vec![0, 1], vec![0]])
        .unwrap();
    let z3 = Structure::algebra(
        group_sig.clone(),
        3,
        vec![
            vec![0, 1, 2, 1, 2, 0, 2, 0, 1],
            vec![0, 2, 1],
            vec![0],
        ],
    )
    .unwrap();
    let ba = paper::boolean_algebra_template();

    let semilattice_ids = parse_identities(paper::SEMILATTICE_IDS).unwrap();
    let group_ids = parse_identities(paper::GROUP_IDS).unwrap();
    let ba_ids = parse_identities(paper::BOOLEAN_ALGEBRA_IDS).unwrap();

    let mut cases = 0usize;
    for i in 0..200 {
        let (ids, target): (&Vec<finstr::term::Identity>, &Structure) = match i % 5 {
            0 => (&semilattice_ids, &meet2),
            1 => (&semilattice_ids, &meet3),
            2 => (&group_ids, &z2),
            3 => (&group_ids, &z3),
            _ => (&ba_ids, &ba),
        };
        let size = rng.gen_range(1..=7);
        let x = random_algebra(target.signature(), size, &mut rng).unwrap();
        let enforced = enforce_identities(&x, ids).unwrap();
        assert!(enforced.steps < x.size().max(1), "step bound violated");
        let before = count_homs(&x, target, false).unwrap();
        let after = count_homs(&enforced.instance, target, false).unwrap();
        assert_eq!(before, after, "count changed on pair {}", i);
        cases += 1;
    }
    pass("4", &format!("{} (instance, identity-set) pairs, counts preserved exactly", cases));
}

#[test]
fn criterion_05_enumerator_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);

    // semilattice target
    let meet2 = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        2,
        vec![vec![0, 0, 0, 1]],
    )
    .unwrap();
    for _ in 0..200 {
        let size = rng.gen_range(1..=7);
        let x = random_algebra(meet2.signature(), size, &mut rng).unwrap();
        let fast = enum_homs_semilattice(&x, &meet2).unwrap();
        let brute = enumerate_homs(&x, &meet2, false).unwrap();
        assert_eq!(fast, brute);
        assert!(fast.len() <= x.size() + 1);
    }

    // group targets Z2, Z3, Z4
    let group_sig = Signature::of(&[("mul", 2), ("inv", 1), ("e", 0)], &[]);
    let cyclic = |n: usize| {
        let mut mul = Vec::new();
        for x in 0..n {
            for y in 0..n {
                mul.push((x + y) % n);
            }
        }
        let inv = (0..n).map(|x| (n - x) % n).collect();
        Structure::algebra(group_sig.clone(), n, vec![mul, inv, vec![0]]).unwrap()
    };
    for g in [cyclic(2), cyclic(3), cyclic(4)] {
        for _ in 0..200 {
            let size = rng.gen_range(1..=7);
            let x = random_algebra(&group_sig, size, &mut rng).unwrap();
            let fast = enum_homs_group(&x, &g).unwrap();
            let brute = enumerate_homs(&x, &g, false).unwrap();
            assert_eq!(fast, brute);
            let bound = (x.size() as f64)
                .powf((g.size() as f64).log2().ceil())
                .round() as usize;
            assert!(fast.len() <= bound.max(1));
        }
    }

    // certificate target: the 3-element algebra of the worked example
    let a = paper::example_4_12();
    let cert = match classify_3element(&a, 1_000_000).unwrap() {
        ClassificationVerdict::InKsurjEff(c) => c,
        other => panic!("expected a certificate, got {:?}", other),
    };
    for _ in 0..200 {
        let size = rng.gen_range(1..=7);
        let x = random_algebra(a.signature(), size, &mut rng).unwrap();
        let fast = certificate_enumerator(&x, &a, &cert).unwrap();
        let brute = enumerate_homs(&x, &a, false).unwrap();
        assert_eq!(fast, brute);
    }
    pass("5", "semilattice, Z2/Z3/Z4, and certificate enumerators match brute force on 200 instances each");
}

#[test]
fn criterion_06_example_4_12_exactly() {
    let a = paper::example_4_12();
    let lat = finstr::tct::all_congruences(&a, 10_000).unwrap();
    let alpha = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    assert_eq!(lat.congruences.len(), 3);
    assert!(lat.congruences.contains(&Congruence::identity(3)));
    assert!(lat.congruences.contains(&alpha));
    assert!(lat.congruences.contains(&Congruence::full(3)));

    let verdict = classify_3element(&a, 1_000_000).unwrap();
    assert!(verdict.is_in(), "expected membership");
    let cert = match verdict {
        ClassificationVerdict::InKsurjEff(c) => c,
        _ => unreachable!(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    for _ in 0..30 {
        let size = rng.gen_range(1..=6);
        let x = random_algebra(a.signature(), size, &mut rng).unwrap();
        assert_eq!(
            certificate_enumerator(&x, &a, &cert).unwrap(),
            enumerate_homs(&x, &a, false).unwrap()
        );
    }

    // pinned expectation: the bottom cover has type 5. The computed induced
    // algebra on the trace {0,1} also contains negation (the unary
    // polynomial sending x to 2ox restricts to it), so the classification
    // cascade yields the Boolean label 3 instead. This check records the
    // discrepancy rather than weakening the procedure or the expectation.
    let t = type_of_cover(&a, &Congruence::identity(3), &alpha, 1_000_000).unwrap();
    if t == 5 {
        pass("6", "lattice {0, alpha, 1}, typ(0,alpha) = 5, certified, enumerates exactly");
    } else {
        println!(
            "criterion 6: FAIL (typ(0,alpha) computed as {}, pinned expectation 5; \
             all other sub-checks pass: lattice exact, membership certified, enumeration exact)",
            t
        );
        panic!(
            "typ(0,alpha) = {} (the trace carries a Boolean clone: join from the operation, \
             negation from the polynomial 2ox); pinned expectation 5",
            t
        );
    }
}

#[test]
fn criterion_07_prop_5_1_classification_and_solver() {
    let a = paper::prop_5_1();
    let beta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
    let t = type_of_cover(&a, &Congruence::identity(3), &beta, 1_000_000).unwrap();
    assert_ne!(t, 1, "bottom cover must not have unary type");
    let verdict = classify_3element(&a, 1_000_000).unwrap();
    assert!(verdict.is_in());

    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    let mut yes = 0usize;
    for i in 0..300 {
        let size = rng.gen_range(1..=8);
        let density = [0.15, 0.3, 0.5][i % 3];
        let x = random_structure(a.signature(), size, density, &mut rng).unwrap();
        let fast = prop5_solve(&x).unwrap();
        let brute = hom_exists(&x, &a).unwrap();
        assert_eq!(fast.is_some(), brute, "disagreement on instance {}", i);
        if let Some(h) = &fast {
            assert!(is_homomorphism(h, &x, &a).is_ok());
            yes += 1;
        }
    }
    pass("7", &format!("typ(0,beta) = {} != 1, certified; 300 instances, 0 disagreements, {} satisfiable", t, yes));
}

#[test]
fn criterion_08_growth_witnesses() {
    // free algebras over the negation algebra
    let neg = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap();
    let probe = counting_probe(&neg, ProbeFamily::FreeAlgebra, 4, 100_000).unwrap();
    let surj: Vec<usize> = probe.counts.iter().map(|c| c.2).collect();
    assert_eq!(surj, vec![2, 4, 8, 16]);
    let sizes: Vec<usize> = probe.sizes.clone();
    assert_eq!(sizes, vec![2, 4, 6, 8]); // |F(n)| = 2n

    // star extensions over a unary-type 3-element algebra
    let a3 = Structure::algebra(Signature::of(&[("not", 1)], &[]), 3, vec![vec![1, 0, 2]]).unwrap();
    let probe = counting_probe(&a3, ProbeFamily::StarExtension, 6, 100_000).unwrap();
    for (i, (size, _all, surj)) in probe.counts.iter().enumerate() {
        let n = i + 1;
        if n >= 2 {
            assert!(
                *surj >= (1usize << n) - 2,
                "n = {}: surjective count {} below 2^{} - 2",
                n,
                surj,
                n
            );
        }
        assert_eq!(*size, 2 * n + 3); // linear-size instances
    }
    pass("8", "free-algebra counts 2,4,8,16 at sizes 2n; star-extension counts >= 2^n - 2 for n = 2..6");
}

fn catalogue_relations() -> Vec<(&'static str, usize, Vec<Vec<usize>>)> {
    let nae: Vec<Vec<usize>> = all_tuples(3, 2)
        .into_iter()
        .filter(|t| t.iter().any(|&v| v == 0) && t.iter().any(|&v| v == 1))
        .collect();
    let one_in_three = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let implication = vec![vec![0, 0], vec![0, 1], vec![1, 1]];
    vec![
        ("NAE", 3, nae),
        ("oneinthree", 3, one_in_three),
        ("imp", 2, implication),
        ("is0", 1, vec![vec![0]]),
        ("is1", 1, vec![vec![1]]),
    ]
}

#[test]
fn criterion_09_boolean_catalogue() {
    let unary_ops: Vec<Vec<(&str, Vec<usize>)>> = vec![
        vec![],
        vec![("not", vec![1, 0])],
        vec![("c0", vec![0, 0])],
        vec![("c1", vec![1, 1])],
        vec![("not", vec![1, 0]), ("c0", vec![0, 0])],
        vec![("not", vec![1, 0]), ("c1", vec![1, 1])],
        vec![("c0", vec![0, 0]), ("c1", vec![1, 1])],
        vec![("not", vec![1, 0]), ("c0", vec![0, 0]), ("c1", vec![1, 1])],
    ];
    let mut templates: Vec<Structure> = Vec::new();
    for ops in &unary_ops {
        for (rname, arity, tuples) in catalogue_relations() {
            let funcs: Vec<(String, usize)> =
                ops.iter().map(|(n, _)| (n.to_string(), 1)).collect();
            let sig = Signature::new(funcs, vec![(rname.to_string(), arity)]).unwrap();
            let tables: Vec<Vec<usize>> = ops.iter().map(|(_, t)| t.clone()).collect();
            templates.push(Structure::new(sig, 2, tables, vec![tuples]).unwrap());
        }
    }
    // Sheffer and xor expansions
    for (rname, arity, tuples) in catalogue_relations() {
        templates.push(
            paper::sheffer_template()
                .expand(vec![], vec![(rname.to_string(), arity, tuples.clone())])
                .unwrap(),
        );
        templates.push(
            paper::z_template()
                .expand(vec![], vec![(rname.to_string(), arity, tuples)])
                .unwrap(),
        );
    }
    assert!(templates.len() >= 20);

    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    let mut p_count = 0usize;
    let mut np_count = 0usize;
    for (ti, t) in templates.iter().enumerate() {
        match classify_boolean(t).unwrap() {
            BooleanVerdict::PolynomialTime(_) => {
                p_count += 1;
                for i in 0..8 {
                    let size = rng.gen_range(1..=6);
                    let density = [0.2, 0.4][i % 2];
                    let x = random_structure(t.signature(), size, density, &mut rng).unwrap();
                    let fast = solve_boolean(&x, t).unwrap();
                    let brute = hom_exists(&x, t).unwrap();
                    assert_eq!(
                        fast.is_some(),
                        brute,
                        "disagreement on template {} instance {}",
                        ti,
                        i
                    );
                    if let Some(h) = fast {
                        assert!(is_homomorphism(&h, &x, t).is_ok());
                    }
                }
            }
            BooleanVerdict::NPComplete { unary_ops } => {
                np_count += 1;
                assert_eq!(unary_ops.len(), t.signature().funcs().len());
                for ((_, _), table) in t.signature().funcs().iter().zip(t.ops()) {
                    assert!(table.is_essentially_unary());
                }
                assert!(schaefer_check(&t.graph_of()).unwrap().is_empty());
            }
        }
    }
    assert!(p_count > 0 && np_count > 0);
    pass("9", &format!("{} templates: {} tractable with exact solvers, {} NP-complete with full refutations", templates.len(), p_count, np_count));
}

#[test]
fn criterion_10_width_positive_control() {
    // 2-SAT style template: implication, disequality, both singletons; all
    // preserved by majority
    let t = Structure::new(
        Signature::of(&[], &[("imp", 2), ("neq", 2), ("is0", 1), ("is1", 1)]),
        2,
        vec![],
        vec![
            vec![vec![0, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0]],
            vec![vec![1]],
        ],
    )
    .unwrap();
    assert!(schaefer_check(&t)
        .unwrap()
        .contains(&finstr::solve::SchaeferOp::Majority));
    let mut rng = ChaCha8Rng::seed_from_u64(0xCA);
    let mut sat = 0usize;
    for i in 0..200 {
        let size = rng.gen_range(1..=7);
        let density = [0.1, 0.25, 0.4][i % 3];
        let x = random_structure(t.signature(), size, density, &mut rng).unwrap();
        let nontrivial = kl_minimality(&x, &t, 2, 3).is_nontrivial();
        let brute = hom_exists(&x, &t).unwrap();
        assert_eq!(nontrivial, brute, "disagreement on instance {}", i);
        if brute {
            sat += 1;
        }
    }
    pass("10", &format!("200 instances, nontriviality coincides with satisfiability ({} satisfiable)", sat));
}

#[test]
#[ignore = "flagged long run; use cargo test --release -- --ignored"]
fn criterion_11_nine_nine_minimality() {
    let start = Instant::now();
    let x = build_not23_instance();
    let a = paper::sheffer_template();
    // k = 9 windows are wide enough to rule the instance out
    let system = kl_minimality(&x, &a, 9, 9);
    assert!(!system.is_nontrivial(), "(9,9)-minimality must refute the instance");

    // sampled small instances: at (9,9), nontrivial implies satisfiable
    let mut rng = ChaCha8Rng::seed_from_u64(0xCB);
    for _ in 0..10 {
        let size = rng.gen_range(1..=5);
        let y = random_algebra(a.signature(), size, &mut rng).unwrap();
        let nontrivial = kl_minimality(&y, &a, 9, 9).is_nontrivial();
        if nontrivial {
            assert!(hom_exists(&y, &a).unwrap());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "took {:?}", elapsed);
    pass("11", &format!("(9,9) refutes the 10-element instance; sampled nontrivial fixpoints satisfiable, {:?}", elapsed));
}
