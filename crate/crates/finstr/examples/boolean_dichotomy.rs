//! The dichotomy classifier for two-element templates with operations and
//! relations, with a working solver on every tractable verdict.
//!
//! Run with `cargo run --example boolean_dichotomy`.

use rand::SeedableRng;

use finstr::random::random_structure;
use finstr::solve::{classify_boolean, solve_boolean, BooleanVerdict, PReason};
use finstr::table::all_tuples;
use finstr::{hom_exists, paper, Signature, Structure};

fn nae() -> Vec<Vec<usize>> {
    all_tuples(3, 2)
        .into_iter()
        .filter(|t| t.iter().any(|&v| v == 0) && t.iter().any(|&v| v == 1))
        .collect()
}

fn main() {
    let templates: Vec<(&str, Structure)> = vec![
        (
            "stroke with not-all-equal",
            paper::sheffer_template()
                .expand(vec![], vec![("NAE".into(), 3, nae())])
                .unwrap(),
        ),
        (
            "negation with not-all-equal",
            Structure::new(
                Signature::of(&[("not", 1)], &[("NAE", 3)]),
                2,
                vec![vec![1, 0]],
                vec![nae()],
            )
            .unwrap(),
        ),
        (
            "implication alone",
            Structure::new(
                Signature::of(&[], &[("imp", 2)]),
                2,
                vec![],
                vec![vec![vec![0, 0], vec![0, 1], vec![1, 1]]],
            )
            .unwrap(),
        ),
        ("xor pair as relations", paper::z_template().graph_of()),
    ];

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for (name, t) in &templates {
        match classify_boolean(t).unwrap() {
            BooleanVerdict::PolynomialTime(reason) => {
                let why = match reason {
                    PReason::NonUnaryOperation(op) => {
                        format!("operation `{}` is not essentially unary", op)
                    }
                    PReason::SchaeferPolymorphism(op) => {
                        format!("graph admits the {} polymorphism", op.name())
                    }
                };
                println!("{}: tractable ({})", name, why);
                // the solver attached to the verdict agrees with brute force
                let mut agreed = 0;
                for _ in 0..10 {
                    let x = random_structure(t.signature(), 5, 0.3, &mut rng).unwrap();
                    let fast = solve_boolean(&x, t).unwrap().is_some();
                    assert_eq!(fast, hom_exists(&x, t).unwrap());
                    agreed += 1;
                }
                println!("  solver matched brute force on {} random instances", agreed);
            }
            BooleanVerdict::NPComplete { unary_ops } => {
                println!(
                    "{}: NP-complete (all six polymorphisms refuted; operations {:?} essentially unary)",
                    name, unary_ops
                );
            }
        }
    }
}
