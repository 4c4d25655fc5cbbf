//! The backtracking homomorphism engine: existence, counting, enumeration,
//! and growth probes. Everything else in the crate is checked against it.
//!
//! Run with `cargo run --example brute_force_oracle`.

use finstr::hom::{counting_probe, ProbeFamily};
use finstr::{count_homs, enumerate_homs, paper, Signature, Structure};

fn main() {
    let a = paper::example_4_12();
    let homs = enumerate_homs(&a, &a, false).expect("same signature");
    println!("endomorphisms of the worked 3-element algebra:");
    for h in &homs {
        println!("  {:?}", h);
    }

    // the 10-element instance has no homomorphism to the nor template
    let x = paper::prop_6_1_instance();
    let nor = paper::sheffer_template();
    println!(
        "10-element instance -> nor template: {} homomorphisms",
        count_homs(&x, &nor, false).unwrap()
    );

    // free algebras over the negation algebra grow linearly while their
    // surjective homomorphism counts double
    let neg = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap();
    let probe = counting_probe(&neg, ProbeFamily::FreeAlgebra, 5, 100_000).unwrap();
    println!("free algebras over the negation algebra:");
    for (i, (size, all, surj)) in probe.counts.iter().enumerate() {
        println!(
            "  n = {}: {} elements, {} homomorphisms ({} surjective)",
            i + 1,
            size,
            all,
            surj
        );
    }
}
