//! Deriving enumeration certificates and refutations for small algebras.
//!
//! Run with `cargo run --example certificates`.

use rand::SeedableRng;

use finstr::cert::{
    certificate_enumerator, classify_3element, derive_certificate, render_certificate,
    ClassificationVerdict,
};
use finstr::random::random_algebra;
use finstr::{enumerate_homs, paper, Signature, Structure};

fn show(name: &str, a: &Structure, verdict: &ClassificationVerdict) {
    match verdict {
        ClassificationVerdict::InKsurjEff(cert) => {
            println!("{}: polynomially many surjective homomorphisms; certificate:", name);
            print!("{}", render_certificate(cert, &a.algebraic_reduct(), 1));
        }
        ClassificationVerdict::NotInKsurj(w) => {
            println!(
                "{}: refuted; unary-type cover ({}, {}); growth samples from {} instances:",
                name,
                w.cover.0.render(),
                w.cover.1.render(),
                w.probe.family
            );
            for (size, all, surj) in &w.probe.counts {
                println!("  size {}: {} homomorphisms, {} surjective", size, all, surj);
            }
        }
        ClassificationVerdict::Unknown(r) => println!("{}: unknown ({})", name, r),
    }
}

fn main() {
    // the worked 3-element example is certified through a pair of
    // constant-shifted polynomials into its semilattice trace
    let a = paper::example_4_12();
    let verdict = classify_3element(&a, 1_000_000).unwrap();
    show("worked 3-element algebra", &a, &verdict);

    if let ClassificationVerdict::InKsurjEff(cert) = &verdict {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let x = random_algebra(a.signature(), 6, &mut rng).unwrap();
        let fast = certificate_enumerator(&x, &a, cert).unwrap();
        let brute = enumerate_homs(&x, &a, false).unwrap();
        println!(
            "  random 6-element instance: {} homomorphisms (oracle agrees: {})",
            fast.len(),
            fast == brute
        );
    }

    // the negation algebra is refuted through its free algebras
    let neg = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap();
    show(
        "\ntwo-element negation algebra",
        &neg,
        &derive_certificate(&neg, 100_000).unwrap(),
    );

    // a 3-element algebra with a unary-type minimal congruence is refuted
    // through star extensions
    let bad = Structure::algebra(Signature::of(&[("not", 1)], &[]), 3, vec![vec![1, 0, 2]]).unwrap();
    show(
        "\nnegation with a fixed point",
        &bad,
        &classify_3element(&bad, 100_000).unwrap(),
    );

    // the nor algebra is simple with a Boolean trace
    let nor = paper::sheffer_template();
    show(
        "\nnor algebra",
        &nor,
        &derive_certificate(&nor, 100_000).unwrap(),
    );
}
