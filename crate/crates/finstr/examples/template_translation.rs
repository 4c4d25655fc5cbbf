//! Quantifier-free primitive-positive reduction between term-equivalent
//! templates: the Sheffer stroke against the two-element Boolean algebra.
//!
//! Run with `cargo run --example template_translation`.

use rand::SeedableRng;

use finstr::random::random_algebra;
use finstr::rewrite::{compatibility_identities, enforce_identities, parse_tspec, qfpp_reduce,
    validate_spec};
use finstr::{enumerate_homs, paper};

fn main() {
    let a = paper::sheffer_template();
    let b = paper::boolean_algebra_template();
    let spec = parse_tspec(paper::SHEFFER_TSPEC, a.signature(), b.signature()).unwrap();
    let v = validate_spec(&spec, &a, &b).expect("both translation directions check out");

    let ids = compatibility_identities(&v).unwrap();
    println!("compatibility identities to enforce first:");
    for id in &ids {
        println!("  {}", id);
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let x = random_algebra(a.signature(), 6, &mut rng).unwrap();
    let enforced = enforce_identities(&x, &ids).unwrap();
    println!(
        "\nrandom 6-element instance: {} enforcement steps, domain now {}",
        enforced.steps,
        enforced.instance.size()
    );

    let y = qfpp_reduce(&enforced.instance, &v).unwrap();
    println!(
        "translated instance has signature {:?}",
        y.signature()
            .funcs()
            .iter()
            .map(|(n, k)| format!("{}/{}", n, k))
            .collect::<Vec<_>>()
    );

    // the very same maps are homomorphisms on both sides
    let into_nor = enumerate_homs(&enforced.instance, &a, false).unwrap();
    let into_ba = enumerate_homs(&y, &b, false).unwrap();
    println!(
        "homomorphisms into the stroke template: {:?}",
        into_nor
    );
    println!("homomorphisms into the Boolean algebra: {:?}", into_ba);
    assert_eq!(into_nor, into_ba);
}
