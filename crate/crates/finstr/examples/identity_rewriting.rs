//! Rewriting instances by enforcing identities: quotient by the principal
//! congruence of a violation until all identities hold. The number of
//! homomorphisms into any target satisfying the identities is exactly
//! preserved.
//!
//! Run with `cargo run --example identity_rewriting`.

use rand::SeedableRng;

use finstr::random::random_algebra;
use finstr::rewrite::enforce_identities;
use finstr::term::parse_identities;
use finstr::{count_homs, paper, serialize_structure, Signature, Structure};

fn main() {
    let ids = parse_identities(paper::SEMILATTICE_IDS).unwrap();
    println!("semilattice identities:");
    for id in &ids {
        println!("  {}", id);
    }

    let meet = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        2,
        vec![vec![0, 0, 0, 1]],
    )
    .unwrap();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let x = random_algebra(meet.signature(), 6, &mut rng).unwrap();
    let out = enforce_identities(&x, &ids).unwrap();
    println!(
        "\nrandom 6-element instance collapsed to {} elements in {} steps",
        out.instance.size(),
        out.steps
    );
    println!("quotient map: {:?}", out.map);
    print!("{}", serialize_structure(&out.instance));

    let before = count_homs(&x, &meet, false).unwrap();
    let after = count_homs(&out.instance, &meet, false).unwrap();
    println!(
        "homomorphism counts into the two-element semilattice: {} before, {} after",
        before, after
    );
    assert_eq!(before, after);

    // the same machinery with the Boolean-algebra basis
    let ba_ids = parse_identities(paper::BOOLEAN_ALGEBRA_IDS).unwrap();
    let ba = paper::boolean_algebra_template();
    let y = random_algebra(ba.signature(), 5, &mut rng).unwrap();
    let out = enforce_identities(&y, &ba_ids).unwrap();
    println!(
        "\nrandom instance over the Boolean signature collapsed {} -> {} elements ({} steps); counts {} = {}",
        y.size(),
        out.instance.size(),
        out.steps,
        count_homs(&y, &ba, false).unwrap(),
        count_homs(&out.instance, &ba, false).unwrap()
    );
}
