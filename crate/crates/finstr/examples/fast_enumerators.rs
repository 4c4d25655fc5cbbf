//! The polynomial-time enumerators against the brute-force oracle:
//! principal filters for semilattice targets, logarithmic generating sets
//! for group targets.
//!
//! Run with `cargo run --example fast_enumerators`.

use rand::SeedableRng;

use finstr::cert::{enum_homs_group, enum_homs_semilattice};
use finstr::random::random_algebra;
use finstr::{enumerate_homs, Signature, Structure};

fn main() {
    let meet = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        2,
        vec![vec![0, 0, 0, 1]],
    )
    .unwrap();

    // free semilattice on two generators: a, b, ab
    let free2 = Structure::algebra(
        Signature::of(&[("m", 2)], &[]),
        3,
        vec![vec![0, 2, 2, 2, 1, 2, 2, 2, 2]],
    )
    .unwrap();
    let fast = enum_homs_semilattice(&free2, &meet).unwrap();
    println!(
        "free semilattice on two generators has {} homomorphisms to the two-element one:",
        fast.len()
    );
    for h in &fast {
        println!("  {:?}", h);
    }

    let group_sig = Signature::of(&[("mul", 2), ("inv", 1), ("e", 0)], &[]);
    let z4 = Structure::algebra(
        group_sig.clone(),
        4,
        vec![
            vec![0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2],
            vec![0, 3, 2, 1],
            vec![0],
        ],
    )
    .unwrap();
    let z2 = Structure::algebra(
        group_sig.clone(),
        2,
        vec![vec![0, 1, 1, 0], vec![0, 1], vec![0]],
    )
    .unwrap();
    println!(
        "\ncyclic(4) -> cyclic(2): {:?}",
        enum_homs_group(&z4, &z2).unwrap()
    );

    // random instances agree with the oracle
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..50 {
        let x = random_algebra(meet.signature(), 6, &mut rng).unwrap();
        assert_eq!(
            enum_homs_semilattice(&x, &meet).unwrap(),
            enumerate_homs(&x, &meet, false).unwrap()
        );
        let y = random_algebra(&group_sig, 5, &mut rng).unwrap();
        assert_eq!(
            enum_homs_group(&y, &z4).unwrap(),
            enumerate_homs(&y, &z4, false).unwrap()
        );
        checked += 2;
    }
    println!("\n{} random instances matched the brute-force oracle", checked);
}
