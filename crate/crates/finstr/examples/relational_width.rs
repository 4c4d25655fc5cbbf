//! The relational-width laboratory: local consistency systems, the
//! minimality fixpoint, and the two templates whose instances defeat
//! (2,3)-windows despite having bounded width overall.
//!
//! Run with `cargo run --example relational_width`.

use finstr::width::{
    build_not23_instance, build_z_hard_instance, kl_minimality, paper_p_system, verify_system,
    width_harness, HarnessOutcome,
};
use finstr::{count_homs, paper};

fn main() {
    let x = build_not23_instance();
    let a = paper::sheffer_template();
    println!(
        "10-element instance over the stroke: {} homomorphisms",
        count_homs(&x, &a, false).unwrap()
    );

    let p = paper_p_system();
    println!(
        "hand-built (2,3)-system: nontrivial = {}, compatible = {}",
        p.is_nontrivial(),
        verify_system(&x, &a, &p, 2, 3).unwrap().is_none()
    );

    let fixpoint = kl_minimality(&x, &a, 2, 3);
    println!(
        "(2,3)-minimality fixpoint: nontrivial = {}, contains the hand-built system = {}",
        fixpoint.is_nontrivial(),
        p.contained_in(&fixpoint)
    );
    println!("families of the pair {{0, 5}} and the singleton {{0}}:");
    for key in [vec![0usize, 5], vec![0usize]] {
        println!("  K={:?}: {:?}", key, fixpoint.families[&key]);
    }

    // the xor analogue: one twisted entry hides the contradiction from all
    // 3-element windows
    let zx = build_z_hard_instance();
    let z = paper::z_template();
    let zfix = kl_minimality(&zx, &z, 2, 3);
    println!(
        "\n8-element xor instance: {} homomorphisms, (2,3)-fixpoint nontrivial = {}",
        count_homs(&zx, &z, false).unwrap(),
        zfix.is_nontrivial()
    );

    // the harness sweeps known instances, exhaustive small ones, and random
    // samples
    match width_harness(&z, 2, 3, 5, 20, 1).unwrap() {
        HarnessOutcome::Counterexample { instance } => println!(
            "harness found a counterexample with {} elements",
            instance.size()
        ),
        HarnessOutcome::Pass { tested } => println!("harness passed {} instances", tested),
    }
}
