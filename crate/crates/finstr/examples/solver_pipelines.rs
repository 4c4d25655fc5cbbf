//! The three end-to-end solvers: the Sheffer pipeline through the Boolean
//! algebra, linear equations for the xor pair, and the three-stage procedure
//! for the mixed 3-element template.
//!
//! Run with `cargo run --example solver_pipelines`.

use rand::SeedableRng;

use finstr::random::{mutated_power, random_structure};
use finstr::solve::{prop5_solve, sheffer_solve, z_solve};
use finstr::{hom_exists, paper};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);

    // the stroke pipeline: rewrite to a Boolean algebra, answer by size
    let nor = paper::sheffer_template();
    let x = mutated_power(&nor, 3, 0, &mut rng).unwrap();
    println!(
        "stroke pipeline on the cube of the template ({} elements): {:?}",
        x.size(),
        sheffer_solve(&x, &nor).unwrap().map(|h| h.len())
    );
    let hard = paper::prop_6_1_instance();
    println!(
        "stroke pipeline on the 10-element hard instance: {:?}",
        sheffer_solve(&hard, &nor).unwrap()
    );

    // xor equations by Gaussian elimination
    let z = paper::z_template();
    let x = mutated_power(&z, 3, 2, &mut rng).unwrap();
    let by_gauss = z_solve(&x).unwrap();
    println!(
        "\nxor solver on a mutated cube ({} elements): {}",
        x.size(),
        match &by_gauss {
            Some(h) => format!("solution {:?}", h),
            None => "inconsistent".into(),
        }
    );
    assert_eq!(by_gauss.is_some(), hom_exists(&x, &z).unwrap());

    // the 3-element mixed template: surjective stage, semilattice stage,
    // then the two-element substructures through their graphs
    let template = paper::prop_5_1();
    for density in [0.2, 0.5] {
        let x = random_structure(template.signature(), 6, density, &mut rng).unwrap();
        let fast = prop5_solve(&x).unwrap();
        let brute = hom_exists(&x, &template).unwrap();
        println!(
            "three-stage solver at edge density {}: {} (oracle agrees: {})",
            density,
            match &fast {
                Some(h) => format!("witness {:?}", h),
                None => "no homomorphism".into(),
            },
            fast.is_some() == brute
        );
    }
}
