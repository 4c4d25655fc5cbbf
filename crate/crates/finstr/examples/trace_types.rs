//! Congruence lattices and the tame-congruence primitives: minimal sets,
//! traces, cover types, separating polynomials, and the chain search.
//!
//! Run with `cargo run --example trace_types`.

use finstr::tct::{
    all_congruences, find_type1free_chain, is_simple, minimal_sets, principal_congruence,
    render_lattice, separating_polynomial, traces, type_of_cover, ChainSearch,
};
use finstr::{paper, Congruence};

fn main() {
    let a = paper::example_4_12();
    println!(
        "principal congruence of (0,1): {}",
        principal_congruence(&a, 0, 1).render()
    );
    println!(
        "principal congruence of (1,2): {}",
        principal_congruence(&a, 1, 2).render()
    );

    let lat = all_congruences(&a, 10_000).unwrap();
    println!("\ncongruence lattice with cover types:");
    print!("{}", render_lattice(&a, &lat, true, 1_000_000).unwrap());
    println!("simple: {}", is_simple(&a).unwrap());

    let zero = Congruence::identity(3);
    let alpha = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    let sets = minimal_sets(&a, &zero, &alpha, 1_000_000).unwrap();
    println!("\nminimal sets of the bottom cover: {:?}", sets);
    for u in &sets {
        println!("  traces inside {:?}: {:?}", u, traces(&a, &zero, &alpha, u));
    }
    println!(
        "type of the bottom cover: {}",
        type_of_cover(&a, &zero, &alpha, 1_000_000).unwrap()
    );
    println!(
        "type of the top cover: {}",
        type_of_cover(&a, &alpha, &Congruence::full(3), 1_000_000).unwrap()
    );

    let sep = separating_polynomial(&a, &alpha, 0, 1, 1_000_000).unwrap();
    println!(
        "\nseparating polynomial for (0,1): table {:?}, trace {:?}",
        sep.table.values(),
        sep.trace
    );

    match find_type1free_chain(&a, 1_000_000).unwrap() {
        ChainSearch::Chain { congruences, types } => {
            println!("chain avoiding unary type: {:?} with types {:?}",
                congruences.iter().map(|c| c.render()).collect::<Vec<_>>(), types);
        }
        ChainSearch::Failure { cover } => {
            println!(
                "no chain avoids unary type; witness cover ({}, {})",
                cover.0.render(),
                cover.1.render()
            );
        }
    }
}
