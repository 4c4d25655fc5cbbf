//! Terms, identities, clones at bounded arity, free algebras, and the
//! star-extension growth construction.
//!
//! Run with `cargo run --example clones_and_free_algebras`.

use finstr::clone::{clone_upto, free_algebra, polynomial_clone_upto, star_extension};
use finstr::term::satisfies_identity;
use finstr::{parse_term, paper, Congruence, Identity, Signature, Structure};

fn main() {
    let a = paper::example_4_12();

    // evaluate a term and check an identity
    let t = parse_term("(o (o x0 x1) x2)").unwrap();
    println!("term {} at (0,1,2) evaluates to {}", t, t.eval(&a, &[0, 1, 2]).unwrap());
    let comm = Identity::new(
        parse_term("(o x0 x1)").unwrap(),
        parse_term("(o x1 x0)").unwrap(),
    );
    println!(
        "commutativity counterexample: {:?}",
        satisfies_identity(&a, &comm).unwrap()
    );

    // term clone and polynomial clone at low arity
    let c = clone_upto(&a, 2, 100_000).unwrap();
    println!(
        "term clone: {} unary and {} binary tables",
        c.tables(1).len(),
        c.tables(2).len()
    );
    let p = polynomial_clone_upto(&a, 2, 100_000).unwrap();
    println!(
        "polynomial clone: {} unary and {} binary tables",
        p.tables(1).len(),
        p.tables(2).len()
    );
    for (i, table) in p.tables(1).iter().enumerate().take(6) {
        println!("  unary polynomial {:?} = {}", table.values(), p.poly_op(1, i).term);
    }

    // free algebras over the negation algebra have 2n elements
    let neg = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap();
    for n in 1..=4 {
        let (f, gens) = free_algebra(&neg, n, 100_000).unwrap();
        println!("free algebra on {} generators: {} elements, generators {:?}", n, f.size(), gens);
    }

    // the star extension adjoins one absorbing point to a free part of
    // linear size; every surjective generator assignment extends
    let a3 = Structure::algebra(Signature::of(&[("not", 1)], &[]), 3, vec![vec![1, 0, 2]]).unwrap();
    let alpha = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    for n in [2, 4, 6] {
        let x = star_extension(&a3, &alpha, n, 100_000).unwrap();
        let surj = finstr::count_homs(&x, &a3, true).unwrap();
        println!(
            "star extension at n = {}: {} elements, {} surjective homomorphisms (>= {})",
            n,
            x.size(),
            surj,
            (1usize << n) - 2
        );
    }
}
