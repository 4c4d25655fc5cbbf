//! The `.finstr` text format and the core constructions: graphs, products,
//! substructures, quotients, expansions.
//!
//! Run with `cargo run --example format_tour`.

use finstr::{parse_structure, serialize_structure, Congruence};

fn main() {
    let text = "\
# a three-element structure with one operation and one relation
domain 3
op f 2
0 1 2
0 1 2
2 1 2
rel E 2 6
0 1
0 2
1 0
1 2
2 0
2 1
";
    let s = parse_structure(text).expect("valid input");
    println!("parsed a structure with {} elements", s.size());
    println!("round trip:\n{}", serialize_structure(&s));

    // the graph replaces the operation by its functional relation
    let g = s.graph_of();
    println!(
        "graph has relations {:?} with {} + {} tuples",
        g.signature()
            .rels()
            .iter()
            .map(|(n, k)| format!("{}/{}", n, k))
            .collect::<Vec<_>>(),
        g.rel(0).len(),
        g.rel(1).len()
    );

    // squaring the structure: operations act coordinatewise
    let p = s.product(&s).expect("same signature");
    println!("the square has {} elements", p.size());

    // the substructure induced on {0, 1} (closed under f)
    let (sub, embed) = s.induced_substructure(&[0, 1]).expect("closed");
    println!(
        "substructure on {:?}: f-table {:?}",
        embed,
        sub.op_by_name("f").unwrap().values()
    );

    // quotient by the congruence gluing 0 and 2
    let theta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
    let (q, proj) = s.quotient(&theta).expect("a congruence");
    println!(
        "quotient by {} has {} elements; projection {:?}",
        theta.render(),
        q.size(),
        proj
    );
    println!("quotient relation E = {:?}", q.rel_by_name("E").unwrap());

    // closure of a seed set under the operations
    println!(
        "subuniverse generated by {{1}}: {:?}",
        s.generated_subuniverse(&[1])
    );
}
