//! Seeded random instance generation for sweeps and tests.

use rand::Rng;

use crate::error::Result;
use crate::signature::Signature;
use crate::structure::Structure;
use crate::table::table_len;

/// An algebra with uniformly random operation tables.
pub fn random_algebra<R: Rng>(sig: &Signature, size: usize, rng: &mut R) -> Result<Structure> {
    let mut ops = Vec::new();
    for (_, arity) in sig.funcs() {
        let len = table_len(size, *arity)?;
        ops.push((0..len).map(|_| rng.gen_range(0..size)).collect());
    }
    Structure::algebra(Signature::new(sig.funcs().to_vec(), vec![])?, size, ops)
}

/// A structure with random tables and random tuple sets; each possible tuple
/// is included independently with probability `density`.
pub fn random_structure<R: Rng>(
    sig: &Signature,
    size: usize,
    density: f64,
    rng: &mut R,
) -> Result<Structure> {
    let mut ops = Vec::new();
    for (_, arity) in sig.funcs() {
        let len = table_len(size, *arity)?;
        ops.push((0..len).map(|_| rng.gen_range(0..size)).collect::<Vec<_>>());
    }
    let mut rels = Vec::new();
    for (_, arity) in sig.rels() {
        let mut set = Vec::new();
        for t in crate::table::all_tuples(*arity, size) {
            if rng.gen_bool(density) {
                set.push(t);
            }
        }
        rels.push(set);
    }
    Structure::new(sig.clone(), size, ops, rels)
}

/// An instance biased towards satisfiability: a power of the template with a
/// few random entries rewritten. `mutations = 0` gives a plain power, which
/// always maps homomorphically onto the template by projection.
pub fn mutated_power<R: Rng>(
    template: &Structure,
    exponent: u32,
    mutations: usize,
    rng: &mut R,
) -> Result<Structure> {
    let mut p = template.clone();
    for _ in 1..exponent {
        p = p.product(template)?;
    }
    if mutations == 0 {
        return Ok(p);
    }
    let size = p.size();
    let mut ops: Vec<Vec<usize>> = p.ops().iter().map(|t| t.values().to_vec()).collect();
    for _ in 0..mutations {
        if ops.is_empty() {
            break;
        }
        let oi = rng.gen_range(0..ops.len());
        let len = ops[oi].len();
        ops[oi][rng.gen_range(0..len)] = rng.gen_range(0..size);
    }
    let rels: Vec<Vec<Vec<usize>>> = p
        .rels()
        .iter()
        .map(|s| s.iter().cloned().collect())
        .collect();
    Structure::new(p.signature().clone(), size, ops, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_algebra_is_well_formed_and_seed_stable() {
        let sig = Signature::of(&[("f", 2), ("g", 1)], &[]);
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let a = random_algebra(&sig, 5, &mut r1).unwrap();
        let b = random_algebra(&sig, 5, &mut r2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn plain_power_admits_projection_hom() {
        use crate::hom::hom_exists;
        let t = crate::paper::sheffer_template();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let p = mutated_power(&t, 3, 0, &mut rng).unwrap();
        assert!(hom_exists(&p, &t).unwrap());
    }
}
