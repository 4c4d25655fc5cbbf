//! Exact homomorphism existence, counting, and enumeration by backtracking
//! search. This is the universal oracle the faster enumerators are checked
//! against; it makes no performance claims beyond eager propagation of
//! operation constraints.
//!
//! Search order is fixed: elements of the source in domain order, candidate
//! values in domain order, so enumeration output is lexicographic in the
//! value sequence and deterministic.

use crate::clone::{free_algebra, star_extension};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::table::all_tuples;

/// A candidate map from a source structure into a target, as a dense value
/// sequence.
pub type Homomorphism = Vec<usize>;

/// Why a candidate map fails to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, got: usize },
    Range { element: usize, value: usize },
    Op { symbol: String, args: Vec<usize> },
    Rel { symbol: String, tuple: Vec<usize> },
}

/// Full check of the homomorphism conditions, naming the violated symbol and
/// tuple on failure.
pub fn is_homomorphism(h: &[usize], x: &Structure, a: &Structure) -> std::result::Result<(), Violation> {
    if h.len() != x.size() {
        return Err(Violation::Length {
            expected: x.size(),
            got: h.len(),
        });
    }
    if let Some((e, &v)) = h.iter().enumerate().find(|(_, &v)| v >= a.size()) {
        return Err(Violation::Range { element: e, value: v });
    }
    for (fi, (name, _)) in x.signature().funcs().iter().enumerate() {
        let tx = x.op(fi);
        let ta = a.op_by_name(name).expect("signatures match");
        for args in all_tuples(tx.arity(), x.size()) {
            let mapped: Vec<usize> = args.iter().map(|&e| h[e]).collect();
            if h[tx.apply(&args)] != ta.apply(&mapped) {
                return Err(Violation::Op {
                    symbol: name.clone(),
                    args,
                });
            }
        }
    }
    for (ri, (name, _)) in x.signature().rels().iter().enumerate() {
        let ra = a.rel_by_name(name).expect("signatures match");
        for t in x.rel(ri) {
            let mapped: Vec<usize> = t.iter().map(|&e| h[e]).collect();
            if !ra.contains(&mapped) {
                return Err(Violation::Rel {
                    symbol: name.clone(),
                    tuple: t.clone(),
                });
            }
        }
    }
    Ok(())
}

struct OpConstraint {
    op: usize,
    args: Vec<usize>,
    image: usize,
}

struct RelConstraint {
    rel: usize,
    tuple: Vec<usize>,
}

struct Search<'a> {
    a: &'a Structure,
    ops: Vec<OpConstraint>,
    rels: Vec<RelConstraint>,
    /// per element: indices of op constraints it appears in as an argument
    op_occ: Vec<Vec<usize>>,
    rel_occ: Vec<Vec<usize>>,
    val: Vec<Option<usize>>,
    remaining_args: Vec<usize>,
    rel_unassigned: Vec<usize>,
    trail: Vec<usize>,
    unassigned: usize,
    used: Vec<usize>,
    missing_values: usize,
    surjective: bool,
}

enum Visit {
    Stop,
    Continue,
}

impl<'a> Search<'a> {
    fn new(x: &'a Structure, a: &'a Structure, surjective: bool) -> Result<Self> {
        if x.signature() != a.signature() {
            return Err(Error::SignatureMismatch(
                "source and target must have identical signatures".into(),
            ));
        }
        let n = x.size();
        let mut ops = Vec::new();
        let mut op_occ = vec![Vec::new(); n];
        for (fi, table) in x.ops().iter().enumerate() {
            for args in all_tuples(table.arity(), n) {
                let image = table.apply(&args);
                let ci = ops.len();
                let mut seen = Vec::new();
                for &e in &args {
                    if !seen.contains(&e) {
                        op_occ[e].push(ci);
                        seen.push(e);
                    }
                }
                ops.push(OpConstraint { op: fi, args, image });
            }
        }
        let mut rels = Vec::new();
        let mut rel_occ = vec![Vec::new(); n];
        for (ri, set) in x.rels().iter().enumerate() {
            for t in set {
                let ci = rels.len();
                let mut seen = Vec::new();
                for &e in t {
                    if !seen.contains(&e) {
                        rel_occ[e].push(ci);
                        seen.push(e);
                    }
                }
                rels.push(RelConstraint {
                    rel: ri,
                    tuple: t.clone(),
                });
            }
        }
        let remaining_args = ops.iter().map(|c| c.args.len()).collect();
        let rel_unassigned = rels.iter().map(|c| c.tuple.len()).collect();
        Ok(Search {
            a,
            ops,
            rels,
            op_occ,
            rel_occ,
            val: vec![None; n],
            remaining_args,
            rel_unassigned,
            trail: Vec::new(),
            unassigned: n,
            used: vec![0; a.size()],
            missing_values: a.size(),
            surjective,
        })
    }

    fn target_op(&self, op: usize) -> &crate::table::OpTable {
        self.a.op(op)
    }

    /// Record an assignment, keeping the constraint counters in step with
    /// the trail; constraint indices that became fully assigned are pushed
    /// onto the ready lists.
    fn push_assign(
        &mut self,
        e: usize,
        v: usize,
        ready_ops: &mut Vec<usize>,
        ready_rels: &mut Vec<usize>,
    ) {
        debug_assert!(self.val[e].is_none());
        self.val[e] = Some(v);
        self.trail.push(e);
        self.unassigned -= 1;
        self.used[v] += 1;
        if self.used[v] == 1 {
            self.missing_values -= 1;
        }
        for i in 0..self.op_occ[e].len() {
            let ci = self.op_occ[e][i];
            let occurrences = self.ops[ci].args.iter().filter(|&&a| a == e).count();
            self.remaining_args[ci] -= occurrences;
            if self.remaining_args[ci] == 0 {
                ready_ops.push(ci);
            }
        }
        for i in 0..self.rel_occ[e].len() {
            let ci = self.rel_occ[e][i];
            let occurrences = self.rels[ci].tuple.iter().filter(|&&a| a == e).count();
            self.rel_unassigned[ci] -= occurrences;
            if self.rel_unassigned[ci] == 0 {
                ready_rels.push(ci);
            }
        }
    }

    fn assign(&mut self, e: usize, v: usize) -> bool {
        if let Some(w) = self.val[e] {
            return w == v;
        }
        let mut ready_ops = Vec::new();
        let mut ready_rels = Vec::new();
        self.push_assign(e, v, &mut ready_ops, &mut ready_rels);
        loop {
            if let Some(ci) = ready_rels.pop() {
                let c = &self.rels[ci];
                let mapped: Vec<usize> = c.tuple.iter().map(|&a| self.val[a].unwrap()).collect();
                if !self.a.rel(c.rel).contains(&mapped) {
                    return false;
                }
                continue;
            }
            let Some(ci) = ready_ops.pop() else { break };
            let (image, forced) = {
                let c = &self.ops[ci];
                let mapped: Vec<usize> = c.args.iter().map(|&a| self.val[a].unwrap()).collect();
                (c.image, self.target_op(c.op).apply(&mapped))
            };
            match self.val[image] {
                Some(w) => {
                    if w != forced {
                        return false;
                    }
                }
                None => self.push_assign(image, forced, &mut ready_ops, &mut ready_rels),
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            let v = self.val[e].take().unwrap();
            self.unassigned += 1;
            self.used[v] -= 1;
            if self.used[v] == 0 {
                self.missing_values += 1;
            }
            for i in 0..self.op_occ[e].len() {
                let ci = self.op_occ[e][i];
                let occurrences = self.ops[ci].args.iter().filter(|&&a| a == e).count();
                self.remaining_args[ci] += occurrences;
            }
            for i in 0..self.rel_occ[e].len() {
                let ci = self.rel_occ[e][i];
                let occurrences = self.rels[ci].tuple.iter().filter(|&&a| a == e).count();
                self.rel_unassigned[ci] += occurrences;
            }
        }
    }

    /// Propagate nullary operations before any branching.
    fn root(&mut self) -> bool {
        let forced: Vec<(usize, usize)> = self
            .ops
            .iter()
            .filter(|c| c.args.is_empty())
            .map(|c| (c.image, self.target_op(c.op).apply(&[])))
            .collect();
        for (e, v) in forced {
            if !self.assign(e, v) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Option<usize>]) -> Visit) -> Visit {
        if self.surjective && self.missing_values > self.unassigned {
            return Visit::Continue;
        }
        let next = match self.val.iter().position(|v| v.is_none()) {
            Some(e) => e,
            None => {
                if self.surjective && self.missing_values > 0 {
                    return Visit::Continue;
                }
                return visit(&self.val);
            }
        };
        for v in 0..self.a.size() {
            let mark = self.trail.len();
            if self.assign(next, v) {
                if let Visit::Stop = self.run(visit) {
                    return Visit::Stop;
                }
            }
            self.undo_to(mark);
        }
        Visit::Continue
    }
}

fn search_homs(
    x: &Structure,
    a: &Structure,
    surjective: bool,
    visit: &mut dyn FnMut(Homomorphism) -> Visit,
) -> Result<()> {
    let mut s = Search::new(x, a, surjective)?;
    if !s.root() {
        return Ok(());
    }
    s.run(&mut |vals| {
        let h: Homomorphism = vals.iter().map(|v| v.unwrap()).collect();
        visit(h)
    });
    Ok(())
}

/// All homomorphisms from `x` to `a`, in lexicographic order of the value
/// sequence.
pub fn enumerate_homs(x: &Structure, a: &Structure, surjective: bool) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    search_homs(x, a, surjective, &mut |h| {
        out.push(h);
        Visit::Continue
    })?;
    Ok(out)
}

/// The number of homomorphisms from `x` to `a`.
pub fn count_homs(x: &Structure, a: &Structure, surjective: bool) -> Result<usize> {
    let mut count = 0usize;
    search_homs(x, a, surjective, &mut |_| {
        count += 1;
        Visit::Continue
    })?;
    Ok(count)
}

/// The lexicographically first homomorphism, if any.
pub fn find_hom(x: &Structure, a: &Structure, surjective: bool) -> Result<Option<Homomorphism>> {
    let mut found = None;
    search_homs(x, a, surjective, &mut |h| {
        found = Some(h);
        Visit::Stop
    })?;
    Ok(found)
}

pub fn hom_exists(x: &Structure, a: &Structure) -> Result<bool> {
    Ok(find_hom(x, a, false)?.is_some())
}

/// Sampled growth data for a family of instances against a fixed target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingProbe {
    pub family: String,
    /// instance sizes per n
    pub sizes: Vec<usize>,
    /// (instance size, hom count, surjective hom count) per n
    pub counts: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone)]
pub enum ProbeFamily {
    /// Free algebras F(1), ..., F(nMax).
    FreeAlgebra,
    /// Star extensions over a qualifying congruence of a 3-element algebra.
    StarExtension,
    /// Caller-provided instances.
    Custom(Vec<Structure>),
}

impl ProbeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeFamily::FreeAlgebra => "free-algebra",
            ProbeFamily::StarExtension => "star-extension",
            ProbeFamily::Custom(_) => "custom",
        }
    }
}

/// Find a congruence of a 3-element algebra with block shape 2+1 for which
/// the star extension is constructible.
pub fn star_extension_congruence(a: &Structure, budget: usize) -> Result<Congruence> {
    if a.size() != 3 {
        return Err(Error::WrongSize { expected: 3, got: a.size() });
    }
    for pair in [(0usize, 1usize), (0, 2), (1, 2)] {
        let blocks = vec![
            vec![pair.0, pair.1],
            (0..3).filter(|e| *e != pair.0 && *e != pair.1).collect(),
        ];
        let alpha = Congruence::from_blocks(3, &blocks).unwrap();
        if a.check_congruence(&alpha).is_ok() && star_extension(a, &alpha, 1, budget).is_ok() {
            return Ok(alpha);
        }
    }
    Err(Error::PreconditionViolated(
        "no congruence with star-extension shape".into(),
    ))
}

/// Build family instances for n = 1..=n_max and brute-force count their
/// (surjective) homomorphisms into `a`.
pub fn counting_probe(
    a: &Structure,
    family: ProbeFamily,
    n_max: usize,
    budget: usize,
) -> Result<CountingProbe> {
    let name = family.name().to_string();
    let mut instances = Vec::new();
    match family {
        ProbeFamily::FreeAlgebra => {
            for n in 1..=n_max {
                instances.push(free_algebra(a, n, budget)?.0);
            }
        }
        ProbeFamily::StarExtension => {
            let alpha = star_extension_congruence(a, budget)?;
            for n in 1..=n_max {
                instances.push(star_extension(a, &alpha, n, budget)?);
            }
        }
        ProbeFamily::Custom(list) => {
            instances = list.into_iter().take(n_max).collect();
        }
    }
    let mut sizes = Vec::new();
    let mut counts = Vec::new();
    for x in &instances {
        let all = count_homs(x, a, false)?;
        let surj = count_homs(x, a, true)?;
        sizes.push(x.size());
        counts.push((x.size(), all, surj));
    }
    Ok(CountingProbe {
        family: name,
        sizes,
        counts,
    })
}

/// All subuniverses (subsets closed under the operations), sorted by size
/// then lexicographically; includes the full domain.
pub fn subuniverses(a: &Structure) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&e| mask & (1 << e) != 0).collect();
        let closed = a
            .ops()
            .iter()
            .all(|t| t.preserves(&set));
        if closed {
            out.push(set);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::signature::Signature;

    fn negation_algebra() -> Structure {
        Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap()
    }

    #[test]
    fn identity_map_is_a_homomorphism() {
        let a = paper::example_4_12();
        assert!(count_homs(&a, &a, false).unwrap() >= 1);
        let id: Homomorphism = (0..3).collect();
        assert!(is_homomorphism(&id, &a, &a).is_ok());
    }

    #[test]
    fn prop_6_1_has_no_homomorphism_to_nor() {
        let x = paper::prop_6_1_instance();
        let a = paper::sheffer_template();
        assert_eq!(count_homs(&x, &a, false).unwrap(), 0);
    }

    #[test]
    fn prop_6_1_refuted_assignment_names_the_witness_tuple() {
        // map a2, a3 to 1, everything bar-side accordingly; the check must
        // name the tuple (a2, bar a3) whose image a3 breaks under nor
        let x = paper::prop_6_1_instance();
        let a = paper::sheffer_template();
        // h: 0->0, a_i->1, bar0->1, bar a_i->0
        let h = vec![0, 1, 1, 1, 1, 1, 0, 0, 0, 0];
        let err = is_homomorphism(&h, &x, &a).unwrap_err();
        match err {
            Violation::Op { symbol, args } => {
                assert_eq!(symbol, "nor");
                // first failing tuple in lexicographic scan involving the gadget
                assert!(args.len() == 2);
            }
            other => panic!("unexpected {:?}", other),
        }
        // and specifically (a2, bar a3) = (3, 9) is violated:
        // h(a2 * bar a3) = h(a3) = 1 but nor(h(a2), h(bar a3)) = nor(1, 0) = 0
        let nor = x.op_by_name("nor").unwrap();
        assert_eq!(nor.apply(&[3, 9]), 4);
        let a_nor = a.op_by_name("nor").unwrap();
        assert_ne!(h[4], a_nor.apply(&[h[3], h[9]]));
    }

    #[test]
    fn free_algebra_of_negation_has_exactly_2_pow_n_homs() {
        let a = negation_algebra();
        let (f3, _) = free_algebra(&a, 3, 1000).unwrap();
        let homs = enumerate_homs(&f3, &a, false).unwrap();
        assert_eq!(homs.len(), 8);
        let surj = enumerate_homs(&f3, &a, true).unwrap();
        assert_eq!(surj.len(), 8); // h(¬x) = ¬h(x) forces both values in the image
        for h in &homs {
            assert!(is_homomorphism(h, &f3, &a).is_ok());
        }
    }

    #[test]
    fn enumeration_is_strictly_lexicographic() {
        let a = paper::example_4_12();
        let homs = enumerate_homs(&a, &a, false).unwrap();
        for w in homs.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn product_count_is_multiplicative() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let sig = Signature::of(&[("f", 2)], &[]);
        for _ in 0..10 {
            let x = random_algebra(&sig, 4, &mut rng).unwrap();
            let a1 = random_algebra(&sig, 2, &mut rng).unwrap();
            let a2 = random_algebra(&sig, 3, &mut rng).unwrap();
            let p = a1.product(&a2).unwrap();
            let lhs = count_homs(&x, &p, false).unwrap();
            let rhs = count_homs(&x, &a1, false).unwrap() * count_homs(&x, &a2, false).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hom_count_decomposes_over_subuniverses() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let sig = Signature::of(&[("f", 2)], &[]);
        for _ in 0..10 {
            let x = random_algebra(&sig, 4, &mut rng).unwrap();
            let a = random_algebra(&sig, 3, &mut rng).unwrap();
            let total = count_homs(&x, &a, false).unwrap();
            let mut by_parts = 0usize;
            for set in subuniverses(&a) {
                let (b, _) = a.induced_substructure(&set).unwrap();
                by_parts += count_homs(&x, &b, true).unwrap();
            }
            assert_eq!(total, by_parts);
        }
    }

    #[test]
    fn surjective_counts_drop_under_constant_expansion() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let sig = Signature::of(&[("f", 2)], &[]);
        for _ in 0..5 {
            let a = random_algebra(&sig, 2, &mut rng).unwrap();
            let x = random_algebra(&sig, 4, &mut rng).unwrap();
            let astar = a.constant_expansion();
            // expand x by interpreting the constants at arbitrary elements
            let surj_plain = count_homs(&x, &a, true).unwrap();
            let mut best = 0usize;
            for e0 in 0..x.size() {
                for e1 in 0..x.size() {
                    let xstar = x
                        .expand(
                            vec![
                                ("c0".into(), 0, vec![e0]),
                                ("c1".into(), 0, vec![e1]),
                            ],
                            vec![],
                        )
                        .unwrap();
                    best = best.max(count_homs(&xstar, &astar, true).unwrap());
                }
            }
            assert!(best <= surj_plain);
        }
    }

    #[test]
    fn counting_probe_free_algebra_negation() {
        let a = negation_algebra();
        let probe = counting_probe(&a, ProbeFamily::FreeAlgebra, 4, 10_000).unwrap();
        let surj: Vec<usize> = probe.counts.iter().map(|c| c.2).collect();
        assert_eq!(surj, vec![2, 4, 8, 16]);
        assert_eq!(probe.sizes, vec![2, 4, 6, 8]);
    }

    #[test]
    fn counting_probe_empty_when_n_max_is_zero() {
        let a = negation_algebra();
        let probe = counting_probe(&a, ProbeFamily::FreeAlgebra, 0, 1000).unwrap();
        assert!(probe.counts.is_empty());
    }
}
