//! Congruence generation, congruence lattices, and tame-congruence
//! primitives: minimal sets, traces, cover types, separating polynomials,
//! and the search for chains avoiding unary-type covers.

use std::collections::BTreeSet;

use crate::clone::{polynomial_clone_upto, PolyClone, PolyOp};
use crate::congruence::{Congruence, UnionFind};
use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::table::{all_tuples, OpTable};

/// Default cap on the number of congruences a lattice computation may hold.
pub const DEFAULT_CONGRUENCE_BUDGET: usize = 10_000;

/// Close a set of seed pairs to the least congruence of the algebraic reduct
/// containing them: union-find plus worklist propagation through all
/// operation tables until fixpoint.
fn congruence_closure(s: &Structure, seeds: &[(usize, usize)]) -> Congruence {
    let n = s.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in seeds {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for table in s.ops() {
            for args in all_tuples(table.arity(), n) {
                let v = table.apply(&args);
                for i in 0..args.len() {
                    for b in 0..n {
                        if b > args[i] && uf.find(b) == uf.find(args[i]) {
                            let mut other = args.clone();
                            other[i] = b;
                            if uf.union(v, table.apply(&other)) {
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return uf.to_congruence();
        }
    }
}

/// The least congruence identifying `a` and `b`.
pub fn principal_congruence(s: &Structure, a: usize, b: usize) -> Congruence {
    if a == b {
        return Congruence::identity(s.size());
    }
    congruence_closure(s, &[(a, b)])
}

/// Join in the congruence lattice.
pub fn congruence_join(s: &Structure, x: &Congruence, y: &Congruence) -> Congruence {
    let mut seeds = x.nontrivial_pairs();
    seeds.extend(y.nontrivial_pairs());
    congruence_closure(s, &seeds)
}

/// All congruences with their cover relation. Congruences are sorted by
/// block count (coarsest last) and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    /// (i, j) with congruences[i] covered by congruences[j]
    pub cover_pairs: Vec<(usize, usize)>,
}

impl CongruenceLattice {
    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    pub fn zero_index(&self) -> usize {
        self.congruences
            .iter()
            .position(|c| c.is_identity())
            .expect("lattice contains 0_A")
    }

    pub fn one_index(&self) -> usize {
        self.congruences
            .iter()
            .position(|c| c.is_full())
            .expect("lattice contains 1_A")
    }

    pub fn covers_of(&self, i: usize) -> Vec<usize> {
        self.cover_pairs
            .iter()
            .filter(|(a, _)| *a == i)
            .map(|(_, b)| *b)
            .collect()
    }

    /// Pairwise meets must already be members; used as a sanity check.
    pub fn verify_meet_closed(&self) -> bool {
        for x in &self.congruences {
            for y in &self.congruences {
                if self.index_of(&x.meet(y)).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// All congruences as the join closure of the principal ones, plus 0_A;
/// covers computed by inclusion.
pub fn all_congruences(s: &Structure, budget: usize) -> Result<CongruenceLattice> {
    let n = s.size();
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(n));
    let mut worklist: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let c = principal_congruence(s, a, b);
            if found.insert(c.clone()) {
                worklist.push(c);
            }
        }
    }
    if found.len() > budget {
        return Err(Error::BudgetExceeded(format!(
            "congruence count exceeded {}",
            budget
        )));
    }
    while let Some(c) = worklist.pop() {
        let snapshot: Vec<Congruence> = found.iter().cloned().collect();
        for d in snapshot {
            let j = congruence_join(s, &c, &d);
            if found.insert(j.clone()) {
                if found.len() > budget {
                    return Err(Error::BudgetExceeded(format!(
                        "congruence count exceeded {}",
                        budget
                    )));
                }
                worklist.push(j);
            }
        }
    }
    let mut congruences: Vec<Congruence> = found.into_iter().collect();
    congruences.sort_by_key(|c| (c.block_count(), c.clone()));
    congruences.reverse(); // finest (most blocks) first: 0_A first, 1_A last
    let mut cover_pairs = Vec::new();
    for i in 0..congruences.len() {
        for j in 0..congruences.len() {
            if i == j || !congruences[i].leq(&congruences[j]) || congruences[i] == congruences[j] {
                continue;
            }
            let intermediate = (0..congruences.len()).any(|k| {
                k != i
                    && k != j
                    && congruences[i].leq(&congruences[k])
                    && congruences[k].leq(&congruences[j])
                    && congruences[k] != congruences[i]
                    && congruences[k] != congruences[j]
            });
            if !intermediate {
                cover_pairs.push((i, j));
            }
        }
    }
    Ok(CongruenceLattice {
        congruences,
        cover_pairs,
    })
}

/// True iff the domain has more than one element and only the trivial
/// congruences exist.
pub fn is_simple(s: &Structure) -> Result<bool> {
    if s.size() <= 1 {
        return Ok(false);
    }
    Ok(all_congruences(s, DEFAULT_CONGRUENCE_BUDGET)?.congruences.len() == 2)
}

/// Whether `p` maps some `beta`-related pair to an `alpha`-unrelated pair.
fn crosses(p: &OpTable, alpha: &Congruence, beta: &Congruence) -> bool {
    beta.nontrivial_pairs()
        .iter()
        .any(|&(x, y)| !alpha.related(p.apply(&[x]), p.apply(&[y])))
}

fn image(p: &OpTable) -> Vec<usize> {
    let mut img: Vec<usize> = (0..p.size()).map(|x| p.apply(&[x])).collect();
    img.sort_unstable();
    img.dedup();
    img
}

/// Inclusion-minimal sets among the images of unary polynomials `p` with
/// `p(beta) ⊄ alpha`.
pub fn minimal_sets(
    s: &Structure,
    alpha: &Congruence,
    beta: &Congruence,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    if !alpha.leq(beta) || alpha == beta {
        return Err(Error::PreconditionViolated(
            "minimal sets require alpha strictly below beta".into(),
        ));
    }
    let pol = polynomial_clone_upto(&s.algebraic_reduct(), 1, budget)?;
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    for p in pol.tables(1) {
        if crosses(p, alpha, beta) {
            images.insert(image(p));
        }
    }
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for u in &images {
        if !images
            .iter()
            .any(|v| v != u && v.iter().all(|x| u.contains(x)))
        {
            minimal.push(u.clone());
        }
    }
    Ok(minimal)
}

/// The `(alpha, beta)`-traces inside a minimal set `u`: sets `a/beta ∩ u`
/// not contained in a single `alpha`-block, deduplicated.
pub fn traces(
    _s: &Structure,
    alpha: &Congruence,
    beta: &Congruence,
    u: &[usize],
) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &a in u {
        let n: Vec<usize> = u
            .iter()
            .copied()
            .filter(|&x| beta.related(a, x))
            .collect();
        let inside_alpha = n.iter().all(|&x| alpha.related(a, x));
        if !inside_alpha {
            out.insert(n);
        }
    }
    out.into_iter().collect()
}

/// Tables of the algebra induced on `trace`, quotiented by `alpha`:
/// polynomials preserving the trace, restricted to it, with `alpha`-blocks
/// collapsed.
///
/// Unary and binary polynomials of the whole algebra are restricted
/// directly; the closure is then completed up to arity 3 on the trace
/// domain itself. This sees everything the type tests can depend on: an
/// induced operation depending on two coordinates yields a binary witness by
/// identifying variables and fixing the rest to trace constants, and the
/// canonical semilattice, lattice, and group operations are generated by
/// their binary members.
fn induced_minimal_algebra(
    s: &Structure,
    alpha: &Congruence,
    trace: &[usize],
    budget: usize,
) -> Result<(usize, Vec<OpTable>)> {
    let pol = polynomial_clone_upto(&s.algebraic_reduct(), 2, budget)?;
    // blocks of alpha within the trace, re-indexed
    let mut block_ids: Vec<usize> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for &x in trace {
        let r = alpha.rep(x);
        let id = match reps.iter().position(|&q| q == r) {
            Some(p) => p,
            None => {
                reps.push(r);
                reps.len() - 1
            }
        };
        block_ids.push(id);
    }
    let q = reps.len();
    let mut generators: BTreeSet<OpTable> = BTreeSet::new();
    for arity in 1..=2usize {
        for p in pol.tables(arity) {
            if !p.preserves(trace) {
                continue;
            }
            let r = p.restrict(trace);
            // collapse alpha-blocks; well-defined because polynomials
            // preserve congruences
            let vals: Vec<usize> = all_tuples(arity, q)
                .into_iter()
                .map(|qargs| {
                    let targs: Vec<usize> = qargs
                        .iter()
                        .map(|&b| block_ids.iter().position(|&c| c == b).unwrap())
                        .collect();
                    block_ids[r.apply(&targs)]
                })
                .collect();
            generators.insert(OpTable::new(arity, q, vals).unwrap());
        }
    }
    // close on the trace domain up to arity 3
    let funcs: Vec<(String, usize)> = generators
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("b{}", i), t.arity()))
        .collect();
    let ops: Vec<Vec<usize>> = generators.iter().map(|t| t.values().to_vec()).collect();
    let synth = Structure::algebra(
        crate::signature::Signature::new(funcs, vec![])?,
        q,
        ops,
    )?;
    let closure = crate::clone::clone_upto(&synth, 3, budget)?;
    let mut tables: BTreeSet<OpTable> = BTreeSet::new();
    for arity in 1..=3usize {
        for t in closure.tables(arity) {
            tables.insert(t.clone());
        }
    }
    Ok((q, tables.into_iter().collect()))
}

fn two_element_type(tables: &[OpTable]) -> Result<usize> {
    if tables.iter().all(|t| t.is_essentially_unary()) {
        return Ok(1);
    }
    let meet = OpTable::new(2, 2, vec![0, 0, 0, 1]).unwrap();
    let join = OpTable::new(2, 2, vec![0, 1, 1, 1]).unwrap();
    let neg = OpTable::new(1, 2, vec![1, 0]).unwrap();
    let minority = OpTable::new(3, 2, vec![0, 1, 1, 0, 1, 0, 0, 1]).unwrap();
    let has = |t: &OpTable| tables.contains(t);
    let (m, j, n, x) = (has(&meet), has(&join), has(&neg), has(&minority));
    if m && j && n {
        Ok(3)
    } else if m && j {
        Ok(4)
    } else if m ^ j {
        Ok(5)
    } else if x {
        Ok(2)
    } else {
        Err(Error::NotFound(
            "two-element type classification fell through".into(),
        ))
    }
}

fn three_element_type(tables: &[OpTable]) -> usize {
    // type 2 iff some ternary table is x - y + z for an abelian group
    // structure on three elements; all such structures are relabelings of
    // cyclic addition
    let perms = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms {
        let inv = {
            let mut v = [0usize; 3];
            for (i, &p) in perm.iter().enumerate() {
                v[p] = i;
            }
            v
        };
        let mut vals = Vec::with_capacity(27);
        for args in all_tuples(3, 3) {
            let (x, y, z) = (perm[args[0]], perm[args[1]], perm[args[2]]);
            vals.push(inv[(x + 3 - y + z) % 3]);
        }
        let maltsev = OpTable::new(3, 3, vals).unwrap();
        if tables.contains(&maltsev) {
            return 2;
        }
    }
    1
}

/// Tame-congruence data for one cover: the minimal sets, every trace with
/// its parent minimal set, and the shared type label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub minimal_sets: Vec<Vec<usize>>,
    /// (parent minimal set, trace)
    pub traces: Vec<(Vec<usize>, Vec<usize>)>,
    pub type_label: usize,
}

/// Compute the full tame-congruence report for a cover. All traces must
/// agree on the label; disagreement means the pair is not a cover.
pub fn trace_report(
    s: &Structure,
    alpha: &Congruence,
    beta: &Congruence,
    budget: usize,
) -> Result<TraceReport> {
    let minimal_sets = minimal_sets(s, alpha, beta, budget)?;
    let mut label: Option<usize> = None;
    let mut all_traces = Vec::new();
    for u in &minimal_sets {
        for trace in traces(s, alpha, beta, u) {
            if trace.len() > 3 {
                return Err(Error::TraceTooLarge { trace });
            }
            let (q, tables) = induced_minimal_algebra(s, alpha, &trace, budget)?;
            let t = match q {
                2 => two_element_type(&tables)?,
                3 => three_element_type(&tables),
                _ => {
                    return Err(Error::TraceTooLarge { trace });
                }
            };
            match label {
                None => label = Some(t),
                Some(prev) if prev != t => {
                    return Err(Error::NotFound(format!(
                        "traces disagree on type: {} vs {}",
                        prev, t
                    )))
                }
                _ => {}
            }
            all_traces.push((u.clone(), trace));
        }
    }
    match label {
        Some(type_label) => Ok(TraceReport {
            minimal_sets,
            traces: all_traces,
            type_label,
        }),
        None => Err(Error::NotFound("cover has no traces".into())),
    }
}

/// The type label (1-5) of a cover `(alpha, beta)`.
pub fn type_of_cover(
    s: &Structure,
    alpha: &Congruence,
    beta: &Congruence,
    budget: usize,
) -> Result<usize> {
    Ok(trace_report(s, alpha, beta, budget)?.type_label)
}

/// A unary polynomial separating a pair inside a block of a minimal
/// congruence, with image a minimal set. Returns the polynomial (as a table
/// and as a term with constants) and the trace `f(a/alpha)`.
pub struct SeparatingPolynomial {
    pub table: OpTable,
    pub poly: PolyOp,
    pub trace: Vec<usize>,
}

pub(crate) fn separating_polynomial_in(
    s: &Structure,
    pol: &PolyClone,
    alpha: &Congruence,
    a: usize,
    b: usize,
    budget: usize,
) -> Result<SeparatingPolynomial> {
    if a == b || !alpha.related(a, b) {
        return Err(Error::NotFound(format!(
            "pair ({}, {}) does not lie inside an alpha-block",
            a, b
        )));
    }
    let minsets = minimal_sets(s, &Congruence::identity(s.size()), alpha, budget)?;
    for (i, p) in pol.tables(1).iter().enumerate() {
        if p.apply(&[a]) == p.apply(&[b]) {
            continue;
        }
        let img = image(p);
        if !minsets.contains(&img) {
            continue;
        }
        let mut trace: Vec<usize> = alpha
            .block(a)
            .iter()
            .map(|&x| p.apply(&[x]))
            .collect();
        trace.sort_unstable();
        trace.dedup();
        return Ok(SeparatingPolynomial {
            table: p.clone(),
            poly: pol.poly_op(1, i),
            trace,
        });
    }
    Err(Error::NotFound(format!(
        "no separating polynomial for ({}, {}); precondition violated or budget too small",
        a, b
    )))
}

/// Search the unary polynomial clone for a polynomial separating `a` and `b`
/// whose image is a `(0, alpha)`-minimal set.
pub fn separating_polynomial(
    s: &Structure,
    alpha: &Congruence,
    a: usize,
    b: usize,
    budget: usize,
) -> Result<SeparatingPolynomial> {
    let pol = polynomial_clone_upto(&s.algebraic_reduct(), 1, budget)?;
    separating_polynomial_in(s, &pol, alpha, a, b, budget)
}

/// Outcome of the maximal-chain search.
#[derive(Debug, Clone)]
pub enum ChainSearch {
    /// A maximal chain 0 = c0 ⋖ ... ⋖ cm = 1 with all cover types ≠ 1,
    /// together with the types.
    Chain {
        congruences: Vec<Congruence>,
        types: Vec<usize>,
    },
    /// No such chain; a witness cover of type 1.
    Failure { cover: (Congruence, Congruence) },
}

/// Depth-first search for a maximal chain of covers all of type ≠ 1.
pub fn find_type1free_chain(s: &Structure, budget: usize) -> Result<ChainSearch> {
    let lattice = all_congruences(s, budget)?;
    if lattice.congruences.len() == 1 {
        return Ok(ChainSearch::Chain {
            congruences: lattice.congruences.clone(),
            types: vec![],
        });
    }
    let zero = lattice.zero_index();
    let one = lattice.one_index();
    let mut type_of: Vec<Option<usize>> = vec![None; lattice.cover_pairs.len()];
    let mut first_type1: Option<(Congruence, Congruence)> = None;

    fn dfs(
        s: &Structure,
        lattice: &CongruenceLattice,
        budget: usize,
        cur: usize,
        one: usize,
        type_of: &mut Vec<Option<usize>>,
        first_type1: &mut Option<(Congruence, Congruence)>,
        chain: &mut Vec<usize>,
        types: &mut Vec<usize>,
    ) -> Result<bool> {
        if cur == one {
            return Ok(true);
        }
        for (ci, &(i, j)) in lattice.cover_pairs.iter().enumerate() {
            if i != cur {
                continue;
            }
            let t = match type_of[ci] {
                Some(t) => t,
                None => {
                    let t = type_of_cover(
                        s,
                        &lattice.congruences[i],
                        &lattice.congruences[j],
                        budget,
                    )?;
                    type_of[ci] = Some(t);
                    t
                }
            };
            if t == 1 {
                if first_type1.is_none() {
                    *first_type1 =
                        Some((lattice.congruences[i].clone(), lattice.congruences[j].clone()));
                }
                continue;
            }
            chain.push(j);
            types.push(t);
            if dfs(
                s, lattice, budget, j, one, type_of, first_type1, chain, types,
            )? {
                return Ok(true);
            }
            chain.pop();
            types.pop();
        }
        Ok(false)
    }

    let mut chain = vec![zero];
    let mut types = Vec::new();
    if dfs(
        s,
        &lattice,
        budget,
        zero,
        one,
        &mut type_of,
        &mut first_type1,
        &mut chain,
        &mut types,
    )? {
        return Ok(ChainSearch::Chain {
            congruences: chain
                .into_iter()
                .map(|i| lattice.congruences[i].clone())
                .collect(),
            types,
        });
    }
    match first_type1 {
        Some(cover) => Ok(ChainSearch::Failure { cover }),
        None => Err(Error::NotFound(
            "no chain and no type-1 witness; lattice disconnected?".into(),
        )),
    }
}

/// Render a lattice as text: one congruence per line as sorted blocks, then
/// cover edges `i < j`, optionally annotated with types.
pub fn render_lattice(s: &Structure, lattice: &CongruenceLattice, with_types: bool, budget: usize) -> Result<String> {
    let mut out = String::new();
    for (i, c) in lattice.congruences.iter().enumerate() {
        out.push_str(&format!("{}: {}\n", i, c.render()));
    }
    for &(i, j) in &lattice.cover_pairs {
        if with_types {
            let t = type_of_cover(s, &lattice.congruences[i], &lattice.congruences[j], budget)?;
            out.push_str(&format!("{} < {} typ={}\n", i, j, t));
        } else {
            out.push_str(&format!("{} < {}\n", i, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::signature::Signature;

    fn alpha_4_12() -> Congruence {
        Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap()
    }

    #[test]
    fn principal_congruence_of_equal_pair_is_identity() {
        let a = paper::example_4_12();
        assert!(principal_congruence(&a, 1, 1).is_identity());
    }

    #[test]
    fn example_4_12_principal_congruences() {
        let a = paper::example_4_12();
        assert_eq!(principal_congruence(&a, 0, 1), alpha_4_12());
        assert!(principal_congruence(&a, 1, 2).is_full());
        assert!(principal_congruence(&a, 0, 2).is_full());
    }

    #[test]
    fn example_4_12_has_exactly_three_congruences() {
        let a = paper::example_4_12();
        let lat = all_congruences(&a, 1000).unwrap();
        assert_eq!(lat.congruences.len(), 3);
        assert!(lat.congruences.contains(&alpha_4_12()));
        assert!(lat.verify_meet_closed());
        assert_eq!(lat.cover_pairs.len(), 2);
    }

    #[test]
    fn prop_5_1_has_single_nontrivial_congruence() {
        let a = paper::prop_5_1();
        let lat = all_congruences(&a, 1000).unwrap();
        assert_eq!(lat.congruences.len(), 3);
        let beta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        assert!(lat.congruences.contains(&beta));
    }

    #[test]
    fn one_element_algebra_has_one_congruence() {
        let a = Structure::algebra(Signature::of(&[("f", 1)], &[]), 1, vec![vec![0]]).unwrap();
        let lat = all_congruences(&a, 10).unwrap();
        assert_eq!(lat.congruences.len(), 1);
        assert!(!is_simple(&a).unwrap());
    }

    #[test]
    fn two_element_algebras_are_simple() {
        let a = paper::sheffer_template();
        assert!(is_simple(&a).unwrap());
    }

    #[test]
    fn z3_is_simple() {
        let mut vals = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                vals.push((x + y) % 3);
            }
        }
        let z3 = Structure::algebra(Signature::of(&[("add", 2)], &[]), 3, vec![vals]).unwrap();
        assert!(is_simple(&z3).unwrap());
        let a = paper::example_4_12();
        assert!(!is_simple(&a).unwrap());
    }

    #[test]
    fn principal_congruences_are_least() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let sig = Signature::of(&[("f", 2)], &[]);
        for _ in 0..10 {
            let a = random_algebra(&sig, 4, &mut rng).unwrap();
            let lat = all_congruences(&a, 10_000).unwrap();
            for x in 0..4 {
                for y in (x + 1)..4 {
                    let cg = principal_congruence(&a, x, y);
                    for c in &lat.congruences {
                        if c.related(x, y) {
                            assert!(cg.leq(c), "Cg({},{}) not below {}", x, y, c.render());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_sets_of_example_4_12_bottom_cover() {
        let a = paper::example_4_12();
        let ms = minimal_sets(&a, &Congruence::identity(3), &alpha_4_12(), 100_000).unwrap();
        assert!(ms.contains(&vec![0, 1]));
    }

    #[test]
    fn minimal_sets_of_two_element_simple_algebra() {
        let a = paper::sheffer_template();
        let ms = minimal_sets(&a, &Congruence::identity(2), &Congruence::full(2), 10_000).unwrap();
        assert_eq!(ms, vec![vec![0, 1]]);
    }

    #[test]
    fn minimal_sets_of_prop_5_1_meet_the_block() {
        let a = paper::prop_5_1();
        let beta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        let ms = minimal_sets(&a, &Congruence::identity(3), &beta, 100_000).unwrap();
        assert_eq!(ms, vec![vec![0, 2]]);
        for u in &ms {
            let overlap = u.iter().filter(|x| [0usize, 2].contains(x)).count();
            assert!(overlap >= 2);
        }
    }

    #[test]
    fn traces_of_example_4_12() {
        let a = paper::example_4_12();
        let t = traces(&a, &Congruence::identity(3), &alpha_4_12(), &[0, 1]);
        assert_eq!(t, vec![vec![0, 1]]);
    }

    #[test]
    fn trace_of_full_beta_on_simple_two_element() {
        let a = paper::sheffer_template();
        let t = traces(&a, &Congruence::identity(2), &Congruence::full(2), &[0, 1]);
        assert_eq!(t, vec![vec![0, 1]]);
    }

    #[test]
    fn example_4_12_bottom_cover_has_boolean_type() {
        // the operation itself induces a join on the trace {0,1}, and the
        // polynomial 2ox restricts to negation there, so the induced
        // algebra carries the full Boolean clone rather than a bare
        // semilattice
        let a = paper::example_4_12();
        let t = type_of_cover(&a, &Congruence::identity(3), &alpha_4_12(), 1_000_000).unwrap();
        assert_eq!(t, 3);
    }

    #[test]
    fn example_4_12_top_cover_has_unary_type() {
        let a = paper::example_4_12();
        let t = type_of_cover(&a, &alpha_4_12(), &Congruence::full(3), 1_000_000).unwrap();
        assert_eq!(t, 1);
    }

    #[test]
    fn negation_algebra_has_unary_type() {
        let a = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]]).unwrap();
        let t = type_of_cover(&a, &Congruence::identity(2), &Congruence::full(2), 10_000).unwrap();
        assert_eq!(t, 1);
    }

    #[test]
    fn xor_algebra_has_affine_type() {
        let a = Structure::algebra(Signature::of(&[("add", 2)], &[]), 2, vec![vec![0, 1, 1, 0]])
            .unwrap();
        let t = type_of_cover(&a, &Congruence::identity(2), &Congruence::full(2), 100_000).unwrap();
        assert_eq!(t, 2);
    }

    #[test]
    fn nor_algebra_has_boolean_type() {
        let a = paper::sheffer_template();
        let t = type_of_cover(&a, &Congruence::identity(2), &Congruence::full(2), 100_000).unwrap();
        assert_eq!(t, 3);
    }

    #[test]
    fn prop_5_1_bottom_cover_type_is_not_unary() {
        let a = paper::prop_5_1();
        let beta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        let t = type_of_cover(&a, &Congruence::identity(3), &beta, 1_000_000).unwrap();
        assert_eq!(t, 5);
    }

    #[test]
    fn separating_polynomial_on_example_4_12() {
        let a = paper::example_4_12();
        let sep = separating_polynomial(&a, &alpha_4_12(), 0, 1, 100_000).unwrap();
        assert_ne!(sep.table.apply(&[0]), sep.table.apply(&[1]));
        assert_eq!(sep.trace.len(), 2);
        // p(x) = x∘0 with table (0,1,1) qualifies and comes first
        assert_eq!(sep.table.values(), &[0, 1, 1]);
        assert_eq!(sep.trace, vec![0, 1]);
    }

    #[test]
    fn separating_polynomial_identity_on_two_element() {
        let a = paper::sheffer_template();
        let sep = separating_polynomial(&a, &Congruence::full(2), 0, 1, 10_000).unwrap();
        assert_eq!(sep.table.values(), &[0, 1]);
    }

    #[test]
    fn chain_search_succeeds_on_xor_and_fails_on_negation() {
        let z2 = Structure::algebra(Signature::of(&[("add", 2)], &[]), 2, vec![vec![0, 1, 1, 0]])
            .unwrap();
        match find_type1free_chain(&z2, 100_000).unwrap() {
            ChainSearch::Chain { congruences, types } => {
                assert_eq!(congruences.len(), 2);
                assert_eq!(types, vec![2]);
            }
            ChainSearch::Failure { .. } => panic!("xor algebra must have a chain"),
        }
        let neg = Structure::algebra(Signature::of(&[("not", 1)], &[]), 2, vec![vec![1, 0]])
            .unwrap();
        match find_type1free_chain(&neg, 100_000).unwrap() {
            ChainSearch::Failure { cover } => {
                assert!(cover.0.is_identity() && cover.1.is_full());
            }
            ChainSearch::Chain { .. } => panic!("negation algebra has only a type-1 cover"),
        }
    }

    #[test]
    fn chain_search_fails_at_the_top_of_example_4_12() {
        let a = paper::example_4_12();
        match find_type1free_chain(&a, 1_000_000).unwrap() {
            ChainSearch::Failure { cover } => {
                assert_eq!(cover.0, alpha_4_12());
                assert!(cover.1.is_full());
            }
            ChainSearch::Chain { .. } => panic!("the top cover of example 4.12 has type 1"),
        }
    }

    #[test]
    fn quotient_types_match_along_the_bottom_cover() {
        // typ(alpha_i, alpha_{i+1}) computed upstairs matches the type
        // computed in the quotient by the first congruence
        for a in [paper::example_4_12(), paper::prop_5_1().algebraic_reduct()] {
            let lat = all_congruences(&a, 1000).unwrap();
            let alpha = lat
                .congruences
                .iter()
                .find(|c| !c.is_identity() && !c.is_full())
                .unwrap()
                .clone();
            let t_up = type_of_cover(&a, &alpha, &Congruence::full(3), 1_000_000).unwrap();
            let (q, _) = a.quotient(&alpha).unwrap();
            let t_down =
                type_of_cover(&q, &Congruence::identity(2), &Congruence::full(2), 1_000_000)
                    .unwrap();
            assert_eq!(t_up, t_down);
        }
    }
}
