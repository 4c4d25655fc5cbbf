//! Clones of term and polynomial operations at bounded arity, free algebras,
//! and the star-extension construction used as a growth witness.
//!
//! Closure strategy: breadth-first over "apply one basic symbol to
//! previously found tables", deduplicating by full table comparison. Every
//! discovered table remembers how it was built, so it can be reconstructed
//! as a term (or as a term with constant parameters when the closure ran
//! over a constant expansion).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::table::{all_tuples, OpTable};
use crate::term::Term;

/// Default cap on the number of distinct tables a closure may discover.
pub const DEFAULT_TABLE_BUDGET: usize = 1_000_000;

/// Default arity cap for clone computations.
pub const DEFAULT_MAX_ARITY: usize = 3;

#[derive(Debug, Clone)]
enum Provenance {
    /// The i-th projection.
    Projection(usize),
    /// Application of basic operation `func` to previously found tables of
    /// the same arity.
    Apply { func: usize, args: Vec<usize> },
}

/// Tables of a clone, per arity, in deterministic discovery order.
#[derive(Debug, Clone)]
pub struct CloneTables {
    size: usize,
    func_names: Vec<String>,
    per_arity: Vec<Vec<OpTable>>,
    provenance: Vec<Vec<Provenance>>,
}

impl CloneTables {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn max_arity(&self) -> usize {
        self.per_arity.len().saturating_sub(1)
    }

    /// Tables of one arity, in discovery order (projections first).
    pub fn tables(&self, arity: usize) -> &[OpTable] {
        &self.per_arity[arity]
    }

    pub fn total(&self) -> usize {
        self.per_arity.iter().map(|v| v.len()).sum()
    }

    pub fn contains(&self, t: &OpTable) -> bool {
        t.arity() <= self.max_arity() && self.per_arity[t.arity()].contains(t)
    }

    /// Reconstruct the term that produced a table. Variables refer to the
    /// table's arguments.
    pub fn term(&self, arity: usize, idx: usize) -> Term {
        match &self.provenance[arity][idx] {
            Provenance::Projection(i) => Term::Var(*i),
            Provenance::Apply { func, args } => Term::App(
                self.func_names[*func].clone(),
                args.iter().map(|&a| self.term(arity, a)).collect(),
            ),
        }
    }
}

/// Fixpoint closure of projections under composition with the basic
/// operations of `s`, restricted to arities `0..=max_arity` and deduplicated
/// by table equality. Exceeding `budget` distinct tables is an error.
pub fn clone_upto(s: &Structure, max_arity: usize, budget: usize) -> Result<CloneTables> {
    let n = s.size();
    let func_names: Vec<String> = s.signature().funcs().iter().map(|(f, _)| f.clone()).collect();
    let mut per_arity = Vec::new();
    let mut provenance = Vec::new();
    let mut total = 0usize;

    for arity in 0..=max_arity {
        let mut tables: Vec<OpTable> = Vec::new();
        let mut prov: Vec<Provenance> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();

        let push = |t: OpTable,
                        p: Provenance,
                        tables: &mut Vec<OpTable>,
                        prov: &mut Vec<Provenance>,
                        seen: &mut HashMap<Vec<usize>, usize>,
                        total: &mut usize|
         -> Result<bool> {
            if seen.contains_key(t.values()) {
                return Ok(false);
            }
            *total += 1;
            if *total > budget {
                return Err(Error::BudgetExceeded(format!(
                    "clone closure exceeded {} tables",
                    budget
                )));
            }
            seen.insert(t.values().to_vec(), tables.len());
            tables.push(t);
            prov.push(p);
            Ok(true)
        };

        for i in 0..arity {
            push(
                OpTable::projection(arity, n, i),
                Provenance::Projection(i),
                &mut tables,
                &mut prov,
                &mut seen,
                &mut total,
            )?;
        }

        let mut frontier_start = 0;
        loop {
            let frontier_end = tables.len();
            if frontier_start == frontier_end && frontier_start != 0 {
                break;
            }
            let mut added = false;
            for (fi, table) in s.ops().iter().enumerate() {
                let k = table.arity();
                if k == 0 {
                    let t = OpTable::constant(arity, n, table.apply(&[]));
                    if frontier_start == 0
                        && push(
                            t,
                            Provenance::Apply { func: fi, args: vec![] },
                            &mut tables,
                            &mut prov,
                            &mut seen,
                            &mut total,
                        )?
                    {
                        added = true;
                    }
                    continue;
                }
                // tuples of argument indices with at least one in the frontier
                for idx in all_tuples(k, frontier_end) {
                    if frontier_start > 0 && !idx.iter().any(|&a| a >= frontier_start) {
                        continue;
                    }
                    let args: Vec<&OpTable> = idx.iter().map(|&a| &tables[a]).collect();
                    let t = table.compose(&args);
                    if push(
                        t,
                        Provenance::Apply { func: fi, args: idx },
                        &mut tables,
                        &mut prov,
                        &mut seen,
                        &mut total,
                    )? {
                        added = true;
                    }
                }
            }
            frontier_start = frontier_end;
            if !added && tables.len() == frontier_end {
                break;
            }
        }
        per_arity.push(tables);
        provenance.push(prov);
    }
    Ok(CloneTables {
        size: n,
        func_names,
        per_arity,
        provenance,
    })
}

/// A polynomial operation: a term over the base signature in which the
/// trailing variables are constant slots with fixed values. Interpreting the
/// polynomial in another structure requires choosing witnesses for the
/// constants ("anchors").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOp {
    pub arity: usize,
    pub term: Term,
    pub consts: Vec<usize>,
}

impl PolyOp {
    pub fn from_term(arity: usize, term: Term) -> PolyOp {
        PolyOp {
            arity,
            term,
            consts: vec![],
        }
    }

    /// Evaluate in the home structure (constants take their fixed values).
    pub fn eval_home(&self, a: &Structure, args: &[usize]) -> Result<usize> {
        debug_assert_eq!(args.len(), self.arity);
        let mut full = args.to_vec();
        full.extend_from_slice(&self.consts);
        self.term.eval(a, &full)
    }

    pub fn table_home(&self, a: &Structure) -> Result<OpTable> {
        let mut values = Vec::new();
        for args in all_tuples(self.arity, a.size()) {
            values.push(self.eval_home(a, &args)?);
        }
        OpTable::new(self.arity, a.size(), values)
    }

    /// Evaluate in an instance, with `anchors` standing in for the constant
    /// slots (one instance element per slot).
    pub fn eval_in(&self, x: &Structure, anchors: &[usize], args: &[usize]) -> Result<usize> {
        debug_assert_eq!(anchors.len(), self.consts.len());
        let mut full = args.to_vec();
        full.extend_from_slice(anchors);
        self.term.eval(x, &full)
    }
}

/// Clone of polynomial operations: term operations of the expansion of `s`
/// by all constants. Keeps the expansion around so discovered tables can be
/// converted back to terms-with-constants over the original signature.
#[derive(Debug, Clone)]
pub struct PolyClone {
    star: Structure,
    base_funcs: usize,
    clone: CloneTables,
}

impl PolyClone {
    pub fn tables(&self, arity: usize) -> &[OpTable] {
        self.clone.tables(arity)
    }

    pub fn max_arity(&self) -> usize {
        self.clone.max_arity()
    }

    pub fn total(&self) -> usize {
        self.clone.total()
    }

    pub fn contains(&self, t: &OpTable) -> bool {
        self.clone.contains(t)
    }

    pub fn star(&self) -> &Structure {
        &self.star
    }

    /// Reconstruct table `idx` of the given arity as a polynomial over the
    /// original signature. Equal constant values share one slot.
    pub fn poly_op(&self, arity: usize, idx: usize) -> PolyOp {
        let star_term = self.clone.term(arity, idx);
        let mut consts: Vec<usize> = Vec::new();
        let term = self.strip_constants(&star_term, arity, &mut consts);
        PolyOp { arity, term, consts }
    }

    fn strip_constants(&self, t: &Term, arity: usize, consts: &mut Vec<usize>) -> Term {
        match t {
            Term::Var(i) => Term::Var(*i),
            Term::App(name, args) => {
                if let Some(fi) = self.star.signature().func_index(name) {
                    if fi >= self.base_funcs && args.is_empty() {
                        let value = self.star.op(fi).apply(&[]);
                        let slot = match consts.iter().position(|&c| c == value) {
                            Some(p) => p,
                            None => {
                                consts.push(value);
                                consts.len() - 1
                            }
                        };
                        return Term::Var(arity + slot);
                    }
                }
                Term::App(
                    name.clone(),
                    args.iter()
                        .map(|a| self.strip_constants(a, arity, consts))
                        .collect(),
                )
            }
        }
    }

    /// Index of a table within its arity class, if present.
    pub fn position(&self, t: &OpTable) -> Option<usize> {
        self.clone.tables(t.arity()).iter().position(|u| u == t)
    }
}

/// The clone of the constant expansion of `s`; the arity-1 tables form the
/// unary polynomial monoid.
pub fn polynomial_clone_upto(s: &Structure, max_arity: usize, budget: usize) -> Result<PolyClone> {
    let star = s.algebraic_reduct().constant_expansion();
    let base_funcs = s.signature().funcs().len();
    let clone = clone_upto(&star, max_arity, budget)?;
    Ok(PolyClone {
        star,
        base_funcs,
        clone,
    })
}

/// The free algebra on `n` generators: the subalgebra of `A^(A^n)` generated
/// by the projection tuples. Elements are the distinct n-ary term tables of
/// `A`; generator `i` is the i-th projection. Returns the algebra and the
/// generator indices.
pub fn free_algebra(a: &Structure, n: usize, budget: usize) -> Result<(Structure, Vec<usize>)> {
    if !a.signature().is_algebraic() {
        return Err(Error::SignatureMismatch(
            "free algebras are built over algebras".into(),
        ));
    }
    let clone = clone_upto(a, n, budget)?;
    let elems = clone.tables(n).to_vec();
    let generators: Vec<usize> = (0..n)
        .map(|i| {
            let p = OpTable::projection(n, a.size(), i);
            elems.iter().position(|t| *t == p).unwrap()
        })
        .collect();
    let index: HashMap<&[usize], usize> = elems
        .iter()
        .enumerate()
        .map(|(i, t)| (t.values(), i))
        .collect();
    let mut ops = Vec::new();
    for table in a.ops() {
        let k = table.arity();
        let mut values = Vec::new();
        for idx in all_tuples(k, elems.len()) {
            let args: Vec<&OpTable> = idx.iter().map(|&j| &elems[j]).collect();
            let composed = table.compose(&args);
            values.push(*index
                .get(composed.values())
                .expect("clone is closed under basic operations"));
        }
        ops.push(values);
    }
    let f = Structure::algebra(a.signature().clone(), elems.len(), ops)?;
    Ok((f, generators))
}

/// Evaluation homomorphism `F(n) -> A` extending a map on the generators.
/// `free` must come from [`free_algebra`] for `a` with the same `n`.
pub fn free_evaluation(a: &Structure, n: usize, budget: usize, gen_values: &[usize]) -> Result<Vec<usize>> {
    let clone = clone_upto(a, n, budget)?;
    let elems = clone.tables(n);
    Ok(elems.iter().map(|t| t.apply(gen_values)).collect())
}

/// The star extension: given a 3-element algebra with a congruence whose
/// blocks are a 2-element set `B` and a singleton `{c}`, and on which every
/// relevant polynomial is essentially unary over `B`, build the algebra on
/// `F(n) ∪ {⋆}` whose surjective homomorphism count into `A` grows like
/// `2^n`. Element order: the n generators first, then the remaining tables,
/// then `⋆` last.
pub fn star_extension(
    a: &Structure,
    alpha: &crate::congruence::Congruence,
    n: usize,
    budget: usize,
) -> Result<Structure> {
    if a.size() != 3 {
        return Err(Error::WrongSize {
            expected: 3,
            got: a.size(),
        });
    }
    if !a.signature().is_algebraic() {
        return Err(Error::SignatureMismatch(
            "star extension is built over algebras".into(),
        ));
    }
    a.check_congruence(alpha)?;
    let blocks = alpha.blocks();
    if blocks.len() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "congruence must have a 2-element block and a singleton, got {}",
            alpha.render()
        )));
    }
    let (big, small): (Vec<usize>, Vec<usize>) = if blocks[0].len() == 2 {
        (blocks[0].clone(), blocks[1].clone())
    } else {
        (blocks[1].clone(), blocks[0].clone())
    };
    if big.len() != 2 || small.len() != 1 {
        return Err(Error::PreconditionViolated(
            "congruence blocks must have sizes 2 and 1".into(),
        ));
    }
    let c = small[0];

    // unary polynomials preserving B, restricted to B (re-indexed 0/1)
    let unary = polynomial_clone_upto(a, 1, budget)?;
    let mut u_b: Vec<OpTable> = Vec::new();
    for t in unary.tables(1) {
        if t.preserves(&big) {
            let r = t.restrict(&big);
            if !u_b.contains(&r) {
                u_b.push(r);
            }
        }
    }

    // elements of F(n): tables of u ∘ proj_i over B, generators first
    let mut elems: Vec<OpTable> = Vec::new();
    for i in 0..n {
        elems.push(OpTable::projection(n, 2, i));
    }
    for u in &u_b {
        for i in 0..n {
            let t = u.compose(&[&OpTable::projection(n, 2, i)]);
            if !elems.contains(&t) {
                elems.push(t);
            }
        }
    }
    let star_idx = elems.len();
    let size = elems.len() + 1;

    // the rule for one basic op and one ⋆-pattern: either "always ⋆" or
    // "apply u to coordinate i"
    enum Rule {
        Star,
        Unary { u: OpTable, coord: usize },
        ConstTable(usize),
    }

    let mut ops = Vec::new();
    for ((fname, m), table) in a.signature().funcs().iter().zip(a.ops()) {
        // precompute the rule for each subset I of ⋆-positions
        let mut rules: Vec<Rule> = Vec::new();
        for mask in 0..(1usize << m) {
            let free: Vec<usize> = (0..*m).filter(|j| mask & (1 << j) == 0).collect();
            let r = free.len();
            // p = f with masked coordinates fixed to c, as a function B^r -> A
            let mut p_values = Vec::with_capacity(1 << r);
            let mut preserves = true;
            for bits in all_tuples(r, 2) {
                let mut args = vec![c; *m];
                for (pos, &j) in free.iter().enumerate() {
                    args[j] = big[bits[pos]];
                }
                let v = table.apply(&args);
                if !big.contains(&v) {
                    preserves = false;
                }
                p_values.push(v);
            }
            if !preserves {
                // p hits c somewhere on B-inputs; the congruence forces it
                // to be constantly c there
                if p_values.iter().any(|v| *v != c) {
                    return Err(Error::PreconditionViolated(format!(
                        "operation `{}` with positions {:?} fixed is neither B-preserving nor constant",
                        fname, mask
                    )));
                }
                rules.push(Rule::Star);
                continue;
            }
            // restricted to B: values as 0/1 positions
            let pb: Vec<usize> = p_values
                .iter()
                .map(|v| big.iter().position(|b| b == v).unwrap())
                .collect();
            let pb_table = OpTable::new(r, 2, pb).unwrap();
            let ess = pb_table.essential_coords();
            match ess.len() {
                0 => {
                    let value = pb_table.values()[0];
                    let const_table = OpTable::constant(n, 2, value);
                    let pos = elems.iter().position(|t| *t == const_table).ok_or_else(|| {
                        Error::PreconditionViolated(
                            "constant table missing from the free part".into(),
                        )
                    })?;
                    rules.push(Rule::ConstTable(pos));
                }
                1 => {
                    let j = ess[0];
                    // unary action along coordinate j
                    let u = OpTable::new(
                        1,
                        2,
                        (0..2)
                            .map(|b| {
                                let mut bits = vec![0usize; r];
                                bits[j] = b;
                                pb_table.apply(&bits)
                            })
                            .collect(),
                    )
                    .unwrap();
                    rules.push(Rule::Unary {
                        u,
                        coord: free[j],
                    });
                }
                _ => {
                    return Err(Error::PreconditionViolated(format!(
                        "operation `{}` restricted to B with ⋆-pattern {:#b} is essentially {}-ary: {:?}",
                        fname,
                        mask,
                        ess.len(),
                        pb_table.values()
                    )))
                }
            }
        }

        let mut values = Vec::new();
        for args in all_tuples(*m, size) {
            let mut mask = 0usize;
            for (j, &x) in args.iter().enumerate() {
                if x == star_idx {
                    mask |= 1 << j;
                }
            }
            let v = match &rules[mask] {
                Rule::Star => star_idx,
                Rule::ConstTable(pos) => *pos,
                Rule::Unary { u, coord } => {
                    let t = u.compose(&[&elems[args[*coord]]]);
                    elems
                        .iter()
                        .position(|e| *e == t)
                        .expect("free part closed under unary actions")
                }
            };
            values.push(v);
        }
        ops.push(values);
    }
    Structure::algebra(a.signature().clone(), size, ops)
}

/// The homomorphism `star_extension(a, ...) -> a` induced by a generator
/// assignment into the 2-element block, with `⋆` sent to the singleton.
pub fn star_extension_hom(
    a: &Structure,
    alpha: &crate::congruence::Congruence,
    n: usize,
    budget: usize,
    gen_values: &[usize],
) -> Result<Vec<usize>> {
    let x = star_extension(a, alpha, n, budget)?;
    let blocks = alpha.blocks();
    let (big, small) = if blocks[0].len() == 2 {
        (blocks[0].clone(), blocks[1].clone())
    } else {
        (blocks[1].clone(), blocks[0].clone())
    };
    // rebuild the element tables in the same order as star_extension
    let unary = polynomial_clone_upto(a, 1, budget)?;
    let mut u_b: Vec<OpTable> = Vec::new();
    for t in unary.tables(1) {
        if t.preserves(&big) {
            let r = t.restrict(&big);
            if !u_b.contains(&r) {
                u_b.push(r);
            }
        }
    }
    let mut elems: Vec<OpTable> = Vec::new();
    for i in 0..n {
        elems.push(OpTable::projection(n, 2, i));
    }
    for u in &u_b {
        for i in 0..n {
            let t = u.compose(&[&OpTable::projection(n, 2, i)]);
            if !elems.contains(&t) {
                elems.push(t);
            }
        }
    }
    let positions: Vec<usize> = gen_values
        .iter()
        .map(|v| big.iter().position(|b| b == v).expect("generator values lie in B"))
        .collect();
    let mut h: Vec<usize> = elems
        .iter()
        .map(|t| big[t.apply(&positions)])
        .collect();
    h.push(small[0]);
    let _ = x;
    Ok(h)
}
