use std::collections::BTreeSet;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::table::{all_tuples, table_len, OpTable};

/// A finite structure: a domain `0..size` together with one operation table
/// per function symbol and one tuple set per relation symbol. An algebra is
/// a structure with no relation symbols; a relational structure has no
/// function symbols. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    sig: Signature,
    size: usize,
    ops: Vec<OpTable>,
    rels: Vec<BTreeSet<Vec<usize>>>,
}

impl Structure {
    pub fn new(
        sig: Signature,
        size: usize,
        ops: Vec<Vec<usize>>,
        rels: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "domain must be nonempty".into(),
            });
        }
        if ops.len() != sig.funcs().len() || rels.len() != sig.rels().len() {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "wrong number of tables or tuple sets".into(),
            });
        }
        let mut tables = Vec::with_capacity(ops.len());
        for ((name, arity), values) in sig.funcs().iter().zip(ops) {
            let t = OpTable::new(*arity, size, values).map_err(|e| match e {
                Error::BadTable { msg, .. } => Error::BadTable {
                    symbol: name.clone(),
                    msg,
                },
                other => other,
            })?;
            tables.push(t);
        }
        let mut tuple_sets = Vec::with_capacity(rels.len());
        for ((name, arity), tuples) in sig.rels().iter().zip(rels) {
            let mut set = BTreeSet::new();
            for t in tuples {
                if t.len() != *arity {
                    return Err(Error::BadTable {
                        symbol: name.clone(),
                        msg: format!("tuple {:?} has wrong arity (expected {})", t, arity),
                    });
                }
                if let Some(&v) = t.iter().find(|&&v| v >= size) {
                    return Err(Error::BadTable {
                        symbol: name.clone(),
                        msg: format!("tuple entry {} out of range [0, {})", v, size),
                    });
                }
                set.insert(t);
            }
            tuple_sets.push(set);
        }
        Ok(Structure {
            sig,
            size,
            ops: tables,
            rels: tuple_sets,
        })
    }

    /// An algebra (no relations) from operation tables.
    pub fn algebra(sig: Signature, size: usize, ops: Vec<Vec<usize>>) -> Result<Self> {
        Structure::new(sig, size, ops, vec![])
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, idx: usize) -> &OpTable {
        &self.ops[idx]
    }

    pub fn ops(&self) -> &[OpTable] {
        &self.ops
    }

    pub fn op_by_name(&self, name: &str) -> Result<&OpTable> {
        self.sig
            .func_index(name)
            .map(|i| &self.ops[i])
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn rel(&self, idx: usize) -> &BTreeSet<Vec<usize>> {
        &self.rels[idx]
    }

    pub fn rels(&self) -> &[BTreeSet<Vec<usize>>] {
        &self.rels
    }

    pub fn rel_by_name(&self, name: &str) -> Result<&BTreeSet<Vec<usize>>> {
        self.sig
            .rel_index(name)
            .map(|i| &self.rels[i])
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// The algebraic reduct: same domain, function symbols only.
    pub fn algebraic_reduct(&self) -> Structure {
        Structure {
            sig: Signature::new(self.sig.funcs().to_vec(), vec![]).unwrap(),
            size: self.size,
            ops: self.ops.clone(),
            rels: vec![],
        }
    }

    /// The relational reduct: same domain, relation symbols only.
    pub fn relational_reduct(&self) -> Structure {
        Structure {
            sig: Signature::new(vec![], self.sig.rels().to_vec()).unwrap(),
            size: self.size,
            ops: vec![],
            rels: self.rels.clone(),
        }
    }

    /// The graph of the structure: every k-ary operation `f` becomes a
    /// (k+1)-ary relation `G_f` holding exactly the tuples `(a⃗, f(a⃗))`;
    /// original relations are copied unchanged. Purely relational input is
    /// returned as-is.
    pub fn graph_of(&self) -> Structure {
        let mut rel_syms: Vec<(String, usize)> = Vec::new();
        let mut tuple_sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let taken: std::collections::HashSet<String> = self
            .sig
            .rels()
            .iter()
            .map(|(n, _)| n.clone())
            .collect();
        for ((name, arity), table) in self.sig.funcs().iter().zip(&self.ops) {
            let mut gname = format!("G_{}", name);
            while taken.contains(&gname) || rel_syms.iter().any(|(n, _)| *n == gname) {
                gname.push('_');
            }
            let mut set = BTreeSet::new();
            for args in all_tuples(*arity, self.size) {
                let mut t = args.clone();
                t.push(table.apply(&args));
                set.insert(t);
            }
            rel_syms.push((gname, arity + 1));
            tuple_sets.push(set);
        }
        for ((name, arity), set) in self.sig.rels().iter().zip(&self.rels) {
            rel_syms.push((name.clone(), *arity));
            tuple_sets.push(set.clone());
        }
        Structure {
            sig: Signature::new(vec![], rel_syms).unwrap(),
            size: self.size,
            ops: vec![],
            rels: tuple_sets,
        }
    }

    /// Direct product with pairs `(i1, i2)` encoded as `i1 * n2 + i2`.
    /// Operations act coordinatewise; a tuple is in a product relation iff
    /// both projections are.
    pub fn product(&self, other: &Structure) -> Result<Structure> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(
                "product requires identical signatures".into(),
            ));
        }
        let (n1, n2) = (self.size, other.size);
        let size = n1 * n2;
        let mut ops = Vec::new();
        for ((_, arity), (t1, t2)) in self.sig.funcs().iter().zip(self.ops.iter().zip(&other.ops)) {
            let mut values = Vec::with_capacity(table_len(size, *arity)?);
            for args in all_tuples(*arity, size) {
                let a1: Vec<usize> = args.iter().map(|&p| p / n2).collect();
                let a2: Vec<usize> = args.iter().map(|&p| p % n2).collect();
                values.push(t1.apply(&a1) * n2 + t2.apply(&a2));
            }
            ops.push(values);
        }
        let mut rels = Vec::new();
        for (r1, r2) in self.rels.iter().zip(&other.rels) {
            let mut set = Vec::new();
            for t1 in r1 {
                for t2 in r2 {
                    set.push(
                        t1.iter()
                            .zip(t2)
                            .map(|(&a, &b)| a * n2 + b)
                            .collect::<Vec<_>>(),
                    );
                }
            }
            rels.push(set);
        }
        Structure::new(self.sig.clone(), size, ops, rels)
    }

    /// The substructure induced on `set` (which must be closed under all
    /// operations), re-indexed to `0..|set|` preserving order. Returns the
    /// structure together with the embedding `new index -> old element`.
    pub fn induced_substructure(&self, set: &[usize]) -> Result<(Structure, Vec<usize>)> {
        let mut elems: Vec<usize> = set.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "substructure domain must be nonempty".into(),
            });
        }
        if let Some(&v) = elems.iter().find(|&&v| v >= self.size) {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: format!("element {} out of range", v),
            });
        }
        // closure check with a witness
        for ((name, arity), table) in self.sig.funcs().iter().zip(&self.ops) {
            for idx in all_tuples(*arity, elems.len()) {
                let args: Vec<usize> = idx.iter().map(|&j| elems[j]).collect();
                if !elems.contains(&table.apply(&args)) {
                    return Err(Error::NotClosed {
                        symbol: name.clone(),
                        args,
                    });
                }
            }
        }
        let ops = self
            .ops
            .iter()
            .map(|t| t.restrict(&elems).values().to_vec())
            .collect();
        let rels = self
            .rels
            .iter()
            .map(|set0| {
                set0.iter()
                    .filter(|t| t.iter().all(|x| elems.contains(x)))
                    .map(|t| {
                        t.iter()
                            .map(|x| elems.iter().position(|e| e == x).unwrap())
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let s = Structure::new(self.sig.clone(), elems.len(), ops, rels)?;
        Ok((s, elems))
    }

    /// Check that `theta` is preserved by every operation. It suffices to
    /// vary one coordinate at a time within a block.
    pub fn check_congruence(&self, theta: &Congruence) -> Result<()> {
        if theta.size() != self.size {
            return Err(Error::WrongSize {
                expected: self.size,
                got: theta.size(),
            });
        }
        for ((name, arity), table) in self.sig.funcs().iter().zip(&self.ops) {
            for args in all_tuples(*arity, self.size) {
                let v = table.apply(&args);
                for i in 0..*arity {
                    for b in 0..self.size {
                        if b != args[i] && theta.related(args[i], b) {
                            let mut other = args.clone();
                            other[i] = b;
                            if !theta.related(v, table.apply(&other)) {
                                return Err(Error::NotACongruence {
                                    symbol: name.clone(),
                                    lhs: args,
                                    rhs: other,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Quotient structure: blocks as elements (indexed by increasing
    /// representative), induced operations, and relations lifted
    /// existentially (a block tuple is related iff some system of
    /// representatives is). Fails with a witness if `theta` is not a
    /// congruence. Also returns the projection map `element -> block index`.
    pub fn quotient(&self, theta: &Congruence) -> Result<(Structure, Vec<usize>)> {
        self.check_congruence(theta)?;
        let reps = theta.reps();
        let proj: Vec<usize> = (0..self.size)
            .map(|x| reps.iter().position(|&r| r == theta.rep(x)).unwrap())
            .collect();
        let size = reps.len();
        let mut ops = Vec::new();
        for table in &self.ops {
            let arity = table.arity();
            let mut values = Vec::with_capacity(table_len(size, arity)?);
            for idx in all_tuples(arity, size) {
                let args: Vec<usize> = idx.iter().map(|&b| reps[b]).collect();
                values.push(proj[table.apply(&args)]);
            }
            ops.push(values);
        }
        let rels = self
            .rels
            .iter()
            .map(|set| {
                set.iter()
                    .map(|t| t.iter().map(|&x| proj[x]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .collect();
        let q = Structure::new(self.sig.clone(), size, ops, rels)?;
        Ok((q, proj))
    }

    /// Least superset of `seed` closed under all operations, by worklist
    /// closure.
    pub fn generated_subuniverse(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.size];
        for &x in seed {
            in_set[x] = true;
        }
        loop {
            let mut grew = false;
            let current: Vec<usize> = (0..self.size).filter(|&x| in_set[x]).collect();
            for table in &self.ops {
                for idx in all_tuples(table.arity(), current.len()) {
                    let args: Vec<usize> = idx.iter().map(|&j| current[j]).collect();
                    let v = table.apply(&args);
                    if !in_set[v] {
                        in_set[v] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..self.size).filter(|&x| in_set[x]).collect()
    }

    /// Expansion by fresh named tables and tuple sets; original content is
    /// untouched.
    pub fn expand(
        &self,
        extra_ops: Vec<(String, usize, Vec<usize>)>,
        extra_rels: Vec<(String, usize, Vec<Vec<usize>>)>,
    ) -> Result<Structure> {
        let mut funcs = self.sig.funcs().to_vec();
        let mut rels_sig = self.sig.rels().to_vec();
        let mut ops: Vec<Vec<usize>> = self.ops.iter().map(|t| t.values().to_vec()).collect();
        let mut rels: Vec<Vec<Vec<usize>>> = self
            .rels
            .iter()
            .map(|s| s.iter().cloned().collect())
            .collect();
        for (name, arity, values) in extra_ops {
            if self.sig.has_symbol(&name) || funcs.iter().any(|(n, _)| *n == name) {
                return Err(Error::DuplicateSymbol(name));
            }
            funcs.push((name, arity));
            ops.push(values);
        }
        for (name, arity, tuples) in extra_rels {
            if self.sig.has_symbol(&name)
                || funcs.iter().any(|(n, _)| *n == name)
                || rels_sig.iter().any(|(n, _)| *n == name)
            {
                return Err(Error::DuplicateSymbol(name));
            }
            rels_sig.push((name, arity));
            rels.push(tuples);
        }
        Structure::new(Signature::new(funcs, rels_sig)?, self.size, ops, rels)
    }

    /// Expansion of an algebra by one nullary constant per element, named
    /// `c0, c1, ...` (fresh names are forced by appending underscores).
    /// This is the carrier of the polynomial clone.
    pub fn constant_expansion(&self) -> Structure {
        let mut extra = Vec::new();
        for a in 0..self.size {
            let mut name = format!("c{}", a);
            while self.sig.has_symbol(&name) || extra.iter().any(|(n, _, _): &(String, usize, Vec<usize>)| *n == name) {
                name.push('_');
            }
            extra.push((name, 0, vec![a]));
        }
        self.expand(extra, vec![]).expect("fresh constant names")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;

    fn nor_algebra() -> Structure {
        // x·y = ¬x ∧ ¬y on {0,1}
        Structure::algebra(Signature::of(&[("nor", 2)], &[]), 2, vec![vec![1, 0, 0, 0]]).unwrap()
    }

    #[test]
    fn graph_of_nor_template() {
        let a = nor_algebra();
        let g = a.graph_of();
        assert!(g.signature().is_relational());
        let tuples: Vec<Vec<usize>> = g.rel(0).iter().cloned().collect();
        assert_eq!(
            tuples,
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]]
        );
    }

    #[test]
    fn graph_of_relational_structure_is_identity() {
        let s = Structure::new(
            Signature::of(&[], &[("E", 2)]),
            3,
            vec![],
            vec![vec![vec![0, 1], vec![1, 2]]],
        )
        .unwrap();
        assert_eq!(s.graph_of(), s);
    }

    #[test]
    fn graph_tuple_counts_reflect_functionality() {
        let a = paper::example_4_12();
        let g = a.graph_of();
        assert_eq!(g.rel(0).len(), 9); // n^k = 3^2
    }

    #[test]
    fn product_with_one_element_algebra_is_isomorphic() {
        let a = nor_algebra();
        let unit = Structure::algebra(a.signature().clone(), 1, vec![vec![0]]).unwrap();
        let p = unit.product(&a).unwrap();
        // pairs (0, i) encode as i, so the product equals `a` on the nose
        assert_eq!(p, a);
    }

    #[test]
    fn z2_squared_is_self_inverse() {
        let z2 = Structure::algebra(Signature::of(&[("add", 2)], &[]), 2, vec![vec![0, 1, 1, 0]])
            .unwrap();
        let p = z2.product(&z2).unwrap();
        assert_eq!(p.size(), 4);
        let t = p.op(0);
        for x in 0..4 {
            assert_eq!(t.apply(&[x, x]), 0); // every element is self-inverse
        }
    }

    #[test]
    fn induced_substructure_of_prop_5_1_on_01() {
        let a = paper::prop_5_1();
        let (b, embed) = a.induced_substructure(&[0, 1]).unwrap();
        assert_eq!(embed, vec![0, 1]);
        let f = b.op_by_name("f").unwrap();
        assert_eq!(f.values(), &[0, 1, 0, 1]);
    }

    #[test]
    fn induced_substructure_whole_domain_is_identity() {
        let a = paper::example_4_12();
        let (b, embed) = a.induced_substructure(&[0, 1, 2]).unwrap();
        assert_eq!(b, a);
        assert_eq!(embed, vec![0, 1, 2]);
    }

    #[test]
    fn induced_substructure_on_singleton_2() {
        let a = paper::example_4_12();
        let (b, _) = a.induced_substructure(&[2]).unwrap(); // 2∘2 = 2
        assert_eq!(b.size(), 1);
    }

    #[test]
    fn not_closed_is_reported_with_witness() {
        let a = paper::example_4_12();
        let err = a.induced_substructure(&[1, 2]).unwrap_err(); // 2∘1 = 0
        match err {
            Error::NotClosed { symbol, args } => {
                assert_eq!(symbol, "o");
                assert_eq!(args, vec![2, 1]);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn quotient_of_example_4_12_by_alpha() {
        let a = paper::example_4_12();
        let alpha = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        let (q, proj) = a.quotient(&alpha).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(proj, vec![0, 0, 1]);
        // the induced operation is the second projection, hence essentially unary
        assert!(q.op(0).is_essentially_unary());
    }

    #[test]
    fn quotient_by_identity_and_full() {
        let a = paper::example_4_12();
        let (q0, _) = a.quotient(&Congruence::identity(3)).unwrap();
        assert_eq!(q0, a);
        let (q1, _) = a.quotient(&Congruence::full(3)).unwrap();
        assert_eq!(q1.size(), 1);
    }

    #[test]
    fn quotient_rejects_non_congruences() {
        let a = paper::example_4_12();
        let beta = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(a.quotient(&beta), Err(Error::NotACongruence { .. })));
    }

    #[test]
    fn generated_subuniverse_examples() {
        let a = paper::example_4_12();
        assert_eq!(a.generated_subuniverse(&[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(a.generated_subuniverse(&[0]), vec![0]); // 0∘0 = 0
        let nor = nor_algebra();
        assert_eq!(nor.generated_subuniverse(&[1]), vec![0, 1]); // 1·1 = 0
    }

    #[test]
    fn generated_subuniverse_is_idempotent_and_monotone() {
        let a = paper::prop_6_1_instance();
        let g1 = a.generated_subuniverse(&[1]);
        let g2 = a.generated_subuniverse(&g1);
        assert_eq!(g1, g2);
        let bigger = a.generated_subuniverse(&[1, 2]);
        assert!(g1.iter().all(|x| bigger.contains(x)));
    }

    #[test]
    fn expand_rejects_duplicate_names() {
        let a = nor_algebra();
        assert!(matches!(
            a.expand(vec![("nor".into(), 1, vec![0, 1])], vec![]),
            Err(Error::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn expand_by_nothing_is_identity() {
        let a = nor_algebra();
        assert_eq!(a.expand(vec![], vec![]).unwrap(), a);
    }

    #[test]
    fn constant_expansion_adds_one_nullary_per_element() {
        let a = paper::example_4_12();
        let star = a.constant_expansion();
        assert_eq!(star.signature().funcs().len(), 4);
        assert_eq!(star.op_by_name("c2").unwrap().apply(&[]), 2);
    }
}
