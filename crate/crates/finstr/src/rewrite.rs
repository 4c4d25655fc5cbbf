//! Instance rewriting by identity enforcement, and quantifier-free
//! primitive-positive reductions between term-equivalent templates.

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::structure::Structure;
use crate::table::all_tuples;
use crate::tct::principal_congruence;
use crate::term::{find_violation, Identity, Term};

/// Result of enforcing a set of identities on an instance.
#[derive(Debug, Clone)]
pub struct Enforced {
    /// The rewritten instance, satisfying every identity.
    pub instance: Structure,
    /// Composed quotient map from the original domain.
    pub map: Vec<usize>,
    /// Number of quotient steps taken.
    pub steps: usize,
}

/// Repeatedly find an identity violation (identities in list order,
/// assignments lexicographic), quotient by the principal congruence of the
/// violating values, and recurse until every identity holds. The domain
/// shrinks at every step, and for any target satisfying the identities the
/// homomorphism count is unchanged.
pub fn enforce_identities(x: &Structure, ids: &[Identity]) -> Result<Enforced> {
    let mut cur = x.clone();
    let mut map: Vec<usize> = (0..x.size()).collect();
    let mut steps = 0usize;
    loop {
        match find_violation(&cur, ids)? {
            None => {
                return Ok(Enforced {
                    instance: cur,
                    map,
                    steps,
                })
            }
            Some((idx, assignment)) => {
                let id = &ids[idx];
                let lhs = id.lhs.eval(&cur, &assignment)?;
                let rhs = id.rhs.eval(&cur, &assignment)?;
                debug_assert_ne!(lhs, rhs);
                let theta = principal_congruence(&cur, lhs, rhs);
                let (next, proj) = cur.quotient(&theta)?;
                map = map.iter().map(|&e| proj[e]).collect();
                cur = next;
                steps += 1;
            }
        }
    }
}

/// One atom of a quantifier-free pp definition: a target relation symbol
/// applied to target-signature terms over the source relation's variables.
#[derive(Debug, Clone)]
pub struct QfppAtom {
    pub rel: String,
    pub args: Vec<Term>,
}

/// A translation between term-equivalent templates: terms for each function
/// symbol in both directions, and a quantifier-free pp definition for each
/// source relation symbol.
///
/// A nullary target symbol may be translated by a unary term, provided that
/// term is constant on the source template; the compatibility identities
/// then include the constancy identity so the reduced instance interprets
/// the symbol unambiguously.
#[derive(Debug, Clone)]
pub struct TranslationSpec {
    /// for each source function symbol, a target-signature term
    pub source_to_target: Vec<(String, Term)>,
    /// for each target function symbol, a source-signature term
    pub target_to_source: Vec<(String, Term)>,
    /// for each source relation symbol, a conjunction of atoms
    pub rel_definitions: Vec<(String, Vec<QfppAtom>)>,
}

impl TranslationSpec {
    fn term_for_source(&self, f: &str) -> Option<&Term> {
        self.source_to_target
            .iter()
            .find(|(n, _)| n == f)
            .map(|(_, t)| t)
    }

    fn term_for_target(&self, g: &str) -> Option<&Term> {
        self.target_to_source
            .iter()
            .find(|(n, _)| n == g)
            .map(|(_, t)| t)
    }
}

/// A translation spec validated against concrete templates `a` and `b`.
pub struct ValidatedSpec<'a> {
    pub spec: &'a TranslationSpec,
    pub source: &'a Structure,
    pub target: &'a Structure,
}

/// Check every clause of the spec against the templates: term arities,
/// pointwise equality of translated operations, and extensional equality of
/// every relation definition.
pub fn validate_spec<'a>(
    spec: &'a TranslationSpec,
    a: &'a Structure,
    b: &'a Structure,
) -> Result<ValidatedSpec<'a>> {
    if a.size() != b.size() {
        return Err(Error::SpecInvalid(
            "templates must share a domain".into(),
        ));
    }
    let n = a.size();
    for (f, arity) in a.signature().funcs() {
        let t = spec
            .term_for_source(f)
            .ok_or_else(|| Error::SpecInvalid(format!("missing translation for source `{}`", f)))?;
        if t.var_count() > *arity {
            return Err(Error::SpecInvalid(format!(
                "translation of `{}` uses {} variables but the arity is {}",
                f,
                t.var_count(),
                arity
            )));
        }
        let fa = a.op_by_name(f)?;
        for args in all_tuples(*arity, n) {
            if t.eval(b, &args)? != fa.apply(&args) {
                return Err(Error::SpecInvalid(format!(
                    "translation of `{}` disagrees at {:?}",
                    f, args
                )));
            }
        }
    }
    for (g, arity) in b.signature().funcs() {
        let s = spec
            .term_for_target(g)
            .ok_or_else(|| Error::SpecInvalid(format!("missing translation for target `{}`", g)))?;
        let gb = b.op_by_name(g)?;
        if *arity == 0 {
            // allow a unary constant term
            if s.var_count() > 1 {
                return Err(Error::SpecInvalid(format!(
                    "translation of nullary `{}` uses {} variables",
                    g,
                    s.var_count()
                )));
            }
            let want = gb.apply(&[]);
            for x in 0..n {
                if s.eval(a, &[x])? != want {
                    return Err(Error::SpecInvalid(format!(
                        "translation of nullary `{}` is not constant {}",
                        g, want
                    )));
                }
            }
        } else {
            if s.var_count() > *arity {
                return Err(Error::SpecInvalid(format!(
                    "translation of `{}` uses {} variables but the arity is {}",
                    g,
                    s.var_count(),
                    arity
                )));
            }
            for args in all_tuples(*arity, n) {
                if s.eval(a, &args)? != gb.apply(&args) {
                    return Err(Error::SpecInvalid(format!(
                        "translation of `{}` disagrees at {:?}",
                        g, args
                    )));
                }
            }
        }
    }
    for (r, arity) in a.signature().rels() {
        let atoms = spec
            .rel_definitions
            .iter()
            .find(|(n, _)| n == r)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::SpecInvalid(format!("missing definition for relation `{}`", r)))?;
        for atom in atoms {
            let rb = b.rel_by_name(&atom.rel)?;
            let _ = rb;
            let (_, t_arity) = b
                .signature()
                .rels()
                .iter()
                .find(|(n, _)| *n == atom.rel)
                .ok_or_else(|| Error::UnknownSymbol(atom.rel.clone()))?;
            if atom.args.len() != *t_arity {
                return Err(Error::SpecInvalid(format!(
                    "atom for `{}` has {} arguments, relation `{}` has arity {}",
                    r,
                    atom.args.len(),
                    atom.rel,
                    t_arity
                )));
            }
            for term in &atom.args {
                if term.var_count() > *arity {
                    return Err(Error::SpecInvalid(format!(
                        "atom term for `{}` uses variables beyond arity {}",
                        r, arity
                    )));
                }
            }
        }
        // extensional equality: the conjunction defines exactly R^A
        let ra = a.rel_by_name(r)?;
        for args in all_tuples(*arity, n) {
            let mut holds = true;
            for atom in atoms {
                let vals: Vec<usize> = atom
                    .args
                    .iter()
                    .map(|t| t.eval(b, &args))
                    .collect::<Result<_>>()?;
                if !b.rel_by_name(&atom.rel)?.contains(&vals) {
                    holds = false;
                    break;
                }
            }
            if holds != ra.contains(&args) {
                return Err(Error::SpecInvalid(format!(
                    "definition of `{}` disagrees at {:?}",
                    r, args
                )));
            }
        }
    }
    Ok(ValidatedSpec {
        spec,
        source: a,
        target: b,
    })
}

/// The compatibility identities for a validated spec, including constancy
/// identities for nullary target symbols translated by unary terms.
pub fn compatibility_identities(v: &ValidatedSpec) -> Result<Vec<Identity>> {
    let spec = v.spec;
    let mut out = Vec::new();
    let subst = |name: &str| spec.term_for_target(name).cloned();
    for (f, arity) in v.source.signature().funcs() {
        let t_f = spec.term_for_source(f).unwrap();
        let composed = t_f.replace_symbols(&subst);
        let lhs = Term::App(f.clone(), (0..*arity).map(Term::Var).collect());
        out.push(Identity::new(lhs, composed));
    }
    for (g, arity) in v.target.signature().funcs() {
        let s = spec.term_for_target(g).unwrap();
        if *arity == 0 && s.var_count() == 1 {
            let renamed = s.substitute(&[Term::Var(1)]);
            out.push(Identity::new(s.clone(), renamed));
        }
    }
    Ok(out)
}

/// Translate an instance of the source template into an instance of the
/// target template over the same domain. The instance must already satisfy
/// the compatibility identities (use [`enforce_identities`] first); a map is
/// then a homomorphism into the source template iff it is one into the
/// target template.
pub fn qfpp_reduce(x: &Structure, v: &ValidatedSpec) -> Result<Structure> {
    if x.signature() != v.source.signature() {
        return Err(Error::SignatureMismatch(
            "instance signature must match the source template".into(),
        ));
    }
    let ids = compatibility_identities(v)?;
    if let Some((i, w)) = find_violation(x, &ids)? {
        return Err(Error::CompatibilityIdentitiesNotEnforced(format!(
            "{} at {:?}",
            ids[i], w
        )));
    }
    let n = x.size();
    let mut ops = Vec::new();
    for (g, arity) in v.target.signature().funcs() {
        let s = v.spec.term_for_target(g).unwrap();
        if *arity == 0 {
            // constancy was enforced, so evaluating anywhere is safe
            let val = if s.var_count() == 0 {
                s.eval(x, &[])?
            } else {
                s.eval(x, &[0])?
            };
            ops.push(vec![val]);
        } else {
            let mut values = Vec::new();
            for args in all_tuples(*arity, n) {
                values.push(s.eval(x, &args)?);
            }
            ops.push(values);
        }
    }
    let mut rels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); v.target.signature().rels().len()];
    // target operations are needed to evaluate atom terms in Y, so build a
    // scratch structure first
    let y_ops_only = Structure::new(
        Signature::new(v.target.signature().funcs().to_vec(), vec![])?,
        n,
        ops.clone(),
        vec![],
    )?;
    for (ri, (r, _)) in x.signature().rels().iter().enumerate() {
        let atoms = v
            .spec
            .rel_definitions
            .iter()
            .find(|(n, _)| n == r)
            .map(|(_, a)| a)
            .unwrap();
        for tuple in x.rel(ri) {
            for atom in atoms {
                let ti = v
                    .target
                    .signature()
                    .rel_index(&atom.rel)
                    .ok_or_else(|| Error::UnknownSymbol(atom.rel.clone()))?;
                let vals: Vec<usize> = atom
                    .args
                    .iter()
                    .map(|t| t.eval(&y_ops_only, tuple))
                    .collect::<Result<_>>()?;
                rels[ti].push(vals);
            }
        }
    }
    Structure::new(v.target.signature().clone(), n, ops, rels)
}

/// Parse a `.tspec` file: `func <name> = <term>` lines for both directions
/// (classified by which signature owns the name) and
/// `rel <name> : <atom> & <atom> ...` lines, where an atom is
/// `<relname>(<term>, ..., <term>)`.
pub fn parse_tspec(
    text: &str,
    source_sig: &Signature,
    target_sig: &Signature,
) -> Result<TranslationSpec> {
    let mut source_to_target = Vec::new();
    let mut target_to_source = Vec::new();
    let mut rel_definitions = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_n = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: line_n, msg };
        if let Some(rest) = line.strip_prefix("func ") {
            let (name, term_text) = rest
                .split_once('=')
                .ok_or_else(|| perr("expected `func <name> = <term>`".into()))?;
            let name = name.trim();
            let term = crate::term::parse_term(term_text.trim()).map_err(|e| match e {
                Error::Parse { msg, .. } => perr(msg),
                other => other,
            })?;
            // a name present in both signatures (identity-style specs)
            // serves both directions
            let mut known = false;
            if source_sig.func_index(name).is_some() {
                source_to_target.push((name.to_string(), term.clone()));
                known = true;
            }
            if target_sig.func_index(name).is_some() {
                target_to_source.push((name.to_string(), term));
                known = true;
            }
            if !known {
                return Err(perr(format!("`{}` is in neither signature", name)));
            }
        } else if let Some(rest) = line.strip_prefix("rel ") {
            let (name, defs) = rest
                .split_once(':')
                .ok_or_else(|| perr("expected `rel <name> : <atoms>`".into()))?;
            let name = name.trim();
            if source_sig.rel_index(name).is_none() {
                return Err(perr(format!("unknown source relation `{}`", name)));
            }
            let mut atoms = Vec::new();
            for atom_text in defs.split('&') {
                let atom_text = atom_text.trim();
                let open = atom_text
                    .find('(')
                    .ok_or_else(|| perr(format!("malformed atom `{}`", atom_text)))?;
                if !atom_text.ends_with(')') {
                    return Err(perr(format!("malformed atom `{}`", atom_text)));
                }
                let rel = atom_text[..open].trim().to_string();
                let inner = &atom_text[open + 1..atom_text.len() - 1];
                let mut args = Vec::new();
                // split on top-level commas
                let mut depth = 0usize;
                let mut start = 0usize;
                for (i, c) in inner.char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        ',' if depth == 0 => {
                            args.push(crate::term::parse_term(inner[start..i].trim())?);
                            start = i + 1;
                        }
                        _ => {}
                    }
                }
                if !inner[start..].trim().is_empty() {
                    args.push(crate::term::parse_term(inner[start..].trim())?);
                }
                atoms.push(QfppAtom { rel, args });
            }
            rel_definitions.push((name.to_string(), atoms));
        } else {
            return Err(perr(format!("expected `func` or `rel`, found `{}`", line)));
        }
    }
    Ok(TranslationSpec {
        source_to_target,
        target_to_source,
        rel_definitions,
    })
}

/// The identity translation spec for a purely functional template: every
/// symbol maps to itself.
pub fn identity_spec(sig: &Signature) -> TranslationSpec {
    let mut fwd = Vec::new();
    for (f, arity) in sig.funcs() {
        fwd.push((
            f.clone(),
            Term::App(f.clone(), (0..*arity).map(Term::Var).collect()),
        ));
    }
    let mut rel_definitions = Vec::new();
    for (r, arity) in sig.rels() {
        rel_definitions.push((
            r.clone(),
            vec![QfppAtom {
                rel: r.clone(),
                args: (0..*arity).map(Term::Var).collect(),
            }],
        ));
    }
    TranslationSpec {
        source_to_target: fwd.clone(),
        target_to_source: fwd,
        rel_definitions,
    }
}

/// Quotient map composition helper: pull a homomorphism on the rewritten
/// instance back to the original domain.
pub fn pull_back(map: &[usize], h: &[usize]) -> Vec<usize> {
    map.iter().map(|&e| h[e]).collect()
}

/// `0_A`-style helper: check an enforced output really satisfies the ids.
pub fn check_enforced(x: &Structure, ids: &[Identity]) -> Result<bool> {
    Ok(find_violation(x, ids)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::count_homs;
    use crate::paper;
    use crate::signature::Signature;
    use crate::term::{parse_identities, semilattice_identities};

    #[test]
    fn already_satisfying_instance_is_untouched() {
        let x = Structure::algebra(Signature::of(&[("m", 2)], &[]), 2, vec![vec![0, 0, 0, 1]])
            .unwrap();
        let ids = semilattice_identities("m");
        let out = enforce_identities(&x, &ids).unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.instance, x);
        assert_eq!(out.map, vec![0, 1]);
    }

    #[test]
    fn idempotence_violation_collapses_to_a_point() {
        // s(0,0) = 1 violates idempotence at 0; the principal congruence of
        // (s(0,0), 0) = (1, 0) collapses everything
        let x = Structure::algebra(Signature::of(&[("m", 2)], &[]), 2, vec![vec![1, 1, 1, 1]])
            .unwrap();
        let ids = semilattice_identities("m");
        let out = enforce_identities(&x, &ids).unwrap();
        assert_eq!(out.instance.size(), 1);
        assert_eq!(out.steps, 1);
        assert!(check_enforced(&out.instance, &ids).unwrap());
    }

    #[test]
    fn step_count_is_bounded_by_size() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let sig = Signature::of(&[("m", 2)], &[]);
        let ids = semilattice_identities("m");
        for _ in 0..20 {
            let x = random_algebra(&sig, 6, &mut rng).unwrap();
            let out = enforce_identities(&x, &ids).unwrap();
            assert!(out.steps <= 5);
            assert!(check_enforced(&out.instance, &ids).unwrap());
        }
    }

    #[test]
    fn enforcement_preserves_hom_counts_into_semilattice_targets() {
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let sig = Signature::of(&[("m", 2)], &[]);
        let ids = semilattice_identities("m");
        let target =
            Structure::algebra(sig.clone(), 2, vec![vec![0, 0, 0, 1]]).unwrap();
        for _ in 0..25 {
            let x = random_algebra(&sig, 5, &mut rng).unwrap();
            let out = enforce_identities(&x, &ids).unwrap();
            assert_eq!(
                count_homs(&x, &target, false).unwrap(),
                count_homs(&out.instance, &target, false).unwrap()
            );
        }
    }

    fn sheffer_spec() -> TranslationSpec {
        let a = paper::sheffer_template();
        let b = paper::boolean_algebra_template();
        parse_tspec(paper::SHEFFER_TSPEC, a.signature(), b.signature()).unwrap()
    }

    #[test]
    fn sheffer_tspec_validates() {
        let a = paper::sheffer_template();
        let b = paper::boolean_algebra_template();
        let spec = sheffer_spec();
        assert!(validate_spec(&spec, &a, &b).is_ok());
    }

    #[test]
    fn compatibility_identities_include_constancy() {
        let a = paper::sheffer_template();
        let b = paper::boolean_algebra_template();
        let spec = sheffer_spec();
        let v = validate_spec(&spec, &a, &b).unwrap();
        let ids = compatibility_identities(&v).unwrap();
        // one for nor, one constancy identity each for 0 and 1
        assert_eq!(ids.len(), 3);
        // the nor identity is the doubled-negation form
        assert_eq!(
            ids[0].to_string(),
            "(nor x0 x1) = (nor (nor (nor x0 x0) (nor x0 x0)) (nor (nor x1 x1) (nor x1 x1)))"
        );
    }

    #[test]
    fn qfpp_reduce_requires_enforcement_first() {
        // left projection satisfies nothing useful; the doubled-negation
        // identity fails, so reduce must refuse
        let x = Structure::algebra(
            Signature::of(&[("nor", 2)], &[]),
            2,
            vec![vec![0, 0, 1, 1]],
        )
        .unwrap();
        let a = paper::sheffer_template();
        let b = paper::boolean_algebra_template();
        let spec = sheffer_spec();
        let v = validate_spec(&spec, &a, &b).unwrap();
        // this particular table happens to satisfy the nor identity but not
        // constancy of the 0-translation
        let r = qfpp_reduce(&x, &v);
        assert!(matches!(
            r,
            Err(Error::CompatibilityIdentitiesNotEnforced(_))
        ));
    }

    #[test]
    fn reduce_preserves_individual_homomorphisms() {
        use crate::hom::{enumerate_homs, is_homomorphism};
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let a = paper::sheffer_template();
        let b = paper::boolean_algebra_template();
        let spec = sheffer_spec();
        let v = validate_spec(&spec, &a, &b).unwrap();
        let ids = compatibility_identities(&v).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let sig = Signature::of(&[("nor", 2)], &[]);
        for _ in 0..30 {
            let x0 = random_algebra(&sig, 5, &mut rng).unwrap();
            let out = enforce_identities(&x0, &ids).unwrap();
            let y = qfpp_reduce(&out.instance, &v).unwrap();
            let into_a = enumerate_homs(&out.instance, &a, false).unwrap();
            let into_b = enumerate_homs(&y, &b, false).unwrap();
            assert_eq!(into_a, into_b);
            for h in &into_a {
                assert!(is_homomorphism(h, &y, &b).is_ok());
            }
        }
    }

    #[test]
    fn identity_spec_round_trips_instances() {
        let a = paper::example_4_12();
        let spec = identity_spec(a.signature());
        let v = validate_spec(&spec, &a, &a).unwrap();
        let y = qfpp_reduce(&a, &v).unwrap();
        assert_eq!(y, a);
    }

    #[test]
    fn tspec_relation_lines_parse_and_reduce() {
        // the identity translation of the 3-element mixed template, written
        // out as a spec file with a relation definition
        let a = paper::prop_5_1();
        let text = "func f = (f x0 x1)\nrel E : E(x0, x1)\n";
        let spec = parse_tspec(text, a.signature(), a.signature()).unwrap();
        let v = validate_spec(&spec, &a, &a).unwrap();
        let y = qfpp_reduce(&a, &v).unwrap();
        assert_eq!(y, a);
    }

    #[test]
    fn xor_template_translates_to_a_group_with_a_constant() {
        use crate::hom::hom_exists;
        use crate::random::random_algebra;
        use rand::SeedableRng;
        let a = paper::z_template();
        // the group structure on {0,1} expanded by the constant 1
        let b = Structure::algebra(
            Signature::of(&[("mul", 2), ("inv", 1), ("e", 0), ("one", 0)], &[]),
            2,
            vec![vec![0, 1, 1, 0], vec![0, 1], vec![0], vec![1]],
        )
        .unwrap();
        let text = "\n            func add = (mul x0 x1)\n            func add1 = (mul (mul x0 x1) (one))\n            func mul = (add x0 x1)\n            func inv = x0\n            func e = (add x0 x0)\n            func one = (add1 x0 x0)\n";
        let spec = parse_tspec(text, a.signature(), b.signature()).unwrap();
        let v = validate_spec(&spec, &a, &b).unwrap();
        let ids = compatibility_identities(&v).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let x0 = random_algebra(a.signature(), 5, &mut rng).unwrap();
            let out = enforce_identities(&x0, &ids).unwrap();
            let y = qfpp_reduce(&out.instance, &v).unwrap();
            assert_eq!(
                hom_exists(&out.instance, &a).unwrap(),
                hom_exists(&y, &b).unwrap()
            );
        }
    }

    #[test]
    fn boolean_algebra_ids_parse_and_hold_in_the_template() {
        let ids = parse_identities(paper::BOOLEAN_ALGEBRA_IDS).unwrap();
        let b = paper::boolean_algebra_template();
        assert!(check_enforced(&b, &ids).unwrap());
    }
}
