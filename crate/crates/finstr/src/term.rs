//! Terms and identities over a signature.
//!
//! Text form: prefix s-expressions with variables `x0 x1 ...` and
//! applications `(f t1 ... tk)`; a nullary symbol is written `(f)`.
//! Identity files hold one `<term> = <term>` per line, `#` comments.

use std::fmt;

use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::table::{next_tuple, OpTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    /// Largest variable index plus one; 0 for ground terms.
    pub fn var_count(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(|t| t.var_count()).max().unwrap_or(0),
        }
    }

    /// Replace variable `i` by `subst[i]`; indices past the end are kept.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst.get(*i).cloned().unwrap_or(Term::Var(*i)),
            Term::App(name, args) => Term::App(
                name.clone(),
                args.iter().map(|t| t.substitute(subst)).collect(),
            ),
        }
    }

    /// Replace each function symbol by a term, wiring the symbol's arguments
    /// into the replacement's variables. Symbols absent from `map` are kept.
    pub fn replace_symbols(&self, map: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(name, args) => {
                let new_args: Vec<Term> =
                    args.iter().map(|t| t.replace_symbols(map)).collect();
                match map(name) {
                    Some(body) => body.substitute(&new_args),
                    None => Term::App(name.clone(), new_args),
                }
            }
        }
    }

    /// Bottom-up evaluation in a structure under an assignment to variables.
    pub fn eval(&self, s: &Structure, assignment: &[usize]) -> Result<usize> {
        match self {
            Term::Var(i) => assignment.get(*i).copied().ok_or_else(|| Error::ArityMismatch {
                symbol: format!("x{}", i),
                expected: i + 1,
                got: assignment.len(),
            }),
            Term::App(name, args) => {
                let table = s.op_by_name(name)?;
                if table.arity() != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: name.clone(),
                        expected: table.arity(),
                        got: args.len(),
                    });
                }
                let vals: Vec<usize> = args
                    .iter()
                    .map(|t| t.eval(s, assignment))
                    .collect::<Result<_>>()?;
                Ok(table.apply(&vals))
            }
        }
    }

    /// The operation table induced by this term at a given arity.
    pub fn table(&self, s: &Structure, arity: usize) -> Result<OpTable> {
        let n = s.size();
        let mut values = Vec::new();
        let mut args = vec![0usize; arity];
        loop {
            values.push(self.eval(s, &args)?);
            if !next_tuple(&mut args, n) {
                break;
            }
        }
        OpTable::new(arity, n, values)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{}", i),
            Term::App(name, args) => {
                write!(f, "({}", name)?;
                for a in args {
                    write!(f, " {}", a)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Evaluate a term in a structure under an assignment.
pub fn eval_term(t: &Term, s: &Structure, assignment: &[usize]) -> Result<usize> {
    t.eval(s, assignment)
}

/// A pair of terms asserted equal under all assignments to `0..var_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub var_count: usize,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let var_count = lhs.var_count().max(rhs.var_count());
        Identity { lhs, rhs, var_count }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Exhaustively check an identity; returns the lexicographically first
/// counterexample assignment on failure.
pub fn satisfies_identity(s: &Structure, id: &Identity) -> Result<Option<Vec<usize>>> {
    let mut args = vec![0usize; id.var_count];
    loop {
        if id.lhs.eval(s, &args)? != id.rhs.eval(s, &args)? {
            return Ok(Some(args));
        }
        if !next_tuple(&mut args, s.size()) {
            return Ok(None);
        }
    }
}

/// Check a whole identity set; returns the first violated identity's index
/// and counterexample.
pub fn find_violation(s: &Structure, ids: &[Identity]) -> Result<Option<(usize, Vec<usize>)>> {
    for (i, id) in ids.iter().enumerate() {
        if let Some(witness) = satisfies_identity(s, id)? {
            return Ok(Some((i, witness)));
        }
    }
    Ok(None)
}

fn tokenize(text: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' | '=' => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn parse_term_at(toks: &[String], pos: &mut usize, line: usize) -> Result<Term> {
    let err = |msg: String| Error::Parse { line, msg };
    let tok = toks
        .get(*pos)
        .ok_or_else(|| err("unexpected end of term".into()))?;
    *pos += 1;
    if tok == "(" {
        let head = toks
            .get(*pos)
            .ok_or_else(|| err("missing symbol after `(`".into()))?
            .clone();
        if head == "(" || head == ")" || head == "=" {
            return Err(err(format!("expected a symbol, found `{}`", head)));
        }
        *pos += 1;
        let mut args = Vec::new();
        loop {
            match toks.get(*pos) {
                Some(t) if t == ")" => {
                    *pos += 1;
                    return Ok(Term::App(head, args));
                }
                Some(_) => args.push(parse_term_at(toks, pos, line)?),
                None => return Err(err("unclosed `(`".into())),
            }
        }
    } else if tok == ")" || tok == "=" {
        Err(err(format!("unexpected `{}`", tok)))
    } else if let Some(ix) = tok.strip_prefix('x') {
        match ix.parse::<usize>() {
            Ok(i) => Ok(Term::Var(i)),
            Err(_) => Err(err(format!(
                "bare token `{}` is not a variable; nullary applications are written `({})`",
                tok, tok
            ))),
        }
    } else {
        Err(err(format!(
            "bare token `{}` is not a variable; nullary applications are written `({})`",
            tok, tok
        )))
    }
}

/// Parse a single term.
pub fn parse_term(text: &str) -> Result<Term> {
    let toks = tokenize(text);
    let mut pos = 0;
    let t = parse_term_at(&toks, &mut pos, 1)?;
    if pos != toks.len() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("trailing tokens after term: `{}`", toks[pos]),
        });
    }
    Ok(t)
}

/// Parse an identity file: one `<term> = <term>` per line, `#` comments.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_n = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokenize(trimmed);
        let mut pos = 0;
        let lhs = parse_term_at(&toks, &mut pos, line_n)?;
        match toks.get(pos) {
            Some(t) if t == "=" => pos += 1,
            _ => {
                return Err(Error::Parse {
                    line: line_n,
                    msg: "expected `=` between terms".into(),
                })
            }
        }
        let rhs = parse_term_at(&toks, &mut pos, line_n)?;
        if pos != toks.len() {
            return Err(Error::Parse {
                line: line_n,
                msg: "trailing tokens after identity".into(),
            });
        }
        out.push(Identity::new(lhs, rhs));
    }
    Ok(out)
}

/// The semilattice identities (idempotent, commutative, associative) over a
/// binary symbol.
pub fn semilattice_identities(sym: &str) -> Vec<Identity> {
    let s = |a: Term, b: Term| Term::app(sym, vec![a, b]);
    let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
    vec![
        Identity::new(s(x.clone(), x.clone()), x.clone()),
        Identity::new(s(x.clone(), y.clone()), s(y.clone(), x.clone())),
        Identity::new(
            s(s(x.clone(), y.clone()), z.clone()),
            s(x.clone(), s(y.clone(), z.clone())),
        ),
    ]
}

/// The group identities over `mul/2`, `inv/1`, `e/0` symbol names.
pub fn group_identities(mul: &str, inv: &str, e: &str) -> Vec<Identity> {
    let m = |a: Term, b: Term| Term::app(mul, vec![a, b]);
    let i = |a: Term| Term::app(inv, vec![a]);
    let unit = || Term::app(e, vec![]);
    let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
    vec![
        Identity::new(
            m(m(x.clone(), y.clone()), z.clone()),
            m(x.clone(), m(y.clone(), z.clone())),
        ),
        Identity::new(m(x.clone(), unit()), x.clone()),
        Identity::new(m(unit(), x.clone()), x.clone()),
        Identity::new(m(x.clone(), i(x.clone())), unit()),
        Identity::new(m(i(x.clone()), x.clone()), unit()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::signature::Signature;

    fn nor_algebra() -> Structure {
        Structure::algebra(Signature::of(&[("nor", 2)], &[]), 2, vec![vec![1, 0, 0, 0]]).unwrap()
    }

    fn meet_algebra() -> Structure {
        Structure::algebra(Signature::of(&[("and", 2)], &[]), 2, vec![vec![0, 0, 0, 1]]).unwrap()
    }

    #[test]
    fn eval_projection_term() {
        let a = nor_algebra();
        assert_eq!(Term::var(0).eval(&a, &[1, 0]).unwrap(), 1);
    }

    #[test]
    fn eval_nor_self_application() {
        let a = nor_algebra();
        let t = parse_term("(nor x0 x0)").unwrap();
        assert_eq!(t.eval(&a, &[1]).unwrap(), 0);
    }

    #[test]
    fn eval_nested_term_on_example_4_12() {
        let a = paper::example_4_12();
        let t = parse_term("(o (o x0 x1) x2)").unwrap();
        // o(0,1) = 1, then o(1,2) = 2
        assert_eq!(t.eval(&a, &[0, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn eval_reports_unknown_symbols_and_arity() {
        let a = nor_algebra();
        let t = parse_term("(meet x0 x1)").unwrap();
        assert!(matches!(t.eval(&a, &[0, 0]), Err(Error::UnknownSymbol(_))));
        let t = parse_term("(nor x0)").unwrap();
        assert!(matches!(t.eval(&a, &[0]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn nor_is_commutative() {
        let a = nor_algebra();
        let id = Identity::new(
            parse_term("(nor x0 x1)").unwrap(),
            parse_term("(nor x1 x0)").unwrap(),
        );
        assert_eq!(satisfies_identity(&a, &id).unwrap(), None);
    }

    #[test]
    fn meet_satisfies_semilattice_identities() {
        let a = meet_algebra();
        for id in semilattice_identities("and") {
            assert_eq!(satisfies_identity(&a, &id).unwrap(), None, "{}", id);
        }
    }

    #[test]
    fn first_counterexample_is_lexicographic() {
        let a = meet_algebra();
        let id = Identity::new(
            parse_term("(and x0 x1)").unwrap(),
            parse_term("x0").unwrap(),
        );
        // (0,0) ok, (0,1) ok (0 = 0), (1,0) fails: and = 0 but x0 = 1
        assert_eq!(satisfies_identity(&a, &id).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn identity_file_round_trip() {
        let ids = parse_identities(paper::SEMILATTICE_IDS).unwrap();
        assert_eq!(ids.len(), 3);
        assert_eq!(ids[0].to_string(), "(m x0 x0) = x0");
        let ids = parse_identities(paper::GROUP_IDS).unwrap();
        assert_eq!(ids.len(), 5);
        let ids = parse_identities(paper::BOOLEAN_ALGEBRA_IDS).unwrap();
        assert_eq!(ids.len(), 12);
    }

    #[test]
    fn replace_symbols_substitutes_arguments() {
        // and(x,y) in nor terms: (nor (nor x x) (nor y y))
        let t = parse_term("(and (not x0) (not x1))").unwrap();
        let map = |name: &str| -> Option<Term> {
            match name {
                "and" => Some(parse_term("(nor (nor x0 x0) (nor x1 x1))").unwrap()),
                "not" => Some(parse_term("(nor x0 x0)").unwrap()),
                _ => None,
            }
        };
        let replaced = t.replace_symbols(&map);
        let nor = nor_algebra();
        // the composite should induce the nor table itself
        let table = replaced.table(&nor, 2).unwrap();
        assert_eq!(table.values(), &[1, 0, 0, 0]);
    }
}
