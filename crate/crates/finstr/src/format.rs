//! The `.finstr` text format.
//!
//! UTF-8, line-oriented; lines whose first non-blank character is `#` are
//! comments. The first significant line is `domain <n>`, followed by any
//! number of blocks:
//!
//! ```text
//! op <name> <arity>
//! <n^arity whitespace-separated integers, spanning any number of lines>
//! rel <name> <arity> <m>
//! <m lines of `arity` integers each>
//! ```
//!
//! Serialization emits blocks in signature order with relation tuples sorted
//! lexicographically, so parse ∘ serialize is the identity on structures.

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::structure::Structure;
use crate::table::table_len;

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn last_line(&self) -> usize {
        self.lines.last().map(|(n, _)| *n).unwrap_or(0)
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_int(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("expected an integer, found `{}`", tok)))
}

/// Parse a structure from `.finstr` text.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut lines = Lines::new(text);
    let (dline, dtext) = lines
        .next()
        .ok_or_else(|| err(1, "empty input, expected `domain <n>`"))?;
    let mut toks = dtext.split_whitespace();
    match toks.next() {
        Some("domain") => {}
        Some(other) => return Err(err(dline, format!("expected `domain`, found `{}`", other))),
        None => unreachable!(),
    }
    let size = parse_int(dline, toks.next().ok_or_else(|| err(dline, "missing domain size"))?)?;
    if size == 0 {
        return Err(err(dline, "domain size must be positive"));
    }
    if let Some(extra) = toks.next() {
        return Err(err(dline, format!("unexpected token `{}`", extra)));
    }

    let mut funcs: Vec<(String, usize)> = Vec::new();
    let mut rels: Vec<(String, usize)> = Vec::new();
    let mut ops: Vec<Vec<usize>> = Vec::new();
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut names = std::collections::HashSet::new();

    while let Some((line, text)) = lines.next() {
        let mut toks = text.split_whitespace();
        let kind = toks.next().unwrap();
        match kind {
            "op" => {
                let name = toks
                    .next()
                    .ok_or_else(|| err(line, "missing operation name"))?
                    .to_string();
                let arity = parse_int(
                    line,
                    toks.next().ok_or_else(|| err(line, "missing arity"))?,
                )?;
                if let Some(extra) = toks.next() {
                    return Err(err(line, format!("unexpected token `{}`", extra)));
                }
                if !names.insert(name.clone()) {
                    return Err(err(line, format!("duplicate symbol `{}`", name)));
                }
                let want =
                    table_len(size, arity).map_err(|_| err(line, "table too large"))?;
                let mut values = Vec::with_capacity(want);
                let mut vline = line;
                while values.len() < want {
                    let (l, t) = lines.next().ok_or_else(|| {
                        err(
                            lines.last_line(),
                            format!(
                                "table for `{}` has {} entries, expected {}^{} = {}",
                                name,
                                values.len(),
                                size,
                                arity,
                                want
                            ),
                        )
                    })?;
                    vline = l;
                    for tok in t.split_whitespace() {
                        let v = parse_int(l, tok)?;
                        if v >= size {
                            return Err(err(l, format!("element {} out of range [0, {})", v, size)));
                        }
                        values.push(v);
                    }
                }
                if values.len() != want {
                    return Err(err(
                        vline,
                        format!(
                            "table for `{}` has {} entries, expected {}^{} = {}",
                            name,
                            values.len(),
                            size,
                            arity,
                            want
                        ),
                    ));
                }
                funcs.push((name, arity));
                ops.push(values);
            }
            "rel" => {
                let name = toks
                    .next()
                    .ok_or_else(|| err(line, "missing relation name"))?
                    .to_string();
                let arity = parse_int(
                    line,
                    toks.next().ok_or_else(|| err(line, "missing arity"))?,
                )?;
                let count = parse_int(
                    line,
                    toks.next()
                        .ok_or_else(|| err(line, "missing tuple count"))?,
                )?;
                if let Some(extra) = toks.next() {
                    return Err(err(line, format!("unexpected token `{}`", extra)));
                }
                if arity == 0 {
                    return Err(err(line, "relation arity must be positive"));
                }
                if !names.insert(name.clone()) {
                    return Err(err(line, format!("duplicate symbol `{}`", name)));
                }
                let mut set = Vec::with_capacity(count);
                for _ in 0..count {
                    let (l, t) = lines.next().ok_or_else(|| {
                        err(
                            lines.last_line(),
                            format!("missing tuples for relation `{}`", name),
                        )
                    })?;
                    let tup: Vec<usize> = t
                        .split_whitespace()
                        .map(|tok| parse_int(l, tok))
                        .collect::<Result<_>>()?;
                    if tup.len() != arity {
                        return Err(err(
                            l,
                            format!("tuple has {} entries, expected {}", tup.len(), arity),
                        ));
                    }
                    if let Some(&v) = tup.iter().find(|&&v| v >= size) {
                        return Err(err(l, format!("element {} out of range [0, {})", v, size)));
                    }
                    set.push(tup);
                }
                rels.push((name, arity));
                tuples.push(set);
            }
            other => {
                return Err(err(
                    line,
                    format!("expected `op` or `rel`, found `{}`", other),
                ))
            }
        }
    }
    let _ = lines.peek();
    let sig = Signature::new(funcs, rels).map_err(|e| match e {
        Error::DuplicateSymbol(n) => err(0, format!("duplicate symbol `{}`", n)),
        other => other,
    })?;
    Structure::new(sig, size, ops, tuples)
}

/// Serialize a structure to `.finstr` text.
pub fn serialize_structure(s: &Structure) -> String {
    let mut out = String::new();
    out.push_str(&format!("domain {}\n", s.size()));
    for ((name, arity), table) in s.signature().funcs().iter().zip(s.ops()) {
        out.push_str(&format!("op {} {}\n", name, arity));
        let row = if *arity <= 1 { table.values().len().max(1) } else { s.size() };
        for chunk in table.values().chunks(row) {
            let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    for ((name, arity), set) in s.signature().rels().iter().zip(s.rels()) {
        out.push_str(&format!("rel {} {} {}\n", name, arity, set.len()));
        for t in set {
            let line: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_element_meet() {
        let s = parse_structure("domain 2\nop m 2\n0 0 0 1\n").unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.op_by_name("m").unwrap().values(), &[0, 0, 0, 1]);
    }

    #[test]
    fn parses_example_4_12_table() {
        let text = "domain 3\nop o 2\n0 1 2\n1 1 2\n1 0 2\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.op_by_name("o").unwrap().values(), &[0, 1, 2, 1, 1, 2, 1, 0, 2]);
    }

    #[test]
    fn wrong_table_length_is_an_error() {
        let e = parse_structure("domain 2\nop f 2\n0 0 0\n").unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("expected 2^2 = 4"), "{}", msg);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn out_of_range_and_duplicates_are_errors() {
        assert!(matches!(
            parse_structure("domain 2\nop f 1\n0 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_structure("domain 2\nop f 1\n0 1\nrel f 1 0\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a structure\n\ndomain 2\n# the operation\nop f 1\n1 0\nrel R 2 1\n0 1\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.rel_by_name("R").unwrap().len(), 1);
    }

    #[test]
    fn relation_tuples_must_sit_on_their_own_lines() {
        let text = "domain 2\nrel R 2 2\n0 1 1 0\n";
        assert!(parse_structure(text).is_err());
    }
}
