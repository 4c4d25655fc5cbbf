use crate::error::{Error, Result};

/// A finite signature: named function symbols and named relation symbols,
/// each with an arity. Names are unique across both lists, nonempty, and
/// contain no whitespace. Function symbols may be nullary; relation symbols
/// have positive arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    funcs: Vec<(String, usize)>,
    rels: Vec<(String, usize)>,
}

fn check_token(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
        return Err(Error::BadTable {
            symbol: name.to_string(),
            msg: "symbol names must be nonempty and contain no whitespace".into(),
        });
    }
    Ok(())
}

impl Signature {
    pub fn new(funcs: Vec<(String, usize)>, rels: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (name, _) in funcs.iter().chain(rels.iter()) {
            check_token(name)?;
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        for (name, k) in &rels {
            if *k == 0 {
                return Err(Error::BadTable {
                    symbol: name.clone(),
                    msg: "relation symbols must have positive arity".into(),
                });
            }
        }
        Ok(Signature { funcs, rels })
    }

    /// Convenience constructor from string slices; panics on invalid input.
    pub fn of(funcs: &[(&str, usize)], rels: &[(&str, usize)]) -> Self {
        Signature::new(
            funcs.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
            rels.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
        )
        .expect("invalid signature literal")
    }

    pub fn funcs(&self) -> &[(String, usize)] {
        &self.funcs
    }

    pub fn rels(&self) -> &[(String, usize)] {
        &self.rels
    }

    pub fn func_index(&self, name: &str) -> Option<usize> {
        self.funcs.iter().position(|(n, _)| n == name)
    }

    pub fn rel_index(&self, name: &str) -> Option<usize> {
        self.rels.iter().position(|(n, _)| n == name)
    }

    pub fn func_arity(&self, name: &str) -> Result<usize> {
        self.func_index(name)
            .map(|i| self.funcs[i].1)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.func_index(name).is_some() || self.rel_index(name).is_some()
    }

    pub fn is_algebraic(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn is_relational(&self) -> bool {
        self.funcs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_names() {
        let r = Signature::new(
            vec![("f".into(), 2)],
            vec![("f".into(), 1)],
        );
        assert_eq!(r, Err(Error::DuplicateSymbol("f".into())));
    }

    #[test]
    fn rejects_whitespace_and_empty_tokens() {
        assert!(Signature::new(vec![("a b".into(), 1)], vec![]).is_err());
        assert!(Signature::new(vec![("".into(), 1)], vec![]).is_err());
    }

    #[test]
    fn rejects_nullary_relations() {
        assert!(Signature::new(vec![], vec![("R".into(), 0)]).is_err());
    }
}
