//! Built-in instances and identity files.
//!
//! Everything here is embedded as `.finstr` / `.ids` / `.tspec` text and
//! parsed on access, so the parsers are exercised on every use.

use crate::error::Result;
use crate::format::parse_structure;
use crate::structure::Structure;
use crate::term::{parse_identities, Identity};

pub const EXAMPLE_4_12_TEXT: &str = include_str!("../assets/example-4-12.finstr");
pub const PROP_5_1_TEXT: &str = include_str!("../assets/prop-5-1.finstr");
pub const PROP_6_1_TEXT: &str = include_str!("../assets/prop-6-1.finstr");
pub const SHEFFER_TEXT: &str = include_str!("../assets/sheffer.finstr");
pub const Z_TEMPLATE_TEXT: &str = include_str!("../assets/z-template.finstr");
pub const BOOLEAN_ALGEBRA_TEXT: &str = include_str!("../assets/boolean-algebra.finstr");

pub const SEMILATTICE_IDS: &str = include_str!("../assets/semilattice.ids");
pub const GROUP_IDS: &str = include_str!("../assets/group.ids");
pub const BOOLEAN_ALGEBRA_IDS: &str = include_str!("../assets/boolean-algebra.ids");
pub const SHEFFER_TSPEC: &str = include_str!("../assets/sheffer.tspec");

fn must_parse(text: &str) -> Structure {
    parse_structure(text).expect("embedded instance parses")
}

/// The 3-element algebra `({0,1,2}; o)` whose only non-trivial congruence
/// glues 0 and 1, with `o` inducing a semilattice on that block.
pub fn example_4_12() -> Structure {
    must_parse(EXAMPLE_4_12_TEXT)
}

/// The 3-element structure with the disequality relation `E` and the binary
/// operation `f` whose only non-trivial congruence glues 0 and 2.
pub fn prop_5_1() -> Structure {
    must_parse(PROP_5_1_TEXT)
}

/// The 10-element instance over the `nor` signature with no homomorphism to
/// the `nor` template; see [`crate::width::build_not23_instance`] for the
/// programmatic construction this text mirrors.
pub fn prop_6_1_instance() -> Structure {
    must_parse(PROP_6_1_TEXT)
}

/// The two-element template with the Sheffer stroke, `x nor y = ¬x ∧ ¬y`.
pub fn sheffer_template() -> Structure {
    must_parse(SHEFFER_TEXT)
}

/// The two-element template with operations `x + y` and `x + y + 1`.
pub fn z_template() -> Structure {
    must_parse(Z_TEMPLATE_TEXT)
}

/// The two-element Boolean algebra `({0,1}; and, or, not, 0, 1)`.
pub fn boolean_algebra_template() -> Structure {
    must_parse(BOOLEAN_ALGEBRA_TEXT)
}

/// Parse one of the shipped identity files by name (`semilattice.ids`,
/// `group.ids`, `boolean-algebra.ids`).
pub fn builtin_identities(name: &str) -> Option<Result<Vec<Identity>>> {
    let text = match name {
        "semilattice.ids" | "semilattice" => SEMILATTICE_IDS,
        "group.ids" | "group" => GROUP_IDS,
        "boolean-algebra.ids" | "boolean-algebra" => BOOLEAN_ALGEBRA_IDS,
        _ => return None,
    };
    Some(parse_identities(text))
}

/// Named built-in instances for the `paper` subcommand.
pub fn builtin_instance(name: &str) -> Option<Structure> {
    match name {
        "example-4-12" => Some(example_4_12()),
        "prop-5-1" => Some(prop_5_1()),
        "prop-6-1" => Some(prop_6_1_instance()),
        "sheffer" => Some(sheffer_template()),
        "z-template" => Some(z_template()),
        "boolean-algebra" => Some(boolean_algebra_template()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_have_expected_shapes() {
        assert_eq!(example_4_12().size(), 3);
        assert_eq!(prop_5_1().size(), 3);
        assert_eq!(prop_6_1_instance().size(), 10);
        assert_eq!(sheffer_template().size(), 2);
        assert_eq!(z_template().signature().funcs().len(), 2);
        assert_eq!(boolean_algebra_template().signature().funcs().len(), 5);
    }

    #[test]
    fn example_4_12_matches_printed_table() {
        let a = example_4_12();
        let o = a.op_by_name("o").unwrap();
        assert_eq!(o.values(), &[0, 1, 2, 1, 1, 2, 1, 0, 2]);
    }

    #[test]
    fn prop_6_1_uses_the_refutation_entry() {
        // a2 nor (bar a3) = a3, i.e. indices 3, 9 -> 4
        let x = prop_6_1_instance();
        assert_eq!(x.op_by_name("nor").unwrap().apply(&[3, 9]), 4);
    }

    #[test]
    fn round_trip_on_all_builtins() {
        use crate::format::{parse_structure, serialize_structure};
        for name in [
            "example-4-12",
            "prop-5-1",
            "prop-6-1",
            "sheffer",
            "z-template",
            "boolean-algebra",
        ] {
            let s = builtin_instance(name).unwrap();
            let back = parse_structure(&serialize_structure(&s)).unwrap();
            assert_eq!(back, s, "round trip failed for {}", name);
        }
    }
}
