use std::fmt;
use std::str::FromStr;

use bitflags::bitflags;

use crate::error::{Error, Result};

bitflags! {
    /// A subset of `{∃, ∀, ∧, ∨, =, ≠, ¬}`.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
    pub struct Fragment: u8 {
        const EXISTS = 1;
        const FORALL = 1 << 1;
        const AND = 1 << 2;
        const OR = 1 << 3;
        const EQ = 1 << 4;
        const NEQ = 1 << 5;
        const NOT = 1 << 6;
    }
}

impl Fragment {
    /// `{∃, ∧}`
    pub const EA: Fragment = Fragment::EXISTS.union(Fragment::AND);
    /// `{∃, ∀, ∧}`
    pub const EFA: Fragment = Fragment::EA.union(Fragment::FORALL);
    /// `{∃, ∧, ∨}`
    pub const EAO: Fragment = Fragment::EA.union(Fragment::OR);
    /// `{∃, ∀, ∧, ∨}`
    pub const EFAO: Fragment = Fragment::EAO.union(Fragment::FORALL);

    pub const QUANTIFIERS: Fragment = Fragment::EXISTS.union(Fragment::FORALL);
    pub const CONNECTIVES: Fragment = Fragment::AND.union(Fragment::OR);

    pub fn is_canonical(self) -> bool {
        [Fragment::EA, Fragment::EFA, Fragment::EAO, Fragment::EFAO].contains(&self)
    }

    /// Swaps ∃ with ∀, ∧ with ∨ and = with ≠.
    pub fn dual(self) -> Fragment {
        let mut out = self & Fragment::NOT;
        for (x, y) in [
            (Fragment::EXISTS, Fragment::FORALL),
            (Fragment::AND, Fragment::OR),
            (Fragment::EQ, Fragment::NEQ),
        ] {
            if self.contains(x) {
                out |= y;
            }
            if self.contains(y) {
                out |= x;
            }
        }
        out
    }

    /// The quantifier and connective part that remains once `=`, `≠` are
    /// turned into relations and `¬` is pushed to the atoms.
    pub fn positive_core(self) -> Fragment {
        let core = self & (Fragment::QUANTIFIERS | Fragment::CONNECTIVES);
        if self.contains(Fragment::NOT) {
            core | core.dual()
        } else {
            core
        }
    }

    /// Fragments whose promise problem is trivially easy: no quantifier, no
    /// connective, or a single quantifier with the connective that commutes
    /// with it (`{∃, ∨}`, `{∀, ∧}`).
    pub fn is_trivial(self) -> bool {
        let core = self.positive_core();
        !core.intersects(Fragment::QUANTIFIERS)
            || !core.intersects(Fragment::CONNECTIVES)
            || core == Fragment::EXISTS | Fragment::OR
            || core == Fragment::FORALL | Fragment::AND
    }

    /// Name in the command-line vocabulary, e.g. `eao-forall-eq`.
    pub fn cli_name(self) -> Option<String> {
        let base = match self & (Fragment::QUANTIFIERS | Fragment::CONNECTIVES) {
            b if b == Fragment::EA => "ea",
            b if b == Fragment::EAO => "eao",
            b if b == Fragment::EFA => "eaforall",
            b if b == Fragment::EFAO => "eao-forall",
            _ => return None,
        };
        let mut name = base.to_string();
        for (flag, suffix) in [
            (Fragment::EQ, "-eq"),
            (Fragment::NEQ, "-neq"),
            (Fragment::NOT, "-neg"),
        ] {
            if self.contains(flag) {
                name.push_str(suffix);
            }
        }
        Some(name)
    }
}

const SYMBOLS: [(Fragment, &str, &str); 7] = [
    (Fragment::EXISTS, "∃", "exists"),
    (Fragment::FORALL, "∀", "forall"),
    (Fragment::AND, "∧", "and"),
    (Fragment::OR, "∨", "or"),
    (Fragment::EQ, "=", "eq"),
    (Fragment::NEQ, "≠", "neq"),
    (Fragment::NOT, "¬", "not"),
];

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = SYMBOLS
            .iter()
            .filter(|(flag, _, _)| self.contains(*flag))
            .map(|(_, sym, _)| *sym)
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Accepts the command-line vocabulary (`ea`, `eao`, `eaforall`,
/// `eao-forall`, each with optional `-eq`, `-neq`, `-neg` suffixes) or a
/// comma-separated list of `exists`, `forall`, `and`, `or`, `eq`, `neq`,
/// `not` (symbols `∃ ∀ ∧ ∨ = ≠ ¬` also work).
impl FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fragment> {
        let s = s.trim();
        let bad = || Error::Syntax {
            line: 1,
            column: 1,
            message: format!("unknown fragment `{s}`"),
        };
        for (prefix, base) in [
            ("eao-forall", Fragment::EFAO),
            ("eaforall", Fragment::EFA),
            ("eao", Fragment::EAO),
            ("ea", Fragment::EA),
        ] {
            if let Some(mut rest) = s.strip_prefix(prefix) {
                if !(rest.is_empty() || rest.starts_with('-')) {
                    continue;
                }
                let mut out = base;
                while !rest.is_empty() {
                    let (flag, tail) = if let Some(t) = rest.strip_prefix("-neq") {
                        (Fragment::NEQ, t)
                    } else if let Some(t) = rest.strip_prefix("-neg") {
                        (Fragment::NOT, t)
                    } else if let Some(t) = rest.strip_prefix("-eq") {
                        (Fragment::EQ, t)
                    } else {
                        return Err(bad());
                    };
                    out |= flag;
                    rest = tail;
                }
                return Ok(out);
            }
        }
        let s = s.trim_start_matches('{').trim_end_matches('}');
        let mut out = Fragment::empty();
        for word in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            let (flag, _, _) = SYMBOLS
                .iter()
                .find(|(_, sym, name)| word == *sym || word.eq_ignore_ascii_case(name))
                .ok_or_else(bad)?;
            out |= *flag;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_vocabulary_round_trips() {
        for name in [
            "ea",
            "eao",
            "eaforall",
            "eao-forall",
            "eao-forall-eq",
            "ea-neq-neg",
        ] {
            let f: Fragment = name.parse().unwrap();
            assert_eq!(f.cli_name().unwrap(), name);
        }
        assert_eq!(
            "eao-forall-eq".parse::<Fragment>().unwrap(),
            Fragment::EFAO | Fragment::EQ
        );
        assert!("eax".parse::<Fragment>().is_err());
    }

    #[test]
    fn lists_and_symbols() {
        let f: Fragment = "forall, or".parse().unwrap();
        assert_eq!(f, Fragment::FORALL | Fragment::OR);
        assert_eq!("{∃,∧}".parse::<Fragment>().unwrap(), Fragment::EA);
        assert_eq!(Fragment::EFAO.to_string(), "{∃,∀,∧,∨}");
    }

    #[test]
    fn duals_and_trivial_cases() {
        assert_eq!((Fragment::FORALL | Fragment::OR).dual(), Fragment::EA);
        assert_eq!(
            (Fragment::EA | Fragment::NOT).positive_core(),
            Fragment::EFAO
        );
        assert!(Fragment::EXISTS.is_trivial());
        assert!(Fragment::CONNECTIVES.is_trivial());
        assert!((Fragment::EXISTS | Fragment::OR).is_trivial());
        assert!(!Fragment::EA.is_trivial());
    }
}
