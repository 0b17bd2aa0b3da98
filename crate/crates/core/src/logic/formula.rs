use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::structure::Signature;

use super::fragment::Fragment;

pub type Var = String;

/// First-order formulas over a relational signature.
///
/// `And` and `Or` always have at least two children; the constructors
/// [`Formula::and`] and [`Formula::or`] flatten nested connectives of the
/// same kind and collapse single children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { symbol: String, args: Vec<Var> },
    Eq(Var, Var),
    Neq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

/// Size figures for a formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizeStats {
    pub variables: usize,
    pub atoms: usize,
    pub quantifier_depth: usize,
    pub nodes: usize,
}

impl fmt::Display for SizeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variables={} atoms={} quantifier_depth={} nodes={}",
            self.variables, self.atoms, self.quantifier_depth, self.nodes
        )
    }
}

impl Formula {
    pub fn atom(symbol: impl Into<String>, args: &[&str]) -> Formula {
        Formula::Atom {
            symbol: symbol.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn atom_owned(symbol: impl Into<String>, args: Vec<Var>) -> Formula {
        Formula::Atom {
            symbol: symbol.into(),
            args,
        }
    }

    pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::Eq(x.into(), y.into())
    }

    pub fn neq(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::Neq(x.into(), y.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; panics on an empty list.
    pub fn and(children: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::junction(children, true)
    }

    /// Disjunction; panics on an empty list.
    pub fn or(children: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::junction(children, false)
    }

    fn junction(children: impl IntoIterator<Item = Formula>, conj: bool) -> Formula {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Formula::And(cs) if conj => flat.extend(cs),
                Formula::Or(cs) if !conj => flat.extend(cs),
                c => flat.push(c),
            }
        }
        assert!(!flat.is_empty(), "empty connective");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else if conj {
            Formula::And(flat)
        } else {
            Formula::Or(flat)
        }
    }

    pub fn exists(v: impl Into<Var>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: impl Into<Var>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn quantify(q: Quantifier, v: impl Into<Var>, f: Formula) -> Formula {
        match q {
            Quantifier::Exists => Formula::exists(v, f),
            Quantifier::Forall => Formula::forall(v, f),
        }
    }

    /// Wraps `f` in quantifiers; the first variable is outermost.
    pub fn exists_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    pub fn forall_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Eq(..) | Formula::Neq(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_quantifier_free),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Eq(..) | Formula::Neq(..) => false,
            Formula::Not(_) => true,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().any(Formula::has_negation),
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_negation(),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        fn go<'a>(f: &'a Formula, bound: &mut Vec<&'a str>, out: &mut Vec<Var>) {
            let see = |v: &'a str, bound: &Vec<&'a str>, out: &mut Vec<Var>| {
                if !bound.contains(&v) && !out.iter().any(|o| o == v) {
                    out.push(v.to_string());
                }
            };
            match f {
                Formula::Atom { args, .. } => {
                    for a in args {
                        see(a, bound, out);
                    }
                }
                Formula::Eq(x, y) | Formula::Neq(x, y) => {
                    see(x, bound, out);
                    see(y, bound, out);
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(cs) | Formula::Or(cs) => {
                    for c in cs {
                        go(c, bound, out);
                    }
                }
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(v);
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom { args, .. } => out.extend(args.iter().cloned()),
            Formula::Eq(x, y) | Formula::Neq(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(visit),
            Formula::And(cs) | Formula::Or(cs) => {
                for c in cs {
                    c.visit(visit);
                }
            }
            _ => {}
        }
    }

    /// Smallest fragment containing every quantifier, connective and
    /// built-in predicate that occurs.
    pub fn fragment_of(&self) -> Fragment {
        let mut out = Fragment::empty();
        self.visit(&mut |f| {
            out |= match f {
                Formula::Atom { .. } => Fragment::empty(),
                Formula::Eq(..) => Fragment::EQ,
                Formula::Neq(..) => Fragment::NEQ,
                Formula::Not(_) => Fragment::NOT,
                Formula::And(_) => Fragment::AND,
                Formula::Or(_) => Fragment::OR,
                Formula::Exists(..) => Fragment::EXISTS,
                Formula::Forall(..) => Fragment::FORALL,
            }
        });
        out
    }

    /// Checks atoms against a signature.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            if let Formula::Atom { symbol, args } = f {
                match sig.arity_of(symbol) {
                    None => err = Some(Error::UnknownSymbol(symbol.clone())),
                    Some(ar) if ar != args.len() => {
                        err = Some(Error::ArityMismatch {
                            symbol: symbol.clone(),
                            expected: ar,
                            found: args.len(),
                        })
                    }
                    _ => {}
                }
            }
        });
        err.map_or(Ok(()), Err)
    }

    pub fn size_stats(&self) -> SizeStats {
        fn depth(f: &Formula) -> usize {
            match f {
                Formula::Exists(_, g) | Formula::Forall(_, g) => 1 + depth(g),
                Formula::Not(g) => depth(g),
                Formula::And(cs) | Formula::Or(cs) => cs.iter().map(depth).max().unwrap_or(0),
                _ => 0,
            }
        }
        let mut atoms = 0;
        let mut nodes = 0;
        self.visit(&mut |f| {
            nodes += 1;
            if matches!(f, Formula::Atom { .. } | Formula::Eq(..) | Formula::Neq(..)) {
                atoms += 1;
            }
        });
        SizeStats {
            variables: self.all_vars().len(),
            atoms,
            quantifier_depth: depth(self),
            nodes,
        }
    }

    /// Renames free occurrences according to `map`. Bound variables that
    /// would capture a substituted name are renamed first.
    pub fn substitute(&self, map: &HashMap<Var, Var>) -> Formula {
        let mut used: BTreeSet<Var> = self.all_vars();
        used.extend(map.values().cloned());
        let mut counter = 0usize;
        self.subst(map, &mut used, &mut counter)
    }

    fn subst(
        &self,
        map: &HashMap<Var, Var>,
        used: &mut BTreeSet<Var>,
        counter: &mut usize,
    ) -> Formula {
        let r = |v: &Var| map.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            Formula::Atom { symbol, args } => Formula::Atom {
                symbol: symbol.clone(),
                args: args.iter().map(r).collect(),
            },
            Formula::Eq(x, y) => Formula::Eq(r(x), r(y)),
            Formula::Neq(x, y) => Formula::Neq(r(x), r(y)),
            Formula::Not(g) => Formula::not(g.subst(map, used, counter)),
            Formula::And(cs) => {
                Formula::And(cs.iter().map(|c| c.subst(map, used, counter)).collect())
            }
            Formula::Or(cs) => {
                Formula::Or(cs.iter().map(|c| c.subst(map, used, counter)).collect())
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let mut inner = map.clone();
                inner.remove(v);
                let captures = inner.values().any(|t| t == v);
                let bound = if captures {
                    let fresh = fresh_var(v, used, counter);
                    inner.insert(v.clone(), fresh.clone());
                    fresh
                } else {
                    v.clone()
                };
                let body = g.subst(&inner, used, counter);
                match self {
                    Formula::Exists(..) => Formula::exists(bound, body),
                    _ => Formula::forall(bound, body),
                }
            }
        }
    }

    /// Renames relation symbols according to `map`.
    pub fn rename_symbols(&self, map: &HashMap<String, String>) -> Formula {
        self.map_atoms(&mut |symbol, args| {
            Formula::atom_owned(
                map.get(symbol)
                    .cloned()
                    .unwrap_or_else(|| symbol.to_string()),
                args.to_vec(),
            )
        })
    }

    /// Rebuilds the formula with every relational atom replaced by `f`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&str, &[Var]) -> Formula) -> Formula {
        match self {
            Formula::Atom { symbol, args } => f(symbol, args),
            Formula::Eq(..) | Formula::Neq(..) => self.clone(),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(cs) => Formula::and(cs.iter().map(|c| c.map_atoms(f)).collect::<Vec<_>>()),
            Formula::Or(cs) => Formula::or(cs.iter().map(|c| c.map_atoms(f)).collect::<Vec<_>>()),
            Formula::Exists(v, g) => Formula::exists(v.clone(), g.map_atoms(f)),
            Formula::Forall(v, g) => Formula::forall(v.clone(), g.map_atoms(f)),
        }
    }
}

/// A name based on `base` that is not in `used`; the result is added to
/// `used`.
pub(crate) fn fresh_var(base: &str, used: &mut BTreeSet<Var>, counter: &mut usize) -> Var {
    let stem = base.trim_end_matches(|c: char| c == '_' || c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    loop {
        *counter += 1;
        let name = format!("{stem}_{counter}");
        if used.insert(name.clone()) {
            return name;
        }
    }
}

// Printing. Quantifier bodies extend as far right as possible, so a
// quantified formula is parenthesized whenever something follows it or it
// sits under a connective or negation.

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Or(_) => 1,
        Formula::And(_) => 2,
        Formula::Not(_) => 3,
        _ => 4,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if prec(child) < min {
        write!(f, "(")?;
        write_formula(f, child)?;
        write!(f, ")")
    } else {
        write_formula(f, child)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, formula: &Formula) -> fmt::Result {
    match formula {
        Formula::Atom { symbol, args } => write!(f, "{}({})", symbol, args.join(",")),
        Formula::Eq(x, y) => write!(f, "{x} = {y}"),
        Formula::Neq(x, y) => write!(f, "{x} != {y}"),
        Formula::Not(g) => {
            write!(f, "~")?;
            write_child(f, g, 3)
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let (op, min) = if matches!(formula, Formula::And(_)) {
                (" & ", 3)
            } else {
                (" | ", 2)
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{op}")?;
                }
                write_child(f, c, min)?;
            }
            Ok(())
        }
        Formula::Exists(v, g) => {
            write!(f, "exists {v}. ")?;
            write_formula(f, g)
        }
        Formula::Forall(v, g) => {
            write!(f, "forall {v}. ")?;
            write_formula(f, g)
        }
    }
}

/// Prints in the formula grammar accepted by [`super::parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectives_flatten() {
        let f = Formula::and([
            Formula::atom("R", &["x"]),
            Formula::and([Formula::atom("R", &["y"]), Formula::atom("R", &["z"])]),
        ]);
        assert!(matches!(&f, Formula::And(cs) if cs.len() == 3));
        assert_eq!(
            Formula::or([Formula::atom("R", &["x"])]),
            Formula::atom("R", &["x"])
        );
    }

    #[test]
    fn free_variables_in_order() {
        let f = Formula::and([
            Formula::atom("R", &["y", "x"]),
            Formula::exists("y", Formula::atom("R", &["y", "z"])),
        ]);
        assert_eq!(f.free_vars(), vec!["y", "x", "z"]);
    }

    #[test]
    fn substitution_avoids_capture() {
        let f = Formula::exists("y", Formula::atom("R", &["x", "y"]));
        let map = HashMap::from([("x".to_string(), "y".to_string())]);
        let g = f.substitute(&map);
        assert_eq!(g.free_vars(), vec!["y"]);
        match g {
            Formula::Exists(v, body) => {
                assert_ne!(v, "y");
                assert_eq!(*body, Formula::atom_owned("R", vec!["y".into(), v]));
            }
            _ => panic!("{g}"),
        }
    }

    #[test]
    fn prints_with_minimal_parentheses() {
        let f = Formula::or([
            Formula::and([Formula::atom("R", &["x"]), Formula::eq("x", "y")]),
            Formula::not(Formula::exists("z", Formula::atom("R", &["z"]))),
        ]);
        assert_eq!(f.to_string(), "R(x) & x = y | ~(exists z. R(z))");
    }
}
