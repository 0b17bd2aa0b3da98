//! Prenex form, the alternating `∀y ∃z` special form, duality and
//! negation pushing.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

use super::formula::{fresh_var, Formula, Quantifier, Var};

/// Renames bound variables so that every quantifier binds a distinct name
/// that is also distinct from the free variables. Names are kept where
/// possible.
pub fn standardize_apart(f: &Formula) -> Formula {
    let mut used: BTreeSet<Var> = f.all_vars();
    let mut taken: BTreeSet<Var> = f.free_vars().into_iter().collect();
    let mut counter = 0;
    go(f, &HashMap::new(), &mut used, &mut taken, &mut counter)
}

fn go(
    f: &Formula,
    map: &HashMap<Var, Var>,
    used: &mut BTreeSet<Var>,
    taken: &mut BTreeSet<Var>,
    counter: &mut usize,
) -> Formula {
    let r = |v: &Var| map.get(v).cloned().unwrap_or_else(|| v.clone());
    match f {
        Formula::Atom { symbol, args } => {
            Formula::atom_owned(symbol.clone(), args.iter().map(r).collect())
        }
        Formula::Eq(x, y) => Formula::Eq(r(x), r(y)),
        Formula::Neq(x, y) => Formula::Neq(r(x), r(y)),
        Formula::Not(g) => Formula::not(go(g, map, used, taken, counter)),
        Formula::And(cs) => Formula::And(
            cs.iter()
                .map(|c| go(c, map, used, taken, counter))
                .collect(),
        ),
        Formula::Or(cs) => Formula::Or(
            cs.iter()
                .map(|c| go(c, map, used, taken, counter))
                .collect(),
        ),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let name = if taken.insert(v.clone()) {
                v.clone()
            } else {
                let fresh = fresh_var(v, used, counter);
                taken.insert(fresh.clone());
                fresh
            };
            let mut inner = map.clone();
            inner.insert(v.clone(), name.clone());
            let body = go(g, &inner, used, taken, counter);
            match f {
                Formula::Exists(..) => Formula::exists(name, body),
                _ => Formula::forall(name, body),
            }
        }
    }
}

/// Splits a formula whose bound variables are pairwise distinct into its
/// quantifier prefix and matrix, pulling quantifiers out left to right.
fn pull(f: &Formula) -> (Vec<(Quantifier, Var)>, Formula) {
    match f {
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let q = if matches!(f, Formula::Exists(..)) {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            let (mut prefix, matrix) = pull(g);
            prefix.insert(0, (q, v.clone()));
            (prefix, matrix)
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let mut prefix = Vec::new();
            let mut parts = Vec::new();
            for c in cs {
                let (p, m) = pull(c);
                prefix.extend(p);
                parts.push(m);
            }
            let matrix = if matches!(f, Formula::And(_)) {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            };
            (prefix, matrix)
        }
        other => (Vec::new(), other.clone()),
    }
}

fn build(prefix: &[(Quantifier, Var)], matrix: Formula) -> Formula {
    prefix
        .iter()
        .rev()
        .fold(matrix, |acc, (q, v)| Formula::quantify(*q, v.clone(), acc))
}

/// An equivalent formula with all quantifiers in front. Requires a
/// negation-free input.
pub fn to_prenex(f: &Formula) -> Result<Formula> {
    if f.has_negation() {
        return Err(Error::Negation);
    }
    let (prefix, matrix) = pull(&standardize_apart(f));
    Ok(build(&prefix, matrix))
}

/// `∀y1 ∃z1 … ∀ym ∃zm φ'(x, y, z)` with a quantifier-free matrix.
///
/// Variables that fill the alternation but do not occur in the matrix are
/// dummies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialForm {
    /// Free variables of the formula, in order of first occurrence.
    pub free: Vec<Var>,
    /// `(y_i, z_i)` pairs.
    pub blocks: Vec<(Var, Var)>,
    pub matrix: Formula,
}

impl SpecialForm {
    pub fn new(free: Vec<Var>, blocks: Vec<(Var, Var)>, matrix: Formula) -> Result<Self> {
        if !matrix.is_quantifier_free() {
            return Err(Error::Precondition(
                "special-form matrix must be quantifier-free".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for v in free.iter().chain(blocks.iter().flat_map(|(y, z)| [y, z])) {
            if !seen.insert(v.clone()) {
                return Err(Error::Precondition(format!("variable `{v}` used twice")));
            }
        }
        if let Some(v) = matrix.free_vars().into_iter().find(|v| !seen.contains(v)) {
            return Err(Error::UnboundVariable(v));
        }
        Ok(SpecialForm {
            free,
            blocks,
            matrix,
        })
    }

    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn universals(&self) -> impl Iterator<Item = &Var> {
        self.blocks.iter().map(|(y, _)| y)
    }

    pub fn existentials(&self) -> impl Iterator<Item = &Var> {
        self.blocks.iter().map(|(_, z)| z)
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        self.blocks
            .iter()
            .rev()
            .fold(self.matrix.clone(), |acc, (y, z)| {
                Formula::forall(y.clone(), Formula::exists(z.clone(), acc))
            })
    }
}

impl fmt::Display for SpecialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Converts a negation-free formula into special form. Bound variables are
/// renamed `y1, z1, y2, z2, …`; the prefix uses as few blocks as possible,
/// inserting a dummy universal before an existential that does not follow a
/// universal and a dummy existential after a universal that is not followed
/// by an existential.
pub fn to_special_form(f: &Formula) -> Result<SpecialForm> {
    if f.has_negation() {
        return Err(Error::Negation);
    }
    let free = f.free_vars();
    let (prefix, matrix) = pull(&standardize_apart(f));
    let mut blocks: Vec<(Option<Var>, Option<Var>)> = Vec::new();
    for (q, v) in prefix {
        match q {
            Quantifier::Forall => blocks.push((Some(v), None)),
            Quantifier::Exists => match blocks.last_mut() {
                Some((_, z @ None)) => *z = Some(v),
                _ => blocks.push((None, Some(v))),
            },
        }
    }
    let mut used: BTreeSet<Var> = free.iter().cloned().collect();
    let mut counter = 0;
    let mut name = |want: String, used: &mut BTreeSet<Var>| {
        if used.insert(want.clone()) {
            want
        } else {
            fresh_var(&want, used, &mut counter)
        }
    };
    let mut renaming = HashMap::new();
    let mut out = Vec::new();
    for (i, (y, z)) in blocks.into_iter().enumerate() {
        let yn = name(format!("y{}", i + 1), &mut used);
        let zn = name(format!("z{}", i + 1), &mut used);
        if let Some(y) = y {
            renaming.insert(y, yn.clone());
        }
        if let Some(z) = z {
            renaming.insert(z, zn.clone());
        }
        out.push((yn, zn));
    }
    SpecialForm::new(free, out, matrix.substitute(&renaming))
}

/// Swaps `∃`/`∀`, `∧`/`∨` and `=`/`≠`. For negation-free `f` and any
/// structure `E`: `E ⊨ ¬f` iff the complement of `E` satisfies the dual.
pub fn dualize(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Atom { .. } => f.clone(),
        Formula::Eq(x, y) => Formula::Neq(x.clone(), y.clone()),
        Formula::Neq(x, y) => Formula::Eq(x.clone(), y.clone()),
        Formula::Not(_) => return Err(Error::Negation),
        Formula::And(cs) => Formula::Or(cs.iter().map(dualize).collect::<Result<_>>()?),
        Formula::Or(cs) => Formula::And(cs.iter().map(dualize).collect::<Result<_>>()?),
        Formula::Exists(v, g) => Formula::forall(v.clone(), dualize(g)?),
        Formula::Forall(v, g) => Formula::exists(v.clone(), dualize(g)?),
    })
}

/// Pushes negations to the atoms: `¬R(v)` becomes `R̄(v)` using
/// `complement`, `¬(x = y)` becomes `x ≠ y`, and connectives and
/// quantifiers are dualized on the way.
pub fn push_negation(f: &Formula, complement: &HashMap<String, String>) -> Result<Formula> {
    fn go(f: &Formula, neg: bool, comp: &HashMap<String, String>) -> Result<Formula> {
        Ok(match f {
            Formula::Atom { symbol, args } if neg => {
                let c = comp
                    .get(symbol)
                    .ok_or_else(|| Error::UnknownSymbol(format!("complement of {symbol}")))?;
                Formula::atom_owned(c.clone(), args.clone())
            }
            Formula::Atom { .. } => f.clone(),
            Formula::Eq(x, y) if neg => Formula::Neq(x.clone(), y.clone()),
            Formula::Neq(x, y) if neg => Formula::Eq(x.clone(), y.clone()),
            Formula::Eq(..) | Formula::Neq(..) => f.clone(),
            Formula::Not(g) => go(g, !neg, comp)?,
            Formula::And(cs) | Formula::Or(cs) => {
                let parts = cs
                    .iter()
                    .map(|c| go(c, neg, comp))
                    .collect::<Result<Vec<_>>>()?;
                if matches!(f, Formula::And(_)) != neg {
                    Formula::and(parts)
                } else {
                    Formula::or(parts)
                }
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let q = if matches!(f, Formula::Exists(..)) != neg {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                };
                Formula::quantify(q, v.clone(), go(g, neg, comp)?)
            }
        })
    }
    go(f, false, complement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula_untyped as p;

    #[test]
    fn pulls_sibling_quantifiers_left_to_right() {
        let f = p("(exists x. R(x,x)) | (exists y. R(y,y))").unwrap();
        assert_eq!(
            to_prenex(&f).unwrap(),
            p("exists x. exists y. R(x,x) | R(y,y)").unwrap()
        );
    }

    #[test]
    fn clashing_binders_are_renamed() {
        let f = p("R(x,x) & (exists x. R(x,x)) & (exists x. R(x,x))").unwrap();
        let g = to_prenex(&f).unwrap();
        assert_eq!(g.free_vars(), vec!["x"]);
        let stats = g.size_stats();
        assert_eq!(stats.variables, 3);
    }

    #[test]
    fn special_form_padding() {
        let sf = to_special_form(&p("exists z. R(z,z)").unwrap()).unwrap();
        assert_eq!(sf.blocks, vec![("y1".to_string(), "z1".to_string())]);
        assert_eq!(sf.matrix, p("R(z1,z1)").unwrap());

        let sf = to_special_form(&p("forall y. exists z. R(y,z)").unwrap()).unwrap();
        assert_eq!(sf.m(), 1);
        assert_eq!(sf.matrix, p("R(y1,z1)").unwrap());

        let sf = to_special_form(&p("forall x. exists y. forall z. (Q(z,x) | Q(z,y))").unwrap())
            .unwrap();
        assert_eq!(sf.m(), 2);
        assert_eq!(sf.matrix, p("Q(y2,y1) | Q(y2,z1)").unwrap());
    }

    #[test]
    fn special_form_avoids_free_names() {
        let sf = to_special_form(&p("exists z. R(y1,z)").unwrap()).unwrap();
        assert_eq!(sf.free, vec!["y1"]);
        assert_ne!(sf.blocks[0].0, "y1");
    }

    #[test]
    fn duality_swaps_everything() {
        let f = p("exists x. R(x,x) & x = x").unwrap();
        assert_eq!(
            dualize(&f).unwrap(),
            p("forall x. R(x,x) | x != x").unwrap()
        );
        assert_eq!(dualize(&dualize(&f).unwrap()).unwrap(), f);
        assert!(dualize(&p("~R(x,x)").unwrap()).is_err());
    }

    #[test]
    fn negation_reaches_atoms() {
        let comp = HashMap::from([("R".to_string(), "R_bar".to_string())]);
        let f = p("~(exists x. R(x,x) | ~(x = x))").unwrap();
        assert_eq!(
            push_negation(&f, &comp).unwrap(),
            p("forall x. R_bar(x,x) & x = x").unwrap()
        );
    }
}
