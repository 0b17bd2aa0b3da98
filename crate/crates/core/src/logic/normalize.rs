//! Reduction of an arbitrary fragment to one of the four canonical ones.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structure::{closure_signature, Relation, Structure};

use super::formula::Formula;
use super::fragment::Fragment;
use super::prenex::{dualize, push_negation};

/// Maps sentences of the original fragment to the canonical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewriter {
    source: Fragment,
    eq_symbol: Option<String>,
    neq_symbol: Option<String>,
    complement: Option<HashMap<String, String>>,
    dualized: bool,
}

impl Rewriter {
    pub fn source_fragment(&self) -> Fragment {
        self.source
    }

    pub fn eq_symbol(&self) -> Option<&str> {
        self.eq_symbol.as_deref()
    }

    pub fn neq_symbol(&self) -> Option<&str> {
        self.neq_symbol.as_deref()
    }

    /// Symbol-to-complement pairs, present when `¬` was eliminated.
    pub fn complement_map(&self) -> Option<&HashMap<String, String>> {
        self.complement.as_ref()
    }

    /// Whether the instance was moved to the dual side; if so Yes and No
    /// swap.
    pub fn is_dualized(&self) -> bool {
        self.dualized
    }

    pub fn rewrite(&self, f: &Formula) -> Result<Formula> {
        let used = f.fragment_of();
        if !self.source.contains(used) {
            return Err(Error::OutsideFragment {
                used: used.to_string(),
                allowed: self.source.to_string(),
            });
        }
        let mut g = self.replace_builtins(f)?;
        if let Some(comp) = &self.complement {
            g = push_negation(&g, comp)?;
        }
        if self.dualized {
            g = dualize(&g)?;
        }
        Ok(g)
    }

    /// Answer for the original instance given the answer for the rewritten
    /// one.
    pub fn translate_answer(&self, yes: bool) -> bool {
        yes != self.dualized
    }

    fn replace_builtins(&self, f: &Formula) -> Result<Formula> {
        let sym = |s: &Option<String>, what: &str| {
            s.clone()
                .ok_or_else(|| Error::Precondition(format!("no symbol for {what}")))
        };
        Ok(match f {
            Formula::Eq(x, y) => {
                Formula::atom_owned(sym(&self.eq_symbol, "=")?, vec![x.clone(), y.clone()])
            }
            Formula::Neq(x, y) => {
                Formula::atom_owned(sym(&self.neq_symbol, "≠")?, vec![x.clone(), y.clone()])
            }
            Formula::Atom { .. } => f.clone(),
            Formula::Not(g) => Formula::not(self.replace_builtins(g)?),
            Formula::And(cs) => Formula::And(
                cs.iter()
                    .map(|c| self.replace_builtins(c))
                    .collect::<Result<_>>()?,
            ),
            Formula::Or(cs) => Formula::Or(
                cs.iter()
                    .map(|c| self.replace_builtins(c))
                    .collect::<Result<_>>()?,
            ),
            Formula::Exists(v, g) => Formula::exists(v.clone(), self.replace_builtins(g)?),
            Formula::Forall(v, g) => Formula::forall(v.clone(), self.replace_builtins(g)?),
        })
    }
}

/// A template over a canonical fragment equivalent to the input one.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub a: Structure,
    pub b: Structure,
    /// One of `{∃,∧}`, `{∃,∀,∧}`, `{∃,∧,∨}`, `{∃,∀,∧,∨}`.
    pub fragment: Fragment,
    pub rewriter: Rewriter,
}

impl Normalized {
    pub fn added_eq(&self) -> bool {
        self.rewriter.eq_symbol.is_some()
    }

    pub fn added_neq(&self) -> bool {
        self.rewriter.neq_symbol.is_some()
    }

    /// `¬` was eliminated, so the template is closed under complementation.
    pub fn closed(&self) -> bool {
        self.rewriter.complement.is_some()
    }

    pub fn dualized(&self) -> bool {
        self.rewriter.dualized
    }
}

/// For every symbol, another symbol interpreted as its complement in both
/// structures, if the pair is jointly closed.
pub fn joint_complement_map(a: &Structure, b: &Structure) -> Option<HashMap<String, String>> {
    let syms = a.signature().symbols();
    let mut map = HashMap::new();
    for (i, s) in syms.iter().enumerate() {
        let ca = a.relation_at(i).complement();
        let cb = b.relation_at(i).complement();
        let partner =
            (0..syms.len()).find(|&j| *a.relation_at(j) == ca && *b.relation_at(j) == cb)?;
        map.insert(s.name.clone(), syms[partner].name.clone());
    }
    Some(map)
}

fn add_relation(s: &Structure, name: &str, pred: impl Fn(&[usize]) -> bool) -> Result<Structure> {
    s.with_relation(name, Relation::from_predicate(2, s.size(), pred)?)
}

fn close_jointly(
    a: &Structure,
    b: &Structure,
) -> Result<(Structure, Structure, HashMap<String, String>)> {
    if let Some(map) = joint_complement_map(a, b) {
        return Ok((a.clone(), b.clone(), map));
    }
    let (sig, pairs) = closure_signature(a.signature())?;
    let extend = |s: &Structure| {
        let mut rels = s.relations().to_vec();
        rels.extend(s.relations().iter().map(Relation::complement));
        Structure::from_relations(sig.clone(), s.size(), rels, s.is_strict())
    };
    let mut map = HashMap::new();
    for (r, rbar) in pairs {
        map.insert(r.clone(), rbar.clone());
        map.insert(rbar, r);
    }
    Ok((extend(a)?, extend(b)?, map))
}

/// Turns `=` and `≠` into fresh binary relations, eliminates `¬` by closing
/// the template under complementation, and moves dual fragments to the
/// dual template `(B̄, Ā)`.
pub fn normalize_fragment(a: &Structure, b: &Structure, l: Fragment) -> Result<Normalized> {
    if !a.is_similar(b) {
        return Err(Error::SignatureMismatch);
    }
    if l.is_trivial() {
        return Err(Error::TrivialFragment(l.to_string()));
    }
    let negation = l.contains(Fragment::NOT);
    let builtin = l.intersects(Fragment::EQ | Fragment::NEQ);
    let want_eq = l.contains(Fragment::EQ) || (negation && builtin);
    let want_neq = l.contains(Fragment::NEQ) || (negation && builtin);

    let (mut a2, mut b2) = (a.clone(), b.clone());
    let mut eq_symbol = None;
    let mut neq_symbol = None;
    if want_eq {
        let name = a2.signature().fresh_name("Q");
        a2 = add_relation(&a2, &name, |t| t[0] == t[1])?;
        b2 = add_relation(&b2, &name, |t| t[0] == t[1])?;
        eq_symbol = Some(name);
    }
    if want_neq {
        let name = a2.signature().fresh_name("N");
        a2 = add_relation(&a2, &name, |t| t[0] != t[1])?;
        b2 = add_relation(&b2, &name, |t| t[0] != t[1])?;
        neq_symbol = Some(name);
    }
    let mut complement = None;
    if negation {
        let (a3, b3, map) = close_jointly(&a2, &b2)?;
        a2 = a3;
        b2 = b3;
        complement = Some(map);
    }

    let core = l.positive_core();
    let (fragment, dualized) = if core.is_canonical() {
        (core, false)
    } else if core.dual().is_canonical() {
        let (a3, b3) = (b2.complement()?, a2.complement()?);
        a2 = a3;
        b2 = b3;
        (core.dual(), true)
    } else {
        return Err(Error::NonCanonicalFragment(l.to_string()));
    };
    Ok(Normalized {
        a: a2,
        b: b2,
        fragment,
        rewriter: Rewriter {
            source: l,
            eq_symbol,
            neq_symbol,
            complement,
            dualized,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula_untyped as p;

    fn edge() -> Structure {
        Structure::single("R", 2, 2, vec![vec![0, 1]]).unwrap()
    }

    #[test]
    fn canonical_fragment_is_untouched() {
        let n = normalize_fragment(&edge(), &edge(), Fragment::EFAO).unwrap();
        assert_eq!(n.a, edge());
        assert_eq!(n.fragment, Fragment::EFAO);
        let f = p("forall x. exists y. R(x,y)").unwrap();
        assert_eq!(n.rewriter.rewrite(&f).unwrap(), f);
    }

    #[test]
    fn equality_becomes_a_relation() {
        let a = Structure::single("R", 2, 3, vec![vec![0, 1]]).unwrap();
        let n = normalize_fragment(&a, &edge(), Fragment::EFAO | Fragment::EQ).unwrap();
        assert!(n.added_eq());
        assert_eq!(
            *n.a.relation("Q").unwrap(),
            *Structure::equality("Q", 3).unwrap().relation_at(0)
        );
        let f = p("exists x y. x = y").unwrap();
        assert_eq!(
            n.rewriter.rewrite(&f).unwrap(),
            p("exists x y. Q(x,y)").unwrap()
        );
    }

    #[test]
    fn dual_fragment_moves_to_complements() {
        let n = normalize_fragment(&edge(), &edge(), Fragment::FORALL | Fragment::OR).unwrap();
        assert_eq!(n.fragment, Fragment::EA);
        assert!(n.dualized());
        assert_eq!(n.a, edge().complement().unwrap());
        let f = p("forall x. R(x,x) | R(x,x)").unwrap();
        assert_eq!(
            n.rewriter.rewrite(&f).unwrap(),
            p("exists x. R(x,x) & R(x,x)").unwrap()
        );
        assert!(!n.rewriter.translate_answer(true));
    }

    #[test]
    fn negation_closes_the_template() {
        let n = normalize_fragment(&edge(), &edge(), Fragment::EA | Fragment::NOT).unwrap();
        assert!(n.closed());
        assert_eq!(n.fragment, Fragment::EFAO);
        assert_eq!(n.a.signature().len(), 2);
        let f = p("~(exists x. R(x,x))").unwrap();
        assert_eq!(
            n.rewriter.rewrite(&f).unwrap(),
            p("forall x. R_bar(x,x)").unwrap()
        );
    }

    #[test]
    fn trivial_and_outside() {
        assert!(matches!(
            normalize_fragment(&edge(), &edge(), Fragment::EXISTS),
            Err(Error::TrivialFragment(_))
        ));
        let n = normalize_fragment(&edge(), &edge(), Fragment::EA).unwrap();
        assert!(matches!(
            n.rewriter.rewrite(&p("forall x. R(x,x)").unwrap()),
            Err(Error::OutsideFragment { .. })
        ));
    }
}
