use std::collections::{BTreeMap, HashMap};

use crate::classifier::{p_definability_counterexample, TemplatePair};
use crate::error::{Error, Result};
use crate::homomorphisms::MultiValuedFunction;
use crate::logic::{Formula, Fragment, Var};
use crate::structure::Elem;

use super::gadgets::closure_formula;
use super::rainbow::rbnae_template;
use super::{x1, GeneratedFormula, Limits, Semantics};

/// Defining formulas by symbol name.
pub type Definitions = BTreeMap<String, GeneratedFormula>;

fn max_occurrences(t: &[Elem]) -> usize {
    t.iter()
        .map(|e| t.iter().filter(|f| *f == e).count())
        .max()
        .unwrap_or(1)
}

/// Defines every symbol `Q` of `dst` over the signature of `src` by the
/// disjunction of the closure formulas of the tuples of `Q^C`. For a
/// fragment with `∀` the closure formulas use surjective
/// multi-homomorphisms with `m = max(|A|, |B|)`.
///
/// The result is a p-definition exactly when every (surjective)
/// multi-homomorphism of `src` is one of `dst`.
pub fn p_definitions(
    src: &TemplatePair,
    dst: &TemplatePair,
    l: Fragment,
    limits: &Limits,
) -> Result<Definitions> {
    if src.a().size() != dst.a().size() || src.b().size() != dst.b().size() {
        return Err(Error::Precondition(
            "p-definitions need matching universes on both sides".into(),
        ));
    }
    let m = src.a().size().max(src.b().size());
    let mut out = Definitions::new();
    let mut total: u128 = 0;
    for (i, sym) in dst.a().signature().symbols().iter().enumerate() {
        let strong = dst.a().relation_at(i);
        let mut disjuncts = Vec::new();
        for t in strong.tuples() {
            let tau = closure_formula(src.a(), t, l, max_occurrences(t), m, limits)?;
            total = total.saturating_add(tau.stats.nodes as u128);
            limits.check(total)?;
            disjuncts.push(tau.formula);
        }
        out.insert(
            sym.name.clone(),
            GeneratedFormula::new(
                Formula::or(disjuncts),
                (0..sym.arity).map(x1).collect(),
                Semantics::PDefinition {
                    symbol: sym.name.clone(),
                    strong: strong.clone(),
                    weak: dst.b().relation_at(i).clone(),
                },
            ),
        );
    }
    Ok(out)
}

/// Replaces every atom `Q(v_1, …)` of `sentence` by the definition of `Q`
/// with its parameters renamed to `v_1, …`. Bound variables of the
/// definition are renamed where they would capture.
pub fn p_def_rewrite(sentence: &Formula, defs: &Definitions) -> Result<Formula> {
    let mut failure = None;
    let out = sentence.map_atoms(&mut |symbol, args| {
        let Some(def) = defs.get(symbol) else {
            failure.get_or_insert(Error::UnknownSymbol(symbol.to_string()));
            return Formula::atom_owned(symbol, args.to_vec());
        };
        if def.params.len() != args.len() {
            failure.get_or_insert(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: def.params.len(),
                found: args.len(),
            });
            return Formula::atom_owned(symbol, args.to_vec());
        }
        let map: HashMap<Var, Var> = def
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        def.formula.substitute(&map)
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Checks a p-definition against the source template: the defined relation
/// must contain the strong relation in `A` and lie inside the weak one in
/// `B`. Returns a description of the first violation.
pub fn verify_p_definition(def: &GeneratedFormula, src: &TemplatePair) -> Result<Option<String>> {
    let Semantics::PDefinition {
        symbol,
        strong,
        weak,
    } = &def.semantics
    else {
        return Err(Error::Precondition("not a p-definition".into()));
    };
    let in_a = def.defined_relation(src.a())?;
    if let Some(t) = strong.tuples().iter().find(|t| !in_a.contains(t)) {
        return Ok(Some(format!(
            "{symbol}: strong tuple {} is not defined in A",
            one_based(t)
        )));
    }
    let in_b = def.defined_relation(src.b())?;
    if let Some(t) = in_b.tuples().iter().find(|t| !weak.contains(t)) {
        return Ok(Some(format!(
            "{symbol}: tuple {} is defined in B but not weak",
            one_based(t)
        )));
    }
    Ok(None)
}

fn one_based(t: &[Elem]) -> String {
    let parts: Vec<String> = t.iter().map(|e| (e + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// A (surjective, for fragments with `∀`) multi-homomorphism of `t` that is
/// not one from `(A; Rb^{2|A|})` to `(B; NAE^{2|A|})`, or `None` when the
/// rainbow template is p-definable from `t`.
pub fn rbnae_counterexample(t: &TemplatePair, l: Fragment) -> Result<Option<MultiValuedFunction>> {
    let rb = rbnae_template(t.a().size(), t.b().size())?;
    p_definability_counterexample(t, &rb, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Structure;

    #[test]
    fn identity_definitions_rewrite_to_themselves() {
        let mut defs = Definitions::new();
        defs.insert(
            "Q".into(),
            GeneratedFormula::new(
                Formula::atom("Q", &["x_1", "x_2"]),
                vec!["x_1".into(), "x_2".into()],
                Semantics::Homomorphism {
                    source: Structure::equality("Q", 2).unwrap(),
                },
            ),
        );
        let f = crate::logic::parse_formula_untyped("forall x_2. exists x_1. Q(x_2, x_1)").unwrap();
        assert_eq!(p_def_rewrite(&f, &defs).unwrap(), f);
    }

    #[test]
    fn rewrite_avoids_capture() {
        let mut defs = Definitions::new();
        let body = crate::logic::parse_formula_untyped("exists y. R(x_1, y) & R(y, x_2)").unwrap();
        defs.insert(
            "P".into(),
            GeneratedFormula::new(
                body,
                vec!["x_1".into(), "x_2".into()],
                Semantics::Homomorphism {
                    source: Structure::equality("R", 2).unwrap(),
                },
            ),
        );
        let f = crate::logic::parse_formula_untyped("exists y. P(y, y)").unwrap();
        let g = p_def_rewrite(&f, &defs).unwrap();
        assert_eq!(g.to_string(), "exists y. exists y_1. R(y,y_1) & R(y_1,y)");
    }
}
