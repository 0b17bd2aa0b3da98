//! Generated formulas checked against brute-force computations.

mod common;

use std::collections::{BTreeSet, HashMap};

use common::{all_binary, all_tuples, brute_muhoms, brute_smuhoms};
use mucheck_core::classifier::TemplatePair;
use mucheck_core::eval::holds;
use mucheck_core::logic::{parse_formula_untyped, to_special_form, Formula, Fragment};
use mucheck_core::reductions::{
    closure_formula, dual_template, endo_formula, equality_pspace_gadget, muhom_formula,
    nae_structure, p_def_rewrite, p_definitions, quotient_reduction, rainbow_structure,
    smuhom_formula, verify_equality_gadget, verify_p_definition, GeneratedFormula, Limits,
};
use mucheck_core::structure::{Elem, Relation, Structure};
use mucheck_core::Error;

fn arc() -> Structure {
    Structure::single("R", 2, 2, vec![vec![0, 1]]).unwrap()
}

fn eq(k: usize) -> Structure {
    Structure::equality("Q", k).unwrap()
}

fn tuples(r: &Relation) -> BTreeSet<Vec<Elem>> {
    r.tuples().iter().cloned().collect()
}

fn closed(g: &GeneratedFormula) -> Formula {
    Formula::exists_all(&g.params, g.formula.clone())
}

#[test]
fn endo_of_a_single_arc() {
    let g = endo_formula(&arc());
    assert_eq!(g.formula.to_string(), "R(x_1,x_2)");
    assert!(holds(&arc(), &closed(&g)).unwrap());
}

#[test]
fn endo_defines_homomorphisms() {
    for a in all_binary(2) {
        let g = endo_formula(&a);
        for e in all_binary(2)
            .into_iter()
            .chain(all_binary(3).into_iter().step_by(7))
        {
            let want: BTreeSet<Vec<Elem>> = brute_muhoms(&a, &e)
                .iter()
                .filter(|f| f.multiplicity() == 1)
                .map(|f| (0..a.size()).map(|x| f.values(x)[0]).collect())
                .collect();
            assert_eq!(tuples(&g.defined_relation(&e).unwrap()), want);
        }
    }
}

#[test]
fn muhom_formula_with_multiplicity_one_is_the_endo_formula() {
    let a = all_binary(3)[100].clone();
    let g = muhom_formula(&a, 1, &Limits::default()).unwrap();
    let rename: HashMap<String, String> = (1..=3)
        .map(|i| (format!("x_{i}_1"), format!("x_{i}")))
        .collect();
    assert_eq!(g.formula.substitute(&rename), endo_formula(&a).formula);
}

#[test]
fn muhom_formula_defines_contained_value_sets() {
    for a in all_binary(2) {
        let g = muhom_formula(&a, 2, &Limits::default()).unwrap();
        for e in all_binary(2) {
            let muhoms = brute_muhoms(&a, &e);
            let defined = g.defined_relation(&e).unwrap();
            for t in all_tuples(2, 4) {
                let want = muhoms.iter().any(|f| {
                    (0..2).all(|x| {
                        f.values(x) == {
                            let mut v = vec![t[2 * x], t[2 * x + 1]];
                            v.sort();
                            v.dedup();
                            v
                        }
                    })
                });
                assert_eq!(defined.contains(&t), want, "A = {a:?}, t = {t:?}");
            }
        }
    }
}

#[test]
fn smuhom_formula_defines_containment_in_a_smuhom() {
    for a in all_binary(2) {
        let g = smuhom_formula(&a, 1, 3, &Limits::default()).unwrap();
        for e in all_binary(2)
            .into_iter()
            .chain(all_binary(3).into_iter().step_by(11))
        {
            let smuhoms = brute_smuhoms(&a, &e);
            let defined = g.defined_relation(&e).unwrap();
            for t in all_tuples(e.size(), 2) {
                let want = smuhoms
                    .iter()
                    .any(|f| f.contains(0, t[0]) && f.contains(1, t[1]));
                assert_eq!(defined.contains(&t), want);
            }
        }
    }
}

#[test]
fn smuhom_closure_from_three_point_equality() {
    let g = smuhom_formula(&eq(3), 1, 2, &Limits::default()).unwrap();
    let sentence = closed(&g);
    assert!(holds(
        &eq(3),
        &closed(&smuhom_formula(&eq(3), 1, 3, &Limits::default()).unwrap())
    )
    .unwrap());
    assert_eq!(
        holds(&eq(2), &sentence).unwrap(),
        !brute_smuhoms(&eq(3), &eq(2)).is_empty()
    );
    let back = smuhom_formula(&eq(2), 1, 3, &Limits::default()).unwrap();
    assert_eq!(
        holds(&eq(3), &closed(&back)).unwrap(),
        !brute_smuhoms(&eq(2), &eq(3)).is_empty()
    );
    assert!(!holds(&eq(3), &closed(&back)).unwrap());
}

#[test]
fn closure_of_distinct_tuple_is_the_homomorphic_image() {
    for a in all_binary(2) {
        let g = closure_formula(&a, &[0, 1], Fragment::EA, 1, 2, &Limits::default()).unwrap();
        for e in all_binary(3).into_iter().step_by(5) {
            let want: BTreeSet<Vec<Elem>> = brute_muhoms(&a, &e)
                .iter()
                .filter(|f| f.multiplicity() == 1)
                .map(|f| vec![f.values(0)[0], f.values(1)[0]])
                .collect();
            assert_eq!(tuples(&g.defined_relation(&e).unwrap()), want);
        }
    }
}

#[test]
fn closure_with_a_repeated_entry() {
    for a in all_binary(2) {
        let g = closure_formula(&a, &[0, 0], Fragment::EAO, 2, 2, &Limits::default()).unwrap();
        for e in all_binary(2) {
            let mut want = BTreeSet::new();
            for f in brute_muhoms(&a, &e) {
                for &u in &f.values(0) {
                    for &v in &f.values(0) {
                        want.insert(vec![u, v]);
                    }
                }
            }
            assert_eq!(tuples(&g.defined_relation(&e).unwrap()), want);
        }
    }
}

#[test]
fn closure_contains_its_tuple_in_the_source() {
    for a in all_binary(3).into_iter().step_by(13) {
        for t in all_tuples(3, 2) {
            for l in [Fragment::EA, Fragment::EAO, Fragment::EFAO] {
                let g = closure_formula(&a, &t, l, 2, 3, &Limits::default()).unwrap();
                assert!(g.defined_relation(&a).unwrap().contains(&t));
            }
        }
    }
}

#[test]
fn closure_needs_disjunction_with_forall() {
    let r = closure_formula(&arc(), &[0], Fragment::EFA, 1, 2, &Limits::default());
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn rainbow_and_not_all_equal() {
    let two: BTreeSet<Vec<Elem>> = [vec![0, 1], vec![1, 0]].into();
    assert_eq!(tuples(rainbow_structure(2, 2).unwrap().relation_at(0)), two);
    assert_eq!(tuples(nae_structure(2, 2).unwrap().relation_at(0)), two);
    assert_eq!(rainbow_structure(2, 4).unwrap().relation_at(0).len(), 14);
    assert_eq!(nae_structure(2, 4).unwrap().relation_at(0).len(), 14);
    assert_eq!(rainbow_structure(3, 3).unwrap().relation_at(0).len(), 6);
    assert_eq!(nae_structure(3, 3).unwrap().relation_at(0).len(), 24);
}

fn gadget(text: &str, k: usize) -> (GeneratedFormula, bool, bool) {
    let sf = to_special_form(&parse_formula_untyped(text).unwrap()).unwrap();
    let g = equality_pspace_gadget(&sf, k, &Limits::default()).unwrap();
    let c = verify_equality_gadget(&g).unwrap();
    assert!(c.holds(), "{text}");
    (g, c.b_phi, c.a_psi)
}

#[test]
fn equality_gadget_examples() {
    let (_, b_phi, a_psi) = gadget("forall y. exists z. Q(y, z)", 3);
    assert!(b_phi && a_psi);
    let (_, _, a_psi) = gadget("forall y. exists z. Q(z, z)", 3);
    assert!(a_psi);
    let (g, b_phi, a_psi) = gadget(mucheck_core::catalog::TWO_POINT_SENTENCE, 3);
    assert!(b_phi && a_psi);
    // The sentence itself fails in [3]; the gadget does not.
    let phi = parse_formula_untyped(mucheck_core::catalog::TWO_POINT_SENTENCE).unwrap();
    assert!(!holds(&eq(3), &phi).unwrap());
    assert!(holds(&eq(3), &g.formula).unwrap());
}

#[test]
fn equality_gadget_rejects_bad_input() {
    let sf =
        to_special_form(&parse_formula_untyped("forall y. exists z. Q(y, z)").unwrap()).unwrap();
    assert!(equality_pspace_gadget(&sf, 1, &Limits::default()).is_err());
    let sf =
        to_special_form(&parse_formula_untyped("forall y. exists z. y != z").unwrap()).unwrap();
    assert!(equality_pspace_gadget(&sf, 3, &Limits::default()).is_err());
}

#[test]
fn dual_of_the_equality_template() {
    let t = TemplatePair::new(eq(3), eq(2)).unwrap();
    let d = dual_template(&t).unwrap();
    let neq = |k| Relation::from_predicate(2, k, |t| t[0] != t[1]).unwrap();
    assert_eq!(d.a().size(), 2);
    assert_eq!(d.b().size(), 3);
    assert_eq!(tuples(d.a().relation_at(0)), tuples(&neq(2)));
    assert_eq!(tuples(d.b().relation_at(0)), tuples(&neq(3)));
}

#[test]
fn quotient_of_the_closed_equality_template() {
    let t = TemplatePair::new(
        eq(3).complementation_closure().unwrap(),
        eq(2).complementation_closure().unwrap(),
    )
    .unwrap();
    let chain = quotient_reduction(&t).unwrap();
    let want = TemplatePair::new(
        Structure::equality("sim", 3).unwrap(),
        Structure::equality("sim", 2).unwrap(),
    )
    .unwrap();
    assert_eq!(chain.equality, want);
    assert_eq!(chain.middle, want);
    assert!(chain.relaxation_holds().unwrap());
    for def in chain.definitions(&Limits::default()).unwrap().values() {
        assert_eq!(verify_p_definition(def, &t).unwrap(), None);
    }
}

#[test]
fn quotient_needs_complementation() {
    let t = TemplatePair::new(eq(3), eq(2)).unwrap();
    assert!(quotient_reduction(&t).is_err());
}

#[test]
fn self_definitions_verify_and_rewrite() {
    let b = Structure::single("R", 2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let t = TemplatePair::new(arc(), b).unwrap();
    let defs = p_definitions(&t, &t, Fragment::EA, &Limits::default()).unwrap();
    for def in defs.values() {
        assert_eq!(verify_p_definition(def, &t).unwrap(), None);
    }
    let phi = parse_formula_untyped("exists u. exists v. R(u, v) & R(v, u)").unwrap();
    let psi = p_def_rewrite(&phi, &defs).unwrap();
    for s in [t.a(), t.b()] {
        assert_eq!(holds(s, &psi).unwrap(), holds(s, &phi).unwrap());
    }
}

#[test]
fn text_output_parses_back() {
    let g = smuhom_formula(&arc(), 1, 2, &Limits::default()).unwrap();
    let text = g.to_text();
    assert!(text.lines().take(3).all(|l| l.starts_with('#')));
    assert_eq!(parse_formula_untyped(&text).unwrap(), g.formula);
}

#[test]
fn guardrail_stops_large_formulas() {
    let tight = Limits { max_nodes: 50 };
    assert!(matches!(
        smuhom_formula(&eq(3), 2, 3, &tight),
        Err(Error::Guardrail { .. })
    ));
    assert!(smuhom_formula(&eq(3), 2, 3, &Limits::unlimited()).is_ok());
}
