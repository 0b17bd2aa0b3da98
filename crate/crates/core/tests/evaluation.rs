//! Evaluation, witnesses and the membership algorithms.

mod common;

use proptest::prelude::*;

use common::all_tuples;
use mucheck_core::catalog::{small_digraphs, small_sentences, tern_ae, two_point_sentence};
use mucheck_core::classifier::TemplatePair;
use mucheck_core::eval::{
    ae_fast_path, conp_algorithm, eval, find_witnesses, holds, np_algorithm, pmc_reference_decide,
    Answer, Assignment, Compiled, InstanceStatus,
};
use mucheck_core::logic::{
    parse_formula, parse_formula_untyped, to_special_form, Formula, SpecialForm,
};
use mucheck_core::structure::Structure;
use mucheck_core::Error;

fn eq(k: usize) -> Structure {
    Structure::equality("Q", k).unwrap()
}

#[test]
fn two_point_sentence_separates_two_from_three() {
    assert!(holds(&eq(2), &two_point_sentence()).unwrap());
    assert!(!holds(&eq(3), &two_point_sentence()).unwrap());
}

#[test]
fn diagonal_tuple_is_found() {
    let s = Structure::single("R", 3, 2, vec![vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
    assert!(holds(&s, &parse_formula_untyped("exists x. R(x, x, x)").unwrap()).unwrap());
}

#[test]
fn free_variables_and_errors() {
    let s = eq(3);
    let f = parse_formula_untyped("exists z. Q(x, z) & ~Q(z, y)").unwrap();
    let a = Assignment::new().with("x", 0).with("y", 0);
    assert!(!eval(&s, &f, &a).unwrap());
    let a = Assignment::new().with("x", 1).with("y", 0);
    assert!(eval(&s, &f, &a).unwrap());
    assert!(matches!(
        eval(&s, &f, &Assignment::new().with("x", 0)),
        Err(Error::UnboundVariable(_))
    ));
    let bad = parse_formula_untyped("Q(x)").unwrap();
    assert!(eval(&s, &bad, &Assignment::new().with("x", 0)).is_err());
}

#[test]
fn truth_table_follows_lexicographic_order() {
    let s = Structure::single("R", 2, 3, vec![vec![0, 1], vec![2, 2]]).unwrap();
    let f = parse_formula("R(x, y)", s.signature()).unwrap();
    let c = Compiled::new(&f, s.signature(), &["x", "y"]).unwrap();
    let table = c.truth_table(&s);
    for (r, t) in all_tuples(3, 2).iter().enumerate() {
        assert_eq!(table[r], s.relation_at(0).contains(t));
    }
}

#[test]
fn witnesses_for_the_two_point_sentence() {
    let sf = to_special_form(&two_point_sentence()).unwrap();
    let a = Assignment::new();
    let w = find_witnesses(&eq(2), &sf, &a).unwrap().unwrap();
    assert!(w.verify(&eq(2), &sf, &a).unwrap());
    // Every play of the universal values is answered correctly.
    for c in all_tuples(2, sf.m()) {
        let z = w.play(&c);
        assert_eq!(z.len(), sf.m());
    }
    assert!(find_witnesses(&eq(3), &sf, &a).unwrap().is_none());
}

#[test]
fn zero_block_witnesses() {
    let s = eq(2);
    let sf = SpecialForm::new(vec!["u".into()], vec![], Formula::atom("Q", &["u", "u"])).unwrap();
    let w = find_witnesses(&s, &sf, &Assignment::new().with("u", 1))
        .unwrap()
        .unwrap();
    assert_eq!(w.m(), 0);
}

#[test]
fn reference_reports_promise_status() {
    let t = TemplatePair::new(eq(3), eq(2)).unwrap();
    assert_eq!(
        pmc_reference_decide(&t, &two_point_sentence()).unwrap(),
        (Answer::No, InstanceStatus::OutsidePromise)
    );
    let yes = parse_formula_untyped("forall x. Q(x, x)").unwrap();
    assert_eq!(
        pmc_reference_decide(&t, &yes).unwrap().1,
        InstanceStatus::Yes
    );
    let no = parse_formula_untyped("forall x. forall y. Q(x, y)").unwrap();
    assert_eq!(pmc_reference_decide(&t, &no).unwrap().1, InstanceStatus::No);
}

fn agrees(t: &TemplatePair, sf: &SpecialForm, got: Answer) -> bool {
    match pmc_reference_decide(t, &sf.to_formula()).unwrap() {
        (_, InstanceStatus::OutsidePromise) => true,
        (want, _) => want == got,
    }
}

#[test]
fn algorithms_agree_on_small_digraph_templates() {
    let ds = small_digraphs();
    let sentences = small_sentences("R", 2);
    let mut checked = [0usize; 3];
    for a in ds.iter().step_by(3) {
        for b in ds.iter().step_by(5) {
            let Ok(t) = TemplatePair::new(a.clone(), b.clone()) else {
                continue;
            };
            let p = t.profile().unwrap().clone();
            for sf in &sentences {
                if let Some(w) = p.has_forall {
                    assert!(agrees(&t, sf, np_algorithm(&t, w.a_star, sf).unwrap()));
                    checked[0] += 1;
                }
                if let Some(w) = p.has_exists {
                    assert!(agrees(&t, sf, conp_algorithm(&t, w.b_star, sf).unwrap()));
                    checked[1] += 1;
                }
                if let Some(w) = p.has_ae {
                    assert!(agrees(
                        &t,
                        sf,
                        ae_fast_path(&t, w.a_star, w.b_star, sf).unwrap()
                    ));
                    checked[2] += 1;
                }
            }
        }
    }
    assert!(checked.iter().all(|&c| c > 0), "{checked:?}");
}

#[test]
fn algorithms_check_their_witnesses() {
    let t = TemplatePair::new(eq(3), eq(2)).unwrap();
    let sf = to_special_form(&parse_formula_untyped("forall x. Q(x, x)").unwrap()).unwrap();
    assert!(matches!(
        np_algorithm(&t, 0, &sf),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        conp_algorithm(&t, 0, &sf),
        Err(Error::Precondition(_))
    ));
}

/// Ternary `{∃, ∀, ∧, ∨}` sentences over `R`.
fn ternary_sentence() -> impl Strategy<Value = Formula> {
    let var = prop::sample::select(vec!["u", "v", "w"]);
    let leaf = (var.clone(), var.clone(), var.clone())
        .prop_map(|(x, y, z)| Formula::atom("R", &[x, y, z]));
    leaf.prop_recursive(4, 12, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or([a, b])),
            (var.clone(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var.clone(), inner).prop_map(|(v, f)| Formula::forall(v, f)),
        ]
    })
    .prop_map(|f| {
        let free = f.free_vars();
        Formula::exists_all(&free, f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tern_ae_algorithms_match_the_reference(f in ternary_sentence()) {
        let t = tern_ae();
        let p = t.profile().unwrap().clone();
        let sf = to_special_form(&f).unwrap();
        let fw = p.has_forall.unwrap();
        let ew = p.has_exists.unwrap();
        prop_assert!(agrees(&t, &sf, np_algorithm(&t, fw.a_star, &sf).unwrap()));
        prop_assert!(agrees(&t, &sf, conp_algorithm(&t, ew.b_star, &sf).unwrap()));
    }
}
