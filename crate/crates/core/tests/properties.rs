//! Randomized invariants over small structures, formulas and multi-valued
//! functions.

mod common;

use proptest::prelude::*;

use common::{all_mvfs, binary_from_bits, direct_muhom};

use mucheck_core::eval::{find_witnesses, holds, Assignment};
use mucheck_core::homomorphisms::{
    enumerate_muhoms, enumerate_smuhoms, indistinguishable, is_multi_homomorphism,
    is_surjective_multi_homomorphism, MultiValuedFunction,
};
use mucheck_core::logic::{dualize, parse_formula_untyped, to_prenex, to_special_form, Formula};
use mucheck_core::structure::{Signature, Structure, Symbol};
use mucheck_core::text::{parse_structure, structure_to_text};

const VARS: [&str; 3] = ["u", "v", "w"];

fn binary(k: usize) -> impl Strategy<Value = Structure> {
    (1u64..(1 << (k * k)) - 1).prop_map(move |bits| binary_from_bits(k, bits))
}

fn small_binary() -> impl Strategy<Value = Structure> {
    (2usize..=3).prop_flat_map(binary)
}

/// A strict structure with a binary `R` and a unary `P` on `[k]`.
fn mixed(k: usize) -> impl Strategy<Value = Structure> {
    let cells = k * k;
    ((1u64..(1 << cells) - 1), (1u64..(1 << k) - 1)).prop_map(move |(r, p)| {
        let sig = Signature::new(vec![Symbol::new("R", 2), Symbol::new("P", 1)]).unwrap();
        let rt = (0..cells)
            .filter(|i| r >> i & 1 == 1)
            .map(|i| vec![i / k, i % k])
            .collect();
        let pt = (0..k)
            .filter(|i| p >> i & 1 == 1)
            .map(|i| vec![i])
            .collect();
        Structure::new(sig, k, vec![rt, pt]).unwrap()
    })
}

fn var() -> impl Strategy<Value = String> {
    prop::sample::select(&VARS[..]).prop_map(str::to_string)
}

/// Negation-free formulas over `R` with `=` and `≠`.
fn positive_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => (var(), var()).prop_map(|(x, y)| Formula::atom_owned("R", vec![x, y])),
        1 => (var(), var()).prop_map(|(x, y)| Formula::eq(x, y)),
        1 => (var(), var()).prop_map(|(x, y)| Formula::neq(x, y)),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or([a, b])),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var(), inner).prop_map(|(v, f)| Formula::forall(v, f)),
        ]
    })
}

fn any_formula() -> impl Strategy<Value = Formula> {
    positive_formula().prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::and([a, b])),
        ]
    })
}

/// Existential closure.
fn close(f: Formula) -> Formula {
    let free = f.free_vars();
    Formula::exists_all(&free, f)
}

fn positive_sentence() -> impl Strategy<Value = Formula> {
    positive_formula().prop_map(close)
}

/// `{∃, ∀, ∧, ∨}` sentences over `R`.
fn efao_sentence() -> impl Strategy<Value = Formula> {
    let leaf = (var(), var()).prop_map(|(x, y)| Formula::atom_owned("R", vec![x, y]));
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or([a, b])),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var(), inner).prop_map(|(v, f)| Formula::forall(v, f)),
        ]
    })
    .prop_map(close)
}

fn mvf(ka: usize, kb: usize) -> impl Strategy<Value = MultiValuedFunction> {
    prop::collection::vec(1u64..(1 << kb), ka)
        .prop_map(move |masks| MultiValuedFunction::from_masks(kb, masks).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_routes_agree(
        (a, b, f) in (small_binary(), small_binary())
            .prop_flat_map(|(a, b)| { let (ka, kb) = (a.size(), b.size()); (Just(a), Just(b), mvf(ka, kb)) })
    ) {
        let direct = direct_muhom(&f, &a, &b);
        prop_assert_eq!(is_multi_homomorphism(&f, &a, &b).unwrap(), direct);
        prop_assert_eq!(
            is_surjective_multi_homomorphism(&f, &a, &b).unwrap(),
            direct && f.is_surjective()
        );
    }

    #[test]
    fn smuhom_enumeration_matches_brute_force(a in small_binary(), b in small_binary()) {
        let brute: Vec<_> = all_mvfs(a.size(), b.size())
            .into_iter()
            .filter(|f| f.is_surjective() && direct_muhom(f, &a, &b))
            .collect();
        let mut got = enumerate_smuhoms(&a, &b).unwrap();
        got.sort();
        let mut want = brute;
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn muhoms_are_downward_closed(a in small_binary(), b in small_binary()) {
        let muhoms = enumerate_muhoms(&a, &b).unwrap();
        for f in &muhoms {
            for x in 0..f.source_size() {
                for y in f.values(x) {
                    if f.values(x).len() > 1 {
                        let mut masks = f.masks().to_vec();
                        masks[x] &= !(1u64 << y);
                        let g = MultiValuedFunction::from_masks(f.target_size(), masks).unwrap();
                        prop_assert!(muhoms.contains(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn indistinguishability_is_an_equivalence(s in (2usize..=3).prop_flat_map(mixed)) {
        let k = s.size();
        for x in 0..k {
            prop_assert!(indistinguishable(&s, x, x));
            for y in 0..k {
                prop_assert_eq!(indistinguishable(&s, x, y), indistinguishable(&s, y, x));
                for z in 0..k {
                    if indistinguishable(&s, x, y) && indistinguishable(&s, y, z) {
                        prop_assert!(indistinguishable(&s, x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn normal_forms_preserve_truth(s in small_binary(), f in positive_sentence()) {
        let truth = holds(&s, &f).unwrap();
        prop_assert_eq!(holds(&s, &to_prenex(&f).unwrap()).unwrap(), truth);
        let sf = to_special_form(&f).unwrap();
        prop_assert_eq!(holds(&s, &sf.to_formula()).unwrap(), truth);
    }

    #[test]
    fn dual_sentence_flips_on_the_complement(s in small_binary(), f in positive_sentence()) {
        let d = dualize(&f).unwrap();
        let comp = s.complement().unwrap();
        prop_assert_eq!(holds(&comp, &d).unwrap(), !holds(&s, &f).unwrap());
    }

    #[test]
    fn witnesses_exist_iff_true(s in small_binary(), f in positive_sentence()) {
        let sf = to_special_form(&f).unwrap();
        let a = Assignment::new();
        match find_witnesses(&s, &sf, &a).unwrap() {
            Some(w) => {
                prop_assert!(holds(&s, &f).unwrap());
                prop_assert!(w.verify(&s, &sf, &a).unwrap());
            }
            None => prop_assert!(!holds(&s, &f).unwrap()),
        }
    }

    #[test]
    fn smuhoms_preserve_positive_sentences(
        a in small_binary(),
        b in small_binary(),
        f in efao_sentence(),
    ) {
        if !enumerate_smuhoms(&a, &b).unwrap().is_empty() && holds(&a, &f).unwrap() {
            prop_assert!(holds(&b, &f).unwrap());
        }
    }

    #[test]
    fn formula_text_round_trips(f in any_formula()) {
        let text = f.to_string();
        let g = parse_formula_untyped(&text).unwrap();
        prop_assert_eq!(g.to_string(), text);
    }

    #[test]
    fn structure_text_round_trips(s in (2usize..=3).prop_flat_map(mixed)) {
        let back = parse_structure(&structure_to_text(&s)).unwrap();
        prop_assert_eq!(back, s);
    }
}
