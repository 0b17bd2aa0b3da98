//! Fixtures shared by the benchmarks.

use mucheck_core::catalog::{four_digraph, small_sentences, tern_ae, two_point_sentence};
use mucheck_core::classifier::TemplatePair;
use mucheck_core::logic::{to_special_form, Formula, SpecialForm};
use mucheck_core::structure::Structure;

pub fn equality(k: usize) -> Structure {
    Structure::equality("Q", k).unwrap()
}

/// `([k]; R)` with `R` the directed cycle.
pub fn cycle(k: usize) -> Structure {
    let tuples = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Structure::single("R", 2, k, tuples).unwrap()
}

/// The directed 3-cycle against `([2]; {12, 21, 22})`, which has a
/// ∀-smuhom.
pub fn forall_template() -> TemplatePair {
    let b = Structure::single("R", 2, 2, vec![vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
    TemplatePair::new(cycle(3), b).unwrap()
}

/// The two-point sentence and its special form.
pub fn two_point() -> (Formula, SpecialForm) {
    let f = two_point_sentence();
    let sf = to_special_form(&f).unwrap();
    (f, sf)
}

/// Named templates used by the profile and classification benches.
pub fn templates() -> Vec<(&'static str, TemplatePair)> {
    vec![
        ("tern-ae", tern_ae()),
        ("four-digraph", four_digraph()),
        (
            "eq-3-2",
            TemplatePair::new(equality(3), equality(2)).unwrap(),
        ),
    ]
}

/// Special-form sentences over `R` with at most two blocks.
pub fn sentences() -> Vec<SpecialForm> {
    small_sentences("R", 2)
}
