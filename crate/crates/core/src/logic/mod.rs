//! Formulas of fragment-restricted first-order logic.

mod formula;
mod fragment;
mod normalize;
mod parse;
mod prenex;

pub use formula::{Formula, Quantifier, SizeStats, Var};
pub use fragment::Fragment;
pub use normalize::{joint_complement_map, normalize_fragment, Normalized, Rewriter};
pub use parse::{parse_formula, parse_formula_untyped};
pub use prenex::{
    dualize, push_negation, standardize_apart, to_prenex, to_special_form, SpecialForm,
};
