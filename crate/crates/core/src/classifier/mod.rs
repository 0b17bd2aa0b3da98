//! Template tests, the complexity decision table, p-definability and
//! relaxations.

mod classify;
mod template;
mod verdict;

pub use classify::{
    classify, is_relaxation, p_definability_counterexample, p_definable, template_certificate,
};
pub use template::{inline_mvf, is_template, TemplateCertificate, TemplatePair};
pub use verdict::{ComplexityLabel, ComplexityVerdict, Evidence, Rule, SmuhomKind};
