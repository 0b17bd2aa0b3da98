use std::fmt;
use std::fmt::Write as _;

use crate::homomorphisms::MultiValuedFunction;
use crate::logic::Fragment;
use crate::structure::Elem;

use super::template::{inline_mvf, TemplateCertificate};

/// Complexity of the promise problem of a template. Open cases are labels
/// of their own and never rounded to a complete class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexityLabel {
    NotATemplate,
    InL,
    NPComplete,
    CoNPComplete,
    PSPACEComplete,
    /// In NP ∩ coNP; hardness unknown.
    InNPcapCoNPHardnessOpen,
    /// NP-hard and coNP-hard; membership below PSPACE unknown.
    NPHardAndCoNPHardMembershipOpen,
    /// `{∃,∧}` and `{∃,∀,∧}` are not classified.
    OutOfScope,
}

impl ComplexityLabel {
    /// The label of the dual problem (NP and coNP swap).
    pub fn dual(self) -> ComplexityLabel {
        match self {
            ComplexityLabel::NPComplete => ComplexityLabel::CoNPComplete,
            ComplexityLabel::CoNPComplete => ComplexityLabel::NPComplete,
            other => other,
        }
    }

    /// Short machine-friendly key.
    pub fn key(self) -> &'static str {
        match self {
            ComplexityLabel::NotATemplate => "not-a-template",
            ComplexityLabel::InL => "L",
            ComplexityLabel::NPComplete => "NP-complete",
            ComplexityLabel::CoNPComplete => "coNP-complete",
            ComplexityLabel::PSPACEComplete => "PSPACE-complete",
            ComplexityLabel::InNPcapCoNPHardnessOpen => "NP-cap-coNP-hardness-open",
            ComplexityLabel::NPHardAndCoNPHardMembershipOpen => "NP-hard-coNP-hard-membership-open",
            ComplexityLabel::OutOfScope => "out-of-scope",
        }
    }
}

impl fmt::Display for ComplexityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityLabel::NotATemplate => "not a template",
            ComplexityLabel::InL => "in L",
            ComplexityLabel::NPComplete => "NP-complete",
            ComplexityLabel::CoNPComplete => "coNP-complete",
            ComplexityLabel::PSPACEComplete => "PSPACE-complete",
            ComplexityLabel::InNPcapCoNPHardnessOpen => "NP∩coNP (hardness open)",
            ComplexityLabel::NPHardAndCoNPHardMembershipOpen => {
                "NP-hard and coNP-hard (membership open)"
            }
            ComplexityLabel::OutOfScope => "out of classification scope",
        })
    }
}

/// The rule of the decision table that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    NoHomomorphism,
    NoSmuhom,
    ConstantHomomorphism,
    NoConstantHomomorphism,
    BooleanTarget,
    BooleanSource,
    BothBoolean,
    EqualityAdded,
    DisequalityAdded,
    ComplementationClosed,
    EqualitySymbol,
    DisequalitySymbol,
    AeSmuhom,
    DigraphCombination,
    ForallAndExists,
    ForallOnly,
    ExistsOnly,
    Neither,
    OutOfScope,
}

impl Rule {
    /// One-line statement of the rule.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::NoHomomorphism => "existential fragments: a template needs a homomorphism A → B",
            Rule::NoSmuhom => "fragments with ∀ and ∨: a template needs a surjective multi-homomorphism A → B",
            Rule::ConstantHomomorphism => "{∃,∧,∨}: a constant homomorphism puts the problem in L",
            Rule::NoConstantHomomorphism => "{∃,∧,∨}: without a constant homomorphism the problem is NP-complete",
            Rule::BooleanTarget => "two-element B: L with an ∃-smuhom, NP-complete with only a ∀-smuhom, PSPACE-complete with neither",
            Rule::BooleanSource => "two-element A: L with a ∀-smuhom, coNP-complete with only an ∃-smuhom, PSPACE-complete with neither",
            Rule::BothBoolean => "two-element A and B: L with an ∃∀-smuhom, PSPACE-complete otherwise",
            Rule::EqualityAdded => "{∃,∀,∧,∨,=}: PSPACE-complete over every template",
            Rule::DisequalityAdded => "{∃,∀,∧,∨,≠}: PSPACE-complete over every template (dual of the = case)",
            Rule::ComplementationClosed => "templates closed under complementation are PSPACE-complete",
            Rule::EqualitySymbol => "a symbol interpreted as equality on both sides with |A| ≥ |B| gives PSPACE-hardness",
            Rule::DisequalitySymbol => "a symbol interpreted as disequality on both sides with |B| ≥ |A| gives PSPACE-hardness",
            Rule::AeSmuhom => "{∃,∀,∧,∨}: an ∃∀-smuhom puts the problem in L",
            Rule::DigraphCombination => "digraphs: a ∀-smuhom and an ∃-smuhom combine into an ∃∀-smuhom, so the problem is in L",
            Rule::ForallAndExists => "{∃,∀,∧,∨}: a ∀-smuhom and an ∃-smuhom but no ∃∀-smuhom give membership in NP ∩ coNP",
            Rule::ForallOnly => "{∃,∀,∧,∨}: a ∀-smuhom and no ∃-smuhom give NP-completeness",
            Rule::ExistsOnly => "{∃,∀,∧,∨}: an ∃-smuhom and no ∀-smuhom give coNP-completeness",
            Rule::Neither => "{∃,∀,∧,∨}: neither a ∀-smuhom nor an ∃-smuhom gives NP-hardness and coNP-hardness",
            Rule::OutOfScope => "{∃,∧} and {∃,∀,∧} are not classified",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Rule::NoHomomorphism => "no-homomorphism",
            Rule::NoSmuhom => "no-smuhom",
            Rule::ConstantHomomorphism => "constant-homomorphism",
            Rule::NoConstantHomomorphism => "no-constant-homomorphism",
            Rule::BooleanTarget => "boolean-target",
            Rule::BooleanSource => "boolean-source",
            Rule::BothBoolean => "both-boolean",
            Rule::EqualityAdded => "equality-added",
            Rule::DisequalityAdded => "disequality-added",
            Rule::ComplementationClosed => "complementation-closed",
            Rule::EqualitySymbol => "equality-symbol",
            Rule::DisequalitySymbol => "disequality-symbol",
            Rule::AeSmuhom => "ae-smuhom",
            Rule::DigraphCombination => "digraph-combination",
            Rule::ForallAndExists => "forall-and-exists",
            Rule::ForallOnly => "forall-only",
            Rule::ExistsOnly => "exists-only",
            Rule::Neither => "neither",
            Rule::OutOfScope => "out-of-scope",
        }
    }
}

/// Which special property a reported smuhom has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmuhomKind {
    Forall,
    Exists,
    Ae,
}

/// A checkable fact backing a verdict. Elements are 0-based here and
/// printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Template(TemplateCertificate),
    ConstantHomomorphism(Elem),
    /// None of the `k_b` constant maps is a homomorphism.
    NoConstantHomomorphism {
        checked: usize,
    },
    Smuhom {
        kind: SmuhomKind,
        function: MultiValuedFunction,
        a_star: Option<Elem>,
        b_star: Option<Elem>,
    },
    /// Every one of `enumerated` smuhoms lacks the property.
    Absent {
        kind: SmuhomKind,
        enumerated: usize,
    },
    EqualitySymbol(String),
    DisequalitySymbol(String),
    /// Something the fragment normalization did.
    Normalization(String),
    Note(String),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind_name = |k: &SmuhomKind| match k {
            SmuhomKind::Forall => "∀-smuhom",
            SmuhomKind::Exists => "∃-smuhom",
            SmuhomKind::Ae => "∃∀-smuhom",
        };
        match self {
            Evidence::Template(c) => write!(f, "template: {c}"),
            Evidence::ConstantHomomorphism(b) => {
                write!(f, "constant map to {} is a homomorphism", b + 1)
            }
            Evidence::NoConstantHomomorphism { checked } => {
                write!(f, "none of the {checked} constant maps is a homomorphism")
            }
            Evidence::Smuhom {
                kind,
                function,
                a_star,
                b_star,
            } => {
                write!(f, "{} {}", kind_name(kind), inline_mvf(function))?;
                if let Some(a) = a_star {
                    write!(f, " a*={}", a + 1)?;
                }
                if let Some(b) = b_star {
                    write!(f, " b*={}", b + 1)?;
                }
                Ok(())
            }
            Evidence::Absent { kind, enumerated } => {
                write!(
                    f,
                    "no {} among {enumerated} enumerated smuhoms",
                    kind_name(kind)
                )
            }
            Evidence::EqualitySymbol(s) => write!(f, "`{s}` is equality in A and in B"),
            Evidence::DisequalitySymbol(s) => write!(f, "`{s}` is disequality in A and in B"),
            Evidence::Normalization(s) => write!(f, "normalization: {s}"),
            Evidence::Note(s) => f.write_str(s),
        }
    }
}

/// Outcome of [`super::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityVerdict {
    pub label: ComplexityLabel,
    /// Fragment as requested.
    pub fragment: Fragment,
    /// Canonical fragment after normalization.
    pub canonical: Fragment,
    /// The decision was taken on the dual template and the label dualized.
    pub dualized: bool,
    pub rule: Rule,
    pub evidence: Vec<Evidence>,
}

impl ComplexityVerdict {
    /// Plain-text report; with `key_value` every line is a `key: value`
    /// record.
    pub fn report(&self, key_value: bool) -> String {
        let mut out = String::new();
        if key_value {
            writeln!(out, "label: {}", self.label.key()).unwrap();
            writeln!(out, "fragment: {}", self.fragment).unwrap();
            writeln!(out, "canonical: {}", self.canonical).unwrap();
            writeln!(out, "dualized: {}", self.dualized).unwrap();
            writeln!(out, "rule: {}", self.rule.key()).unwrap();
            writeln!(out, "citation: {}", self.rule.citation()).unwrap();
            for e in &self.evidence {
                writeln!(out, "evidence: {e}").unwrap();
            }
        } else {
            writeln!(out, "{}", self.label).unwrap();
            writeln!(
                out,
                "  fragment  {} (decided over {})",
                self.fragment, self.canonical
            )
            .unwrap();
            if self.dualized {
                writeln!(out, "  decided on the dual template; NP and coNP swapped").unwrap();
            }
            writeln!(out, "  rule      {}", self.rule.citation()).unwrap();
            for e in &self.evidence {
                writeln!(out, "  evidence  {e}").unwrap();
            }
        }
        out
    }
}

impl fmt::Display for ComplexityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report(false))
    }
}
