use crate::error::{Error, Result};
use crate::homomorphisms::{
    digraph_combine, exists_constant_homomorphism, find_smuhom, is_multi_homomorphism,
    maximal_muhoms, MultiValuedFunction,
};
use crate::logic::{joint_complement_map, normalize_fragment, Fragment};
use crate::structure::{Relation, Structure};

use super::template::{is_template, TemplateCertificate, TemplatePair};
use super::verdict::{ComplexityLabel, ComplexityVerdict, Evidence, Rule, SmuhomKind};

/// Symbols interpreted by `pred` on both sides.
fn symbols_where(t: &TemplatePair, pred: fn(&[usize]) -> bool) -> Vec<String> {
    let (a, b) = (t.a(), t.b());
    a.signature()
        .symbols()
        .iter()
        .enumerate()
        .filter(|(i, s)| {
            s.arity == 2
                && *a.relation_at(*i) == Relation::from_predicate(2, a.size(), pred).unwrap()
                && *b.relation_at(*i) == Relation::from_predicate(2, b.size(), pred).unwrap()
        })
        .map(|(_, s)| s.name.clone())
        .collect()
}

struct Decision {
    label: ComplexityLabel,
    rule: Rule,
    evidence: Vec<Evidence>,
}

fn decide(label: ComplexityLabel, rule: Rule, evidence: Vec<Evidence>) -> Decision {
    Decision {
        label,
        rule,
        evidence,
    }
}

/// Classifies the promise problem of `t` for fragment `l`.
///
/// The fragment is first normalized to a canonical one. For `{∃,∧,∨}` the
/// answer depends on constant homomorphisms. For `{∃,∀,∧,∨}` the rules are
/// tried in this order: two-element sides, equality and complementation
/// rules, then the smuhom kinds. Trivial fragments are an error.
pub fn classify(t: &TemplatePair, l: Fragment) -> Result<ComplexityVerdict> {
    if l.is_trivial() {
        return Err(Error::TrivialFragment(l.to_string()));
    }
    let n = normalize_fragment(t.a(), t.b(), l)?;
    let mut notes = Vec::new();
    if let Some(q) = n.rewriter.eq_symbol() {
        notes.push(Evidence::Normalization(format!(
            "= interpreted by the new symbol {q}"
        )));
    }
    if let Some(q) = n.rewriter.neq_symbol() {
        notes.push(Evidence::Normalization(format!(
            "≠ interpreted by the new symbol {q}"
        )));
    }
    if n.closed() {
        notes.push(Evidence::Normalization(
            "¬ eliminated by closing under complementation".into(),
        ));
    }
    if n.dualized() {
        notes.push(Evidence::Normalization(
            "moved to the dual template (B̄, Ā)".into(),
        ));
    }
    let nt = TemplatePair::new(n.a.clone(), n.b.clone())?;
    let fragment = n.fragment;
    let mut d = if fragment == Fragment::EAO {
        classify_eao(&nt)?
    } else if fragment == Fragment::EFAO {
        classify_efao(&nt, n.added_eq(), n.added_neq(), n.closed())?
    } else {
        let cert = is_template(&nt, fragment)?;
        let mut evidence = vec![Evidence::Template(cert.clone())];
        if fragment == Fragment::EA && !cert.is_template() {
            decide(
                ComplexityLabel::NotATemplate,
                Rule::NoHomomorphism,
                evidence,
            )
        } else {
            if !cert.is_template() {
                evidence.push(Evidence::Note(
                    "no smuhom; template status for {∃,∀,∧} is not decided here".into(),
                ));
            }
            decide(ComplexityLabel::OutOfScope, Rule::OutOfScope, evidence)
        }
    };
    notes.append(&mut d.evidence);
    Ok(ComplexityVerdict {
        label: if n.dualized() {
            d.label.dual()
        } else {
            d.label
        },
        fragment: l,
        canonical: fragment,
        dualized: n.dualized(),
        rule: d.rule,
        evidence: notes,
    })
}

fn classify_eao(t: &TemplatePair) -> Result<Decision> {
    let cert = is_template(t, Fragment::EAO)?;
    if !cert.is_template() {
        return Ok(decide(
            ComplexityLabel::NotATemplate,
            Rule::NoHomomorphism,
            vec![Evidence::Template(cert)],
        ));
    }
    let mut evidence = vec![Evidence::Template(cert)];
    Ok(match exists_constant_homomorphism(t.a(), t.b())? {
        Some(b) => {
            evidence.push(Evidence::ConstantHomomorphism(b));
            decide(ComplexityLabel::InL, Rule::ConstantHomomorphism, evidence)
        }
        None => {
            evidence.push(Evidence::NoConstantHomomorphism {
                checked: t.b().size(),
            });
            decide(
                ComplexityLabel::NPComplete,
                Rule::NoConstantHomomorphism,
                evidence,
            )
        }
    })
}

fn smuhom_evidence(t: &TemplatePair, kind: SmuhomKind) -> Result<Evidence> {
    let p = t.profile()?;
    let found = match kind {
        SmuhomKind::Forall => p.forall_smuhom().map(|(f, a)| (f, Some(a), None)),
        SmuhomKind::Exists => p.exists_smuhom().map(|(f, b)| (f, None, Some(b))),
        SmuhomKind::Ae => p.ae_smuhom().map(|(f, a, b)| (f, Some(a), Some(b))),
    };
    Ok(match found {
        Some((f, a_star, b_star)) => Evidence::Smuhom {
            kind,
            function: f.clone(),
            a_star,
            b_star,
        },
        None => Evidence::Absent {
            kind,
            enumerated: p.all_smuhoms.len(),
        },
    })
}

fn classify_efao(
    t: &TemplatePair,
    added_eq: bool,
    added_neq: bool,
    closed: bool,
) -> Result<Decision> {
    let cert = is_template(t, Fragment::EFAO)?;
    if !cert.is_template() {
        return Ok(decide(
            ComplexityLabel::NotATemplate,
            Rule::NoSmuhom,
            vec![Evidence::Template(cert)],
        ));
    }
    let mut evidence = vec![Evidence::Template(cert)];
    let p = t.profile()?;
    let (has_f, has_e, has_ae) = (
        p.has_forall.is_some(),
        p.has_exists.is_some(),
        p.has_ae.is_some(),
    );
    let all_kinds = |evidence: &mut Vec<Evidence>| -> Result<()> {
        for k in [SmuhomKind::Ae, SmuhomKind::Forall, SmuhomKind::Exists] {
            evidence.push(smuhom_evidence(t, k)?);
        }
        Ok(())
    };

    // Two-element sides.
    let (a_bool, b_bool) = (t.a().size() == 2, t.b().size() == 2);
    if a_bool || b_bool {
        all_kinds(&mut evidence)?;
        let (label, rule) = match (a_bool, b_bool) {
            (true, true) if has_ae => (ComplexityLabel::InL, Rule::BothBoolean),
            (true, true) => (ComplexityLabel::PSPACEComplete, Rule::BothBoolean),
            (false, true) if has_e => (ComplexityLabel::InL, Rule::BooleanTarget),
            (false, true) if has_f => (ComplexityLabel::NPComplete, Rule::BooleanTarget),
            (false, true) => (ComplexityLabel::PSPACEComplete, Rule::BooleanTarget),
            (true, false) if has_f => (ComplexityLabel::InL, Rule::BooleanSource),
            (true, false) if has_e => (ComplexityLabel::CoNPComplete, Rule::BooleanSource),
            _ => (ComplexityLabel::PSPACEComplete, Rule::BooleanSource),
        };
        return Ok(decide(label, rule, evidence));
    }

    // Equality, disequality and complementation.
    if added_eq {
        return Ok(decide(
            ComplexityLabel::PSPACEComplete,
            Rule::EqualityAdded,
            evidence,
        ));
    }
    if added_neq {
        return Ok(decide(
            ComplexityLabel::PSPACEComplete,
            Rule::DisequalityAdded,
            evidence,
        ));
    }
    if closed || joint_complement_map(t.a(), t.b()).is_some() {
        return Ok(decide(
            ComplexityLabel::PSPACEComplete,
            Rule::ComplementationClosed,
            evidence,
        ));
    }
    if t.a().size() >= t.b().size() {
        if let Some(q) = symbols_where(t, |x| x[0] == x[1]).into_iter().next() {
            evidence.push(Evidence::EqualitySymbol(q));
            return Ok(decide(
                ComplexityLabel::PSPACEComplete,
                Rule::EqualitySymbol,
                evidence,
            ));
        }
    }
    if t.b().size() >= t.a().size() {
        if let Some(q) = symbols_where(t, |x| x[0] != x[1]).into_iter().next() {
            evidence.push(Evidence::DisequalitySymbol(q));
            return Ok(decide(
                ComplexityLabel::PSPACEComplete,
                Rule::DisequalitySymbol,
                evidence,
            ));
        }
    }

    // Smuhom kinds.
    if has_ae {
        evidence.push(smuhom_evidence(t, SmuhomKind::Ae)?);
        return Ok(decide(ComplexityLabel::InL, Rule::AeSmuhom, evidence));
    }
    if has_f && has_e && t.a().signature().is_digraph() {
        let (f, _) = p.forall_smuhom().unwrap();
        let (g, _) = p.exists_smuhom().unwrap();
        let (h, a_star, b_star, _) = digraph_combine(f, g, t.a(), t.b())?;
        evidence.push(Evidence::Smuhom {
            kind: SmuhomKind::Ae,
            function: h,
            a_star: Some(a_star),
            b_star: Some(b_star),
        });
        return Ok(decide(
            ComplexityLabel::InL,
            Rule::DigraphCombination,
            evidence,
        ));
    }
    all_kinds(&mut evidence)?;
    let (label, rule) = match (has_f, has_e) {
        (true, true) => (
            ComplexityLabel::InNPcapCoNPHardnessOpen,
            Rule::ForallAndExists,
        ),
        (true, false) => (ComplexityLabel::NPComplete, Rule::ForallOnly),
        (false, true) => (ComplexityLabel::CoNPComplete, Rule::ExistsOnly),
        (false, false) => (
            ComplexityLabel::NPHardAndCoNPHardMembershipOpen,
            Rule::Neither,
        ),
    };
    Ok(decide(label, rule, evidence))
}

/// A multi-homomorphism of `(A, B)` (surjective for `{∃,∀,∧,∨}`) that is
/// not one of `(C, D)`, or `None` if every one is. `None` means `(C, D)` is
/// p-definable from `(A, B)`.
pub fn p_definability_counterexample(
    src: &TemplatePair,
    dst: &TemplatePair,
    l: Fragment,
) -> Result<Option<MultiValuedFunction>> {
    if src.a().size() != dst.a().size() || src.b().size() != dst.b().size() {
        return Err(Error::Precondition(
            "p-definability needs matching universes on both sides".into(),
        ));
    }
    let surjective = if l == Fragment::EAO {
        false
    } else if l == Fragment::EFAO {
        true
    } else {
        return Err(Error::NonCanonicalFragment(format!(
            "{l}: p-definability is characterized for {{∃,∧,∨}} and {{∃,∀,∧,∨}} only"
        )));
    };
    // Both families are downward closed, so comparing maximal members is
    // enough; every smuhom lies below a maximal muhom, which is then
    // surjective as well.
    for f in maximal_muhoms(src.a(), src.b())? {
        if surjective && !f.is_surjective() {
            continue;
        }
        if !is_multi_homomorphism(&f, dst.a(), dst.b())? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn p_definable(src: &TemplatePair, dst: &TemplatePair, l: Fragment) -> Result<bool> {
    Ok(p_definability_counterexample(src, dst, l)?.is_none())
}

/// `(C, D)` relaxes `(A, B)`: smuhoms `C → A` and `B → D` exist.
pub fn is_relaxation(coarse: &TemplatePair, fine: &TemplatePair) -> Result<bool> {
    Ok(
        find_smuhom(coarse.a(), fine.a())?.is_some()
            && find_smuhom(fine.b(), coarse.b())?.is_some(),
    )
}

/// Convenience: whether the pair of structures is a template for `l`.
pub fn template_certificate(
    a: &Structure,
    b: &Structure,
    l: Fragment,
) -> Result<TemplateCertificate> {
    is_template(&TemplatePair::new(a.clone(), b.clone())?, l)
}
