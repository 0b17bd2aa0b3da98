use crate::classifier::TemplatePair;
use crate::error::{Error, Result};
use crate::homomorphisms::{
    indistinguishability_partition, is_surjective_multi_homomorphism, preserves_partition,
    IndistinguishabilityPartition, MultiValuedFunction,
};
use crate::logic::{dualize, joint_complement_map, Formula, Fragment};
use crate::structure::{Relation, Signature, Structure};

use super::definability::{p_definitions, Definitions};
use super::Limits;

/// `(B̄, Ā)`.
pub fn dual_template(t: &TemplatePair) -> Result<TemplatePair> {
    t.dual()
}

/// The dual template with the dual sentence. `A ⊨ φ` iff `Ā ⊭ φ^d`, so Yes
/// and No instances trade places.
pub fn dual_instance(t: &TemplatePair, sentence: &Formula) -> Result<(TemplatePair, Formula)> {
    Ok((t.dual()?, dualize(sentence)?))
}

/// The chain from a template closed under complementation down to a pair
/// of equality structures:
/// `(A, B)` defines `C = (A; ∼_A)`, `D = (B; ∼_B)`, and
/// `E = ([m]; =)`, `F = ([n]; =)` relax `(C, D)`.
#[derive(Clone, Debug)]
pub struct QuotientChain {
    pub source: TemplatePair,
    pub partition_a: IndistinguishabilityPartition,
    pub partition_b: IndistinguishabilityPartition,
    /// `(C, D)`, symbol `sim`.
    pub middle: TemplatePair,
    /// `(E, F)`, symbol `sim`.
    pub equality: TemplatePair,
    /// Smuhom `E → C`: `i` goes to the `i`-th class of `∼_A`.
    pub e_to_c: MultiValuedFunction,
    /// Smuhom `D → F`: every element goes to its class.
    pub d_to_f: MultiValuedFunction,
}

fn sim_structure(p: &IndistinguishabilityPartition, size: usize) -> Result<Structure> {
    let rel = Relation::from_predicate(2, size, |t| p.related(t[0], t[1]))?;
    Structure::from_relations(Signature::single("sim", 2)?, size, vec![rel], true)
}

/// Builds the quotient chain of a template closed under complementation.
pub fn quotient_reduction(t: &TemplatePair) -> Result<QuotientChain> {
    if joint_complement_map(t.a(), t.b()).is_none() {
        return Err(Error::Precondition(
            "the template is not closed under complementation".into(),
        ));
    }
    let partition_a = indistinguishability_partition(t.a());
    let partition_b = indistinguishability_partition(t.b());
    let (m, n) = (partition_a.class_count(), partition_b.class_count());
    if m < 2 || n < 2 {
        return Err(Error::Precondition(format!(
            "∼ has {m} and {n} classes; strict structures give at least two"
        )));
    }
    if m < n {
        return Err(Error::Precondition(format!(
            "∼_A has {m} classes and ∼_B has {n}; a smuhom needs m ≥ n"
        )));
    }
    let middle = TemplatePair::new(
        sim_structure(&partition_a, t.a().size())?,
        sim_structure(&partition_b, t.b().size())?,
    )?;
    let equality = TemplatePair::new(
        Structure::equality("sim", m)?,
        Structure::equality("sim", n)?,
    )?;
    let e_to_c = MultiValuedFunction::new(t.a().size(), partition_a.blocks.clone())?;
    let classes: Vec<usize> = (0..t.b().size()).map(|b| partition_b.class_of(b)).collect();
    let d_to_f = MultiValuedFunction::from_function(n, &classes)?;
    Ok(QuotientChain {
        source: t.clone(),
        partition_a,
        partition_b,
        middle,
        equality,
        e_to_c,
        d_to_f,
    })
}

impl QuotientChain {
    /// Whether `E → C` and `D → F` are smuhoms.
    pub fn relaxation_holds(&self) -> Result<bool> {
        Ok(
            is_surjective_multi_homomorphism(&self.e_to_c, self.equality.a(), self.middle.a())?
                && is_surjective_multi_homomorphism(
                    &self.d_to_f,
                    self.middle.b(),
                    self.equality.b(),
                )?,
        )
    }

    /// Smuhoms of the source template that do not preserve `∼`.
    pub fn non_preserving_smuhoms(&self) -> Result<Vec<MultiValuedFunction>> {
        Ok(self
            .source
            .profile()?
            .all_smuhoms
            .iter()
            .filter(|f| !preserves_partition(f, &self.partition_a, &self.partition_b))
            .cloned()
            .collect())
    }

    /// Defines `sim` over the source signature.
    pub fn definitions(&self, limits: &Limits) -> Result<Definitions> {
        p_definitions(&self.source, &self.middle, Fragment::EFAO, limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_equality_template() {
        let a = Structure::equality("Q", 3)
            .unwrap()
            .complementation_closure()
            .unwrap();
        let b = Structure::equality("Q", 2)
            .unwrap()
            .complementation_closure()
            .unwrap();
        let chain = quotient_reduction(&TemplatePair::new(a, b).unwrap()).unwrap();
        assert_eq!(chain.partition_a.class_count(), 3);
        assert_eq!(chain.partition_b.class_count(), 2);
        assert!(chain.relaxation_holds().unwrap());
        assert!(chain.non_preserving_smuhoms().unwrap().is_empty());
    }

    #[test]
    fn dual_is_an_involution() {
        let t = TemplatePair::new(
            Structure::equality("Q", 3).unwrap(),
            Structure::equality("Q", 2).unwrap(),
        )
        .unwrap();
        let d = dual_template(&t).unwrap();
        assert_eq!(d.a().relation_at(0).len(), 2);
        assert_eq!(d.b().relation_at(0).len(), 6);
        assert_eq!(dual_template(&d).unwrap(), t);
    }
}
