//! Decision procedures for the promise problem of a template.

use std::fmt;

use crate::classifier::TemplatePair;
use crate::error::{Error, Result};
use crate::homomorphisms::{full_mask, MultiValuedFunction};
use crate::logic::{dualize, to_special_form, Formula, SpecialForm, Var};
use crate::structure::{Elem, Structure};

use super::compiled::{holds, Compiled};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(yes: bool) -> Answer {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }

    pub fn negate(self) -> Answer {
        Answer::from_bool(!self.is_yes())
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_yes() { "yes" } else { "no" })
    }
}

/// Where a sentence falls with respect to the promise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceStatus {
    /// True in the strong structure `A`.
    Yes,
    /// False in the weak structure `B`.
    No,
    /// False in `A` but true in `B`; any answer is acceptable.
    OutsidePromise,
}

/// Decides by evaluating the sentence in `A`, and reports the promise
/// status of the instance.
pub fn pmc_reference_decide(
    t: &TemplatePair,
    sentence: &Formula,
) -> Result<(Answer, InstanceStatus)> {
    let in_a = holds(t.a(), sentence)?;
    if in_a {
        return Ok((Answer::Yes, InstanceStatus::Yes));
    }
    let in_b = holds(t.b(), sentence)?;
    let status = if in_b {
        InstanceStatus::OutsidePromise
    } else {
        InstanceStatus::No
    };
    Ok((Answer::No, status))
}

/// Slot order `y1, z1, y2, z2, …` for a special-form sentence.
fn block_order(sf: &SpecialForm) -> Result<Vec<Var>> {
    if !sf.is_sentence() {
        return Err(Error::NotASentence(sf.free.clone()));
    }
    Ok(sf
        .blocks
        .iter()
        .flat_map(|(y, z)| [y.clone(), z.clone()])
        .collect())
}

/// Yes iff some choice of the existential values works when every universal
/// variable is fixed to `a_star`. No precondition check.
pub(crate) fn np_core(a: &Structure, a_star: Elem, sf: &SpecialForm) -> Result<Answer> {
    let order = block_order(sf)?;
    let matrix = Compiled::new(&sf.matrix, a.signature(), &order)?;
    let m = sf.m();
    let k = a.size();
    let mut env = vec![0; matrix.slot_count().max(1)];
    for i in 0..m {
        env[2 * i] = a_star;
    }
    for r in 0..k.pow(m as u32) {
        let mut x = r;
        for i in (0..m).rev() {
            env[2 * i + 1] = x % k;
            x /= k;
        }
        if matrix.eval_slots(a, &mut env) {
            return Ok(Answer::Yes);
        }
    }
    Ok(Answer::No)
}

/// Membership algorithm for templates with a ∀-smuhom `f`, `f(a*) = B`.
pub fn np_algorithm(t: &TemplatePair, a_star: Elem, sf: &SpecialForm) -> Result<Answer> {
    let ok = t
        .profile()?
        .all_smuhoms
        .iter()
        .any(|f| f.full_points().contains(&a_star));
    if !ok {
        return Err(Error::Precondition(format!(
            "no ∀-smuhom sends element {} onto the whole target",
            a_star + 1
        )));
    }
    np_core(t.a(), a_star, sf)
}

/// The dual sentence in special form: `E ⊨ ¬φ` iff `Ē ⊨ dual(φ)`.
pub fn dual_special_form(sf: &SpecialForm) -> Result<SpecialForm> {
    to_special_form(&dualize(&sf.to_formula())?)
}

/// Membership algorithm for templates with an ∃-smuhom `g`, `g⁻¹(b*) = A`:
/// the negated answer of [`np_algorithm`] on the dual template `(B̄, Ā)`,
/// where `g⁻¹` is a ∀-smuhom with `g⁻¹(b*) = A`.
pub fn conp_algorithm(t: &TemplatePair, b_star: Elem, sf: &SpecialForm) -> Result<Answer> {
    let ok = t
        .profile()?
        .all_smuhoms
        .iter()
        .any(|g| g.common_values().contains(&b_star));
    if !ok {
        return Err(Error::Precondition(format!(
            "no ∃-smuhom has element {} in every value set",
            b_star + 1
        )));
    }
    let b_bar = t.b().complement()?;
    Ok(np_core(&b_bar, b_star, &dual_special_form(sf)?)?.negate())
}

/// `f′(a*) = B` and `f′(a) = {b*}` elsewhere.
pub fn ae_function(k_a: usize, k_b: usize, a_star: Elem, b_star: Elem) -> MultiValuedFunction {
    let values = (0..k_a)
        .map(|x| {
            if x == a_star {
                full_mask(k_b)
            } else {
                1 << b_star
            }
        })
        .collect();
    MultiValuedFunction::from_masks(k_b, values).unwrap()
}

/// The structure `C`, the image of `A` under [`ae_function`].
pub fn ae_image(a: &Structure, k_b: usize, a_star: Elem, b_star: Elem) -> Result<Structure> {
    a.image(&ae_function(a.size(), k_b, a_star, b_star))
}

/// Membership algorithm for templates with an ∃∀-smuhom (`f(a*) = B`,
/// `f⁻¹(b*) = A`): evaluates the matrix in `C` with every universal
/// variable at the least element `c* ≠ b*` and every existential at `b*`.
pub fn ae_fast_path(
    t: &TemplatePair,
    a_star: Elem,
    b_star: Elem,
    sf: &SpecialForm,
) -> Result<Answer> {
    let ok = t
        .profile()?
        .all_smuhoms
        .iter()
        .any(|f| f.full_points().contains(&a_star) && f.common_values().contains(&b_star));
    if !ok {
        return Err(Error::Precondition(format!(
            "no ∃∀-smuhom with witnesses ({}, {})",
            a_star + 1,
            b_star + 1
        )));
    }
    let c = ae_image(t.a(), t.b().size(), a_star, b_star)?;
    let c_star = if b_star == 0 { 1 } else { 0 };
    let order = block_order(sf)?;
    let matrix = Compiled::new(&sf.matrix, c.signature(), &order)?;
    let mut env = vec![0; matrix.slot_count().max(1)];
    for i in 0..sf.m() {
        env[2 * i] = c_star;
        env[2 * i + 1] = b_star;
    }
    Ok(Answer::from_bool(matrix.eval_slots(&c, &mut env)))
}
