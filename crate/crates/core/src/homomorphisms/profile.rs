use crate::error::{Error, Result};
use crate::structure::{Elem, Structure};

use super::mvf::MultiValuedFunction;
use super::search::{enumerate_smuhoms, is_surjective_multi_homomorphism};

/// Surjective multi-homomorphisms of a pair together with the first members
/// of each special kind.
///
/// A ∀-smuhom sends some `a*` to the whole target; an ∃-smuhom has some `b*`
/// in every value set; an ∃∀-smuhom is both at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmuhomProfile {
    pub all_smuhoms: Vec<MultiValuedFunction>,
    pub has_forall: Option<ForallWitness>,
    pub has_exists: Option<ExistsWitness>,
    pub has_ae: Option<AeWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForallWitness {
    /// Index into `all_smuhoms`.
    pub index: usize,
    pub a_star: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExistsWitness {
    pub index: usize,
    pub b_star: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AeWitness {
    pub index: usize,
    pub a_star: Elem,
    pub b_star: Elem,
}

/// Least `a*` with `f(a*) = B`, if any.
pub fn forall_point(f: &MultiValuedFunction) -> Option<Elem> {
    f.full_points().first().copied()
}

/// Least `b*` with `f⁻¹(b*) = A`, if any.
pub fn exists_point(f: &MultiValuedFunction) -> Option<Elem> {
    f.common_values().first().copied()
}

impl SmuhomProfile {
    pub fn from_smuhoms(all_smuhoms: Vec<MultiValuedFunction>) -> Self {
        let has_forall = all_smuhoms
            .iter()
            .enumerate()
            .find_map(|(index, f)| forall_point(f).map(|a_star| ForallWitness { index, a_star }));
        let has_exists = all_smuhoms
            .iter()
            .enumerate()
            .find_map(|(index, f)| exists_point(f).map(|b_star| ExistsWitness { index, b_star }));
        let has_ae = all_smuhoms.iter().enumerate().find_map(|(index, f)| {
            Some(AeWitness {
                index,
                a_star: forall_point(f)?,
                b_star: exists_point(f)?,
            })
        });
        SmuhomProfile {
            all_smuhoms,
            has_forall,
            has_exists,
            has_ae,
        }
    }

    pub fn forall_smuhom(&self) -> Option<(&MultiValuedFunction, Elem)> {
        self.has_forall
            .map(|w| (&self.all_smuhoms[w.index], w.a_star))
    }

    pub fn exists_smuhom(&self) -> Option<(&MultiValuedFunction, Elem)> {
        self.has_exists
            .map(|w| (&self.all_smuhoms[w.index], w.b_star))
    }

    pub fn ae_smuhom(&self) -> Option<(&MultiValuedFunction, Elem, Elem)> {
        self.has_ae
            .map(|w| (&self.all_smuhoms[w.index], w.a_star, w.b_star))
    }

    pub fn is_empty(&self) -> bool {
        self.all_smuhoms.is_empty()
    }
}

pub fn smuhom_profile(a: &Structure, b: &Structure) -> Result<SmuhomProfile> {
    Ok(SmuhomProfile::from_smuhoms(enumerate_smuhoms(a, b)?))
}

/// Checks that `f` is a surjective multi-homomorphism with `f(a*) = B` and
/// `b* ∈ f(a)` for every `a`.
pub fn is_ae_smuhom(
    f: &MultiValuedFunction,
    a: &Structure,
    b: &Structure,
    a_star: Elem,
    b_star: Elem,
) -> Result<bool> {
    if a_star >= a.size() || b_star >= b.size() {
        return Err(Error::InvalidFunction(
            "witness outside the universe".into(),
        ));
    }
    Ok(is_surjective_multi_homomorphism(f, a, b)?
        && f.full_points().contains(&a_star)
        && f.common_values().contains(&b_star))
}
