use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::homomorphisms::{
    candidate_count, find_homomorphism, find_smuhom, smuhom_profile, MultiValuedFunction,
    SmuhomProfile,
};
use crate::logic::Fragment;
use crate::structure::{Elem, Structure};

/// A pair of similar strict structures `(A, B)` with a lazily computed
/// smuhom profile.
#[derive(Debug)]
pub struct TemplatePair {
    a: Structure,
    b: Structure,
    profile: OnceLock<Result<SmuhomProfile>>,
}

impl Clone for TemplatePair {
    fn clone(&self) -> Self {
        let profile = OnceLock::new();
        if let Some(p) = self.profile.get() {
            let _ = profile.set(p.clone());
        }
        TemplatePair {
            a: self.a.clone(),
            b: self.b.clone(),
            profile,
        }
    }
}

impl PartialEq for TemplatePair {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl TemplatePair {
    pub fn new(a: Structure, b: Structure) -> Result<Self> {
        if !a.is_similar(&b) {
            return Err(Error::SignatureMismatch);
        }
        for s in [&a, &b] {
            let v = s.validate();
            if !v.is_empty() {
                return Err(Error::Strict(v));
            }
        }
        Ok(TemplatePair {
            a,
            b,
            profile: OnceLock::new(),
        })
    }

    pub fn a(&self) -> &Structure {
        &self.a
    }

    pub fn b(&self) -> &Structure {
        &self.b
    }

    /// Smuhom profile of `(A, B)`, computed on first use.
    pub fn profile(&self) -> Result<&SmuhomProfile> {
        self.profile
            .get_or_init(|| smuhom_profile(&self.a, &self.b))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `(B̄, Ā)`.
    pub fn dual(&self) -> Result<TemplatePair> {
        TemplatePair::new(self.b.complement()?, self.a.complement()?)
    }
}

/// Evidence for or against the template property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemplateCertificate {
    Homomorphism(Vec<Elem>),
    Smuhom(MultiValuedFunction),
    /// Exhaustive search over this many candidate maps found none.
    NoHomomorphism {
        candidates: u128,
    },
    NoSmuhom {
        candidates: u128,
    },
}

impl TemplateCertificate {
    pub fn is_template(&self) -> bool {
        matches!(
            self,
            TemplateCertificate::Homomorphism(_) | TemplateCertificate::Smuhom(_)
        )
    }
}

impl fmt::Display for TemplateCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateCertificate::Homomorphism(h) => {
                let img: Vec<String> = h.iter().map(|e| (e + 1).to_string()).collect();
                write!(f, "homomorphism [{}]", img.join(" "))
            }
            TemplateCertificate::Smuhom(g) => {
                write!(f, "surjective multi-homomorphism {}", inline_mvf(g))
            }
            TemplateCertificate::NoHomomorphism { candidates } => {
                write!(f, "no homomorphism among {candidates} maps")
            }
            TemplateCertificate::NoSmuhom { candidates } => {
                write!(
                    f,
                    "no surjective multi-homomorphism among {candidates} multi-valued functions"
                )
            }
        }
    }
}

/// `{1:1 2, 2:2}`-style one-line rendering, 1-based.
pub fn inline_mvf(g: &MultiValuedFunction) -> String {
    let parts: Vec<String> = (0..g.source_size())
        .map(|x| {
            let vals: Vec<String> = g.values(x).iter().map(|y| (y + 1).to_string()).collect();
            format!("{}:{}", x + 1, vals.join(" "))
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Template test for a canonical fragment: a homomorphism for `{∃,∧}` and
/// `{∃,∧,∨}`, a surjective multi-homomorphism for the fragments with `∀`.
/// For `{∃,∀,∧}` a smuhom is sufficient but not known to be necessary.
pub fn is_template(t: &TemplatePair, l: Fragment) -> Result<TemplateCertificate> {
    if !l.is_canonical() {
        return Err(Error::NonCanonicalFragment(l.to_string()));
    }
    if l.contains(Fragment::FORALL) {
        Ok(match find_smuhom(t.a(), t.b())? {
            Some(f) => TemplateCertificate::Smuhom(f),
            None => TemplateCertificate::NoSmuhom {
                candidates: candidate_count(t.a(), t.b()),
            },
        })
    } else {
        Ok(match find_homomorphism(t.a(), t.b())? {
            Some(h) => TemplateCertificate::Homomorphism(h),
            None => TemplateCertificate::NoHomomorphism {
                candidates: (t.b().size() as u128).saturating_pow(t.a().size() as u32),
            },
        })
    }
}
