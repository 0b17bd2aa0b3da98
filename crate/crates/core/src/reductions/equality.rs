use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::eval::holds;
use crate::logic::{Formula, SpecialForm, Var};
use crate::structure::{for_each_product, Elem, Structure};

use super::{x1, GeneratedFormula, Limits, Semantics};

fn indexed(stem: &str, i: usize) -> Var {
    format!("{stem}_{}", i + 1)
}

/// The symbol of a matrix that only uses one binary symbol.
fn matrix_symbol(matrix: &Formula) -> Result<String> {
    let mut symbol: Option<String> = None;
    let mut bad = None;
    matrix.visit(&mut |g| match g {
        Formula::Atom { symbol: s, args } => {
            if args.len() != 2 {
                bad.get_or_insert(format!("`{s}` is not binary"));
            } else if symbol.as_deref().is_some_and(|t| t != s) {
                bad.get_or_insert("the matrix uses more than one symbol".to_string());
            } else {
                symbol = Some(s.clone());
            }
        }
        Formula::Eq(..) | Formula::Neq(..) | Formula::Not(_) => {
            bad.get_or_insert("the matrix must be built from atoms with ∧ and ∨".to_string());
        }
        _ => {}
    });
    if let Some(msg) = bad {
        return Err(Error::Precondition(msg));
    }
    symbol.ok_or_else(|| Error::Precondition("the matrix has no atom".into()))
}

/// `ψ` for a sentence `φ = ∀y_1 ∃z_1 … ∀y_m ∃z_m φ'` over one binary symbol
/// `Q` read as equality, with `k = |A| ≥ 2`:
///
/// ```text
/// ψ   = ∀x_1 ∀x_2 ∃x_3 … ∃x_k  Q(x_1, x_2) ∨ ⋀_{f: [k] → [2]} ρ_f
/// ρ_f = ∀yp_1 ∃z_1 … ∀yp_m ∃z_m ∃y_1 … ∃y_m  ⋀_i σ_i ∧ φ'(y, z)
/// σ_i = ⋁_{a ∈ [k]} Q(yp_i, x_a) ∧ Q(y_i, x_{f(a)})
/// ```
///
/// If `([2]; Q=) ⊨ φ` then `([k]; Q=) ⊨ ψ`, and if `([2]; Q=) ⊨ ψ` then
/// `([2]; Q=) ⊨ φ`.
pub fn equality_pspace_gadget(
    sf: &SpecialForm,
    k: usize,
    limits: &Limits,
) -> Result<GeneratedFormula> {
    if k < 2 {
        return Err(Error::Precondition("the gadget needs k ≥ 2".into()));
    }
    if !sf.is_sentence() {
        return Err(Error::NotASentence(sf.free.clone()));
    }
    let m = sf.m();
    let q = matrix_symbol(&sf.matrix)?;
    let matrix_nodes = sf.matrix.size_stats().nodes as u128;
    let per_rho = 3 * m as u128 + m as u128 * (3 * k as u128 + 1) + matrix_nodes + 2;
    let rhos = 1u128.checked_shl(k as u32).unwrap_or(u128::MAX);
    limits.check(rhos.saturating_mul(per_rho).saturating_add(k as u128 + 3))?;

    let mut renaming: HashMap<Var, Var> = HashMap::new();
    for (i, (y, z)) in sf.blocks.iter().enumerate() {
        renaming.insert(y.clone(), indexed("y", i));
        renaming.insert(z.clone(), indexed("z", i));
    }
    let matrix = sf.matrix.substitute(&renaming);
    let atom = |u: Var, v: Var| Formula::atom_owned(q.clone(), vec![u, v]);

    let mut rhos_out = Vec::new();
    let lists = vec![vec![0, 1]; k];
    for_each_product(&lists, |f: &[Elem]| {
        let mut conj: Vec<Formula> = (0..m)
            .map(|i| {
                Formula::or((0..k).map(|a| {
                    Formula::and([
                        atom(indexed("yp", i), x1(a)),
                        atom(indexed("y", i), x1(f[a])),
                    ])
                }))
            })
            .collect();
        conj.push(matrix.clone());
        let ys: Vec<Var> = (0..m).map(|i| indexed("y", i)).collect();
        let mut rho = Formula::exists_all(&ys, Formula::and(conj));
        for i in (0..m).rev() {
            rho = Formula::forall(indexed("yp", i), Formula::exists(indexed("z", i), rho));
        }
        rhos_out.push(rho);
        true
    });
    let body = Formula::or([atom(x1(0), x1(1)), Formula::and(rhos_out)]);
    let xs: Vec<Var> = (2..k).map(x1).collect();
    let psi = Formula::forall(
        x1(0),
        Formula::forall(x1(1), Formula::exists_all(&xs, body)),
    );
    Ok(GeneratedFormula::new(
        psi,
        Vec::new(),
        Semantics::EqualityGadget {
            sentence: sf.clone(),
            k,
        },
    ))
}

/// Truth values behind the two implications of the gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetContract {
    /// `([2]; =) ⊨ φ`.
    pub b_phi: bool,
    /// `([k]; =) ⊨ ψ`.
    pub a_psi: bool,
    /// `([2]; =) ⊨ ψ`.
    pub b_psi: bool,
}

impl GadgetContract {
    /// Yes-instances stay Yes.
    pub fn forward(&self) -> bool {
        !self.b_phi || self.a_psi
    }

    /// No-instances stay No.
    pub fn backward(&self) -> bool {
        !self.b_psi || self.b_phi
    }

    pub fn holds(&self) -> bool {
        self.forward() && self.backward()
    }
}

/// Evaluates `φ` and `ψ` on `([2]; =)` and `ψ` on `([k]; =)`.
pub fn verify_equality_gadget(g: &GeneratedFormula) -> Result<GadgetContract> {
    let Semantics::EqualityGadget { sentence, k } = &g.semantics else {
        return Err(Error::Precondition("not an equality gadget".into()));
    };
    let q = matrix_symbol(&sentence.matrix)?;
    let a = Structure::equality(&q, *k)?;
    let b = Structure::equality(&q, 2)?;
    Ok(GadgetContract {
        b_phi: holds(&b, &sentence.to_formula())?,
        a_psi: holds(&a, &g.formula)?,
        b_psi: holds(&b, &g.formula)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula_untyped, to_special_form};

    fn gadget(text: &str, k: usize) -> GadgetContract {
        let sf = to_special_form(&parse_formula_untyped(text).unwrap()).unwrap();
        let g = equality_pspace_gadget(&sf, k, &Limits::default()).unwrap();
        verify_equality_gadget(&g).unwrap()
    }

    #[test]
    fn one_block() {
        let c = gadget("forall y. exists z. Q(y, z)", 3);
        assert!(c.b_phi && c.a_psi && c.holds());
        let c = gadget("forall y. exists z. Q(z, z)", 3);
        assert!(c.a_psi && c.holds());
    }

    #[test]
    fn false_sentence() {
        // Every element equals some fixed z: false in [2].
        let c = gadget("exists z. forall y. Q(y, z)", 3);
        assert!(!c.b_phi && !c.b_psi && c.holds());
    }
}
