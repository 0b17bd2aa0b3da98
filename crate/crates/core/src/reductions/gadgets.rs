use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::homomorphisms::{enumerate_muhoms, enumerate_smuhoms, MultiValuedFunction};
use crate::logic::{Formula, Fragment, Var};
use crate::structure::{for_each_product, Elem, Relation, Structure};

use super::{x1, x2, GeneratedFormula, Limits, Semantics};

/// Atoms of the conjunction saying that `i ↦ vars[i]` (read as a set of
/// values) is a multi-homomorphism from `a`.
fn muhom_atoms(a: &Structure, vars: &[Vec<Var>], out: &mut Vec<Formula>) {
    for (sym, rel) in a.signature().symbols().iter().zip(a.relations()) {
        for r in rel.tuples() {
            let lists: Vec<Vec<Elem>> = r.iter().map(|&e| (0..vars[e].len()).collect()).collect();
            for_each_product(&lists, |j| {
                let args = r
                    .iter()
                    .zip(j)
                    .map(|(&e, &jj)| vars[e][jj].clone())
                    .collect();
                out.push(Formula::atom_owned(sym.name.clone(), args));
                true
            });
        }
    }
}

fn muhom_atom_count(a: &Structure, sizes: &[usize]) -> u128 {
    a.relations()
        .iter()
        .flat_map(|rel| rel.tuples())
        .map(|r| r.iter().map(|&e| sizes[e] as u128).product::<u128>())
        .sum()
}

/// `⋀_R ⋀_{r ∈ R^A} R(x_{r_1}, …)` with parameters `x_1 … x_k`.
pub fn endo_formula(a: &Structure) -> GeneratedFormula {
    let vars: Vec<Vec<Var>> = (0..a.size()).map(|i| vec![x1(i)]).collect();
    let mut atoms = Vec::new();
    muhom_atoms(a, &vars, &mut atoms);
    GeneratedFormula::new(
        Formula::and(atoms),
        (0..a.size()).map(x1).collect(),
        Semantics::Homomorphism { source: a.clone() },
    )
}

/// Conjunction of `R(x_{r_1,j_1}, …)` over all symbols, tuples `r ∈ R^A`
/// and column choices `j ∈ [n]^ar(R)`. Parameters `x_1_1 … x_k_n`.
pub fn muhom_formula(a: &Structure, n: usize, limits: &Limits) -> Result<GeneratedFormula> {
    if n == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    let k = a.size();
    limits.check(muhom_atom_count(a, &vec![n; k]) + 1)?;
    let vars: Vec<Vec<Var>> = (0..k).map(|i| (0..n).map(|j| x2(i, j)).collect()).collect();
    let mut atoms = Vec::new();
    muhom_atoms(a, &vars, &mut atoms);
    Ok(GeneratedFormula::new(
        Formula::and(atoms),
        vars.concat(),
        Semantics::MultiHomomorphism {
            source: a.clone(),
            n,
        },
    ))
}

fn z(l: usize) -> Var {
    format!("z_{}", l + 1)
}

/// Nodes of the smuhom formula, bounded above.
fn smuhom_estimate(a: &Structure, n: usize, m: usize) -> u128 {
    let k = a.size() as u128;
    let disjuncts = k.checked_pow(m as u32).unwrap_or(u128::MAX);
    let per = muhom_atom_count(a, &vec![n + m; a.size()]) + 1;
    disjuncts.saturating_mul(per).saturating_add(m as u128 + 1)
}

/// `∀z_1 … ∀z_m ⋁_{h: [m] → [k]} φ_h`, where `φ_h` is the multi-homomorphism
/// conjunction for `i ↦ {x_i_1, …, x_i_n} ∪ {z_l : h(l) = i}`.
///
/// The `k^m` disjuncts are checked against `limits` before anything is
/// built.
pub fn smuhom_formula(
    a: &Structure,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<GeneratedFormula> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("n and m must be positive".into()));
    }
    let k = a.size();
    limits.check(smuhom_estimate(a, n, m))?;
    let xs: Vec<Vec<Var>> = (0..k).map(|i| (0..n).map(|j| x2(i, j)).collect()).collect();
    let mut disjuncts = Vec::new();
    let lists = vec![(0..k).collect::<Vec<Elem>>(); m];
    for_each_product(&lists, |h| {
        let mut vars = xs.clone();
        for (l, &i) in h.iter().enumerate() {
            vars[i].push(z(l));
        }
        let mut atoms = Vec::new();
        muhom_atoms(a, &vars, &mut atoms);
        disjuncts.push(Formula::and(atoms));
        true
    });
    let zs: Vec<Var> = (0..m).map(z).collect();
    Ok(GeneratedFormula::new(
        Formula::forall_all(&zs, Formula::or(disjuncts)),
        xs.concat(),
        Semantics::SmuhomContainment {
            source: a.clone(),
            n,
            m,
        },
    ))
}

/// The closure formula of `t`: defines in `E` the union of `f(t)` over all
/// multi-homomorphisms `a → E` (fragments without `∀`) or over all
/// surjective ones when `|E| ≤ m` (fragments with `∀` and `∨`).
///
/// Built from the multi-homomorphism (resp. smuhom) formula with
/// multiplicity `n` by renaming `x_{t_i, c_i}` to `x_i`, where `c_i` counts
/// the earlier occurrences of `t_i` in `t`, and existentially quantifying
/// the other parameters. `n` must be at least the largest number of
/// occurrences of one element in `t`.
pub fn closure_formula(
    a: &Structure,
    t: &[Elem],
    l: Fragment,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<GeneratedFormula> {
    if !l.is_canonical() {
        return Err(Error::NonCanonicalFragment(l.to_string()));
    }
    if let Some(&e) = t.iter().find(|&&e| e >= a.size()) {
        return Err(Error::Precondition(format!(
            "tuple entry {} is outside the universe",
            e + 1
        )));
    }
    let mut seen = vec![0usize; a.size()];
    let mut renaming = HashMap::new();
    for (i, &e) in t.iter().enumerate() {
        if seen[e] >= n {
            return Err(Error::Precondition(format!(
                "element {} occurs more than n = {n} times in the tuple",
                e + 1
            )));
        }
        renaming.insert(x2(e, seen[e]), x1(i));
        seen[e] += 1;
    }
    let surjective = l.contains(Fragment::FORALL);
    let base = if surjective {
        if !l.contains(Fragment::OR) {
            return Err(Error::Precondition(
                "the surjective closure formula needs ∨ in the fragment".into(),
            ));
        }
        smuhom_formula(a, n, m, limits)?
    } else {
        muhom_formula(a, n, limits)?
    };
    let rest: Vec<Var> = base
        .params
        .iter()
        .filter(|p| !renaming.contains_key(*p))
        .cloned()
        .collect();
    let body = base.formula.substitute(&renaming);
    let used: BTreeSet<Var> = body.free_vars().into_iter().collect();
    let rest: Vec<Var> = rest.into_iter().filter(|v| used.contains(v)).collect();
    Ok(GeneratedFormula::new(
        Formula::exists_all(&rest, body),
        (0..t.len()).map(x1).collect(),
        Semantics::Closure {
            source: a.clone(),
            tuple: t.to_vec(),
            surjective,
            m,
        },
    ))
}

/// Union of the sets `f(t)` over `fs`.
fn union_of_images(fs: &[MultiValuedFunction], t: &[Elem], universe: usize) -> Result<Relation> {
    let mut tuples = Vec::new();
    for f in fs {
        let lists: Vec<Vec<Elem>> = t.iter().map(|&e| f.values(e)).collect();
        for_each_product(&lists, |u| {
            tuples.push(u.to_vec());
            true
        });
    }
    Relation::new("image", t.len(), universe, tuples)
}

/// Whether `masks` (one value set per source element) lies inside some
/// member of `fs`.
fn contained_in_some(masks: &[u64], fs: &[MultiValuedFunction]) -> bool {
    fs.iter()
        .any(|f| masks.iter().zip(f.masks()).all(|(m, fm)| m & !fm == 0))
}

/// Checks the intended meaning of a formula built by [`endo_formula`],
/// [`muhom_formula`], [`smuhom_formula`] or [`closure_formula`] on one
/// structure `e`. Returns a parameter tuple on which the formula and the
/// direct computation disagree, or `None`.
///
/// The direct side enumerates (surjective) multi-homomorphisms.
pub fn check_semantics(g: &GeneratedFormula, e: &Structure) -> Result<Option<Vec<Elem>>> {
    let c = g.compile(e.signature())?;
    let table = c.truth_table(e);
    let ke = e.size();
    let p = g.params.len();
    let mismatch = |expected: &dyn Fn(&[Elem]) -> bool| -> Option<Vec<Elem>> {
        let mut t = vec![0; p];
        for (r, &got) in table.iter().enumerate() {
            crate::structure::unrank_into(r, ke, &mut t);
            if got != expected(&t) {
                return Some(t);
            }
        }
        None
    };
    match &g.semantics {
        Semantics::Homomorphism { source } => {
            similar(source, e)?;
            Ok(mismatch(&|t| {
                source
                    .relations()
                    .iter()
                    .zip(e.relations())
                    .all(|(ra, re)| {
                        ra.tuples()
                            .iter()
                            .all(|r| re.contains(&r.iter().map(|&i| t[i]).collect::<Vec<_>>()))
                    })
            }))
        }
        Semantics::MultiHomomorphism { source, n } => {
            similar(source, e)?;
            let all = enumerate_muhoms(source, e)?;
            Ok(mismatch(&|t| contained_exactly(t, *n, &all)))
        }
        Semantics::SmuhomContainment { source, n, m } => {
            similar(source, e)?;
            if ke > *m {
                return Err(Error::Precondition(format!(
                    "the smuhom formula with m = {m} only speaks about structures of size at most {m}"
                )));
            }
            let all = enumerate_smuhoms(source, e)?;
            Ok(mismatch(&|t| contained_in_some(&masks_of(t, *n), &all)))
        }
        Semantics::Closure {
            source,
            tuple,
            surjective,
            m,
        } => {
            similar(source, e)?;
            let fs = if *surjective {
                if ke > *m {
                    return Err(Error::Precondition(format!(
                        "the closure formula with m = {m} only speaks about structures of size at most {m}"
                    )));
                }
                enumerate_smuhoms(source, e)?
            } else {
                enumerate_muhoms(source, e)?
            };
            let rel = union_of_images(&fs, tuple, ke)?;
            Ok(mismatch(&|u| rel.contains(u)))
        }
        Semantics::PDefinition { .. } | Semantics::EqualityGadget { .. } => {
            Err(Error::Precondition(
                "this kind of formula is checked against a template, not a single structure".into(),
            ))
        }
    }
}

/// Value sets `{t[i*n], …, t[i*n + n - 1]}` as masks.
fn masks_of(t: &[Elem], n: usize) -> Vec<u64> {
    t.chunks(n)
        .map(|c| c.iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect()
}

/// Whether the value sets read from `t` form exactly one of `all`.
/// Multi-homomorphisms are downward closed, so a membership test suffices.
fn contained_exactly(t: &[Elem], n: usize, all: &[MultiValuedFunction]) -> bool {
    let masks = masks_of(t, n);
    all.iter().any(|f| f.masks() == masks.as_slice())
}

fn similar(a: &Structure, b: &Structure) -> Result<()> {
    if a.is_similar(b) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Structure {
        Structure::single("R", 2, 2, vec![vec![0, 1]]).unwrap()
    }

    #[test]
    fn endo_of_a_single_edge() {
        let g = endo_formula(&edge());
        assert_eq!(g.formula, Formula::atom("R", &["x_1", "x_2"]));
        assert_eq!(g.params, vec!["x_1", "x_2"]);
    }

    #[test]
    fn muhom_formula_expands_columns() {
        let g = muhom_formula(&edge(), 2, &Limits::default()).unwrap();
        assert_eq!(g.stats.atoms, 4);
        assert_eq!(
            g.formula.to_string(),
            "R(x_1_1,x_2_1) & R(x_1_1,x_2_2) & R(x_1_2,x_2_1) & R(x_1_2,x_2_2)"
        );
    }

    #[test]
    fn smuhom_formula_has_k_to_the_m_disjuncts() {
        let g = smuhom_formula(&edge(), 1, 3, &Limits::default()).unwrap();
        let mut body = &g.formula;
        while let Formula::Forall(_, b) = body {
            body = b;
        }
        match body {
            Formula::Or(cs) => assert_eq!(cs.len(), 8),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn guardrail_trips() {
        let err = smuhom_formula(&edge(), 2, 12, &Limits { max_nodes: 1000 }).unwrap_err();
        assert!(matches!(err, Error::Guardrail { .. }));
    }

    #[test]
    fn closure_with_repeats_needs_enough_columns() {
        let a = edge();
        assert!(closure_formula(&a, &[0, 0], Fragment::EAO, 1, 1, &Limits::default()).is_err());
        let g = closure_formula(&a, &[0, 0], Fragment::EAO, 2, 1, &Limits::default()).unwrap();
        assert_eq!(g.params, vec!["x_1", "x_2"]);
        assert_eq!(check_semantics(&g, &a).unwrap(), None);
    }
}
