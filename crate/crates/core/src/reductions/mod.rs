//! Formula generators behind the reductions between promise problems.
//!
//! Every generator returns a [`GeneratedFormula`] that records what the
//! formula is supposed to define, and every kind of claim has a checker
//! that compares it with the brute-force evaluator.

mod definability;
mod equality;
mod gadgets;
mod quotient;
mod rainbow;

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::eval::Compiled;
use crate::logic::{Formula, SizeStats, SpecialForm, Var};
use crate::structure::{Elem, Relation, Signature, Structure};

pub use definability::{
    p_def_rewrite, p_definitions, rbnae_counterexample, verify_p_definition, Definitions,
};
pub use equality::{equality_pspace_gadget, verify_equality_gadget, GadgetContract};
pub use gadgets::{check_semantics, closure_formula, endo_formula, muhom_formula, smuhom_formula};
pub use quotient::{dual_instance, dual_template, quotient_reduction, QuotientChain};
pub use rainbow::{nae_structure, rainbow_structure, rbnae_template};

/// Default cap on the number of AST nodes a generator may produce.
pub const DEFAULT_MAX_NODES: u128 = 1_000_000;

/// Size limits for generated formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_nodes: u128::MAX,
        }
    }

    pub(crate) fn check(&self, estimated: u128) -> Result<()> {
        if estimated > self.max_nodes {
            Err(Error::Guardrail {
                estimated,
                limit: self.max_nodes,
            })
        } else {
            Ok(())
        }
    }
}

/// What a generated formula defines. Elements are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// `E ⊨ φ(e_1, …, e_k)` iff `i ↦ e_i` is a homomorphism `source → E`.
    Homomorphism { source: Structure },
    /// `E ⊨ φ(e_1_1, …, e_k_n)` iff `i ↦ {e_i_1, …, e_i_n}` is a
    /// multi-homomorphism `source → E`.
    MultiHomomorphism { source: Structure, n: usize },
    /// For `|E| ≤ m`: `i ↦ {e_i_1, …, e_i_n}` is contained in a surjective
    /// multi-homomorphism `source → E`.
    SmuhomContainment {
        source: Structure,
        n: usize,
        m: usize,
    },
    /// Defines in `E` the union of `f(tuple)` over all multi-homomorphisms
    /// `source → E`, surjective ones only if `surjective` (then `|E| ≤ m`).
    Closure {
        source: Structure,
        tuple: Vec<Elem>,
        surjective: bool,
        m: usize,
    },
    /// Defines in the strong source structure a superset of `strong` and in
    /// the weak one a subset of `weak`.
    PDefinition {
        symbol: String,
        strong: Relation,
        weak: Relation,
    },
    /// `([2]; =) ⊨ sentence` implies `([k]; =) ⊨ ψ`, and `([2]; =) ⊨ ψ`
    /// implies `([2]; =) ⊨ sentence`.
    EqualityGadget { sentence: SpecialForm, k: usize },
}

fn tuple_text(t: &[Elem]) -> String {
    let parts: Vec<String> = t.iter().map(|e| (e + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Homomorphism { source } => write!(
                f,
                "E satisfies it at (e_1..e_{}) iff i -> e_i is a homomorphism from A to E",
                source.size()
            ),
            Semantics::MultiHomomorphism { source, n } => write!(
                f,
                "E satisfies it at (e_1_1..e_{}_{}) iff i -> {{e_i_1..e_i_{}}} is a multi-homomorphism from A to E",
                source.size(),
                n,
                n
            ),
            Semantics::SmuhomContainment { source, n, m } => write!(
                f,
                "for |E| <= {m}: E satisfies it at (e_1_1..e_{}_{}) iff i -> {{e_i_1..e_i_{}}} lies inside a surjective multi-homomorphism from A to E",
                source.size(),
                n,
                n
            ),
            Semantics::Closure {
                tuple,
                surjective,
                m,
                ..
            } => {
                if *surjective {
                    write!(
                        f,
                        "for |E| <= {m}: defines the union of f{} over surjective multi-homomorphisms f from A to E",
                        tuple_text(tuple)
                    )
                } else {
                    write!(
                        f,
                        "defines the union of f{} over multi-homomorphisms f from A to E",
                        tuple_text(tuple)
                    )
                }
            }
            Semantics::PDefinition {
                symbol,
                strong,
                weak,
            } => write!(
                f,
                "definition of {symbol}: at least its {} strong tuples in A, only its {} weak tuples in B",
                strong.len(),
                weak.len()
            ),
            Semantics::EqualityGadget { k, .. } => write!(
                f,
                "([2]; =) |= phi implies ([{k}]; =) |= psi, and ([2]; =) |= psi implies ([2]; =) |= phi"
            ),
        }
    }
}

/// A generated formula together with its parameters and intended meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedFormula {
    pub formula: Formula,
    /// Parameters in order. Every free variable of `formula` is listed; a
    /// parameter no atom mentions is listed too.
    pub params: Vec<Var>,
    pub semantics: Semantics,
    pub stats: SizeStats,
}

impl GeneratedFormula {
    pub(crate) fn new(formula: Formula, params: Vec<Var>, semantics: Semantics) -> Self {
        debug_assert!(formula.free_vars().iter().all(|v| params.contains(v)));
        let stats = formula.size_stats();
        GeneratedFormula {
            formula,
            params,
            semantics,
            stats,
        }
    }

    /// Compiles with `params` as the free-variable order.
    pub fn compile(&self, sig: &Signature) -> Result<Compiled> {
        Compiled::new(&self.formula, sig, &self.params)
    }

    /// The relation the formula defines in `s`, over the parameters.
    pub fn defined_relation(&self, s: &Structure) -> Result<Relation> {
        let c = self.compile(s.signature())?;
        let table = c.truth_table(s);
        Relation::from_predicate(self.params.len(), s.size(), |t| {
            table[crate::structure::rank(t, s.size())]
        })
    }

    /// The formula in the text grammar, preceded by `#` comment lines with
    /// the intended meaning, the parameters and the size.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.semantics).unwrap();
        writeln!(out, "# parameters: {}", self.params.join(" ")).unwrap();
        writeln!(out, "# size: {}", self.stats).unwrap();
        writeln!(out, "{}", self.formula).unwrap();
        out
    }
}

pub(crate) fn x1(i: usize) -> Var {
    format!("x_{}", i + 1)
}

pub(crate) fn x2(i: usize, j: usize) -> Var {
    format!("x_{}_{}", i + 1, j + 1)
}
