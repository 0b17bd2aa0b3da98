use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};
use crate::structure::{Elem, Signature, Structure};

/// A partial map from variable names to elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, Elem>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, v: impl Into<Var>, e: Elem) -> Self {
        self.0.insert(v.into(), e);
        self
    }

    pub fn set(&mut self, v: impl Into<Var>, e: Elem) {
        self.0.insert(v.into(), e);
    }

    pub fn get(&self, v: &str) -> Option<Elem> {
        self.0.get(v).copied()
    }

    /// Pairs `vars[i] ↦ elems[i]`.
    pub fn zip<S: AsRef<str>>(vars: &[S], elems: &[Elem]) -> Self {
        Assignment(
            vars.iter()
                .zip(elems)
                .map(|(v, &e)| (v.as_ref().to_string(), e))
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Elem)> {
        self.0.iter()
    }
}

#[derive(Clone, Debug)]
enum Node {
    Atom { rel: usize, args: Vec<usize> },
    Eq(usize, usize),
    Neq(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
}

/// A formula with variables resolved to slots and symbols resolved to
/// relation indices. Slots `0..free.len()` hold the free variables in the
/// order given at compile time.
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    signature: Signature,
    free: Vec<Var>,
    slots: usize,
}

impl Compiled {
    /// Compiles `f` with the free-variable order `free`, which must cover
    /// every free variable of `f` (extra names are allowed).
    pub fn new<S: AsRef<str>>(f: &Formula, sig: &Signature, free: &[S]) -> Result<Self> {
        f.check(sig)?;
        let free: Vec<Var> = free.iter().map(|s| s.as_ref().to_string()).collect();
        let mut scope: HashMap<Var, usize> = free
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut slots = free.len();
        let root = compile(f, sig, &mut scope, &mut slots)?;
        Ok(Compiled {
            root,
            signature: sig.clone(),
            free,
            slots,
        })
    }

    /// Compiles with the free variables in order of first occurrence.
    pub fn with_free_order(f: &Formula, sig: &Signature) -> Result<Self> {
        Compiled::new(f, sig, &f.free_vars())
    }

    pub fn free_vars(&self) -> &[Var] {
        &self.free
    }

    /// Scratch space needed by [`Compiled::eval_slots`].
    pub fn slot_count(&self) -> usize {
        self.slots
    }

    /// Evaluates with `env[..free]` holding the free variables; the rest of
    /// `env` (at least `slot_count`) is scratch.
    #[inline]
    pub fn eval_slots(&self, s: &Structure, env: &mut [Elem]) -> bool {
        debug_assert!(s.signature() == &self.signature);
        eval_node(&self.root, s, env)
    }

    /// Evaluates on a tuple of values for the free variables.
    pub fn eval(&self, s: &Structure, values: &[Elem]) -> Result<bool> {
        if s.signature() != &self.signature {
            return Err(Error::SignatureMismatch);
        }
        if values.len() != self.free.len() || values.iter().any(|&e| e >= s.size()) {
            return Err(Error::Precondition(
                "assignment does not fit the free variables or the universe".into(),
            ));
        }
        let mut env = vec![0; self.slots.max(1)];
        env[..values.len()].copy_from_slice(values);
        Ok(eval_node(&self.root, s, &mut env))
    }

    /// Truth values on all assignments to the free variables, in
    /// lexicographic order of the value tuples.
    pub fn truth_table(&self, s: &Structure) -> Vec<bool> {
        let n = self.free.len();
        let k = s.size();
        let total = k.pow(n as u32);
        let mut env = vec![0; self.slots.max(1)];
        let mut out = Vec::with_capacity(total);
        for r in 0..total {
            let mut x = r;
            for i in (0..n).rev() {
                env[i] = x % k;
                x /= k;
            }
            out.push(eval_node(&self.root, s, &mut env));
        }
        out
    }
}

fn compile(
    f: &Formula,
    sig: &Signature,
    scope: &mut HashMap<Var, usize>,
    slots: &mut usize,
) -> Result<Node> {
    let slot = |v: &Var, scope: &HashMap<Var, usize>| {
        scope
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnboundVariable(v.clone()))
    };
    Ok(match f {
        Formula::Atom { symbol, args } => Node::Atom {
            rel: sig
                .index_of(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?,
            args: args.iter().map(|v| slot(v, scope)).collect::<Result<_>>()?,
        },
        Formula::Eq(x, y) => Node::Eq(slot(x, scope)?, slot(y, scope)?),
        Formula::Neq(x, y) => Node::Neq(slot(x, scope)?, slot(y, scope)?),
        Formula::Not(g) => Node::Not(Box::new(compile(g, sig, scope, slots)?)),
        Formula::And(cs) => Node::And(
            cs.iter()
                .map(|c| compile(c, sig, scope, slots))
                .collect::<Result<_>>()?,
        ),
        Formula::Or(cs) => Node::Or(
            cs.iter()
                .map(|c| compile(c, sig, scope, slots))
                .collect::<Result<_>>()?,
        ),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let here = *slots;
            *slots += 1;
            let prev = scope.insert(v.clone(), here);
            let body = compile(g, sig, scope, slots)?;
            match prev {
                Some(p) => scope.insert(v.clone(), p),
                None => scope.remove(v),
            };
            if matches!(f, Formula::Exists(..)) {
                Node::Exists(here, Box::new(body))
            } else {
                Node::Forall(here, Box::new(body))
            }
        }
    })
}

fn eval_node(n: &Node, s: &Structure, env: &mut [Elem]) -> bool {
    match n {
        Node::Atom { rel, args } => {
            let k = s.size();
            let r = args.iter().fold(0, |acc, &i| acc * k + env[i]);
            s.relation_at(*rel).contains_rank(r)
        }
        Node::Eq(x, y) => env[*x] == env[*y],
        Node::Neq(x, y) => env[*x] != env[*y],
        Node::Not(g) => !eval_node(g, s, env),
        Node::And(cs) => cs.iter().all(|c| eval_node(c, s, env)),
        Node::Or(cs) => cs.iter().any(|c| eval_node(c, s, env)),
        Node::Exists(v, g) => (0..s.size()).any(|e| {
            env[*v] = e;
            eval_node(g, s, env)
        }),
        Node::Forall(v, g) => (0..s.size()).all(|e| {
            env[*v] = e;
            eval_node(g, s, env)
        }),
    }
}

/// Tarskian truth of `f` in `s` under `a`.
pub fn eval(s: &Structure, f: &Formula, a: &Assignment) -> Result<bool> {
    let free = f.free_vars();
    let values = free
        .iter()
        .map(|v| a.get(v).ok_or_else(|| Error::UnboundVariable(v.clone())))
        .collect::<Result<Vec<_>>>()?;
    Compiled::new(f, s.signature(), &free)?.eval(s, &values)
}

/// Truth of a sentence.
pub fn holds(s: &Structure, sentence: &Formula) -> Result<bool> {
    let free = sentence.free_vars();
    if !free.is_empty() {
        return Err(Error::NotASentence(free));
    }
    Compiled::new(sentence, s.signature(), &free)?.eval(s, &[])
}
