//! Relational signatures and finite structures.
//!
//! Elements of a universe of size `k` are the integers `0..k`. The text
//! format (see [`crate::text`]) shows them 1-based, or by user labels.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::homomorphisms::MultiValuedFunction;

/// An element of a universe.
pub type Elem = usize;

/// Upper bound on `k^arity` for a single relation's membership table.
const MAX_TABLE: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// An ordered, nonempty list of relation symbols with distinct names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidSignature("no symbols".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.arity == 0 {
                return Err(Error::InvalidSignature(format!("`{}` has arity 0", s.name)));
            }
            if !is_identifier(&s.name) {
                return Err(Error::InvalidSignature(format!(
                    "`{}` is not an identifier",
                    s.name
                )));
            }
            if !seen.insert(s.name.as_str()) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate symbol `{}`",
                    s.name
                )));
            }
        }
        Ok(Signature { symbols })
    }

    /// Signature with a single symbol.
    pub fn single(name: &str, arity: usize) -> Result<Self> {
        Signature::new(vec![Symbol::new(name, arity)])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.symbols[i].arity)
    }

    /// A single binary symbol.
    pub fn is_digraph(&self) -> bool {
        self.symbols.len() == 1 && self.symbols[0].arity == 2
    }

    /// A name based on `base` that is not used by any symbol.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A relation over `0..universe`, stored both as a sorted tuple list and as
/// a dense membership table indexed by the lexicographic rank of a tuple.
#[derive(Clone, Debug)]
pub struct Relation {
    arity: usize,
    universe: usize,
    tuples: Vec<Vec<Elem>>,
    table: Vec<bool>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.universe == other.universe && self.table == other.table
    }
}

impl Eq for Relation {}

impl Relation {
    fn table_size(universe: usize, arity: usize) -> Option<usize> {
        let mut size: usize = 1;
        for _ in 0..arity {
            size = size.checked_mul(universe)?;
            if size > MAX_TABLE {
                return None;
            }
        }
        Some(size)
    }

    /// Builds a relation from tuples; duplicates are removed.
    pub fn new(
        symbol: &str,
        arity: usize,
        universe: usize,
        tuples: impl IntoIterator<Item = Vec<Elem>>,
    ) -> Result<Self> {
        let size = Relation::table_size(universe, arity).ok_or_else(|| {
            Error::InvalidSignature(format!(
                "`{symbol}`: {universe}^{arity} tuples exceed the supported table size"
            ))
        })?;
        let mut table = vec![false; size];
        for t in tuples {
            if t.len() != arity || t.iter().any(|&e| e >= universe) {
                return Err(Error::InvalidTuple {
                    symbol: symbol.to_string(),
                    tuple: t,
                    universe,
                });
            }
            table[rank(&t, universe)] = true;
        }
        Ok(Relation::from_table(arity, universe, table))
    }

    /// Relation of all tuples satisfying `pred`.
    pub fn from_predicate(
        arity: usize,
        universe: usize,
        mut pred: impl FnMut(&[Elem]) -> bool,
    ) -> Result<Self> {
        let size = Relation::table_size(universe, arity).ok_or_else(|| {
            Error::InvalidSignature(format!(
                "{universe}^{arity} tuples exceed the supported table size"
            ))
        })?;
        let mut table = vec![false; size];
        let mut t = vec![0; arity];
        for (r, slot) in table.iter_mut().enumerate() {
            unrank_into(r, universe, &mut t);
            *slot = pred(&t);
        }
        Ok(Relation::from_table(arity, universe, table))
    }

    fn from_table(arity: usize, universe: usize, table: Vec<bool>) -> Self {
        let mut tuples = Vec::new();
        for (r, &member) in table.iter().enumerate() {
            if member {
                let mut t = vec![0; arity];
                unrank_into(r, universe, &mut t);
                tuples.push(t);
            }
        }
        Relation {
            arity,
            universe,
            tuples,
            table,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Member tuples in lexicographic order.
    pub fn tuples(&self) -> &[Vec<Elem>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.tuples.len() == self.table.len()
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        debug_assert_eq!(t.len(), self.arity);
        self.table[rank(t, self.universe)]
    }

    /// Membership by lexicographic rank.
    #[inline]
    pub fn contains_rank(&self, r: usize) -> bool {
        self.table[r]
    }

    pub fn complement(&self) -> Relation {
        Relation::from_table(
            self.arity,
            self.universe,
            self.table.iter().map(|b| !b).collect(),
        )
    }

    /// Non-member tuples in lexicographic order.
    pub fn non_members(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(r, _)| {
                let mut t = vec![0; self.arity];
                unrank_into(r, self.universe, &mut t);
                t
            })
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.table.len() == other.table.len()
            && self.table.iter().zip(&other.table).all(|(a, b)| !a || *b)
    }
}

/// Lexicographic rank of a tuple over `0..universe`.
#[inline]
pub fn rank(t: &[Elem], universe: usize) -> usize {
    t.iter().fold(0, |acc, &e| acc * universe + e)
}

pub(crate) fn unrank_into(mut r: usize, universe: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = r % universe;
        r /= universe;
    }
}

/// A single failed convention reported by [`Structure::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    UniverseTooSmall { size: usize },
    EmptyRelation { symbol: String },
    FullRelation { symbol: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UniverseTooSmall { size } => {
                write!(f, "universe too small ({size} < 2)")
            }
            Violation::EmptyRelation { symbol } => write!(f, "{symbol} is empty"),
            Violation::FullRelation { symbol } => write!(f, "{symbol} not proper"),
        }
    }
}

/// A finite relational structure.
///
/// In strict mode the universe has at least two elements and every relation
/// is nonempty and proper. Lenient structures exist so that intermediate
/// constructions stay representable.
#[derive(Clone, Debug)]
pub struct Structure {
    signature: Signature,
    size: usize,
    relations: Vec<Relation>,
    strict: bool,
}

/// Equality is by signature (including symbol names), universe and
/// relations; the strictness flag is ignored.
impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.size == other.size
            && self.relations == other.relations
    }
}

impl Eq for Structure {}

impl Structure {
    /// Strict structure from per-symbol tuple lists (0-based elements).
    pub fn new(signature: Signature, size: usize, relations: Vec<Vec<Vec<Elem>>>) -> Result<Self> {
        Structure::build(signature, size, relations, true)
    }

    /// Structure that skips the strict conventions.
    pub fn lenient(
        signature: Signature,
        size: usize,
        relations: Vec<Vec<Vec<Elem>>>,
    ) -> Result<Self> {
        Structure::build(signature, size, relations, false)
    }

    fn build(
        signature: Signature,
        size: usize,
        relations: Vec<Vec<Vec<Elem>>>,
        strict: bool,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::InvalidSignature(format!(
                "{} relation(s) given for {} symbol(s)",
                relations.len(),
                signature.len()
            )));
        }
        let rels = signature
            .symbols()
            .iter()
            .zip(relations)
            .map(|(s, tuples)| Relation::new(&s.name, s.arity, size, tuples))
            .collect::<Result<Vec<_>>>()?;
        Structure::from_relations(signature, size, rels, strict)
    }

    /// Structure from prepared relations; validated when `strict`.
    pub fn from_relations(
        signature: Signature,
        size: usize,
        relations: Vec<Relation>,
        strict: bool,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::InvalidSignature(format!(
                "{} relation(s) given for {} symbol(s)",
                relations.len(),
                signature.len()
            )));
        }
        for (s, r) in signature.symbols().iter().zip(&relations) {
            if r.arity() != s.arity || r.universe() != size {
                return Err(Error::InvalidSignature(format!(
                    "relation for `{}` does not match its arity or the universe",
                    s.name
                )));
            }
        }
        let s = Structure {
            signature,
            size,
            relations,
            strict,
        };
        if strict {
            let violations = s.validate();
            if !violations.is_empty() {
                return Err(Error::Strict(violations));
            }
        }
        Ok(s)
    }

    /// Strict structure with a single relation.
    pub fn single(name: &str, arity: usize, size: usize, tuples: Vec<Vec<Elem>>) -> Result<Self> {
        Structure::new(Signature::single(name, arity)?, size, vec![tuples])
    }

    /// `([size]; name ↦ equality)`.
    pub fn equality(name: &str, size: usize) -> Result<Self> {
        let rel = Relation::from_predicate(2, size, |t| t[0] == t[1])?;
        Structure::from_relations(Signature::single(name, 2)?, size, vec![rel], true)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Number of elements `k`; the universe is `0..k`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_at(&self, i: usize) -> &Relation {
        &self.relations[i]
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.signature.index_of(name).map(|i| &self.relations[i])
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// The same structure with strict validation switched on or off.
    pub fn with_strict(mut self, strict: bool) -> Result<Self> {
        if strict {
            let violations = self.validate();
            if !violations.is_empty() {
                return Err(Error::Strict(violations));
            }
        }
        self.strict = strict;
        Ok(self)
    }

    pub fn is_similar(&self, other: &Structure) -> bool {
        self.signature == other.signature
    }

    /// Violations of the strict conventions, independent of the mode flag.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.size < 2 {
            out.push(Violation::UniverseTooSmall { size: self.size });
        }
        for (s, r) in self.signature.symbols().iter().zip(&self.relations) {
            if r.is_empty() {
                out.push(Violation::EmptyRelation {
                    symbol: s.name.clone(),
                });
            } else if r.is_full() {
                out.push(Violation::FullRelation {
                    symbol: s.name.clone(),
                });
            }
        }
        out
    }

    /// Complement of every relation. Fails in strict mode if a complement is
    /// empty or full.
    pub fn complement(&self) -> Result<Structure> {
        let relations = self.relations.iter().map(Relation::complement).collect();
        Structure::from_relations(self.signature.clone(), self.size, relations, self.strict)
    }

    /// Every symbol has a partner symbol interpreted as its complement.
    pub fn is_complementation_closed(&self) -> bool {
        self.relations.iter().all(|r| {
            let c = r.complement();
            self.relations.contains(&c)
        })
    }

    /// Adds a symbol `R_bar` interpreted as the complement of `R` for every
    /// `R`. A structure that is already closed is returned unchanged, so the
    /// operation is idempotent.
    pub fn complementation_closure(&self) -> Result<Structure> {
        if self.is_complementation_closed() {
            return Ok(self.clone());
        }
        let (signature, _) = closure_signature(&self.signature)?;
        let mut relations = self.relations.clone();
        relations.extend(self.relations.iter().map(Relation::complement));
        Structure::from_relations(signature, self.size, relations, self.strict)
    }

    /// The image of this structure under a surjective multi-valued function
    /// onto `0..m`: each relation becomes the union of `f(t)` over its tuples.
    pub fn image(&self, f: &MultiValuedFunction) -> Result<Structure> {
        if f.source_size() != self.size {
            return Err(Error::InvalidFunction(format!(
                "function has {} source elements, structure has {}",
                f.source_size(),
                self.size
            )));
        }
        if !f.is_surjective() {
            return Err(Error::Precondition(
                "image structure needs a surjective multi-valued function".into(),
            ));
        }
        let m = f.target_size();
        let mut relations = Vec::with_capacity(self.relations.len());
        for (s, r) in self.signature.symbols().iter().zip(&self.relations) {
            let size = Relation::table_size(m, s.arity).ok_or_else(|| {
                Error::InvalidSignature(format!("`{}` image table too large", s.name))
            })?;
            let mut table = vec![false; size];
            for t in r.tuples() {
                let values: Vec<Vec<Elem>> = t.iter().map(|&a| f.values(a)).collect();
                for_each_product(&values, |img| {
                    table[rank(img, m)] = true;
                    true
                });
            }
            relations.push(Relation::from_table(s.arity, m, table));
        }
        let strict =
            self.strict && m >= 2 && relations.iter().all(|r| !r.is_empty() && !r.is_full());
        Structure::from_relations(self.signature.clone(), m, relations, strict)
    }

    /// Same structure with every relation restricted to symbols in `keep`
    /// order; used to drop helper symbols.
    pub fn reduct(&self, keep: &[&str]) -> Result<Structure> {
        let mut symbols = Vec::new();
        let mut relations = Vec::new();
        for name in keep {
            let i = self
                .signature
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            symbols.push(self.signature.symbols()[i].clone());
            relations.push(self.relations[i].clone());
        }
        Structure::from_relations(Signature::new(symbols)?, self.size, relations, self.strict)
    }

    /// Adds a relation under a new symbol.
    pub fn with_relation(&self, name: &str, relation: Relation) -> Result<Structure> {
        let mut symbols = self.signature.symbols().to_vec();
        symbols.push(Symbol::new(name, relation.arity()));
        let mut relations = self.relations.clone();
        relations.push(relation);
        Structure::from_relations(Signature::new(symbols)?, self.size, relations, self.strict)
    }
}

/// Signature extended with one fresh `R_bar` per symbol, plus the mapping
/// from each original symbol to its complement symbol.
pub(crate) fn closure_signature(sig: &Signature) -> Result<(Signature, Vec<(String, String)>)> {
    let mut symbols = sig.symbols().to_vec();
    let mut pairs = Vec::new();
    for s in sig.symbols() {
        let mut name = format!("{}_bar", s.name);
        while symbols.iter().any(|t| t.name == name) {
            name.push('_');
        }
        symbols.push(Symbol::new(name.clone(), s.arity));
        pairs.push((s.name.clone(), name));
    }
    Ok((Signature::new(symbols)?, pairs))
}

/// Calls `visit` on every tuple of the product of `lists`, in lexicographic
/// order, until it returns `false`. Returns `false` if stopped early.
pub fn for_each_product(lists: &[Vec<Elem>], mut visit: impl FnMut(&[Elem]) -> bool) -> bool {
    if lists.iter().any(|l| l.is_empty()) {
        return true;
    }
    let n = lists.len();
    let mut idx = vec![0usize; n];
    let mut cur: Vec<Elem> = lists.iter().map(|l| l[0]).collect();
    loop {
        if !visit(&cur) {
            return false;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                cur[i] = lists[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = lists[i][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2(k: usize, tuples: &[(usize, usize)]) -> Structure {
        Structure::lenient(
            Signature::single("R", 2).unwrap(),
            k,
            vec![tuples.iter().map(|&(a, b)| vec![a, b]).collect()],
        )
        .unwrap()
    }

    #[test]
    fn validate_reports_each_rule() {
        assert!(r2(2, &[(0, 1)]).validate().is_empty());
        assert_eq!(
            r2(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).validate(),
            vec![Violation::FullRelation { symbol: "R".into() }]
        );
        let one =
            Structure::lenient(Signature::single("R", 1).unwrap(), 1, vec![vec![vec![0]]]).unwrap();
        assert_eq!(
            one.validate(),
            vec![
                Violation::UniverseTooSmall { size: 1 },
                Violation::FullRelation { symbol: "R".into() }
            ]
        );
        assert_eq!(one.validate()[1].to_string(), "R not proper");
        assert!(matches!(
            Structure::single("R", 2, 2, vec![]),
            Err(Error::Strict(_))
        ));
    }

    #[test]
    fn tuples_must_fit() {
        let err = Structure::single("R", 2, 2, vec![vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple { .. }));
        let err = Structure::single("R", 2, 2, vec![vec![0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple { .. }));
    }

    #[test]
    fn complement_of_single_edge() {
        let s = r2(2, &[(0, 1)]);
        assert_eq!(s.complement().unwrap(), r2(2, &[(0, 0), (1, 0), (1, 1)]));
        assert_eq!(s.complement().unwrap().complement().unwrap(), s);
    }

    #[test]
    fn complement_of_equality_is_disequality() {
        let eq = Structure::equality("Q", 3).unwrap();
        let c = eq.complement().unwrap();
        let neq = Relation::from_predicate(2, 3, |t| t[0] != t[1]).unwrap();
        assert_eq!(c.relation("Q").unwrap(), &neq);
    }

    #[test]
    fn strict_complement_fails_on_full() {
        let s = r2(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(s.complement().unwrap().validate().len() == 1);
        let strict = Structure::single("R", 1, 2, vec![vec![0]]).unwrap();
        assert!(strict.complement().is_ok());
    }

    #[test]
    fn closure_adds_bar_symbols_once() {
        let s = r2(2, &[(0, 1)]);
        let c = s.complementation_closure().unwrap();
        assert_eq!(c.signature().len(), 2);
        assert_eq!(c.signature().symbols()[1].name, "R_bar");
        assert_eq!(c.relation("R_bar").unwrap(), &s.relation_at(0).complement());
        assert!(c.is_complementation_closed());
        assert_eq!(c.complementation_closure().unwrap(), c);
    }

    #[test]
    fn closure_of_equality_holds_both() {
        let c = Structure::equality("Q", 3)
            .unwrap()
            .complementation_closure()
            .unwrap();
        let eq = Relation::from_predicate(2, 3, |t| t[0] == t[1]).unwrap();
        let neq = Relation::from_predicate(2, 3, |t| t[0] != t[1]).unwrap();
        assert!(c.relations().contains(&eq));
        assert!(c.relations().contains(&neq));
    }

    #[test]
    fn image_expands_products() {
        let s = r2(2, &[(0, 1)]);
        let id = MultiValuedFunction::identity(2);
        assert_eq!(s.image(&id).unwrap(), s);
        let f = MultiValuedFunction::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(s.image(&f).unwrap(), r2(2, &[(0, 0), (0, 1)]));
    }

    #[test]
    fn image_rejects_non_surjective() {
        let s = r2(2, &[(0, 1)]);
        let f = MultiValuedFunction::new(2, vec![vec![0], vec![0]]).unwrap();
        assert!(matches!(s.image(&f), Err(Error::Precondition(_))));
    }

    #[test]
    fn product_visits_lexicographically() {
        let mut seen = Vec::new();
        for_each_product(&[vec![0, 2], vec![1, 3]], |t| {
            seen.push(t.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 3], vec![2, 1], vec![2, 3]]);
    }
}
