//! Small structures, templates and formula families used by the sweeps,
//! tests and benchmarks.

use crate::classifier::TemplatePair;
use crate::error::Result;
use crate::logic::{parse_formula_untyped, Formula, SpecialForm, Var};
use crate::structure::{Elem, Relation, Signature, Structure, Symbol};

/// The sentence `∀x ∃y ∀z (Q(z,x) ∨ Q(z,y))`: true in `([2]; =)`, false in
/// `([3]; =)`.
pub const TWO_POINT_SENTENCE: &str = "forall x. exists y. forall z. Q(z, x) | Q(z, y)";

pub fn two_point_sentence() -> Formula {
    parse_formula_untyped(TWO_POINT_SENTENCE).unwrap()
}

/// All relations of the given arity on `[size]` that are neither empty nor
/// full, in order of their bitmask.
pub fn proper_relations(arity: usize, size: usize) -> Vec<Relation> {
    let cells = size.pow(arity as u32);
    assert!(cells < 32, "too many relations to list");
    (1u32..(1 << cells) - 1)
        .map(|bits| {
            Relation::from_predicate(arity, size, |t| {
                bits >> crate::structure::rank(t, size) & 1 == 1
            })
            .unwrap()
        })
        .collect()
}

/// Every strict structure of `sig` on `[size]`.
pub fn all_structures(sig: &Signature, size: usize) -> Result<Vec<Structure>> {
    let mut out = vec![Vec::new()];
    for s in sig.symbols() {
        let rels = proper_relations(s.arity, size);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Relation>| {
                rels.iter().map(move |r| {
                    let mut v = prefix.clone();
                    v.push(r.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|rels| Structure::from_relations(sig.clone(), size, rels, true))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<Elem>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relation_bits(r: &Relation, perm: &[Elem]) -> u64 {
    let size = r.universe();
    r.tuples().iter().fold(0u64, |acc, t| {
        let u: Vec<Elem> = t.iter().map(|&e| perm[e]).collect();
        acc | 1 << crate::structure::rank(&u, size)
    })
}

/// One strict structure `([size]; R)` with a binary `R` per isomorphism
/// class: 8 classes on two elements, 102 on three.
pub fn binary_representatives(size: usize) -> Vec<Structure> {
    let perms = permutations(size);
    let sig = Signature::single("R", 2).unwrap();
    proper_relations(2, size)
        .into_iter()
        .filter(|r| {
            let own = relation_bits(r, &perms[0]);
            perms.iter().all(|p| relation_bits(r, p) >= own)
        })
        .map(|r| Structure::from_relations(sig.clone(), size, vec![r], true).unwrap())
        .collect()
}

/// Binary representatives on two and three elements.
pub fn small_digraphs() -> Vec<Structure> {
    let mut out = binary_representatives(2);
    out.extend(binary_representatives(3));
    out
}

/// All pairs of [`small_digraphs`], whether templates or not.
pub fn small_digraph_pairs() -> Vec<(usize, usize)> {
    let n = small_digraphs().len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Names of the free variables `x1, x2, …` and the block variables
/// `y1, z1, y2, z2, …` of [`special_forms`].
pub fn free_names(p: usize) -> Vec<Var> {
    (1..=p).map(|i| format!("x{i}")).collect()
}

pub fn block_names(m: usize) -> Vec<(Var, Var)> {
    (1..=m)
        .map(|i| (format!("y{i}"), format!("z{i}")))
        .collect()
}

/// Matrices over the binary symbol `symbol` and `vars`: every atom, and
/// every conjunction and disjunction of two different atoms.
pub fn small_matrices(symbol: &str, vars: &[Var]) -> Vec<Formula> {
    let atoms: Vec<Formula> = vars
        .iter()
        .flat_map(|u| vars.iter().map(move |v| Formula::atom(symbol, &[u, v])))
        .collect();
    let mut out = atoms.clone();
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            out.push(Formula::and([atoms[i].clone(), atoms[j].clone()]));
            out.push(Formula::or([atoms[i].clone(), atoms[j].clone()]));
        }
    }
    out
}

/// Special forms `∀y1 ∃z1 … ∀ym ∃zm φ'(x1 … xp, y, z)` with every matrix
/// from [`small_matrices`].
pub fn special_forms(symbol: &str, p: usize, m: usize) -> Vec<SpecialForm> {
    let free = free_names(p);
    let blocks = block_names(m);
    let mut vars = free.clone();
    vars.extend(blocks.iter().flat_map(|(y, z)| [y.clone(), z.clone()]));
    small_matrices(symbol, &vars)
        .into_iter()
        .map(|mx| SpecialForm::new(free.clone(), blocks.clone(), mx).unwrap())
        .collect()
}

/// Sentences of [`special_forms`] with `1 ≤ m ≤ max_m`.
pub fn small_sentences(symbol: &str, max_m: usize) -> Vec<SpecialForm> {
    (1..=max_m)
        .flat_map(|m| special_forms(symbol, 0, m))
        .collect()
}

/// The set partitions of `0..n`, each as a block index per element with
/// blocks numbered by first occurrence.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(i + 1, n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// `p` is finer than or equal to `q`.
fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|i| (0..p.len()).all(|j| p[i] != p[j] || q[i] == q[j]))
}

/// Conjunction of `symbol`-equalities that holds in an equality structure
/// exactly on the partitions coarser than `p`.
fn partition_formula(symbol: &str, vars: &[Var], p: &[usize]) -> Formula {
    let mut atoms = Vec::new();
    for i in 0..p.len() {
        if let Some(j) = (0..i).rev().find(|&j| p[j] == p[i]) {
            atoms.push(Formula::atom(symbol, &[&vars[j], &vars[i]]));
        }
    }
    if atoms.is_empty() {
        atoms.push(Formula::atom(symbol, &[&vars[0], &vars[0]]));
    }
    Formula::and(atoms)
}

/// One matrix for every nonempty set of partitions of `vars` closed under
/// coarsening. In an equality structure a negation-free matrix over one
/// symbol only sees which of its variables are equal, so these are all of
/// them up to equivalence there.
pub fn equality_matrices(symbol: &str, vars: &[Var]) -> Vec<Formula> {
    let parts = set_partitions(vars.len());
    let n = parts.len();
    assert!(n <= 20, "too many partitions");
    let mut out = Vec::new();
    for set in 1u32..(1 << n) {
        let member = |i: usize| set >> i & 1 == 1;
        let closed = (0..n)
            .filter(|&i| member(i))
            .all(|i| (0..n).all(|j| !refines(&parts[i], &parts[j]) || member(j)));
        if !closed {
            continue;
        }
        let minimal: Vec<usize> = (0..n)
            .filter(|&i| member(i))
            .filter(|&i| !(0..n).any(|j| j != i && member(j) && refines(&parts[j], &parts[i])))
            .collect();
        out.push(Formula::or(
            minimal
                .iter()
                .map(|&i| partition_formula(symbol, vars, &parts[i])),
        ));
    }
    out
}

/// Sentences `∀y1 ∃z1 … ∀ym ∃zm φ'` for every matrix of
/// [`equality_matrices`], `1 ≤ m ≤ max_m`.
pub fn equality_sentences(symbol: &str, max_m: usize) -> Vec<SpecialForm> {
    (1..=max_m)
        .flat_map(|m| {
            let blocks = block_names(m);
            let vars: Vec<Var> = blocks
                .iter()
                .flat_map(|(y, z)| [y.clone(), z.clone()])
                .collect();
            equality_matrices(symbol, &vars)
                .into_iter()
                .map(move |mx| SpecialForm::new(Vec::new(), blocks.clone(), mx).unwrap())
        })
        .collect()
}

fn single(arity: usize, size: usize, tuples: &[&[Elem]]) -> Structure {
    let tuples = tuples
        .iter()
        .map(|t| t.iter().map(|e| e - 1).collect())
        .collect();
    Structure::single("R", arity, size, tuples).unwrap()
}

fn product(sets: &[&[Elem]]) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Elem>| {
                s.iter().map(move |&e| {
                    let mut q = p.clone();
                    q.push(e - 1);
                    q
                })
            })
            .collect();
    }
    out
}

fn ternary(size: usize, products: &[&[&[Elem]]]) -> Structure {
    let mut tuples: Vec<Vec<Elem>> = products.iter().flat_map(|p| product(p)).collect();
    tuples.sort();
    tuples.dedup();
    Structure::single("R", 3, size, tuples).unwrap()
}

fn rainbow_triangle() -> Structure {
    single(3, 3, &[&[1, 2, 3]])
}

/// `([3]; {(1,2,3)})` against `{1,2,3}×{2}×{3} ∪ {1,2}×{2}×{2,3}`: a
/// ∀-smuhom and an ∃-smuhom but no ∃∀-smuhom.
pub fn tern_ae() -> TemplatePair {
    TemplatePair::new(
        rainbow_triangle(),
        ternary(3, &[&[&[1, 2, 3], &[2], &[3]], &[&[1, 2], &[2], &[2, 3]]]),
    )
    .unwrap()
}

/// `([3]; {12}, {13})` against `([3]; {12,22,32}, {12,13,22,23,33})`: the
/// same profile as [`tern_ae`] with two binary relations.
pub fn two_binary() -> TemplatePair {
    let sig = Signature::new(vec![Symbol::new("R", 2), Symbol::new("S", 2)]).unwrap();
    let pairs = |ps: &[(Elem, Elem)]| {
        ps.iter()
            .map(|&(x, y)| vec![x - 1, y - 1])
            .collect::<Vec<_>>()
    };
    TemplatePair::new(
        Structure::new(sig.clone(), 3, vec![pairs(&[(1, 2)]), pairs(&[(1, 3)])]).unwrap(),
        Structure::new(
            sig,
            3,
            vec![
                pairs(&[(1, 2), (2, 2), (3, 2)]),
                pairs(&[(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]),
            ],
        )
        .unwrap(),
    )
    .unwrap()
}

fn unary3(sets: [&[Elem]; 3]) -> Structure {
    let sig = Signature::new((1..=3).map(|i| Symbol::new(format!("R{i}"), 1)).collect()).unwrap();
    let rels = sets
        .iter()
        .map(|set| set.iter().map(|&e| vec![e - 1]).collect())
        .collect();
    Structure::new(sig, 3, rels).unwrap()
}

/// Three unary relations, `{1}, {2}, {3}` against `{2,3}, {1,3}, {1,2}`:
/// neither kind of smuhom.
pub fn u3() -> TemplatePair {
    TemplatePair::new(
        unary3([&[1], &[2], &[3]]),
        unary3([&[2, 3], &[1, 3], &[1, 2]]),
    )
    .unwrap()
}

/// `([3]; {(1,2,3)})` against `{2,3}×{1,3}×{1,2}`: neither kind.
pub fn t1() -> TemplatePair {
    TemplatePair::new(
        rainbow_triangle(),
        ternary(3, &[&[&[2, 3], &[1, 3], &[1, 2]]]),
    )
    .unwrap()
}

/// `([3]; {(1,2,3)})` against `{1,2}×{1,2}×{3} ∪ {1,3}×{2}×{2}`: neither
/// kind.
pub fn t2() -> TemplatePair {
    TemplatePair::new(
        rainbow_triangle(),
        ternary(3, &[&[&[1, 2], &[1, 2], &[3]], &[&[1, 3], &[2], &[2]]]),
    )
    .unwrap()
}

/// `([4]; {12,34})` against `([4]; {12,13,14,23,24,34,32})`: neither kind.
pub fn four_digraph() -> TemplatePair {
    TemplatePair::new(
        single(2, 4, &[&[1, 2], &[3, 4]]),
        single(
            2,
            4,
            &[
                &[1, 2],
                &[1, 3],
                &[1, 4],
                &[2, 3],
                &[2, 4],
                &[3, 4],
                &[3, 2],
            ],
        ),
    )
    .unwrap()
}

/// The named templates with the expected presence of a ∀-smuhom and an
/// ∃-smuhom. None of them has an ∃∀-smuhom.
pub fn gap_examples() -> Vec<(&'static str, TemplatePair, bool, bool)> {
    vec![
        ("tern-ae", tern_ae(), true, true),
        ("two-binary", two_binary(), true, true),
        ("u3", u3(), false, false),
        ("t1", t1(), false, false),
        ("t2", t2(), false, false),
        ("four-digraph", four_digraph(), false, false),
    ]
}
