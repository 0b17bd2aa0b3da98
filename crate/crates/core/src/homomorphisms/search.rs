//! Backtracking search over (multi-valued) maps between two structures.

use crate::error::{Error, Result};
use crate::structure::{rank, Elem, Relation, Structure};

use super::mvf::{elems_of, full_mask, MultiValuedFunction};

pub(crate) fn check_similar(a: &Structure, b: &Structure) -> Result<()> {
    if !a.is_similar(b) {
        return Err(Error::SignatureMismatch);
    }
    if b.size() > 64 {
        return Err(Error::InvalidFunction(format!(
            "target universe of size {} exceeds 64",
            b.size()
        )));
    }
    Ok(())
}

fn check_shape(f: &MultiValuedFunction, a: &Structure, b: &Structure) -> Result<()> {
    check_similar(a, b)?;
    if f.source_size() != a.size() || f.target_size() != b.size() {
        return Err(Error::InvalidFunction(format!(
            "function goes from {} to {} elements, structures have {} and {}",
            f.source_size(),
            f.target_size(),
            a.size(),
            b.size()
        )));
    }
    Ok(())
}

/// True iff every tuple of `sets[0] × sets[1] × ...` (each a bitmask over
/// `0..universe`) satisfies `pred` on its rank.
pub(crate) fn product_all(sets: &[u64], universe: usize, pred: &impl Fn(usize) -> bool) -> bool {
    fn go(sets: &[u64], universe: usize, acc: usize, pred: &impl Fn(usize) -> bool) -> bool {
        let Some((&first, rest)) = sets.split_first() else {
            return pred(acc);
        };
        let mut bits = first;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !go(rest, universe, acc * universe + e, pred) {
                return false;
            }
        }
        true
    }
    go(sets, universe, 0, pred)
}

fn product_size(sets: impl Iterator<Item = u64>) -> u128 {
    sets.map(|m| m.count_ones() as u128).product()
}

/// `f(t) ⊆ rel` where `f` is given by value masks.
#[inline]
pub(crate) fn maps_into(masks: &[u64], t: &[Elem], rel: &Relation) -> bool {
    let mut sets = [0u64; 16];
    if t.len() <= sets.len() {
        for (s, &a) in sets.iter_mut().zip(t) {
            *s = masks[a];
        }
        product_all(&sets[..t.len()], rel.universe(), &|r| rel.contains_rank(r))
    } else {
        let sets: Vec<u64> = t.iter().map(|&a| masks[a]).collect();
        product_all(&sets, rel.universe(), &|r| rel.contains_rank(r))
    }
}

/// Whether `f` is a multi-homomorphism from `a` to `b`.
///
/// Per relation, the cheaper of two equivalent checks is used: expanding
/// `f(t)` for every `t ∈ R^a`, or expanding the preimage products of the
/// non-members of `R^b` and testing that none meets `R^a`.
pub fn is_multi_homomorphism(
    f: &MultiValuedFunction,
    a: &Structure,
    b: &Structure,
) -> Result<bool> {
    check_shape(f, a, b)?;
    let pre: Option<Vec<u64>> = if a.size() <= 64 {
        Some((0..b.size()).map(|e| f.preimage_mask(e)).collect())
    } else {
        None
    };
    for (ra, rb) in a.relations().iter().zip(b.relations()) {
        let forward: u128 = ra
            .tuples()
            .iter()
            .map(|t| product_size(t.iter().map(|&x| f.mask(x))))
            .sum();
        let ok = match &pre {
            Some(pre) => {
                let backward: u128 = rb
                    .non_members()
                    .map(|u| product_size(u.iter().map(|&y| pre[y])))
                    .sum::<u128>()
                    + (rb.universe() as u128).pow(rb.arity() as u32);
                if backward < forward {
                    backward_ok(pre, ra, rb)
                } else {
                    forward_ok(f.masks(), ra, rb)
                }
            }
            None => forward_ok(f.masks(), ra, rb),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn forward_ok(masks: &[u64], ra: &Relation, rb: &Relation) -> bool {
    ra.tuples().iter().all(|t| maps_into(masks, t, rb))
}

pub(crate) fn backward_ok(pre: &[u64], ra: &Relation, rb: &Relation) -> bool {
    rb.non_members().all(|u| {
        let sets: Vec<u64> = u.iter().map(|&y| pre[y]).collect();
        product_all(&sets, ra.universe(), &|r| !ra.contains_rank(r))
    })
}

pub fn is_surjective_multi_homomorphism(
    f: &MultiValuedFunction,
    a: &Structure,
    b: &Structure,
) -> Result<bool> {
    Ok(f.is_surjective() && is_multi_homomorphism(f, a, b)?)
}

/// What the backtracker enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Function,
    Multi,
    Surjective,
}

pub(crate) struct Search<'s> {
    b: &'s Structure,
    /// Tuples `(relation index, tuple)` of `a` grouped by their largest entry.
    by_max: Vec<Vec<(usize, &'s [Elem])>>,
    candidates: Vec<Vec<u64>>,
    /// Union of the reachable values of source elements `i..`.
    suffix_reach: Vec<u64>,
    kind: Kind,
}

/// Values `b` that may appear in `f(x)` for some multi-homomorphism `f`:
/// every tuple of `a` through `x` must have a partner in `b` that agrees
/// with `b` wherever the tuple has `x`.
fn reach(a: &Structure, b: &Structure) -> Vec<u64> {
    let mut out = vec![full_mask(b.size()); a.size()];
    for (ra, rb) in a.relations().iter().zip(b.relations()) {
        for t in ra.tuples() {
            let mut seen = 0u64;
            for &x in t {
                if seen >> x & 1 == 1 {
                    continue;
                }
                seen |= 1 << x;
                let mut ok = 0u64;
                for u in rb.tuples() {
                    let y = t
                        .iter()
                        .zip(u)
                        .find(|(&tx, _)| tx == x)
                        .map(|(_, &uy)| uy)
                        .unwrap();
                    if t.iter().zip(u).all(|(&tx, &uy)| tx != x || uy == y) {
                        ok |= 1 << y;
                    }
                }
                out[x] &= ok;
            }
        }
    }
    out
}

/// Nonempty subsets of `mask`, by cardinality and then lexicographically
/// by their sorted element lists.
fn ordered_subsets(mask: u64) -> Vec<u64> {
    let elems = elems_of(mask);
    let mut subsets: Vec<u64> = (1u64..1 << elems.len())
        .map(|s| {
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .fold(0, |m, (_, &e)| m | 1 << e)
        })
        .collect();
    subsets.sort_by(|x, y| {
        x.count_ones()
            .cmp(&y.count_ones())
            .then_with(|| elems_of(*x).cmp(&elems_of(*y)))
    });
    subsets
}

impl<'s> Search<'s> {
    pub(crate) fn new(a: &'s Structure, b: &'s Structure, kind: Kind) -> Result<Self> {
        check_similar(a, b)?;
        if kind != Kind::Function && b.size() > 20 {
            return Err(Error::EnumerationLimit {
                candidates: candidate_count(a, b),
                limit: (1u128 << 20) - 1,
            });
        }
        let mut by_max: Vec<Vec<(usize, &[Elem])>> = vec![Vec::new(); a.size()];
        for (ri, r) in a.relations().iter().enumerate() {
            for t in r.tuples() {
                let m = *t.iter().max().unwrap();
                by_max[m].push((ri, t.as_slice()));
            }
        }
        let reach = reach(a, b);
        let candidates = reach
            .iter()
            .map(|&m| match kind {
                Kind::Function => elems_of(m).into_iter().map(|e| 1u64 << e).collect(),
                _ => ordered_subsets(m),
            })
            .collect();
        let mut suffix_reach = vec![0u64; a.size() + 1];
        for i in (0..a.size()).rev() {
            suffix_reach[i] = suffix_reach[i + 1] | reach[i];
        }
        Ok(Search {
            b,
            by_max,
            candidates,
            suffix_reach,
            kind,
        })
    }

    /// Visits every solution in order until `visit` returns `false`.
    /// Returns `false` if stopped early.
    pub(crate) fn run(&self, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
        let n = self.candidates.len();
        if n == 0 {
            return true;
        }
        let full = full_mask(self.b.size());
        let mut masks = vec![0u64; n];
        let mut union = vec![0u64; n + 1];
        let mut idx = vec![0usize; n];
        let mut i = 0usize;
        loop {
            // Try the next candidate at position `i`.
            let mut placed = false;
            while idx[i] < self.candidates[i].len() {
                let m = self.candidates[i][idx[i]];
                idx[i] += 1;
                masks[i] = m;
                union[i + 1] = union[i] | m;
                if self.kind == Kind::Surjective
                    && (union[i + 1] | self.suffix_reach[i + 1]) != full
                {
                    continue;
                }
                if self.by_max[i]
                    .iter()
                    .all(|&(ri, t)| maps_into(&masks, t, self.b.relation_at(ri)))
                {
                    placed = true;
                    break;
                }
            }
            if placed {
                if i + 1 == n {
                    if !visit(&masks) {
                        return false;
                    }
                } else {
                    i += 1;
                    idx[i] = 0;
                }
            } else {
                if i == 0 {
                    return true;
                }
                i -= 1;
            }
        }
    }
}

/// Upper bound on the multi-valued functions from `a` to `b`:
/// `(2^|b| - 1)^|a|`.
pub fn candidate_count(a: &Structure, b: &Structure) -> u128 {
    let per = if b.size() >= 127 {
        u128::MAX
    } else {
        (1u128 << b.size()) - 1
    };
    let mut total: u128 = 1;
    for _ in 0..a.size() {
        total = total.saturating_mul(per);
    }
    total
}

/// All homomorphisms from `a` to `b` as image lists, lexicographically.
pub fn enumerate_homomorphisms(a: &Structure, b: &Structure) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for_each_homomorphism(a, b, |h| {
        out.push(h.to_vec());
        true
    })?;
    Ok(out)
}

/// Calls `visit` on each homomorphism (lexicographic order) until it returns
/// `false`.
pub fn for_each_homomorphism(
    a: &Structure,
    b: &Structure,
    mut visit: impl FnMut(&[Elem]) -> bool,
) -> Result<()> {
    let search = Search::new(a, b, Kind::Function)?;
    let mut image = vec![0; a.size()];
    search.run(|masks| {
        for (x, m) in image.iter_mut().zip(masks) {
            *x = m.trailing_zeros() as usize;
        }
        visit(&image)
    });
    Ok(())
}

pub fn find_homomorphism(a: &Structure, b: &Structure) -> Result<Option<Vec<Elem>>> {
    let mut found = None;
    for_each_homomorphism(a, b, |h| {
        found = Some(h.to_vec());
        false
    })?;
    Ok(found)
}

fn collect(a: &Structure, b: &Structure, kind: Kind) -> Result<Vec<MultiValuedFunction>> {
    let search = Search::new(a, b, kind)?;
    let mut out = Vec::new();
    search.run(|masks| {
        out.push(MultiValuedFunction::from_masks(b.size(), masks.to_vec()).unwrap());
        true
    });
    Ok(out)
}

/// All multi-homomorphisms from `a` to `b`. Source elements are assigned in
/// increasing order; value sets are tried by cardinality, then
/// lexicographically.
pub fn enumerate_muhoms(a: &Structure, b: &Structure) -> Result<Vec<MultiValuedFunction>> {
    collect(a, b, Kind::Multi)
}

/// All surjective multi-homomorphisms from `a` to `b`, in the same order as
/// [`enumerate_muhoms`].
pub fn enumerate_smuhoms(a: &Structure, b: &Structure) -> Result<Vec<MultiValuedFunction>> {
    collect(a, b, Kind::Surjective)
}

/// Calls `visit` on each surjective multi-homomorphism until it returns
/// `false`.
pub fn for_each_smuhom(
    a: &Structure,
    b: &Structure,
    mut visit: impl FnMut(&MultiValuedFunction) -> bool,
) -> Result<()> {
    let search = Search::new(a, b, Kind::Surjective)?;
    search.run(|masks| visit(&MultiValuedFunction::from_masks(b.size(), masks.to_vec()).unwrap()));
    Ok(())
}

pub fn find_smuhom(a: &Structure, b: &Structure) -> Result<Option<MultiValuedFunction>> {
    let mut found = None;
    for_each_smuhom(a, b, |f| {
        found = Some(f.clone());
        false
    })?;
    Ok(found)
}

/// Multi-homomorphisms that cannot be enlarged by a single value. Every
/// multi-homomorphism is contained in one of them.
pub fn maximal_muhoms(a: &Structure, b: &Structure) -> Result<Vec<MultiValuedFunction>> {
    let all = enumerate_muhoms(a, b)?;
    let mut out = Vec::new();
    for f in all {
        let mut maximal = true;
        'outer: for x in 0..a.size() {
            for y in 0..b.size() {
                if !f.contains(x, y) && is_multi_homomorphism(&f.with_value(x, y), a, b)? {
                    maximal = false;
                    break 'outer;
                }
            }
        }
        if maximal {
            out.push(f);
        }
    }
    Ok(out)
}

/// Least `b` such that the constant map to `b` is a homomorphism.
pub fn exists_constant_homomorphism(a: &Structure, b: &Structure) -> Result<Option<Elem>> {
    check_similar(a, b)?;
    Ok((0..b.size()).find(|&y| {
        a.relations()
            .iter()
            .zip(b.relations())
            .all(|(ra, rb)| ra.is_empty() || rb.contains_rank(rank(&vec![y; rb.arity()], b.size())))
    }))
}
