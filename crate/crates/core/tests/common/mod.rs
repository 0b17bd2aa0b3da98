//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use mucheck_core::homomorphisms::MultiValuedFunction;
use mucheck_core::structure::{for_each_product, Elem, Structure};

/// Every strict structure with one binary symbol `R` on `[k]`.
pub fn all_binary(k: usize) -> Vec<Structure> {
    let cells = k * k;
    (1u64..(1 << cells) - 1)
        .map(|bits| binary_from_bits(k, bits))
        .collect()
}

pub fn binary_from_bits(k: usize, bits: u64) -> Structure {
    let tuples = (0..k * k)
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| vec![i / k, i % k])
        .collect();
    Structure::single("R", 2, k, tuples).unwrap()
}

/// Every multi-valued function `[ka] → [kb]`.
pub fn all_mvfs(ka: usize, kb: usize) -> Vec<MultiValuedFunction> {
    let mut out = vec![Vec::new()];
    for _ in 0..ka {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (1..1u64 << kb).map(move |m| {
                    let mut q = p.clone();
                    q.push(m);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|m| MultiValuedFunction::from_masks(kb, m).unwrap())
        .collect()
}

/// Every product of value sets along a tuple of `A` lies in `B`.
pub fn direct_muhom(f: &MultiValuedFunction, a: &Structure, b: &Structure) -> bool {
    a.relations().iter().zip(b.relations()).all(|(ra, rb)| {
        ra.tuples().iter().all(|t| {
            let lists: Vec<Vec<Elem>> = t.iter().map(|&x| f.values(x)).collect();
            let mut ok = true;
            for_each_product(&lists, |u| {
                ok = rb.contains(u);
                ok
            });
            ok
        })
    })
}

pub fn brute_muhoms(a: &Structure, b: &Structure) -> Vec<MultiValuedFunction> {
    all_mvfs(a.size(), b.size())
        .into_iter()
        .filter(|f| direct_muhom(f, a, b))
        .collect()
}

pub fn brute_smuhoms(a: &Structure, b: &Structure) -> Vec<MultiValuedFunction> {
    brute_muhoms(a, b)
        .into_iter()
        .filter(|f| f.is_surjective())
        .collect()
}

/// Every tuple over `[k]` of length `len`.
pub fn all_tuples(k: usize, len: usize) -> Vec<Vec<Elem>> {
    let lists = vec![(0..k).collect::<Vec<_>>(); len];
    let mut out = Vec::new();
    for_each_product(&lists, |t| {
        out.push(t.to_vec());
        true
    });
    out
}
