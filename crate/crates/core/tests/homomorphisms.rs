//! Enumeration, profiles, constant maps, digraph combination and the
//! indistinguishability partition.

mod common;

use common::{all_binary, brute_muhoms, brute_smuhoms};
use mucheck_core::catalog::{small_digraphs, tern_ae};
use mucheck_core::homomorphisms::{
    digraph_combine, enumerate_homomorphisms, enumerate_smuhoms, exists_constant_homomorphism,
    indistinguishability_partition, is_ae_smuhom, is_multi_homomorphism, maximal_muhoms,
    preserves_partition, CombineCase, MultiValuedFunction,
};
use mucheck_core::structure::Structure;

fn arc() -> Structure {
    Structure::single("R", 2, 2, vec![vec![0, 1]]).unwrap()
}

fn eq(k: usize) -> Structure {
    Structure::equality("R", k).unwrap()
}

#[test]
fn identity_and_a_non_example() {
    for s in all_binary(2) {
        assert!(is_multi_homomorphism(&MultiValuedFunction::identity(2), &s, &s).unwrap());
    }
    let f = MultiValuedFunction::new(2, vec![vec![0, 1], vec![1]]).unwrap();
    assert!(!is_multi_homomorphism(&f, &eq(2), &eq(2)).unwrap());
}

#[test]
fn homomorphisms_of_an_arc() {
    let homs = enumerate_homomorphisms(&arc(), &arc()).unwrap();
    assert_eq!(homs, vec![vec![0, 1]]);
}

#[test]
fn no_constant_maps_into_a_target_without_loops() {
    let a = Structure::single("R", 3, 3, vec![vec![0, 1, 2]]).unwrap();
    let tuples = common::all_tuples(3, 3)
        .into_iter()
        .filter(|t| !(t[0] == t[1] && t[1] == t[2]))
        .collect();
    let b = Structure::single("R", 3, 3, tuples).unwrap();
    let homs = enumerate_homomorphisms(&a, &b).unwrap();
    assert_eq!(homs.len(), 24);
    assert!(homs.iter().all(|h| !(h[0] == h[1] && h[1] == h[2])));
    assert_eq!(exists_constant_homomorphism(&a, &b).unwrap(), None);
}

#[test]
fn constant_homomorphisms() {
    assert_eq!(exists_constant_homomorphism(&arc(), &arc()).unwrap(), None);
    let looped = Structure::single("R", 2, 2, vec![vec![0, 1], vec![1, 1]]).unwrap();
    assert_eq!(
        exists_constant_homomorphism(&arc(), &looped).unwrap(),
        Some(1)
    );
    for a in all_binary(2) {
        for b in all_binary(2) {
            let want = (0..2).find(|&c| {
                brute_muhoms(&a, &b)
                    .iter()
                    .any(|f| (0..2).all(|x| f.values(x) == vec![c]))
            });
            assert_eq!(exists_constant_homomorphism(&a, &b).unwrap(), want);
        }
    }
}

#[test]
fn equality_smuhoms_are_bijections() {
    for k in 2..=4 {
        let all = enumerate_smuhoms(&eq(k), &eq(k)).unwrap();
        let perms = (1..=k).product::<usize>();
        assert_eq!(all.len(), perms);
        assert!(all.iter().all(|f| f.multiplicity() == 1));
    }
}

#[test]
fn maximal_muhoms_cover_all_muhoms() {
    for a in all_binary(2) {
        for b in all_binary(2) {
            let max = maximal_muhoms(&a, &b).unwrap();
            for f in brute_muhoms(&a, &b) {
                assert!(max.iter().any(|g| f.is_contained_in(g)));
            }
            for g in &max {
                assert!(!max.iter().any(|h| h != g && g.is_contained_in(h)));
            }
        }
    }
}

#[test]
fn tern_ae_profile() {
    let t = tern_ae();
    let p = t.profile().unwrap();
    assert_eq!(p.all_smuhoms.len(), brute_smuhoms(t.a(), t.b()).len());
    assert!(p.has_forall.is_some() && p.has_exists.is_some() && p.has_ae.is_none());
}

#[test]
fn digraph_combination() {
    let ds = small_digraphs();
    let mut seen = Vec::new();
    for a in &ds {
        for b in &ds {
            let all = enumerate_smuhoms(a, b).unwrap();
            let f = all.iter().find(|f| !f.full_points().is_empty());
            let g = all.iter().find(|g| !g.common_values().is_empty());
            let (Some(f), Some(g)) = (f, g) else { continue };
            let (h, a_star, b_star, case) = digraph_combine(f, g, a, b).unwrap();
            assert!(is_ae_smuhom(&h, a, b, a_star, b_star).unwrap());
            let key = std::mem::discriminant(&case);
            if !seen.contains(&key) {
                seen.push(key);
            }
            if let CombineCase::Isolated = case {
                assert_eq!(h.values(a_star).len(), b.size());
                for x in (0..a.size()).filter(|&x| x != a_star) {
                    assert_eq!(h.values(x), vec![b_star]);
                }
            }
        }
    }
    assert!(seen.len() >= 3);
}

#[test]
fn partition_examples() {
    let p = indistinguishability_partition(&eq(3));
    assert_eq!(p.blocks, vec![vec![0], vec![1], vec![2]]);
    // Elements 2 and 3 both relate to everything and are related to by 1.
    let s = Structure::single(
        "R",
        2,
        3,
        vec![
            vec![0, 1],
            vec![0, 2],
            vec![1, 0],
            vec![1, 1],
            vec![1, 2],
            vec![2, 0],
            vec![2, 1],
            vec![2, 2],
        ],
    )
    .unwrap();
    let p = indistinguishability_partition(&s);
    assert_eq!(p.blocks, vec![vec![0], vec![1, 2]]);
}

#[test]
fn smuhoms_of_closed_structures_preserve_the_partition() {
    for a in all_binary(2)
        .into_iter()
        .chain(all_binary(3).into_iter().step_by(17))
    {
        let a = a.complementation_closure().unwrap();
        let pa = indistinguishability_partition(&a);
        for b in all_binary(2) {
            let b = b.complementation_closure().unwrap();
            let pb = indistinguishability_partition(&b);
            for f in enumerate_smuhoms(&a, &b).unwrap() {
                assert!(preserves_partition(&f, &pa, &pb));
            }
        }
    }
}
