use crate::classifier::TemplatePair;
use crate::error::Result;
use crate::structure::{Relation, Signature, Structure};

/// `([d]; Rb^n_d)`: the `n`-tuples that use every element. Symbol `S`.
pub fn rainbow_structure(d: usize, n: usize) -> Result<Structure> {
    let rel = Relation::from_predicate(n, d, |t| {
        let mut seen = 0u64;
        for &e in t {
            seen |= 1 << e;
        }
        seen.count_ones() as usize == d
    })?;
    Structure::from_relations(Signature::single("S", n)?, d, vec![rel], true)
}

/// `([d]; NAE^n_d)`: the non-constant `n`-tuples. Symbol `S`.
pub fn nae_structure(d: usize, n: usize) -> Result<Structure> {
    let rel = Relation::from_predicate(n, d, |t| t.iter().any(|&e| e != t[0]))?;
    Structure::from_relations(Signature::single("S", n)?, d, vec![rel], true)
}

/// `(([k_a]; Rb^{2k_a}), ([k_b]; NAE^{2k_a}))`.
pub fn rbnae_template(k_a: usize, k_b: usize) -> Result<TemplatePair> {
    TemplatePair::new(
        rainbow_structure(k_a, 2 * k_a)?,
        nae_structure(k_b, 2 * k_a)?,
    )
}
