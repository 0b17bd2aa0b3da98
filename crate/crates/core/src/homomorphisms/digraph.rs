//! Combining a ∀-smuhom and an ∃-smuhom between digraphs into an
//! ∃∀-smuhom.

use crate::error::{Error, Result};
use crate::structure::{Elem, Structure};

use super::mvf::{full_mask, MultiValuedFunction};
use super::search::is_surjective_multi_homomorphism;

/// Which construction produced the result of [`digraph_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineCase {
    /// `a*` has no edges at all.
    Isolated,
    /// `a*` has an incoming edge `(a1, a*)` and no outgoing edge.
    IncomingOnly { a1: Elem },
    /// `a*` has an outgoing edge `(a*, a1)` and no incoming edge.
    OutgoingOnly { a1: Elem },
    /// `a*` has edges both ways and `a3` is a sink.
    Sink { a3: Elem },
    /// `a*` has edges both ways and `a3` is a source.
    Source { a3: Elem },
    /// Every vertex has edges both ways.
    NoSinkNoSource,
}

/// Point `p` goes to all of `B`; everything else goes to `{q}`.
fn star(k_a: usize, k_b: usize, p: Elem, q: Elem) -> MultiValuedFunction {
    let values = (0..k_a)
        .map(|x| if x == p { full_mask(k_b) } else { 1 << q })
        .collect();
    MultiValuedFunction::from_masks(k_b, values).unwrap()
}

/// Builds an ∃∀-smuhom from a ∀-smuhom `f` (with `f(a*) = B`) and an
/// ∃-smuhom `g` (with `g⁻¹(b*) = A`) between digraphs `a` and `b`.
///
/// Returns the function, its witnesses `(a*, b*)` and the case used.
pub fn digraph_combine(
    f: &MultiValuedFunction,
    g: &MultiValuedFunction,
    a: &Structure,
    b: &Structure,
) -> Result<(MultiValuedFunction, Elem, Elem, CombineCase)> {
    if !a.signature().is_digraph() || !b.is_similar(a) {
        return Err(Error::Precondition(
            "both structures must be digraphs".into(),
        ));
    }
    if !is_surjective_multi_homomorphism(f, a, b)? || !is_surjective_multi_homomorphism(g, a, b)? {
        return Err(Error::Precondition(
            "both inputs must be surjective multi-homomorphisms".into(),
        ));
    }
    let a_star = *f
        .full_points()
        .first()
        .ok_or_else(|| Error::Precondition("first input is not a ∀-smuhom".into()))?;
    let b_star = *g
        .common_values()
        .first()
        .ok_or_else(|| Error::Precondition("second input is not an ∃-smuhom".into()))?;

    let edges = a.relation_at(0).tuples();
    let k_a = a.size();
    let k_b = b.size();
    let incoming = edges
        .iter()
        .find(|e| e[1] == a_star && e[0] != a_star)
        .or(edges.iter().find(|e| e[1] == a_star));
    let outgoing = edges
        .iter()
        .find(|e| e[0] == a_star && e[1] != a_star)
        .or(edges.iter().find(|e| e[0] == a_star));
    let least = |x: Elem| f.values(x)[0];

    let (h, p, q, case) = match (incoming, outgoing) {
        (None, None) => (
            star(k_a, k_b, a_star, b_star),
            a_star,
            b_star,
            CombineCase::Isolated,
        ),
        (Some(e), None) => {
            let b1 = least(e[0]);
            (
                star(k_a, k_b, a_star, b1),
                a_star,
                b1,
                CombineCase::IncomingOnly { a1: e[0] },
            )
        }
        (None, Some(e)) => {
            let b1 = least(e[1]);
            (
                star(k_a, k_b, a_star, b1),
                a_star,
                b1,
                CombineCase::OutgoingOnly { a1: e[1] },
            )
        }
        (Some(inc), Some(out)) => {
            let sink = (0..k_a).find(|&x| edges.iter().all(|e| e[0] != x));
            let source = (0..k_a).find(|&x| edges.iter().all(|e| e[1] != x));
            if let Some(a3) = sink {
                let b1 = least(inc[0]);
                (star(k_a, k_b, a3, b1), a3, b1, CombineCase::Sink { a3 })
            } else if let Some(a3) = source {
                let b2 = least(out[1]);
                (star(k_a, k_b, a3, b2), a3, b2, CombineCase::Source { a3 })
            } else {
                (
                    star(k_a, k_b, a_star, b_star),
                    a_star,
                    b_star,
                    CombineCase::NoSinkNoSource,
                )
            }
        }
    };
    Ok((h, p, q, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homomorphisms::{is_ae_smuhom, smuhom_profile};

    fn digraph(k: usize, edges: &[(usize, usize)]) -> Structure {
        Structure::single("E", 2, k, edges.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap()
    }

    #[test]
    fn isolated_star() {
        let a = digraph(3, &[(0, 1)]);
        let b = digraph(2, &[(0, 0), (0, 1)]);
        let p = smuhom_profile(&a, &b).unwrap();
        let (f, _) = p.forall_smuhom().unwrap();
        let (g, _) = p.exists_smuhom().unwrap();
        let (h, x, y, _) = digraph_combine(f, g, &a, &b).unwrap();
        assert!(is_ae_smuhom(&h, &a, &b, x, y).unwrap());
    }
}
