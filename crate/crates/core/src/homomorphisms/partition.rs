use crate::structure::{Elem, Structure};

use super::mvf::MultiValuedFunction;

/// Classes of elements that no relation can tell apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndistinguishabilityPartition {
    /// Blocks in order of their least element; each block sorted.
    pub blocks: Vec<Vec<Elem>>,
    class_of: Vec<usize>,
}

impl IndistinguishabilityPartition {
    pub fn class_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.class_of[x] == self.class_of[y]
    }
}

/// `x ∼ y`: replacing `x` by `y` (or `y` by `x`) at any one coordinate of any
/// tuple never changes membership in any relation.
pub fn indistinguishable(s: &Structure, x: Elem, y: Elem) -> bool {
    if x == y {
        return true;
    }
    s.relations().iter().all(|r| {
        r.tuples().iter().chain(r.complement().tuples()).all(|t| {
            let member = r.contains(t);
            let mut u = t.clone();
            (0..t.len()).all(|i| {
                let ok = if t[i] == x {
                    u[i] = y;
                    r.contains(&u) == member
                } else if t[i] == y {
                    u[i] = x;
                    r.contains(&u) == member
                } else {
                    true
                };
                u[i] = t[i];
                ok
            })
        })
    })
}

pub fn indistinguishability_partition(s: &Structure) -> IndistinguishabilityPartition {
    let k = s.size();
    let mut class_of = vec![usize::MAX; k];
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for x in 0..k {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = blocks.len();
        let block: Vec<Elem> = (x..k)
            .filter(|&y| class_of[y] == usize::MAX && indistinguishable(s, x, y))
            .collect();
        for &y in &block {
            class_of[y] = c;
        }
        blocks.push(block);
    }
    IndistinguishabilityPartition { blocks, class_of }
}

/// Whether `f` maps related elements to related elements:
/// `x ∼ x'` implies every value of `x` is related to every value of `x'`.
pub fn preserves_partition(
    f: &MultiValuedFunction,
    src: &IndistinguishabilityPartition,
    dst: &IndistinguishabilityPartition,
) -> bool {
    let k = f.source_size();
    (0..k).all(|x| {
        (0..k).filter(|&x2| src.related(x, x2)).all(|x2| {
            f.values(x)
                .iter()
                .all(|&y| f.values(x2).iter().all(|&y2| dst.related(y, y2)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_separates_everything() {
        let p = indistinguishability_partition(&Structure::equality("Q", 3).unwrap());
        assert_eq!(p.blocks, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn twins_share_a_block() {
        // 1 and 2 both point at 0 and nowhere else.
        let s = Structure::single("E", 2, 3, vec![vec![1, 0], vec![2, 0]]).unwrap();
        let p = indistinguishability_partition(&s);
        assert_eq!(p.blocks, vec![vec![0], vec![1, 2]]);
        assert_eq!(p.class_count(), 2);
    }
}
