use std::fmt;

use crate::error::{Error, Result};
use crate::structure::Elem;

/// A map from `0..source` to nonempty subsets of `0..target`.
///
/// Value sets are bitmasks, so targets are limited to 64 elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiValuedFunction {
    target: usize,
    values: Vec<u64>,
}

pub(crate) fn mask_of(elems: &[Elem]) -> u64 {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

pub(crate) fn elems_of(mask: u64) -> Vec<Elem> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl MultiValuedFunction {
    pub fn new(target: usize, values: Vec<Vec<Elem>>) -> Result<Self> {
        if target == 0 || target > 64 {
            return Err(Error::InvalidFunction(format!(
                "target size {target} outside 1..=64"
            )));
        }
        let mut masks = Vec::with_capacity(values.len());
        for (a, v) in values.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidFunction(format!(
                    "element {} has an empty value set",
                    a + 1
                )));
            }
            if let Some(&b) = v.iter().find(|&&b| b >= target) {
                return Err(Error::InvalidFunction(format!(
                    "value {} outside the target of size {target}",
                    b + 1
                )));
            }
            masks.push(mask_of(v));
        }
        Ok(MultiValuedFunction {
            target,
            values: masks,
        })
    }

    /// From value bitmasks; every mask must be nonempty and inside the target.
    pub fn from_masks(target: usize, values: Vec<u64>) -> Result<Self> {
        if target == 0 || target > 64 {
            return Err(Error::InvalidFunction(format!(
                "target size {target} outside 1..=64"
            )));
        }
        if values
            .iter()
            .any(|&m| m == 0 || m & !full_mask(target) != 0)
        {
            return Err(Error::InvalidFunction(
                "empty or out-of-range value set".into(),
            ));
        }
        Ok(MultiValuedFunction { target, values })
    }

    /// A single-valued function given as a list of images.
    pub fn from_function(target: usize, images: &[Elem]) -> Result<Self> {
        MultiValuedFunction::new(target, images.iter().map(|&b| vec![b]).collect())
    }

    pub fn identity(k: usize) -> Self {
        MultiValuedFunction {
            target: k,
            values: (0..k).map(|i| 1 << i).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target
    }

    pub fn mask(&self, a: Elem) -> u64 {
        self.values[a]
    }

    pub fn masks(&self) -> &[u64] {
        &self.values
    }

    pub fn values(&self, a: Elem) -> Vec<Elem> {
        elems_of(self.values[a])
    }

    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.values[a] >> b & 1 == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.values.iter().fold(0, |m, v| m | v) == full_mask(self.target)
    }

    pub fn multiplicity(&self) -> usize {
        self.values
            .iter()
            .map(|v| v.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `self(a) ⊆ other(a)` for every `a`.
    pub fn is_contained_in(&self, other: &MultiValuedFunction) -> bool {
        self.target == other.target
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a & !b == 0)
    }

    /// `b ↦ {a : b ∈ f(a)}`; defined for surjective functions only.
    pub fn inverse(&self) -> Option<MultiValuedFunction> {
        if !self.is_surjective() || self.values.len() > 64 {
            return None;
        }
        let values = (0..self.target).map(|b| self.preimage_mask(b)).collect();
        Some(MultiValuedFunction {
            target: self.values.len(),
            values,
        })
    }

    /// Bitmask of `{a : b ∈ f(a)}`.
    pub fn preimage_mask(&self, b: Elem) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v >> b & 1 == 1)
            .fold(0, |m, (a, _)| m | (1 << a))
    }

    /// Source elements whose value is the whole target, in increasing order.
    pub fn full_points(&self) -> Vec<Elem> {
        let full = full_mask(self.target);
        (0..self.values.len())
            .filter(|&a| self.values[a] == full)
            .collect()
    }

    /// Target elements contained in every value set, in increasing order.
    pub fn common_values(&self) -> Vec<Elem> {
        elems_of(
            self.values
                .iter()
                .fold(full_mask(self.target), |m, v| m & v),
        )
    }

    /// Same function with `b` added to the value set of `a`.
    pub fn with_value(&self, a: Elem, b: Elem) -> MultiValuedFunction {
        let mut g = self.clone();
        g.values[a] |= 1 << b;
        g
    }
}

/// One line per source element, `i : j1 j2 ...`, 1-based.
impl fmt::Display for MultiValuedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.values.len() {
            let vals: Vec<String> = self.values(a).iter().map(|b| (b + 1).to_string()).collect();
            writeln!(f, "{} : {}", a + 1, vals.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_values() {
        assert!(MultiValuedFunction::new(2, vec![vec![0], vec![]]).is_err());
        assert!(MultiValuedFunction::new(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn inverse_and_witness_points() {
        let f = MultiValuedFunction::new(3, vec![vec![0, 1, 2], vec![1]]).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.full_points(), vec![0]);
        assert_eq!(f.common_values(), vec![1]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.values(1), vec![0, 1]);
        assert_eq!(inv.full_points(), vec![1]);
        assert_eq!(f.multiplicity(), 3);
    }

    #[test]
    fn containment() {
        let f = MultiValuedFunction::new(2, vec![vec![0], vec![1]]).unwrap();
        let g = f.with_value(0, 1);
        assert!(f.is_contained_in(&g));
        assert!(!g.is_contained_in(&f));
    }
}
