use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::{LinalgError, Scalar};

/// A vector in `K^dim` stored as a map from index to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    dim: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit vector index {index} out of range for dim {dim}");
        let mut v = SparseVector::zero(dim);
        v.entries.insert(index, Scalar::one());
        v
    }

    /// Builds a vector from `(index, coefficient)` pairs; repeated indices are
    /// summed and zeros dropped.
    pub fn from_pairs<I>(dim: usize, pairs: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut v = SparseVector::zero(dim);
        for (i, c) in pairs {
            if i >= dim {
                return Err(LinalgError::IndexOutOfRange { index: i, dim });
            }
            v.add_at(i, &c);
        }
        Ok(v)
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let mut v = SparseVector::zero(values.len());
        for (i, c) in values.iter().enumerate() {
            if !c.is_zero() {
                v.entries.insert(i, c.clone());
            }
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries.get(&index)
    }

    /// Coefficient at `index`, zero when absent.
    pub fn coeff(&self, index: usize) -> Scalar {
        self.entries.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, usize, Scalar> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn set(&mut self, index: usize, value: Scalar) {
        assert!(index < self.dim, "index {index} out of range for dim {}", self.dim);
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    /// `self[index] += value`.
    pub fn add_at(&mut self, index: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        assert!(index < self.dim, "index {index} out of range for dim {}", self.dim);
        match self.entries.entry(index) {
            btree_map::Entry::Vacant(e) => {
                e.insert(value.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &SparseVector) {
        debug_assert_eq!(self.dim, other.dim);
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.entries {
            self.add_at(i, &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&i, c)| (i, c * factor))
                .collect(),
        }
    }

    pub fn neg(&self) -> SparseVector {
        self.scaled(&Scalar::from_int(-1))
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), other);
        out
    }

    pub fn dot(&self, other: &SparseVector) -> Scalar {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(i, c)| large.entries.get(i).map(|d| c * d))
            .sum()
    }

    /// Relabels coordinates through `map` into a space of dimension `dim`.
    pub fn reindex(&self, dim: usize, map: impl Fn(usize) -> usize) -> SparseVector {
        let mut out = SparseVector::zero(dim);
        for (&i, c) in &self.entries {
            out.add_at(map(i), c);
        }
        out
    }

    /// Concatenates `self` and `other` into a vector of dimension
    /// `self.dim + other.dim`.
    pub fn concat(&self, other: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero(self.dim + other.dim);
        out.entries = self.entries.clone();
        for (&i, c) in &other.entries {
            out.entries.insert(self.dim + i, c.clone());
        }
        out
    }

    /// Coordinates in `[start, start + len)`, shifted down to start at 0.
    pub fn slice(&self, start: usize, len: usize) -> SparseVector {
        let mut out = SparseVector::zero(len);
        for (&i, c) in self.entries.range(start..start + len) {
            out.entries.insert(i - start, c.clone());
        }
        out
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, (i, c)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{c}")?;
        }
        write!(f, "; dim {}]", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn no_stored_zeros() {
        let mut v = SparseVector::from_pairs(3, [(0, s(1)), (2, s(2)), (0, s(-1))]).unwrap();
        assert_eq!(v.nnz(), 1);
        v.add_at(2, &s(-2));
        assert!(v.is_zero());
        assert_eq!(v, SparseVector::zero(3));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            SparseVector::from_pairs(2, [(2, s(1))]),
            Err(LinalgError::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }

    #[test]
    fn concat_and_slice() {
        let a = SparseVector::from_pairs(2, [(1, s(3))]).unwrap();
        let b = SparseVector::from_pairs(3, [(0, s(4))]).unwrap();
        let c = a.concat(&b);
        assert_eq!(c.dim(), 5);
        assert_eq!(c.coeff(2), s(4));
        assert_eq!(c.slice(0, 2), a);
        assert_eq!(c.slice(2, 3), b);
    }

    #[test]
    fn dot_product() {
        let a = SparseVector::from_dense(&[s(1), s(2), s(0)]);
        let b = SparseVector::from_dense(&[s(3), s(-1), s(7)]);
        assert_eq!(a.dot(&b), s(1));
    }
}
