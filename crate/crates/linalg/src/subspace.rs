use crate::{LinalgError, SparseVector};

/// A subspace of `K^ambient_dim`, stored as its reduced row-echelon basis.
///
/// Rows have leading coefficient 1, pivot columns strictly increase, and each
/// pivot column is zero in every other row. Two subspaces are equal exactly
/// when their RREF bases are equal, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVector>,
}

fn check_dims<'a>(
    ambient_dim: usize,
    vectors: impl IntoIterator<Item = &'a SparseVector>,
) -> Result<(), LinalgError> {
    for v in vectors {
        if v.dim() != ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// Row-reduces `vectors` (all of dimension `ambient_dim`) into the RREF basis
/// of their span.
pub fn row_reduce(ambient_dim: usize, vectors: &[SparseVector]) -> Result<Subspace, LinalgError> {
    let mut s = Subspace::zero(ambient_dim);
    s.extend(vectors)?;
    Ok(s)
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: (0..ambient_dim)
                .map(|i| SparseVector::unit(ambient_dim, i))
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("RREF rows are nonzero").0)
    }

    /// Subtracts the projection onto the pivot columns; the result is zero
    /// exactly when `v` lies in the subspace, and is otherwise supported off
    /// the pivot columns.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for row in &self.rows {
            let (p, _) = row.leading().expect("RREF rows are nonzero");
            if let Some(c) = out.get(p).cloned() {
                out.add_scaled(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        v.dim() == self.ambient_dim && self.reduce(v).is_zero()
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` if `v` is
    /// not in the subspace. For RREF these are just the pivot entries.
    pub fn coordinates(&self, v: &SparseVector) -> Option<SparseVector> {
        if !self.contains(v) {
            return None;
        }
        let mut out = SparseVector::zero(self.dim());
        for (r, p) in self.pivots().enumerate() {
            if let Some(c) = v.get(p) {
                out.set(r, c.clone());
            }
        }
        Some(out)
    }

    /// Inserts one vector, keeping the basis in RREF. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool, LinalgError> {
        check_dims(self.ambient_dim, [v])?;
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return Ok(false);
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        r = r.scaled(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(pivot).cloned() {
                row.add_scaled(&-c, &r);
            }
        }
        let pos = self
            .rows
            .partition_point(|row| row.leading().expect("RREF rows are nonzero").0 < pivot);
        self.rows.insert(pos, r);
        Ok(true)
    }

    pub fn extend<'a>(
        &mut self,
        vectors: impl IntoIterator<Item = &'a SparseVector>,
    ) -> Result<(), LinalgError> {
        for v in vectors {
            if self.dim() == self.ambient_dim {
                check_dims(self.ambient_dim, [v])?;
                continue;
            }
            self.insert(v)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut out = self.clone();
        out.extend(&other.rows)?;
        Ok(out)
    }

    /// `self ∩ other` by the Zassenhaus construction: reduce the rows
    /// `(u, u)` for `u` in `self` and `(w, 0)` for `w` in `other`; rows whose
    /// first half vanishes carry a basis of the intersection in their second half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        let n = self.ambient_dim;
        if n != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: other.ambient_dim,
            });
        }
        let mut big = Subspace::zero(2 * n);
        for u in &self.rows {
            big.insert(&u.concat(u))?;
        }
        let zero = SparseVector::zero(n);
        for w in &other.rows {
            big.insert(&w.concat(&zero))?;
        }
        let tails: Vec<SparseVector> = big
            .rows
            .iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= n))
            .map(|r| r.slice(n, n))
            .collect();
        row_reduce(n, &tails)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains(r))
    }
}

/// Finds coefficients `c` with `Σ c_i vectors[i] = target`, if any exist.
/// The vectors may be linearly dependent; some solution is returned.
pub fn solve_combination(
    vectors: &[SparseVector],
    target: &SparseVector,
) -> Result<Option<SparseVector>, LinalgError> {
    let n = target.dim();
    check_dims(n, vectors)?;
    let k = vectors.len();
    let mut aug = Subspace::zero(n + k);
    for (i, v) in vectors.iter().enumerate() {
        aug.insert(&v.concat(&SparseVector::unit(k, i)))?;
    }
    let reduced = aug.reduce(&target.concat(&SparseVector::zero(k)));
    if reduced.slice(0, n).is_zero() {
        // target + (-c) ≡ 0 on the first block, where c is the combination.
        Ok(Some(reduced.slice(n, k).neg()))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn v(xs: &[i64]) -> SparseVector {
        SparseVector::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn full_space_from_two_vectors() {
        let s = row_reduce(2, &[v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s, Subspace::full(2));
    }

    #[test]
    fn dependent_pair() {
        let s = row_reduce(2, &[v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 2])]);
    }

    #[test]
    fn mismatched_dims() {
        assert!(matches!(
            row_reduce(2, &[v(&[1, 0, 0])]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 3 })
        ));
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn rref_shape() {
        let s = row_reduce(4, &[v(&[0, 2, 4, 6]), v(&[1, 1, 1, 1]), v(&[1, 3, 5, 7])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis()[0], v(&[1, 0, -1, -2]));
        assert_eq!(s.basis()[1], v(&[0, 1, 2, 3]));
    }

    #[test]
    fn intersections() {
        let s = row_reduce(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.intersect(&s).unwrap(), s);
        let x = row_reduce(2, &[v(&[1, 0])]).unwrap();
        let y = row_reduce(2, &[v(&[0, 1])]).unwrap();
        assert!(x.intersect(&y).unwrap().is_zero());
        let t = row_reduce(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = s.intersect(&t).unwrap();
        assert_eq!(i.basis(), &[v(&[0, 1, 1])]);
    }

    #[test]
    fn coordinates_and_solve() {
        let s = row_reduce(3, &[v(&[1, 0, 2]), v(&[0, 1, 3])]).unwrap();
        assert_eq!(s.coordinates(&v(&[2, -1, 1])), Some(v(&[2, -1])));
        assert_eq!(s.coordinates(&v(&[0, 0, 1])), None);

        let vs = [v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])];
        let c = solve_combination(&vs, &v(&[1, 3, 2])).unwrap().unwrap();
        let mut acc = SparseVector::zero(3);
        for (i, vec) in vs.iter().enumerate() {
            acc.add_scaled(&c.coeff(i), vec);
        }
        assert_eq!(acc, v(&[1, 3, 2]));
        assert!(solve_combination(&vs, &v(&[1, 0, 0])).unwrap().is_none());
    }
}
