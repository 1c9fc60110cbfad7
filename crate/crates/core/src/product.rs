use sdias_linalg::{LinearMap, Scalar, SparseVector};

use crate::CoreError;

/// Structure constants of a bilinear map `K^left × K^right → K^out`: the
/// entry at `(i, j)` is the image of the basis pair `(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearProduct {
    left_dim: usize,
    right_dim: usize,
    out_dim: usize,
    table: Vec<Option<SparseVector>>,
}

impl BilinearProduct {
    pub fn zero(left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        BilinearProduct {
            left_dim,
            right_dim,
            out_dim,
            table: vec![None; left_dim * right_dim],
        }
    }

    /// A product on a single space of dimension `dim`.
    pub fn square(dim: usize) -> Self {
        BilinearProduct::zero(dim, dim, dim)
    }

    /// Builds the table from `f(i, j)` on every basis pair.
    pub fn from_fn(
        left_dim: usize,
        right_dim: usize,
        out_dim: usize,
        mut f: impl FnMut(usize, usize) -> SparseVector,
    ) -> Self {
        let mut p = BilinearProduct::zero(left_dim, right_dim, out_dim);
        for i in 0..left_dim {
            for j in 0..right_dim {
                let v = f(i, j);
                debug_assert_eq!(v.dim(), out_dim);
                if !v.is_zero() {
                    p.table[i * right_dim + j] = Some(v);
                }
            }
        }
        p
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn set(&mut self, i: usize, j: usize, v: SparseVector) -> Result<(), CoreError> {
        if i >= self.left_dim || j >= self.right_dim {
            return Err(CoreError::IndexOutOfRange {
                index: i.max(j),
                dim: if i >= self.left_dim { self.left_dim } else { self.right_dim },
            });
        }
        if v.dim() != self.out_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.out_dim,
                found: v.dim(),
            });
        }
        self.table[i * self.right_dim + j] = (!v.is_zero()).then_some(v);
        Ok(())
    }

    /// Adds `c · e_k` to the product of `(e_i, e_j)`.
    pub fn add_coeff(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        let slot = &mut self.table[i * self.right_dim + j];
        let v = slot.get_or_insert_with(|| SparseVector::zero(self.out_dim));
        v.add_at(k, c);
        if v.is_zero() {
            *slot = None;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&SparseVector> {
        self.table[i * self.right_dim + j].as_ref()
    }

    pub fn basis(&self, i: usize, j: usize) -> SparseVector {
        self.get(i, j)
            .cloned()
            .unwrap_or_else(|| SparseVector::zero(self.out_dim))
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVector)> {
        self.table.iter().enumerate().filter_map(move |(n, v)| {
            v.as_ref().map(|v| (n / self.right_dim, n % self.right_dim, v))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Option::is_none)
    }

    /// `e_i ⋆ y`.
    pub fn basis_vec(&self, i: usize, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero(self.out_dim);
        for (&j, c) in y.iter() {
            if let Some(v) = self.get(i, j) {
                out.add_scaled(c, v);
            }
        }
        out
    }

    /// `x ⋆ e_j`.
    pub fn vec_basis(&self, x: &SparseVector, j: usize) -> SparseVector {
        let mut out = SparseVector::zero(self.out_dim);
        for (&i, c) in x.iter() {
            if let Some(v) = self.get(i, j) {
                out.add_scaled(c, v);
            }
        }
        out
    }

    /// `x ⋆ y`, extended bilinearly.
    pub fn apply(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero(self.out_dim);
        for (&i, a) in x.iter() {
            for (&j, b) in y.iter() {
                if let Some(v) = self.get(i, j) {
                    out.add_scaled(&(a * b), v);
                }
            }
        }
        out
    }

    /// `y ↦ x ⋆ y`.
    pub fn left_map(&self, x: &SparseVector) -> LinearMap {
        let cols = (0..self.right_dim)
            .map(|j| self.vec_basis(x, j))
            .collect();
        LinearMap::from_columns(self.out_dim, cols).expect("columns live in the output space")
    }

    /// `y ↦ y ⋆ x`.
    pub fn right_map(&self, x: &SparseVector) -> LinearMap {
        let cols = (0..self.left_dim).map(|i| self.basis_vec(i, x)).collect();
        LinearMap::from_columns(self.out_dim, cols).expect("columns live in the output space")
    }

    /// The product with every output scaled by `c`.
    pub fn scaled(&self, c: &Scalar) -> BilinearProduct {
        let mut out = self.clone();
        for slot in &mut out.table {
            if let Some(v) = slot.take() {
                let w = v.scaled(c);
                *slot = (!w.is_zero()).then_some(w);
            }
        }
        out
    }

    /// Entry-wise sum of two products of the same shape.
    pub fn add(&self, other: &BilinearProduct) -> Result<BilinearProduct, CoreError> {
        if (self.left_dim, self.right_dim, self.out_dim)
            != (other.left_dim, other.right_dim, other.out_dim)
        {
            return Err(CoreError::DimensionMismatch {
                expected: self.table.len(),
                found: other.table.len(),
            });
        }
        Ok(BilinearProduct::from_fn(
            self.left_dim,
            self.right_dim,
            self.out_dim,
            |i, j| self.basis(i, j).add(&other.basis(i, j)),
        ))
    }
}
