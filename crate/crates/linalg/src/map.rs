use crate::{row_reduce, LinalgError, Polynomial, Scalar, SparseVector, Subspace};

/// A linear map `K^domain_dim -> K^codomain_dim` stored by columns: column `j`
/// is the image of the `j`-th domain basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    domain_dim: usize,
    codomain_dim: usize,
    columns: Vec<SparseVector>,
}

impl LinearMap {
    pub fn from_columns(codomain_dim: usize, columns: Vec<SparseVector>) -> Result<Self, LinalgError> {
        for c in &columns {
            if c.dim() != codomain_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: codomain_dim,
                    found: c.dim(),
                });
            }
        }
        Ok(LinearMap {
            domain_dim: columns.len(),
            codomain_dim,
            columns,
        })
    }

    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        LinearMap {
            domain_dim,
            codomain_dim,
            columns: vec![SparseVector::zero(codomain_dim); domain_dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            domain_dim: dim,
            codomain_dim: dim,
            columns: (0..dim).map(|i| SparseVector::unit(dim, i)).collect(),
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.columns[col].coeff(row)
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector, LinalgError> {
        if v.dim() != self.domain_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.domain_dim,
                found: v.dim(),
            });
        }
        let mut out = SparseVector::zero(self.codomain_dim);
        for (&j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        let columns = other
            .columns
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        LinearMap::from_columns(self.codomain_dim, columns)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.domain_dim != other.domain_dim || self.codomain_dim != other.codomain_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.domain_dim,
                found: other.domain_dim,
            });
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(LinearMap {
            domain_dim: self.domain_dim,
            codomain_dim: self.codomain_dim,
            columns,
        })
    }

    /// `self - λ·id`; requires a square map.
    pub fn shift(&self, lambda: &Scalar) -> Result<LinearMap, LinalgError> {
        self.require_square()?;
        let mut out = self.clone();
        for (j, col) in out.columns.iter_mut().enumerate() {
            col.add_at(j, &-lambda);
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.domain_dim != self.codomain_dim {
            return Err(LinalgError::NotSquare {
                rows: self.codomain_dim,
                cols: self.domain_dim,
            });
        }
        Ok(())
    }

    /// Rows of the matrix, each a vector over the domain.
    pub fn rows(&self) -> Vec<SparseVector> {
        let mut rows = vec![SparseVector::zero(self.domain_dim); self.codomain_dim];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, c) in col.iter() {
                rows[i].set(j, c.clone());
            }
        }
        rows
    }

    pub fn image(&self) -> Subspace {
        row_reduce(self.codomain_dim, &self.columns).expect("columns share the codomain dimension")
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    /// `{v : self(v) = 0}`.
    pub fn kernel(&self) -> Subspace {
        let n = self.domain_dim;
        let rref = row_reduce(n, &self.rows()).expect("rows share the domain dimension");
        let pivots: Vec<usize> = rref.pivots().collect();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(n - pivots.len());
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = SparseVector::unit(n, free);
            for (row, &p) in rref.basis().iter().zip(&pivots) {
                if let Some(c) = row.get(free) {
                    v.set(p, -c);
                }
            }
            basis.push(v);
        }
        row_reduce(n, &basis).expect("kernel vectors live in the domain")
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![Scalar::zero(); self.domain_dim]; self.codomain_dim];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, c) in col.iter() {
                m[i][j] = c.clone();
            }
        }
        m
    }

    /// The monic characteristic polynomial `det(x·I - M)`, computed exactly by
    /// reducing to upper Hessenberg form with elementary similarity transforms
    /// and running the Hessenberg determinant recurrence.
    pub fn char_poly(&self) -> Result<Polynomial, LinalgError> {
        self.require_square()?;
        let n = self.domain_dim;
        let mut h = self.to_dense();
        hessenberg_in_place(&mut h);

        // p[k] is the characteristic polynomial of the leading k×k block.
        let mut p: Vec<Polynomial> = Vec::with_capacity(n + 1);
        p.push(Polynomial::one());
        for m in 1..=n {
            let linear = Polynomial::new(vec![-&h[m - 1][m - 1], Scalar::one()]);
            let mut next = linear.mul(&p[m - 1]);
            let mut t = Scalar::one();
            for i in 1..m {
                t *= &h[m - i][m - i - 1];
                if t.is_zero() {
                    break;
                }
                let coeff = &h[m - i - 1][m - 1] * &t;
                if !coeff.is_zero() {
                    next = next.sub(&p[m - i - 1].scale(&coeff));
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("p has n + 1 entries"))
    }
}

fn hessenberg_in_place(h: &mut [Vec<Scalar>]) {
    let n = h.len();
    if n < 3 {
        return;
    }
    for m in 1..n - 1 {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &pivot;
            // row_i -= u * row_m
            for j in 0..n {
                if !h[m][j].is_zero() {
                    let d = &u * &h[m][j];
                    h[i][j] -= &d;
                }
            }
            // col_m += u * col_i
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let d = &u * &row[i];
                    row[m] += &d;
                }
            }
        }
    }
}
