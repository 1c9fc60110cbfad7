//! Matrix Leibniz superalgebras gl(m,n,D) and sl(m,n,D).

use std::collections::BTreeMap;

use sdias_linalg::{solve_combination, Scalar, SparseVector, Subspace};

use crate::construct::SignConvention;
use crate::ideal::{derived_subalgebra, restrict, Embedded};
use crate::report::grid_check;
use crate::{
    koszul, BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra,
    SuperSpace, ViolationReport,
};

/// Block sizes `(m, n)` of a square supermatrix of size `m + n`. Rows and
/// columns are 0-based; index `i` is odd exactly when `i >= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Self {
        Shape { m, n }
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn index_parity(&self, i: usize) -> Parity {
        Parity::from_bool(i >= self.m)
    }

    /// `τ_ij = |i| + |j|`.
    pub fn tau(&self, i: usize, j: usize) -> Parity {
        self.index_parity(i) + self.index_parity(j)
    }
}

/// Index of `E_ij(e_k)` in gl(m,n,D).
pub fn gl_index(shape: Shape, dim_d: usize, i: usize, j: usize, k: usize) -> usize {
    (i * shape.size() + j) * dim_d + k
}

/// Inverse of [`gl_index`].
pub fn gl_unindex(shape: Shape, dim_d: usize, x: usize) -> (usize, usize, usize) {
    let k = x % dim_d;
    let ij = x / dim_d;
    (ij / shape.size(), ij % shape.size(), k)
}

/// gl(m,n,D) with the Koszul sign rule.
pub fn build_gl(m: usize, n: usize, d: &SuperDialgebra) -> Result<LeibnizSuperalgebra, CoreError> {
    build_gl_with(m, n, d, SignConvention::Koszul)
}

/// gl(m,n,D) on the basis `E_ij(a_k)` of parity `τ_ij + |a_k|`.
///
/// Koszul: `[E_ij(a), E_kl(b)] = (−1)^{|a|τ_kl} δ_jk E_il(a⊢b)
///   − (−1)^{|x||y|+|b|τ_ij} δ_il E_kj(b⊣a)`, with `x = E_ij(a)`, `y = E_kl(b)`;
/// this is `to_leibniz` of `M_{m+n} ⊗ D`.
///
/// Literal: `[E_ij(a), E_kl(b)] = δ_jk E_il(a⊢b) − (−1)^{τ_ij τ_kl} δ_il E_kj(b⊣a)`.
pub fn build_gl_with(
    m: usize,
    n: usize,
    d: &SuperDialgebra,
    convention: SignConvention,
) -> Result<LeibnizSuperalgebra, CoreError> {
    let shape = Shape::new(m, n);
    let size = shape.size();
    if size < 2 {
        return Err(CoreError::MatrixTooSmall(size));
    }
    let dd = d.dim();
    let dsp = d.space();
    let total = size * size * dd;
    let mut labels = Vec::with_capacity(total);
    let mut parities = Vec::with_capacity(total);
    for i in 0..size {
        for j in 0..size {
            for k in 0..dd {
                labels.push(format!("E{}{}({})", i + 1, j + 1, dsp.label(k)));
                parities.push(shape.tau(i, j) + dsp.parity(k));
            }
        }
    }
    let space = SuperSpace::new(format!("gl({m},{n},{})", d.name()), labels, parities)?;
    let mut bracket = BilinearProduct::square(total);
    for i in 0..size {
        for j in 0..size {
            for a in 0..dd {
                let x = gl_index(shape, dd, i, j, a);
                for k in 0..size {
                    for l in 0..size {
                        if j != k && i != l {
                            continue;
                        }
                        for b in 0..dd {
                            let y = gl_index(shape, dd, k, l, b);
                            let mut v = SparseVector::zero(total);
                            let (pa, pb) = (dsp.parity(a), dsp.parity(b));
                            let (tij, tkl) = (shape.tau(i, j), shape.tau(k, l));
                            if j == k {
                                if let Some(ab) = d.right().get(a, b) {
                                    let s = match convention {
                                        SignConvention::Koszul => koszul(pa, tkl),
                                        SignConvention::Literal => 1,
                                    };
                                    for (&c, coef) in ab.iter() {
                                        v.add_at(gl_index(shape, dd, i, l, c), &(coef * &Scalar::from_int(s)));
                                    }
                                }
                            }
                            if i == l {
                                if let Some(ba) = d.left().get(b, a) {
                                    let s = match convention {
                                        SignConvention::Koszul => {
                                            koszul(tij + pa, tkl + pb) * koszul(pb, tij)
                                        }
                                        SignConvention::Literal => koszul(tij, tkl),
                                    };
                                    for (&c, coef) in ba.iter() {
                                        v.add_at(gl_index(shape, dd, k, j, c), &(coef * &Scalar::from_int(-s)));
                                    }
                                }
                            }
                            if !v.is_zero() {
                                bracket.set(x, y, v)?;
                            }
                        }
                    }
                }
            }
        }
    }
    LeibnizSuperalgebra::new(space, bracket)
}

/// sl(m,n,D) = [gl, gl] realised on its reduced row-echelon basis inside gl.
pub fn build_sl(m: usize, n: usize, d: &SuperDialgebra) -> Result<(LeibnizSuperalgebra, Embedded), CoreError> {
    let gl = build_gl(m, n, d)?;
    let derived = derived_subalgebra(&gl);
    let mut emb = restrict(&gl, &derived)?;
    emb.algebra = emb.algebra.with_name(format!("sl({m},{n},{})", d.name()));
    Ok((gl, emb))
}

/// Supertrace of an element of gl(m,n,K).
pub fn supertrace(shape: Shape, v: &SparseVector) -> Result<Scalar, CoreError> {
    let size = shape.size();
    if v.dim() != size * size {
        return Err(CoreError::NonScalarCoefficients(v.dim()));
    }
    let mut s = Scalar::zero();
    for i in 0..size {
        let c = v.coeff(i * size + i);
        if shape.index_parity(i).is_odd() {
            s -= &c;
        } else {
            s += &c;
        }
    }
    Ok(s)
}

/// A dense square supermatrix over K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    shape: Shape,
    entries: Vec<Scalar>,
}

impl SuperMatrix {
    pub fn zero(shape: Shape) -> Self {
        let s = shape.size();
        SuperMatrix {
            shape,
            entries: vec![Scalar::zero(); s * s],
        }
    }

    pub fn identity(shape: Shape) -> Self {
        let mut out = SuperMatrix::zero(shape);
        for i in 0..shape.size() {
            out.set(i, i, Scalar::one());
        }
        out
    }

    pub fn unit(shape: Shape, i: usize, j: usize) -> Self {
        let mut out = SuperMatrix::zero(shape);
        out.set(i, j, Scalar::one());
        out
    }

    /// From coordinates in gl(m,n,K).
    pub fn from_vector(shape: Shape, v: &SparseVector) -> Self {
        let mut out = SuperMatrix::zero(shape);
        for (&k, c) in v.iter() {
            out.entries[k] = c.clone();
        }
        out
    }

    pub fn to_vector(&self) -> SparseVector {
        SparseVector::from_dense(&self.entries)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.shape.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        let s = self.shape.size();
        self.entries[i * s + j] = c;
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        let s = self.shape.size();
        let mut out = SuperMatrix::zero(self.shape);
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * s + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, c: &Scalar, other: &SuperMatrix) -> SuperMatrix {
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x += &(c * y);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> SuperMatrix {
        SuperMatrix {
            shape: self.shape,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn supertrace(&self) -> Scalar {
        supertrace(self.shape, &self.to_vector()).expect("shape matches")
    }

    /// Parity of a homogeneous matrix; `None` if it mixes blocks. The zero
    /// matrix counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let s = self.shape.size();
        let mut found = None;
        for i in 0..s {
            for j in 0..s {
                if self.get(i, j).is_zero() {
                    continue;
                }
                let t = self.shape.tau(i, j);
                match found {
                    None => found = Some(t),
                    Some(p) if p != t => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Supercommutator `xy − (−1)^{|x||y|} yx` of homogeneous matrices.
    pub fn supercommutator(&self, other: &SuperMatrix) -> SuperMatrix {
        let s = koszul(self.parity().expect("homogeneous"), other.parity().expect("homogeneous"));
        self.mul(other).add_scaled(&Scalar::from_int(-s), &other.mul(self))
    }
}

/// `h_i = E_ii − E_{i+1,i+1}` for `i ≠ m`, and `h_m = E_mm + E_{m+1,m+1}`
/// (1-based), for `i = 1..m+n−1`, as coordinate vectors in gl(m,n,K).
pub fn cartan_of_sl(p: usize, q: usize) -> Result<Vec<SparseVector>, CoreError> {
    if p == q {
        return Err(CoreError::EqualBlocks(p));
    }
    let shape = Shape::new(p, q);
    let size = shape.size();
    if size < 2 {
        return Err(CoreError::MatrixTooSmall(size));
    }
    Ok(cartan_matrices(shape).iter().map(SuperMatrix::to_vector).collect())
}

fn cartan_matrices(shape: Shape) -> Vec<SuperMatrix> {
    let size = shape.size();
    (0..size - 1)
        .map(|i| {
            let mut h = SuperMatrix::zero(shape);
            h.set(i, i, Scalar::one());
            let c = if i + 1 == shape.m { 1 } else { -1 };
            h.set(i + 1, i + 1, Scalar::from_int(c));
            h
        })
        .collect()
}

/// The basis of sl(p,q,K) used by the graded models: off-diagonal `E_ij` in
/// lexicographic order, then the Cartan elements `h_1..h_{p+q−1}`.
#[derive(Clone, Debug)]
pub struct SlBasis {
    shape: Shape,
    elements: Vec<SuperMatrix>,
    labels: Vec<String>,
    off_diagonal: Vec<(usize, usize)>,
}

impl SlBasis {
    pub fn new(p: usize, q: usize) -> Result<Self, CoreError> {
        if p == q {
            return Err(CoreError::EqualBlocks(p));
        }
        let shape = Shape::new(p, q);
        let size = shape.size();
        if size < 2 {
            return Err(CoreError::MatrixTooSmall(size));
        }
        let mut elements = Vec::new();
        let mut labels = Vec::new();
        let mut off_diagonal = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    elements.push(SuperMatrix::unit(shape, i, j));
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    off_diagonal.push((i, j));
                }
            }
        }
        for (i, h) in cartan_matrices(shape).into_iter().enumerate() {
            elements.push(h);
            labels.push(format!("h{}", i + 1));
        }
        Ok(SlBasis {
            shape,
            elements,
            labels,
            off_diagonal,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &SuperMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[SuperMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.elements[i].parity().expect("basis matrices are homogeneous")
    }

    /// Index of the off-diagonal unit `E_ij` (0-based).
    pub fn unit_index(&self, i: usize, j: usize) -> Option<usize> {
        self.off_diagonal.iter().position(|&x| x == (i, j))
    }

    /// Indices of the Cartan elements.
    pub fn cartan_indices(&self) -> std::ops::Range<usize> {
        self.off_diagonal.len()..self.elements.len()
    }

    /// Coordinates of a supertrace-free matrix.
    pub fn coordinates(&self, x: &SuperMatrix) -> Option<SparseVector> {
        let size = self.shape.size();
        let n = self.dim();
        let mut out = SparseVector::zero(n);
        for (k, &(i, j)) in self.off_diagonal.iter().enumerate() {
            out.set(k, x.get(i, j).clone());
        }
        let diag = SparseVector::from_dense(&(0..size).map(|i| x.get(i, i).clone()).collect::<Vec<_>>());
        let hs: Vec<SparseVector> = self
            .cartan_indices()
            .map(|k| {
                SparseVector::from_dense(
                    &(0..size).map(|i| self.elements[k].get(i, i).clone()).collect::<Vec<_>>(),
                )
            })
            .collect();
        let c = solve_combination(&hs, &diag).ok()??;
        let base = self.off_diagonal.len();
        for (&k, v) in c.iter() {
            out.set(base + k, v.clone());
        }
        Some(out)
    }

    pub fn space(&self) -> SuperSpace {
        SuperSpace::new(
            format!("sl({},{})", self.shape.m, self.shape.n),
            self.labels.clone(),
            (0..self.dim()).map(|i| self.parity(i)).collect(),
        )
        .expect("distinct labels")
    }

    /// sl(p,q,K) as a Lie superalgebra on this basis.
    pub fn lie_algebra(&self) -> LeibnizSuperalgebra {
        let n = self.dim();
        let bracket = BilinearProduct::from_fn(n, n, n, |i, j| {
            let c = self.elements[i].supercommutator(&self.elements[j]);
            self.coordinates(&c).expect("commutators are supertrace-free")
        });
        LeibnizSuperalgebra::new(self.space(), bracket).expect("valid")
    }

    /// Coordinates in gl(m,n,K) of each basis element.
    pub fn gl_vectors(&self) -> Vec<SparseVector> {
        self.elements.iter().map(SuperMatrix::to_vector).collect()
    }
}

/// A map `v_ij(a)` into a Leibniz superalgebra, given on basis elements of
/// the coefficient dialgebra and extended linearly.
#[derive(Clone, Debug)]
pub struct SteinbergMap {
    pub shape: Shape,
    pub dim_d: usize,
    pub images: BTreeMap<(usize, usize, usize), SparseVector>,
}

impl SteinbergMap {
    /// `v_ij(a) = E_ij(a)`, expressed in the coordinates produced by `coords`.
    pub fn matrix_units(
        shape: Shape,
        dim_d: usize,
        coords: impl Fn(&SparseVector) -> Option<SparseVector>,
    ) -> Result<Self, CoreError> {
        let size = shape.size();
        let total = size * size * dim_d;
        let mut images = BTreeMap::new();
        for i in 0..size {
            for j in 0..size {
                if i == j {
                    continue;
                }
                for k in 0..dim_d {
                    let v = SparseVector::unit(total, gl_index(shape, dim_d, i, j, k));
                    let c = coords(&v).ok_or_else(|| {
                        CoreError::MissingImage(format!("E{}{}({k})", i + 1, j + 1))
                    })?;
                    images.insert((i, j, k), c);
                }
            }
        }
        Ok(SteinbergMap { shape, dim_d, images })
    }

    fn image(&self, i: usize, j: usize, a: &SparseVector, out_dim: usize) -> Result<SparseVector, CoreError> {
        let mut out = SparseVector::zero(out_dim);
        for (&k, c) in a.iter() {
            let v = self
                .images
                .get(&(i, j, k))
                .ok_or_else(|| CoreError::MissingImage(format!("v{}{}({k})", i + 1, j + 1)))?;
            out.add_scaled(c, v);
        }
        Ok(out)
    }
}

/// Checks the defining relations of the Steinberg Leibniz superalgebra for
/// `v` inside `l`. Indices are `[i, j, a, k, l, b]` (0-based, `a`, `b`
/// coefficient basis indices).
pub fn check_steinberg_relations(
    l: &LeibnizSuperalgebra,
    d: &SuperDialgebra,
    v: &SteinbergMap,
    convention: SignConvention,
    opts: &CheckOptions,
) -> Result<ViolationReport, CoreError> {
    let shape = v.shape;
    let size = shape.size();
    if size < 3 {
        return Err(CoreError::MatrixTooSmall(size));
    }
    if v.dim_d != d.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: d.dim(),
            found: v.dim_d,
        });
    }
    let n = l.dim();
    let dd = d.dim();
    // linearity holds by construction; completeness of the images is checked here
    for i in 0..size {
        for j in 0..size {
            if i == j {
                continue;
            }
            for k in 0..dd {
                let img = v
                    .images
                    .get(&(i, j, k))
                    .ok_or_else(|| CoreError::MissingImage(format!("v{}{}({k})", i + 1, j + 1)))?;
                if img.dim() != n {
                    return Err(CoreError::DimensionMismatch {
                        expected: n,
                        found: img.dim(),
                    });
                }
            }
        }
    }
    let dsp = d.space();
    let unit = |k: usize| SparseVector::unit(dd, k);
    Ok(grid_check("steinberg", &[size, size, dd, size, size, dd], opts, |ix| {
        let (i, j, a, k, ll, b) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
        if i == j || k == ll || (i == ll && j == k) {
            return None;
        }
        let x = v.image(i, j, &unit(a), n).expect("checked above");
        let y = v.image(k, ll, &unit(b), n).expect("checked above");
        let lhs = l.bracket_of(&x, &y);
        let (tij, tkl) = (shape.tau(i, j), shape.tau(k, ll));
        let (pa, pb) = (dsp.parity(a), dsp.parity(b));
        let rhs = if i != ll && j != k {
            SparseVector::zero(n)
        } else if i != ll {
            let s = match convention {
                SignConvention::Koszul => koszul(pa, tkl),
                SignConvention::Literal => 1,
            };
            v.image(i, ll, &d.right().basis(a, b), n)
                .expect("checked above")
                .scaled(&Scalar::from_int(s))
        } else {
            let s = match convention {
                SignConvention::Koszul => koszul(tij + pa, tkl + pb) * koszul(pb, tij),
                SignConvention::Literal => koszul(tij, tkl),
            };
            v.image(k, j, &d.left().basis(b, a), n)
                .expect("checked above")
                .scaled(&Scalar::from_int(-s))
        };
        (lhs != rhs).then_some((lhs, rhs))
    }))
}

/// Whether every `E_ij(a)` with `i ≠ j` lies in the subspace.
pub fn contains_off_diagonal_units(shape: Shape, dim_d: usize, s: &Subspace) -> bool {
    let size = shape.size();
    let total = size * size * dim_d;
    (0..size).all(|i| {
        (0..size).filter(|&j| j != i).all(|j| {
            (0..dim_d).all(|k| s.contains(&SparseVector::unit(total, gl_index(shape, dim_d, i, j, k))))
        })
    })
}
