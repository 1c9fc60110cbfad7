//! Coordinatization models `L = (g ⊗ A) ⊕ D` for root-graded Leibniz
//! superalgebras: the ∘ and [,] splitting of a dialgebra, the ∗-product on
//! sl(p,q), the two families of multiplication tables, their condition
//! checkers and coordinate extraction.

mod extract;
mod graded;
mod kappa;

pub use extract::extract_coordinates;
pub use graded::{
    apply_mutation, build_a_graded_model, build_canonical_la, check_thm41_conditions, mutation_sites,
    CoordinateDataA, MutationSite,
};
pub use kappa::{build_kappa_model, check_lemma51_conditions, supertrace_form, CoordinateDataK};

use sdias_linalg::{Scalar, SparseVector};

use crate::matrix::{SlBasis, SuperMatrix};
use crate::report::{differ, grid_check};
use crate::{
    koszul, BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace,
    ViolationReport,
};

fn sgn(x: Parity, y: Parity) -> Scalar {
    Scalar::from_int(koszul(x, y))
}

/// `φ([d,d'])a = φ(d)φ(d')a − (−1)^{|d||d'|} φ(d')φ(d)a` on `[d, d', a]`.
pub(crate) fn representation_law(
    d: &LeibnizSuperalgebra,
    phi: &BilinearProduct,
    sa: &SuperSpace,
    opts: &CheckOptions,
) -> ViolationReport {
    let sd = d.space();
    let dbr = d.bracket();
    grid_check("phi-representation", &[sd.dim(), sd.dim(), sa.dim()], opts, |ix| {
        let (x, y, a) = (ix[0], ix[1], ix[2]);
        let lhs = phi.vec_basis(&dbr.basis(x, y), a);
        let mut rhs = phi.basis_vec(x, &phi.basis(y, a));
        rhs.add_scaled(&-sgn(sd.parity(x), sd.parity(y)), &phi.basis_vec(y, &phi.basis(x, a)));
        differ(lhs, rhs)
    })
}

/// `d(a⋆b) = (da)⋆b + (−1)^{|d||a|} a⋆(db)` on `[d, a, b]`.
pub(crate) fn derivation_law(
    name: &str,
    d: &LeibnizSuperalgebra,
    phi: &BilinearProduct,
    sa: &SuperSpace,
    m: &BilinearProduct,
    opts: &CheckOptions,
) -> ViolationReport {
    let sd = d.space();
    grid_check(name, &[sd.dim(), sa.dim(), sa.dim()], opts, |ix| {
        let (x, a, b) = (ix[0], ix[1], ix[2]);
        let lhs = phi.basis_vec(x, &m.basis(a, b));
        let mut rhs = m.vec_basis(&phi.basis(x, a), b);
        rhs.add_scaled(&sgn(sd.parity(x), sa.parity(a)), &m.basis_vec(a, &phi.basis(x, b)));
        differ(lhs, rhs)
    })
}

/// `[d,⟨a,b⟩] = ⟨da,b⟩ + (−1)^{|d||a|}⟨a,db⟩` on `[d, a, b]`.
pub(crate) fn invariance_law(
    d: &LeibnizSuperalgebra,
    phi: &BilinearProduct,
    form: &BilinearProduct,
    sa: &SuperSpace,
    opts: &CheckOptions,
) -> ViolationReport {
    let sd = d.space();
    let dbr = d.bracket();
    grid_check("invariance", &[sd.dim(), sa.dim(), sa.dim()], opts, |ix| {
        let (x, a, b) = (ix[0], ix[1], ix[2]);
        let lhs = dbr.basis_vec(x, &form.basis(a, b));
        let mut rhs = form.vec_basis(&phi.basis(x, a), b);
        rhs.add_scaled(&sgn(sd.parity(x), sa.parity(a)), &form.basis_vec(a, &phi.basis(x, b)));
        differ(lhs, rhs)
    })
}

/// `⟨a⊢b,c⟩ = ⟨a,b⊢c⟩ + (−1)^{|a|(|b|+|c|)}⟨b,c⊣a⟩`.
pub(crate) fn form_identity_4_7(a: &SuperDialgebra, form: &BilinearProduct, opts: &CheckOptions) -> ViolationReport {
    let sa = a.space();
    let n = a.dim();
    grid_check("id_4_7", &[n, n, n], opts, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let lhs = form.vec_basis(&a.right().basis(x, y), z);
        let mut rhs = form.basis_vec(x, &a.right().basis(y, z));
        let s = sgn(sa.parity(x), sa.parity(y) + sa.parity(z));
        rhs.add_scaled(&s, &form.basis_vec(y, &a.left().basis(z, x)));
        differ(lhs, rhs)
    })
}

/// `⟨a⊢b,c⟩ = ⟨a⊣b,c⟩`.
pub(crate) fn form_identity_4_8(a: &SuperDialgebra, form: &BilinearProduct, opts: &CheckOptions) -> ViolationReport {
    let n = a.dim();
    grid_check("id_4_8", &[n, n, n], opts, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        differ(
            form.vec_basis(&a.right().basis(x, y), z),
            form.vec_basis(&a.left().basis(x, y), z),
        )
    })
}

/// `a∘b = a⊢b + (−1)^{|a||b|} b⊣a` and `[a,b] = a⊢b − (−1)^{|a||b|} b⊣a`.
pub fn circ_and_bracket(a: &SuperDialgebra) -> (BilinearProduct, BilinearProduct) {
    let n = a.dim();
    let sp = a.space();
    let sign = |i: usize, j: usize| Scalar::from_int(koszul(sp.parity(i), sp.parity(j)));
    let circ = BilinearProduct::from_fn(n, n, n, |i, j| {
        let mut v = a.right().basis(i, j);
        v.add_scaled(&sign(i, j), &a.left().basis(j, i));
        v
    });
    let bracket = BilinearProduct::from_fn(n, n, n, |i, j| {
        let mut v = a.right().basis(i, j);
        v.add_scaled(&-sign(i, j), &a.left().basis(j, i));
        v
    });
    (circ, bracket)
}

/// `x∗y = xy + (−1)^{|x||y|} yx − (2/(m−n)) str(xy) I` for homogeneous `x, y`.
pub fn star_product(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix, CoreError> {
    let shape = x.shape();
    if shape.m == shape.n {
        return Err(CoreError::EqualBlocks(shape.m));
    }
    let px = x.parity().ok_or_else(|| CoreError::Inhomogeneous("left factor".into()))?;
    let py = y.parity().ok_or_else(|| CoreError::Inhomogeneous("right factor".into()))?;
    let xy = x.mul(y);
    let sum = xy.add_scaled(&Scalar::from_int(koszul(px, py)), &y.mul(x));
    let c = Scalar::from_int(2) * xy.supertrace() / Scalar::from_int(shape.m as i64 - shape.n as i64);
    Ok(sum.add_scaled(&-c, &SuperMatrix::identity(shape)))
}

/// Named verdicts of a family of conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: Vec<(String, ViolationReport)>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|(_, r)| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ViolationReport> {
        self.conditions.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|(_, r)| !r.passed)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// Structure constants of sl(p,q,K) on [`SlBasis`].
pub(crate) struct SlTables {
    pub basis: SlBasis,
    pub bracket: BilinearProduct,
    pub star: BilinearProduct,
    /// `str(e_i e_j)`.
    pub trace: Vec<Scalar>,
}

impl SlTables {
    pub fn new(p: usize, q: usize) -> Result<Self, CoreError> {
        let basis = SlBasis::new(p, q)?;
        let n = basis.dim();
        let bracket = basis.lie_algebra().bracket().clone();
        let mut err = None;
        let star = BilinearProduct::from_fn(n, n, n, |i, j| {
            star_product(basis.element(i), basis.element(j))
                .map(|m| basis.coordinates(&m).expect("∗ is supertrace-free"))
                .unwrap_or_else(|e| {
                    err = Some(e);
                    SparseVector::zero(n)
                })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let trace = (0..n * n)
            .map(|k| basis.element(k / n).mul(basis.element(k % n)).supertrace())
            .collect();
        Ok(SlTables {
            basis,
            bracket,
            star,
            trace,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn trace(&self, i: usize, j: usize) -> &Scalar {
        &self.trace[i * self.dim() + j]
    }
}

/// Carrier `(g ⊗ A) ⊕ D`; `g ⊗ a` sits at `g_index * dim A + a_index`.
pub(crate) fn model_space(g: &SuperSpace, a: &SuperSpace, d: &SuperSpace, name: String) -> SuperSpace {
    g.tensor(a).direct_sum(d, name)
}

/// Accumulates `c · (x ⊗ y)` into a model vector for `x ∈ g`, `y ∈ A`.
pub(crate) fn add_tensor(out: &mut SparseVector, c: &Scalar, x: &SparseVector, y: &SparseVector, dim_a: usize) {
    if c.is_zero() {
        return;
    }
    for (&i, u) in x.iter() {
        for (&j, v) in y.iter() {
            out.add_at(i * dim_a + j, &(c * u * v));
        }
    }
}

/// Accumulates `c · v` for `v ∈ D` into a model vector.
pub(crate) fn add_d(out: &mut SparseVector, c: &Scalar, v: &SparseVector, offset: usize) {
    if c.is_zero() {
        return;
    }
    for (&k, u) in v.iter() {
        out.add_at(offset + k, &(c * u));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matrix::Shape;

    #[test]
    fn circ_and_bracket_reconstruct_right_product() {
        let half = Scalar::ratio(1, 2).unwrap();
        for a in catalog::dialgebras() {
            let (circ, br) = circ_and_bracket(&a);
            let n = a.dim();
            let sp = a.space();
            for i in 0..n {
                for j in 0..n {
                    let s = Scalar::from_int(koszul(sp.parity(i), sp.parity(j)));
                    let rebuilt = circ.basis(i, j).add(&br.basis(i, j)).scaled(&half);
                    assert_eq!(rebuilt, a.right().basis(i, j));
                    if a.products_coincide() {
                        assert_eq!(circ.basis(i, j), circ.basis(j, i).scaled(&s));
                        assert_eq!(br.basis(i, j), br.basis(j, i).scaled(&-&s));
                    }
                }
            }
        }
    }

    #[test]
    fn unit_is_central_for_circ() {
        for a in catalog::unital_dialgebras() {
            let (circ, br) = circ_and_bracket(&a);
            let u = a.bar_unit().unwrap();
            for j in 0..a.dim() {
                let e = SparseVector::unit(a.dim(), j);
                assert_eq!(circ.apply(u, &e), e.scaled(&Scalar::from_int(2)), "{}", a.name());
                assert!(br.apply(u, &e).is_zero(), "{}", a.name());
            }
        }
    }

    #[test]
    fn symmetry_fails_for_distinct_products() {
        let t = catalog::triangular_projection();
        let (circ, _) = circ_and_bracket(&t);
        // E11∘E12 = E12 but E12∘E11 = 0
        assert_eq!(circ.basis(0, 1), SparseVector::unit(3, 1));
        assert!(circ.basis(1, 0).is_zero());
    }

    #[test]
    fn differential_bracket() {
        let (circ, br) = circ_and_bracket(&catalog::differential_lambda2());
        assert_eq!(circ.basis(1, 1), SparseVector::unit(4, 3).scaled(&Scalar::from_int(-2)));
        assert!(br.is_zero());
        let (circ, br) = circ_and_bracket(&catalog::exterior(2));
        assert!(br.is_zero());
        assert_eq!(circ.basis(1, 2), SparseVector::unit(4, 3).scaled(&Scalar::from_int(2)));
    }

    #[test]
    fn star_product_values() {
        let shape = Shape::new(2, 1);
        let e12 = SuperMatrix::unit(shape, 0, 1);
        let e21 = SuperMatrix::unit(shape, 1, 0);
        assert!(star_product(&e12, &e12).unwrap().is_zero());
        // E11 + E22 − 2·I
        let mut expected = SuperMatrix::zero(shape);
        expected.set(0, 0, Scalar::from_int(-1));
        expected.set(1, 1, Scalar::from_int(-1));
        expected.set(2, 2, Scalar::from_int(-2));
        assert_eq!(star_product(&e12, &e21).unwrap(), expected);
        let br = e12.supercommutator(&e21);
        let st = star_product(&e12, &e21).unwrap();
        assert!(sdias_linalg::row_reduce(9, &[br.to_vector(), st.to_vector()]).unwrap().dim() == 2);
        assert!(matches!(
            star_product(&SuperMatrix::unit(Shape::new(1, 1), 0, 1), &SuperMatrix::unit(Shape::new(1, 1), 1, 0)),
            Err(CoreError::EqualBlocks(1))
        ));
    }

    #[test]
    fn star_is_supersymmetric_and_traceless() {
        for (p, q) in [(2, 1), (3, 1), (3, 2)] {
            let b = SlBasis::new(p, q).unwrap();
            for (i, x) in b.elements().iter().enumerate() {
                for (j, y) in b.elements().iter().enumerate() {
                    let xy = star_product(x, y).unwrap();
                    assert!(xy.supertrace().is_zero());
                    let s = koszul(b.parity(i), b.parity(j));
                    assert_eq!(xy, star_product(y, x).unwrap().scaled(&Scalar::from_int(s)));
                }
            }
        }
    }

    #[test]
    fn tables_of_sl21() {
        let t = SlTables::new(2, 1).unwrap();
        let e12 = t.basis.unit_index(0, 1).unwrap();
        let e21 = t.basis.unit_index(1, 0).unwrap();
        assert_eq!(t.trace(e12, e21), &Scalar::one());
        assert_eq!(t.basis.parity(t.basis.unit_index(0, 2).unwrap()), Parity::Odd);
    }
}
