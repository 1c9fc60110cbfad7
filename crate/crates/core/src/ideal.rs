use std::collections::VecDeque;

use sdias_linalg::{row_reduce, solve_combination, LinearMap, SparseVector, Subspace};

use crate::{
    AlgebraRef, BilinearProduct, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace,
    VectorParity,
};

/// Smallest subspace containing `generators` and stable under multiplication
/// by basis elements on both sides, for every product of the algebra.
pub fn ideal_closure<'a>(
    algebra: impl Into<AlgebraRef<'a>>,
    generators: &[SparseVector],
) -> Result<Subspace, CoreError> {
    let alg = algebra.into();
    let n = alg.space().dim();
    let products = alg.products();
    let mut span = Subspace::zero(n);
    let mut queue: VecDeque<SparseVector> = VecDeque::new();
    for g in generators {
        if span.insert(g)? {
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if span.dim() == n {
            break;
        }
        for p in &products {
            for i in 0..n {
                for w in [p.basis_vec(i, &v), p.vec_basis(&v, i)] {
                    if span.insert(&w)? {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Ok(span)
}

/// Whether the subspace is spanned by homogeneous vectors. For a subspace in
/// reduced row-echelon form this holds exactly when every row is homogeneous.
pub fn is_homogeneous(space: &SuperSpace, s: &Subspace) -> bool {
    s.basis()
        .iter()
        .all(|r| !matches!(space.vector_parity(r), VectorParity::Mixed))
}

/// Human-readable label for a vector: `E11-E22`, `2*a+1/2*b`.
pub fn combination_label(space: &SuperSpace, v: &SparseVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (&k, c)) in v.iter().enumerate() {
        let label = space.label(k);
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if n > 0 {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(label);
    }
    out
}

/// A Leibniz superalgebra realised on a subspace, with the embedding of
/// its basis into the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedded {
    pub algebra: LeibnizSuperalgebra,
    pub basis: Vec<SparseVector>,
}

impl Embedded {
    /// Image of a coordinate vector in the ambient algebra.
    pub fn embed(&self, coords: &SparseVector) -> SparseVector {
        let n = self.basis.first().map_or(0, SparseVector::dim);
        let mut out = SparseVector::zero(n);
        for (&i, c) in coords.iter() {
            out.add_scaled(c, &self.basis[i]);
        }
        out
    }

    /// Coordinates of an ambient vector lying in the subalgebra.
    pub fn coordinates(&self, v: &SparseVector) -> Option<SparseVector> {
        solve_combination(&self.basis, v).ok().flatten()
    }

    pub fn subspace(&self) -> Subspace {
        let n = self.basis.first().map_or(0, SparseVector::dim);
        row_reduce(n, &self.basis).expect("basis vectors share a dimension")
    }
}

/// The bracket restricted to the span of `basis`, which must consist of
/// independent homogeneous vectors spanning a subalgebra.
pub fn restrict_to_basis(
    l: &LeibnizSuperalgebra,
    basis: Vec<SparseVector>,
    labels: Vec<String>,
    name: impl Into<String>,
) -> Result<Embedded, CoreError> {
    if basis.is_empty() {
        return Err(CoreError::EmptyCarrier);
    }
    let n = l.dim();
    let span = row_reduce(n, &basis)?;
    if span.dim() != basis.len() {
        return Err(CoreError::DependentBasis);
    }
    let parities = basis
        .iter()
        .map(|v| match l.space().vector_parity(v) {
            VectorParity::Homogeneous(p) => Ok(p),
            _ => Err(CoreError::Inhomogeneous(combination_label(l.space(), v))),
        })
        .collect::<Result<Vec<Parity>, _>>()?;
    let space = SuperSpace::new(name, labels, parities)?;
    let m = basis.len();
    // Coordinates relative to `basis` from RREF coordinates: solve once for
    // each RREF row.
    let rows_in_basis: Vec<SparseVector> = span
        .basis()
        .iter()
        .map(|r| {
            solve_combination(&basis, r)
                .expect("dimensions agree")
                .expect("row lies in the span")
        })
        .collect();
    let mut bracket = BilinearProduct::square(m);
    for i in 0..m {
        for j in 0..m {
            let v = l.bracket_of(&basis[i], &basis[j]);
            if v.is_zero() {
                continue;
            }
            let Some(rc) = span.coordinates(&v) else {
                return Err(CoreError::NotClosed(format!(
                    "[{}, {}]",
                    space.label(i),
                    space.label(j)
                )));
            };
            let mut coords = SparseVector::zero(m);
            for (&r, c) in rc.iter() {
                coords.add_scaled(c, &rows_in_basis[r]);
            }
            bracket.set(i, j, coords)?;
        }
    }
    Ok(Embedded {
        algebra: LeibnizSuperalgebra::new(space, bracket)?,
        basis,
    })
}

/// Restriction to a subalgebra on its reduced row-echelon basis.
pub fn restrict(l: &LeibnizSuperalgebra, s: &Subspace) -> Result<Embedded, CoreError> {
    if s.ambient_dim() != l.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: l.dim(),
            found: s.ambient_dim(),
        });
    }
    let basis = s.basis().to_vec();
    let labels = basis.iter().map(|v| combination_label(l.space(), v)).collect();
    restrict_to_basis(l, basis, labels, format!("{}|sub", l.name()))
}

/// `[L, L]`, the span of all brackets of basis pairs.
pub fn derived_subalgebra(l: &LeibnizSuperalgebra) -> Subspace {
    let n = l.dim();
    let mut s = Subspace::zero(n);
    for (_, _, v) in l.bracket().entries() {
        if s.dim() == n {
            break;
        }
        s.insert(v).expect("bracket outputs live in the algebra");
    }
    s
}

/// `{z : [z, L] = [L, z] = 0}`.
pub fn centre(l: &LeibnizSuperalgebra) -> Subspace {
    let n = l.dim();
    let br = l.bracket();
    let cols = (0..n)
        .map(|j| {
            let mut col = SparseVector::zero(2 * n * n);
            for i in 0..n {
                for (&k, c) in br.basis(j, i).iter() {
                    col.set(2 * n * i + k, c.clone());
                }
                for (&k, c) in br.basis(i, j).iter() {
                    col.set(2 * n * i + n + k, c.clone());
                }
            }
            col
        })
        .collect();
    LinearMap::from_columns(2 * n * n, cols)
        .expect("columns have the stacked dimension")
        .kernel()
}

/// Quotient data: the complement basis (non-pivot coordinates of the ideal)
/// and the induced projection.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ideal: Subspace,
    kept: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl QuotientMap {
    fn new(ideal: Subspace) -> Self {
        let n = ideal.ambient_dim();
        let mut is_pivot = vec![false; n];
        for p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let mut position = vec![None; n];
        for (k, &i) in kept.iter().enumerate() {
            position[i] = Some(k);
        }
        QuotientMap {
            ideal,
            kept,
            position,
        }
    }

    /// Retained ambient basis indices, in order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &SparseVector) -> SparseVector {
        let r = self.ideal.reduce(v);
        r.reindex(self.kept.len(), |i| {
            self.position[i].expect("reduced vectors avoid pivot columns")
        })
    }

    fn space(&self, ambient: &SuperSpace, name: String) -> Result<SuperSpace, CoreError> {
        SuperSpace::new(
            name,
            self.kept.iter().map(|&i| ambient.label(i).to_string()).collect(),
            self.kept.iter().map(|&i| ambient.parity(i)).collect(),
        )
    }

    fn induced(&self, p: &BilinearProduct) -> BilinearProduct {
        let m = self.kept.len();
        BilinearProduct::from_fn(m, m, m, |a, b| self.project(&p.basis(self.kept[a], self.kept[b])))
    }
}

fn validate_ideal<'a>(alg: AlgebraRef<'a>, ideal: &Subspace) -> Result<(), CoreError> {
    let space = alg.space();
    if ideal.ambient_dim() != space.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: space.dim(),
            found: ideal.ambient_dim(),
        });
    }
    if !is_homogeneous(space, ideal) {
        return Err(CoreError::Inhomogeneous("ideal".to_string()));
    }
    if ideal_closure(alg, ideal.basis())? != *ideal {
        return Err(CoreError::NotAnIdeal);
    }
    if ideal.dim() == space.dim() {
        return Err(CoreError::EmptyCarrier);
    }
    Ok(())
}

pub fn quotient_leibniz(
    l: &LeibnizSuperalgebra,
    ideal: &Subspace,
) -> Result<(LeibnizSuperalgebra, QuotientMap), CoreError> {
    validate_ideal(l.into(), ideal)?;
    let q = QuotientMap::new(ideal.clone());
    let space = q.space(l.space(), format!("{}/I", l.name()))?;
    let alg = LeibnizSuperalgebra::new(space, q.induced(l.bracket()))?;
    Ok((alg, q))
}

pub fn quotient_dialgebra(
    d: &SuperDialgebra,
    ideal: &Subspace,
) -> Result<(SuperDialgebra, QuotientMap), CoreError> {
    validate_ideal(d.into(), ideal)?;
    let q = QuotientMap::new(ideal.clone());
    let space = q.space(d.space(), format!("{}/I", d.name()))?;
    let unit = d.bar_unit().map(|u| q.project(u));
    let alg = SuperDialgebra::new(space, q.induced(d.left()), q.induced(d.right()), unit)?;
    Ok((alg, q))
}

/// Generators `[x,y] + (−1)^{|x||y|}[y,x]` over basis pairs.
pub fn symmetric_bracket_generators(l: &LeibnizSuperalgebra) -> Vec<SparseVector> {
    let n = l.dim();
    let sp = l.space();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = l.bracket().basis(i, j);
            let s = sp.parity(i).times(sp.parity(j)).sign_scalar();
            v.add_scaled(&s, &l.bracket().basis(j, i));
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    out
}

/// The universal Lie quotient `L_LS`. If the ideal is all of `L` the
/// result would be zero and an error is returned.
pub fn lie_quotient(l: &LeibnizSuperalgebra) -> Result<(LeibnizSuperalgebra, QuotientMap), CoreError> {
    let ideal = ideal_closure(l, &symmetric_bracket_generators(l))?;
    quotient_leibniz(l, &ideal)
}

/// The universal associative quotient `S_SAss`, by the ideal generated by
/// `x⊣y − x⊢y`.
pub fn associative_quotient(d: &SuperDialgebra) -> Result<(SuperDialgebra, QuotientMap), CoreError> {
    let n = d.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = d.left().basis(i, j).sub(&d.right().basis(i, j));
            if !v.is_zero() {
                gens.push(v);
            }
        }
    }
    let ideal = ideal_closure(d, &gens)?;
    quotient_dialgebra(d, &ideal)
}

/// Parity-homogeneous parts of `v`.
pub fn homogeneous_parts(space: &SuperSpace, v: &SparseVector) -> (SparseVector, SparseVector) {
    let mut even = SparseVector::zero(v.dim());
    let mut odd = SparseVector::zero(v.dim());
    for (&k, c) in v.iter() {
        if space.parity(k).is_odd() {
            odd.set(k, c.clone());
        } else {
            even.set(k, c.clone());
        }
    }
    (even, odd)
}

/// Left annihilator of a set: `{x : [s, x] = 0 for all s}`.
pub fn left_annihilator(l: &LeibnizSuperalgebra, s: &[SparseVector]) -> Subspace {
    let n = l.dim();
    let cols = (0..n)
        .map(|j| {
            let mut col = SparseVector::zero(n * s.len());
            for (r, x) in s.iter().enumerate() {
                for (&k, c) in l.bracket().vec_basis(x, j).iter() {
                    col.set(r * n + k, c.clone());
                }
            }
            col
        })
        .collect();
    LinearMap::from_columns(n * s.len(), cols)
        .expect("stacked columns")
        .kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdias_linalg::Scalar;
    use crate::catalog;
    use crate::checks::{check_leibniz, is_lie};
    use crate::construct::to_leibniz;
    use crate::CheckOptions;

    #[test]
    fn trivial_closures() {
        let l = catalog::sl2();
        assert!(ideal_closure(&l, &[]).unwrap().is_zero());
        let all: Vec<_> = (0..3).map(|i| SparseVector::unit(3, i)).collect();
        assert_eq!(ideal_closure(&l, &all).unwrap(), Subspace::full(3));
        // sl2 is simple
        assert_eq!(ideal_closure(&l, &[SparseVector::unit(3, 0)]).unwrap().dim(), 3);
    }

    #[test]
    fn lie_quotient_of_differential_bracket() {
        let md = crate::construct::tensor_dialgebras(&catalog::matrix_algebra(2), &catalog::differential_lambda2());
        let l = to_leibniz(&md);
        let gens = symmetric_bracket_generators(&l);
        assert!(!gens.is_empty());
        let (q, _) = lie_quotient(&l).unwrap();
        let opts = CheckOptions::default();
        assert!(is_lie(&q, &opts).passed);
        assert!(check_leibniz(&q, &opts).passed);
    }

    #[test]
    fn associative_quotient_has_equal_products() {
        let (q, _) = associative_quotient(&catalog::differential_lambda2()).unwrap();
        assert_eq!(q.left(), q.right());
    }

    #[test]
    fn zero_ideal_leaves_algebra() {
        let l = catalog::sl2();
        let (q, _) = quotient_leibniz(&l, &Subspace::zero(3)).unwrap();
        assert_eq!(q.bracket(), l.bracket());
    }

    #[test]
    fn non_ideal_rejected() {
        let l = catalog::sl2();
        let s = row_reduce(3, &[SparseVector::unit(3, 0)]).unwrap();
        assert!(matches!(quotient_leibniz(&l, &s), Err(CoreError::NotAnIdeal)));
    }

    #[test]
    fn restrict_rejects_zero_and_open_subspaces() {
        let l = catalog::sl2();
        assert!(matches!(restrict(&l, &Subspace::zero(3)), Err(CoreError::EmptyCarrier)));
        let s = row_reduce(3, &[SparseVector::unit(3, 0), SparseVector::unit(3, 1)]).unwrap();
        assert!(matches!(restrict(&l, &s), Err(CoreError::NotClosed(_))));
    }

    #[test]
    fn centre_of_gl2() {
        let gl2 = crate::matrix::build_gl(2, 0, &catalog::field()).unwrap();
        let z = centre(&gl2);
        assert_eq!(z.dim(), 1);
        assert_eq!(z.basis()[0].coeff(0), Scalar::one());
        assert_eq!(z.basis()[0].coeff(3), Scalar::one());
    }

    #[test]
    fn labels() {
        let sp = SuperSpace::new("x", vec!["a".into(), "b".into()], vec![Parity::Even; 2]).unwrap();
        let v = SparseVector::from_pairs(2, [(0, Scalar::one()), (1, Scalar::ratio(-1, 2).unwrap())]).unwrap();
        assert_eq!(combination_label(&sp, &v), "a-1/2*b");
    }
}
