//! Identity checkers. Every identity is verified on basis tuples only and
//! extends by multilinearity.

use sdias_linalg::{LinearMap, SparseVector};

use crate::report::{differ, grid_check};
use crate::{
    BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra,
    SuperSpace, VectorParity, ViolationReport,
};

/// Components of `v` whose parity differs from `expected`.
fn off_parity(space: &SuperSpace, v: &SparseVector, expected: Parity) -> SparseVector {
    let mut out = SparseVector::zero(v.dim());
    for (&k, c) in v.iter() {
        if space.parity(k) != expected {
            out.set(k, c.clone());
        }
    }
    out
}

/// `|e_i ⋆ e_j| = |e_i| + |e_j|` for a product `left × right → out`.
/// A violation carries the full product as `lhs` and its wrongly graded part
/// as `rhs`.
pub fn check_graded_between(
    identity: &str,
    product: &BilinearProduct,
    left: &SuperSpace,
    right: &SuperSpace,
    out: &SuperSpace,
    opts: &CheckOptions,
) -> ViolationReport {
    grid_check(identity, &[left.dim(), right.dim()], opts, |ix| {
        let v = product.get(ix[0], ix[1])?;
        let bad = off_parity(out, v, left.parity(ix[0]) + right.parity(ix[1]));
        (!bad.is_zero()).then(|| (v.clone(), bad))
    })
}

pub fn check_graded(space: &SuperSpace, product: &BilinearProduct, opts: &CheckOptions) -> ViolationReport {
    check_graded_between("graded", product, space, space, space, opts)
}

/// Grading of both products; indices are `[0 for ⊣ | 1 for ⊢, i, j]`.
pub fn check_graded_dialgebra(d: &SuperDialgebra, opts: &CheckOptions) -> ViolationReport {
    let parts = vec![
        check_graded(d.space(), d.left(), opts),
        check_graded(d.space(), d.right(), opts),
    ];
    ViolationReport::merge("graded", parts, opts)
}

pub fn check_graded_leibniz(l: &LeibnizSuperalgebra, opts: &CheckOptions) -> ViolationReport {
    check_graded(l.space(), l.bracket(), opts)
}

/// The five (Ass) equalities, numbered 0..5 in the first index:
///
/// 0. a⊣(b⊣c) = (a⊣b)⊣c
/// 1. a⊣(b⊣c) = a⊣(b⊢c)
/// 2. (a⊢b)⊣c = a⊢(b⊣c)
/// 3. (a⊢b)⊢c = a⊢(b⊢c)
/// 4. a⊢(b⊢c) = (a⊣b)⊢c
pub fn check_ass(d: &SuperDialgebra, opts: &CheckOptions) -> ViolationReport {
    let n = d.dim();
    let (l, r) = (d.left(), d.right());
    grid_check("ass", &[5, n, n, n], opts, |ix| {
        let (a, b, c) = (ix[1], ix[2], ix[3]);
        match ix[0] {
            0 => differ(l.basis_vec(a, &l.basis(b, c)), l.vec_basis(&l.basis(a, b), c)),
            1 => differ(l.basis_vec(a, &l.basis(b, c)), l.basis_vec(a, &r.basis(b, c))),
            2 => differ(l.vec_basis(&r.basis(a, b), c), r.basis_vec(a, &l.basis(b, c))),
            3 => differ(r.vec_basis(&r.basis(a, b), c), r.basis_vec(a, &r.basis(b, c))),
            _ => differ(r.basis_vec(a, &r.basis(b, c)), r.vec_basis(&l.basis(a, b), c)),
        }
    })
}

/// `1⊢a = a` (first index 0) and `a⊣1 = a` (first index 1).
pub fn check_bar_unit(d: &SuperDialgebra, opts: &CheckOptions) -> Result<ViolationReport, CoreError> {
    let unit = d.bar_unit().ok_or(CoreError::MissingBarUnit)?;
    let n = d.dim();
    Ok(grid_check("bar-unit", &[2, n], opts, |ix| {
        let a = ix[1];
        let lhs = if ix[0] == 0 {
            d.right().vec_basis(unit, a)
        } else {
            d.left().basis_vec(a, unit)
        };
        differ(lhs, SparseVector::unit(n, a))
    }))
}

/// `a⊢b = (−1)^{|a||b|} b⊣a` on basis pairs.
pub fn check_supercommutative(d: &SuperDialgebra, opts: &CheckOptions) -> ViolationReport {
    let n = d.dim();
    let sp = d.space();
    grid_check("supercommutative", &[n, n], opts, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let s = sp.parity(a).times(sp.parity(b)).sign_scalar();
        differ(d.right().basis(a, b), d.left().basis(b, a).scaled(&s))
    })
}

/// `[[a,b],c] = [a,[b,c]] − (−1)^{|a||b|}[b,[a,c]]`.
pub fn check_leibniz(l: &LeibnizSuperalgebra, opts: &CheckOptions) -> ViolationReport {
    let n = l.dim();
    let br = l.bracket();
    let sp = l.space();
    grid_check("leibniz", &[n, n, n], opts, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let lhs = br.vec_basis(&br.basis(a, b), c);
        let mut rhs = br.basis_vec(a, &br.basis(b, c));
        let s = sp.parity(a).times(sp.parity(b)).sign_scalar();
        rhs.add_scaled(&-s, &br.basis_vec(b, &br.basis(a, c)));
        differ(lhs, rhs)
    })
}

/// `[a,[b,c]] = [[a,b],c] − (−1)^{|b||c|}[[a,c],b]`.
pub fn check_right_leibniz(l: &LeibnizSuperalgebra, opts: &CheckOptions) -> ViolationReport {
    let n = l.dim();
    let br = l.bracket();
    let sp = l.space();
    grid_check("right-leibniz", &[n, n, n], opts, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let lhs = br.basis_vec(a, &br.basis(b, c));
        let mut rhs = br.vec_basis(&br.basis(a, b), c);
        let s = sp.parity(b).times(sp.parity(c)).sign_scalar();
        rhs.add_scaled(&-s, &br.vec_basis(&br.basis(a, c), b));
        differ(lhs, rhs)
    })
}

/// `[a,b] + (−1)^{|a||b|}[b,a] = 0`; `lhs` is the sum, `rhs` zero.
pub fn is_lie(l: &LeibnizSuperalgebra, opts: &CheckOptions) -> ViolationReport {
    let n = l.dim();
    let br = l.bracket();
    let sp = l.space();
    grid_check("lie", &[n, n], opts, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let s = sp.parity(a).times(sp.parity(b)).sign_scalar();
        let mut lhs = br.basis(a, b);
        lhs.add_scaled(&s, &br.basis(b, a));
        differ(lhs, SparseVector::zero(n))
    })
}

/// `μ` shifts parity by `s` on every basis vector. Violations are `[i]` with
/// `lhs = μ(e_i)` and `rhs` its wrongly graded part.
fn check_map_parity(space: &SuperSpace, mu: &LinearMap, s: Parity, opts: &CheckOptions) -> ViolationReport {
    grid_check("parity", &[space.dim()], opts, |ix| {
        let v = mu.column(ix[0]);
        let bad = off_parity(space, v, space.parity(ix[0]) + s);
        (!bad.is_zero()).then(|| (v.clone(), bad))
    })
}

/// `μ(a⋆b) = μ(a)⋆b + (−1)^{s|a|} a⋆μ(b)` on basis pairs.
pub fn check_derivation_of(
    identity: &str,
    space: &SuperSpace,
    product: &BilinearProduct,
    mu: &LinearMap,
    s: Parity,
    opts: &CheckOptions,
) -> ViolationReport {
    let n = space.dim();
    grid_check(identity, &[n, n], opts, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let lhs = mu.apply(&product.basis(a, b)).expect("square map on the space");
        let mut rhs = product.vec_basis(mu.column(a), b);
        let sign = s.times(space.parity(a)).sign_scalar();
        rhs.add_scaled(&sign, &product.basis_vec(a, mu.column(b)));
        differ(lhs, rhs)
    })
}

/// Superderivation test for `μ` of degree `s`. Indices are `[0, i]` for a
/// parity violation of `μ(e_i)` and `[1, i, j]` for the derivation law.
pub fn check_superderivation(
    l: &LeibnizSuperalgebra,
    mu: &LinearMap,
    s: Parity,
    opts: &CheckOptions,
) -> Result<ViolationReport, CoreError> {
    let n = l.dim();
    if mu.domain_dim() != n || mu.codomain_dim() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            found: mu.domain_dim(),
        });
    }
    let parts = vec![
        check_map_parity(l.space(), mu, s, opts),
        check_derivation_of("derivation", l.space(), l.bracket(), mu, s, opts),
    ];
    Ok(ViolationReport::merge("superderivation", parts, opts))
}

/// Parity of a homogeneous nonzero vector, or an error naming it.
pub fn homogeneous_parity(space: &SuperSpace, v: &SparseVector) -> Result<Parity, CoreError> {
    match space.vector_parity(v) {
        VectorParity::Homogeneous(p) => Ok(p),
        VectorParity::Zero => Ok(Parity::Even),
        VectorParity::Mixed => Err(CoreError::Inhomogeneous(format!("{v:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdias_linalg::Scalar;
    use crate::catalog;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn zero_product_is_graded() {
        let sp = SuperSpace::numbered("z", "e", vec![Parity::Even, Parity::Odd]);
        assert!(check_graded(&sp, &BilinearProduct::square(2), &opts()).passed);
    }

    #[test]
    fn even_pair_to_odd_is_a_violation() {
        let sp = SuperSpace::numbered("z", "e", vec![Parity::Even, Parity::Odd]);
        let mut p = BilinearProduct::square(2);
        p.set(0, 0, SparseVector::unit(2, 1)).unwrap();
        let r = check_graded(&sp, &p, &opts());
        assert_eq!(r.total_violations, 1);
        assert_eq!(r.violations[0].indices, vec![0, 0]);
    }

    #[test]
    fn one_dimensional_idempotent_bracket_is_not_lie() {
        let sp = SuperSpace::numbered("e", "e", vec![Parity::Even]);
        let mut p = BilinearProduct::square(1);
        p.set(0, 0, SparseVector::unit(1, 0)).unwrap();
        let l = LeibnizSuperalgebra::new(sp, p).unwrap();
        let r = is_lie(&l, &opts());
        assert!(!r.passed);
        assert_eq!(r.violations[0].lhs, SparseVector::unit(1, 0).scaled(&Scalar::from_int(2)));
    }

    #[test]
    fn matrix_product_as_bracket_is_not_leibniz() {
        let m2 = catalog::matrix_algebra(2);
        let l = LeibnizSuperalgebra::new(m2.space().clone(), m2.left().clone()).unwrap();
        assert!(!check_leibniz(&l, &opts()).passed);
    }

    #[test]
    fn bar_unit_of_field() {
        let k = catalog::field();
        assert!(check_bar_unit(&k, &opts()).unwrap().passed);
        assert!(matches!(
            check_bar_unit(&k.clone().without_unit(), &opts()),
            Err(CoreError::MissingBarUnit)
        ));
    }

    #[test]
    fn differential_dialgebra_has_no_bar_unit() {
        let d = catalog::differential_lambda2();
        let with_unit = SuperDialgebra::new(
            d.space().clone(),
            d.left().clone(),
            d.right().clone(),
            Some(SparseVector::unit(4, 0)),
        )
        .unwrap();
        let r = check_bar_unit(&with_unit, &opts()).unwrap();
        assert!(!r.passed);
        // 1⊢a = (d1)a = 0 for every a, so each basis element fails that half
        let first_half = r.violations.iter().filter(|v| v.indices[0] == 0).count();
        assert_eq!(first_half, 4);
    }

    #[test]
    fn superderivation_examples() {
        let sl2 = catalog::sl2();
        let proj = LinearMap::from_columns(
            3,
            vec![SparseVector::unit(3, 0), SparseVector::zero(3), SparseVector::zero(3)],
        )
        .unwrap();
        assert!(!check_superderivation(&sl2, &proj, Parity::Even, &opts()).unwrap().passed);

        let sp = SuperSpace::numbered("ab", "e", vec![Parity::Even, Parity::Odd]);
        let ab = LeibnizSuperalgebra::new(sp, BilinearProduct::square(2)).unwrap();
        let id = LinearMap::identity(2);
        assert!(check_superderivation(&ab, &id, Parity::Even, &opts()).unwrap().passed);
        let parity_report = check_superderivation(&ab, &id, Parity::Odd, &opts()).unwrap();
        assert_eq!(parity_report.total_violations, 2);
    }
}
