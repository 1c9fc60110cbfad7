use sdias_linalg::{LinearMap, Scalar, SparseVector};

use crate::checks::{check_derivation_of, check_leibniz, is_lie};
use crate::{
    koszul, BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra,
    SuperSpace, VectorParity,
};

/// Sign rule for constructions whose printed formulas omit some Koszul signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// Every transposition of homogeneous symbols contributes its sign.
    #[default]
    Koszul,
    /// The formula exactly as printed.
    Literal,
}

fn bracket_from(d: &SuperDialgebra, first: &BilinearProduct, second: &BilinearProduct) -> BilinearProduct {
    let sp = d.space();
    let n = d.dim();
    BilinearProduct::from_fn(n, n, n, |i, j| {
        let mut v = first.basis(i, j);
        let s = koszul(sp.parity(i), sp.parity(j));
        v.add_scaled(&Scalar::from_int(-s), &second.basis(j, i));
        v
    })
}

/// `[x,y] = x⊢y − (−1)^{|x||y|} y⊣x`.
pub fn to_leibniz(d: &SuperDialgebra) -> LeibnizSuperalgebra {
    LeibnizSuperalgebra::new(d.space().clone(), bracket_from(d, d.right(), d.left()))
        .expect("same space")
}

/// `[x,y] = x⊣y − (−1)^{|x||y|} y⊢x`; a right Leibniz superalgebra.
pub fn to_right_leibniz(d: &SuperDialgebra) -> LeibnizSuperalgebra {
    LeibnizSuperalgebra::new(d.space().clone(), bracket_from(d, d.left(), d.right()))
        .expect("same space")
}

fn kron(u: &SparseVector, v: &SparseVector, scale: &Scalar) -> SparseVector {
    let m = v.dim();
    let mut out = SparseVector::zero(u.dim() * m);
    for (&i, a) in u.iter() {
        for (&j, b) in v.iter() {
            out.add_at(i * m + j, &(&(a * b) * scale));
        }
    }
    out
}

/// `D ⊗ D'` with `(a⊗a')⋆(b⊗b') = (−1)^{|a'||b|}(a⋆b)⊗(a'⋆b')`.
pub fn tensor_dialgebras(d1: &SuperDialgebra, d2: &SuperDialgebra) -> SuperDialgebra {
    let space = d1.space().tensor(d2.space());
    let (n1, n2) = (d1.dim(), d2.dim());
    let n = n1 * n2;
    let build = |p1: &BilinearProduct, p2: &BilinearProduct| {
        BilinearProduct::from_fn(n, n, n, |x, y| {
            let (a, a2) = (x / n2, x % n2);
            let (b, b2) = (y / n2, y % n2);
            match (p1.get(a, b), p2.get(a2, b2)) {
                (Some(u), Some(v)) => {
                    let s = koszul(d2.space().parity(a2), d1.space().parity(b));
                    kron(u, v, &Scalar::from_int(s))
                }
                _ => SparseVector::zero(n),
            }
        })
    };
    let left = build(d1.left(), d2.left());
    let right = build(d1.right(), d2.right());
    let unit = match (d1.bar_unit(), d2.bar_unit()) {
        (Some(u), Some(v)) => Some(kron(u, v, &Scalar::one())),
        _ => None,
    };
    SuperDialgebra::new(space, left, right, unit).expect("tensor of valid dialgebras")
}

/// The dialgebra `x⊣y = x·dy`, `x⊢y = (dx)·y` on an associative
/// superalgebra `a` (given with ⊣ = ⊢) and an even square-zero derivation `d`.
pub fn differential_dialgebra(a: &SuperDialgebra, d: &LinearMap) -> Result<SuperDialgebra, CoreError> {
    if !a.products_coincide() {
        return Err(CoreError::NotAssociativeAlgebra(a.name().to_string()));
    }
    let n = a.dim();
    if d.domain_dim() != n || d.codomain_dim() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            found: d.domain_dim(),
        });
    }
    let sp = a.space();
    for j in 0..n {
        match sp.vector_parity(d.column(j)) {
            VectorParity::Zero => {}
            VectorParity::Homogeneous(p) if p == sp.parity(j) => {}
            _ => return Err(CoreError::OddDifferential(sp.label(j).to_string())),
        }
    }
    let d2 = d.compose(d).expect("square map");
    if let Some(j) = (0..n).find(|&j| !d2.column(j).is_zero()) {
        return Err(CoreError::DifferentialNotSquareZero(sp.label(j).to_string()));
    }
    let m = a.left();
    let der = check_derivation_of("derivation", sp, m, d, Parity::Even, &CheckOptions { max_violations: 1 });
    if let Some(v) = der.violations.first() {
        return Err(CoreError::NotADerivation(format!(
            "{}, {}",
            sp.label(v.indices[0]),
            sp.label(v.indices[1])
        )));
    }
    let left = BilinearProduct::from_fn(n, n, n, |i, j| m.basis_vec(i, d.column(j)));
    let right = BilinearProduct::from_fn(n, n, n, |i, j| m.vec_basis(d.column(i), j));
    SuperDialgebra::new(sp.clone().with_name(format!("{}_d", a.name())), left, right, None)
}

/// `ad z : x ↦ [z, x]`.
pub fn ad(l: &LeibnizSuperalgebra, z: &SparseVector) -> LinearMap {
    l.bracket().left_map(z)
}

/// `g⊗g` with `[x⊗y, a⊗b] = [[x,y],a]⊗b + ε a⊗[[x,y],b]`, where `ε` is
/// `(−1)^{(|x|+|y|)|a|}` under [`SignConvention::Koszul`] and `(−1)^{|a||b|}`
/// under [`SignConvention::Literal`].
pub fn leibniz_from_lie_square(
    g: &LeibnizSuperalgebra,
    convention: SignConvention,
) -> Result<LeibnizSuperalgebra, CoreError> {
    let opts = CheckOptions { max_violations: 1 };
    if !is_lie(g, &opts).passed || !check_leibniz(g, &opts).passed {
        return Err(CoreError::NotLie(g.name().to_string()));
    }
    let n = g.dim();
    let sp = g.space();
    let br = g.bracket();
    let space = sp.tensor(sp);
    let out = n * n;
    let bracket = BilinearProduct::from_fn(out, out, out, |u, v| {
        let (x, y) = (u / n, u % n);
        let (a, b) = (v / n, v % n);
        let Some(xy) = br.get(x, y) else {
            return SparseVector::zero(out);
        };
        let first = kron(&br.vec_basis(xy, a), &SparseVector::unit(n, b), &Scalar::one());
        let eps = match convention {
            SignConvention::Koszul => koszul(sp.parity(x) + sp.parity(y), sp.parity(a)),
            SignConvention::Literal => koszul(sp.parity(a), sp.parity(b)),
        };
        let second = kron(&SparseVector::unit(n, a), &br.vec_basis(xy, b), &Scalar::from_int(eps));
        first.add(&second)
    });
    LeibnizSuperalgebra::new(space.with_name(format!("{}⊗{}", g.name(), g.name())), bracket)
}

/// `g⊗D` with `[x⊗a, y⊗b] = (−1)^{|a||y|}[x,y]⊗(a⊢b)`.
pub fn lie_tensor_dialgebra(g: &LeibnizSuperalgebra, d: &SuperDialgebra) -> LeibnizSuperalgebra {
    let (ng, nd) = (g.dim(), d.dim());
    let n = ng * nd;
    let space: SuperSpace = g.space().tensor(d.space());
    let bracket = BilinearProduct::from_fn(n, n, n, |u, v| {
        let (x, a) = (u / nd, u % nd);
        let (y, b) = (v / nd, v % nd);
        match (g.bracket().get(x, y), d.right().get(a, b)) {
            (Some(xy), Some(ab)) => {
                let s = koszul(d.space().parity(a), g.space().parity(y));
                kron(xy, ab, &Scalar::from_int(s))
            }
            _ => SparseVector::zero(n),
        }
    });
    LeibnizSuperalgebra::new(space, bracket).expect("tensor space matches bracket")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::checks::{check_ass, check_graded_leibniz, check_right_leibniz};

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn coinciding_matrix_products_give_commutator() {
        let m2 = catalog::matrix_algebra(2);
        let l = to_leibniz(&m2);
        assert!(is_lie(&l, &opts()).passed);
        assert!(check_leibniz(&l, &opts()).passed);
        // [E12, E21] = E11 − E22
        let v = l.bracket().basis(1, 2);
        assert_eq!(v.coeff(0), Scalar::one());
        assert_eq!(v.coeff(3), Scalar::from_int(-1));
    }

    #[test]
    fn supercommutative_input_gives_zero_bracket() {
        let k = catalog::truncated_polynomial(2);
        assert!(to_leibniz(&k).bracket().is_zero());
        let lam = catalog::exterior(2);
        assert!(to_leibniz(&lam).bracket().is_zero());
    }

    #[test]
    fn differential_dialgebra_products() {
        let d = catalog::differential_lambda2();
        assert!(check_ass(&d, &opts()).passed);
        // basis 1, θ1, θ2, θ1θ2
        let t11_right = d.right().basis(1, 1);
        let t11_left = d.left().basis(1, 1);
        assert_eq!(t11_right, SparseVector::unit(4, 3).neg());
        assert_eq!(t11_left, SparseVector::unit(4, 3));
        // supercommutative source: the bracket vanishes
        assert!(to_leibniz(&d).bracket().is_zero());
        let md = tensor_dialgebras(&catalog::matrix_algebra(2), &d);
        let l = to_leibniz(&md);
        assert!(check_leibniz(&l, &opts()).passed);
        assert!(!is_lie(&l, &opts()).passed);
        assert!(check_right_leibniz(&to_right_leibniz(&md), &opts()).passed);
    }

    #[test]
    fn zero_differential_gives_zero_products() {
        let a = catalog::exterior(2);
        let d = differential_dialgebra(&a, &LinearMap::zero(4, 4)).unwrap();
        assert!(d.left().is_zero() && d.right().is_zero());
    }

    #[test]
    fn differential_rejections() {
        let t3 = catalog::truncated_polynomial(3);
        // t∂t: 1 ↦ 0, t ↦ t, t² ↦ 2t²
        let d = LinearMap::from_columns(
            3,
            vec![
                SparseVector::zero(3),
                SparseVector::unit(3, 1),
                SparseVector::unit(3, 2).scaled(&Scalar::from_int(2)),
            ],
        )
        .unwrap();
        assert!(matches!(
            differential_dialgebra(&t3, &d),
            Err(CoreError::DifferentialNotSquareZero(_))
        ));
        // θ1 ↦ 1 is odd
        let lam = catalog::exterior(2);
        let odd = LinearMap::from_columns(
            4,
            vec![SparseVector::zero(4), SparseVector::unit(4, 0), SparseVector::zero(4), SparseVector::zero(4)],
        )
        .unwrap();
        assert!(matches!(differential_dialgebra(&lam, &odd), Err(CoreError::OddDifferential(_))));
        // 1 ↦ t² is even and square-zero on K[t]/(t³) but d(1·1) ≠ 2 d(1)
        let bad = LinearMap::from_columns(
            3,
            vec![SparseVector::unit(3, 2), SparseVector::zero(3), SparseVector::zero(3)],
        )
        .unwrap();
        assert!(matches!(differential_dialgebra(&t3, &bad), Err(CoreError::NotADerivation(_))));
    }

    #[test]
    fn tensor_with_field_is_identity() {
        let d = catalog::differential_lambda2();
        let t = tensor_dialgebras(&catalog::field(), &d);
        assert_eq!(t.left(), d.left());
        assert_eq!(t.right(), d.right());
    }

    #[test]
    fn odd_odd_tensor_sign() {
        let l = catalog::exterior(1);
        let t = tensor_dialgebras(&l, &l);
        // basis 1⊗1, 1⊗θ, θ⊗1, θ⊗θ; (1⊗θ)(θ⊗1) = (−1)^{|θ||θ|} θ⊗θ
        assert_eq!(t.left().basis(1, 2), SparseVector::unit(4, 3).neg());
        // (θ⊗1)(1⊗θ) = θ⊗θ
        assert_eq!(t.left().basis(2, 1), SparseVector::unit(4, 3));
        assert!(check_ass(&t, &opts()).passed);
    }

    #[test]
    fn lie_square_of_sl2() {
        let g = catalog::sl2();
        let sq = leibniz_from_lie_square(&g, SignConvention::Koszul).unwrap();
        assert_eq!(sq.dim(), 9);
        assert!(check_leibniz(&sq, &opts()).passed);
        assert!(!is_lie(&sq, &opts()).passed);
        let bad = LeibnizSuperalgebra::new(
            SuperSpace::numbered("e", "e", vec![Parity::Even]),
            {
                let mut p = BilinearProduct::square(1);
                p.set(0, 0, SparseVector::unit(1, 0)).unwrap();
                p
            },
        )
        .unwrap();
        assert!(matches!(
            leibniz_from_lie_square(&bad, SignConvention::Koszul),
            Err(CoreError::NotLie(_))
        ));
    }

    #[test]
    fn lie_square_grading() {
        let g = crate::matrix::build_gl(1, 1, &catalog::field()).unwrap();
        let sq = leibniz_from_lie_square(&g, SignConvention::Koszul).unwrap();
        assert!(check_graded_leibniz(&sq, &opts()).passed);
        assert!(check_leibniz(&sq, &opts()).passed);
    }

    #[test]
    fn lie_tensor_field_is_g() {
        let g = catalog::sl2();
        let t = lie_tensor_dialgebra(&g, &catalog::field());
        assert_eq!(t.bracket(), g.bracket());
        let t2 = lie_tensor_dialgebra(&g, &catalog::differential_lambda2());
        assert_eq!(t2.dim(), 12);
    }
}
