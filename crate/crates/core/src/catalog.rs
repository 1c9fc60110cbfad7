//! Named algebras used throughout the tests and the command-line fixtures.

use sdias_linalg::{LinearMap, Scalar, SparseVector};

use crate::construct::{differential_dialgebra, tensor_dialgebras};
use crate::{BilinearProduct, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace};

/// The ground field as a one-dimensional dialgebra with unit.
pub fn field() -> SuperDialgebra {
    let space = SuperSpace::new("K", vec!["1".into()], vec![Parity::Even]).expect("one label");
    let mut p = BilinearProduct::square(1);
    p.set(0, 0, SparseVector::unit(1, 0)).expect("in range");
    SuperDialgebra::associative(space, p, Some(SparseVector::unit(1, 0))).expect("valid")
}

fn monomial_label(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("θ{}", b + 1))
        .collect()
}

/// Exterior algebra Λ(θ1..θk), basis the monomials indexed by bitmask.
pub fn exterior(k: usize) -> SuperDialgebra {
    let n = 1 << k;
    let labels = (0..n).map(monomial_label).collect();
    let parities = (0..n).map(|m: usize| Parity::from_bool(m.count_ones() % 2 == 1)).collect();
    let space = SuperSpace::new(format!("Λ{k}"), labels, parities).expect("distinct monomials");
    let p = BilinearProduct::from_fn(n, n, n, |a, b| {
        if a & b != 0 {
            return SparseVector::zero(n);
        }
        // sign of merging the sorted generator lists
        let mut swaps = 0;
        for bit in 0..k {
            if b >> bit & 1 == 1 {
                swaps += (a >> (bit + 1)).count_ones();
            }
        }
        let s = if swaps % 2 == 0 { 1 } else { -1 };
        SparseVector::unit(n, a | b).scaled(&Scalar::from_int(s))
    });
    SuperDialgebra::associative(space, p, Some(SparseVector::unit(n, 0))).expect("valid")
}

/// Full matrix algebra M_k(K), basis E_ij at index `i*k + j`.
pub fn matrix_algebra(k: usize) -> SuperDialgebra {
    let n = k * k;
    let labels = (0..n).map(|x| format!("E{}{}", x / k + 1, x % k + 1)).collect();
    let space = SuperSpace::new(format!("M{k}"), labels, vec![Parity::Even; n]).expect("distinct");
    let p = BilinearProduct::from_fn(n, n, n, |x, y| {
        let (i, j) = (x / k, x % k);
        let (l, m) = (y / k, y % k);
        if j == l {
            SparseVector::unit(n, i * k + m)
        } else {
            SparseVector::zero(n)
        }
    });
    let unit = SparseVector::from_pairs(n, (0..k).map(|i| (i * k + i, Scalar::one()))).expect("in range");
    SuperDialgebra::associative(space, p, Some(unit)).expect("valid")
}

/// K[t]/(t^k), basis 1, t, ..., t^{k−1}.
pub fn truncated_polynomial(k: usize) -> SuperDialgebra {
    let labels = (0..k)
        .map(|e| match e {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        })
        .collect();
    let space = SuperSpace::new(format!("K[t]/t^{k}"), labels, vec![Parity::Even; k]).expect("distinct");
    let p = BilinearProduct::from_fn(k, k, k, |a, b| {
        if a + b < k {
            SparseVector::unit(k, a + b)
        } else {
            SparseVector::zero(k)
        }
    });
    SuperDialgebra::associative(space, p, Some(SparseVector::unit(k, 0))).expect("valid")
}

/// The even square-zero derivation `θ2·∂/∂θ1` of Λ(θ1,θ2).
pub fn theta2_d_theta1() -> LinearMap {
    let cols = vec![
        SparseVector::zero(4),
        SparseVector::unit(4, 2),
        SparseVector::zero(4),
        SparseVector::zero(4),
    ];
    LinearMap::from_columns(4, cols).expect("dim 4")
}

/// Differential dialgebra on Λ(θ1,θ2) with `d = θ2·∂/∂θ1`. It has no bar-unit.
pub fn differential_lambda2() -> SuperDialgebra {
    differential_dialgebra(&exterior(2), &theta2_d_theta1())
        .expect("θ2∂/∂θ1 is an even square-zero derivation")
        .with_name("Λ2_d")
}

/// Dialgebra `x⊣y = x f(y)`, `x⊢y = f(x) y` from an idempotent even algebra
/// endomorphism `f` of an associative superalgebra.
pub fn projection_dialgebra(a: &SuperDialgebra, f: &LinearMap, name: &str) -> SuperDialgebra {
    let n = a.dim();
    let m = a.left();
    let left = BilinearProduct::from_fn(n, n, n, |i, j| m.basis_vec(i, f.column(j)));
    let right = BilinearProduct::from_fn(n, n, n, |i, j| m.vec_basis(f.column(i), j));
    SuperDialgebra::new(
        a.space().clone().with_name(name),
        left,
        right,
        a.bar_unit().cloned(),
    )
    .expect("same space as the source algebra")
}

/// Upper triangular 2×2 matrices (basis E11, E12, E22) with `f` the
/// projection onto the diagonal.
pub fn triangular_projection() -> SuperDialgebra {
    let labels = vec!["E11".to_string(), "E12".to_string(), "E22".to_string()];
    let space = SuperSpace::new("T2", labels, vec![Parity::Even; 3]).expect("distinct");
    let mut p = BilinearProduct::square(3);
    p.set(0, 0, SparseVector::unit(3, 0)).expect("in range");
    p.set(0, 1, SparseVector::unit(3, 1)).expect("in range");
    p.set(1, 2, SparseVector::unit(3, 1)).expect("in range");
    p.set(2, 2, SparseVector::unit(3, 2)).expect("in range");
    let unit = SparseVector::from_pairs(3, [(0, Scalar::one()), (2, Scalar::one())]).expect("in range");
    let t2 = SuperDialgebra::associative(space, p, Some(unit)).expect("valid");
    let f = LinearMap::from_columns(
        3,
        vec![SparseVector::unit(3, 0), SparseVector::zero(3), SparseVector::unit(3, 2)],
    )
    .expect("dim 3");
    projection_dialgebra(&t2, &f, "T2_f")
}

/// Λ(θ1,θ2) with `f` killing θ2; a unital supercommutative dialgebra with
/// distinct products.
pub fn projection_lambda2() -> SuperDialgebra {
    let f = LinearMap::from_columns(
        4,
        vec![
            SparseVector::unit(4, 0),
            SparseVector::unit(4, 1),
            SparseVector::zero(4),
            SparseVector::zero(4),
        ],
    )
    .expect("dim 4");
    projection_dialgebra(&exterior(2), &f, "Λ2_f")
}

/// sl₂ on the basis (e, f, h).
pub fn sl2() -> LeibnizSuperalgebra {
    let space = SuperSpace::new(
        "sl2",
        vec!["e".into(), "f".into(), "h".into()],
        vec![Parity::Even; 3],
    )
    .expect("distinct");
    let mut b = BilinearProduct::square(3);
    let two = Scalar::from_int(2);
    b.set(0, 1, SparseVector::unit(3, 2)).expect("in range");
    b.set(1, 0, SparseVector::unit(3, 2).neg()).expect("in range");
    b.set(2, 0, SparseVector::unit(3, 0).scaled(&two)).expect("in range");
    b.set(0, 2, SparseVector::unit(3, 0).scaled(&-&two)).expect("in range");
    b.set(2, 1, SparseVector::unit(3, 1).scaled(&-&two)).expect("in range");
    b.set(1, 2, SparseVector::unit(3, 1).scaled(&two)).expect("in range");
    LeibnizSuperalgebra::new(space, b).expect("valid")
}

/// Every dialgebra in the catalog.
pub fn dialgebras() -> Vec<SuperDialgebra> {
    let mut out = unital_dialgebras();
    out.push(differential_lambda2());
    out.push(tensor_dialgebras(&matrix_algebra(2), &differential_lambda2()));
    out.push(tensor_dialgebras(&exterior(1), &differential_lambda2()));
    out
}

/// Catalog dialgebras with a bar-unit.
pub fn unital_dialgebras() -> Vec<SuperDialgebra> {
    vec![
        field(),
        exterior(1),
        exterior(2),
        matrix_algebra(2),
        matrix_algebra(3),
        truncated_polynomial(3),
        triangular_projection(),
        projection_lambda2(),
        tensor_dialgebras(&matrix_algebra(2), &exterior(1)),
        tensor_dialgebras(&exterior(1), &projection_lambda2()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_ass, check_bar_unit, check_graded_dialgebra, check_supercommutative};
    use crate::CheckOptions;

    #[test]
    fn catalog_is_associative_and_graded() {
        let opts = CheckOptions::default();
        for d in dialgebras() {
            assert!(check_ass(&d, &opts).passed, "{}", d.name());
            assert!(check_graded_dialgebra(&d, &opts).passed, "{}", d.name());
        }
        for d in unital_dialgebras() {
            assert!(check_bar_unit(&d, &opts).unwrap().passed, "{}", d.name());
        }
    }

    #[test]
    fn exterior_signs() {
        let l = exterior(2);
        // θ2θ1 = −θ1θ2
        assert_eq!(l.left().basis(2, 1), SparseVector::unit(4, 3).neg());
        assert_eq!(l.left().basis(1, 2), SparseVector::unit(4, 3));
        assert!(l.left().get(1, 1).is_none());
        assert_eq!(l.space().labels(), &["1", "θ1", "θ2", "θ1θ2"]);
    }

    #[test]
    fn projection_dialgebras() {
        let opts = CheckOptions::default();
        let t = triangular_projection();
        assert!(!t.products_coincide());
        assert!(!check_supercommutative(&t, &opts).passed);
        let p = projection_lambda2();
        assert!(!p.products_coincide());
        assert!(check_supercommutative(&p, &opts).passed);
    }
}
