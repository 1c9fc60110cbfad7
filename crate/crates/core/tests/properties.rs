use proptest::prelude::*;
use sdias_core::catalog;
use sdias_core::checks::{check_ass, check_leibniz, check_superderivation, is_lie};
use sdias_core::construct::{
    ad, leibniz_from_lie_square, tensor_dialgebras, to_leibniz, SignConvention,
};
use sdias_core::ideal::lie_quotient;
use sdias_core::linalg::{Scalar, SparseVector};
use sdias_core::matrix::{build_gl, build_gl_with};
use sdias_core::{koszul, CheckOptions, LeibnizSuperalgebra, Parity, SuperSpace};

fn homogeneous(space: &SuperSpace, parity: Parity, coeffs: &[i64]) -> SparseVector {
    let pairs = (0..space.dim())
        .filter(|&i| space.parity(i) == parity)
        .zip(coeffs.iter().cycle())
        .map(|(i, &c)| (i, Scalar::from_int(c)));
    SparseVector::from_pairs(space.dim(), pairs).unwrap()
}

fn parity(odd: bool) -> Parity {
    Parity::from_bool(odd)
}

fn catalog_leibniz(idx: usize) -> LeibnizSuperalgebra {
    let all = catalog::dialgebras();
    to_leibniz(&all[idx % all.len()])
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_identity_on_random_elements(
        idx in 0usize..16,
        (px, py, pz) in (any::<bool>(), any::<bool>(), any::<bool>()),
        (cx, cy, cz) in (coeffs(), coeffs(), coeffs()),
    ) {
        let l = catalog_leibniz(idx);
        let sp = l.space();
        let (px, py) = (parity(px), parity(py));
        let x = homogeneous(sp, px, &cx);
        let y = homogeneous(sp, py, &cy);
        let z = homogeneous(sp, parity(pz), &cz);
        let lhs = l.bracket_of(&l.bracket_of(&x, &y), &z);
        let mut rhs = l.bracket_of(&x, &l.bracket_of(&y, &z));
        rhs.add_scaled(
            &Scalar::from_int(-koszul(px, py)),
            &l.bracket_of(&y, &l.bracket_of(&x, &z)),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_is_a_superderivation(idx in 0usize..16, odd in any::<bool>(), c in coeffs()) {
        let l = catalog_leibniz(idx);
        let z = homogeneous(l.space(), parity(odd), &c);
        let r = check_superderivation(&l, &ad(&l, &z), parity(odd), &CheckOptions::default()).unwrap();
        prop_assert!(r.passed, "{:?}", r.violations.first());
    }

    #[test]
    fn tensor_products_stay_associative(i in 0usize..8, j in 0usize..8) {
        let small: Vec<_> = catalog::dialgebras().into_iter().filter(|d| d.dim() <= 4).collect();
        let t = tensor_dialgebras(&small[i % small.len()], &small[j % small.len()]);
        prop_assert!(check_ass(&t, &CheckOptions::default()).passed);
    }

    #[test]
    fn lie_quotient_map_is_a_homomorphism(
        idx in 0usize..16,
        (px, py) in (any::<bool>(), any::<bool>()),
        (cx, cy) in (coeffs(), coeffs()),
    ) {
        let l = catalog_leibniz(idx);
        let (q, map) = lie_quotient(&l).unwrap();
        let x = homogeneous(l.space(), parity(px), &cx);
        let y = homogeneous(l.space(), parity(py), &cy);
        prop_assert_eq!(
            map.project(&l.bracket_of(&x, &y)),
            q.bracket_of(&map.project(&x), &map.project(&y))
        );
    }

    #[test]
    fn reports_do_not_depend_on_thread_count(cap in 1usize..40, threads in 2usize..6) {
        let l = build_gl_with(1, 1, &catalog::exterior(1), SignConvention::Literal).unwrap();
        let opts = CheckOptions { max_violations: cap };
        let run = |n: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| check_leibniz(&l, &opts))
        };
        let one = run(1);
        prop_assert_eq!(one.violations.len(), cap.min(one.total_violations));
        prop_assert_eq!(one, run(threads));
    }
}

#[test]
fn literal_gl_brackets_break_with_odd_coefficients() {
    let opts = CheckOptions::default();
    for (m, n, d, expected) in [
        (1, 1, catalog::exterior(1), 20),
        (1, 1, catalog::exterior(2), 144),
        (2, 1, catalog::exterior(1), 184),
    ] {
        let literal = build_gl_with(m, n, &d, SignConvention::Literal).unwrap();
        let r = check_leibniz(&literal, &opts);
        assert_eq!(r.total_violations, expected, "gl({m},{n},{})", d.name());
        assert!(check_leibniz(&build_gl(m, n, &d).unwrap(), &opts).passed);
    }
}

#[test]
fn literal_gl_agrees_on_even_coefficients() {
    for d in [catalog::field(), catalog::matrix_algebra(2)] {
        let a = build_gl_with(2, 1, &d, SignConvention::Literal).unwrap();
        let b = build_gl(2, 1, &d).unwrap();
        assert_eq!(a.bracket(), b.bracket());
    }
}

#[test]
fn lie_square_needs_the_koszul_sign() {
    let opts = CheckOptions::default();
    let g = build_gl(1, 1, &catalog::field()).unwrap();
    let koszul_sq = leibniz_from_lie_square(&g, SignConvention::Koszul).unwrap();
    assert!(check_leibniz(&koszul_sq, &opts).passed);
    assert!(!is_lie(&koszul_sq, &opts).passed);
    let literal = leibniz_from_lie_square(&g, SignConvention::Literal).unwrap();
    assert_eq!(check_leibniz(&literal, &opts).total_violations, 448);
}
