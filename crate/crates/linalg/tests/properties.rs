use proptest::prelude::*;
use sdias_linalg::{row_reduce, LinearMap, Polynomial, Scalar, SparseVector, Subspace};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn vec_of(xs: &[i64]) -> SparseVector {
    SparseVector::from_dense(&xs.iter().map(|&x| s(x)).collect::<Vec<_>>())
}

fn map_from_rows(rows: &[Vec<i64>]) -> LinearMap {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let cols = (0..m)
        .map(|j| vec_of(&(0..n).map(|i| rows[i][j]).collect::<Vec<_>>()))
        .collect();
    LinearMap::from_columns(n, cols).unwrap()
}

/// Faddeev–LeVerrier: M_0 = 0, c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I,
/// c_{n-k} = -tr(A M_k) / k.
fn faddeev_leverrier(a: &[Vec<Scalar>]) -> Polynomial {
    let n = a.len();
    let matmul = |x: &[Vec<Scalar>], y: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let tr: Scalar = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / s(k as i64);
    }
    Polynomial::new(c)
}

fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

fn vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 0..=max)
}

fn span(dim: usize, rows: &[Vec<i64>]) -> Subspace {
    let vs: Vec<_> = rows.iter().map(|r| vec_of(r)).collect();
    row_reduce(dim, &vs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_intersection_dimensions(a in vectors(5, 4), b in vectors(5, 4)) {
        let s1 = span(5, &a);
        let s2 = span(5, &b);
        let sum = s1.sum(&s2).unwrap();
        let cap = s1.intersect(&s2).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), s1.dim() + s2.dim());
        prop_assert!(cap.is_subspace_of(&s1));
        prop_assert!(cap.is_subspace_of(&s2));
    }

    #[test]
    fn row_reduce_is_idempotent(a in vectors(6, 7)) {
        let once = span(6, &a);
        let twice = row_reduce(6, once.basis()).unwrap();
        prop_assert_eq!(&once, &twice);
        for v in a.iter().map(|r| vec_of(r)) {
            prop_assert!(once.contains(&v));
        }
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..=6)) {
        let m = map_from_rows(&rows);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), 5);
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().is_zero());
        }
    }

    #[test]
    fn char_poly_matches_faddeev_leverrier(n in 1usize..=6, seed in small_matrix(6)) {
        let rows: Vec<Vec<i64>> = seed.iter().take(n).map(|r| r[..n].to_vec()).collect();
        let m = map_from_rows(&rows);
        let dense = m.to_dense();
        prop_assert_eq!(m.char_poly().unwrap(), faddeev_leverrier(&dense));
    }

    #[test]
    fn diagonalizable_maps_split(
        diag in prop::collection::vec(-3i64..=3, 4),
        upper in prop::collection::vec(-2i64..=2, 6),
    ) {
        // P unipotent upper triangular, so P^{-1} is integral; M = P D P^{-1}.
        let n = 4;
        let mut p = vec![vec![0i64; n]; n];
        let mut idx = 0;
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 1;
            for entry in row.iter_mut().skip(i + 1) {
                *entry = upper[idx];
                idx += 1;
            }
        }
        let pm = map_from_rows(&p);
        let pinv = {
            // back substitution column by column
            let mut inv = vec![vec![Scalar::zero(); n]; n];
            for j in 0..n {
                for i in (0..n).rev() {
                    let mut acc = if i == j { Scalar::one() } else { Scalar::zero() };
                    for k in i + 1..n {
                        acc -= &(s(p[i][k]) * &inv[k][j]);
                    }
                    inv[i][j] = acc;
                }
            }
            let cols = (0..n)
                .map(|j| SparseVector::from_dense(&(0..n).map(|i| inv[i][j].clone()).collect::<Vec<_>>()))
                .collect();
            LinearMap::from_columns(n, cols).unwrap()
        };
        let d = map_from_rows(
            &(0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect::<Vec<_>>(),
        );
        let m = pm.compose(&d).unwrap().compose(&pinv).unwrap();
        let roots = m.char_poly().unwrap().rational_roots().unwrap();
        let total: usize = roots.iter().map(|(_, k)| k).sum();
        prop_assert_eq!(total, n);
        let mut eigen_total = 0;
        for (lambda, mult) in &roots {
            let e = m.shift(lambda).unwrap().kernel();
            prop_assert_eq!(e.dim(), *mult);
            eigen_total += e.dim();
            prop_assert_eq!(diag.iter().filter(|&&x| s(x) == *lambda).count(), *mult);
        }
        prop_assert_eq!(eigen_total, n);
    }

    #[test]
    fn rational_roots_of_products_of_linear_factors(
        roots in prop::collection::vec((-20i64..=20, 1i64..=4), 1..=5),
    ) {
        let mut p = Polynomial::one();
        for &(num, den) in &roots {
            p = p.mul(&Polynomial::new(vec![-Scalar::ratio(num, den).unwrap(), s(1)]));
        }
        let found = p.rational_roots().unwrap();
        let mut expected: Vec<Scalar> = roots.iter().map(|&(a, b)| Scalar::ratio(a, b).unwrap()).collect();
        expected.sort();
        let mut flat = Vec::new();
        for (r, k) in found {
            prop_assert!(p.eval(&r).is_zero());
            flat.extend(std::iter::repeat(r).take(k));
        }
        prop_assert_eq!(flat, expected);
    }
}

#[test]
fn gl11_derived_span_is_three_dimensional() {
    // gl(1,1) with basis E11, E12, E21, E22 (E12, E21 odd); the supercommutator
    // of matrix units is [E_ij, E_kl] = δ_jk E_il − (−1)^{p p'} δ_li E_kj.
    let parity = |i: usize, j: usize| (i != j) as i64;
    let units: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    let idx = |i: usize, j: usize| i * 2 + j;
    let mut brackets = Vec::new();
    for &(i, j) in &units {
        for &(k, l) in &units {
            let mut v = vec![0i64; 4];
            if j == k {
                v[idx(i, l)] += 1;
            }
            if l == i {
                let sign = if parity(i, j) * parity(k, l) == 1 { -1 } else { 1 };
                v[idx(k, j)] -= sign;
            }
            brackets.push(vec_of(&v));
        }
    }
    let derived = row_reduce(4, &brackets).unwrap();
    assert_eq!(derived.dim(), 3);
    assert!(derived.contains(&vec_of(&[1, 0, 0, 1])));
    assert!(!derived.contains(&vec_of(&[1, 0, 0, 0])));
}

#[test]
fn sl21_simultaneous_eigenspace() {
    // Diagonal h1 = E11 − E22, h2 = E11 + E33 acting on the six off-diagonal
    // units of gl(2,1); ad h on E_ij has eigenvalue h_i − h_j.
    let h1 = [1i64, -1, 0];
    let h2 = [1i64, 0, 1];
    let units: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let ad = |h: &[i64; 3]| {
        map_from_rows(
            &(0..6)
                .map(|r| (0..6).map(|c| if r == c { h[units[c].0] - h[units[c].1] } else { 0 }).collect())
                .collect::<Vec<_>>(),
        )
    };
    let e1 = ad(&h1).shift(&s(1)).unwrap().kernel();
    let e2 = ad(&h2).shift(&s(1)).unwrap().kernel();
    let both = e1.intersect(&e2).unwrap();
    assert_eq!(both.dim(), 1);
    // eigenvalue pair (1, 1) belongs to E32 only
    let e32 = units.iter().position(|&u| u == (2, 1)).unwrap();
    assert_eq!(both.basis()[0], SparseVector::unit(6, e32));
}
