//! Recovering coordinate data from a Leibniz superalgebra graded by
//! sl(p,q) with a known embedding of the grading subalgebra.

use sdias_linalg::{solve_combination, LinearMap, Scalar, SparseVector, Subspace};

use super::{CoordinateDataA, SlTables};
use crate::checks::homogeneous_parity;
use crate::construct::ad;
use crate::ideal::{combination_label, left_annihilator};
use crate::{koszul, BilinearProduct, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace};

fn mismatch(msg: impl Into<String>) -> CoreError {
    CoreError::DecompositionMismatch(msg.into())
}

/// Images `f ⊗ x` of every basis element `f` of g, obtained from `E12 ⊗ x`
/// by the left action of g.
fn transport(
    l: &LeibnizSuperalgebra,
    t: &SlTables,
    g_images: &[SparseVector],
    start: usize,
    x: &SparseVector,
) -> Result<Vec<SparseVector>, CoreError> {
    let ng = t.dim();
    let mut known_g = vec![SparseVector::unit(ng, start)];
    let mut known_l = vec![x.clone()];
    let mut span = Subspace::zero(ng);
    span.insert(&known_g[0])?;
    let mut next = 0;
    while next < known_g.len() && span.dim() < ng {
        for b in 0..ng {
            let u = t.bracket.basis_vec(b, &known_g[next]);
            if !span.contains(&u) {
                span.insert(&u)?;
                known_l.push(l.bracket_of(&g_images[b], &known_l[next]));
                known_g.push(u);
            }
        }
        next += 1;
    }
    if span.dim() < ng {
        return Err(mismatch("the root vector does not generate the grading subalgebra"));
    }
    (0..ng)
        .map(|f| {
            let c = solve_combination(&known_g, &SparseVector::unit(ng, f))?.expect("spanning set");
            let mut out = SparseVector::zero(l.dim());
            for (&k, v) in c.iter() {
                out.add_scaled(v, &known_l[k]);
            }
            Ok(out)
        })
        .collect()
}

/// Reads `A`, `D`, the action, the form and the right action off `l`,
/// where `g_images[i]` is the image of the i-th basis element of
/// sl(p,q) (off-diagonal units, then Cartan elements). The basis of `A` is
/// the echelon basis of the weight space of `E12`; the bar-unit is the
/// coordinate vector of the image of `E12`; `D` is the left annihilator of
/// the grading subalgebra with its echelon basis.
pub fn extract_coordinates(
    l: &LeibnizSuperalgebra,
    g_images: &[SparseVector],
    p: usize,
    q: usize,
) -> Result<CoordinateDataA, CoreError> {
    let t = SlTables::new(p, q)?;
    let ng = t.dim();
    let n = l.dim();
    if g_images.len() != ng {
        return Err(CoreError::DimensionMismatch {
            expected: ng,
            found: g_images.len(),
        });
    }
    if let Some(v) = g_images.iter().find(|v| v.dim() != n) {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            found: v.dim(),
        });
    }
    let e12 = t.basis.unit_index(0, 1).expect("size ≥ 3");
    let e21 = t.basis.unit_index(1, 0).expect("size ≥ 3");

    // weight space of E12
    let mut root_space = Subspace::full(n);
    for h in t.basis.cartan_indices() {
        let alpha = t.bracket.basis(h, e12).coeff(e12);
        let e = ad(l, &g_images[h]).shift(&alpha)?.kernel();
        root_space = root_space.intersect(&e)?;
    }
    let a_basis = root_space.basis().to_vec();
    let na = a_basis.len();
    let d_space = left_annihilator(l, g_images);
    let d_basis = d_space.basis().to_vec();
    let nd = d_basis.len();
    if ng * na + nd != n {
        return Err(mismatch(format!(
            "{ng}·{na} + {nd} does not match dimension {n}"
        )));
    }

    let mut basis = Vec::with_capacity(n);
    for x in &a_basis {
        basis.push(transport(l, &t, g_images, e12, x)?);
    }
    // reorder to g-major layout: index f * na + i
    let mut columns: Vec<SparseVector> = (0..ng * na).map(|k| basis[k % na][k / na].clone()).collect();
    columns.extend(d_basis.iter().cloned());
    let change = LinearMap::from_columns(n, columns.clone())?;
    if change.rank() != n {
        return Err(mismatch("adjoint copies and centralizer do not span"));
    }
    let inverse: Vec<SparseVector> = (0..n)
        .map(|j| {
            solve_combination(&columns, &SparseVector::unit(n, j))
                .map(|c| c.expect("full rank"))
        })
        .collect::<Result<_, _>>()?;
    let coords = |v: &SparseVector| {
        let mut out = SparseVector::zero(n);
        for (&j, c) in v.iter() {
            out.add_scaled(c, &inverse[j]);
        }
        out
    };
    let offset = ng * na;
    let x_of = |f: usize, i: usize| &columns[f * na + i];
    let d_of = |k: usize| &columns[offset + k];
    let row = |v: &SparseVector, f: usize| v.slice(f * na, na);
    let d_part = |v: &SparseVector| v.slice(offset, nd);

    let sl = l.space();
    let a_par: Vec<Parity> = a_basis
        .iter()
        .map(|x| homogeneous_parity(sl, x))
        .collect::<Result<_, _>>()?;
    let d_par: Vec<Parity> = d_basis
        .iter()
        .map(|x| homogeneous_parity(sl, x))
        .collect::<Result<_, _>>()?;
    let sgn = |x: Parity, y: Parity| Scalar::from_int(koszul(x, y));

    let pair = [t.bracket.basis(e12, e21), t.star.basis(e12, e21)];
    let tr = t.trace(e12, e21).clone();
    let two = Scalar::from_int(2);
    let mut circ = BilinearProduct::square(na);
    let mut br = BilinearProduct::square(na);
    let mut form = BilinearProduct::zero(na, na, nd);
    for i in 0..na {
        for j in 0..na {
            let s = sgn(a_par[i], t.basis.parity(e21));
            let r = coords(&l.bracket_of(x_of(e12, i), x_of(e21, j))).scaled(&s);
            for k in 0..na {
                let g_part = SparseVector::from_pairs(ng, (0..ng).map(|f| (f, r.coeff(f * na + k))))?;
                let c = solve_combination(&pair, &g_part)?
                    .ok_or_else(|| mismatch("product leaves the span of [E12,E21] and E12∗E21"))?;
                circ.add_coeff(i, j, k, &(&two * &c.coeff(0)));
                br.add_coeff(i, j, k, &(&two * &c.coeff(1)));
            }
            form.set(i, j, d_part(&r).scaled(&(Scalar::one() / &tr)))?;
        }
    }
    let half = Scalar::ratio(1, 2).expect("nonzero");
    let mut right = BilinearProduct::square(na);
    let mut left = BilinearProduct::square(na);
    for i in 0..na {
        for j in 0..na {
            let (c, b) = (circ.basis(i, j), br.basis(i, j));
            right.set(i, j, c.add(&b).scaled(&half))?;
            left.set(j, i, c.sub(&b).scaled(&(&half * &sgn(a_par[i], a_par[j]))))?;
        }
    }
    let phi = BilinearProduct::from_fn(nd, na, na, |k, i| {
        let r = coords(&l.bracket_of(d_of(k), x_of(e12, i)));
        row(&r, e12).scaled(&sgn(d_par[k], t.basis.parity(e12)))
    });
    let rho = BilinearProduct::from_fn(na, nd, na, |i, k| row(&coords(&l.bracket_of(x_of(e12, i), d_of(k))), e12));
    let dbr = BilinearProduct::from_fn(nd, nd, nd, |k, m| d_part(&coords(&l.bracket_of(d_of(k), d_of(m)))));

    let unit = root_space
        .coordinates(&g_images[e12])
        .ok_or_else(|| mismatch("E12 is not in its own weight space"))?;
    let prefix = format!("{}⊗", t.basis.labels()[e12]);
    let a_labels: Vec<String> = a_basis
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let s = combination_label(sl, x);
            match s.strip_prefix(&prefix) {
                Some(rest) if !rest.contains(['+', '-', '*']) => rest.to_string(),
                _ => format!("a{}", i + 1),
            }
        })
        .collect();
    let d_labels: Vec<String> = d_basis.iter().map(|x| combination_label(sl, x)).collect();
    let a_space = SuperSpace::new(format!("A({})", l.name()), a_labels, a_par)?;
    let d_space = SuperSpace::new(format!("D({})", l.name()), d_labels, d_par)?;
    let a = SuperDialgebra::new(a_space, left, right, Some(unit))?;
    let d = LeibnizSuperalgebra::new(d_space, dbr)?;
    CoordinateDataA::new(p, q, a, d, phi, form, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::models::{build_a_graded_model, build_canonical_la};

    /// `f ⊗ 1` in the model layout.
    fn embedding(ng: usize, a: &SuperDialgebra, total: usize) -> Vec<SparseVector> {
        let unit = a.bar_unit().unwrap();
        (0..ng)
            .map(|f| {
                let mut v = SparseVector::zero(total);
                for (&k, c) in unit.iter() {
                    v.set(f * a.dim() + k, c.clone());
                }
                v
            })
            .collect()
    }

    fn assert_same(x: &CoordinateDataA, y: &CoordinateDataA) {
        assert_eq!(x.a().left(), y.a().left());
        assert_eq!(x.a().right(), y.a().right());
        assert_eq!(x.a().bar_unit(), y.a().bar_unit());
        assert_eq!(x.a().space().parities(), y.a().space().parities());
        assert_eq!(x.d().bracket(), y.d().bracket());
        assert_eq!(x.phi(), y.phi());
        assert_eq!(x.form(), y.form());
        assert_eq!(x.rho(), y.rho());
    }

    #[test]
    fn round_trip_canonical() {
        for a in [catalog::exterior(1), catalog::matrix_algebra(2), catalog::projection_lambda2()] {
            let (model, data) = build_canonical_la(&a, 2, 1).unwrap();
            let g = embedding(8, &a, model.dim());
            let back = extract_coordinates(&model, &g, 2, 1).unwrap();
            assert_same(&data, &back);
            assert_eq!(build_a_graded_model(&back).unwrap().bracket(), model.bracket());
        }
    }

    #[test]
    fn plain_sl_gives_the_field() {
        let (model, _) = build_canonical_la(&catalog::field(), 2, 1).unwrap();
        let g: Vec<_> = (0..8).map(|i| SparseVector::unit(8, i)).collect();
        let back = extract_coordinates(&model, &g, 2, 1).unwrap();
        assert_eq!(back.a().dim(), 1);
        assert_eq!(back.d().dim(), 0);
        assert_eq!(back.a().space().labels(), &["1"]);
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let (model, _) = build_canonical_la(&catalog::field(), 2, 1).unwrap();
        let g: Vec<_> = (0..8).map(|i| SparseVector::unit(8, i)).collect();
        assert!(matches!(
            extract_coordinates(&model, &g[..7], 2, 1),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }
}
