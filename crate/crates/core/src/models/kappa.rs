//! Models `(g ⊗ A) ⊕ D` for a Lie superalgebra `g` with an invariant form
//! `κ` and a supercommutative dialgebra `A`.

use sdias_linalg::{row_reduce, Scalar, SparseVector};

use super::{
    add_d, add_tensor, derivation_law, form_identity_4_7, form_identity_4_8, invariance_law, model_space,
    representation_law, ConditionReport,
};
use crate::checks::{check_ass, check_bar_unit, check_graded_between, check_leibniz, check_supercommutative, is_lie};
use crate::matrix::SlBasis;
use crate::report::{differ, grid_check};
use crate::{koszul, BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, SuperDialgebra, ViolationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateDataK {
    g: LeibnizSuperalgebra,
    kappa: BilinearProduct,
    a: SuperDialgebra,
    d: LeibnizSuperalgebra,
    phi: BilinearProduct,
    form: BilinearProduct,
    central: bool,
}

/// `κ(x,y) = str(xy)` on the basis of sl(p,q).
pub fn supertrace_form(basis: &SlBasis) -> BilinearProduct {
    let n = basis.dim();
    BilinearProduct::from_fn(n, n, 1, |i, j| {
        let c = basis.element(i).mul(basis.element(j)).supertrace();
        SparseVector::from_pairs(1, [(0, c)]).expect("dim 1")
    })
}

/// Even, supersymmetric, nondegenerate and invariant.
fn validate_kappa(g: &LeibnizSuperalgebra, kappa: &BilinearProduct) -> Result<(), CoreError> {
    let n = g.dim();
    if (kappa.left_dim(), kappa.right_dim(), kappa.out_dim()) != (n, n, 1) {
        return Err(CoreError::InvalidForm(format!("not a bilinear form on a space of dimension {n}")));
    }
    let sp = g.space();
    let k = |i: usize, j: usize| kappa.basis(i, j).coeff(0);
    let br = g.bracket();
    for i in 0..n {
        for j in 0..n {
            let v = k(i, j);
            if !v.is_zero() && sp.parity(i) != sp.parity(j) {
                return Err(CoreError::InvalidForm(format!("not even at ({}, {})", sp.label(i), sp.label(j))));
            }
            if v != k(j, i) * Scalar::from_int(koszul(sp.parity(i), sp.parity(j))) {
                return Err(CoreError::InvalidForm(format!(
                    "not supersymmetric at ({}, {})",
                    sp.label(i),
                    sp.label(j)
                )));
            }
            for l in 0..n {
                let lhs = kappa.vec_basis(&br.basis(i, j), l);
                let rhs = kappa.basis_vec(i, &br.basis(j, l));
                if lhs != rhs {
                    return Err(CoreError::InvalidForm(format!(
                        "not invariant at ({}, {}, {})",
                        sp.label(i),
                        sp.label(j),
                        sp.label(l)
                    )));
                }
            }
        }
    }
    let rows: Vec<SparseVector> = (0..n)
        .map(|i| SparseVector::from_dense(&(0..n).map(|j| k(i, j)).collect::<Vec<_>>()))
        .collect();
    if row_reduce(n, &rows)?.dim() != n {
        return Err(CoreError::InvalidForm("degenerate".into()));
    }
    Ok(())
}

impl CoordinateDataK {
    /// `phi: D × A → A`, `form: A × A → D`. With `central` every bracket
    /// involving `D` vanishes.
    pub fn new(
        g: LeibnizSuperalgebra,
        kappa: BilinearProduct,
        a: SuperDialgebra,
        d: LeibnizSuperalgebra,
        phi: BilinearProduct,
        form: BilinearProduct,
        central: bool,
    ) -> Result<Self, CoreError> {
        let opts = CheckOptions { max_violations: 1 };
        if !is_lie(&g, &opts).passed || !check_leibniz(&g, &opts).passed {
            return Err(CoreError::NotLie(g.name().to_string()));
        }
        validate_kappa(&g, &kappa)?;
        if a.bar_unit().is_none() {
            return Err(CoreError::NotUnital(a.name().to_string()));
        }
        let (na, nd) = (a.dim(), d.dim());
        if (phi.left_dim(), phi.right_dim(), phi.out_dim()) != (nd, na, na) {
            return Err(CoreError::DimensionMismatch {
                expected: nd * na,
                found: phi.left_dim() * phi.right_dim(),
            });
        }
        if (form.left_dim(), form.right_dim(), form.out_dim()) != (na, na, nd) {
            return Err(CoreError::DimensionMismatch {
                expected: nd,
                found: form.out_dim(),
            });
        }
        let (sa, sd) = (a.space(), d.space());
        if !check_graded_between("action", &phi, sd, sa, sa, &opts).passed {
            return Err(CoreError::Inhomogeneous("action".into()));
        }
        if !check_graded_between("form", &form, sa, sa, sd, &opts).passed {
            return Err(CoreError::Inhomogeneous("form".into()));
        }
        Ok(CoordinateDataK {
            g,
            kappa,
            a,
            d,
            phi,
            form,
            central,
        })
    }

    pub fn g(&self) -> &LeibnizSuperalgebra {
        &self.g
    }

    pub fn kappa(&self) -> &BilinearProduct {
        &self.kappa
    }

    pub fn a(&self) -> &SuperDialgebra {
        &self.a
    }

    pub fn d(&self) -> &LeibnizSuperalgebra {
        &self.d
    }

    pub fn phi(&self) -> &BilinearProduct {
        &self.phi
    }

    pub fn form(&self) -> &BilinearProduct {
        &self.form
    }

    pub fn central(&self) -> bool {
        self.central
    }
}

/// `[f⊗a, g⊗b] = (−1)^{|a||g|}([f,g]⊗(a⊢b) + κ(f,g)⟨a,b⟩)`,
/// `[d, f⊗a] = (−1)^{|d||f|} f⊗da`, `[f⊗a, d] = 0`; in the central variant
/// `[d, L] = [L, d] = 0`.
pub fn build_kappa_model(data: &CoordinateDataK) -> Result<LeibnizSuperalgebra, CoreError> {
    let (ng, na, nd) = (data.g.dim(), data.a.dim(), data.d.dim());
    let offset = ng * na;
    let n = offset + nd;
    let sg = data.g.space();
    let sa = data.a.space();
    let sd = data.d.space();
    let gbr = data.g.bracket();
    let bracket = BilinearProduct::from_fn(n, n, n, |x, y| {
        let mut out = SparseVector::zero(n);
        match (x < offset, y < offset) {
            (true, true) => {
                let (f, a) = (x / na, x % na);
                let (g, b) = (y / na, y % na);
                let s = Scalar::from_int(koszul(sa.parity(a), sg.parity(g)));
                add_tensor(&mut out, &s, &gbr.basis(f, g), &data.a.right().basis(a, b), na);
                let k = data.kappa.basis(f, g).coeff(0);
                add_d(&mut out, &(&s * &k), &data.form.basis(a, b), offset);
            }
            (false, true) if !data.central => {
                let d = x - offset;
                let (f, a) = (y / na, y % na);
                let s = Scalar::from_int(koszul(sd.parity(d), sg.parity(f)));
                add_tensor(&mut out, &s, &SparseVector::unit(ng, f), &data.phi.basis(d, a), na);
            }
            (false, false) if !data.central => {
                add_d(&mut out, &Scalar::one(), &data.d.bracket().basis(x - offset, y - offset), offset);
            }
            _ => {}
        }
        out
    });
    let name = format!("{}⊗{}⊕{}", data.g.name(), data.a.name(), data.d.name());
    LeibnizSuperalgebra::new(model_space(sg, sa, sd, name), bracket)
}

/// Verdicts named `a`, `i`, `ii` and `iii`:
/// `a` merges associativity, supercommutativity and the bar-unit law;
/// `i` merges the Leibniz identity on `D`, the representation law, the
/// derivation laws for ⊢ and ⊣, and `φ(⟨a,b⟩) = 0`;
/// `ii` is invariance of the form under `D`;
/// `iii` merges the two form identities.
pub fn check_lemma51_conditions(data: &CoordinateDataK, opts: &CheckOptions) -> ConditionReport {
    let a = &data.a;
    let na = a.dim();
    let sa = a.space();
    let phi = &data.phi;
    let form = &data.form;
    let cond_a = ViolationReport::merge(
        "a",
        vec![
            check_ass(a, opts),
            check_supercommutative(a, opts),
            check_bar_unit(a, opts).expect("validated"),
        ],
        opts,
    );
    let kernel = grid_check("form-in-kernel", &[na, na, na], opts, |ix| {
        let lhs = phi.vec_basis(&form.basis(ix[0], ix[1]), ix[2]);
        differ(lhs, SparseVector::zero(na))
    });
    let cond_i = ViolationReport::merge(
        "i",
        vec![
            check_leibniz(&data.d, opts),
            representation_law(&data.d, phi, sa, opts),
            derivation_law("phi-right", &data.d, phi, sa, a.right(), opts),
            derivation_law("phi-left", &data.d, phi, sa, a.left(), opts),
            kernel,
        ],
        opts,
    );
    let mut cond_ii = invariance_law(&data.d, phi, form, sa, opts);
    cond_ii.identity = "ii".into();
    let cond_iii = ViolationReport::merge(
        "iii",
        vec![form_identity_4_7(a, form, opts), form_identity_4_8(a, form, opts)],
        opts,
    );
    ConditionReport {
        conditions: vec![
            ("a".into(), cond_a),
            ("i".into(), cond_i),
            ("ii".into(), cond_ii),
            ("iii".into(), cond_iii),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ideal::centre;
    use crate::{Parity, SuperSpace};

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn sl21() -> (LeibnizSuperalgebra, BilinearProduct) {
        let b = SlBasis::new(2, 1).unwrap();
        (b.lie_algebra(), supertrace_form(&b))
    }

    fn line(name: &str, labels: &[&str]) -> LeibnizSuperalgebra {
        let space = SuperSpace::new(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            vec![Parity::Even; labels.len()],
        )
        .unwrap();
        LeibnizSuperalgebra::new(space, BilinearProduct::square(labels.len())).unwrap()
    }

    /// Λ(θ), D = Kz, ⟨θ,θ⟩ = z.
    fn central_data(central: bool) -> CoordinateDataK {
        let (g, kappa) = sl21();
        let mut form = BilinearProduct::zero(2, 2, 1);
        form.set(1, 1, SparseVector::unit(1, 0)).unwrap();
        CoordinateDataK::new(
            g,
            kappa,
            catalog::exterior(1),
            line("Kz", &["z"]),
            BilinearProduct::zero(1, 2, 2),
            form,
            central,
        )
        .unwrap()
    }

    #[test]
    fn supertrace_form_is_valid() {
        let (g, kappa) = sl21();
        validate_kappa(&g, &kappa).unwrap();
        let mut bad = kappa.clone();
        bad.add_coeff(0, 0, 0, &Scalar::one());
        assert!(matches!(validate_kappa(&g, &bad), Err(CoreError::InvalidForm(_))));
        assert!(matches!(
            validate_kappa(&g, &BilinearProduct::zero(8, 8, 1)),
            Err(CoreError::InvalidForm(_))
        ));
    }

    #[test]
    fn current_algebra_passes() {
        let (g, kappa) = sl21();
        let empty = LeibnizSuperalgebra::new(SuperSpace::empty("0"), BilinearProduct::square(0)).unwrap();
        let data = CoordinateDataK::new(
            g,
            kappa,
            catalog::exterior(1),
            empty,
            BilinearProduct::zero(0, 2, 2),
            BilinearProduct::zero(2, 2, 0),
            false,
        )
        .unwrap();
        assert!(check_lemma51_conditions(&data, &opts()).passed());
        let model = build_kappa_model(&data).unwrap();
        assert_eq!(model.dim(), 16);
        assert!(check_leibniz(&model, &opts()).passed);
    }

    #[test]
    fn central_variant_has_d_in_centre() {
        let data = central_data(true);
        assert!(check_lemma51_conditions(&data, &opts()).passed());
        let model = build_kappa_model(&data).unwrap();
        assert!(check_leibniz(&model, &opts()).passed);
        let z = centre(&model);
        assert!(z.contains(&SparseVector::unit(17, 16)));
        let plain = build_kappa_model(&central_data(false)).unwrap();
        assert!(check_leibniz(&plain, &opts()).passed);
    }

    #[test]
    fn field_coefficients_give_g() {
        let (g, kappa) = sl21();
        let empty = LeibnizSuperalgebra::new(SuperSpace::empty("0"), BilinearProduct::square(0)).unwrap();
        let data = CoordinateDataK::new(
            g.clone(),
            kappa,
            catalog::field(),
            empty,
            BilinearProduct::zero(0, 1, 1),
            BilinearProduct::zero(1, 1, 0),
            false,
        )
        .unwrap();
        assert_eq!(build_kappa_model(&data).unwrap().bracket(), g.bracket());
    }

    #[test]
    fn rejects_non_lie_carrier() {
        let l = crate::construct::to_leibniz(&crate::construct::tensor_dialgebras(
            &catalog::matrix_algebra(2),
            &catalog::differential_lambda2(),
        ));
        let r = CoordinateDataK::new(
            l,
            BilinearProduct::zero(16, 16, 1),
            catalog::field(),
            line("0", &[]),
            BilinearProduct::zero(0, 1, 1),
            BilinearProduct::zero(1, 1, 0),
            false,
        );
        assert!(matches!(r, Err(CoreError::NotLie(_))));
    }
}
