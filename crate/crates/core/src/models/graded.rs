//! Models `(sl(p,q) ⊗ A) ⊕ D` for a unital dialgebra `A` with the ∘/[,]/∗
//! multiplication table.

use sdias_linalg::{row_reduce, solve_combination, Scalar, SparseVector, Subspace};

use super::{
    add_d, add_tensor, circ_and_bracket, derivation_law, form_identity_4_7, form_identity_4_8, invariance_law,
    model_space, representation_law, ConditionReport, SlTables,
};
use crate::checks::{check_ass, check_graded_between, check_leibniz};
use crate::ideal::combination_label;
use crate::report::{differ, grid_check};
use crate::{
    koszul, BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace,
};

/// Coordinate data for sl(p,q,K) with `p > q ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateDataA {
    p: usize,
    q: usize,
    a: SuperDialgebra,
    d: LeibnizSuperalgebra,
    phi: BilinearProduct,
    form: BilinearProduct,
    rho: BilinearProduct,
}

fn expect_dims(p: &BilinearProduct, dims: (usize, usize, usize)) -> Result<(), CoreError> {
    let found = (p.left_dim(), p.right_dim(), p.out_dim());
    if found != dims {
        let (expected, found) = if found.0 != dims.0 {
            (dims.0, found.0)
        } else if found.1 != dims.1 {
            (dims.1, found.1)
        } else {
            (dims.2, found.2)
        };
        return Err(CoreError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_blocks(p: usize, q: usize) -> Result<(), CoreError> {
    if p > q && q >= 1 {
        Ok(())
    } else {
        Err(CoreError::InvalidData(format!("need p > q ≥ 1, got p = {p}, q = {q}")))
    }
}

impl CoordinateDataA {
    /// `phi: D × A → A` is `(d, a) ↦ da`, `form: A × A → D` is `⟨,⟩` and
    /// `rho: A × D → A` gives `[f⊗a, d] = f⊗rho(a, d)`.
    pub fn new(
        p: usize,
        q: usize,
        a: SuperDialgebra,
        d: LeibnizSuperalgebra,
        phi: BilinearProduct,
        form: BilinearProduct,
        rho: BilinearProduct,
    ) -> Result<Self, CoreError> {
        check_blocks(p, q)?;
        let unit = a.bar_unit().ok_or_else(|| CoreError::NotUnital(a.name().to_string()))?;
        let (na, nd) = (a.dim(), d.dim());
        expect_dims(&phi, (nd, na, na))?;
        expect_dims(&form, (na, na, nd))?;
        expect_dims(&rho, (na, nd, na))?;
        for k in 0..nd {
            if !phi.basis_vec(k, unit).is_zero() {
                return Err(CoreError::InvalidData(format!("{}·1 ≠ 0", d.space().label(k))));
            }
        }
        let opts = CheckOptions { max_violations: 1 };
        let (sa, sd) = (a.space(), d.space());
        for (name, product, l, r, o) in [
            ("action", &phi, sd, sa, sa),
            ("form", &form, sa, sa, sd),
            ("right action", &rho, sa, sd, sa),
        ] {
            if !check_graded_between(name, product, l, r, o, &opts).passed {
                return Err(CoreError::Inhomogeneous(name.to_string()));
            }
        }
        Ok(CoordinateDataA {
            p,
            q,
            a,
            d,
            phi,
            form,
            rho,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
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

    pub fn rho(&self) -> &BilinearProduct {
        &self.rho
    }

    fn inv_pq(&self) -> Scalar {
        Scalar::one() / Scalar::from_int(self.p as i64 - self.q as i64)
    }
}

/// The multiplication table on `(sl(p,q) ⊗ A) ⊕ D`:
/// `[f⊗a, g⊗b] = (−1)^{|a||g|}([f,g]⊗½a∘b + f∗g⊗½[a,b] + str(fg)⟨a,b⟩)`,
/// `[d, f⊗a] = (−1)^{|d||f|} f⊗da`, `[f⊗a, d] = f⊗rho(a,d)`, and `D`'s own
/// bracket on `D`.
pub fn build_a_graded_model(data: &CoordinateDataA) -> Result<LeibnizSuperalgebra, CoreError> {
    let t = SlTables::new(data.p, data.q)?;
    let (circ, br) = circ_and_bracket(&data.a);
    let (ng, na, nd) = (t.dim(), data.a.dim(), data.d.dim());
    let offset = ng * na;
    let n = offset + nd;
    let sa = data.a.space();
    let sd = data.d.space();
    let half = Scalar::ratio(1, 2).expect("nonzero");
    let bracket = BilinearProduct::from_fn(n, n, n, |x, y| {
        let mut out = SparseVector::zero(n);
        match (x < offset, y < offset) {
            (true, true) => {
                let (f, a) = (x / na, x % na);
                let (g, b) = (y / na, y % na);
                let s = Scalar::from_int(koszul(sa.parity(a), t.basis.parity(g)));
                let sh = &s * &half;
                add_tensor(&mut out, &sh, &t.bracket.basis(f, g), &circ.basis(a, b), na);
                add_tensor(&mut out, &sh, &t.star.basis(f, g), &br.basis(a, b), na);
                add_d(&mut out, &(&s * t.trace(f, g)), &data.form.basis(a, b), offset);
            }
            (false, true) => {
                let d = x - offset;
                let (f, a) = (y / na, y % na);
                let s = Scalar::from_int(koszul(sd.parity(d), t.basis.parity(f)));
                add_tensor(&mut out, &s, &SparseVector::unit(ng, f), &data.phi.basis(d, a), na);
            }
            (true, false) => {
                let (f, a) = (x / na, x % na);
                add_tensor(&mut out, &Scalar::one(), &SparseVector::unit(ng, f), &data.rho.basis(a, y - offset), na);
            }
            (false, false) => {
                add_d(&mut out, &Scalar::one(), &data.d.bracket().basis(x - offset, y - offset), offset);
            }
        }
        out
    });
    let name = format!("sl({},{})⊗{}⊕{}", data.p, data.q, data.a.name(), data.d.name());
    let space = model_space(&t.basis.space(), sa, sd, name);
    LeibnizSuperalgebra::new(space, bracket)
}

/// Verdicts named `associativity`, `representation`, `invariance`,
/// `id_4_7`, `id_4_8`, `id_4_14` and `id_4_15`. The representation report
/// merges four parts, in order: the Leibniz identity on `D`, the
/// representation law, and the derivation laws for ∘ and for [,].
pub fn check_thm41_conditions(data: &CoordinateDataA, opts: &CheckOptions) -> ConditionReport {
    let a = &data.a;
    let (circ, br) = circ_and_bracket(a);
    let na = a.dim();
    let sa = a.space();
    let phi = &data.phi;
    let form = &data.form;
    let rho = &data.rho;
    let c = data.inv_pq();

    let representation = crate::ViolationReport::merge(
        "representation",
        vec![
            check_leibniz(&data.d, opts),
            representation_law(&data.d, phi, sa, opts),
            derivation_law("phi-circ", &data.d, phi, sa, &circ, opts),
            derivation_law("phi-bracket", &data.d, phi, sa, &br, opts),
        ],
        opts,
    );
    let invariance = invariance_law(&data.d, phi, form, sa, opts);
    let id_4_7 = form_identity_4_7(a, form, opts);
    let id_4_8 = form_identity_4_8(a, form, opts);

    let id_4_14 = grid_check("id_4_14", &[na, na, na], opts, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        differ(
            phi.vec_basis(&form.basis(x, y), z),
            br.vec_basis(&br.basis(x, y), z).scaled(&c),
        )
    });

    let id_4_15 = grid_check("id_4_15", &[na, na, na], opts, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        differ(
            rho.basis_vec(x, &form.basis(y, z)),
            br.basis_vec(x, &br.basis(y, z)).scaled(&c),
        )
    });

    ConditionReport {
        conditions: vec![
            ("associativity".into(), check_ass(a, opts)),
            ("representation".into(), representation),
            ("invariance".into(), invariance),
            ("id_4_7".into(), id_4_7),
            ("id_4_8".into(), id_4_8),
            ("id_4_14".into(), id_4_14),
            ("id_4_15".into(), id_4_15),
        ],
    }
}

/// `x ↦ ([x,·], [·,x])` flattened column by column.
fn operator_pair(br: &BilinearProduct, x: &SparseVector) -> SparseVector {
    let n = br.left_dim();
    let mut out = SparseVector::zero(2 * n * n);
    for j in 0..n {
        for (&k, c) in br.vec_basis(x, j).iter() {
            out.add_at(j * n + k, c);
        }
        for (&k, c) in br.basis_vec(j, x).iter() {
            out.add_at(n * n + j * n + k, c);
        }
    }
    out
}

/// The model `𝔏(A) = (sl(p,q) ⊗ A) ⊕ ad_{[A,A]}` together with its data.
/// An element `x ∈ [A,A]` acts through the pair of operators
/// `([x,·], [·,x])`; `D` is the span of these pairs with basis the images
/// of a homogeneous basis of `[A,A]`, `⟨a,b⟩` is the class of
/// `[a,b]/(p−q)`, `da = [x,a]`, `rho(a, d) = [a,x]` and `[d,d']` is the
/// class of `[x,x']`.
pub fn build_canonical_la(
    a: &SuperDialgebra,
    p: usize,
    q: usize,
) -> Result<(LeibnizSuperalgebra, CoordinateDataA), CoreError> {
    check_blocks(p, q)?;
    if a.bar_unit().is_none() {
        return Err(CoreError::NotUnital(a.name().to_string()));
    }
    if !check_ass(a, &CheckOptions { max_violations: 1 }).passed {
        return Err(CoreError::NotAssociative(a.name().to_string()));
    }
    let (_, br) = circ_and_bracket(a);
    let na = a.dim();
    let sa = a.space();
    let derived: Vec<SparseVector> = br.entries().map(|(_, _, v)| v.clone()).collect();
    let w = row_reduce(na, &derived)?;
    let mut images = Subspace::zero(2 * na * na);
    let mut kept = Vec::new();
    let mut pairs = Vec::new();
    for x in w.basis() {
        let v = operator_pair(&br, x);
        if !images.contains(&v) {
            images.insert(&v)?;
            kept.push(x.clone());
            pairs.push(v);
        }
    }
    let nd = kept.len();
    let coords = |x: &SparseVector| -> SparseVector {
        if nd == 0 {
            return SparseVector::zero(0);
        }
        solve_combination(&pairs, &operator_pair(&br, x))
            .expect("dimensions agree")
            .expect("[A,A] acts through the span")
    };
    let labels: Vec<String> = kept
        .iter()
        .map(|x| format!("ad[{}]", combination_label(sa, x)))
        .collect();
    let parities: Vec<Parity> = kept
        .iter()
        .map(|x| crate::checks::homogeneous_parity(sa, x))
        .collect::<Result<_, _>>()?;
    let dspace = SuperSpace::new(format!("ad[{},{}]", a.name(), a.name()), labels, parities)?;
    let dbracket = BilinearProduct::from_fn(nd, nd, nd, |k, l| coords(&br.apply(&kept[k], &kept[l])));
    let d = LeibnizSuperalgebra::new(dspace, dbracket)?;
    let c = Scalar::one() / Scalar::from_int(p as i64 - q as i64);
    let form = BilinearProduct::from_fn(na, na, nd, |i, j| coords(&br.basis(i, j)).scaled(&c));
    let phi = BilinearProduct::from_fn(nd, na, na, |k, j| br.vec_basis(&kept[k], j));
    let rho = BilinearProduct::from_fn(na, nd, na, |i, k| br.basis_vec(i, &kept[k]));
    let data = CoordinateDataA::new(p, q, a.clone(), d, phi, form, rho)?;
    let model = build_a_graded_model(&data)?;
    Ok((model.with_name(format!("𝔏({})", a.name())), data))
}

/// A single structure constant of the data: `e_i ⊣ e_j`, `e_i ⊢ e_j`,
/// `d_i · e_j` or `⟨e_i, e_j⟩`, at output coordinate `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MutationSite {
    Left { i: usize, j: usize, k: usize },
    Right { i: usize, j: usize, k: usize },
    Phi { i: usize, j: usize, k: usize },
    Form { i: usize, j: usize, k: usize },
}

/// Every parity-compatible constant whose inputs avoid the support of the
/// bar-unit.
pub fn mutation_sites(data: &CoordinateDataA) -> Vec<MutationSite> {
    let sa = data.a.space();
    let sd = data.d.space();
    let unit = data.a.bar_unit().expect("validated");
    let free: Vec<usize> = (0..sa.dim()).filter(|&i| unit.get(i).is_none()).collect();
    let mut out = Vec::new();
    for &i in &free {
        for &j in &free {
            let p = sa.parity(i) + sa.parity(j);
            for k in (0..sa.dim()).filter(|&k| sa.parity(k) == p) {
                out.push(MutationSite::Left { i, j, k });
                out.push(MutationSite::Right { i, j, k });
            }
            for k in (0..sd.dim()).filter(|&k| sd.parity(k) == p) {
                out.push(MutationSite::Form { i, j, k });
            }
        }
    }
    for i in 0..sd.dim() {
        for &j in &free {
            let p = sd.parity(i) + sa.parity(j);
            for k in (0..sa.dim()).filter(|&k| sa.parity(k) == p) {
                out.push(MutationSite::Phi { i, j, k });
            }
        }
    }
    out.sort();
    out
}

/// Adds `delta` to one structure constant.
pub fn apply_mutation(
    data: &CoordinateDataA,
    site: MutationSite,
    delta: &Scalar,
) -> Result<CoordinateDataA, CoreError> {
    let mut left = data.a.left().clone();
    let mut right = data.a.right().clone();
    let mut phi = data.phi.clone();
    let mut form = data.form.clone();
    match site {
        MutationSite::Left { i, j, k } => left.add_coeff(i, j, k, delta),
        MutationSite::Right { i, j, k } => right.add_coeff(i, j, k, delta),
        MutationSite::Phi { i, j, k } => phi.add_coeff(i, j, k, delta),
        MutationSite::Form { i, j, k } => form.add_coeff(i, j, k, delta),
    }
    let a = SuperDialgebra::new(data.a.space().clone(), left, right, data.a.bar_unit().cloned())?;
    CoordinateDataA::new(data.p, data.q, a, data.d.clone(), phi, form, data.rho.clone())
}
