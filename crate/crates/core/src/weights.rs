//! Weight-space decompositions relative to a commuting family of
//! semisimple elements, and root-grading certificates.

use std::collections::BTreeMap;

use sdias_linalg::{Scalar, SparseVector, Subspace};

use crate::checks::{check_leibniz, is_lie};
use crate::construct::ad;
use crate::ideal::{combination_label, restrict};
use crate::{CheckOptions, CoreError, LeibnizSuperalgebra};

/// Eigenvalues `(α(h_1), ..., α(h_r))` of a simultaneous eigenvector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(pub Vec<Scalar>);

impl WeightVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn neg(&self) -> WeightVector {
        WeightVector(self.0.iter().map(|c| -c).collect())
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub weights: BTreeMap<WeightVector, Subspace>,
    pub ambient_dim: usize,
    /// Whether the weight spaces span the algebra.
    pub complete: bool,
}

impl WeightDecomposition {
    pub fn zero_weight(&self) -> WeightVector {
        let arity = self.weights.keys().next().map_or(0, |w| w.0.len());
        WeightVector(vec![Scalar::zero(); arity])
    }

    pub fn zero_space(&self) -> Subspace {
        self.weights
            .get(&self.zero_weight())
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&WeightVector, &Subspace)> {
        self.weights.iter().filter(|(w, _)| !w.is_zero())
    }

    pub fn total_dim(&self) -> usize {
        self.weights.values().map(Subspace::dim).sum()
    }
}

/// Verifies `[h_i, h_j] = 0` for all pairs.
fn check_commuting(l: &LeibnizSuperalgebra, h: &[SparseVector]) -> Result<(), CoreError> {
    for (i, x) in h.iter().enumerate() {
        if x.dim() != l.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: l.dim(),
                found: x.dim(),
            });
        }
        for (j, y) in h.iter().enumerate() {
            if !l.bracket_of(x, y).is_zero() {
                return Err(CoreError::NonCommutingCartan(format!("h{} and h{}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Simultaneous eigenspaces of `ad h` for `h ∈ H` with rational eigenvalues.
pub fn weight_decomposition(l: &LeibnizSuperalgebra, h: &[SparseVector]) -> Result<WeightDecomposition, CoreError> {
    check_commuting(l, h)?;
    let n = l.dim();
    let mut pieces: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for x in h {
        let adx = ad(l, x);
        let roots = adx.char_poly()?.rational_roots()?;
        let eigenspaces: Vec<(Scalar, Subspace)> = roots
            .into_iter()
            .map(|(lambda, _)| {
                let e = adx.shift(&lambda).expect("square").kernel();
                (lambda, e)
            })
            .collect();
        let mut next = Vec::new();
        for (w, s) in &pieces {
            for (lambda, e) in &eigenspaces {
                let cap = s.intersect(e)?;
                if !cap.is_zero() {
                    let mut w2 = w.clone();
                    w2.push(lambda.clone());
                    next.push((w2, cap));
                }
            }
        }
        pieces = next;
    }
    let weights: BTreeMap<WeightVector, Subspace> = pieces
        .into_iter()
        .map(|(w, s)| (WeightVector(w), s))
        .collect();
    let total: usize = weights.values().map(Subspace::dim).sum();
    Ok(WeightDecomposition {
        weights,
        ambient_dim: n,
        complete: total == n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingFailure {
    /// Which condition of the definition failed: 1, 2 or 3.
    pub condition: u8,
    pub message: String,
    pub witnesses: Vec<SparseVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingCertificate {
    pub is_graded: bool,
    pub failures: Vec<GradingFailure>,
    pub root_count: usize,
    pub zero_space_dim: usize,
    /// Dimension of each nonzero weight space, in weight order.
    pub root_space_dims: Vec<(WeightVector, usize)>,
    pub decomposition: WeightDecomposition,
}

impl GradingCertificate {
    pub fn failed_conditions(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.failures.iter().map(|f| f.condition).collect();
        c.dedup();
        c
    }
}

/// Certificate for the three conditions of a root grading of `l` by the
/// grading subalgebra `g_embed` with Cartan elements `h`.
pub fn check_delta_graded(
    l: &LeibnizSuperalgebra,
    g_embed: &Subspace,
    h: &[SparseVector],
) -> Result<GradingCertificate, CoreError> {
    for (i, x) in h.iter().enumerate() {
        if !g_embed.contains(x) {
            return Err(CoreError::CartanOutsideSubalgebra(i));
        }
    }
    let opts = CheckOptions { max_violations: 3 };
    let mut failures = Vec::new();

    // (1) g is a Lie subsuperalgebra; it is also required to be perfect.
    let mut g_weights = None;
    match restrict(l, g_embed) {
        Err(e) => failures.push(GradingFailure {
            condition: 1,
            message: format!("grading subalgebra: {e}"),
            witnesses: Vec::new(),
        }),
        Ok(g) => {
            let lr = check_leibniz(&g.algebra, &opts);
            let lie = is_lie(&g.algebra, &opts);
            if !lr.passed || !lie.passed {
                failures.push(GradingFailure {
                    condition: 1,
                    message: "grading subalgebra is not a Lie superalgebra".into(),
                    witnesses: lie.violations.iter().map(|v| v.lhs.clone()).collect(),
                });
            }
            let derived = crate::ideal::derived_subalgebra(&g.algebra);
            if derived.dim() != g.algebra.dim() {
                failures.push(GradingFailure {
                    condition: 1,
                    message: format!(
                        "grading subalgebra is not perfect: [g,g] has dimension {} < {}",
                        derived.dim(),
                        g.algebra.dim()
                    ),
                    witnesses: Vec::new(),
                });
            }
            let hg: Vec<SparseVector> = h
                .iter()
                .map(|x| g.coordinates(x).expect("h lies in g"))
                .collect();
            g_weights = Some(weight_decomposition(&g.algebra, &hg)?);
        }
    }

    // (2) complete decomposition with nonzero weights among the roots of g.
    let dec = weight_decomposition(l, h)?;
    if !dec.complete {
        failures.push(GradingFailure {
            condition: 2,
            message: format!(
                "weight spaces span {} of {} dimensions",
                dec.total_dim(),
                dec.ambient_dim
            ),
            witnesses: Vec::new(),
        });
    }
    if let Some(gw) = &g_weights {
        for (w, s) in dec.nonzero() {
            if !gw.weights.contains_key(w) {
                failures.push(GradingFailure {
                    condition: 2,
                    message: format!("weight {w} is not a root of the grading subalgebra"),
                    witnesses: s.basis().to_vec(),
                });
            }
        }
    }

    // (3) L_0 = Σ [L_α, L_{−α}].
    let zero = dec.zero_space();
    let mut sum = Subspace::zero(l.dim());
    for (w, s) in dec.nonzero() {
        if let Some(t) = dec.weights.get(&w.neg()) {
            for x in s.basis() {
                for y in t.basis() {
                    sum.insert(&l.bracket_of(x, y))?;
                }
            }
        }
    }
    if sum != zero {
        let missing: Vec<SparseVector> = zero
            .basis()
            .iter()
            .filter(|v| !sum.contains(v))
            .cloned()
            .collect();
        failures.push(GradingFailure {
            condition: 3,
            message: format!(
                "zero weight space has dimension {} but brackets of opposite root spaces span {}; missing {}",
                zero.dim(),
                sum.dim(),
                missing
                    .iter()
                    .map(|v| combination_label(l.space(), v))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            witnesses: missing,
        });
    }

    failures.sort_by_key(|f| f.condition);
    let root_space_dims: Vec<(WeightVector, usize)> =
        dec.nonzero().map(|(w, s)| (w.clone(), s.dim())).collect();
    Ok(GradingCertificate {
        is_graded: failures.is_empty(),
        root_count: root_space_dims.len(),
        zero_space_dim: zero.dim(),
        root_space_dims,
        failures,
        decomposition: dec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matrix::{build_gl, build_sl, cartan_of_sl};
    use sdias_linalg::row_reduce;

    #[test]
    fn sl2_weights() {
        let l = catalog::sl2();
        let dec = weight_decomposition(&l, &[SparseVector::unit(3, 2)]).unwrap();
        let ws: Vec<_> = dec.weights.keys().map(|w| w.0[0].clone()).collect();
        assert_eq!(ws, vec![Scalar::from_int(-2), Scalar::zero(), Scalar::from_int(2)]);
        assert!(dec.complete);
        let dec0 = weight_decomposition(&l, &[SparseVector::zero(3)]).unwrap();
        assert_eq!(dec0.weights.len(), 1);
        assert_eq!(dec0.zero_space().dim(), 3);
    }

    #[test]
    fn non_commuting_rejected() {
        let l = catalog::sl2();
        let r = weight_decomposition(&l, &[SparseVector::unit(3, 0), SparseVector::unit(3, 1)]);
        assert!(matches!(r, Err(CoreError::NonCommutingCartan(_))));
    }

    #[test]
    fn gl21_fails_only_condition_three() {
        let gl = build_gl(2, 1, &catalog::field()).unwrap();
        let hs = cartan_of_sl(2, 1).unwrap();
        let sl = crate::ideal::derived_subalgebra(&gl);
        let cert = check_delta_graded(&gl, &sl, &hs).unwrap();
        assert_eq!(cert.failed_conditions(), vec![3]);
        assert_eq!(cert.root_count, 6);
        assert_eq!(cert.zero_space_dim, 3);
    }

    #[test]
    fn sl21_is_graded() {
        let (_, sl) = build_sl(2, 1, &catalog::field()).unwrap();
        let hs: Vec<_> = cartan_of_sl(2, 1)
            .unwrap()
            .iter()
            .map(|h| sl.coordinates(h).unwrap())
            .collect();
        let full = Subspace::full(sl.algebra.dim());
        let cert = check_delta_graded(&sl.algebra, &full, &hs).unwrap();
        assert!(cert.is_graded, "{:?}", cert.failures);
        assert_eq!(cert.root_count, 6);
        assert!(cert.root_space_dims.iter().all(|(_, d)| *d == 1));
        assert_eq!(cert.zero_space_dim, 2);
        let outside = row_reduce(8, &[SparseVector::unit(8, 0)]).unwrap();
        assert!(matches!(
            check_delta_graded(&sl.algebra, &outside, &hs),
            Err(CoreError::CartanOutsideSubalgebra(0))
        ));
    }
}
