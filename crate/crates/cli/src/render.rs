//! Structured (JSON) and text renderings of reports.

use std::fmt::Write as _;

use sdias_core::ideal::combination_label;
use sdias_core::linalg::SparseVector;
use sdias_core::models::ConditionReport;
use sdias_core::weights::{GradingCertificate, WeightDecomposition, WeightVector};
use sdias_core::{SuperSpace, ViolationReport};
use serde_json::{json, Map, Value};

use crate::files::combination_json;

/// Index-keyed coordinates, used when the ambient space is not known.
fn raw_json(v: &SparseVector) -> Value {
    let mut m = Map::new();
    for (&k, c) in v.iter() {
        m.insert(format!("#{k}"), Value::String(c.to_string()));
    }
    Value::Object(m)
}

fn vector_json(space: Option<&SuperSpace>, v: &SparseVector) -> Value {
    match space {
        Some(s) if s.dim() == v.dim() => combination_json(s, v),
        _ => raw_json(v),
    }
}

fn vector_text(space: Option<&SuperSpace>, v: &SparseVector) -> String {
    match space {
        Some(s) if s.dim() == v.dim() => combination_label(s, v),
        _ => {
            let parts: Vec<String> = v.iter().map(|(k, c)| format!("{c}*#{k}")).collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        }
    }
}

/// How to name the parts of a violation: `space` is the space of `lhs` and
/// `rhs`; with `basis_from = Some(k)` the indices from position `k` on are
/// basis indices of `space`.
#[derive(Clone, Copy, Default)]
pub struct Labeling<'a> {
    pub space: Option<&'a SuperSpace>,
    pub basis_from: Option<usize>,
}

impl<'a> Labeling<'a> {
    pub fn basis(space: &'a SuperSpace, basis_from: usize) -> Self {
        Labeling {
            space: Some(space),
            basis_from: Some(basis_from),
        }
    }

    pub fn vectors(space: &'a SuperSpace) -> Self {
        Labeling {
            space: Some(space),
            basis_from: None,
        }
    }

    fn labels(&self, indices: &[usize]) -> Option<Vec<String>> {
        let (s, k) = (self.space?, self.basis_from?);
        let ok = indices.len() >= k && indices[k..].iter().all(|&i| i < s.dim());
        ok.then(|| {
            indices
                .iter()
                .enumerate()
                .map(|(n, &i)| if n < k { i.to_string() } else { s.label(i).to_string() })
                .collect()
        })
    }
}

pub fn violation_report_json(r: &ViolationReport, how: Labeling) -> Value {
    let space = how.space;
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            let mut o = Map::new();
            o.insert("indices".into(), json!(v.indices));
            if let Some(labels) = how.labels(&v.indices) {
                o.insert("labels".into(), json!(labels));
            }
            o.insert("lhs".into(), vector_json(space, &v.lhs));
            o.insert("rhs".into(), vector_json(space, &v.rhs));
            Value::Object(o)
        })
        .collect();
    json!({
        "identity": r.identity,
        "passed": r.passed,
        "checked": r.checked,
        "total_violations": r.total_violations,
        "violations": violations,
    })
}

pub fn violation_report_text(r: &ViolationReport, how: Labeling) -> String {
    let space = how.space;
    let mut out = String::new();
    let verdict = if r.passed { "holds" } else { "fails" };
    let _ = writeln!(
        out,
        "{}: {verdict} ({} instances checked, {} violations)",
        r.identity, r.checked, r.total_violations
    );
    for v in &r.violations {
        let at = match how.labels(&v.indices) {
            Some(l) => l.join(", "),
            None => v.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(", "),
        };
        let _ = writeln!(
            out,
            "  at ({at}): lhs = {}, rhs = {}",
            vector_text(space, &v.lhs),
            vector_text(space, &v.rhs)
        );
    }
    if r.violations.len() < r.total_violations {
        let _ = writeln!(out, "  ... {} more", r.total_violations - r.violations.len());
    }
    out
}

fn weight_json(w: &WeightVector) -> Value {
    Value::Array(w.0.iter().map(|c| Value::String(c.to_string())).collect())
}

fn weights_json(dec: &WeightDecomposition, space: &SuperSpace) -> Vec<Value> {
    dec.weights
        .iter()
        .map(|(w, s)| {
            let basis: Vec<String> = s.basis().iter().map(|v| combination_label(space, v)).collect();
            json!({"weight": weight_json(w), "dim": s.dim(), "basis": basis})
        })
        .collect()
}

pub fn decomposition_json(dec: &WeightDecomposition, space: &SuperSpace) -> Value {
    json!({
        "complete": dec.complete,
        "ambient_dim": dec.ambient_dim,
        "nonzero_weights": dec.nonzero().count(),
        "zero_space_dim": dec.zero_space().dim(),
        "weights": weights_json(dec, space),
    })
}

pub fn decomposition_text(dec: &WeightDecomposition, space: &SuperSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} nonzero weights, zero space of dimension {}, {}",
        dec.nonzero().count(),
        dec.zero_space().dim(),
        if dec.complete { "complete" } else { "incomplete" }
    );
    for (w, s) in &dec.weights {
        let basis: Vec<String> = s.basis().iter().map(|v| combination_label(space, v)).collect();
        let _ = writeln!(out, "  {w}: dim {} [{}]", s.dim(), basis.join(", "));
    }
    out
}

pub fn certificate_json(cert: &GradingCertificate, space: &SuperSpace) -> Value {
    let failures: Vec<Value> = cert
        .failures
        .iter()
        .map(|f| {
            let w: Vec<Value> = f.witnesses.iter().map(|v| vector_json(Some(space), v)).collect();
            json!({"condition": f.condition, "message": f.message, "witnesses": w})
        })
        .collect();
    json!({
        "is_graded": cert.is_graded,
        "failed_conditions": cert.failed_conditions(),
        "failures": failures,
        "root_count": cert.root_count,
        "zero_space_dim": cert.zero_space_dim,
        "root_space_dims": cert
            .root_space_dims
            .iter()
            .map(|(w, d)| json!({"weight": weight_json(w), "dim": d}))
            .collect::<Vec<_>>(),
        "decomposition": decomposition_json(&cert.decomposition, space),
    })
}

pub fn certificate_text(cert: &GradingCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} roots, zero space of dimension {}",
        if cert.is_graded { "graded" } else { "not graded" },
        cert.root_count,
        cert.zero_space_dim
    );
    for f in &cert.failures {
        let _ = writeln!(out, "  condition {} fails: {}", f.condition, f.message);
    }
    out
}

pub fn conditions_json(r: &ConditionReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|(name, rep)| json!({"name": name, "report": violation_report_json(rep, Labeling::default())}))
        .collect();
    json!({"passed": r.passed(), "failed": r.failed(), "conditions": conditions})
}

pub fn conditions_text(r: &ConditionReport) -> String {
    let mut out = String::new();
    for (name, rep) in &r.conditions {
        let _ = writeln!(
            out,
            "{name}: {} ({} violations of {} checked)",
            if rep.passed { "holds" } else { "fails" },
            rep.total_violations,
            rep.checked
        );
    }
    out
}
