//! Reading and writing algebra files, maps, subspaces and data bundles.
//!
//! Every file is UTF-8 JSON with a `kind` field. Tables are lists of
//! `[i_label, j_label, {k_label: "p/q"}]` entries; omitted pairs are zero.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sdias_core::checks::{check_graded_dialgebra, check_graded_leibniz};
use sdias_core::linalg::{LinearMap, Scalar, SparseVector};
use sdias_core::matrix::{SlBasis, SteinbergMap};
use sdias_core::models::{supertrace_form, CoordinateDataA, CoordinateDataK};
use sdias_core::{
    BilinearProduct, CheckOptions, CoreError, LeibnizSuperalgebra, Parity, SuperDialgebra, SuperSpace,
    ViolationReport,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

type Result<T> = std::result::Result<T, FileError>;

/// A parsed algebra file.
#[derive(Clone, Debug)]
pub enum Algebra {
    Dialgebra(SuperDialgebra),
    Leibniz(LeibnizSuperalgebra),
}

impl Algebra {
    pub fn space(&self) -> &SuperSpace {
        match self {
            Algebra::Dialgebra(d) => d.space(),
            Algebra::Leibniz(l) => l.space(),
        }
    }
}

/// An algebra together with the parity check of its products.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: Algebra,
    pub grading: ViolationReport,
}

struct Source {
    path: String,
    text: String,
}

impl Source {
    fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Source {
            path: path.display().to_string(),
            text,
        })
    }

    fn parse<'a, T: Deserialize<'a>>(&'a self) -> Result<T> {
        serde_json::from_str(&self.text).map_err(|e| FileError::Syntax {
            path: self.path.clone(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    fn invalid(&self, message: impl Into<String>) -> FileError {
        FileError::Invalid {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    fn core(&self, context: &str) -> impl Fn(CoreError) -> FileError + '_ {
        let context = context.to_string();
        move |e| self.invalid(format!("{context}: {e}"))
    }

    fn kind(&self, expected: &[&str]) -> Result<String> {
        #[derive(Deserialize)]
        struct Head {
            kind: String,
        }
        let head: Head = self.parse()?;
        if !expected.contains(&head.kind.as_str()) {
            return Err(self.invalid(format!(
                "kind {:?} where {} was expected",
                head.kind,
                expected.join(" or ")
            )));
        }
        Ok(head.kind)
    }

    fn relative(&self, file: &str) -> PathBuf {
        Path::new(&self.path)
            .parent()
            .unwrap_or_else(|| Path::new(""))
            .join(file)
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}

type Entry = (String, String, BTreeMap<String, String>);
type Combination = BTreeMap<String, String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    label: String,
    parity: u8,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawUnit {
    Label(String),
    Combination(Combination),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[allow(dead_code)]
    kind: String,
    name: String,
    basis: Vec<RawBasis>,
    #[serde(default)]
    unit: Option<RawUnit>,
    #[serde(default)]
    products: BTreeMap<String, Vec<Entry>>,
}

fn scalar(src: &Source, s: &str, context: &str) -> Result<Scalar> {
    s.parse::<Scalar>()
        .map_err(|e| src.invalid(format!("{context}: {e}")))
}

fn index(src: &Source, space: &SuperSpace, label: &str, context: &str) -> Result<usize> {
    space
        .index_of(label)
        .ok_or_else(|| src.invalid(format!("{context}: unknown label {label:?}")))
}

fn combination(src: &Source, space: &SuperSpace, c: &Combination, context: &str) -> Result<SparseVector> {
    let mut v = SparseVector::zero(space.dim());
    for (label, s) in c {
        let k = index(src, space, label, context)?;
        v.set(k, scalar(src, s, context)?);
    }
    Ok(v)
}

fn table(
    src: &Source,
    name: &str,
    entries: &[Entry],
    (left, right, out): (&SuperSpace, &SuperSpace, &SuperSpace),
) -> Result<BilinearProduct> {
    let mut p = BilinearProduct::zero(left.dim(), right.dim(), out.dim());
    let mut seen = std::collections::BTreeSet::new();
    for (n, (a, b, c)) in entries.iter().enumerate() {
        let context = format!("{name} entry {}", n + 1);
        let i = index(src, left, a, &context)?;
        let j = index(src, right, b, &context)?;
        if !seen.insert((i, j)) {
            return Err(src.invalid(format!("{context}: repeated pair ({a}, {b})")));
        }
        let v = combination(src, out, c, &context)?;
        p.set(i, j, v).map_err(src.core(&context))?;
    }
    Ok(p)
}

fn space_of(src: &Source, name: &str, basis: &[RawBasis]) -> Result<SuperSpace> {
    if basis.is_empty() {
        return Err(src.invalid(CoreError::EmptyCarrier.to_string()));
    }
    let parities = basis
        .iter()
        .map(|b| Parity::from_bit(b.parity))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(src.core("basis"))?;
    let labels = basis.iter().map(|b| b.label.clone()).collect();
    SuperSpace::new(name, labels, parities).map_err(src.core("basis"))
}

fn one_table<'a>(src: &Source, products: &'a BTreeMap<String, Vec<Entry>>, allowed: &[&str]) -> Result<()> {
    if let Some(k) = products.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(src.invalid(format!("unexpected product table {k:?}")));
    }
    Ok(())
}

fn algebra_from(src: &Source) -> Result<Loaded> {
    let kind = src.kind(&["dialgebra", "leibniz"])?;
    let raw: RawAlgebra = src.parse()?;
    let space = space_of(src, &raw.name, &raw.basis)?;
    let sp = (&space, &space, &space);
    let empty = Vec::new();
    let opts = CheckOptions::default();
    if kind == "dialgebra" {
        one_table(src, &raw.products, &["left", "right"])?;
        let left = table(src, "left", raw.products.get("left").unwrap_or(&empty), sp)?;
        let right = table(src, "right", raw.products.get("right").unwrap_or(&empty), sp)?;
        let unit = match &raw.unit {
            None => None,
            Some(RawUnit::Label(l)) => Some(SparseVector::unit(space.dim(), index(src, &space, l, "unit")?)),
            Some(RawUnit::Combination(c)) => Some(combination(src, &space, c, "unit")?),
        };
        let d = SuperDialgebra::new(space, left, right, unit).map_err(src.core("dialgebra"))?;
        let grading = check_graded_dialgebra(&d, &opts);
        Ok(Loaded {
            algebra: Algebra::Dialgebra(d),
            grading,
        })
    } else {
        if raw.unit.is_some() {
            return Err(src.invalid("a Leibniz superalgebra file has no unit"));
        }
        one_table(src, &raw.products, &["bracket"])?;
        let bracket = table(src, "bracket", raw.products.get("bracket").unwrap_or(&empty), sp)?;
        let l = LeibnizSuperalgebra::new(space, bracket).map_err(src.core("bracket"))?;
        let grading = check_graded_leibniz(&l, &opts);
        Ok(Loaded {
            algebra: Algebra::Leibniz(l),
            grading,
        })
    }
}

/// Reads an algebra file.
pub fn parse_algebra(path: &Path) -> Result<Loaded> {
    algebra_from(&Source::read(path)?)
}

/// Parses algebra-file text; `origin` is used in error messages.
pub fn parse_algebra_str(text: &str, origin: &str) -> Result<Loaded> {
    algebra_from(&Source {
        path: origin.to_string(),
        text: text.to_string(),
    })
}

pub fn parse_dialgebra(path: &Path) -> Result<SuperDialgebra> {
    match parse_algebra(path)?.algebra {
        Algebra::Dialgebra(d) => Ok(d),
        Algebra::Leibniz(_) => Err(FileError::Invalid {
            path: path.display().to_string(),
            message: "a dialgebra was expected".into(),
        }),
    }
}

pub fn parse_leibniz(path: &Path) -> Result<LeibnizSuperalgebra> {
    match parse_algebra(path)?.algebra {
        Algebra::Leibniz(l) => Ok(l),
        Algebra::Dialgebra(_) => Err(FileError::Invalid {
            path: path.display().to_string(),
            message: "a Leibniz superalgebra was expected".into(),
        }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    images: Vec<(String, Combination)>,
}

/// A linear endomorphism of `space` given by the images of basis labels.
pub fn parse_map(path: &Path, space: &SuperSpace) -> Result<LinearMap> {
    let src = Source::read(path)?;
    src.kind(&["map"])?;
    let raw: RawMap = src.parse()?;
    let mut cols = vec![SparseVector::zero(space.dim()); space.dim()];
    for (n, (label, image)) in raw.images.iter().enumerate() {
        let context = format!("image {}", n + 1);
        let j = index(&src, space, label, &context)?;
        cols[j] = combination(&src, space, image, &context)?;
    }
    LinearMap::from_columns(space.dim(), cols).map_err(|e| src.invalid(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    vectors: Vec<(String, Combination)>,
}

/// Named vectors of `space`.
pub fn parse_subspace(path: &Path, space: &SuperSpace) -> Result<Vec<(String, SparseVector)>> {
    let src = Source::read(path)?;
    src.kind(&["subspace"])?;
    let raw: RawSubspace = src.parse()?;
    raw.vectors
        .iter()
        .enumerate()
        .map(|(n, (name, c))| Ok((name.clone(), combination(&src, space, c, &format!("vector {}", n + 1))?)))
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSteinberg {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    coefficients: String,
    images: Vec<Entry>,
}

/// A Steinberg map file: images of `E_ij(a)` for `i ≠ j`, written as
/// `["E12", a_label, {label: scalar}]`, plus the coefficient dialgebra.
pub fn parse_steinberg(
    path: &Path,
    m: usize,
    n: usize,
    target: &SuperSpace,
) -> Result<(SuperDialgebra, SteinbergMap)> {
    let src = Source::read(path)?;
    src.kind(&["steinberg-map"])?;
    let raw: RawSteinberg = src.parse()?;
    let d = parse_dialgebra(&src.relative(&raw.coefficients))?;
    let size = m + n;
    let unit_label = |s: &str| -> Option<(usize, usize)> {
        let digits = s.strip_prefix('E')?;
        let mut chars = digits.chars();
        let i = chars.next()?.to_digit(10)? as usize;
        let j = chars.next()?.to_digit(10)? as usize;
        (chars.next().is_none() && (1..=size).contains(&i) && (1..=size).contains(&j) && i != j)
            .then(|| (i - 1, j - 1))
    };
    let mut images = BTreeMap::new();
    for (k, (u, a, c)) in raw.images.iter().enumerate() {
        let context = format!("image {}", k + 1);
        let (i, j) = unit_label(u)
            .ok_or_else(|| src.invalid(format!("{context}: {u:?} is not an off-diagonal matrix unit")))?;
        let ai = index(&src, d.space(), a, &context)?;
        if images.insert((i, j, ai), combination(&src, target, c, &context)?).is_some() {
            return Err(src.invalid(format!("{context}: repeated image")));
        }
    }
    let shape = sdias_core::matrix::Shape::new(m, n);
    Ok((
        d.clone(),
        SteinbergMap {
            shape,
            dim_d: d.dim(),
            images,
        },
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundleA {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    p: usize,
    q: usize,
    a: String,
    #[serde(default)]
    d: Option<String>,
    #[serde(default)]
    phi: Vec<Entry>,
    #[serde(default)]
    form: Vec<Entry>,
    #[serde(default)]
    rho: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawKappa {
    Named(String),
    Table(Vec<(String, String, String)>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundleK {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    #[serde(default)]
    g: Option<String>,
    #[serde(default)]
    sl: Option<(usize, usize)>,
    kappa: RawKappa,
    a: String,
    #[serde(default)]
    d: Option<String>,
    #[serde(default)]
    phi: Vec<Entry>,
    #[serde(default)]
    form: Vec<Entry>,
    #[serde(default)]
    central: bool,
}

fn optional_d(src: &Source, d: &Option<String>) -> Result<LeibnizSuperalgebra> {
    match d {
        Some(f) => parse_leibniz(&src.relative(f)),
        None => LeibnizSuperalgebra::new(SuperSpace::empty("0"), BilinearProduct::square(0)).map_err(src.core("d")),
    }
}

/// Coordinate data for the sl(p,q) model: component files are resolved
/// relative to the bundle.
pub fn parse_bundle_a(path: &Path) -> Result<CoordinateDataA> {
    let src = Source::read(path)?;
    src.kind(&["bundle-a"])?;
    let raw: RawBundleA = src.parse()?;
    let a = parse_dialgebra(&src.relative(&raw.a))?;
    let d = optional_d(&src, &raw.d)?;
    let (sa, sd) = (a.space(), d.space());
    let phi = table(&src, "phi", &raw.phi, (sd, sa, sa))?;
    let form = table(&src, "form", &raw.form, (sa, sa, sd))?;
    let rho = table(&src, "rho", &raw.rho, (sa, sd, sa))?;
    CoordinateDataA::new(raw.p, raw.q, a, d, phi, form, rho).map_err(src.core("bundle"))
}

/// Coordinate data for the κ model. `g` is a Leibniz file, or `sl: [p, q]`
/// selects sl(p,q); `kappa` is `"supertrace"` (with `sl`) or a list of
/// `[x, y, "scalar"]` entries.
pub fn parse_bundle_k(path: &Path) -> Result<CoordinateDataK> {
    let src = Source::read(path)?;
    src.kind(&["bundle-kappa"])?;
    let raw: RawBundleK = src.parse()?;
    let (g, sl_basis) = match (&raw.g, raw.sl) {
        (Some(f), None) => (parse_leibniz(&src.relative(f))?, None),
        (None, Some((p, q))) => {
            let b = SlBasis::new(p, q).map_err(src.core("sl"))?;
            (b.lie_algebra(), Some(b))
        }
        _ => return Err(src.invalid("exactly one of \"g\" and \"sl\" is required")),
    };
    let kappa = match (&raw.kappa, &sl_basis) {
        (RawKappa::Named(s), Some(b)) if s == "supertrace" => supertrace_form(b),
        (RawKappa::Named(s), _) => return Err(src.invalid(format!("unknown form {s:?}"))),
        (RawKappa::Table(rows), _) => {
            let sg = g.space();
            let mut k = BilinearProduct::zero(sg.dim(), sg.dim(), 1);
            for (n, (x, y, c)) in rows.iter().enumerate() {
                let context = format!("kappa entry {}", n + 1);
                let i = index(&src, sg, x, &context)?;
                let j = index(&src, sg, y, &context)?;
                let v = SparseVector::unit(1, 0).scaled(&scalar(&src, c, &context)?);
                k.set(i, j, v).map_err(src.core(&context))?;
            }
            k
        }
    };
    let a = parse_dialgebra(&src.relative(&raw.a))?;
    let d = optional_d(&src, &raw.d)?;
    let (sa, sd) = (a.space(), d.space());
    let phi = table(&src, "phi", &raw.phi, (sd, sa, sa))?;
    let form = table(&src, "form", &raw.form, (sa, sa, sd))?;
    CoordinateDataK::new(g, kappa, a, d, phi, form, raw.central).map_err(src.core("bundle"))
}

/// `{label: "p/q"}` for the nonzero coordinates of `v`.
pub fn combination_json(space: &SuperSpace, v: &SparseVector) -> Value {
    let mut m = Map::new();
    for (&k, c) in v.iter() {
        m.insert(space.label(k).to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

fn table_json(p: &BilinearProduct, (left, right, out): (&SuperSpace, &SuperSpace, &SuperSpace)) -> Value {
    let mut entries: Vec<_> = p.entries().filter(|(_, _, v)| !v.is_zero()).collect();
    entries.sort_by_key(|&(i, j, _)| (i, j));
    Value::Array(
        entries
            .into_iter()
            .map(|(i, j, v)| json!([left.label(i), right.label(j), combination_json(out, v)]))
            .collect(),
    )
}

fn basis_json(space: &SuperSpace) -> Value {
    Value::Array(
        (0..space.dim())
            .map(|i| json!({"label": space.label(i), "parity": space.parity(i).bit()}))
            .collect(),
    )
}

/// The algebra-file document of `alg`.
pub fn algebra_json(alg: &Algebra) -> Value {
    let space = alg.space();
    let sp = (space, space, space);
    let mut doc = Map::new();
    doc.insert("name".into(), Value::String(space.name().to_string()));
    doc.insert("basis".into(), basis_json(space));
    let mut products = Map::new();
    match alg {
        Algebra::Dialgebra(d) => {
            doc.insert("kind".into(), json!("dialgebra"));
            products.insert("left".into(), table_json(d.left(), sp));
            products.insert("right".into(), table_json(d.right(), sp));
            if let Some(u) = d.bar_unit() {
                let unit = match u.iter().collect::<Vec<_>>().as_slice() {
                    [(&k, c)] if c.is_one() => Value::String(space.label(k).to_string()),
                    _ => combination_json(space, u),
                };
                doc.insert("unit".into(), unit);
            }
        }
        Algebra::Leibniz(l) => {
            doc.insert("kind".into(), json!("leibniz"));
            products.insert("bracket".into(), table_json(l.bracket(), sp));
        }
    }
    doc.insert("products".into(), Value::Object(products));
    Value::Object(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdias_core::catalog;

    fn round_trip(alg: Algebra) {
        let text = serde_json::to_string_pretty(&algebra_json(&alg)).unwrap();
        let back = parse_algebra_str(&text, "mem").unwrap();
        assert!(back.grading.passed);
        match (alg, back.algebra) {
            (Algebra::Dialgebra(a), Algebra::Dialgebra(b)) => assert_eq!(a, b),
            (Algebra::Leibniz(a), Algebra::Leibniz(b)) => assert_eq!(a, b),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn catalog_round_trips() {
        for d in catalog::dialgebras() {
            round_trip(Algebra::Dialgebra(d));
        }
        round_trip(Algebra::Leibniz(catalog::sl2()));
    }

    #[test]
    fn trivial_algebra_loads() {
        let text = r#"{"kind":"dialgebra","name":"k","basis":[{"label":"e","parity":0}]}"#;
        let l = parse_algebra_str(text, "mem").unwrap();
        assert_eq!(l.algebra.space().dim(), 1);
    }

    fn err(text: &str) -> String {
        parse_algebra_str(text, "mem").unwrap_err().to_string()
    }

    #[test]
    fn rejections() {
        let zero_den = r#"{"kind":"leibniz","name":"x","basis":[{"label":"e","parity":0}],
            "products":{"bracket":[["e","e",{"e":"1/0"}]]}}"#;
        assert!(err(zero_den).contains("zero denominator"));
        let decimal = zero_den.replace("1/0", "0.5");
        assert!(err(&decimal).contains("malformed rational"));
        let unknown = zero_den.replace("{\"e\":\"1/0\"}", "{\"f\":\"1\"}");
        assert!(err(&unknown).contains("unknown label \"f\""));
        let dup = r#"{"kind":"leibniz","name":"x","basis":[{"label":"e","parity":0},{"label":"e","parity":1}]}"#;
        assert!(err(dup).contains("duplicate basis label"));
        let odd_unit = r#"{"kind":"dialgebra","name":"x","basis":[{"label":"t","parity":1}],"unit":"t"}"#;
        assert!(err(odd_unit).contains("bar-unit must be even"));
        let bad_parity = r#"{"kind":"leibniz","name":"x","basis":[{"label":"e","parity":2}]}"#;
        assert!(err(bad_parity).contains("parity must be 0 or 1"));
        assert!(err(r#"{"kind":"group","name":"x","basis":[]}"#).contains("kind \"group\""));
        assert!(err(r#"{"kind":"leibniz","name":"x","basis":[]}"#).contains("zero-dimensional"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\"kind\": \"leibniz\",\n \"name\": \"x\",\n \"basis\": [ {\"label\": \"e\", \"parity\": 0 ]\n}";
        match parse_algebra_str(text, "mem").unwrap_err() {
            FileError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 30);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn non_graded_products_are_reported() {
        let text = r#"{"kind":"leibniz","name":"x","basis":[{"label":"e","parity":0},{"label":"t","parity":1}],
            "products":{"bracket":[["e","e",{"t":"1"}]]}}"#;
        let l = parse_algebra_str(text, "mem").unwrap();
        assert!(!l.grading.passed);
    }
}
