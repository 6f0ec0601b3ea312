//! JSON bundles: rings, named complexes and maps, command arguments.
//!
//! Scalars are strings in the [`crate::linalg::text`] grammar and degrees are
//! object keys holding integers, so `{"-1": ...}` is a valid degree map.
//! Every rejection carries a JSON pointer into the offending document.

mod command;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

pub use command::{run, Command, Flags, Outcome};

use crate::complex::{Complex, GradedMap};
use crate::error::Error;
use crate::linalg::{text, Matrix, RingKind, RingSpec};
use crate::simplicial::{AutWitness, G2Triangle};

/// Largest rank accepted in a bundle.
pub const MAX_RANK: usize = 64;
/// Largest number of degrees in a complex window, and largest map degree.
pub const MAX_SPAN: i64 = 64;

/// A rejected bundle. `path` is a JSON pointer (`""` for the whole document).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("validation error at `{path}`: {reason}")]
    Validation { path: String, reason: String },
}

impl InputError {
    pub fn path(&self) -> &str {
        match self {
            InputError::Parse { path, .. } | InputError::Validation { path, .. } => path,
        }
    }

    fn invalid(path: impl Into<String>, reason: impl ToString) -> Self {
        InputError::Validation {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

type Parsed<T> = std::result::Result<T, InputError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
enum RingJson {
    Rationals,
    PrimeField { p: u64 },
    RationalFunctions { base: Box<RingJson>, vars: Vec<String> },
    Polynomial { base: Box<RingJson>, vars: Vec<String> },
    DualNumbers { base: Box<RingJson> },
}

type MatrixJson = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    ranks: BTreeMap<i64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    differentials: BTreeMap<i64, MatrixJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    source: String,
    target: String,
    #[serde(default)]
    degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ring: Option<RingJson>,
    #[serde(default)]
    components: BTreeMap<i64, MatrixJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
enum WitnessKindJson {
    G1Vertex,
    G1Edge,
    G2Vertex,
    G2Edge,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessJson {
    kind: WitnessKindJson,
    complex: String,
    components: BTreeMap<String, BTreeMap<i64, MatrixJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleJson {
    ring: RingJson,
    #[serde(default)]
    complexes: BTreeMap<String, ComplexJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    maps: BTreeMap<String, MapJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    args: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    assert_chain_map: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

/// A named map together with the names of its endpoints in the bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: GradedMap,
}

/// A witness on the named complex of a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedWitness {
    pub complex: String,
    pub witness: AutWitness,
}

/// A validated bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub ring: RingSpec,
    pub complexes: BTreeMap<String, Complex>,
    pub maps: BTreeMap<String, NamedMap>,
    /// Which named object plays which role in a command, e.g. `"source": "P"`.
    pub args: BTreeMap<String, String>,
    pub assert_chain_map: bool,
    pub witness: Option<NamedWitness>,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn pointer(segments: &[&str]) -> String {
    segments.iter().map(|s| format!("/{}", escape(s))).collect()
}

fn join(base: &str, token: impl ToString) -> String {
    format!("{base}/{}", escape(&token.to_string()))
}

fn ring_from_json(j: &RingJson, path: &str) -> Parsed<RingSpec> {
    let base = |b: &RingJson| ring_from_json(b, &join(path, "base"));
    let r = match j {
        RingJson::Rationals => Ok(RingSpec::rationals()),
        RingJson::PrimeField { p } => RingSpec::prime_field(*p),
        RingJson::RationalFunctions { base: b, vars } => RingSpec::rational_functions(base(b)?, vars.clone()),
        RingJson::Polynomial { base: b, vars } => {
            let b = base(b)?;
            if !b.is_field() {
                return Err(InputError::invalid(
                    join(path, "base"),
                    "polynomial rings need a field as base",
                ));
            }
            RingSpec::polynomial(b, vars.clone())
        }
        RingJson::DualNumbers { base: b } => RingSpec::dual_numbers(base(b)?),
    };
    r.map_err(|e| InputError::invalid(path, e))
}

fn ring_to_json(r: &RingSpec) -> RingJson {
    match r.kind() {
        RingKind::Rationals => RingJson::Rationals,
        RingKind::PrimeField(p) => RingJson::PrimeField { p: *p },
        RingKind::RationalFunctions { base, vars } => RingJson::RationalFunctions {
            base: Box::new(ring_to_json(base)),
            vars: vars.clone(),
        },
        RingKind::Polynomial { base, vars } => RingJson::Polynomial {
            base: Box::new(ring_to_json(base)),
            vars: vars.clone(),
        },
        RingKind::DualNumbers { base } => RingJson::DualNumbers {
            base: Box::new(ring_to_json(base)),
        },
    }
}

fn matrix_from_json(ring: &RingSpec, rows: usize, cols: usize, m: &MatrixJson, path: &str) -> Parsed<Matrix> {
    if m.len() != rows {
        return Err(InputError::invalid(
            path,
            format!("expected {rows} rows, found {}", m.len()),
        ));
    }
    let mut out = Matrix::zeros(ring, rows, cols);
    for (i, row) in m.iter().enumerate() {
        let row_path = join(path, i);
        if row.len() != cols {
            return Err(InputError::invalid(
                row_path,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (j, s) in row.iter().enumerate() {
            let x = text::parse(ring, s).map_err(|e| InputError::invalid(join(&row_path, j), e))?;
            out.set(i, j, x);
        }
    }
    Ok(out)
}

fn matrix_to_json(m: &Matrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| text::render(m.ring(), m.get(i, j))).collect())
        .collect()
}

fn complex_from_json(ring: &RingSpec, j: &ComplexJson, path: &str) -> Parsed<Complex> {
    let ranks_path = join(path, "ranks");
    let (Some(&lo), Some(&hi)) = (j.ranks.keys().next(), j.ranks.keys().next_back()) else {
        return Err(InputError::invalid(ranks_path, "a complex needs at least one degree"));
    };
    if hi.checked_sub(lo).is_none_or(|span| span >= MAX_SPAN) {
        return Err(InputError::invalid(
            ranks_path,
            format!("window wider than {MAX_SPAN} degrees"),
        ));
    }
    if let Some((n, r)) = j.ranks.iter().find(|(_, &r)| r > MAX_RANK) {
        return Err(InputError::invalid(
            join(&ranks_path, n),
            format!("rank {r} exceeds {MAX_RANK}"),
        ));
    }
    let rank = |n: i64| j.ranks.get(&n).copied().unwrap_or(0);
    let mut diffs = BTreeMap::new();
    for (&n, m) in &j.differentials {
        let p = join(&join(path, "differentials"), n);
        if n < lo || n >= hi {
            return Err(InputError::invalid(
                p,
                format!("degree {n} has no successor in the window [{lo}, {hi}]"),
            ));
        }
        diffs.insert(n, matrix_from_json(ring, rank(n + 1), rank(n), m, &p)?);
    }
    Complex::from_maps(ring, lo, hi, &j.ranks, &diffs).map_err(|e| match e {
        Error::NotAComplex { degree } => InputError::invalid(
            join(&join(path, "differentials"), degree + 1),
            format!("d∘d ≠ 0 from degree {degree}"),
        ),
        e => InputError::invalid(path, e),
    })
}

fn complex_to_json(c: &Complex) -> ComplexJson {
    ComplexJson {
        ranks: c.ranks(),
        differentials: (c.lo()..c.hi())
            .map(|n| (n, c.d(n)))
            .filter(|(_, d)| d.rows() > 0 && d.cols() > 0)
            .map(|(n, d)| (n, matrix_to_json(&d)))
            .collect(),
    }
}

fn components_from_json(
    p: &Complex,
    q: &Complex,
    degree: i64,
    comps: &BTreeMap<i64, MatrixJson>,
    path: &str,
) -> Parsed<GradedMap> {
    let mut out = BTreeMap::new();
    for (&n, m) in comps {
        let cp = join(path, n);
        if !p.degrees().contains(&n) {
            return Err(InputError::invalid(
                cp,
                format!("degree {n} is outside the source window"),
            ));
        }
        out.insert(n, matrix_from_json(p.ring(), q.rank(n + degree), p.rank(n), m, &cp)?);
    }
    GradedMap::new(p, q, degree, out).map_err(|e| InputError::invalid(path, e))
}

fn components_to_json(f: &GradedMap) -> BTreeMap<i64, MatrixJson> {
    f.components()
        .into_iter()
        .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
        .map(|(n, m)| (n, matrix_to_json(&m)))
        .collect()
}

/// Moves a bundle complex to `ring`: reduction from dual numbers to their
/// residue field, base change otherwise.
fn move_to(c: &Complex, ring: &RingSpec) -> crate::Result<Complex> {
    if c.ring() == ring {
        return Ok(c.clone());
    }
    match c.ring().kind() {
        RingKind::DualNumbers { base } if base == ring => Ok(c.reduce()),
        _ => c.base_change(ring),
    }
}

fn lookup<'a>(complexes: &'a BTreeMap<String, Complex>, name: &str, path: String) -> Parsed<&'a Complex> {
    complexes
        .get(name)
        .ok_or_else(|| InputError::invalid(path, format!("no complex named `{name}`")))
}

fn map_from_json(
    bundle_ring: &RingSpec,
    complexes: &BTreeMap<String, Complex>,
    j: &MapJson,
    path: &str,
) -> Parsed<NamedMap> {
    let ring = match &j.ring {
        Some(r) => ring_from_json(r, &join(path, "ring"))?,
        None => bundle_ring.clone(),
    };
    if j.degree.abs() > MAX_SPAN {
        return Err(InputError::invalid(
            join(path, "degree"),
            format!("degree exceeds {MAX_SPAN} in absolute value"),
        ));
    }
    let mut ends = Vec::new();
    for (field, name) in [("source", &j.source), ("target", &j.target)] {
        let c = lookup(complexes, name, join(path, field))?;
        ends.push(move_to(c, &ring).map_err(|e| InputError::invalid(join(path, "ring"), e))?);
    }
    let map = components_from_json(&ends[0], &ends[1], j.degree, &j.components, &join(path, "components"))?;
    Ok(NamedMap {
        source: j.source.clone(),
        target: j.target.clone(),
        map,
    })
}

fn map_to_json(bundle_ring: &RingSpec, m: &NamedMap) -> MapJson {
    MapJson {
        source: m.source.clone(),
        target: m.target.clone(),
        degree: m.map.degree(),
        ring: (m.map.ring() != bundle_ring).then(|| ring_to_json(m.map.ring())),
        components: components_to_json(&m.map),
    }
}

fn witness_names(kind: WitnessKindJson) -> &'static [(&'static str, i64)] {
    match kind {
        WitnessKindJson::G1Vertex => &[("phi", 0)],
        WitnessKindJson::G1Edge => &[("phi", 0), ("psi", 0), ("H", -1)],
        WitnessKindJson::G2Vertex => &[("phi01", 0), ("phi12", 0), ("phi02", 0), ("alpha", -1)],
        WitnessKindJson::G2Edge => &[
            ("phi01", 0),
            ("phi12", 0),
            ("phi02", 0),
            ("alpha", -1),
            ("psi01", 0),
            ("psi12", 0),
            ("psi02", 0),
            ("beta", -1),
            ("H01", -1),
            ("H02", -1),
            ("H12", -1),
            ("Theta", -2),
        ],
    }
}

fn witness_from_json(complexes: &BTreeMap<String, Complex>, j: &WitnessJson, path: &str) -> Parsed<NamedWitness> {
    let e = lookup(complexes, &j.complex, join(path, "complex"))?;
    let names = witness_names(j.kind);
    let cpath = join(path, "components");
    if let Some(extra) = j.components.keys().find(|k| !names.iter().any(|(n, _)| n == k)) {
        return Err(InputError::invalid(
            join(&cpath, extra),
            format!("unknown component for {:?}", j.kind),
        ));
    }
    let mut maps: Vec<GradedMap> = Vec::new();
    for &(name, degree) in names {
        let comps = j
            .components
            .get(name)
            .ok_or_else(|| InputError::invalid(&cpath, format!("missing component `{name}`")))?;
        maps.push(components_from_json(e, e, degree, comps, &join(&cpath, name))?);
    }
    let mut it = maps.into_iter();
    let mut next = || it.next().expect("component count");
    let mut tri = || G2Triangle {
        phi01: next(),
        phi12: next(),
        phi02: next(),
        alpha: next(),
    };
    let witness = match j.kind {
        WitnessKindJson::G1Vertex => AutWitness::G1Vertex { phi: next() },
        WitnessKindJson::G1Edge => {
            let (phi, psi, h) = (next(), next(), next());
            AutWitness::G1Edge { phi, psi, h }
        }
        WitnessKindJson::G2Vertex => AutWitness::G2Vertex(tri()),
        WitnessKindJson::G2Edge => {
            let (phi, psi) = (tri(), tri());
            let (h01, h02, h12, theta) = (next(), next(), next(), next());
            AutWitness::G2Edge {
                phi,
                psi,
                h01,
                h02,
                h12,
                theta,
            }
        }
    };
    Ok(NamedWitness {
        complex: j.complex.clone(),
        witness,
    })
}

fn witness_to_json(w: &NamedWitness) -> WitnessJson {
    let kind = match &w.witness {
        AutWitness::G1Vertex { .. } => WitnessKindJson::G1Vertex,
        AutWitness::G1Edge { .. } => WitnessKindJson::G1Edge,
        AutWitness::G2Vertex(_) => WitnessKindJson::G2Vertex,
        AutWitness::G2Edge { .. } => WitnessKindJson::G2Edge,
    };
    let components = witness_names(kind)
        .iter()
        .zip(w.witness.components())
        .map(|(&(name, _), f)| (name.to_string(), components_to_json(f)))
        .collect();
    WitnessJson {
        kind,
        complex: w.complex.clone(),
        components,
    }
}

fn path_to_pointer(path: &serde_path_to_error::Path) -> String {
    path.iter()
        .filter_map(|s| match s {
            Segment::Seq { index } => Some(index.to_string()),
            Segment::Map { key } => Some(key.clone()),
            Segment::Enum { variant } => Some(variant.clone()),
            Segment::Unknown => None,
        })
        .map(|s| format!("/{}", escape(&s)))
        .collect()
}

/// Parses and validates a bundle.
pub fn parse_bundle(text: &str) -> Parsed<Bundle> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: BundleJson = serde_path_to_error::deserialize(de).map_err(|e| InputError::Parse {
        path: path_to_pointer(e.path()),
        message: e.inner().to_string(),
    })?;
    let ring = ring_from_json(&raw.ring, "/ring")?;
    let mut complexes = BTreeMap::new();
    for (name, c) in &raw.complexes {
        complexes.insert(
            name.clone(),
            complex_from_json(&ring, c, &pointer(&["complexes", name]))?,
        );
    }
    let mut maps = BTreeMap::new();
    for (name, m) in &raw.maps {
        let path = pointer(&["maps", name]);
        let named = map_from_json(&ring, &complexes, m, &path)?;
        if raw.assert_chain_map && named.map.degree() == 0 {
            if let Err(Error::NotChainMap { degree }) = named.map.check_chain_map() {
                return Err(InputError::invalid(
                    join(&join(&path, "components"), degree),
                    "not a chain map",
                ));
            }
        }
        maps.insert(name.clone(), named);
    }
    let witness = raw
        .witness
        .as_ref()
        .map(|w| witness_from_json(&complexes, w, "/witness"))
        .transpose()?;
    for (role, name) in &raw.args {
        if !complexes.contains_key(name) && !maps.contains_key(name) {
            return Err(InputError::invalid(
                pointer(&["args", role]),
                format!("nothing named `{name}`"),
            ));
        }
    }
    Ok(Bundle {
        ring,
        complexes,
        maps,
        args: raw.args,
        assert_chain_map: raw.assert_chain_map,
        witness,
    })
}

/// Canonical pretty JSON with a trailing newline; [`parse_bundle`] inverts it.
pub fn render_bundle(b: &Bundle) -> String {
    let raw = BundleJson {
        ring: ring_to_json(&b.ring),
        complexes: b
            .complexes
            .iter()
            .map(|(k, c)| (k.clone(), complex_to_json(c)))
            .collect(),
        maps: b
            .maps
            .iter()
            .map(|(k, m)| (k.clone(), map_to_json(&b.ring, m)))
            .collect(),
        args: b.args.clone(),
        assert_chain_map: b.assert_chain_map,
        witness: b.witness.as_ref().map(witness_to_json),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
    s.push('\n');
    s
}

/// JSON value of a ring, as it appears in bundles.
pub fn ring_value(r: &RingSpec) -> serde_json::Value {
    serde_json::to_value(ring_to_json(r)).expect("serializable")
}

/// JSON value of a complex, as it appears in bundles.
pub fn complex_value(c: &Complex) -> serde_json::Value {
    serde_json::to_value(complex_to_json(c)).expect("serializable")
}

/// JSON value of a map with the given endpoint names; the ring is recorded
/// when it differs from `bundle_ring`.
pub fn map_value(bundle_ring: &RingSpec, source: &str, target: &str, f: &GradedMap) -> serde_json::Value {
    let named = NamedMap {
        source: source.into(),
        target: target.into(),
        map: f.clone(),
    };
    serde_json::to_value(map_to_json(bundle_ring, &named)).expect("serializable")
}
