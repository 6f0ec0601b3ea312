use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{complex_value, map_value, parse_bundle, ring_value, Bundle, InputError};
use crate::complex::{cohomology_dims, cone, is_qiso, Complex, GradedMap};
use crate::deformation::{lift, obstruction, DeformedComplex};
use crate::derived::{ext_dims, tor_amplitude, truncate_ge, truncate_le, ExtClass};
use crate::error::Error;
use crate::hilbert90::{descend, SearchOptions};
use crate::linalg::text;
use crate::simplicial::{dk_build, TOP_LEVEL};

/// The commands of the command-line surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    IsQiso,
    Ext,
    TorAmplitude,
    Cone,
    Truncate,
    DkVerify,
    Obstruct,
    Lift,
    Descend,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Cohomology,
        Command::IsQiso,
        Command::Ext,
        Command::TorAmplitude,
        Command::Cone,
        Command::Truncate,
        Command::DkVerify,
        Command::Obstruct,
        Command::Lift,
        Command::Descend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::IsQiso => "is-qiso",
            Command::Ext => "ext",
            Command::TorAmplitude => "tor-amplitude",
            Command::Cone => "cone",
            Command::Truncate => "truncate",
            Command::DkVerify => "dk-verify",
            Command::Obstruct => "obstruct",
            Command::Lift => "lift",
            Command::Descend => "descend",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Command-line flags shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    /// `ext --compare`: decide equality of two classes.
    pub compare: bool,
    pub seed: u64,
    pub sample_bound: u64,
    pub max_trials: usize,
    pub certify_generic: bool,
    /// `truncate --le n`.
    pub le: Option<i64>,
    /// `truncate --ge n`.
    pub ge: Option<i64>,
}

impl Default for Flags {
    fn default() -> Self {
        let s = SearchOptions::default();
        Flags {
            compare: false,
            seed: s.seed,
            sample_bound: s.sample_bound,
            max_trials: s.max_trials,
            certify_generic: s.certify_generic,
            le: None,
            ge: None,
        }
    }
}

/// A report and the process exit code it calls for.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    /// 0 success, 1 internal error (or a failed `dk-verify`), 2 negative
    /// result, 3 invalid input.
    pub exit_code: i32,
}

impl Outcome {
    /// The report as pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }
}

struct Failure {
    code: &'static str,
    message: String,
    path: Option<String>,
    exit_code: i32,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let code = match e {
            InputError::Parse { .. } => "PARSE_ERROR",
            InputError::Validation { .. } => "VALIDATION_ERROR",
        };
        Failure {
            code,
            path: Some(e.path().to_string()),
            message: e.to_string(),
            exit_code: 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, exit_code) = match &e {
            Error::NoPointFound { .. } => ("NO_POINT_FOUND", 2),
            Error::Internal(_) => ("INTERNAL", 1),
            Error::FieldTooSmall { .. } => ("FIELD_TOO_SMALL", 3),
            Error::NotQisoInput => ("NOT_QISO_INPUT", 3),
            Error::NotBaseChanged => ("NOT_BASE_CHANGED", 3),
            Error::NotChainMap { .. } => ("NOT_CHAIN_MAP", 3),
            Error::NotACocycle { .. } => ("NOT_A_COCYCLE", 3),
            Error::NonFieldRing(_) => ("NON_FIELD_RING", 3),
            Error::UnsupportedRing(_) => ("UNSUPPORTED_RING", 3),
            Error::RingMismatch(_) => ("RING_MISMATCH", 3),
            Error::ShapeMismatch(_) => ("SHAPE_MISMATCH", 3),
            Error::EmptyFamily => ("EMPTY_FAMILY", 3),
            _ => ("INVALID_INPUT", 3),
        };
        Failure {
            code,
            message: e.to_string(),
            path: None,
            exit_code,
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn missing(role: &str, what: &str) -> Failure {
    InputError::invalid(
        "/args",
        format!("cannot tell which {what} is `{role}`; name it in args"),
    )
    .into()
}

/// The complex playing `role`: named in `args`, or the only complex.
fn complex_arg<'a>(b: &'a Bundle, role: &str) -> Step<(&'a str, &'a Complex)> {
    match b.args.get(role) {
        Some(name) => b
            .complexes
            .get_key_value(name)
            .map(|(k, c)| (k.as_str(), c))
            .ok_or_else(|| InputError::invalid(format!("/args/{role}"), format!("no complex named `{name}`")).into()),
        None if b.complexes.len() == 1 => {
            let (k, c) = b.complexes.iter().next().unwrap();
            Ok((k.as_str(), c))
        }
        None => Err(missing(role, "complex")),
    }
}

fn map_arg<'a>(b: &'a Bundle, role: &str) -> Step<(&'a str, &'a super::NamedMap)> {
    match b.args.get(role) {
        Some(name) => b
            .maps
            .get_key_value(name)
            .map(|(k, m)| (k.as_str(), m))
            .ok_or_else(|| InputError::invalid(format!("/args/{role}"), format!("no map named `{name}`")).into()),
        None if b.maps.len() == 1 => {
            let (k, m) = b.maps.iter().next().unwrap();
            Ok((k.as_str(), m))
        }
        None => Err(missing(role, "map")),
    }
}

fn dims_value(d: &BTreeMap<i64, usize>) -> Value {
    Value::Object(d.iter().map(|(n, v)| (n.to_string(), json!(v))).collect())
}

fn map_json(b: &Bundle, m: &super::NamedMap, f: &GradedMap) -> Value {
    map_value(&b.ring, &m.source, &m.target, f)
}

fn execute(command: Command, b: &Bundle, flags: &Flags) -> Step<(Value, i32)> {
    let mut out = serde_json::Map::new();
    let mut exit_code = 0;
    match command {
        Command::Cohomology => {
            let (_, c) = complex_arg(b, "complex")?;
            out.insert("cohomology".into(), dims_value(&cohomology_dims(c)?));
        }
        Command::IsQiso => {
            let (_, m) = map_arg(b, "map")?;
            m.map.check_chain_map()?;
            out.insert("is_qiso".into(), json!(is_qiso(&m.map)?));
        }
        Command::Ext if flags.compare => {
            let (_, a) = map_arg(b, "class_a")?;
            let (_, c) = map_arg(b, "class_b")?;
            let (a, c) = (ExtClass::new(a.map.clone())?, ExtClass::new(c.map.clone())?);
            out.insert("degree".into(), json!(a.degree()));
            out.insert("equal".into(), json!(a.equals(&c)?));
        }
        Command::Ext => {
            let (_, p) = complex_arg(b, "source")?;
            let (_, q) = complex_arg(b, "target")?;
            out.insert("ext".into(), dims_value(&ext_dims(p, q)?));
        }
        Command::TorAmplitude => {
            let (_, c) = complex_arg(b, "complex")?;
            out.insert("amplitude".into(), json!(tor_amplitude(c)?.map(|(a, b)| [a, b])));
        }
        Command::Cone => {
            let (_, m) = map_arg(b, "map")?;
            m.map.check_chain_map()?;
            out.insert("cone".into(), complex_value(&cone(&m.map)?.complex));
        }
        Command::Truncate => {
            let (_, c) = complex_arg(b, "complex")?;
            let (side, n, t) = match (flags.le, flags.ge) {
                (Some(n), None) => ("le", n, truncate_le(c, n)?),
                (None, Some(n)) => ("ge", n, truncate_ge(c, n)?),
                _ => return Err(InputError::invalid("", "truncate needs exactly one of --le and --ge").into()),
            };
            out.insert("side".into(), json!(side));
            out.insert("degree".into(), json!(n));
            out.insert("complex".into(), complex_value(&t));
        }
        Command::DkVerify => match &b.witness {
            Some(w) => {
                out.insert("kind".into(), json!(w.witness.kind()));
                let verdict = w.witness.check()?;
                out.insert("valid".into(), json!(verdict.is_ok()));
                if verdict.is_err() {
                    exit_code = 1;
                }
                let failure = verdict
                    .err()
                    .map(|f| json!({"equation": f.equation, "degree": f.degree}));
                out.insert("failure".into(), json!(failure));
            }
            None => {
                let (_, c) = complex_arg(b, "complex")?;
                let dk = dk_build(c)?;
                let h = cohomology_dims(c)?;
                let mut pis = serde_json::Map::new();
                let mut valid = true;
                for k in 0..TOP_LEVEL {
                    let pi = dk.pi(k)?;
                    valid &= pi == h.get(&-(k as i64)).copied().unwrap_or(0);
                    pis.insert(k.to_string(), json!(pi));
                }
                out.insert("kind".into(), json!("DOLD_KAN"));
                out.insert(
                    "levels".into(),
                    json!((0..=TOP_LEVEL).map(|n| dk.level_rank(n)).collect::<Vec<_>>()),
                );
                out.insert("pi".into(), Value::Object(pis));
                out.insert("valid".into(), json!(valid));
                exit_code = if valid { 0 } else { 1 };
            }
        },
        Command::Obstruct | Command::Lift => {
            let (_, e) = complex_arg(b, "E_total")?;
            let (_, f) = complex_arg(b, "F_total")?;
            let (_, phi0) = map_arg(b, "phi0")?;
            let (e, f) = (DeformedComplex::new(e.clone())?, DeformedComplex::new(f.clone())?);
            let class = obstruction(&e, &f, &phi0.map)?;
            let class_json = if class.is_zero()? {
                json!("zero")
            } else {
                map_json(b, phi0, class.cocycle())
            };
            out.insert("class".into(), class_json);
            if command == Command::Lift {
                let lifted = lift(&e, &f, &phi0.map)?;
                if lifted.is_none() {
                    exit_code = 2;
                }
                out.insert("lift".into(), json!(lifted.map(|l| map_json(b, phi0, &l))));
            }
        }
        Command::Descend => {
            let (pn, p) = complex_arg(b, "source")?;
            let (qn, q) = complex_arg(b, "target")?;
            let (_, m) = map_arg(b, "map")?;
            let opts = SearchOptions {
                seed: flags.seed,
                sample_bound: flags.sample_bound,
                max_trials: flags.max_trials,
                certify_generic: flags.certify_generic,
            };
            let r = descend(p, q, &m.map, &opts)?;
            let point: Vec<Value> = r
                .point
                .iter()
                .map(|(v, x)| json!({"var": v, "value": text::render(&b.ring, x)}))
                .collect();
            out.insert(
                "report".into(),
                json!({
                    "point": point,
                    "family": r.family.iter().map(|f| map_value(&b.ring, pn, qn, f)).collect::<Vec<_>>(),
                    "specialized_map": map_value(&b.ring, pn, qn, &r.specialized_map),
                    "certificate": dims_value(&r.certificate),
                    "trials": r.trials,
                    "seed": r.seed,
                    "sample_bound": r.sample_bound,
                    "generic_certified": r.generic_certified,
                }),
            );
        }
    }
    out.insert("ring".into(), ring_value(&b.ring));
    Ok((Value::Object(out), exit_code))
}

fn label(command: Command, flags: &Flags) -> String {
    if command == Command::Ext && flags.compare {
        "ext --compare".into()
    } else {
        command.name().into()
    }
}

/// Parses `bundle`, runs `command` and reports. Never panics: a panic inside
/// a computation becomes an internal error with exit code 1.
pub fn run(command: Command, bundle: &str, flags: &Flags) -> Outcome {
    let attempt = std::panic::catch_unwind(|| -> Step<(Value, i32)> {
        let b = parse_bundle(bundle)?;
        execute(command, &b, flags)
    });
    let result = attempt.unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure {
            code: "INTERNAL",
            message,
            path: None,
            exit_code: 1,
        })
    });
    let name = label(command, flags);
    match result {
        Ok((mut report, exit_code)) => {
            report["command"] = json!(name);
            Outcome { report, exit_code }
        }
        Err(f) => Outcome {
            report: json!({
                "command": name,
                "error": {"code": f.code, "message": f.message, "path": f.path},
            }),
            exit_code: f.exit_code,
        },
    }
}
