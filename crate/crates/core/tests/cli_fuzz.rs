//! Malformed bundles never crash the command layer and always exit with 3.

mod common;

use common::{golden_cases, rng};
use perfcx::io::{run, Command, Flags};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

/// Every string leaf that sits inside a matrix (an array of arrays).
fn matrix_entries(v: &Value, path: &mut Vec<Value>, out: &mut Vec<Vec<Value>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                path.push(json!(k));
                matrix_entries(x, path, out);
                path.pop();
            }
        }
        Value::Array(rows) => {
            for (i, x) in rows.iter().enumerate() {
                path.push(json!(i));
                if x.is_string() && path.len() >= 2 {
                    out.push(path.clone());
                } else {
                    matrix_entries(x, path, out);
                }
                path.pop();
            }
        }
        _ => {}
    }
}

fn at<'a>(v: &'a mut Value, path: &[Value]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match k {
        Value::String(s) => &mut v[s.as_str()],
        Value::Number(n) => &mut v[n.as_u64().unwrap() as usize],
        _ => unreachable!(),
    })
}

/// One malformation; `None` when it does not apply to this bundle.
fn malform<R: Rng>(text: &str, kind: usize, r: &mut R) -> Option<String> {
    let mut v: Value = serde_json::from_str(text).unwrap();
    let complex_names: Vec<String> = v["complexes"].as_object()?.keys().cloned().collect();
    let some_complex = complex_names.choose(r)?.clone();
    match kind {
        0 => {
            let end = text.rfind('}')?;
            return Some(text[..r.gen_range(0..end)].to_string());
        }
        1 => {
            v.as_object_mut()?.insert("bogus".into(), json!(r.gen::<u8>()));
        }
        2 => v["ring"]["kind"] = json!("OCTONIONS"),
        3 => {
            let p = [4, 6, 9, 15, 1, 0][r.gen_range(0..6)];
            v["ring"] = json!({"kind": "PRIME_FIELD", "p": p});
        }
        4 => {
            let mut paths = Vec::new();
            matrix_entries(&v, &mut Vec::new(), &mut paths);
            let p = paths.choose(r)?;
            let bad = ["1/0", "x?", "", "2^^3", "((1)", "eps eps"][r.gen_range(0..6)];
            *at(&mut v, p) = json!(bad);
        }
        5 => {
            let ranks = v["complexes"][&some_complex]["ranks"].as_object_mut()?;
            let key = ranks.keys().next()?.clone();
            let bad = [json!(-1), json!("two"), json!(1000), json!(1.5)];
            ranks.insert(key, bad[r.gen_range(0..4)].clone());
        }
        6 => {
            let ranks = v["complexes"][&some_complex]["ranks"].as_object_mut()?;
            let key = ["a", "1.5", "", "--1"][r.gen_range(0..4)];
            ranks.insert(key.into(), json!(1));
        }
        7 => {
            let mut paths = Vec::new();
            matrix_entries(&v, &mut Vec::new(), &mut paths);
            let p = paths.choose(r)?;
            let row = at(&mut v, &p[..p.len() - 1]);
            row.as_array_mut()?.push(json!("0"));
        }
        8 => {
            let maps = v["maps"].as_object_mut()?;
            let name = maps.keys().next()?.clone();
            maps[&name]["source"] = json!("nowhere");
        }
        9 => {
            // a two-term piece whose square is nonzero
            v["complexes"]["bad"] =
                json!({"ranks": {"0": 1, "1": 1, "2": 1}, "differentials": {"0": [["1"]], "1": [["1"]]}});
        }
        10 => {
            let bytes: Vec<u8> = (0..r.gen_range(0..40)).map(|_| r.gen()).collect();
            return Some(format!("#{}", String::from_utf8_lossy(&bytes)));
        }
        11 => v["complexes"][&some_complex]["differentials"] = json!({"99": [["1"]]}),
        12 => {
            v["args"] = json!({"source": "missing", "target": "missing", "complex": "missing", "map": "missing",
                "class_a": "missing", "class_b": "missing", "E_total": "missing", "F_total": "missing", "phi0": "missing"});
        }
        13 => v["complexes"][&some_complex] = json!({"ranks": {}}),
        _ => {
            let c = v["complexes"][&some_complex].as_object_mut()?;
            c.insert("extra".into(), json!(null));
        }
    }
    Some(serde_json::to_string(&v).unwrap())
}

#[test]
fn thousand_malformed_bundles_exit_with_input_error() {
    let cases = golden_cases();
    let mut r = rng(7);
    let mut done = 0;
    while done < 1000 {
        let case = cases.choose(&mut r).unwrap();
        let kind = r.gen_range(0..15);
        let Some(text) = malform(&case.bundle_text(), kind, &mut r) else {
            continue;
        };
        let command = *Command::ALL.choose(&mut r).unwrap();
        let out = run(command, &text, &Flags::default());
        assert_eq!(out.exit_code, 3, "kind {kind}, {command}: {}\n{text}", out.render());
        let path = &out.report["error"]["path"];
        assert!(path.is_string(), "kind {kind}: no JSON pointer in {}", out.render());
        done += 1;
    }
}
