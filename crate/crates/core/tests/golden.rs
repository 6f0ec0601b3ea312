//! Documented CLI examples against their stored outputs. Set
//! `UPDATE_GOLDEN=1` to rewrite the stored files.

mod common;

use std::process::Command as Process;

use common::{golden_cases, golden_dir};
use perfcx::io::{parse_bundle, render_bundle, run};

fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

#[test]
fn library_outputs_match_golden_files() {
    for case in golden_cases() {
        let out = run(case.command, &case.bundle_text(), &case.flags);
        assert_eq!(out.exit_code, case.exit_code, "{}", case.name);
        let rendered = out.render();
        if updating() {
            std::fs::write(case.expected_path(), &rendered).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(case.expected_path()).expect("golden output");
        assert_eq!(rendered, expected, "{}", case.name);
    }
}

#[test]
fn binary_matches_library() {
    for case in golden_cases() {
        let path = golden_dir().join(case.bundle);
        let out = Process::new(env!("CARGO_BIN_EXE_perfcx"))
            .arg(case.command.name())
            .arg("--input")
            .arg(&path)
            .args(case.extra_args)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(case.exit_code), "{}", case.name);
        let lib = run(case.command, &case.bundle_text(), &case.flags).render();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), lib, "{}", case.name);
    }
}

#[test]
fn gl2_bundle_round_trips_byte_for_byte() {
    let path = golden_dir().join("descend_gl2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let rendered = render_bundle(&parse_bundle(&text).unwrap());
    if updating() {
        std::fs::write(&path, &rendered).unwrap();
        return;
    }
    assert_eq!(rendered, text);
}

#[test]
fn every_bundle_round_trips() {
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if name.ends_with(".out.json") {
            continue;
        }
        let b = parse_bundle(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let rendered = render_bundle(&b);
        assert_eq!(parse_bundle(&rendered).unwrap(), b, "{name}");
        assert_eq!(render_bundle(&parse_bundle(&rendered).unwrap()), rendered, "{name}");
    }
}
