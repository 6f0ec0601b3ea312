//! Running commands on JSON bundles, as the `perfcx` binary does.

use perfcx::io::{run, Command, Flags};

const BUNDLE: &str = r#"{
  "ring": {"kind": "RATIONALS"},
  "complexes": {
    "P": {"ranks": {"0": 1}, "differentials": {}},
    "Q": {"ranks": {"-1": 1, "0": 1}, "differentials": {"-1": [["0"]]}}
  },
  "args": {"source": "P", "target": "Q"}
}"#;

fn main() {
    let out = run(Command::Ext, BUNDLE, &Flags::default());
    println!("exit {}\n{}", out.exit_code, out.render());

    let broken = BUNDLE.replace(r#"[["0"]]"#, r#"[["0", "1"]]"#);
    let out = run(Command::Ext, &broken, &Flags::default());
    println!("exit {}\n{}", out.exit_code, out.render());
}
