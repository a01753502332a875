//! Helpers shared by the CLI and acceptance tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn opeq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opeq"))
}

pub fn run(args: &[&str]) -> Output {
    opeq().args(args).output().expect("binary runs")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn golden_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    let v: Value = serde_json::from_str(&text).expect("valid cases.json");
    v.as_array()
        .expect("array")
        .iter()
        .map(|c| Case {
            name: c["name"].as_str().unwrap().to_string(),
            args: c["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect(),
            exit: c["exit"].as_i64().unwrap() as i32,
        })
        .collect()
}

/// Numbers agree to `1e-12` absolute plus `1e-9` relative; everything else exactly.
pub fn json_close(a: &Value, b: &Value, path: &str) -> Result<(), String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() <= 1e-12 + 1e-9 * x.abs().max(y.abs()) {
                Ok(())
            } else {
                Err(format!("{path}: {x} != {y}"))
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Err(format!("{path}: length {} != {}", x.len(), y.len()));
            }
            x.iter().zip(y).enumerate().try_for_each(|(i, (p, q))| json_close(p, q, &format!("{path}[{i}]")))
        }
        (Value::Object(x), Value::Object(y)) => {
            let kx: Vec<_> = x.keys().collect();
            let ky: Vec<_> = y.keys().collect();
            if kx != ky {
                return Err(format!("{path}: keys {kx:?} != {ky:?}"));
            }
            x.iter().try_for_each(|(k, v)| json_close(v, &y[k], &format!("{path}.{k}")))
        }
        _ if a == b => Ok(()),
        _ => Err(format!("{path}: {a} != {b}")),
    }
}

/// Runs one golden case with `--json`; `OPEQ_BLESS=1` rewrites the expected report.
pub fn check_golden(case: &Case) -> Result<(), String> {
    let dir = golden_dir();
    let mut args: Vec<String> = Vec::new();
    let mut operand = false;
    for a in &case.args {
        if operand {
            args.push(dir.join("inputs").join(format!("{a}.json")).display().to_string());
        } else {
            args.push(a.clone());
        }
        operand = matches!(a.as_str(), "--A" | "--B" | "--C");
    }
    args.push("--json".into());
    let out = opeq().args(&args).output().map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}; stderr: {}", case.name, case.exit, String::from_utf8_lossy(&out.stderr)));
    }
    let got: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{}: report is not JSON: {e}", case.name))?;
    let expected_path = dir.join(format!("{}.json", case.name));
    if std::env::var_os("OPEQ_BLESS").is_some() {
        std::fs::write(&expected_path, &out.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let text = std::fs::read_to_string(&expected_path).map_err(|e| format!("{}: {e}", expected_path.display()))?;
    let expected: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    json_close(&got, &expected, &case.name)
}
