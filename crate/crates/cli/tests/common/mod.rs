#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn ebh(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ebh"));
    cmd.args(args).env_remove("EBH_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

pub fn schema_path(command: &str) -> PathBuf {
    crate_dir().join("schemas").join(format!("{command}.schema.json"))
}

/// A CLI invocation with a golden report. Runs listed under `variants`
/// must produce the same bytes.
pub struct GoldenCase {
    pub name: &'static str,
    pub command: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    pub variants: &'static [&'static [&'static str]],
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase { name: "constants_d", command: "constants", args: &["constants", "--d", "--hw", "1/3log2"], env: &[], variants: &[] },
    GoldenCase {
        name: "constants_d_256",
        command: "constants",
        args: &["constants", "--d", "--preset", "e2"],
        env: &[("EBH_PRECISION", "256")],
        variants: &[],
    },
    GoldenCase { name: "constants_c3", command: "constants", args: &["constants", "--c", "3", "--hw", "0"], env: &[], variants: &[] },
    GoldenCase { name: "bound_e2", command: "bound", args: &["bound", "--h-c", "1", "--deg-c", "2"], env: &[], variants: &[] },
    GoldenCase {
        name: "bound_en",
        command: "bound",
        args: &["bound", "--theorem", "en-weak-transverse", "--N", "3", "--h-c", "1", "--deg-c", "1", "--hw", "0"],
        env: &[],
        variants: &[],
    },
    GoldenCase { name: "family_audit_f2_n1", command: "family-audit", args: &["family-audit", "--family", "f2", "--n", "1"], env: &[], variants: &[] },
    GoldenCase { name: "family_audit_f2_n2", command: "family-audit", args: &["family-audit", "--family", "f2", "--n", "2"], env: &[], variants: &[] },
    GoldenCase { name: "family_audit_f1_n3", command: "family-audit", args: &["family-audit", "--family", "f1", "--n", "3"], env: &[], variants: &[] },
    GoldenCase {
        name: "family_audit_f2_range",
        command: "family-audit",
        args: &["family-audit", "--family", "f2", "--n-range", "1..6"],
        env: &[],
        variants: &[],
    },
    GoldenCase {
        name: "search_f1_n3",
        command: "search",
        args: &["search", "--family", "f1", "--n", "3", "--height-bound", "25", "--tol", "1e-10"],
        env: &[],
        variants: &[&["search", "--family", "f1", "--n", "3", "--height-bound", "25", "--tol", "1e-10", "--shards", "8"]],
    },
    GoldenCase {
        name: "search_f2_n1",
        command: "search",
        args: &["search", "--family", "f2", "--n", "1", "--preset", "e2", "--height-bound", "25"],
        env: &[],
        variants: &[
            &["search", "--family", "f2", "--n", "1", "--preset", "e2", "--height-bound", "25", "--shards", "3"],
            &["search", "--family", "f2", "--n", "1", "--preset", "e2", "--height-bound", "25", "--shards", "8"],
        ],
    },
    GoldenCase {
        name: "census_z",
        command: "census",
        args: &["census", "--ring", "z", "--N", "3", "--r", "2", "--max-degree", "40", "--torsion", "10"],
        env: &[],
        variants: &[],
    },
    GoldenCase {
        name: "census_zi",
        command: "census",
        args: &["census", "--ring", "zi", "--N", "2", "--r", "1", "--max-degree", "25", "--torsion", "3"],
        env: &[],
        variants: &[],
    },
    GoldenCase {
        name: "census_zw",
        command: "census",
        args: &["census", "--ring", "zw", "--N", "2", "--r", "2", "--max-degree", "12", "--torsion", "2"],
        env: &[],
        variants: &[],
    },
    GoldenCase {
        name: "exponents_count_i",
        command: "exponents",
        args: &["exponents", "--theorem", "count-i", "--N", "3"],
        env: &[],
        variants: &[],
    },
    GoldenCase {
        name: "exponents_anomalous",
        command: "exponents",
        args: &["exponents", "--theorem", "anomalous-points", "--N", "4", "--r", "3"],
        env: &[],
        variants: &[],
    },
];

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

/// Checks a report against its command's schema; returns the error list.
pub fn schema_errors(command: &str, report: &str) -> Vec<String> {
    let schema: serde_json::Value = serde_json::from_str(&read(&schema_path(command))).expect("schema parses");
    let instance: serde_json::Value = serde_json::from_str(report).expect("report parses");
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let result = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    result
}
