#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sesqui")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn inputs_dir() -> PathBuf {
    golden_dir().join("inputs")
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn transcript(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

/// Runs the binary with `inputs/` as working directory.
pub fn run(args: &[&str]) -> Outcome {
    let out = Command::new(bin())
        .args(args)
        .current_dir(inputs_dir())
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

const FORM_EXAMPLES: [(&str, &str, &str); 3] = [
    ("lebesgue", "identity.json", "diag_1_0.json"),
    ("halves", "identity.json", "identity.json"),
    ("incomparable", "diag_2_1.json", "diag_1_2.json"),
];

const KERNEL_EXAMPLES: [(&str, &str, &str); 3] = [
    ("lebesgue", "k_identity.json", "k_diag_1_0.json"),
    ("halves", "k_identity.json", "k_identity.json"),
    ("incomparable", "k_diag_2_1.json", "k_diag_1_2.json"),
];

const FORM_COMMANDS: [&str; 7] = [
    "parallel-sum",
    "short",
    "decompose-lebesgue",
    "decompose-short",
    "infimum",
    "extreme-check",
    "rn",
];

const KERNEL_COMMANDS: [&str; 4] = ["kernel-lebesgue", "kernel-short", "kernel-infimum", "dilate"];

/// `(golden file name, arguments)` for every golden case.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    let mut push = |name: String, args: &[&str]| {
        cases.push((name, args.iter().map(|s| s.to_string()).collect()));
    };
    for cmd in FORM_COMMANDS {
        for (ex, a, b) in FORM_EXAMPLES {
            push(format!("{cmd}__{ex}"), &[cmd, a, b]);
        }
    }
    for (ex, a, b) in FORM_EXAMPLES {
        push(format!("check-theorems__{ex}"), &["check-theorems", a, b, "--samples", "10", "--seed", "1"]);
    }
    for cmd in KERNEL_COMMANDS {
        for (ex, a, b) in KERNEL_EXAMPLES {
            push(format!("{cmd}__{ex}"), &[cmd, a, b]);
        }
    }
    push("dilate__ones".into(), &["dilate", "k_ones.json", "k_identity.json"]);
    push(
        "check-theorems__ensemble".into(),
        &["check-theorems", "--samples", "25", "--seed", "11", "--dim", "3"],
    );
    cases
}

pub fn golden_path(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.golden"))
}

/// Compares every case against its golden transcript. With
/// `SESQUI_UPDATE_GOLDEN=1` the transcripts are rewritten instead.
pub fn check_goldens() -> Vec<String> {
    let update = std::env::var("SESQUI_UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let mut mismatches = Vec::new();
    for (name, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&args).transcript();
        let path = golden_path(&name);
        if update {
            fs::write(&path, &got).expect("golden writable");
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(_) => mismatches.push(format!("{name}: output differs from golden")),
            Err(e) => mismatches.push(format!("{name}: {e}")),
        }
    }
    mismatches
}
