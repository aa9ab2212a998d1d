//! Compiles and runs a small C program against the generated header and
//! the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "preproj.h"

int main(void) {
    PpAlgebra *alg = NULL;
    if (pp_algebra_load("pi:A2", &alg) != PP_STATUS_OK) return 10;
    PpSmc *u = NULL, *v = NULL;
    if (pp_smc_standard(alg, &u) != PP_STATUS_OK) return 11;
    if (pp_smc_mutate(alg, u, 0, PP_DIRECTION_LEFT, &v) != PP_STATUS_OK) return 12;
    bool valid = false;
    if (pp_smc_validate(alg, v, &valid) != PP_STATUS_OK || !valid) return 13;
    PpAlgebra *bad = NULL;
    if (pp_algebra_load("pi:Q1", &bad) != PP_STATUS_PARSE) return 14;
    if (pp_last_error() == NULL) return 15;
    printf("%zu\n", pp_smc_len(v));
    pp_smc_free(u);
    pp_smc_free(v);
    pp_algebra_free(alg);
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    // integration tests live in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libpreproj_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = std::env::temp_dir().join(format!("preproj-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let _ = std::fs::remove_dir_all(&dir);
}
