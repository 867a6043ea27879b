//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "clent.h"

int main(void) {
    ClentModel *model = NULL;
    ClentCovariance *cov = NULL;
    if (clent_model_lattice(20, 0.1, 1.0, &model) != CLENT_STATUS_OK) return 10;
    if (clent_covariance_classical(model, 1.0, &cov) != CLENT_STATUS_OK) return 11;
    size_t g1[5] = {0, 1, 2, 3, 4};
    size_t g2[5] = {5, 6, 7, 8, 9};
    double e = 0.0, n = 0.0;
    if (clent_log_negativity(cov, g1, 5, g2, 5, &e, &n) != CLENT_STATUS_OK) return 12;
    if (!(e > 0.0)) return 13;
    ClentModel *bad = NULL;
    if (clent_model_two_mode(1.0, 1.0, 0.0, &bad) != CLENT_STATUS_INVALID_MODEL) return 14;
    if (clent_last_error_message()[0] == '\0') return 15;
    printf("%.17g\n", e);
    clent_covariance_free(cov);
    clent_model_free(model);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libclent_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler named `cc` on PATH");
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    let e: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!(e > 0.0);
}
