//! Compiles a small C program against `include/qds.h` and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qds.h"

int main(void) {
    QdsElement *u1 = NULL, *h = NULL;
    if (qds_generator_image(0, 1, &u1) != QDS_STATUS_OK) return 10;
    if (qds_ad_integral(1, u1, &h) != QDS_STATUS_OK) return 11;
    bool zero = true;
    if (qds_element_is_zero(h, &zero) != QDS_STATUS_OK || zero) return 12;
    QdsElement *bad = NULL;
    if (qds_element_parse("garbage", &bad) != QDS_STATUS_PARSE) return 13;
    if (qds_last_error() == NULL) return 14;
    QdsReport *r = NULL;
    if (qds_run("{\"suites\":[\"serre\"],\"n_max\":2}", &r) != QDS_STATUS_OK) return 15;
    bool ok = false;
    qds_report_all_passed(r, &ok);
    char *js = NULL;
    qds_report_json(r, &js);
    int has = strstr(js, "\"summary\"") != NULL;
    qds_string_free(js);
    qds_report_free(r);
    qds_element_free(u1);
    qds_element_free(h);
    printf("ok\n");
    return (ok && has) ? 0 : 16;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test-binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libqds_ffi.a");
    if !lib.exists() {
        let status = Command::new(env!("CARGO"))
            .args(["build", "-p", "qds-ffi", "--lib"])
            .args(if profile_dir.ends_with("release") { vec!["--release"] } else { vec![] })
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .expect("a C compiler named cc");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
