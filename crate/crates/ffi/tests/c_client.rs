//! Compiles a small C client against the generated header and the static
//! library, then runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bss.h"

int main(void) {
    BssProgramHandle *prog = NULL;
    BssNumber *x = NULL;
    BssOutcome outcome;
    char *output = NULL;
    if (bss_program_shipped("double", &prog) != BSS_STATUS_OK) return 10;
    if (bss_number_parse("[-2,0,1]@(1,2)", &x) != BSS_STATUS_OK) return 11;
    const BssNumber *inputs[1] = { x };
    if (bss_run(prog, inputs, 1, NULL, 1000, &outcome, &output) != BSS_STATUS_OK) return 12;
    if (outcome != BSS_OUTCOME_ACCEPT) return 13;
    printf("%s\n", output);
    bss_string_free(output);
    if (bss_number_parse("1/0", &x) != BSS_STATUS_ARITHMETIC) return 14;
    printf("%s\n", bss_last_error());
    bss_program_free(prog);
    return 0;
}
"#;

/// `target/<profile>` for this test binary.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_client_links_and_runs() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libbss_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let exe = dir.path().join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "client exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[-8,0,1]@(0,16)\nzero denominator\n");
}
