//! End-to-end CLI tests. Every example in the README's usage section is
//! reproduced here bit-exactly, and the exit-code taxonomy {0, 1, 2} is
//! pinned.

use std::path::Path;
use std::process::{Command, Output};

fn glp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[track_caller]
fn expect(args: &[&str], expected_stdout: &str, expected_code: i32) {
    let out = glp(args);
    assert_eq!(stdout(&out), expected_stdout, "stdout for {args:?}");
    assert_eq!(code(&out), expected_code, "exit code for {args:?}");
}

#[test]
fn readme_examples_bit_exact() {
    expect(&["parse", "<0>(T&<0>T)"], "<0>(T & <0>T)\n", 0);
    expect(&["ord", "<1>T"], "w\n", 0);
    expect(&["ord", "<2><2>T"], "w^(w^2)\n", 0);
    expect(&["cmp", "T", "<0>T"], "LT\n", 0);
    expect(&["cmp", "<1><2>T", "<2><1>T"], "GT\n", 0);
    expect(&["cmp", "<1><0>T", "<1>T"], "EQ\n", 0);
    expect(&["worm-of", "w+1"], "<0><1>T\n", 0);
    expect(&["worm-of", "w^w*2"], "<2><0><2>T\n", 0);
    expect(&["q", "0", "1", "T"], "<0>(T & <0>T)\n", 0);
    expect(
        &["prove-inclusion", "0", "0", "T"],
        "1. <1>T -> <0>T ; MONO(0,1)\nGOAL <1>T -> <0>T\n",
        0,
    );
    expect(
        &["certify-less", "T", "<0>T"],
        "1. <0>T -> <0>T ; TAUT\nGOAL <0>T -> <0>T\n",
        0,
    );
}

#[test]
fn check_accepts_and_rejects() {
    let dir = tempdir();
    let good = dir.join("good.proof");
    let proof = stdout(&glp(&["prove-inclusion", "1", "2", "<0>T"]));
    std::fs::write(&good, &proof).unwrap();
    expect(&["check", good.to_str().unwrap()], "OK\n", 0);

    // tamper with one line: the checker pinpoints it
    let bad = dir.join("bad.proof");
    let tampered = proof.replacen("<2><0>T", "<2><2>T", 1);
    assert_ne!(tampered, proof);
    std::fs::write(&bad, tampered).unwrap();
    let out = glp(&["check", bad.to_str().unwrap()]);
    assert!(
        stdout(&out).starts_with("ERROR line "),
        "got: {}",
        stdout(&out)
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn certify_less_not_found_is_a_domain_answer() {
    expect(&["certify-less", "<1>T", "<1>T"], "NOTFOUND\n", 1);
    expect(&["certify-less", "<1>T", "<0>T"], "NOTFOUND\n", 1);
    // generated certificates pass the checker
    let dir = tempdir();
    let file = dir.join("cert.proof");
    let proof = stdout(&glp(&[
        "certify-less",
        "<0><0><0>T",
        "<1>T",
        "--depth",
        "32",
    ]));
    std::fs::write(&file, proof).unwrap();
    expect(&["check", file.to_str().unwrap()], "OK\n", 0);
}

#[test]
fn eliminate_reports_level_and_proof() {
    let dir = tempdir();
    let file = dir.join("refl.rr");
    std::fs::write(
        &file,
        "RULE 1 ; T\n1. T ; PROP\n2. <1>(T & T) ; RR(1)\nGOAL <1>(T & T)\n",
    )
    .unwrap();
    let out = glp(&["eliminate", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("k 0\n"), "got: {text}");
    let proof_file = dir.join("eliminated.proof");
    std::fs::write(&proof_file, text.trim_start_matches("k 0\n")).unwrap();
    expect(&["check", proof_file.to_str().unwrap()], "OK\n", 0);

    // a derivation whose step is not of rule shape is rejected
    let bad = dir.join("bad.rr");
    std::fs::write(
        &bad,
        "RULE 1 ; T\n1. T ; PROP\n2. <0>T ; RR(1)\nGOAL <0>T\n",
    )
    .unwrap();
    let out = glp(&["eliminate", bad.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("ERROR"), "got: {}", stdout(&out));
    assert_eq!(code(&out), 1);
}

#[test]
fn certificates_round_trip_through_files() {
    let dir = tempdir();
    let cert = dir.join("cert.json");
    expect(
        &[
            "certify",
            "<0><1>T",
            "--k",
            "2",
            "--out",
            cert.to_str().unwrap(),
        ],
        "",
        0,
    );
    expect(&["verify", cert.to_str().unwrap()], "OK\n", 0);

    // tampering with the serialized ordinal label is caught, with a path
    let text = std::fs::read_to_string(&cert).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        text.replacen("\"ordinal\": \"w+1\"", "\"ordinal\": \"w^w\"", 1),
    )
    .unwrap();
    let out = glp(&["verify", bad.to_str().unwrap()]);
    assert!(
        stdout(&out).starts_with("ERROR certificate invalid at root"),
        "got: {}",
        stdout(&out)
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn theory_ordinals() {
    let dir = tempdir();
    let pa = dir.join("pa.thy");
    std::fs::write(&pa, "# consistency schema, one level up\nSCHEMA offset=1\n").unwrap();
    expect(&["theory-ord", pa.to_str().unwrap()], "e0\n", 0);

    let one = dir.join("one.thy");
    std::fs::write(&one, "AXIOM <0>T\n").unwrap();
    expect(&["theory-ord", one.to_str().unwrap()], "1\n", 0);

    let empty = dir.join("empty.thy");
    std::fs::write(&empty, "").unwrap();
    expect(&["theory-ord", empty.to_str().unwrap()], "0\n", 0);
}

#[test]
fn transfinite_indices_are_syntax_but_not_decidable() {
    // the fundamental-sequence formula accepts limit levels syntactically
    expect(&["q", "w", "1", "T"], "<w>(T & <w>T)\n", 0);
    expect(&["parse", "<w+1>[w]T"], "<w+1>[w]T\n", 0);
    // decision procedures and the certificate engine reject them
    let out = glp(&["certify", "<w>T"]);
    assert_eq!(code(&out), 2);
    let out = glp(&["cmp", "<w>T", "T"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["ord", "[0]T"][..],         // not a worm
        &["ord", "<w>T"],             // transfinite index
        &["ord", "<100000>T"],        // index beyond the decidable bound
        &["parse", "<1>"],            // syntax error
        &["worm-of", "e0"],           // epsilon_0 is not an ordinal literal
        &["check", "/nonexistent/x"], // unreadable file
        &["frobnicate"],              // unknown subcommand (clap)
    ] {
        let out = glp(args);
        assert_eq!(
            code(&out),
            2,
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(stdout(&out), "", "stdout must stay clean for {args:?}");
    }
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("glp-cli-test-{}", std::process::id()));
    if !Path::new(&dir).exists() {
        std::fs::create_dir_all(&dir).unwrap();
    }
    dir
}
