use std::io::{Read, Write};
use std::process::{Command, Output, Stdio};

use stepseq::generators::stream_for_j;

fn stepseq(args: &[&str]) -> Output {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stepseq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn stepseq");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn generate_examples() {
    let o = stepseq(&["generate", "--m", "4", "--method", "greedy"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "3 2 3 2 1 2 3 2 1 2 1\n");
    assert_eq!(
        stdout(&stepseq(&["generate", "--m", "3", "--method", "recursive"])),
        "2 1 2 1\n"
    );
    assert_eq!(
        stdout(&stepseq(&["generate", "--m", "3", "--method", "humble"])),
        "1 2 1 2\n"
    );
}

#[test]
fn verify_examples() {
    let o = run_with_stdin(&["verify", "--m", "3"], "2 1 2 1\n");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "valid\n"));

    let o = run_with_stdin(&["verify", "--m", "2"], "1 1\n");
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "invalid: consecutive-equal-moves at step 2\n");

    let o = run_with_stdin(&["verify", "--m", "3"], "2 1 2\n");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("wrong-length"));

    let o = run_with_stdin(&["verify", "--m", "3"], "2 one 2\n");
    assert_eq!(code(&o), 2);

    let o = run_with_stdin(&["verify", "--m", "1"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "valid\n"));

    let o = run_with_stdin(&["verify", "--m", "3"], "2 1 2 1\n1 2 1 2\n2 1 1 2\n");
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = run_with_stdin(&["verify", "--m", "4"], "3 2 3 2 1 2 3 2 1 2 1\n");
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_reads_files_and_honours_limit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r3.txt");
    std::fs::write(&path, "2 1 2 1\n").unwrap();
    let o = stepseq(&["verify", "--m", "3", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = stepseq(&[
        "verify",
        "--m",
        "3",
        "--limit-verify",
        "2",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    let o = stepseq(&["verify", "--m", "3", "--input", "/nonexistent/file"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn generate_then_verify_round_trip() {
    for method in ["recursive", "greedy", "humble", "for-c", "for-j"] {
        for m in 2..=16 {
            let m_arg = m.to_string();
            let generated = stepseq(&["generate", "--m", &m_arg, "--method", method]);
            assert_eq!(code(&generated), 0);
            let o = run_with_stdin(&["verify", "--m", &m_arg], &stdout(&generated));
            assert_eq!(code(&o), 0, "{method} m = {m}");
        }
    }
}

#[test]
fn streaming_at_m40_matches_for_j() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stepseq"))
        .args(["generate", "--m", "40", "--method", "for-c", "--stream"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut buf = vec![0u8; 4096];
    let mut text = String::new();
    let mut pipe = child.stdout.take().unwrap();
    while text.split_whitespace().count() <= 100 {
        let n = pipe.read(&mut buf).unwrap();
        assert!(n > 0, "stream ended early");
        text.push_str(std::str::from_utf8(&buf[..n]).unwrap());
    }
    drop(pipe);
    child.kill().ok();
    child.wait().ok();
    let tokens: Vec<u8> = text
        .split_whitespace()
        .take(100)
        .map(|t| t.parse().unwrap())
        .collect();
    let expected: Vec<u8> = stream_for_j(40).unwrap().take(100).collect();
    assert_eq!(tokens, expected);
}

#[test]
fn stream_and_limit_errors() {
    assert_eq!(code(&stepseq(&["generate", "--m", "40"])), 3);
    assert_eq!(
        code(&stepseq(&["generate", "--m", "25", "--method", "greedy"])),
        3
    );
    assert_eq!(
        code(&stepseq(&[
            "generate", "--m", "5", "--method", "greedy", "--stream"
        ])),
        2
    );
    assert_eq!(code(&stepseq(&["generate", "--m", "1"])), 2);
    assert_eq!(
        code(&stepseq(&[
            "generate", "--m", "65", "--method", "for-c", "--stream"
        ])),
        3
    );
    assert_eq!(
        code(&stepseq(&["generate", "--m", "4", "--method", "sideways"])),
        2
    );
    let o = stepseq(&["generate", "--m", "6", "--limit-materialize", "5"]);
    assert_eq!(code(&o), 3);
    let o = stepseq(&["generate", "--m", "5", "--method", "for-j", "--stream"]);
    assert_eq!(stdout(&o), stdout(&stepseq(&["generate", "--m", "5"])));
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        stdout(&stepseq(&["enumerate", "--m", "4", "--count-only"])),
        "34\n"
    );
    assert_eq!(
        stdout(&stepseq(&["enumerate", "--m", "3"])),
        "1 2 1 2\n2 1 2 1\n"
    );
    let o = stepseq(&["enumerate", "--m", "6", "--strong"]);
    let r6 = stdout(&stepseq(&["generate", "--m", "6"]));
    let a6 = "5 4 5 4 3 2 3 4 5 4 3 2 3 4 3 2 3 2 1 2 3 4 5 4 3 4 3 2 3 4 3 2 3 2 1 2 3 4 5 4 3 4 3 2 3 4 3 2 1 2 3 4 3 2 1 2 1\n";
    assert_eq!(stdout(&o), format!("{a6}{r6}"));
    assert_eq!(
        stdout(&stepseq(&[
            "enumerate",
            "--m",
            "6",
            "--contiguous",
            "--count-only"
        ])),
        "4\n"
    );
    assert_eq!(
        stdout(&stepseq(&[
            "enumerate",
            "--m",
            "5",
            "--strong",
            "--count-only"
        ])),
        "1\n"
    );
}

#[test]
fn enumerate_limits_and_budget() {
    assert_eq!(
        code(&stepseq(&["enumerate", "--m", "6", "--count-only"])),
        3
    );
    let o = stepseq(&["enumerate", "--m", "4", "--count-only", "--budget", "10"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = stepseq(&[
        "enumerate",
        "--m",
        "7",
        "--strong",
        "--count-only",
        "--budget",
        "100",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(
        code(&stepseq(&[
            "enumerate",
            "--m",
            "4",
            "--strong",
            "--contiguous"
        ])),
        2
    );
}

#[test]
fn enumerate_is_thread_independent() {
    let one = stepseq(&["enumerate", "--m", "4"]);
    let four = stepseq(&["enumerate", "--m", "4", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 34);
    let one = stepseq(&["enumerate", "--m", "5", "--count-only"]);
    let four = stepseq(&["enumerate", "--m", "5", "--count-only", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn graycode_listing() {
    let o = stepseq(&["graycode", "--m", "4", "--format", "binary"]);
    let expected =
        "0000 0001 0011 0111 1111 1011 1001 1101 0101 0100 1100 1110 0110 0010 1010 1000";
    assert_eq!(
        stdout(&o).split_whitespace().collect::<Vec<_>>().join(" "),
        expected
    );
    assert_eq!(stdout(&o).lines().count(), 16);
    let o = stepseq(&["graycode", "--m", "2", "--format", "decimal"]);
    assert_eq!(stdout(&o), "0\n1\n3\n2\n");
    let o = run_with_stdin(&["graycode", "--m", "3", "--input", "-"], "2 1 2 1\n");
    assert_eq!(stdout(&o), "000\n001\n011\n111\n101\n100\n110\n010\n");
    let o = run_with_stdin(&["graycode", "--m", "3", "--input", "-"], "2 1 2\n");
    assert_eq!(code(&o), 1);
}

#[test]
fn ksubsets_listing() {
    let o = stepseq(&["ksubsets", "--m", "6", "--k", "2"]);
    let expected =
        "{0,1} {0,5} {0,4} {0,3} {0,2} {2,3} {2,5} {2,4} {1,2} {1,4} {1,3} {1,5} {3,5} {4,5} {3,4}";
    assert_eq!(
        stdout(&o).split_whitespace().collect::<Vec<_>>().join(" "),
        expected
    );
    assert_eq!(
        stdout(&stepseq(&["ksubsets", "--m", "3", "--k", "0"])),
        "{}\n"
    );
    assert_eq!(code(&stepseq(&["ksubsets", "--m", "3", "--k", "4"])), 2);
}

#[test]
fn check_brgc_output() {
    let o = stepseq(&["check-brgc", "--m", "3"]);
    assert_eq!(
        stdout(&o),
        "violation at position 6: 101 {0,2}\nfamily: {} {1} {0,2} {0,1,2}\n"
    );
    assert_eq!(
        stdout(&stepseq(&["check-brgc", "--m", "2"])),
        "no nesting violation\n"
    );
    assert_eq!(code(&stepseq(&["check-brgc", "--m", "0"])), 2);
}

#[test]
fn census_output() {
    let o = stepseq(&["census-m4"]);
    let text = stdout(&o);
    for line in [
        "total 34",
        "combinator-products 8",
        "commutation-closure 18",
        "remaining-orbit 16",
        "reverse-equals-complement 10",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?}");
    }
    let listed = stdout(&stepseq(&["census-m4", "--list"]));
    assert!(listed.contains("  3 2 3 2 1 2 3 2 1 2 1\n"));
}

#[test]
fn transform_ops() {
    let t = |op: &str, input: &str| {
        stdout(&run_with_stdin(
            &["transform", "--m", "4", "--op", op],
            input,
        ))
    };
    assert_eq!(
        t("reverse", "3 2 3 2 1 2 3 1 2 1 2\n"),
        "2 1 2 1 3 2 1 2 3 2 3\n"
    );
    assert_eq!(
        t("complement", "3 2 3 2 1 2 3 1 2 1 2\n"),
        "1 2 1 2 3 2 1 3 2 3 2\n"
    );
    assert_eq!(
        t("commutations", "3 2 3 2 1 2 3 1 2 1 2\n"),
        "3 2 3 2 1 2 1 3 2 1 2\n"
    );
    let orbit = t("orbit", "2 1 2 3 2 3 1 2 3 2 1\n2 3 1 2 3 2 1 2 3 1 2\n");
    assert_eq!(orbit.lines().count(), 16);
    let o = run_with_stdin(
        &[
            "transform",
            "--m",
            "4",
            "--op",
            "orbit",
            "--ops",
            "commutation",
        ],
        "3 2 3 2 1 2 3 1 2 1 2\n",
    );
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r4.txt");
    let o = stepseq(&["generate", "--m", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "3 2 3 2 1 2 3 2 1 2 1\n"
    );
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 6] = [
        &["generate", "--m", "10", "--method", "greedy"],
        &["enumerate", "--m", "4"],
        &["enumerate", "--m", "6", "--strong", "--threads", "3"],
        &["graycode", "--m", "5", "--format", "decimal"],
        &["census-m4", "--list"],
        &["check-brgc", "--m", "4"],
    ];
    for args in cases {
        assert_eq!(stepseq(args).stdout, stepseq(args).stdout, "{args:?}");
    }
}

#[test]
fn bench_reports_three_generators() {
    let o = stepseq(&["bench", "--m", "12"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    for name in ["recursive", "for-c", "for-j"] {
        assert!(
            text.lines()
                .any(|l| l.starts_with(name) && l.contains("4083 tokens")),
            "{name}"
        );
    }
}
