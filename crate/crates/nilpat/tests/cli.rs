//! End-to-end tests of the compiled `nilpat` binary: exit codes on real
//! files, output shapes, determinism, and environment handling.

use std::path::PathBuf;
use std::process::{Command, Output};

use nilpat::analysis::Status;
use nilpat::cli::{AnalysisReport, ClassificationTable};
use nilpat::pattern::Pattern;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the binary with the given arguments and optional extra
/// environment variables, capturing everything.
fn nilpat(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nilpat"));
    cmd.args(args);
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// Writes a pattern file into a fresh temporary directory and returns
/// the (directory guard, file path) pair.
fn temp_pattern(text: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("pattern.pat");
    std::fs::write(&path, text).expect("write pattern");
    (dir, path)
}

/// Zeroes the digits of every `"micros": N` field so that two reports
/// can be compared byte-for-byte up to timings.
fn normalize_micros(json: &str) -> String {
    let mut out = String::with_capacity(json.len());
    let marker = "\"micros\":";
    let mut rest = json;
    while let Some(at) = rest.find(marker) {
        let (head, tail) = rest.split_at(at + marker.len());
        out.push_str(head);
        let tail = tail.trim_start();
        let digits = tail.chars().take_while(char::is_ascii_digit).count();
        out.push_str(" 0");
        rest = &tail[digits..];
    }
    out.push_str(rest);
    out
}

#[test]
fn analyze_exits_zero_on_a_potentially_nilpotent_pattern() {
    let out = nilpat(
        &["analyze", fixture("loops_with_cycle.pat").to_str().unwrap(), "--prime", "7"],
        &[],
    );
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("potentially nilpotent"), "{text}");
    assert!(!text.contains("not potentially nilpotent"), "{text}");
}

#[test]
fn analyze_exits_one_on_a_refuted_pattern() {
    let out = nilpat(
        &["analyze", fixture("corner_loop_tridiagonal.pat").to_str().unwrap(), "--prime", "2"],
        &[],
    );
    assert_eq!(code_of(&out), 1, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("not potentially nilpotent"));
}

#[test]
fn analyze_exits_two_when_the_budget_starves_the_search() {
    let (_dir, path) = temp_pattern("***\n***\n***\n");
    let out = nilpat(&["analyze", path.to_str().unwrap(), "--prime", "7", "--budget", "1"], &[]);
    assert_eq!(code_of(&out), 2, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("unknown"));
}

#[test]
fn usage_errors_exit_sixty_four() {
    // Unknown subcommand.
    assert_eq!(code_of(&nilpat(&["frobnicate"], &[])), 64);
    // Missing the required field flag.
    let (_dir, path) = temp_pattern("*\n");
    assert_eq!(code_of(&nilpat(&["analyze", path.to_str().unwrap()], &[])), 64);
    // Both field flags at once.
    assert_eq!(
        code_of(&nilpat(
            &["analyze", path.to_str().unwrap(), "--prime", "3", "--rationals"],
            &[]
        )),
        64
    );
    // Order out of the supported range.
    assert_eq!(code_of(&nilpat(&["classify", "--order", "5", "--primes", "3"], &[])), 64);
    // A composite modulus is a usage error, not bad input.
    let out = nilpat(&["analyze", path.to_str().unwrap(), "--prime", "6"], &[]);
    assert_eq!(code_of(&out), 64);
    assert!(stderr_of(&out).contains("6"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code_of(&nilpat(&["--help"], &[])), 0);
    let out = nilpat(&["--version"], &[]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn bad_input_exits_sixty_five() {
    // Nonexistent file.
    let out = nilpat(&["analyze", "/no/such/file.pat", "--prime", "3"], &[]);
    assert_eq!(code_of(&out), 65);
    assert!(!stderr_of(&out).is_empty());
    // Non-square pattern.
    let (_dir, path) = temp_pattern("**\n*\n");
    assert_eq!(code_of(&nilpat(&["analyze", path.to_str().unwrap(), "--prime", "3"], &[])), 65);
    // Stray character.
    let (_dir2, path2) = temp_pattern("*x\n00\n");
    assert_eq!(code_of(&nilpat(&["analyze", path2.to_str().unwrap(), "--prime", "3"], &[])), 65);
}

#[test]
fn signed_patterns_are_accepted_over_both_fields() {
    // Signs embed as ±1 coefficients over a prime field, and this
    // pattern's saturation refutation holds over Z_3 and over the
    // rationals alike.
    let signed = fixture("sign_order5.pat");
    for field_args in [&["--prime", "3"][..], &["--rationals"][..]] {
        let mut args = vec!["analyze", signed.to_str().unwrap()];
        args.extend_from_slice(field_args);
        let out = nilpat(&args, &[]);
        assert_eq!(code_of(&out), 1, "{field_args:?}: {}", stderr_of(&out));
        assert!(stdout_of(&out).contains("saturation_unit"), "{field_args:?}");
    }
}

#[test]
fn analyze_json_report_is_well_formed() {
    let out = nilpat(
        &[
            "analyze",
            fixture("loops_with_cycle.pat").to_str().unwrap(),
            "--prime",
            "7",
            "--format",
            "json",
        ],
        &[],
    );
    assert_eq!(code_of(&out), 0);
    let raw = stdout_of(&out);
    let report: AnalysisReport = serde_json::from_str(&raw).expect("valid report JSON");
    assert_eq!(report.pattern, "**0\n0**\n*0*");
    assert_eq!(report.order, 3);
    assert_eq!(report.field, "Z_7");
    assert_eq!(report.status, Status::PotentiallyNilpotent);
    assert_eq!(report.version, env!("CARGO_PKG_VERSION"));
    let matrix = report.realization.expect("positive verdicts carry a realization");
    assert_eq!(matrix.len(), 3);
    assert!(!report.stages.is_empty());
    // Keys appear in document order, not alphabetical order.
    let keys =
        ["pattern", "order", "field", "status", "certificate", "realization", "stages", "version"];
    let positions: Vec<usize> =
        keys.iter().map(|k| raw.find(&format!("\"{k}\":")).expect("key present")).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "top-level key order: {positions:?}");
}

#[test]
fn analyze_json_is_deterministic_up_to_timings() {
    let file = fixture("corner_loop_tridiagonal.pat");
    let args =
        ["analyze", file.to_str().unwrap(), "--prime", "5", "--format", "json"];
    let first = nilpat(&args, &[]);
    let second = nilpat(&args, &[]);
    assert_eq!(code_of(&first), code_of(&second));
    assert_eq!(
        normalize_micros(&stdout_of(&first)),
        normalize_micros(&stdout_of(&second)),
        "reports differ beyond stage timings"
    );
}

#[test]
fn classify_order_two_json_matches_known_verdicts() {
    let out = nilpat(&["classify", "--order", "2", "--primes", "2,13", "--format", "json"], &[]);
    assert_eq!(code_of(&out), 0);
    let table: ClassificationTable =
        serde_json::from_str(&stdout_of(&out)).expect("valid table JSON");
    assert_eq!(table.order, 2);
    assert_eq!(table.primes, vec![2, 13]);
    assert_eq!(table.classes.len(), 3);

    let canon = |text: &str| {
        Pattern::parse(&text.replace('|', "\n"))
            .unwrap()
            .canonicalize()
            .unwrap()
            .render()
            .replace('\n', "|")
    };
    for row in &table.classes {
        let expect_pn = row.pattern == canon("**|**");
        if expect_pn {
            assert_eq!(row.group, Some(1), "{}", row.pattern);
        } else {
            assert_eq!(row.group, None, "{}", row.pattern);
            assert!(row.pattern == canon("0*|*0") || row.pattern == canon("**|*0"));
        }
        for verdict in &row.verdicts {
            let expected =
                if expect_pn { Status::PotentiallyNilpotent } else { Status::NotPotentiallyNilpotent };
            assert_eq!(*verdict, expected, "{}", row.pattern);
        }
    }
}

#[test]
fn classify_out_flag_duplicates_stdout_bytes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("table.json");
    let out = nilpat(
        &[
            "classify",
            "--order",
            "2",
            "--primes",
            "3",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(code_of(&out), 0);
    let written = std::fs::read(&path).expect("output file exists");
    assert_eq!(written, out.stdout, "--out must mirror stdout exactly");
}

#[test]
fn groebner_prints_one_polynomial_per_line() {
    let out = nilpat(
        &["groebner", fixture("loops_with_cycle.pat").to_str().unwrap(), "--rationals"],
        &[],
    );
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines.iter().any(|l| l.contains("z[1,1]") && l.contains("z[3,3]")), "{text}");
}

#[test]
fn saturate_prints_both_sections() {
    let out = nilpat(
        &["saturate", fixture("corner_loop_tridiagonal.pat").to_str().unwrap(), "--prime", "2"],
        &[],
    );
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let colon_at = text.find("# I : (m)\n").expect("colon section");
    let sat_at = text.find("# I : (m)^inf\n").expect("saturation section");
    assert!(colon_at < sat_at);
    // The saturation is the unit ideal here, so its basis is exactly 1.
    let sat_body = &text[sat_at..];
    assert!(sat_body.lines().nth(1) == Some("1"), "{text}");
}

#[cfg(unix)]
#[test]
fn early_pipe_close_does_not_panic() {
    // `nilpat ... | head -1` must end by SIGPIPE (shell status 141) or
    // normally, never with a panic (status 101).
    let cmd = format!(
        "{} saturate {} --prime 2 | head -1 > /dev/null; exit ${{PIPESTATUS[0]}}",
        env!("CARGO_BIN_EXE_nilpat"),
        fixture("corner_loop_tridiagonal.pat").display()
    );
    let status = Command::new("bash").args(["-c", &cmd]).status().expect("shell runs");
    assert!(
        matches!(status.code(), Some(0) | Some(141)),
        "pipeline status was {status:?}"
    );
}

#[test]
fn thread_cap_is_honored_and_junk_warns() {
    let file = fixture("loops_with_cycle.pat");
    let quiet = nilpat(
        &["analyze", file.to_str().unwrap(), "--prime", "7"],
        &[("NILPAT_THREADS", "1")],
    );
    assert_eq!(code_of(&quiet), 0);
    assert!(stderr_of(&quiet).is_empty(), "{}", stderr_of(&quiet));

    let noisy = nilpat(
        &["analyze", file.to_str().unwrap(), "--prime", "7"],
        &[("NILPAT_THREADS", "zero")],
    );
    assert_eq!(code_of(&noisy), 0, "a bad thread cap must not change the verdict");
    assert!(stderr_of(&noisy).contains("NILPAT_THREADS"), "{}", stderr_of(&noisy));

    let classify = nilpat(
        &["classify", "--order", "2", "--primes", "2,3"],
        &[("NILPAT_THREADS", "2")],
    );
    assert_eq!(code_of(&classify), 0);
}
