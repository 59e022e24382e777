use std::io::Write;
use std::process::{Command, Output};

fn polyrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Evaluates a printed witness such as `6*X + 1*X^2 + 6*X^3` at `a`.
fn eval_witness(text: &str, n: u64, a: u64) -> u64 {
    if text == "0" {
        return 0;
    }
    text.split(" + ").fold(0, |acc, term| {
        let (c, deg) = match term.split_once("*X") {
            None => (term.parse::<u64>().unwrap(), 0),
            Some((c, rest)) => (
                c.parse().unwrap(),
                rest.strip_prefix('^').map_or(1, |d| d.parse().unwrap()),
            ),
        };
        let mut v = c % n;
        for _ in 0..deg {
            v = v * a % n;
        }
        (acc + v) % n
    })
}

#[test]
fn squares_mod_12_are_polynomial() {
    let o = polyrep(&["decide", "--n", "12", "--values", "0,1,4,9,4,1,0,1,4,9,4,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: polynomial"));
    let witness = out.lines().find_map(|l| l.strip_prefix("witness: ")).unwrap();
    let values: Vec<u64> = (0..12).map(|a| eval_witness(witness, 12, a)).collect();
    assert_eq!(values, [0, 1, 4, 9, 4, 1, 0, 1, 4, 9, 4, 1]);
}

#[test]
fn no_witness_flag() {
    let o = polyrep(&[
        "decide",
        "--n",
        "12",
        "--no-witness",
        "--values",
        "0,1,4,9,4,1,0,1,4,9,4,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("witness"));
}

#[test]
fn indicator_rejected_at_precheck() {
    let o = polyrep(&["decide", "--n", "12", "--values", "0,1,0,0,0,0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stage: precheck"));
}

#[test]
fn wrong_length_is_a_usage_error() {
    let o = polyrep(&["decide", "--n", "12", "--values", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "# squares\n0\n1\n4\n9x\n").unwrap();
    let path = file.path().to_str().unwrap();
    let o = polyrep(&["decide", "--n", "16", "--file", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5, column 1"), "{}", stderr(&o));
}

#[test]
fn file_input() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# X^2 over Z_8").unwrap();
    for a in 0..8u64 {
        writeln!(file, "{}", a * a % 8).unwrap();
    }
    let path = file.path().to_str().unwrap();
    let o = polyrep(&["decide", "--n", "8", "--file", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = polyrep(&["decide", "--n", "8", "--algorithm", "canonical", "--file", path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coefficients: 0,0,1,0"));
}

#[test]
fn small_commands() {
    let o = polyrep(&["kempner", "12"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = polyrep(&["count", "4"]);
    assert_eq!(stdout(&o).trim(), "64");
    let o = polyrep(&["generators", "12"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = polyrep(&["generators", "12", "--polynomials"]);
    assert!(stdout(&o).starts_with("p=2 j=0 k=0: 3 + 9*X^4\n"));
}

#[test]
fn resource_guard_exit_code() {
    let o = polyrep(&["count", "11"]);
    assert_eq!(o.status.code(), Some(3));
    let o = polyrep(&["decide-multi", "--n", "1000", "--arity", "3", "--values", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_command() {
    assert_eq!(
        polyrep(&["oracle", "--n", "4", "--values", "0,1,0,0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        polyrep(&["oracle", "--n", "4", "--values", "0,1,0,1"]).status.code(),
        Some(0)
    );
}

#[test]
fn multivariate_decisions() {
    let table: Vec<String> = (0..36).map(|i| ((i / 6) * (i % 6) % 6).to_string()).collect();
    let o = polyrep(&["decide-multi", "--n", "6", "--arity", "2", "--values", &table.join(",")]);
    assert_eq!(o.status.code(), Some(0));
    let mut point_mass = vec!["0"; 36];
    point_mass[0] = "1";
    let o = polyrep(&[
        "decide-multi",
        "--n",
        "6",
        "--arity",
        "2",
        "--values",
        &point_mass.join(","),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stage: precheck"));
}

#[test]
fn bench_csv_and_json() {
    let o = polyrep(&["bench", "--n", "12,13", "--trials", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,factorization,mu,N,sum_e,algo,stage,mults,adds,time_ns,verdict\n"));
    assert!(stderr(&o).contains("n=12 trials=3"));

    let o = polyrep(&["bench", "--n", "12", "--trials", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["N"], 7);
    assert_eq!(rows[0]["agree"], true);
}

#[test]
fn bench_is_deterministic() {
    let strip = |o: Output| -> Vec<String> {
        stdout(&o)
            .lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{}|{}", f[..9].join(","), f[10])
            })
            .collect()
    };
    let args = [
        "bench", "--n", "36", "--trials", "5", "--seed", "3", "--inputs", "mixed",
    ];
    assert_eq!(strip(polyrep(&args)), strip(polyrep(&args)));
}

#[test]
fn witness_skipped_for_large_phi() {
    let n = 100_003u64 * 3;
    let values: Vec<String> = (0..n).map(|a| (a * a % n).to_string()).collect();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{}", values.join("\n")).unwrap();
    let o = polyrep(&["decide", "--n", &n.to_string(), "--file", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("witness: skipped"));
}
