use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use realign_cli::format::csv_number;
use realign_cli::parse_params;
use realign_cli::report::parse_machine;
use realign_core::{evaluate_all, FamilySpec, CRITERION_TOL};

fn realign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realign"))
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

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FAMILIES: [(&str, &[&str]); 9] = [
    ("rho1", &[]),
    ("rho2", &[]),
    (
        "x-state",
        &["r11=0.5", "r33=0.3", "r44=0.2", "re14=0.1", "im14=-0.2"],
    ),
    ("horodecki-f", &["f=0.6"]),
    ("horodecki-beta", &["beta=3.9"]),
    ("max-entangled", &["d=3"]),
    ("ginibre", &["da=2", "db=3", "seed=7"]),
    ("ginibre", &["da=3", "db=3", "seed=11"]),
    ("random-separable", &["da=3", "db=3", "k=4", "seed=5"]),
];

#[test]
fn gen_then_check_matches_in_process_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    for (i, (family, params)) in FAMILIES.iter().enumerate() {
        let file = dir.path().join(format!("state{i}.json"));
        let mut args = vec!["gen", "--family", family, "--out", path(&file)];
        for p in *params {
            args.extend(["--param", p]);
        }
        let o = realign(&args);
        assert!(o.status.success(), "{family}: {}", stderr(&o));

        let o = realign(&["check", path(&file), "--machine"]);
        assert!(o.status.success(), "{family}: {}", stderr(&o));
        let printed = parse_machine(&stdout(&o));

        let raw: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let rho = FamilySpec::from_params(family, &parse_params(&raw).unwrap())
            .unwrap()
            .build()
            .unwrap();
        let eval = evaluate_all(&rho, CRITERION_TOL);
        for r in &eval.results {
            for (k, v) in &r.statistics {
                let key = format!("{}.{k}", r.name);
                let got = printed
                    .iter()
                    .find(|(pk, _)| *pk == key)
                    .map(|(_, v)| v.as_str());
                assert_eq!(got, Some(csv_number(*v).as_str()), "{family} {key}");
            }
            let key = format!("{}.verdict", r.name);
            let got = printed
                .iter()
                .find(|(pk, _)| *pk == key)
                .map(|(_, v)| v.as_str());
            assert_eq!(got, Some(r.verdict.as_str()), "{family} {key}");
        }
    }
}

#[test]
fn gen_rho1_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rho1.json");
    assert!(realign(&["gen", "--family", "rho1", "--out", path(&file)])
        .status
        .success());
    let parsed = realign_cli::statefile::StateFile::read(&file)
        .unwrap()
        .to_state(1e-9)
        .unwrap();
    assert_eq!(parsed, realign_core::families::rho1());
}

#[test]
fn max_entangled_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("phi.json");
    assert!(realign(&[
        "gen",
        "--family",
        "max-entangled",
        "--param",
        "d=3",
        "--out",
        path(&file)
    ])
    .status
    .success());
    let o = realign(&["check", path(&file)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("trace_norm=3 "), "{text}");
    assert!(text.contains("overall: ENTANGLED"));
}

#[test]
fn invalid_trace_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let rows: Vec<String> = (0..4)
        .map(|i| {
            let cells: Vec<&str> = (0..4)
                .map(|j| if i == j { "[0.225,0]" } else { "[0,0]" })
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    fs::write(
        &file,
        format!("{{\"dims\":[2,2],\"matrix\":[{}]}}", rows.join(",")),
    )
    .unwrap();
    let o = realign(&["check", path(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("TraceNotOne deviation 1.0e-1"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn missing_and_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = realign(&["check", path(&dir.path().join("absent.json"))]);
    assert_eq!(o.status.code(), Some(2));
    let file = dir.path().join("junk.json");
    fs::write(&file, "not json").unwrap();
    assert_eq!(realign(&["check", path(&file)]).status.code(), Some(2));
}

#[test]
fn non_psd_xstate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.json");
    let o = realign(&[
        "gen",
        "--family",
        "x-state",
        "--param",
        "r11=0.5",
        "--param",
        "r33=0.25",
        "--param",
        "r44=0.25",
        "--param",
        "re14=0.5",
        "--out",
        path(&file),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotPSD"), "{}", stderr(&o));
    assert!(!file.exists());
}

#[test]
fn unknown_family_and_bad_params() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    assert_eq!(
        realign(&["gen", "--family", "werner", "--out", path(&out)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        realign(&[
            "gen",
            "--family",
            "horodecki-f",
            "--param",
            "f",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        realign(&[
            "gen",
            "--family",
            "horodecki-f",
            "--param",
            "f=1.5",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn sweep_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    for (family, range) in [
        ("horodecki-f", "1:0:0.01"),
        ("horodecki-f", "0:1:-0.1"),
        ("rho1", "0:1:0.1"),
    ] {
        let o = realign(&[
            "sweep",
            "--family",
            family,
            "--range",
            range,
            "--out",
            path(&out),
        ]);
        assert_eq!(o.status.code(), Some(2), "{family} {range}");
    }
}

#[test]
fn sweep_reports_crossings_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o = realign(&[
        "sweep",
        "--family",
        "horodecki-f",
        "--range",
        "0:1:0.01",
        "--out",
        path(&a),
    ]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("crossing verdict_smin: INCONCLUSIVE -> ENTANGLED at param ~ 0.407407"),
        "{}",
        stdout(&o)
    );
    assert!(realign(&[
        "sweep",
        "--family",
        "horodecki-f",
        "--range",
        "0:1:0.01",
        "--out",
        path(&b)
    ])
    .status
    .success());
    let (a, b) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 102);
    assert_eq!(
        text.lines().next().unwrap(),
        "param,trace_norm_R,s_min_R,min_pt_eig,verdict_ppt,verdict_realign,verdict_smin"
    );
}

#[test]
fn bench_output() {
    let o = realign(&["bench", "--d", "3", "--trials", "10", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("agreement=OK"));

    let o = realign(&["bench", "--d", "2", "--trials", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["full_spectrum_mean_us=", "min_only_mean_us="] {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        let value: f64 = line[key.len()..].parse().unwrap();
        assert!(value >= 0.0);
    }

    assert_eq!(
        realign(&["bench", "--d", "1", "--trials", "1"])
            .status
            .code(),
        Some(2)
    );
}
