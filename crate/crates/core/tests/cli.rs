//! The `rigidity` binary, end to end.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use reduction_rigidity::report::{cache_file_name, CacheFile, CSV_HEADER};

const SCAN: [&str; 9] = [
    "scan",
    "--curve1",
    "0,-2",
    "--point1",
    "3,5",
    "--curve2",
    "0,-2",
    "--point2",
    "1290:-383:1000",
];

fn rigidity(args: &[&str], env_cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rigidity"));
    cmd.args(args).env_remove("RIGIDITY_CACHE_DIR");
    if let Some(dir) = env_cache {
        cmd.env("RIGIDITY_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn with(base: &[&str], extra: &[&str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

fn run(args: &[String], env_cache: Option<&Path>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    rigidity(&refs, env_cache)
}

#[test]
fn scan_recovers_doubling() {
    let o = run(&with(&SCAN, &["--pmax", "10000"]), None);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.contains("counterexamples: none"), "{text}");
    assert!(text.contains("m=2"), "{text}");
}

#[test]
fn affine_and_projective_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let mut affine = with(&SCAN, &["--pmax", "500", "--out", a.to_str().unwrap()]);
    affine[8] = "129/100,-383/1000".into();
    assert_eq!(run(&affine, None).status.code(), Some(0));
    let proj = with(&SCAN, &["--pmax", "500", "--out", b.to_str().unwrap()]);
    assert_eq!(run(&proj, None).status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn weil_sweep_and_usage_errors() {
    assert_eq!(
        rigidity(&["weil", "--g", "1", "--nm-max", "10000"], None)
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        rigidity(&["weil", "--no-such-flag"], None).status.code(),
        Some(2)
    );
    assert_eq!(rigidity(&[], None).status.code(), Some(2));
    assert_eq!(
        rigidity(
            &["scan", "--curve1", "0,0", "--point1", "0,0", "--point2", "0,0"],
            None
        )
        .status
        .code(),
        Some(2)
    );
    // torsion point: (2, 3) has order 6 on y^2 = x^3 + 1
    let torsion = [
        "scan", "--curve1", "0,1", "--point1", "2,3", "--point2", "2,3", "--pmax", "100",
    ];
    assert_eq!(rigidity(&torsion, None).status.code(), Some(2));
}

#[test]
fn worker_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let path = dir.path().join(format!("w{workers}.csv"));
        let args = with(
            &SCAN,
            &[
                "--pmax",
                "3000",
                "--workers",
                workers,
                "--out",
                path.to_str().unwrap(),
            ],
        );
        assert_eq!(run(&args, None).status.code(), Some(0));
        outputs.push(fs::read(&path).unwrap());
        assert!(dir
            .path()
            .join(format!("w{workers}.csv.meta.json"))
            .exists());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].starts_with(format!("{CSV_HEADER}\n").as_bytes()));

    for workers in ["1", "8"] {
        let path = dir.path().join(format!("e{workers}.json"));
        let args = [
            "endos",
            "--p",
            "5",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ];
        assert_eq!(rigidity(&args, None).status.code(), Some(0));
    }
    assert_eq!(
        fs::read(dir.path().join("e1.json")).unwrap(),
        fs::read(dir.path().join("e8.json")).unwrap()
    );
}

#[test]
fn resumed_scan_equals_cold_scan() {
    let dir = tempfile::tempdir().unwrap();
    let cold = dir.path().join("cold.csv");
    let warm = dir.path().join("warm.csv");
    let cache = dir.path().join("cache");
    assert_eq!(
        run(
            &with(&SCAN, &["--pmax", "4000", "--out", cold.to_str().unwrap()]),
            None
        )
        .status
        .code(),
        Some(0)
    );
    // populate the cache through the environment variable, then extend it
    assert_eq!(
        run(&with(&SCAN, &["--pmax", "1500"]), Some(&cache))
            .status
            .code(),
        Some(0)
    );
    let o = run(
        &with(&SCAN, &["--pmax", "4000", "--out", warm.to_str().unwrap()]),
        Some(&cache),
    );
    assert!(stdout(&o).contains("from cache"), "{}", stdout(&o));
    assert_eq!(fs::read(&cold).unwrap(), fs::read(&warm).unwrap());

    let files: Vec<_> = fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_string();
    let text = fs::read_to_string(&files[0]).unwrap();
    let parsed = CacheFile::parse(&text).unwrap();
    assert_eq!(name, cache_file_name(&parsed.key));
    assert_eq!(parsed.render(), text);
    assert!(parsed.records.windows(2).all(|w| w[0].p < w[1].p));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.conf");
    fs::write(
        &cfg,
        "# cross-curve scan\ncurve1 = 0,-2\npoint1 = 3,5\ncurve2 = 1,1\npoint2 = 0,1\npmax = 300\nexpect-clean = true\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = rigidity(&["scan", "--config", cfg], None);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    // command-line flags win over the file
    let o = rigidity(
        &[
            "scan", "--config", cfg, "--curve2", "0,-2", "--point2", "3,5",
        ],
        None,
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let args = [
        "density",
        "--curve1",
        "0,-2",
        "--point1",
        "3,5",
        "--ell",
        "3",
        "--pmax",
        "10000",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(rigidity(&args, None).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["divisible"], "532/1227");
    assert_eq!(v["coprime"], "695/1227");

    let out = dir.path().join("m.json");
    assert_eq!(
        rigidity(&["mahler", "--out", out.to_str().unwrap()], None)
            .status
            .code(),
        Some(0)
    );
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["psi"], serde_json::json!(["1", "2", "5", "16", "65"]));
    assert_eq!(v["nonpolynomial"], true);

    for args in [
        vec!["lemma4", "--ell", "3", "--n", "2", "--mode", "both"],
        vec![
            "h1", "--ell", "5", "--n", "2", "--gens", "2,0,0,2", "--tau", "2,0,0,2",
        ],
        vec![
            "ap-compare",
            "--curve1",
            "1,1",
            "--curve2",
            "-1,1",
            "--pmax",
            "2000",
        ],
    ] {
        let o = rigidity(&args, None);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    // tau outside the group is a usage error, not a violation
    assert_eq!(
        rigidity(
            &["h1", "--ell", "3", "--gens", "1,1,0,1", "--tau", "2,0,0,2"],
            None
        )
        .status
        .code(),
        Some(2)
    );
}
