//! The command line end to end: exit codes, record schema, cache and determinism.

mod common;

use common::fixture_path;
use fsing::cli::record::without_timings;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fsing").chain(args.iter().copied());
    let code = fsing::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn record(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout {out}\nstderr {err}"));
    (code, v)
}

fn validator() -> jsonschema::Validator {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/result.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value, what: &str) {
    let val = validator();
    let errors: Vec<String> = val
        .iter_errors(v)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{what}: {errors:#?}");
}

/// One invocation per command, all on small fixtures.
fn command_corpus() -> Vec<(Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (s(&["fpure", "-i", &fx("node.fsg")]), 0),
        (s(&["fpure", "-i", &fx("trivial.fsg"), "--ideal", "Zero"]), 0),
        (s(&["compat", "-i", &fx("node.fsg"), "--along", "m"]), 0),
        (
            s(&[
                "sharp",
                "-i",
                &fx("trivial.fsg"),
                "--elem",
                "x",
                "--t",
                "1/2",
                "--emax",
                "2",
            ]),
            0,
        ),
        (
            s(&[
                "sharp",
                "-i",
                &fx("trivial.fsg"),
                "--elem",
                "x",
                "--t",
                "2",
                "--emax",
                "3",
            ]),
            2,
        ),
        (
            s(&[
                "sfr",
                "-i",
                &fx("quadric.fsg"),
                "--ideal",
                "Q",
                "--c",
                "x",
                "--emax",
                "1",
            ]),
            0,
        ),
        (s(&["smooth", "-i", &fx("chart_y.fsg")]), 0),
        (s(&["smooth", "-i", &fx("node.fsg")]), 1),
        (
            s(&["hk", "-i", &fx("node.fsg"), "--ideal", "Node", "--J", "m", "--e", "3"]),
            0,
        ),
        (s(&["fsig", "-i", &fx("trivial.fsg"), "--ideal", "Zero", "--e", "2"]), 0),
        (s(&["sdim", "-i", &fx("node3.fsg"), "--e1", "1", "--e2", "2"]), 0),
        (
            s(&[
                "rsig",
                "-i",
                &fx("node.fsg"),
                "--ideal",
                "Node",
                "--sop",
                "x-y",
                "--e",
                "2",
            ]),
            0,
        ),
        (s(&["csig", "-i", &fx("node.fsg"), "--sop", "x-y", "--e", "2"]), 0),
        (
            s(&[
                "perturb",
                "-i",
                &fx("trivial.fsg"),
                "--elem",
                "x",
                "--family",
                "-y^N",
                "--nrange",
                "1..2",
                "--prop",
                "fpure",
            ]),
            0,
        ),
        (
            s(&[
                "continuity",
                "-i",
                &fx("node3.fsg"),
                "--ideal",
                "m",
                "--elem",
                "x",
                "--deltas",
                "0; y",
                "--invariant",
                "hk",
                "--e",
                "1",
                "--J",
                "m",
            ]),
            0,
        ),
    ]
}

#[test]
fn every_command_emits_a_schema_valid_record() {
    for (args, want) in command_corpus() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = record(&args);
        assert_eq!(code, want, "{args:?}: {v}");
        assert_valid(&v, &args.join(" "));
        assert_eq!(v["cached"], Value::Bool(false));
    }
}

#[test]
fn documented_values() {
    let (code, v) = record(&["fpure", "-i", &fx("singh.fsg"), "--ideal", "A"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("FALSE")));
    let (_, v) = record(&["hk", "-i", &fx("node.fsg"), "--ideal", "Node", "--J", "m", "--e", "3"]);
    assert_eq!(v["values"]["length"], "15");
    let (_, v) = record(&["fsig", "-i", &fx("trivial.fsg"), "--ideal", "Zero", "--e", "2"]);
    assert_eq!(
        (
            v["values"]["value"]["num"].as_str(),
            v["values"]["value"]["den"].as_str()
        ),
        (Some("1"), Some("1"))
    );
    let (_, v) = record(&[
        "rsig",
        "-i",
        &fx("node.fsg"),
        "--ideal",
        "Node",
        "--sop",
        "x-y",
        "--e",
        "2",
    ]);
    assert_eq!(
        (
            v["values"]["value"]["num"].as_str(),
            v["values"]["value"]["den"].as_str()
        ),
        (Some("1"), Some("4"))
    );
    let (code, v) = record(&[
        "sfr",
        "-i",
        &fx("quadric.fsg"),
        "--ideal",
        "Q",
        "--c",
        "x",
        "--emax",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["e"], 1);
}

#[test]
fn table_and_jsonl_formats() {
    let (code, out, _) = run(&["--format", "table", "fpure", "-i", &fx("node.fsg")]);
    assert_eq!(code, 0);
    assert!(
        out.lines().any(|l| l.starts_with("verdict") && l.ends_with("TRUE")),
        "{out}"
    );

    let args = [
        "--format",
        "jsonl",
        "perturb",
        "-i",
        &fx("trivial.fsg"),
        "--elem",
        "x",
        "--family",
        "-y^N",
        "--nrange",
        "1..3",
        "--prop",
        "fpure",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["n"], Value::Null);
    assert_eq!(lines[3]["n"], 3);
    assert!(lines[4].get("rows").is_none());
    assert_valid(&lines[4], "jsonl summary");
}

#[test]
fn zero_only_sweep_row_equals_the_direct_run() {
    let dir = tempfile::tempdir().unwrap();
    let section = dir.path().join("section.fsg");
    std::fs::write(&section, "[ring]\np = 3\nvars = x, y\n[ideal.S]\ngens = x*y, x\n").unwrap();
    let (_, direct) = record(&["fpure", "-i", &section.to_string_lossy()]);
    let (_, sweep) = record(&[
        "perturb",
        "-i",
        &fx("node3.fsg"),
        "--elem",
        "x",
        "--deltas",
        "0",
        "--prop",
        "fpure",
    ]);
    let rows = sweep["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    for key in ["verdict", "certificate", "log"] {
        assert_eq!(rows[0][key], direct[key], "{key}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fsg");
    std::fs::write(&bad, "[ring]\np = 4\nvars = x\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    let tight = dir.path().join("tight.json");
    std::fs::write(&tight, r#"{"max_reduction_steps": 10}"#).unwrap();
    let tight = tight.to_string_lossy().into_owned();

    assert_eq!(run(&["fpure", "-i", &bad]).0, 65);
    assert_eq!(run(&["fpure", "-i", "/nonexistent/x.fsg"]).0, 74);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["fpure", "-i", &fx("singh.fsg")]).0, 1);
    assert_eq!(
        run(&["fpure", "-i", &fx("counterexample.fsg"), "--ideal", "Nope"]).0,
        64
    );
    assert_eq!(
        run(&["sharp", "-i", &fx("trivial.fsg"), "--elem", "x", "--t", "-1/2"]).0,
        64
    );
    assert_eq!(run(&["--config", &tight, "fpure", "-i", &fx("singh.fsg")]).0, 3);
    let (code, _, err) = run(&["hk", "-i", &fx("node.fsg"), "--J", "Node", "--e", "1"]);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("zero-dimensional"), "{err}");
}

#[test]
fn cache_hits_and_invalidation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache").to_string_lossy().into_owned();
    let args = ["--cache", &cache, "fsig", "-i", &fx("node3.fsg"), "--e", "2"];
    let (_, first) = record(&args);
    let (_, second) = record(&args);
    assert_eq!(first["cached"], false);
    assert_eq!(second["cached"], true);
    let strip = |v: &Value| {
        let mut v = without_timings(v);
        v.as_object_mut().unwrap().remove("cached");
        v
    };
    assert_eq!(strip(&first), strip(&second));

    // Same ideal with reordered generators and different spacing: same hash.
    let a = dir.path().join("a.fsg");
    let b = dir.path().join("b.fsg");
    let c = dir.path().join("c.fsg");
    std::fs::write(&a, "[ring]\np = 3\nvars = x, y\n[ideal.I]\ngens = x^2, y^2\n").unwrap();
    std::fs::write(
        &b,
        "# reordered\n[ring]\np=3\nvars = x y\n[ideal.I]\ngens = y^2\ngens = x^2\n",
    )
    .unwrap();
    std::fs::write(&c, "[ring]\np = 5\nvars = x, y\n[ideal.I]\ngens = x^2, y^2\n").unwrap();
    let hash = |f: &std::path::Path| {
        let (_, v) = record(&[
            "--cache",
            &cache,
            "hk",
            "-i",
            &f.to_string_lossy(),
            "--J",
            "m",
            "--e",
            "1",
            "--d",
            "0",
        ]);
        (v["input_hash"].as_str().unwrap().to_string(), v["cached"].clone())
    };
    let (ha, ca) = hash(&a);
    let (hb, cb) = hash(&b);
    let (hc, cc) = hash(&c);
    assert_eq!(ha, hb);
    assert_eq!((ca, cb), (Value::Bool(false), Value::Bool(true)));
    assert_ne!(ha, hc);
    assert_eq!(cc, Value::Bool(false));

    // A corrupt entry is ignored and overwritten.
    let entry = std::path::Path::new(&cache).join(format!("{ha}.json"));
    std::fs::write(&entry, "{ not json").unwrap();
    let (_, v) = record(&[
        "--cache",
        &cache,
        "hk",
        "-i",
        &a.to_string_lossy(),
        "--J",
        "m",
        "--e",
        "1",
        "--d",
        "0",
    ]);
    assert_eq!(v["cached"], false);
    assert_eq!(v["values"]["length"], "4");
    // An entry claiming another hash is not trusted either.
    let mut forged = v.clone();
    forged["input_hash"] = Value::String("0".repeat(64));
    std::fs::write(&entry, serde_json::to_string(&forged).unwrap()).unwrap();
    let (_, v) = record(&[
        "--cache",
        &cache,
        "hk",
        "-i",
        &a.to_string_lossy(),
        "--J",
        "m",
        "--e",
        "1",
        "--d",
        "0",
    ]);
    assert_eq!(v["cached"], false);
}

#[test]
fn records_are_deterministic_without_timings() {
    for (args, _) in command_corpus() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, a) = record(&args);
        let (_, b) = record(&args);
        assert_eq!(
            serde_json::to_string(&without_timings(&a)).unwrap(),
            serde_json::to_string(&without_timings(&b)).unwrap(),
            "{args:?}"
        );
    }
}
