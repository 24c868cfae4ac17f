use std::fs;

use floer_core::cli::{main_with, Report};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("floer").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn blowup_search_finds_three_points_with_rank_four() {
    let (code, out, _) = run(&["hf", "--polytope", "builtin:blowup_cp3", "--rho", "search"]);
    assert_eq!(code, 0);
    let report: Report = serde_json::from_str(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert_eq!(e["result"]["hf_rank"], 4);
        assert_eq!(e["rho"]["m"], 3);
    }
    assert_eq!(report.job.command, "hf");
}

#[test]
fn odd_projective_space_rank() {
    let (code, out, _) = run(&["hf", "--polytope", "builtin:cpn(3)", "--rho", "trivial"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["entries"][0]["result"]["hf_rank"], 4);
}

#[test]
fn json_is_canonical_and_round_trips() {
    let args = ["critical-points", "--polytope", "builtin:cpn(2)", "--max-degree", "4"];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let report: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(floer_core::cli::emit(&report, floer_core::cli::Format::Json), first);

    let (_, hf, _) = run(&["product-bound", "--polytope", "builtin:cpn(1)", "--seed", "9"]);
    let report: Report = serde_json::from_str(&hf).unwrap();
    assert_eq!(report.job.seed, 9);
    let again = floer_core::cli::emit(&report, floer_core::cli::Format::Json);
    assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), report);
}

#[test]
fn json_keys_are_sorted() {
    let (_, out, _) = run(&["energies", "--polytope", "builtin:blowup_cp3"]);
    let keys: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(out.contains("\"1/1\""));
}

#[test]
fn table_shows_rank_columns() {
    let (code, out, _) = run(&[
        "product-bound",
        "--polytope",
        "builtin:cpn(2)",
        "--rho",
        "search",
        "--max-degree",
        "2",
        "--format",
        "table",
    ]);
    assert_eq!(code, 0);
    let header = out.lines().nth(1).unwrap();
    for col in ["defined", "delta_rank", "hf_rank", "bound"] {
        assert!(header.contains(col), "{header}");
    }
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn boundary_point_is_reported_with_facet() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "edge.json",
        r#"{"n": 1, "facets": [{"v": [1], "lambda": "0/1"}, {"v": [-1], "lambda": "-2/1"}], "c": ["2/1"]}"#,
    );
    let (code, out, _) = run(&["validate", "--polytope", &path]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["valid"], false);
    assert_eq!(v["result"]["diagnostics"][0]["facet"], 2);

    let good = write_temp(
        &dir,
        "ok.json",
        r#"{"n": 1, "facets": [{"v": [1], "lambda": "0/1"}, {"v": [-1], "lambda": "-2/1"}], "c": ["1/1"], "name": "segment"}"#,
    );
    assert_eq!(run(&["validate", "--polytope", &good]).0, 0);
}

#[test]
fn parse_errors_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "bad.json",
        "{\n  \"n\": 1,\n  \"facets\": [{\"v\": [1], \"lambda\": 3}],\n  \"c\": [\"1/1\"]\n}\n",
    );
    let (code, _, err) = run(&["energies", "--polytope", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json:3:"), "{err}");
    assert!(err.contains("facets[0].lambda"), "{err}");

    let (code, _, err) = run(&["energies", "--polytope", "/nonexistent/p.json"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["hf"]).0, 2);
}

#[test]
fn rho_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    // (w, w) over GF(4), w = x
    let rho = write_temp(
        &dir,
        "rho.json",
        r#"{"m": 2, "values": [{"bits": "01", "m": 2}, {"bits": "01", "m": 2}]}"#,
    );
    let (code, out, err) = run(&["product-bound", "--polytope", "builtin:cpn(2)", "--rho", &rho]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["entries"][0]["result"]["bound"], 2);

    // not critical
    let rho = write_temp(
        &dir,
        "rho2.json",
        r#"{"m": 2, "values": [{"bits": "01", "m": 2}, {"bits": "11", "m": 2}]}"#,
    );
    assert_eq!(run(&["product-bound", "--polytope", "builtin:cpn(2)", "--rho", &rho]).0, 1);

    let short = write_temp(&dir, "rho3.json", r#"{"m": 1, "values": [{"bits": "1", "m": 1}]}"#);
    assert_eq!(run(&["hf", "--polytope", "builtin:cpn(2)", "--rho", &short]).0, 1);
}

#[test]
fn obstructed_and_budget_exit_codes() {
    let (code, out, _) = run(&["hf", "--polytope", "builtin:cpn(2)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let result = &v["result"]["entries"][0]["result"];
    assert_eq!(result["defined"], false);
    assert!(result.get("hf_rank").is_none());
    assert_eq!(result["obstruction"][0]["exp"], "1/1");

    let (code, _, err) = run(&[
        "critical-points",
        "--polytope",
        "builtin:rp_product(2,2)",
        "--max-degree",
        "16",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("GF(2^13)"), "{err}");
    assert_eq!(run(&["hf", "--polytope", "builtin:nonsense"]).0, 1);
}

#[test]
fn probabilistic_method_agrees() {
    let (_, exact, _) = run(&["example", "rp_product"]);
    let (_, prob, _) = run(&["example", "rp_product", "--method", "probabilistic", "--seed", "3"]);
    let a: serde_json::Value = serde_json::from_str(&exact).unwrap();
    let b: serde_json::Value = serde_json::from_str(&prob).unwrap();
    assert_eq!(a["result"], b["result"]);
    assert_eq!(b["job"]["method"], "probabilistic");
    assert_eq!(run(&["example", "nope"]).0, 2);
}

#[test]
fn examples_run() {
    for name in ["blowup_cp3", "odd_cpn", "even_cpn", "product_bound"] {
        let (code, out, err) = run(&["example", name, "--format", "table"]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(out.contains(&format!("example {name}")));
    }
}
