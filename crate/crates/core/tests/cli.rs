use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use gcat_duality::bundle::{bundle_to_string, parse_bundle};
use gcat_duality::fixtures::shipped_bundles;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn gcat(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcat"))
        .args(args)
        .arg("--input")
        .arg(input)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "no JSON report ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn check_names(r: &Value) -> Vec<String> {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn shipped_bundles_are_current() {
    for (name, b) in shipped_bundles() {
        let on_disk = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(
            on_disk,
            bundle_to_string(&b),
            "{name} is stale; run the write_fixtures example"
        );
    }
}

#[test]
fn emit_after_parse_is_stable() {
    for (name, _) in shipped_bundles() {
        let parsed = parse_bundle(&fixture(name)).unwrap();
        let once = parsed.load(None).unwrap().emit();
        assert_eq!(once, parsed, "{name}");
        let twice = once.load(None).unwrap().emit();
        assert_eq!(bundle_to_string(&once), bundle_to_string(&twice));
    }
}

#[test]
fn orbit_of_pt2_has_two_dimensional_point_hom() {
    let out = gcat(&["orbit", "--no-timing"], &fixture("pt2.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let art = &r["artifact"];
    let cat = art["categories"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "PT2/G")
        .unwrap();
    assert_eq!(
        cat["homs"][0]["basis"],
        serde_json::json!(["id[1]", "id[s]"])
    );
    assert_eq!(
        art["orbit"]["block_index"][0]["blocks"],
        serde_json::json!([[0, 0], [1, 0]])
    );
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn smash_of_ga2_has_object_table() {
    let out = gcat(&["smash"], &fixture("ga2.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(
        r["artifact"]["smash"]["objects"],
        serde_json::json!([[0, 0], [0, 1]])
    );
    assert!(r["wall_time_ms"].is_u64());
}

#[test]
fn non_dense_inclusion_fails_with_density_locus() {
    let out = gcat(&["check-covering"], &fixture("non_dense.json"));
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let dense = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "x0-into-SW2/dense")
        .unwrap();
    assert!(dense["locus"].as_str().unwrap().contains("density"));
}

#[test]
fn witnessed_functor_is_a_covering_and_factorizes() {
    let args = ["check-covering", "--check", "TG1->GA2#C2"];
    assert_eq!(gcat(&args, &fixture("suite.json")).status.code(), Some(0));
    let out = gcat(
        &["factorize", "--check", "TG1->GA2#C2"],
        &fixture("suite.json"),
    );
    assert_eq!(out.status.code(), Some(0));
    let names = check_names(&report(&out));
    assert!(names.contains(&"TG1->GA2#C2/factorization".to_string()));
    assert!(names.contains(&"TG1->GA2#C2/covering-iff-equivalence".to_string()));
}

#[test]
fn roundtrip_reports_only_unit_counit_and_triangles() {
    let out = gcat(&["roundtrip", "--no-timing"], &fixture("suite.json"));
    assert_eq!(out.status.code(), Some(0));
    let names = check_names(&report(&out));
    assert!(names.iter().any(|n| n.ends_with("/eq1")));
    assert!(names.iter().any(|n| n.ends_with("/eq4")));
    assert!(names.iter().any(|n| n.ends_with("/triangle-sharp")));
    assert!(names.iter().all(|n| !n.contains("functor")));
}

#[test]
fn check_filter_and_sorting() {
    let out = gcat(
        &["verify-theorem", "--check", "eq3"],
        &fixture("suite.json"),
    );
    assert_eq!(out.status.code(), Some(0));
    let names = check_names(&report(&out));
    assert!(!names.is_empty() && names.iter().all(|n| n.ends_with("/eq3")));
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let out = gcat(
        &["verify-theorem", "--check", "no-such-check"],
        &fixture("suite.json"),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ring_override() {
    let out = gcat(&["orbit", "--ring", "Fp:5"], &fixture("pt2.json"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["artifact"]["ring"], "Fp:5");
    assert_eq!(
        gcat(&["orbit", "--ring", "Fp:4"], &fixture("pt2.json"))
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{\n  \"ring\": \"Q\",\n  \"categories\": [ }\n").unwrap();
    let out = gcat(&["validate"], &bad_json);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let text = std::fs::read_to_string(fixture("pt2.json")).unwrap();
    let unknown = dir.path().join("unknown.json");
    std::fs::write(
        &unknown,
        text.replace("\"category\": \"PT2.base\"", "\"category\": \"nowhere\""),
    )
    .unwrap();
    let out = gcat(&["validate"], &unknown);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere"));

    let out = gcat(&["orbit", "--check", "nothing"], &fixture("pt2.json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn multiplication_table_typo_is_reported() {
    let mut b = parse_bundle(&fixture("pt2.json")).unwrap();
    b.groups[0].mul[1][1] = 1;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.json");
    std::fs::write(&path, bundle_to_string(&b)).unwrap();
    let out = gcat(&["validate"], &path);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"][0]["name"], "load");
    assert!(r["checks"][0]["locus"].as_str().unwrap().contains("group"));
}

#[test]
fn reports_are_deterministic_without_timing() {
    let a = gcat(&["validate", "--no-timing"], &fixture("suite.json"));
    let b = gcat(&["validate", "--no-timing"], &fixture("suite.json"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
