mod common;

use common::*;
use dagex::cli::{EXIT_EMPTY, EXIT_FAILED, EXIT_INPUT, EXIT_INVALID_CLIC, EXIT_OK};
use dagex::formats::{SampleJson, TestReport};

fn json_lines(stdout: &str) -> Vec<serde_json::Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn iso_counts() {
    for (g, n) in [("block", 12), ("ap", 9), ("single", 1)] {
        let out = cli(&["--format", "text", "isos", "--graph", &format!("@{g}.json")]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout.lines().count(), n, "{g}");
    }
}

#[test]
fn clic_counts() {
    for (g, n) in [("block", 3), ("ap", 2)] {
        let out = cli(&[
            "--format",
            "text",
            "clics",
            "--graph",
            &format!("@{g}.json"),
            "--nontrivial-only",
        ]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout.lines().count(), n, "{g}");
    }
    let out = cli(&["--format", "text", "clics", "--graph", "@single.json"]);
    assert_eq!(out.stdout.lines().count(), 1);
}

#[test]
fn sample_entry_counts() {
    let out = cli(&[
        "sample",
        "--graph",
        "@pair.json",
        "--clic",
        "@pair_swap.json",
        "--box",
        "3",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let s: SampleJson = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(s.entries.len(), 6);
    assert!(s.latents.is_none());

    let out = cli(&[
        "sample",
        "--graph",
        "@single.json",
        "--box",
        "5",
        "--latents",
    ]);
    let s: SampleJson = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(s.entries.len(), 5);
    assert!(s.latents.unwrap().len() >= 6);
}

#[test]
fn sample_output_ends_with_one_newline() {
    let out = cli(&["sample", "--graph", "@block.json", "--box", "2"]);
    assert!(out.stdout.ends_with("}\n") && !out.stdout.ends_with("\n\n"));
}

#[test]
fn sample_reals_round_trip_exactly() {
    let out = cli(&[
        "sample",
        "--graph",
        "@block.json",
        "--clic",
        "@block_case1.json",
        "--box",
        "3",
        "--f",
        "affine",
    ]);
    let s: SampleJson = serde_json::from_str(&out.stdout).unwrap();
    let d = graph("block");
    let spec = dagex_core::SampleSpec {
        dag: d.clone(),
        clic: clic(&d, Some("block_case1")),
        size: 3,
        f: dagex_core::FSpec::Affine(None),
        seed: 0,
    };
    let bundle = dagex_core::sampler::generate_array(&spec).unwrap();
    assert_eq!(s.entries.len(), bundle.entries.len());
    for (e, (a, x)) in s.entries.iter().zip(&bundle.entries) {
        assert_eq!(e.index.to_index(&d).unwrap(), *a);
        assert_eq!(e.x.0.to_bits(), x.to_bits());
    }
}

#[test]
fn inline_generators_match_files() {
    let from_file = cli(&[
        "template",
        "--graph",
        "@block.json",
        "--clic",
        "@block_case3.json",
    ]);
    let inline = cli(&[
        "template",
        "--graph",
        "@block.json",
        "--gen",
        "u=v",
        "--gen",
        "u=u,v=v,r=c",
        "--gen",
        "u=v,v=u,r=r",
    ]);
    assert_eq!(from_file, inline);
}

#[test]
fn exit_codes() {
    assert_eq!(
        cli(&["isos", "--graph", "/nonexistent.json"]).code,
        EXIT_INPUT
    );
    assert_eq!(cli(&["isos"]).code, EXIT_INPUT);
    assert_eq!(
        cli(&[
            "template",
            "--graph",
            "@block.json",
            "--clic",
            "@block_broken.json"
        ])
        .code,
        EXIT_INVALID_CLIC
    );
    assert_eq!(
        cli(&[
            "sample",
            "--graph",
            "@pair.json",
            "--clic",
            "@pair_swap.json",
            "--box",
            "1"
        ])
        .code,
        EXIT_EMPTY
    );
    let out = cli(&[
        "test",
        "--graph",
        "@pair.json",
        "--clic",
        "@pair_swap.json",
        "--replicates",
        "200",
        "--perm",
        "@pair_split_perm.json",
    ]);
    assert_eq!(out.code, EXIT_FAILED);
    assert!(out.stdout.contains("NotKCommuting"));
}

#[test]
fn battery_passes_for_a_model_permutation() {
    let out = cli(&[
        "test",
        "--graph",
        "@block.json",
        "--clic",
        "@block_case3.json",
        "--replicates",
        "100",
        "--seed",
        "4",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let reports: Vec<TestReport> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let names: Vec<&str> = reports.iter().map(|r| r.test.as_str()).collect();
    assert_eq!(names, ["invariance", "cond_indep", "equivariance"]);
    assert!(reports.iter().all(|r| r.pass && r.error.is_none()));
    assert_eq!(json_lines(&out.stdout).len(), 3);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("dagex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sample.json");
    let args = [
        "sample",
        "--graph",
        "@ap.json",
        "--clic",
        "@ap_case4.json",
        "--box",
        "2",
    ];
    let direct = cli(&args);
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let out = cli(&with_file);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classes_group_equivalent_indices() {
    let out = cli(&[
        "--format",
        "text",
        "classes",
        "--graph",
        "@pair.json",
        "--clic",
        "@pair_swap.json",
        "--box",
        "2",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("(a:0,b:1) <- (a:0,b:1) (a:1,b:0)"));
    let out = cli(&[
        "classes",
        "--graph",
        "@pair.json",
        "--clic",
        "@pair_swap.json",
        "--box",
        "3",
        "--full-only",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v.is_array() || v.is_object());
}
