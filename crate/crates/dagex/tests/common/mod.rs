#![allow(dead_code)]

use std::path::PathBuf;

use dagex::formats::{read_json, ClicJson, GraphJson};
use dagex_core::{Clic, Dag};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture_str(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

pub fn graph(name: &str) -> Dag {
    read_json::<GraphJson>(&fixture_str(&format!("{name}.json")))
        .unwrap()
        .to_dag()
        .unwrap()
}

/// `None` names the trivial CLIC.
pub fn clic(d: &Dag, name: Option<&str>) -> Clic {
    match name {
        None => Clic::trivial(d),
        Some(n) => read_json::<ClicJson>(&fixture_str(&format!("{n}.json")))
            .unwrap()
            .to_clic(d)
            .unwrap(),
    }
}

pub struct Config {
    pub name: String,
    pub dag: Dag,
    pub clic: Clic,
}

/// Every example graph with every CLIC it admits, loaded from fixtures.
pub fn configurations() -> Vec<Config> {
    let table: &[(&str, &[Option<&str>])] = &[
        ("single", &[None]),
        ("pair", &[None, Some("pair_swap")]),
        ("three", &[None, Some("three_cyclic")]),
        (
            "block",
            &[
                None,
                Some("block_case1"),
                Some("block_case2"),
                Some("block_case3"),
            ],
        ),
        ("ap", &[None, Some("ap_case4"), Some("ap_case5")]),
    ];
    let mut out = Vec::new();
    for (g, clics) in table {
        let d = graph(g);
        for c in *clics {
            out.push(Config {
                name: format!("{g}/{}", c.unwrap_or("trivial")),
                dag: d.clone(),
                clic: clic(&d, *c),
            });
        }
    }
    out
}

/// Runs the CLI in-process with fixture paths substituted for `@name`.
pub fn cli(args: &[&str]) -> dagex::cli::Outcome {
    let mut argv = vec!["dagex".to_string()];
    argv.extend(args.iter().map(|a| match a.strip_prefix('@') {
        Some(n) => fixture_str(n),
        None => a.to_string(),
    }));
    dagex::cli::run_with_threads(argv, None)
}
