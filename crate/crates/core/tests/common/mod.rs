#![allow(dead_code)]

use dagex_core::clic::{clic_closure, enumerate_clics, DEFAULT_ISO_BOUND};
use dagex_core::{Clic, Dag, LocalIso, Vertex};

pub fn single() -> Dag {
    Dag::new::<&str>(&["a"], &[]).unwrap()
}

pub fn pair() -> Dag {
    Dag::new::<&str>(&["a", "b"], &[]).unwrap()
}

pub fn block_matrix() -> Dag {
    Dag::new(
        &["u", "v", "r", "c"],
        &[("u", "r"), ("u", "c"), ("v", "r"), ("v", "c")],
    )
    .unwrap()
}

pub fn ap() -> Dag {
    Dag::new(
        &["u1", "u2", "v1", "v2", "v3"],
        &[("u1", "u2"), ("v1", "v2"), ("v2", "v3")],
    )
    .unwrap()
}

pub fn iso(d: &Dag, pairs: &[(&str, &str)]) -> LocalIso {
    let p: Vec<(Vertex, Vertex)> = pairs
        .iter()
        .map(|(a, b)| (d.vertex(a).unwrap(), d.vertex(b).unwrap()))
        .collect();
    LocalIso::from_pairs(d, &p).unwrap()
}

pub fn swap(d: &Dag) -> Clic {
    clic_closure(d, &[iso(d, &[("a", "b")])]).unwrap()
}

/// Every example DAG with every CLIC it admits.
pub fn configurations() -> Vec<(&'static str, Dag, Clic)> {
    let mut out = Vec::new();
    for (name, d) in [
        ("single", single()),
        ("pair", pair()),
        ("block", block_matrix()),
        ("ap", ap()),
    ] {
        for k in enumerate_clics(&d, DEFAULT_ISO_BOUND).unwrap() {
            out.push((name, d.clone(), k));
        }
    }
    out
}

/// Every injective map `0..k → 0..n`, as image vectors.
pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(k, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut Vec::new(), &mut out);
    out
}
